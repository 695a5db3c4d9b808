#![no_main]

use std::sync::OnceLock;

use fscode_core::code::FSCodeParams;
use libfuzzer_sys::fuzz_target;

static PARAMS: OnceLock<FSCodeParams> = OnceLock::new();

fuzz_target!(|data: &[u8]| {
    let params = PARAMS.get_or_init(|| FSCodeParams::new(2, 9, 3, 3, 4, 2).unwrap());
    if let Ok(rw) = fscode_core::io::parse_received_word_json(params, data) {
        let json = fscode_core::io::received_word_to_json(&rw).to_string();
        let back = fscode_core::io::parse_received_word_json(params, json.as_bytes()).unwrap();
        assert_eq!(rw, back);
    }
});
