#![no_main]

use std::sync::OnceLock;

use fscode_core::code::FSCodeParams;
use libfuzzer_sys::fuzz_target;

static PARAMS: OnceLock<FSCodeParams> = OnceLock::new();

fuzz_target!(|data: &[u8]| {
    let params = PARAMS.get_or_init(|| FSCodeParams::new(2, 9, 3, 3, 4, 2).unwrap());
    if let Ok(msg) = fscode_core::io::parse_message_json(params, data) {
        // accepted messages round-trip through the wire form
        let json = fscode_core::io::message_to_json(&msg).to_string();
        let back = fscode_core::io::parse_message_json(params, json.as_bytes()).unwrap();
        assert_eq!(msg, back);
    }
});
