#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = fscode_core::io::parse_sim_config(data);
    let _ = fscode_core::io::parse_sim_configs(data);
});
