#![no_main]

//! Config files: parsing and validation must reject, never panic.

use deltashock_cli::config::parse_kv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(partial) = parse_kv(text) {
        if let Ok(cfg) = partial.resolve() {
            assert!(!cfg.problems.is_empty());
            assert!(cfg.cfl > 0.0 && cfg.cfl < 1.0);
        }
    }
});
