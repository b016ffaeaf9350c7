#![no_main]

use czfu_core::lang::tokenize;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Err(e) = tokenize(text) {
            assert!(e.column() >= 1 && e.column() <= text.chars().count() + 1);
        }
    }
});
