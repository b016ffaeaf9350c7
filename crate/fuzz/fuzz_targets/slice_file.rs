#![no_main]

use czfu_cli::parse_slice;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok((_, slice)) = parse_slice(text, None) {
            assert!(slice.iter().all(|s| s.is_set()));
        }
    }
});
