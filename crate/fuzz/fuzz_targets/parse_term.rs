#![no_main]

use czfu_core::lang::parse_term;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = parse_term(text) {
        let printed = t.to_string();
        assert_eq!(parse_term(&printed).as_ref(), Ok(&t), "{printed}");
    }
});
