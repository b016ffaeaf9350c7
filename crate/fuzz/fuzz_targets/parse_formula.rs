#![no_main]

use czfu_core::lang::parse_formula;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(phi) = parse_formula(text) {
        let printed = phi.to_string();
        assert_eq!(parse_formula(&printed).as_ref(), Ok(&phi), "{printed}");
    }
});
