#![no_main]

use czfu_core::iterset::{canonicalize, eq_v, parse_set, AtomTable};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let table = AtomTable::parse_spec("a b | c").unwrap();
    if let Ok(u) = parse_set(text, &table) {
        let canon = canonicalize(&table, &u);
        let back = parse_set(canon.as_str(), &table).expect("canonical form parses");
        assert!(eq_v(&table, &u, &back));
        assert_eq!(canonicalize(&table, &back), canon);
    }
});
