#![no_main]

use czfu_core::iterset::AtomTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = AtomTable::parse_spec(text) {
        let again = AtomTable::parse_spec(&table.to_spec()).expect("printed spec parses");
        assert_eq!(again, table);
    }
});
