#![no_main]

use gerbe_core::format::{parse_dataset, print_dataset};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(ds) = parse_dataset(text) {
        let printed = print_dataset(&ds);
        assert_eq!(parse_dataset(&printed).expect("printed dataset reparses"), ds);
    }
});
