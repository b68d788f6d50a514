#![no_main]

use gerbe_core::format::parse_matrix;
use gerbe_core::poly::default_vars;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let vars = default_vars(3);
    if let Ok(m) = parse_matrix(text, &vars) {
        let printed = m.to_string_with(&vars);
        assert_eq!(parse_matrix(&printed, &vars).expect("printed matrix reparses"), m);
    }
});
