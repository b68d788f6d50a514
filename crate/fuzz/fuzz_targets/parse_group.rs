#![no_main]

use gerbe_core::format::{parse_group, print_group};
use gerbe_core::poly::default_vars;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let vars = default_vars(3);
    if let Ok(g) = parse_group(text, &vars) {
        assert!(g.mat().mul(g.inv_mat()).is_identity());
        assert_eq!(parse_group(&print_group(&g, &vars), &vars).expect("printed group reparses"), g);
    }
});
