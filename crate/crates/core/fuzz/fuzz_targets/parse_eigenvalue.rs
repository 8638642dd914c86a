#![no_main]
use libfuzzer_sys::fuzz_target;

use sepk::exactnum::cf_expand;
use sepk::text::parse_eigenvalue;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_eigenvalue(s) {
        let back = parse_eigenvalue(&x.to_string()).expect("display reparses");
        assert_eq!(back, x);
        let _ = cf_expand(&x, 8);
    }
});
