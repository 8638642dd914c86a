#![no_main]
use libfuzzer_sys::fuzz_target;

use sepk::text::parse_matrix;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix(s) {
        assert_eq!(parse_matrix(&m.to_string()).unwrap(), m);
        let [a, b, c, d] = m.entries();
        assert_eq!(a as i128 * d as i128 - b as i128 * c as i128, 1);
    }
});
