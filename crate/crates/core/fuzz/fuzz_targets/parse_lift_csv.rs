#![no_main]
use libfuzzer_sys::fuzz_target;

use sepk::text::{parse_lift_csv, write_lift_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(grid) = parse_lift_csv(s) {
        assert_eq!(grid.values.len(), (grid.n + 1) * (grid.n + 1));
        assert_eq!(parse_lift_csv(&write_lift_csv(&grid)).unwrap(), grid);
    }
});
