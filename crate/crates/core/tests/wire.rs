mod common;

use common::{matrix, positive_qi};
use proptest::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use sepk::blowup::{resolve, ResolutionRecord};
use sepk::equising::{certify, Certificate, SeparatorSpec};
use sepk::exactnum::{cf_expand, CfExpansion};
use sepk::text::{parse_lift_csv, write_lift_csv, LiftGrid};
use sepk::{QuadraticIrrational, UnimodularMatrix};

fn roundtrip<T: Serialize + DeserializeOwned>(v: &T) -> T {
    serde_json::from_str(&serde_json::to_string(v).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalue_json(x in positive_qi()) {
        prop_assert_eq!(roundtrip::<QuadraticIrrational>(&x), x);
    }

    #[test]
    fn matrix_json(m in matrix(50)) {
        prop_assert_eq!(roundtrip::<UnimodularMatrix>(&m), m);
        prop_assert_eq!(m.to_string().parse::<UnimodularMatrix>().unwrap(), m);
    }

    #[test]
    fn expansion_json(x in positive_qi(), depth in 1usize..30) {
        let cf = cf_expand(&x, depth).unwrap();
        prop_assert_eq!(roundtrip::<CfExpansion>(&cf), cf);
    }

    #[test]
    fn record_json(x in positive_qi(), depth in 1usize..24) {
        let rec = resolve(&x, depth).unwrap();
        prop_assert_eq!(roundtrip::<ResolutionRecord>(&rec), rec);
    }

    #[test]
    fn certificate_json(x in positive_qi(), y in positive_qi()) {
        let cert = certify(&SeparatorSpec::new(x).unwrap(), &SeparatorSpec::new(y).unwrap(), 16).unwrap();
        prop_assert_eq!(roundtrip::<Certificate>(&cert), cert);
    }

    #[test]
    fn lift_csv_text(n in 1usize..6, vals in proptest::collection::vec(-1e6..1e6f64, 72)) {
        let values = (0..(n + 1) * (n + 1)).map(|k| (vals[2 * k], vals[2 * k + 1])).collect();
        let grid = LiftGrid { n, values };
        prop_assert_eq!(parse_lift_csv(&write_lift_csv(&grid)).unwrap(), grid);
    }
}

#[test]
fn malformed_json_is_rejected() {
    assert!(serde_json::from_str::<UnimodularMatrix>("[[0,1],[1,0]]").is_err());
    assert!(serde_json::from_str::<QuadraticIrrational>("\"(1+1*sqrt(4))/1\"").is_err());
    assert!(serde_json::from_str::<QuadraticIrrational>("1.414").is_err());
}
