use k3curves::nl_stu::{discriminant_delta, kml_coefficient, kml_series, nl_number, NLQuery};
use proptest::prelude::*;

proptest! {
    #[test]
    fn discriminant_closed_form(p in -50i64..=50, d1 in -50i64..=50, d2 in -50i64..=50) {
        prop_assert_eq!(discriminant_delta(NLQuery { p, d1, d2 }), 2 * d1 * d2 - 2 * p + 2);
    }

    #[test]
    fn nl_numbers_symmetric(p in 0i64..12, d1 in 0i64..6, d2 in 0i64..6) {
        let a = nl_number(NLQuery { p, d1, d2 }, 80).unwrap();
        let b = nl_number(NLQuery { p, d1: d2, d2: d1 }, 80).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn kml_series_matches_closed_form() {
    let series = kml_series(3, 3).unwrap();
    for (&(d1, d2), v) in &series {
        assert_eq!(*v, kml_coefficient(d1, d2).unwrap(), "({d1}, {d2})");
    }
    assert_eq!(series[&(1, 1)].to_string(), "282888");
    assert_eq!(series[&(0, 1)].to_string(), "480");
}

#[test]
fn degenerate_degrees_are_rejected() {
    assert!(kml_series(2, 0).is_err());
    assert!(kml_coefficient(1, 0).is_err());
}
