use std::collections::BTreeMap;

use k3curves::bps::{
    bps_forward, bps_inverse, genus0_forward, genus0_invert, imprimitive_fill, kkv_table, RTable,
};
use k3curves::{BigInt, Rational};
use proptest::prelude::*;

fn r(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

proptest! {
    #[test]
    fn genus0_roundtrip(values in prop::collection::vec(-1000i64..1000, 24)) {
        let n: BTreeMap<u64, Rational> = values.iter().enumerate().map(|(i, &v)| (i as u64 + 1, r(v))).collect();
        prop_assert_eq!(genus0_invert(&genus0_forward(&n, 24), 24), n.clone());
        prop_assert_eq!(genus0_forward(&genus0_invert(&n, 24), 24), n);
    }

    #[test]
    fn bps_roundtrip(values in prop::collection::vec(-50i64..50, 36)) {
        let (p_max, m_max, g_max) = (2u32, 3u32, 3u32);
        let mut table = RTable::new();
        let mut it = values.into_iter();
        for p in 0..=p_max {
            for m in 1..=m_max {
                for g in 0..=g_max {
                    table.insert(g, m, p, r(it.next().unwrap()));
                }
            }
        }
        let back = bps_inverse(&bps_forward(&table, p_max, m_max, g_max), p_max, m_max, g_max);
        prop_assert_eq!(back, table);
    }
}

#[test]
fn kkv_table_is_integral_and_fills_imprimitive_classes() {
    let primitive = kkv_table(13).unwrap();
    assert!(primitive.iter().all(|(_, v)| v.is_integer()));
    // m = 2, p = 2 reads the primitive row 4·2 − 4 + 1 = 5
    let filled = imprimitive_fill(&primitive, 2, 2, 2).unwrap();
    assert_eq!(filled.get(0, 2, 2), primitive.get(0, 1, 5));
    assert_eq!(filled.get(2, 2, 2), primitive.get(2, 1, 5));
    assert!(imprimitive_fill(&kkv_table(3).unwrap(), 2, 2, 0).is_err());
}
