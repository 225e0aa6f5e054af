use k3curves::arith::gcd;
use k3curves::singularities::{
    delta_invariant, euler_g, multibranch_euler, summarize, CoprimeGerm,
};
use k3curves::BigInt;
use proptest::prelude::*;

proptest! {
    #[test]
    fn delta_is_half_the_conductor(p in 1u32..40, q in 1u32..40) {
        prop_assume!(p + q <= 40 && gcd(p as i64, q as i64) == 1);
        let germ = CoprimeGerm::new(p, q).unwrap();
        prop_assert_eq!(delta_invariant(germ), u64::from((p - 1) * (q - 1) / 2));
    }

    #[test]
    fn euler_g_is_symmetric(p in 1u32..30, q in 1u32..30) {
        prop_assume!(gcd(p as i64, q as i64) == 1);
        let a = euler_g(CoprimeGerm::new(p, q).unwrap());
        let b = euler_g(CoprimeGerm::new(q, p).unwrap());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn small_germs() {
    assert!(CoprimeGerm::new(4, 6).is_err());
    // cusp x² + y³
    let cusp = summarize(CoprimeGerm::new(2, 3).unwrap());
    assert_eq!(
        (cusp.delta, cusp.e_g.clone(), cusp.fiber_mult),
        (1, BigInt::from(2), 2)
    );
    // E₈: x³ + y⁵ has Catalan-type value C(8,3)/8 = 7
    assert_eq!(euler_g(CoprimeGerm::new(3, 5).unwrap()), BigInt::from(7));
    assert_eq!(
        multibranch_euler(&[CoprimeGerm::a_even(1), CoprimeGerm::a_even(2)]),
        BigInt::from(6)
    );
}
