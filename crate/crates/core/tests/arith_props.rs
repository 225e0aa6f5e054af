use k3curves::arith::{bernoulli, binomial, divisors, gcd, moebius, partition_counts, sigma};
use k3curves::series::product_form;
use k3curves::{BigInt, Rational};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn naive_sigma(k: u32, n: u64) -> BigInt {
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

proptest! {
    #[test]
    fn sigma_is_multiplicative(k in 0u32..6, a in 1u64..60, b in 1u64..60) {
        prop_assume!(gcd(a as i64, b as i64) == 1);
        prop_assert_eq!(sigma(k, a * b), sigma(k, a) * sigma(k, b));
    }

    #[test]
    fn sigma_matches_divisor_sum(k in 0u32..8, n in 1u64..400) {
        prop_assert_eq!(sigma(k, n), naive_sigma(k, n));
    }

    #[test]
    fn moebius_sums_vanish(n in 2u64..500) {
        let total: i64 = divisors(n).into_iter().map(|d| moebius(d) as i64).sum();
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn pascal_rule(n in 1u64..60, k in 1u64..60) {
        prop_assume!(k <= n);
        prop_assert_eq!(binomial(n, k).unwrap(), binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap_or_default());
    }
}

#[test]
fn partitions_match_eta_inverse() {
    let counts = partition_counts(60);
    let series = product_form(|_| -1, 61);
    for (n, c) in counts.iter().enumerate() {
        assert_eq!(Some(c.clone()), series.coeff_int(n as i64), "p({n})");
    }
    assert_eq!(counts[60], "966467".parse::<BigInt>().unwrap());
}

#[test]
fn bernoulli_matches_generating_function() {
    // x/(eˣ − 1) = Σ b_n xⁿ/n!, solved from (eˣ − 1)/x · Σ = 1 by long division
    let n_max = 24usize;
    let fact = |n: usize| (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k));
    let e: Vec<Rational> = (0..=n_max)
        .map(|n| Rational::new(BigInt::one(), fact(n + 1)))
        .collect();
    let mut c: Vec<Rational> = vec![Rational::one()];
    for n in 1..=n_max {
        let s = (1..=n).fold(Rational::zero(), |acc, j| acc + &e[j] * &c[n - j]);
        c.push(-s);
    }
    for k in 1..=n_max / 2 {
        let standard = &c[2 * k] * Rational::from_integer(fact(2 * k));
        assert_eq!(bernoulli(k), standard.abs(), "B_{k}");
        assert!(bernoulli(k) > Rational::zero());
    }
    assert_eq!(bernoulli(1), Rational::new(1.into(), 6.into()));
    assert_eq!(bernoulli(2), Rational::new(1.into(), 30.into()));
}

#[test]
fn binomial_rejects_k_above_n() {
    assert!(binomial(3, 5).is_err());
}
