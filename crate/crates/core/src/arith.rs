//! Number-theoretic scalars: divisor sums, partition numbers, Bernoulli
//! numbers, the Möbius function and binomial coefficients.
//!
//! Bernoulli numbers follow the all-positive convention
//! `x/(eˣ−1) = 1 − x/2 + Σ_{k≥1} (−1)^{k+1} B_k x^{2k}/(2k)!`, so
//! `B_1 = 1/6`, `B_2 = 1/30`, `B_3 = 1/42`. In the usual signed indexing this
//! is `B_k = |B_{2k}|`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::series::{rat, Rational};
use crate::{Error, Result};

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma needs n >= 1");
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            total += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    total
}

/// `p(0), …, p(n_max)` via Euler's pentagonal-number recurrence.
pub fn partition_counts(n_max: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n_max + 1];
    p[0] = BigInt::one();
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for k in 1i64.. {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let positive = k % 2 == 1;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if positive {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p[n] = acc;
    }
    p
}

/// The number of partitions of `n`.
pub fn partition_count(n: usize) -> BigInt {
    partition_counts(n).pop().expect("non-empty")
}

/// Standard Bernoulli numbers `B_0, …, B_n` (with `B_1 = −1/2`), from
/// `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_standard(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut acc = Rational::zero();
        let mut c = BigInt::one(); // C(m+1, j)
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(c.clone()) * bj;
            c = c * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / rat(m as i64 + 1));
    }
    b
}

/// `B_k` in the positive convention; `k >= 1`.
pub fn bernoulli(k: usize) -> Rational {
    assert!(k >= 1, "bernoulli needs k >= 1");
    bernoulli_standard(2 * k)[2 * k].abs()
}

/// The classical signed `B_{2k}`, used only where a formula is read in the
/// standard convention.
pub fn bernoulli_signed_even(k: usize) -> Rational {
    bernoulli_standard(2 * k)[2 * k].clone()
}

pub fn moebius(n: u64) -> i32 {
    assert!(n >= 1, "moebius needs n >= 1");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn binomial(n: u64, k: u64) -> Result<BigInt> {
    if k > n {
        return Err(Error::OutOfRange(format!(
            "binomial({n}, {k}) needs k <= n"
        )));
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(c)
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}
