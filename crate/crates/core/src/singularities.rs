//! Local invariants of plane curve singularities `uᵖ + v^q = 0`.
//!
//! The δ-invariant is counted from the gaps of the numerical semigroup
//! `⟨p, q⟩`; the closed form `(p−1)(q−1)/2` is only used in tests.
//!
//! A fiber with a singular point of δ-invariant `δ` and `r` branches
//! contributes `2δ − r + 1` to the Euler number excess
//! `e(F_y) − e(F_gen)`: 1 for a node, 2 for a cusp, 3 for a tacnode and 4
//! for an ordinary triple point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::binomial;
use crate::{Error, Result};

/// A unibranch germ `uᵖ + v^q` with `gcd(p, q) = 1`.
///
/// `p = 1` or `q = 1` describes a smooth branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoprimeGerm {
    p: u32,
    q: u32,
}

impl CoprimeGerm {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p == 0 || q == 0 || p.gcd(&q) != 1 {
            return Err(Error::NotCoprime {
                p: p as i64,
                q: q as i64,
            });
        }
        Ok(Self { p, q })
    }

    pub fn smooth() -> Self {
        Self { p: 1, q: 1 }
    }

    /// The `A_{2ℓ}` double point `u² + v^{2ℓ+1}`.
    pub fn a_even(l: u32) -> Self {
        Self { p: 2, q: 2 * l + 1 }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GermSummary {
    pub delta: u64,
    pub branches: u64,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub e_g: BigInt,
    pub fiber_mult: i64,
}

/// `e(G_x) = C(p+q, p)/(p+q)`.
pub fn euler_g(germ: CoprimeGerm) -> BigInt {
    let n = (germ.p + germ.q) as u64;
    let c = binomial(n, germ.p as u64).expect("p <= p + q");
    let (quot, rem) = c.div_rem(&BigInt::from(n));
    debug_assert!(rem == BigInt::from(0));
    quot
}

/// Number of gaps of the semigroup generated by `p` and `q`.
pub fn delta_invariant(germ: CoprimeGerm) -> u64 {
    let (p, q) = (germ.p as u64, germ.q as u64);
    // Every integer >= (p-1)(q-1) is representable.
    let bound = p * q;
    let mut representable = vec![false; bound as usize];
    for a in (0..bound).step_by(p as usize) {
        for n in (a..bound).step_by(q as usize) {
            representable[n as usize] = true;
        }
    }
    representable.iter().filter(|&&r| !r).count() as u64
}

/// `2δ − r + 1`.
pub fn fiber_multiplicity(delta: u64, branches: u64) -> i64 {
    2 * delta as i64 - branches as i64 + 1
}

/// Product of the branch contributions `e(G_x)`.
pub fn multibranch_euler(branches: &[CoprimeGerm]) -> BigInt {
    branches
        .iter()
        .map(|&b| euler_g(b))
        .fold(BigInt::one(), |acc, e| acc * e)
}

pub fn summarize(germ: CoprimeGerm) -> GermSummary {
    let delta = delta_invariant(germ);
    GermSummary {
        delta,
        branches: 1,
        e_g: euler_g(germ),
        fiber_mult: fiber_multiplicity(delta, 1),
    }
}

/// `e(G_x)` as a machine integer, when it fits.
pub fn euler_g_i64(germ: CoprimeGerm) -> Option<i64> {
    euler_g(germ).to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_values() {
        assert_eq!(euler_g(CoprimeGerm::new(2, 3).unwrap()), BigInt::from(2));
        assert_eq!(euler_g(CoprimeGerm::new(3, 4).unwrap()), BigInt::from(5));
        assert_eq!(euler_g(CoprimeGerm::smooth()), BigInt::from(1));
        for l in 1..=10 {
            assert_eq!(euler_g_i64(CoprimeGerm::a_even(l)), Some(l as i64 + 1));
        }
    }

    #[test]
    fn rejects_non_coprime() {
        assert_eq!(
            CoprimeGerm::new(2, 4),
            Err(Error::NotCoprime { p: 2, q: 4 })
        );
        assert!(CoprimeGerm::new(0, 3).is_err());
    }

    #[test]
    fn deltas() {
        assert_eq!(delta_invariant(CoprimeGerm::new(2, 3).unwrap()), 1);
        assert_eq!(delta_invariant(CoprimeGerm::new(2, 5).unwrap()), 2);
        assert_eq!(delta_invariant(CoprimeGerm::smooth()), 0);
    }

    #[test]
    fn multiplicities() {
        assert_eq!(fiber_multiplicity(1, 2), 1);
        assert_eq!(fiber_multiplicity(1, 1), 2);
        assert_eq!(fiber_multiplicity(2, 2), 3);
        assert_eq!(fiber_multiplicity(3, 3), 4);
        assert_eq!(fiber_multiplicity(0, 1), 0);
    }

    #[test]
    fn cusp_agrees_with_compactified_jacobian() {
        let cusp = summarize(CoprimeGerm::new(2, 3).unwrap());
        assert_eq!(BigInt::from(cusp.fiber_mult), cusp.e_g);
        let node = [CoprimeGerm::smooth(), CoprimeGerm::smooth()];
        assert_eq!(
            multibranch_euler(&node),
            BigInt::from(fiber_multiplicity(1, 2))
        );
        let two_cusps = [CoprimeGerm::new(2, 3).unwrap(); 2];
        assert_eq!(multibranch_euler(&two_cusps), BigInt::from(4));
    }
}
