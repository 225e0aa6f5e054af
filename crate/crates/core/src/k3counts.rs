//! Counts of curves in a primitive class on a K3 surface.
//!
//! `F_g(q) = Σ_p N_g^p q^p` is the genus-`g` generating series, normalized so
//! that `F_0 = ∏ (1−qⁿ)⁻²⁴` and
//! `F_g = (Σ n σ₁(n) qⁿ)^g · ∏ (1−qⁿ)⁻²⁴`. With this degree convention the
//! q^p coefficient of `F_g` is directly `N_g^p`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{binomial, sigma};
use crate::series::{product_form, Rational, TruncatedSeries};
use crate::{Error, Result};

/// Largest `p` accepted by [`table1`].
pub const TABLE1_P_MAX: u32 = 18;
/// Largest genus in the `table1` layout.
pub const TABLE1_G_MAX: u32 = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusSeries {
    pub g: usize,
    /// Coefficient of `q^p` is `N_g^p`.
    pub series: TruncatedSeries,
}

impl GenusSeries {
    pub fn count(&self, p: i64) -> BigInt {
        self.series
            .coeff_int(p)
            .expect("genus series has integer coefficients")
    }
}

/// Invariants keyed by `(genus, divisibility, arithmetic genus)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantTable {
    entries: BTreeMap<(u32, u32, u32), Rational>,
}

impl InvariantTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, g: u32, m: u32, p: u32, value: Rational) {
        self.entries.insert((g, m, p), value);
    }

    pub fn get(&self, g: u32, m: u32, p: u32) -> Option<&Rational> {
        self.entries.get(&(g, m, p))
    }

    /// Primitive-class entry `N_g^p`.
    pub fn primitive(&self, g: u32, p: u32) -> Option<&Rational> {
        self.get(g, 1, p)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32, u32), &Rational)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Euler-number data of a fibration `X → C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCountInput {
    pub e_total: i64,
    pub e_genfiber: i64,
    pub e_base: i64,
}

/// `∏ (1−qⁿ)⁻²⁴`, exact below `trunc`.
pub fn yau_zaslow_series(trunc: i64) -> TruncatedSeries {
    product_form(|_| -24, trunc)
}

/// `Σ n σ₁(n) qⁿ`, exact below `trunc`.
pub fn n_sigma1_series(trunc: i64) -> TruncatedSeries {
    TruncatedSeries::from_terms(
        (1..trunc.max(1)).map(|n| {
            (
                n,
                Rational::from_integer(BigInt::from(n) * sigma(1, n as u64)),
            )
        }),
        trunc,
    )
}

/// `F_g`, exact below `trunc`.
pub fn gbl_series(g: usize, trunc: i64) -> GenusSeries {
    let base = n_sigma1_series(trunc)
        .pow(g as i64)
        .expect("non-negative power");
    let series = base.mul(&yau_zaslow_series(trunc)).truncate(trunc);
    GenusSeries { g, series }
}

/// Entries `N_g^p` of the genus table for `1 ≤ p ≤ p_max`, `0 ≤ g ≤ 9`, `g < p`.
pub fn table1(p_max: u32) -> Result<InvariantTable> {
    if !(1..=TABLE1_P_MAX).contains(&p_max) {
        return Err(Error::OutOfRange(format!(
            "p_max must lie in 1..={TABLE1_P_MAX}, got {p_max}"
        )));
    }
    let trunc = p_max as i64 + 1;
    let mut table = InvariantTable::new();
    for g in 0..=TABLE1_G_MAX.min(p_max - 1) {
        let f = gbl_series(g as usize, trunc);
        for p in (g + 1)..=p_max {
            table.insert(g, 1, p, f.series.coeff(p as i64));
        }
    }
    Ok(table)
}

/// Whether the `table1` layout has a value at row `p`, column `δ = p − g`.
pub fn table1_cell_present(p: u32, delta: u32) -> bool {
    (1..=p.min(9)).contains(&delta) && p - delta <= TABLE1_G_MAX
}

/// `N_{1,2}^p = N_1^{4p−3} + 2 N_1^p`.
pub fn lee_leung_n12(p: u32) -> Result<BigInt> {
    if p == 0 {
        return Err(Error::OutOfRange("lee_leung_n12 needs p >= 1".into()));
    }
    let f1 = gbl_series(1, 4 * p as i64 - 2);
    Ok(f1.count(4 * p as i64 - 3) + f1.count(p as i64) * 2)
}

/// The three contributions to `N_{0,2}^2` that sum to an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GathmannReport {
    /// 5-nodal integral curves in `|2L|`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub nodal_integral: BigInt,
    /// Pairs of distinct rational curves in `|L|`, two maps each.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub pairs_of_rational: BigInt,
    /// Reducible double covers of a rational curve, two maps each.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub reducible_double_covers: BigInt,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub total: BigInt,
    /// `N_0^5` read off the Yau–Zaslow series.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub n0_5: BigInt,
    pub pass: bool,
}

/// Count of 5-nodal integral curves in `|2L|` on a genus-2 K3 (Gathmann).
pub const GATHMANN_NODAL_COUNT: i64 = 70956;

pub fn gathmann_check() -> GathmannReport {
    let yz = yau_zaslow_series(6);
    let rational_curves = yz.coeff_int(2).expect("integer");
    let n = u64::try_from(&rational_curves).expect("small");
    let nodal_integral = BigInt::from(GATHMANN_NODAL_COUNT);
    let pairs_of_rational = binomial(n, 2).expect("n >= 2") * 2;
    let reducible_double_covers = &rational_curves * 2;
    let total = &nodal_integral + &pairs_of_rational + &reducible_double_covers;
    let n0_5 = yz.coeff_int(5).expect("integer");
    let pass = total == n0_5;
    GathmannReport {
        nodal_integral,
        pairs_of_rational,
        reducible_double_covers,
        total,
        n0_5,
        pass,
    }
}

/// `e(X) − e(F_gen)·e(C)`: the sum over singular fibers of `e(F_y) − e(F_gen)`.
pub fn fiber_count(input: FiberCountInput) -> i64 {
    input.e_total - input.e_genfiber * input.e_base
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yz_coefficients() {
        let s = yau_zaslow_series(6);
        let v: Vec<BigInt> = (0..6).map(|n| s.coeff_int(n).unwrap()).collect();
        let want: Vec<BigInt> = [1, 24, 324, 3200, 25650, 176256]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(v, want);
    }

    #[test]
    fn f1_leading_terms() {
        let f1 = gbl_series(1, 5);
        assert_eq!(
            f1.series,
            TruncatedSeries::from_integers(1, &[1, 30, 480, 5460], 5)
        );
        assert_eq!(gbl_series(0, 7).series, yau_zaslow_series(7));
    }

    #[test]
    fn table1_spot_values() {
        let t = table1(18).unwrap();
        assert_eq!(
            t.primitive(0, 7).unwrap(),
            &Rational::from_integer(5930496.into())
        );
        assert_eq!(
            t.primitive(9, 18).unwrap(),
            &Rational::from_integer(303705014550i64.into())
        );
        assert!(table1(0).is_err());
        assert!(table1(19).is_err());
    }

    #[test]
    fn lee_leung_small() {
        assert_eq!(lee_leung_n12(1).unwrap(), BigInt::from(3));
        assert_eq!(lee_leung_n12(2).unwrap(), BigInt::from(49500));
    }

    #[test]
    fn gathmann() {
        let r = gathmann_check();
        assert_eq!(r.pairs_of_rational, BigInt::from(104652));
        assert_eq!(r.reducible_double_covers, BigInt::from(648));
        assert_eq!(r.total, BigInt::from(176256));
        assert!(r.pass);
    }

    #[test]
    fn fiber_counts() {
        assert_eq!(
            fiber_count(FiberCountInput {
                e_total: 24,
                e_genfiber: 0,
                e_base: 2
            }),
            24
        );
        assert_eq!(
            fiber_count(FiberCountInput {
                e_total: -480,
                e_genfiber: 24,
                e_base: 2
            }),
            -528
        );
        assert_eq!(
            fiber_count(FiberCountInput {
                e_total: 35,
                e_genfiber: 7,
                e_base: 5
            }),
            0
        );
    }
}
