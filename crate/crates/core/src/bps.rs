//! Multiple-cover corrections and the all-genus K3 invariants.
//!
//! * genus 0: `N_d = Σ_{k | d} k⁻³ n_{d/k}` and its Möbius inverse;
//! * all genera: the sin-kernel transform relating `R_{g,m}^p` to the BPS
//!   numbers `r_{g,m}^p`;
//! * the KKV product, which gives every `r_g^p` at once after a change of
//!   basis from powers of `y` to powers of `s = y − 2 + y⁻¹`;
//! * the MPT series with point insertions.
//!
//! The MPT exponent contains Bernoulli numbers `B_{2g}`. Both readings
//! (positive and classically signed) are available through
//! [`BernoulliConvention`]; only [`MPT_CONVENTION`] reproduces the KKV
//! invariants at `k = 0`, and [`calibrate_mpt`] re-derives that choice.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{bernoulli, bernoulli_signed_even, binomial, divisors, moebius};
use crate::k3counts::yau_zaslow_series;
use crate::modular::{delta_inverse, eisenstein};
use crate::series::{product_form, rat, BiSeries, Rational, TruncatedSeries};
use crate::{Error, Result};

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `N_d = Σ_{k | d} k⁻³ n_{d/k}` for `1 ≤ d ≤ max_d`; missing `n` are zero.
pub fn genus0_forward(n: &BTreeMap<u64, Rational>, max_d: u64) -> BTreeMap<u64, Rational> {
    (1..=max_d)
        .map(|d| {
            let total = divisors(d)
                .into_iter()
                .filter_map(|k| n.get(&(d / k)).map(|v| v / rat((k * k * k) as i64)))
                .fold(Rational::zero(), |a, b| a + b);
            (d, total)
        })
        .collect()
}

/// `n_d = Σ_{k | d} μ(k) k⁻³ N_{d/k}`.
pub fn genus0_invert(big_n: &BTreeMap<u64, Rational>, max_d: u64) -> BTreeMap<u64, Rational> {
    (1..=max_d)
        .map(|d| {
            let total = divisors(d)
                .into_iter()
                .filter(|&k| moebius(k) != 0)
                .filter_map(|k| {
                    big_n
                        .get(&(d / k))
                        .map(|v| v * rat(moebius(k) as i64) / rat((k * k * k) as i64))
                })
                .fold(Rational::zero(), |a, b| a + b);
            (d, total)
        })
        .collect()
}

/// A series in `u` with only even exponents, stored as a series in `w = u²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeries {
    pub w: TruncatedSeries,
}

impl USeries {
    /// Coefficient of `uⁿ`; odd powers vanish. Panics beyond truncation.
    pub fn coeff_u(&self, n: i64) -> Rational {
        if n.rem_euclid(2) == 1 {
            assert!(n < 2 * self.w.trunc(), "u^{n} is beyond truncation");
            return Rational::zero();
        }
        self.w.coeff(n / 2)
    }

    /// Exponents of `u` below this value are known.
    pub fn u_trunc(&self) -> i64 {
        2 * self.w.trunc()
    }
}

/// `sin(x)/x` at `x = d·u/2`, as a series in `w = u²`.
fn sinc_half(d: u64, w_trunc: i64) -> TruncatedSeries {
    let quarter_d2 = Rational::new(BigInt::from(d * d), BigInt::from(4));
    TruncatedSeries::from_terms(
        (0..w_trunc.max(0)).map(|n| {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let c = num_traits::pow(quarter_d2.clone(), n as usize) * rat(sign)
                / Rational::from_integer(factorial(2 * n as u64 + 1));
            (n, c)
        }),
        w_trunc,
    )
}

/// `u^{2g−2} · (1/d) (sin(d u/2)/(u/2))^{2g−2}`, exact for `u`-exponents
/// below `u_trunc`.
pub fn bps_kernel(g: u32, d: u64, u_trunc: i64) -> USeries {
    assert!(d >= 1, "cover degree must be positive");
    let shift = g as i64 - 1;
    let w_trunc = (u_trunc + 1).div_euclid(2);
    let inner_trunc = (w_trunc - shift).max(1);
    let power = 2 * g as i64 - 2;
    let body = sinc_half(d, inner_trunc)
        .pow(power)
        .expect("sinc has constant term 1");
    let d_pow = if power >= 0 {
        Rational::from_integer(BigInt::from(d).pow(power as u32))
    } else {
        Rational::from_integer(BigInt::from(d).pow((-power) as u32)).recip()
    };
    let scale = d_pow / rat(d as i64);
    USeries {
        w: body.scale(&scale).shift(shift).truncate(w_trunc),
    }
}

/// Values keyed by `(g, m, p)`; absent keys read as 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RTable {
    entries: BTreeMap<(u32, u32, u32), Rational>,
}

impl RTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, g: u32, m: u32, p: u32, v: Rational) {
        self.entries.insert((g, m, p), v);
    }

    pub fn get(&self, g: u32, m: u32, p: u32) -> Rational {
        self.entries
            .get(&(g, m, p))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn contains(&self, g: u32, m: u32, p: u32) -> bool {
        self.entries.contains_key(&(g, m, p))
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

/// Kernel coefficients `[u^{2g−2}] bps_kernel(g', d)` for `g' ≤ g ≤ g_max`.
struct KernelCache {
    g_max: u32,
    cache: BTreeMap<(u32, u64), USeries>,
}

impl KernelCache {
    fn new(g_max: u32) -> Self {
        Self {
            g_max,
            cache: BTreeMap::new(),
        }
    }

    fn coeff(&mut self, g_src: u32, d: u64, g: u32) -> Rational {
        let u_trunc = 2 * self.g_max as i64;
        self.cache
            .entry((g_src, d))
            .or_insert_with(|| bps_kernel(g_src, d, u_trunc))
            .coeff_u(2 * g as i64 - 2)
    }
}

/// `R_{g,m}^p = Σ_{d | m} Σ_{g' ≤ g} r_{g',m/d}^p [u^{2g−2}] kernel(g', d)`.
pub fn bps_forward(r: &RTable, p_max: u32, m_max: u32, g_max: u32) -> RTable {
    let mut kernels = KernelCache::new(g_max);
    let mut out = RTable::new();
    for p in 0..=p_max {
        for m in 1..=m_max {
            for g in 0..=g_max {
                let mut total = Rational::zero();
                for d in divisors(m as u64) {
                    let m_src = m / d as u32;
                    for g_src in 0..=g {
                        let v = r.get(g_src, m_src, p);
                        if !v.is_zero() {
                            total += v * kernels.coeff(g_src, d, g);
                        }
                    }
                }
                out.insert(g, m, p, total);
            }
        }
    }
    out
}

/// Triangular inverse of [`bps_forward`].
pub fn bps_inverse(big_r: &RTable, p_max: u32, m_max: u32, g_max: u32) -> RTable {
    let mut kernels = KernelCache::new(g_max);
    let mut r = RTable::new();
    for p in 0..=p_max {
        for m in 1..=m_max {
            for g in 0..=g_max {
                let mut rest = Rational::zero();
                for d in divisors(m as u64) {
                    let m_src = m / d as u32;
                    for g_src in 0..=g {
                        if d == 1 && g_src == g {
                            continue;
                        }
                        let v = r.get(g_src, m_src, p);
                        if !v.is_zero() {
                            rest += v * kernels.coeff(g_src, d, g);
                        }
                    }
                }
                // the diagonal kernel coefficient is 1
                r.insert(g, m, p, big_r.get(g, m, p) - rest);
            }
        }
    }
    r
}

/// Per power of `q`, a Laurent polynomial in `y` symmetric under `y ↔ y⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YLaurentTable {
    rows: Vec<BTreeMap<i64, BigInt>>,
}

impl YLaurentTable {
    pub fn p_max(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    /// Coefficient of `q^p`.
    pub fn row(&self, p: u32) -> &BTreeMap<i64, BigInt> {
        &self.rows[p as usize]
    }

    /// Value at `y = 1`.
    pub fn at_y1(&self, p: u32) -> BigInt {
        self.row(p).values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.iter().all(|(e, c)| row.get(&-e) == Some(c)))
    }
}

/// `∏ 1/((1−qⁿ)²⁰ (1−yqⁿ)² (1−y⁻¹qⁿ)²)` through `q^{p_max}`.
pub fn kkv_expansion(p_max: u32) -> YLaurentTable {
    let pm = p_max as usize;
    let width = 2 * pm + 1;
    let base = product_form(|_| -20, pm as i64 + 1);
    // grid[p][e + pm]
    let mut grid = vec![vec![BigInt::zero(); width]; pm + 1];
    for p in 0..=pm {
        grid[p][pm] = base.coeff_int(p as i64).expect("integer");
    }
    for n in 1..=pm {
        for e in [1i64, 1, -1, -1] {
            // multiply by 1/(1 − y^e qⁿ): new[p][j] = old[p][j] + new[p−n][j−e]
            for p in n..=pm {
                for j in 0..width {
                    let src = j as i64 - e;
                    if (0..width as i64).contains(&src) {
                        let add = grid[p - n][src as usize].clone();
                        if !add.is_zero() {
                            grid[p][j] += add;
                        }
                    }
                }
            }
        }
    }
    let rows = grid
        .into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j as i64 - pm as i64, c))
                .collect()
        })
        .collect();
    YLaurentTable { rows }
}

/// Writes a symmetric Laurent polynomial as `Σ c_g s^g`, `s = y − 2 + y⁻¹`.
pub fn to_s_basis(poly: &BTreeMap<i64, BigInt>, p: u32) -> Result<BTreeMap<u32, BigInt>> {
    let mut rest = poly.clone();
    let mut out = BTreeMap::new();
    while let Some((&top, c)) = rest.iter().next_back() {
        if top < 0 || top > p as i64 {
            return Err(Error::BasisChangeResidual { p: p as usize });
        }
        let c = c.clone();
        let g = top as u64;
        // s^g = Σ_j C(2g, j) (−1)^j y^{g−j}
        for j in 0..=2 * g {
            let b = binomial(2 * g, j).expect("j <= 2g");
            let term = if j % 2 == 0 { &c * b } else { -(&c * b) };
            let e = g as i64 - j as i64;
            let slot = rest.entry(e).or_insert_with(BigInt::zero);
            *slot -= term;
            if slot.is_zero() {
                rest.remove(&e);
            }
        }
        out.insert(g as u32, c);
    }
    Ok(out)
}

/// `r_g^p` for `0 ≤ g ≤ p ≤ p_max`, stored at `(g, 1, p)`.
pub fn kkv_table(p_max: u32) -> Result<RTable> {
    let y = kkv_expansion(p_max);
    let mut table = RTable::new();
    for p in 0..=p_max {
        let coeffs = to_s_basis(y.row(p), p)?;
        for g in 0..=p {
            let c = coeffs.get(&g).cloned().unwrap_or_else(BigInt::zero);
            let r = if g % 2 == 0 { c } else { -c };
            table.insert(g, 1, p, Rational::from_integer(r));
        }
    }
    Ok(table)
}

/// Fills `r_{g,m}^p = r_g^{m²p − m² + 1}` for `1 ≤ m ≤ m_max`, `1 ≤ p ≤ p_max`,
/// `g ≤ g_max`, from a primitive table that reaches far enough.
pub fn imprimitive_fill(primitive: &RTable, p_max: u32, m_max: u32, g_max: u32) -> Result<RTable> {
    let mut out = RTable::new();
    for m in 1..=m_max {
        for p in 1..=p_max {
            let src = m * m * p - m * m + 1;
            for g in 0..=g_max {
                if !primitive.contains(g, 1, src) && g <= src {
                    return Err(Error::OutOfRange(format!(
                        "primitive table lacks r_{g}^{src}"
                    )));
                }
                out.insert(g, m, p, primitive.get(g, 1, src));
            }
        }
    }
    Ok(out)
}

/// `y = 1` in the KKV product against the Yau–Zaslow series.
pub fn kkv_y1_check(p_max: u32) -> bool {
    let y = kkv_expansion(p_max);
    let yz = yau_zaslow_series(p_max as i64 + 1);
    (0..=p_max).all(|p| Some(y.at_y1(p)) == yz.coeff_int(p as i64))
}

/// How `B_{2g}` in the MPT exponent is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BernoulliConvention {
    /// `|B_{2g}|`, the positive convention used for Eisenstein series.
    Unsigned,
    /// The classical signed `B_{2g}`.
    Signed,
}

/// The convention under which the MPT series agrees with the KKV formula.
pub const MPT_CONVENTION: BernoulliConvention = BernoulliConvention::Unsigned;

fn b2g(g: usize, conv: BernoulliConvention) -> Rational {
    match conv {
        BernoulliConvention::Unsigned => bernoulli(g),
        BernoulliConvention::Signed => bernoulli_signed_even(g),
    }
}

/// `Σ_m q^m Σ_{d|m} (m/d) (2 sin(d u/2))²`, outer variable `w = u²`, inner `q`.
pub fn mpt_last_factor(w_trunc: i64, q_trunc: i64) -> BiSeries {
    // (2 sin(x/2))² = 2 − 2cos x = Σ_{n≥1} 2(−1)^{n+1} x^{2n}/(2n)!
    let mut terms = Vec::new();
    for m in 1..q_trunc.max(1) {
        for d in divisors(m as u64) {
            for n in 1..w_trunc.max(1) {
                let sign = if n % 2 == 1 { 2 } else { -2 };
                let c = Rational::new(
                    BigInt::from(sign)
                        * BigInt::from(m as u64 / d)
                        * BigInt::from(d).pow(2 * n as u32),
                    factorial(2 * n as u64),
                );
                terms.push((n, m, c));
            }
        }
    }
    BiSeries::from_terms(terms, q_trunc, w_trunc)
}

/// `R_{g,k,1}^p` for `g ≤ g_max`, `p ≤ p_max`.
pub fn mpt_series(
    k: u32,
    g_max: u32,
    p_max: u32,
    conv: BernoulliConvention,
) -> BTreeMap<(u32, u32), Rational> {
    let w_trunc = g_max as i64 + 1;
    let q_trunc = p_max as i64 + 1;
    let exponent = (1..w_trunc).fold(BiSeries::zero(q_trunc, w_trunc), |acc, g| {
        let g = g as usize;
        let c = b2g(g, conv) / (rat(g as i64) * Rational::from_integer(factorial(2 * g as u64)));
        let e = eisenstein(g, q_trunc).scale(&c);
        acc.add(&BiSeries::from_inner(g as i64, e, w_trunc))
    });
    let mut total = exponent.exp().expect("exponent has positive w-valuation");
    total = total.mul(&BiSeries::from_inner(
        0,
        delta_inverse(q_trunc - 1).shift(1),
        w_trunc,
    ));
    let last = mpt_last_factor(w_trunc, q_trunc);
    for _ in 0..k {
        total = total.mul(&last);
    }
    let mut out = BTreeMap::new();
    for g in 0..=g_max {
        for p in 0..=p_max {
            out.insert((g, p), total.coeff(g as i64, p as i64));
        }
    }
    out
}

/// Outcome of comparing both Bernoulli readings against the KKV invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MptCalibration {
    pub unsigned_matches: bool,
    pub signed_matches: bool,
    pub chosen: Option<BernoulliConvention>,
}

/// Compares `mpt_series(0, …)` with `bps_forward(kkv_table)` at `m = 1`.
pub fn calibrate_mpt(g_max: u32, p_max: u32) -> Result<MptCalibration> {
    let kkv = kkv_table(p_max)?;
    let forward = bps_forward(&kkv, p_max, 1, g_max);
    let matches = |conv| {
        let mpt = mpt_series(0, g_max, p_max, conv);
        mpt.iter().all(|(&(g, p), v)| *v == forward.get(g, 1, p))
    };
    let unsigned_matches = matches(BernoulliConvention::Unsigned);
    let signed_matches = matches(BernoulliConvention::Signed);
    let chosen = match (unsigned_matches, signed_matches) {
        (true, false) => Some(BernoulliConvention::Unsigned),
        (false, true) => Some(BernoulliConvention::Signed),
        _ => None,
    };
    Ok(MptCalibration {
        unsigned_matches,
        signed_matches,
        chosen,
    })
}

/// Instanton numbers of the quintic threefold used in the degree-10 example.
pub mod quintic {
    pub const N1: &str = "2875";
    pub const N2: &str = "609250";
    pub const N5: &str = "229305888887625";
    pub const N10: &str = "704288164978454686113488249750";
    /// 6-nodal plane quintic curves.
    pub const N5_PLANE: &str = "17601000";
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuinticReport {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub gw_degree10: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub closed_form: Rational,
    pub roundtrip_ok: bool,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub n10_circ: BigInt,
    pub pass: bool,
}

/// Assembles `N_10` from the instanton numbers and checks the printed
/// decomposition `n₁/10³ + n₂/5³ + n₅/2³ + n₁₀`.
pub fn quintic_check() -> QuinticReport {
    let parse = |s: &str| Rational::from_integer(s.parse::<BigInt>().expect("decimal"));
    let n: BTreeMap<u64, Rational> = [
        (1, parse(quintic::N1)),
        (2, parse(quintic::N2)),
        (5, parse(quintic::N5)),
        (10, parse(quintic::N10)),
    ]
    .into_iter()
    .collect();
    let big_n = genus0_forward(&n, 10);
    let gw = big_n[&10].clone();
    let closed_form = &n[&1] / rat(1000) + &n[&2] / rat(125) + &n[&5] / rat(8) + &n[&10];
    let back = genus0_invert(&big_n, 10);
    let roundtrip_ok =
        (1..=10).all(|d| back[&d] == n.get(&d).cloned().unwrap_or_else(Rational::zero));
    let n10: BigInt = quintic::N10.parse().expect("decimal");
    let plane: BigInt = quintic::N5_PLANE.parse().expect("decimal");
    let n10_circ: BigInt = n10 - plane * BigInt::from(6);
    let pass = gw == closed_form && roundtrip_ok && !n10_circ.is_negative();
    QuinticReport {
        gw_degree10: gw,
        closed_form,
        roundtrip_ok,
        n10_circ,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat_frac;

    #[test]
    fn genus0_kernel_printed_terms() {
        for d in 1..=4u64 {
            let k = bps_kernel(0, d, 8);
            let di = d as i64;
            assert_eq!(k.coeff_u(-2), rat_frac(1, di * di * di));
            assert_eq!(k.coeff_u(0), rat_frac(1, 12 * di));
            assert_eq!(k.coeff_u(2), rat_frac(di, 240));
            assert_eq!(k.coeff_u(4), rat_frac(di.pow(3), 6048));
            assert_eq!(k.coeff_u(6), rat_frac(di.pow(5), 172800));
        }
    }

    #[test]
    fn higher_genus_kernels() {
        let k1 = bps_kernel(1, 3, 8);
        assert_eq!(k1.coeff_u(0), rat_frac(1, 3));
        assert_eq!(k1.coeff_u(2), Rational::zero());
        let d = 2i64;
        let k2 = bps_kernel(2, 2, 10);
        assert_eq!(k2.coeff_u(2), rat(d));
        assert_eq!(k2.coeff_u(4), rat_frac(-d.pow(3), 12));
        assert_eq!(k2.coeff_u(6), rat_frac(d.pow(5), 360));
        assert_eq!(k2.coeff_u(8), rat_frac(-d.pow(7), 20160));
    }

    #[test]
    fn table2_values() {
        let t = kkv_table(4).unwrap();
        assert_eq!(t.get(0, 1, 1), rat(24));
        assert_eq!(t.get(1, 1, 1), rat(-2));
        assert_eq!(t.get(2, 1, 2), rat(3));
        assert_eq!(t.get(1, 1, 2), rat(-54));
        assert_eq!(t.get(0, 1, 3), rat(3200));
        assert_eq!(t.get(4, 1, 4), rat(5));
    }

    #[test]
    fn forward_m1_adds_genus0_tail() {
        let mut r = RTable::new();
        r.insert(0, 1, 3, rat(7));
        r.insert(1, 1, 3, rat(5));
        let big = bps_forward(&r, 3, 1, 1);
        assert_eq!(big.get(0, 1, 3), rat(7));
        assert_eq!(big.get(1, 1, 3), rat(5) + rat_frac(7, 12));
    }

    #[test]
    fn y1_specialization() {
        assert!(kkv_y1_check(0));
        assert!(kkv_y1_check(6));
        assert!(kkv_expansion(6).is_symmetric());
    }

    #[test]
    fn mpt_last_factor_leading_terms() {
        let f = mpt_last_factor(4, 3);
        assert_eq!(f.coeff(1, 1), rat(1));
        assert_eq!(f.coeff(2, 1), rat_frac(-1, 12));
    }

    #[test]
    fn mpt_k0_genus0_is_yau_zaslow() {
        let m = mpt_series(0, 1, 5, MPT_CONVENTION);
        let yz = yau_zaslow_series(6);
        for p in 0..=5 {
            assert_eq!(m[&(0, p)], yz.coeff(p as i64));
        }
    }

    #[test]
    fn quintic() {
        let r = quintic_check();
        assert!(r.pass);
        assert_eq!(
            r.n10_circ,
            "704288164978454686113382643750".parse::<BigInt>().unwrap()
        );
    }
}
