//! Noether–Lefschetz numbers of the STU model and the identities that tie
//! them to genus-0 K3 invariants.
//!
//! Bivariate series live in [`BiSeries`] with `q₂` as the outer variable and
//! `q₁` as the inner one, i.e. in the domain `|q₂| < |q₁| < 1`. There
//! `q₁/(q₁ − q₂) = Σ_{n ≥ 0} (q₂/q₁)ⁿ`.
//!
//! The Harvey–Moore identity
//!
//! ```text
//! f(q₁) E₂(q₂) / (j(q₁) − j(q₂)) = −q₁/(q₁ − q₂) + E₂(q₂) − Σ_{d,k,l>0} l³ c(kl) q₁^{kd} q₂^{ld}
//! ```
//!
//! holds with a minus sign in front of `q₁/(q₁ − q₂)`. With a plus sign the
//! two sides differ on every diagonal term `(q₂/q₁)ⁿ`, in this domain and in
//! the opposite one. [`HarveyMooreSign`] keeps both forms so the mismatch
//! stays testable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{divisors, gcd};
use crate::k3counts::yau_zaslow_series;
use crate::modular::{eisenstein, f_series, j_normalized};
use crate::series::{format_rational, rat, BiSeries, Rational, TruncatedSeries};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NLQuery {
    pub p: i64,
    pub d1: i64,
    pub d2: i64,
}

/// The hyperbolic plane `(0 1; 1 0)` polarizing the STU K3 fibers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct STULattice {
    pub gram: [[i64; 2]; 2],
}

impl Default for STULattice {
    fn default() -> Self {
        Self {
            gram: [[0, 1], [1, 0]],
        }
    }
}

impl STULattice {
    /// `(−1)^{r−1} det` with `r = 2`.
    pub fn discriminant(&self) -> i64 {
        let g = self.gram;
        -(g[0][0] * g[1][1] - g[0][1] * g[1][0])
    }

    /// The 3×3 Gram matrix after adjoining a class of self-intersection
    /// `2p − 2` pairing to `d₁, d₂` with the lattice basis.
    pub fn extended_gram(&self, q: NLQuery) -> [[i64; 3]; 3] {
        let g = self.gram;
        [
            [g[0][0], g[0][1], q.d1],
            [g[1][0], g[1][1], q.d2],
            [q.d1, q.d2, 2 * q.p - 2],
        ]
    }
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `Δ(p, d₁, d₂)` by cofactor expansion of the extended Gram matrix.
pub fn discriminant_delta(q: NLQuery) -> i64 {
    det3(STULattice::default().extended_gram(q))
}

/// What [`nl_number`] does at `Δ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaZeroPolicy {
    /// Read the `q⁰` coefficient of `−4E₂E₃`, which is `−4`.
    Include,
    /// Treat the `Δ = 0` divisor as contributing nothing.
    Exclude,
}

/// `−4 E₂ E₃`, exact below `trunc`.
pub fn nl_generating_series(trunc: i64) -> TruncatedSeries {
    eisenstein(2, trunc)
        .mul(&eisenstein(3, trunc))
        .scale(&rat(-4))
}

/// `[q^{Δ/2}] (−4 E₂ E₃)`, or 0 when `Δ < 0`.
pub fn nl_number(q: NLQuery, trunc: i64) -> Result<BigInt> {
    nl_number_with(q, trunc, DeltaZeroPolicy::Include)
}

pub fn nl_number_with(q: NLQuery, trunc: i64, policy: DeltaZeroPolicy) -> Result<BigInt> {
    let delta = discriminant_delta(q);
    if delta < 0 || (delta == 0 && policy == DeltaZeroPolicy::Exclude) {
        return Ok(BigInt::zero());
    }
    let half = delta / 2;
    if half >= trunc {
        return Err(Error::InsufficientTruncation {
            trunc,
            needed: half + 1,
        });
    }
    Ok(nl_generating_series(half + 1)
        .coeff_int(half)
        .expect("integral coefficient"))
}

/// `f(q₁) E₂(q₂) / (j(q₁) − j(q₂))`, exact at least on `q₁`-exponents below
/// `trunc1` and `q₂`-exponents below `trunc2`.
pub fn harvey_moore_lhs(f: &TruncatedSeries, trunc1: i64, trunc2: i64) -> Result<BiSeries> {
    // Expanding 1/(j(q₁) − j(q₂)) to q₂-order n costs about n orders of q₁.
    let t1 = trunc1 + trunc2 + 2;
    let t2 = trunc2 + 1;
    let j1 = BiSeries::from_inner(0, j_normalized(t1 + t2), t2 + 1);
    let j2 = BiSeries::from_outer(&j_normalized(t2 + 1), t1 + t2);
    let denom_inv = j1.sub(&j2).invert()?;
    let f1 = BiSeries::from_inner(0, f.truncate(t1 + t2), t2 + 1);
    let e2 = BiSeries::from_outer(&eisenstein(2, t2 + 1), t1 + t2);
    Ok(f1.mul(&e2).mul(&denom_inv).restrict(trunc1, trunc2))
}

/// Sign of the `q₁/(q₁ − q₂)` term on the right side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HarveyMooreSign {
    /// `−q₁/(q₁ − q₂)`; the identity holds.
    Corrected,
    /// `+q₁/(q₁ − q₂)`.
    AsPrinted,
}

/// Right side of the Harvey–Moore identity on the window, with the
/// coefficients `c(n)` read from `f`.
pub fn harvey_moore_rhs(
    f: &TruncatedSeries,
    trunc1: i64,
    trunc2: i64,
    sign: HarveyMooreSign,
) -> BiSeries {
    // each power of q₂/q₁ costs one order of q₁ precision
    let ratio = BiSeries::from_terms(
        [(0, 0, Rational::one()), (1, -1, -Rational::one())],
        trunc1 + trunc2,
        trunc2,
    );
    let mut geometric = ratio
        .invert()
        .expect("leading coefficient 1")
        .restrict(trunc1, trunc2);
    if sign == HarveyMooreSign::Corrected {
        geometric = geometric.neg();
    }
    let e2 = BiSeries::from_outer(&eisenstein(2, trunc2), trunc1);
    let mut terms = Vec::new();
    for d in 1..trunc1.min(trunc2).max(1) {
        for k in 1.. {
            if k * d >= trunc1 {
                break;
            }
            for l in 1.. {
                if l * d >= trunc2 {
                    break;
                }
                let c = f.coeff(k * l);
                terms.push((l * d, k * d, -(c * rat(l * l * l))));
            }
        }
    }
    let sum = BiSeries::from_terms(terms, trunc1, trunc2);
    geometric.add(&e2).add(&sum)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarveyMooreReport {
    pub trunc1: i64,
    pub trunc2: i64,
    pub sign: HarveyMooreSign,
    pub agrees: bool,
    /// First `(q₂ exponent, q₁ exponent)` where the sides differ.
    pub first_mismatch: Option<(i64, i64)>,
}

/// Compares both sides on `q₁`-exponents below `trunc1`, `q₂`-exponents
/// below `trunc2`.
pub fn harvey_moore_compare(
    f: &TruncatedSeries,
    trunc1: i64,
    trunc2: i64,
    sign: HarveyMooreSign,
) -> Result<HarveyMooreReport> {
    if trunc1 < 2 || trunc2 < 2 {
        return Err(Error::OutOfRange(
            "Harvey–Moore window must be at least (2, 2)".into(),
        ));
    }
    let needed = trunc1 * trunc2;
    if f.trunc() < needed {
        return Err(Error::InsufficientTruncation {
            trunc: f.trunc(),
            needed,
        });
    }
    let lhs = harvey_moore_lhs(f, trunc1, trunc2)?;
    let rhs = harvey_moore_rhs(f, trunc1, trunc2, sign);
    let first_mismatch = lhs.first_disagreement(&rhs, trunc1, trunc2);
    Ok(HarveyMooreReport {
        trunc1,
        trunc2,
        sign,
        agrees: first_mismatch.is_none(),
        first_mismatch,
    })
}

/// The identity with the actual `f` on the given window.
pub fn harvey_moore_check(trunc1: i64, trunc2: i64) -> Result<bool> {
    let f = f_series(trunc1 * trunc2);
    Ok(harvey_moore_compare(&f, trunc1, trunc2, HarveyMooreSign::Corrected)?.agrees)
}

/// `N^X_{0,(d₁,d₂)}` for `0 ≤ d₁ ≤ d1_max`, `1 ≤ d₂ ≤ d2_max`, extracted
/// from `−2 + 2 f(q₁) E₂(q₂)/(j(q₁) − j(q₂)) = Σ d₂³ N^X q₁^{d₁} q₂^{d₂}`.
pub fn kml_series(d1_max: i64, d2_max: i64) -> Result<BTreeMap<(i64, i64), Rational>> {
    if d2_max < 1 {
        return Err(Error::DivisionByZeroDegree);
    }
    if d1_max < 0 {
        return Err(Error::OutOfRange("d1_max must be non-negative".into()));
    }
    let (t1, t2) = (d1_max + 1, d2_max + 1);
    let f = f_series(t1 + 2 * t2 + 4);
    let lhs = harvey_moore_lhs(&f, t1, t2)?;
    let series = lhs.scale(&rat(2));
    let mut out = BTreeMap::new();
    for d2 in 1..=d2_max {
        for d1 in 0..=d1_max {
            out.insert((d1, d2), series.coeff(d2, d1) / rat(d2 * d2 * d2));
        }
    }
    Ok(out)
}

/// `N^X_{0,(d₁,d₂)}` from the coefficients of `f` alone: for `d₁, d₂ ≥ 1`
/// it equals `−(2/d₂³) Σ_{e | gcd(d₁,d₂)} (d₂/e)³ c(d₁d₂/e²)`, and for
/// `d₁ = 0` it is `2·240 σ₃(d₂)/d₂³`.
pub fn kml_coefficient(d1: i64, d2: i64) -> Result<Rational> {
    if d2 == 0 {
        return Err(Error::DivisionByZeroDegree);
    }
    if d1 < 0 || d2 < 0 {
        return Err(Error::OutOfRange(
            "only d1 >= 0, d2 >= 1 is representable".into(),
        ));
    }
    let cube = rat(d2 * d2 * d2);
    if d1 == 0 {
        let e2 = eisenstein(2, d2 + 1);
        return Ok(e2.coeff(d2) * rat(2) / cube);
    }
    let f = f_series(d1 * d2 + 1);
    let total = divisors(gcd(d1, d2) as u64)
        .into_iter()
        .fold(Rational::zero(), |acc, e| {
            let e = e as i64;
            let l = d2 / e;
            acc + f.coeff(d1 * d2 / (e * e)) * rat(l * l * l)
        });
    Ok(-total * rat(2) / cube)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub d1: i64,
    pub d2: i64,
    pub policy: DeltaZeroPolicy,
    /// `2 N^X_{0,(d₁,d₂)}`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lhs: Rational,
    /// `Σ_p N_0^p NL_{p,(d₁,d₂)}`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub rhs: Rational,
    /// `lhs / rhs`, absent when `rhs = 0`.
    pub ratio: Option<String>,
    /// The ratio at `(1, 1)`.
    pub calibration: Option<String>,
    pub pass: bool,
}

fn pipeline_sides(d1: i64, d2: i64, policy: DeltaZeroPolicy) -> Result<(Rational, Rational)> {
    if d1 < 1 || d2 < 1 || gcd(d1, d2) != 1 {
        return Err(Error::NotCoprime { p: d1, q: d2 });
    }
    let kml = kml_series(d1, d2)?;
    let lhs = &kml[&(d1, d2)] * rat(2);
    let p_top = d1 * d2 + 1;
    let yz = yau_zaslow_series(p_top + 1);
    let mut rhs = Rational::zero();
    for p in 0..=p_top {
        let nl = nl_number_with(NLQuery { p, d1, d2 }, p_top + 1, policy)?;
        rhs += yz.coeff(p) * Rational::from_integer(nl);
    }
    Ok((lhs, rhs))
}

/// Checks `2 N^X = c · Σ_p N_0^p NL_{p,(d₁,d₂)}` with `c` fixed at `(1, 1)`.
pub fn yz_pipeline_check(d1: i64, d2: i64, policy: DeltaZeroPolicy) -> Result<PipelineReport> {
    let (l0, r0) = pipeline_sides(1, 1, policy)?;
    let calibration = (!r0.is_zero()).then(|| l0 / r0);
    let (lhs, rhs) = pipeline_sides(d1, d2, policy)?;
    let ratio = (!rhs.is_zero()).then(|| &lhs / &rhs);
    let pass = ratio.is_some() && ratio == calibration;
    Ok(PipelineReport {
        d1,
        d2,
        policy,
        ratio: ratio.as_ref().map(format_rational),
        calibration: calibration.as_ref().map(format_rational),
        lhs,
        rhs,
        pass,
    })
}
