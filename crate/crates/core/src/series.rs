//! Truncated formal Laurent series with exact rational coefficients.
//!
//! A [`TruncatedSeries`] knows its coefficients exactly for every exponent
//! strictly below its truncation order `trunc`. Every operation computes the
//! largest truncation order for which the coefficients it emits are provably
//! exact, so precision loss shows up as a smaller `trunc` rather than as a
//! wrong coefficient.
//!
//! [`BiSeries`] is a series in an outer variable whose coefficients are
//! truncated Laurent series in an inner variable. Its outer exponents are
//! bounded below, so it models the ring "Laurent in the inner variable, power
//! series in the outer one"; 1/(q₁ − q₂) expands in powers of q₂/q₁ when q₂ is
//! the outer variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A Laurent series `Σ c_n qⁿ` known exactly for `n < trunc`.
///
/// No zero coefficient is ever stored and no stored exponent reaches `trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: BTreeMap<i64, Rational>,
    trunc: i64,
}

impl TruncatedSeries {
    pub fn zero(trunc: i64) -> Self {
        Self {
            coeffs: BTreeMap::new(),
            trunc,
        }
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(Rational::one(), 0, trunc)
    }

    pub fn monomial(c: Rational, exponent: i64, trunc: i64) -> Self {
        Self::from_terms([(exponent, c)], trunc)
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed; terms at or beyond `trunc` are dropped.
    pub fn from_terms<I>(terms: I, trunc: i64) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e < trunc {
                *coeffs.entry(e).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs, trunc }
    }

    /// Integer coefficients `coeffs[i]` at exponent `start + i`.
    pub fn from_integers(start: i64, coeffs: &[i64], trunc: i64) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (start + i as i64, rat(c))),
            trunc,
        )
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Lower bound on the exponents of nonzero coefficients: the valuation if
    /// the series is nonzero below `trunc`, otherwise `trunc` itself.
    pub fn min_exp(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.trunc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `qⁿ`.
    ///
    /// Panics if `n >= trunc`: that coefficient is unknown.
    pub fn coeff(&self, n: i64) -> Rational {
        self.get(n).unwrap_or_else(|| {
            panic!(
                "coefficient of q^{n} requested beyond truncation {}",
                self.trunc
            )
        })
    }

    /// Coefficient of `qⁿ`, or `None` when it lies beyond the truncation.
    pub fn get(&self, n: i64) -> Option<Rational> {
        (n < self.trunc).then(|| self.coeffs.get(&n).cloned().unwrap_or_else(Rational::zero))
    }

    /// Integer coefficient of `qⁿ`; `None` if beyond truncation or not integral.
    pub fn coeff_int(&self, n: i64) -> Option<BigInt> {
        self.get(n)
            .filter(|c| c.is_integer())
            .map(|c| c.to_integer())
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Lowers the truncation order to `min(self.trunc, trunc)`.
    pub fn truncate(&self, trunc: i64) -> Self {
        let trunc = trunc.min(self.trunc);
        Self {
            coeffs: self
                .coeffs
                .range(..trunc)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
            trunc,
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * s)), self.trunc)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
            trunc: self.trunc + k,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        Self::from_terms(
            self.terms()
                .chain(other.terms())
                .map(|(e, c)| (e, c.clone())),
            trunc,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
            trunc: self.trunc,
        }
    }

    /// Cauchy product. The result is exact below
    /// `min(a.trunc + b.min_exp, b.trunc + a.min_exp)`.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = (self.trunc + other.min_exp()).min(other.trunc + self.min_exp());
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                if ea + eb >= trunc {
                    break;
                }
                *out.entry(ea + eb).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self { coeffs: out, trunc }
    }

    /// Multiplicative inverse. A leading term `a_v q^v` is handled by
    /// shifting, so the result has valuation `-v` and truncation
    /// `trunc - 2v`.
    pub fn invert(&self) -> Result<Self> {
        let (&v, lead) = self
            .coeffs
            .iter()
            .next()
            .ok_or(Error::ZeroLeadingCoefficient { trunc: self.trunc })?;
        let lead_inv = lead.recip();
        let len = (self.trunc - v) as usize;
        let a: Vec<Rational> = (0..len).map(|i| self.coeff(v + i as i64)).collect();
        let mut b: Vec<Rational> = Vec::with_capacity(len);
        b.push(lead_inv.clone());
        for n in 1..len {
            let mut acc = Rational::zero();
            for i in 1..=n {
                if !a[i].is_zero() && !b[n - i].is_zero() {
                    acc += &a[i] * &b[n - i];
                }
            }
            b.push(-acc * &lead_inv);
        }
        Ok(Self::from_terms(
            b.into_iter().enumerate().map(|(n, c)| (n as i64 - v, c)),
            self.trunc - 2 * v,
        ))
    }

    /// `self / other`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert()?))
    }

    /// Integer power; negative exponents go through [`Self::invert`].
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.invert()?.pow(-n);
        }
        let mut result = Self::one(self.trunc.max(self.trunc - self.min_exp()));
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Formal exponential of a series with positive valuation.
    pub fn exp(&self) -> Result<Self> {
        if let Some((&e, _)) = self.coeffs.iter().next() {
            if e <= 0 {
                return Err(Error::NonzeroConstantTerm { exponent: e });
            }
        }
        if self.trunc < 1 {
            return Err(Error::OutOfRange(format!(
                "exp needs the constant term to be known (trunc = {})",
                self.trunc
            )));
        }
        // n b_n = Σ_{k=1}^{n} k a_k b_{n-k}
        let len = self.trunc as usize;
        let a: Vec<Rational> = (0..len).map(|i| self.coeff(i as i64)).collect();
        let mut b: Vec<Rational> = Vec::with_capacity(len);
        b.push(Rational::one());
        for n in 1..len {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !a[k].is_zero() && !b[n - k].is_zero() {
                    acc += &a[k] * &b[n - k] * rat(k as i64);
                }
            }
            b.push(acc / rat(n as i64));
        }
        Ok(Self::from_terms(
            b.into_iter().enumerate().map(|(n, c)| (n as i64, c)),
            self.trunc,
        ))
    }

    /// The operator `D = q d/dq`.
    pub fn q_derivative(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * rat(e))), self.trunc)
    }

    /// The substitution `q -> q^d`.
    pub fn substitute_power(&self, d: u32) -> Self {
        assert!(d >= 1, "substitute_power needs d >= 1");
        let d = d as i64;
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e * d, c.clone()))
                .collect(),
            trunc: self.trunc * d,
        }
    }

    /// Lowest nonzero term, if any.
    pub fn leading_term(&self) -> Option<(i64, &Rational)> {
        self.coeffs.iter().next().map(|(&e, c)| (e, c))
    }
}

/// `∏_{n ≥ 1} (1 − qⁿ)^{e(n)}`, exact below `trunc`.
///
/// Uses the logarithmic-derivative recurrence
/// `m p_m = Σ_{k=1}^{m} c_k p_{m-k}` with `c_k = -Σ_{n | k} n e(n)`, which
/// keeps everything in integers.
pub fn product_form<F>(exponent: F, trunc: i64) -> TruncatedSeries
where
    F: Fn(u64) -> i64,
{
    if trunc <= 0 {
        return TruncatedSeries::zero(trunc);
    }
    let len = trunc as usize;
    let e: Vec<i64> = (0..len as u64)
        .map(|n| if n == 0 { 0 } else { exponent(n) })
        .collect();
    let mut c = vec![BigInt::zero(); len];
    for n in 1..len {
        if e[n] == 0 {
            continue;
        }
        let v = BigInt::from(n as i64) * BigInt::from(e[n]);
        for m in (n..len).step_by(n) {
            c[m] -= &v;
        }
    }
    let mut p: Vec<BigInt> = Vec::with_capacity(len);
    p.push(BigInt::one());
    for m in 1..len {
        let mut acc = BigInt::zero();
        for k in 1..=m {
            if !c[k].is_zero() && !p[m - k].is_zero() {
                acc += &c[k] * &p[m - k];
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(m as i64));
        debug_assert!(r.is_zero());
        p.push(q);
    }
    TruncatedSeries::from_terms(
        p.into_iter()
            .enumerate()
            .map(|(i, c)| (i as i64, Rational::from_integer(c))),
        trunc,
    )
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc)
    }
}

/// A series in an outer variable with [`TruncatedSeries`] coefficients in an
/// inner variable.
///
/// Outer coefficients below `outer_min` vanish identically. Outer exponents
/// in `[outer_min, trunc2)` are known, each to inner precision `trunc1`; a
/// missing entry there means "zero below `trunc1`".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    coeffs: BTreeMap<i64, TruncatedSeries>,
    outer_min: i64,
    trunc1: i64,
    trunc2: i64,
}

impl BiSeries {
    pub fn zero(trunc1: i64, trunc2: i64) -> Self {
        Self {
            coeffs: BTreeMap::new(),
            outer_min: trunc2,
            trunc1,
            trunc2,
        }
    }

    pub fn one(trunc1: i64, trunc2: i64) -> Self {
        Self::from_inner(0, TruncatedSeries::one(trunc1), trunc2)
    }

    /// `inner · outer^k`.
    pub fn from_inner(k: i64, inner: TruncatedSeries, trunc2: i64) -> Self {
        let trunc1 = inner.trunc();
        Self::assemble([(k, inner)].into_iter().collect(), k, trunc1, trunc2)
    }

    /// Lifts a series in the outer variable with constant inner coefficients.
    pub fn from_outer(outer: &TruncatedSeries, trunc1: i64) -> Self {
        let coeffs = outer
            .terms()
            .map(|(e, c)| (e, TruncatedSeries::monomial(c.clone(), 0, trunc1)))
            .collect();
        Self::assemble(coeffs, outer.min_exp(), trunc1, outer.trunc())
    }

    /// Builds from `(outer exponent, inner exponent, coefficient)` triples.
    pub fn from_terms<I>(terms: I, trunc1: i64, trunc2: i64) -> Self
    where
        I: IntoIterator<Item = (i64, i64, Rational)>,
    {
        let mut grouped: BTreeMap<i64, Vec<(i64, Rational)>> = BTreeMap::new();
        for (o, i, c) in terms {
            grouped.entry(o).or_default().push((i, c));
        }
        let coeffs: BTreeMap<i64, TruncatedSeries> = grouped
            .into_iter()
            .map(|(o, t)| (o, TruncatedSeries::from_terms(t, trunc1)))
            .collect();
        let outer_min = coeffs.keys().next().copied().unwrap_or(trunc2);
        Self::assemble(coeffs, outer_min, trunc1, trunc2)
    }

    /// Normalizes raw coefficient series: the shared inner truncation becomes
    /// the smallest one present, zero coefficients are dropped.
    fn assemble(
        raw: BTreeMap<i64, TruncatedSeries>,
        outer_min: i64,
        default_trunc1: i64,
        trunc2: i64,
    ) -> Self {
        let trunc1 = raw
            .values()
            .map(|s| s.trunc())
            .min()
            .unwrap_or(default_trunc1);
        let coeffs = raw
            .into_iter()
            .filter(|(o, _)| *o < trunc2)
            .map(|(o, s)| (o, s.truncate(trunc1)))
            .filter(|(_, s)| !s.is_zero())
            .collect();
        Self {
            coeffs,
            outer_min: outer_min.min(trunc2),
            trunc1,
            trunc2,
        }
    }

    pub fn trunc1(&self) -> i64 {
        self.trunc1
    }

    pub fn trunc2(&self) -> i64 {
        self.trunc2
    }

    pub fn outer_min(&self) -> i64 {
        self.outer_min
    }

    /// Inner coefficient series of `outer^k`; panics beyond `trunc2`.
    pub fn inner(&self, k: i64) -> TruncatedSeries {
        assert!(
            k < self.trunc2,
            "outer exponent {k} beyond truncation {}",
            self.trunc2
        );
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(self.trunc1))
    }

    /// Coefficient of `outer^k inner^n`.
    pub fn coeff(&self, k: i64, n: i64) -> Rational {
        self.inner(k).coeff(n)
    }

    pub fn nonzero_outer(&self) -> impl Iterator<Item = (i64, &TruncatedSeries)> {
        self.coeffs.iter().map(|(&k, s)| (k, s))
    }

    /// Coefficient series at `k`, with a missing entry inside the known
    /// range standing for "zero to inner precision".
    fn slot(&self, k: i64) -> TruncatedSeries {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(self.trunc1))
    }

    pub fn restrict(&self, trunc1: i64, trunc2: i64) -> Self {
        let raw = self
            .coeffs
            .iter()
            .map(|(&k, s)| (k, s.truncate(trunc1)))
            .collect();
        Self::assemble(
            raw,
            self.outer_min,
            trunc1.min(self.trunc1),
            trunc2.min(self.trunc2),
        )
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let raw = self.coeffs.iter().map(|(&k, c)| (k, c.scale(s))).collect();
        Self::assemble(raw, self.outer_min, self.trunc1, self.trunc2)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Multiplication by `outer^k`.
    pub fn shift_outer(&self, k: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, s)| (e + k, s.clone()))
                .collect(),
            outer_min: self.outer_min + k,
            trunc1: self.trunc1,
            trunc2: self.trunc2 + k,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc2 = self.trunc2.min(other.trunc2);
        let outer_min = self.outer_min.min(other.outer_min);
        let mut raw = BTreeMap::new();
        for k in outer_min..trunc2 {
            let s = self.slot(k).add(&other.slot(k));
            raw.insert(k, s);
        }
        Self::assemble(raw, outer_min, self.trunc1.min(other.trunc1), trunc2)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let trunc2 = (self.trunc2 + other.outer_min).min(other.trunc2 + self.outer_min);
        let outer_min = self.outer_min + other.outer_min;
        let mut raw = BTreeMap::new();
        for n in outer_min..trunc2 {
            let mut acc: Option<TruncatedSeries> = None;
            for i in self.outer_min..self.trunc2 {
                let j = n - i;
                if j < other.outer_min || j >= other.trunc2 {
                    continue;
                }
                let term = self.slot(i).mul(&other.slot(j));
                acc = Some(match acc {
                    Some(a) => a.add(&term),
                    None => term,
                });
            }
            if let Some(s) = acc {
                raw.insert(n, s);
            }
        }
        Self::assemble(raw, outer_min, self.trunc1.min(other.trunc1), trunc2)
    }

    /// Inverse in the mixed ring. The coefficient at `outer_min` must be an
    /// invertible inner series.
    pub fn invert(&self) -> Result<Self> {
        let v = self.outer_min;
        let lead = self.coeffs.get(&v).ok_or(Error::NonInvertibleLeading)?;
        let lead_inv = lead.invert().map_err(|_| Error::NonInvertibleLeading)?;
        let len = (self.trunc2 - v).max(0) as usize;
        let mut b: Vec<TruncatedSeries> = Vec::with_capacity(len);
        if len > 0 {
            b.push(lead_inv.clone());
        }
        for n in 1..len {
            let mut acc: Option<TruncatedSeries> = None;
            for i in 1..=n {
                let term = self.slot(v + i as i64).mul(&b[n - i]);
                acc = Some(match acc {
                    Some(a) => a.add(&term),
                    None => term,
                });
            }
            b.push(acc.expect("n >= 1").mul(&lead_inv).neg());
        }
        let raw = b
            .into_iter()
            .enumerate()
            .map(|(n, s)| (n as i64 - v, s))
            .collect();
        Ok(Self::assemble(
            raw,
            -v,
            lead_inv.trunc(),
            self.trunc2 - 2 * v,
        ))
    }

    /// Formal exponential; the argument must have no outer terms at
    /// exponents `<= 0`.
    pub fn exp(&self) -> Result<Self> {
        if let Some((&k, _)) = self.coeffs.iter().next() {
            if k <= 0 {
                return Err(Error::NonzeroConstantTerm { exponent: k });
            }
        }
        let len = self.trunc2.max(0) as usize;
        let mut b: Vec<TruncatedSeries> = Vec::with_capacity(len);
        if len > 0 {
            b.push(TruncatedSeries::one(self.trunc1));
        }
        for n in 1..len {
            let mut acc = TruncatedSeries::zero(self.trunc1);
            for k in 1..=n {
                if let Some(a) = self.coeffs.get(&(k as i64)) {
                    acc = acc.add(&a.mul(&b[n - k]).scale(&rat(k as i64)));
                }
            }
            b.push(acc.scale(&rat_frac(1, n as i64)));
        }
        let raw = b
            .into_iter()
            .enumerate()
            .map(|(n, s)| (n as i64, s))
            .collect();
        Ok(Self::assemble(raw, 0, self.trunc1, self.trunc2))
    }

    /// True iff both series are known on the window and agree there.
    pub fn agrees_on(&self, other: &Self, trunc1: i64, trunc2: i64) -> bool {
        self.first_disagreement(other, trunc1, trunc2).is_none()
    }

    /// First `(outer, inner)` index in the window where the two series
    /// differ, or where either is not known precisely enough.
    pub fn first_disagreement(&self, other: &Self, trunc1: i64, trunc2: i64) -> Option<(i64, i64)> {
        if self.trunc1 < trunc1 || other.trunc1 < trunc1 {
            return Some((
                self.outer_min.min(other.outer_min),
                trunc1.min(self.trunc1).min(other.trunc1),
            ));
        }
        if self.trunc2 < trunc2 || other.trunc2 < trunc2 {
            return Some((self.trunc2.min(other.trunc2), 0));
        }
        let lo = self.outer_min.min(other.outer_min);
        for k in lo..trunc2 {
            let a = self.slot(k).truncate(trunc1);
            let b = other.slot(k).truncate(trunc1);
            if a != b {
                let first = a
                    .terms()
                    .chain(b.terms())
                    .map(|(e, _)| e)
                    .filter(|&e| a.coeff(e) != b.coeff(e))
                    .min()
                    .unwrap_or(0);
                return Some((k, first));
            }
        }
        None
    }
}

/// Renders a rational as `a` or `a/b`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The value as an `i64`, if it is an integer that fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}
