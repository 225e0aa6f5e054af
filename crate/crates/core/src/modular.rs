//! q-expansions of Eisenstein series, the normalized discriminant, `j` and
//! the weight-10 quotient `f`.
//!
//! Eisenstein series are indexed by half their weight:
//!
//! | here  | weight | classical name |
//! |-------|--------|----------------|
//! | `E_1` | 2      | `E_2` (quasi-modular) |
//! | `E_2` | 4      | `E_4` |
//! | `E_3` | 6      | `E_6` |
//! | `E_5` | 10     | `E_10 = E_4 E_6` |
//!
//! With this indexing `E_k = 1 + (−1)^k (4k/B_k) Σ σ_{2k−1}(n) qⁿ` with
//! positive Bernoulli numbers, which also gives `E_1 = 1 − 24 Σ σ₁(n) qⁿ`.
//!
//! `Δ_norm = q ∏ (1−qⁿ)²⁴` is the discriminant with its `(2π)¹²` removed, so
//! every object here has rational coefficients.

use crate::arith::{bernoulli, sigma};
use crate::k3counts::gbl_series;
use crate::series::{product_form, rat, rat_frac, Rational, TruncatedSeries};

/// `E_k` (weight `2k`), exact below `trunc`.
pub fn eisenstein(k: usize, trunc: i64) -> TruncatedSeries {
    assert!(k >= 1, "eisenstein needs k >= 1");
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let factor = rat(sign * 4 * k as i64) / bernoulli(k);
    let power = (2 * k - 1) as u32;
    let terms = std::iter::once((0, Rational::from_integer(1.into()))).chain(
        (1..trunc.max(1)).map(|n| (n, &factor * Rational::from_integer(sigma(power, n as u64)))),
    );
    TruncatedSeries::from_terms(terms, trunc)
}

/// `q ∏ (1−qⁿ)²⁴`, exact below `trunc`.
pub fn delta_normalized(trunc: i64) -> TruncatedSeries {
    product_form(|_| 24, trunc - 1).shift(1)
}

/// `1/Δ_norm`, exact below `trunc`.
pub fn delta_inverse(trunc: i64) -> TruncatedSeries {
    delta_normalized(trunc + 2)
        .invert()
        .expect("Δ_norm has leading coefficient 1")
}

/// `j = E_2³ / Δ_norm = q⁻¹ + 744 + 196884 q + …`, exact below `trunc`.
pub fn j_normalized(trunc: i64) -> TruncatedSeries {
    let e2 = eisenstein(2, trunc + 1);
    e2.mul(&e2)
        .mul(&e2)
        .mul(&delta_inverse(trunc))
        .truncate(trunc)
}

/// `f = E_2 E_3 / Δ_norm = Σ c(n) qⁿ`, exact below `trunc`.
pub fn f_series(trunc: i64) -> TruncatedSeries {
    eisenstein(2, trunc + 1)
        .mul(&eisenstein(3, trunc + 1))
        .mul(&delta_inverse(trunc))
        .truncate(trunc)
}

/// `−(1/24) D E_1 = Σ n σ₁(n) qⁿ`, exact below `trunc`.
pub fn minus_de1_over_24(trunc: i64) -> TruncatedSeries {
    eisenstein(1, trunc).q_derivative().scale(&rat_frac(-1, 24))
}

/// Quasi-modularity of the genus-`g` series.
///
/// Checks `q⁻¹ F_g = (−(1/24) D E_1)^g · Δ_norm⁻¹` below `trunc`. The left
/// side comes from [`gbl_series`], the right side only from Eisenstein
/// series and the discriminant.
pub fn quasimodular_check_f_g(g: usize, trunc: i64) -> bool {
    let lhs = gbl_series(g, trunc + 1).series.shift(-1);
    let rhs = minus_de1_over_24(trunc + 1)
        .pow(g as i64)
        .expect("non-negative power")
        .mul(&delta_inverse(trunc));
    lhs.truncate(trunc) == rhs.truncate(trunc) && rhs.trunc() >= trunc
}
