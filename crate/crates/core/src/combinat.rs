//! Admissible sequences and the genus-0 invariants of the blown-up plane.
//!
//! An admissible sequence of weight `a` is a tuple `(k_{−a}, …, k_a)` of
//! non-negative integers whose positive entries form a contiguous block
//! containing index 0. The weight is `Σ k_l`: a stable map with this datum
//! pushes forward to `E + Σ k_s Σ_s`, and each `Σ_s` maps onto the same
//! rational curve `R`, so the total degree over `R` is `Σ k_s = a`.
//!
//! To each sequence belongs the class `k₀H − (k₀−1)E − Σ …` on a blow-up of
//! the plane ([`class_of_sequence`]). Its invariant is evaluated by
//! [`BlowupEvaluator`], a memoized search over the following rules:
//!
//! 1. `N(1) = 1`, and `N(d; d−1) = 1`;
//! 2. multiplicities 0 and 1 may be dropped;
//! 3. multiplicities may be permuted;
//! 4. a negative multiplicity forces 0, unless the class is an exceptional
//!    curve `E_i` (`d = 0`, one multiplicity `−1`, the rest 0), which gives 1;
//! 5. quadratic Cremona moves on any three multiplicities.
//!
//! The search only follows Cremona moves that do not raise the degree, and
//! it chooses the triples among all multiplicities including the 1s, which
//! are stripped only when testing the base cases. Anything it cannot reach
//! within the depth cap is reported as [`BlowupValue::Undecided`].

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::arith::{partition_counts, sigma};
use crate::{Error, Result};

/// Default depth cap for [`blowup_eval`].
pub const DEFAULT_MAX_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AdmissibleSequence {
    a: usize,
    /// `k[l + a]` holds `k_l`.
    k: Vec<u32>,
}

impl AdmissibleSequence {
    /// Validates `k = (k_{−a}, …, k_a)`; `k.len()` must be odd.
    pub fn new(k: Vec<u32>) -> Result<Self> {
        if k.len() % 2 == 0 {
            return Err(Error::OutOfRange(
                "an admissible sequence has odd length 2a+1".into(),
            ));
        }
        let a = k.len() / 2;
        let weight: u64 = k.iter().map(|&x| x as u64).sum();
        if a == 0 || weight != a as u64 {
            return Err(Error::OutOfRange(format!(
                "weight {weight} does not match a = {a}"
            )));
        }
        if k[a] == 0 {
            return Err(Error::OutOfRange("k_0 must be positive".into()));
        }
        let lo = k.iter().position(|&x| x > 0).unwrap_or(0);
        let hi = k.iter().rposition(|&x| x > 0).unwrap_or(0);
        if k[lo..=hi].contains(&0) {
            return Err(Error::OutOfRange(
                "positive support must be contiguous".into(),
            ));
        }
        Ok(Self { a, k })
    }

    pub fn weight(&self) -> usize {
        self.a
    }

    /// `k_l`, zero outside `−a..=a`.
    pub fn get(&self, l: i64) -> u32 {
        let i = l + self.a as i64;
        if i < 0 || i as usize >= self.k.len() {
            0
        } else {
            self.k[i as usize]
        }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.k
    }
}

/// All admissible sequences of weight `a`, ordered by support then entries.
pub fn enumerate_admissible(a: usize) -> Vec<AdmissibleSequence> {
    assert!(a >= 1, "weight must be positive");
    let mut out = Vec::new();
    for len in 1..=a {
        let mut comps = Vec::new();
        compositions(a, len, &mut Vec::new(), &mut comps);
        for start in -(len as i64 - 1)..=0 {
            for comp in &comps {
                let mut k = vec![0u32; 2 * a + 1];
                for (t, &v) in comp.iter().enumerate() {
                    k[(start + t as i64 + a as i64) as usize] = v;
                }
                out.push(AdmissibleSequence { a, k });
            }
        }
    }
    out
}

fn compositions(n: usize, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        if n == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    for first in 1..=(n + 1 - parts) {
        prefix.push(first as u32);
        compositions(n - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// `k_s − 1 ≤ k_{s+1} ≤ k_s` and `k_{−s} − 1 ≤ k_{−s−1} ≤ k_{−s}` for
/// `0 ≤ s < a`.
pub fn is_pyramidal(s: &AdmissibleSequence) -> bool {
    (0..s.a as i64).all(|i| {
        let step = |from: u32, to: u32| to <= from && to + 1 >= from;
        step(s.get(i), s.get(i + 1)) && step(s.get(-i), s.get(-i - 1))
    })
}

/// All partitions of `n`, parts in non-increasing order.
pub fn partitions(n: usize) -> Vec<Vec<u32>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part as u32);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Young diagram of each partition of `a`, mapped to the sequence counting
/// its blocks on each diagonal `y − x = s`.
///
/// Row `y` of the diagram has `λ_{y+1}` blocks at `x = 0, …, λ_{y+1} − 1`.
pub fn young_bijection(a: usize) -> Vec<(Vec<u32>, AdmissibleSequence)> {
    partitions(a)
        .into_iter()
        .map(|lambda| {
            let mut k = vec![0u32; 2 * a + 1];
            for (y, &row) in lambda.iter().enumerate() {
                for x in 0..row as usize {
                    k[(y as i64 - x as i64 + a as i64) as usize] += 1;
                }
            }
            let seq = AdmissibleSequence::new(k).expect("diagonal counts are admissible");
            (lambda, seq)
        })
        .collect()
}

/// The class `dH − Σ αᵢEᵢ` on a blow-up of the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BlowupClass {
    pub d: i64,
    pub alphas: Vec<i64>,
}

/// `(k₀; k₀−1, k₀−k₁, …, k_{a−1}−k_a, k_a, k₀−k_{−1}, …, k_{−a+1}−k_{−a}, k_{−a})`.
pub fn class_of_sequence(s: &AdmissibleSequence) -> BlowupClass {
    let a = s.a as i64;
    let k = |l: i64| s.get(l) as i64;
    let mut alphas = vec![k(0) - 1];
    alphas.extend((1..=a).map(|i| k(i - 1) - k(i)));
    alphas.push(k(a));
    alphas.extend((1..=a).map(|i| k(-i + 1) - k(-i)));
    alphas.push(k(-a));
    BlowupClass { d: k(0), alphas }
}

/// Quadratic Cremona transformation centred at multiplicities `i, j, l`
/// (indices past the end are read as 0 and materialized).
pub fn cremona(c: &BlowupClass, i: usize, j: usize, l: usize) -> BlowupClass {
    assert!(
        i != j && j != l && i != l,
        "Cremona needs three distinct indices"
    );
    let mut alphas = c.alphas.clone();
    let need = i.max(j).max(l) + 1;
    if alphas.len() < need {
        alphas.resize(need, 0);
    }
    let (a1, a2, a3) = (alphas[i], alphas[j], alphas[l]);
    let d = c.d;
    alphas[i] = d - a2 - a3;
    alphas[j] = d - a1 - a3;
    alphas[l] = d - a1 - a2;
    BlowupClass {
        d: 2 * d - a1 - a2 - a3,
        alphas,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlowupValue {
    Zero,
    One,
    Undecided,
}

impl BlowupValue {
    fn from_bool(b: bool) -> Self {
        if b {
            Self::One
        } else {
            Self::Zero
        }
    }
}

type State = (i64, Vec<i64>);

/// Memoized evaluator; reuse one instance across many classes to share the
/// memo table.
#[derive(Debug)]
pub struct BlowupEvaluator {
    max_depth: usize,
    memo: HashMap<State, bool>,
    path: HashSet<State>,
}

impl BlowupEvaluator {
    pub fn new(max_depth: usize) -> Self {
        Self {
            max_depth,
            memo: HashMap::new(),
            path: HashSet::new(),
        }
    }

    pub fn eval(&mut self, c: &BlowupClass) -> BlowupValue {
        match self.search(c.d, &c.alphas, self.max_depth) {
            Some(b) => BlowupValue::from_bool(b),
            None => BlowupValue::Undecided,
        }
    }

    fn search(&mut self, d: i64, alphas: &[i64], depth: usize) -> Option<bool> {
        if alphas.iter().any(|&x| x < 0) {
            let nonzero: Vec<i64> = alphas.iter().copied().filter(|&x| x != 0).collect();
            return Some(d == 0 && nonzero == [-1]);
        }
        let mut norm: Vec<i64> = alphas.iter().copied().filter(|&x| x > 0).collect();
        norm.sort_unstable_by(|a, b| b.cmp(a));
        let key = (d, norm);
        if let Some(&v) = self.memo.get(&key) {
            return Some(v);
        }
        let big: Vec<i64> = key.1.iter().copied().filter(|&x| x > 1).collect();
        if (big.is_empty() && (d == 1 || d == 2)) || big == [d - 1] {
            return Some(true);
        }
        if depth == 0 || self.path.contains(&key) {
            return None;
        }
        self.path.insert(key.clone());
        let result = self.try_moves(&key, depth);
        self.path.remove(&key);
        if let Some(v) = result {
            self.memo.insert(key, v);
        }
        result
    }

    fn try_moves(&mut self, key: &State, depth: usize) -> Option<bool> {
        let (d, norm) = key;
        let mut ext = norm.clone();
        ext.extend([0, 0, 0]);
        let mut triples: Vec<[i64; 3]> = Vec::new();
        for i in 0..ext.len() {
            for j in (i + 1)..ext.len() {
                for l in (j + 1)..ext.len() {
                    // ext is sorted descending, so the triple is too
                    let t = [ext[i], ext[j], ext[l]];
                    if t.iter().sum::<i64>() >= *d && !triples.contains(&t) {
                        triples.push(t);
                    }
                }
            }
        }
        triples.sort_by(|x, y| {
            y.iter()
                .sum::<i64>()
                .cmp(&x.iter().sum::<i64>())
                .then(y.cmp(x))
        });
        for [a1, a2, a3] in triples {
            let mut rest = norm.clone();
            for x in [a1, a2, a3] {
                if let Some(pos) = rest.iter().position(|&r| r == x) {
                    rest.remove(pos);
                }
            }
            let mut next = vec![d - a2 - a3, d - a1 - a3, d - a1 - a2];
            next.extend(rest);
            if let Some(v) = self.search(2 * d - a1 - a2 - a3, &next, depth - 1) {
                return Some(v);
            }
        }
        None
    }
}

/// Evaluates `N(d; α…)` with a fresh memo table.
pub fn blowup_eval(c: &BlowupClass, max_depth: usize) -> BlowupValue {
    BlowupEvaluator::new(max_depth).eval(c)
}

/// `(∏ p(aᵢ)) (∏ bⱼ σ₁(bⱼ))`.
pub fn gbl_contribution(a_vec: &[u32], b_vec: &[u32]) -> BigInt {
    let max = a_vec.iter().copied().max().unwrap_or(0) as usize;
    let p = partition_counts(max);
    let pa = a_vec
        .iter()
        .fold(BigInt::one(), |acc, &a| acc * &p[a as usize]);
    b_vec
        .iter()
        .fold(pa, |acc, &b| acc * BigInt::from(b) * sigma(1, b as u64))
}

/// `Σ gbl_contribution(a, b)` over all `a ∈ ℕ²⁴`, `b ∈ ℤ_{>0}^g` with
/// `Σa + Σb = p`, by explicit enumeration.
pub fn gbl_contribution_sum(g: usize, p: usize) -> BigInt {
    let mut total = BigInt::from(0);
    let mut b = Vec::with_capacity(g);
    for_each_positive(g, p, &mut b, &mut |b| {
        let rest = p - b.iter().map(|&x| x as usize).sum::<usize>();
        let mut a = Vec::with_capacity(24);
        for_each_weak(24, rest, &mut a, &mut |a| {
            total += gbl_contribution(a, b);
        });
    });
    total
}

fn for_each_positive(
    parts: usize,
    max_sum: usize,
    prefix: &mut Vec<u32>,
    f: &mut dyn FnMut(&[u32]),
) {
    if parts == 0 {
        f(prefix);
        return;
    }
    for x in 1..=max_sum.saturating_sub(parts - 1) {
        prefix.push(x as u32);
        for_each_positive(parts - 1, max_sum - x, prefix, f);
        prefix.pop();
    }
}

fn for_each_weak(parts: usize, sum: usize, prefix: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if parts == 1 {
        prefix.push(sum as u32);
        f(prefix);
        prefix.pop();
        return;
    }
    for x in 0..=sum {
        prefix.push(x as u32);
        for_each_weak(parts - 1, sum - x, prefix, f);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(k: &[u32]) -> AdmissibleSequence {
        AdmissibleSequence::new(k.to_vec()).unwrap()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_admissible(1), vec![seq(&[0, 1, 0])]);
        let two = enumerate_admissible(2);
        assert_eq!(two.len(), 3);
        for k in [[0, 0, 2, 0, 0], [0, 0, 1, 1, 0], [0, 1, 1, 0, 0]] {
            assert!(two.contains(&seq(&k)));
        }
    }

    #[test]
    fn validation() {
        assert!(AdmissibleSequence::new(vec![1, 0, 1]).is_err());
        assert!(AdmissibleSequence::new(vec![0, 0, 1, 0, 1]).is_err());
        assert!(AdmissibleSequence::new(vec![1, 1]).is_err());
    }

    #[test]
    fn pyramidal_examples() {
        assert!(is_pyramidal(&seq(&[0, 0, 1, 1, 0])));
        assert!(!is_pyramidal(&seq(&[0, 0, 2, 0, 0])));
        assert!(is_pyramidal(&seq(&[0, 1, 0])));
    }

    #[test]
    fn young_example() {
        let map = young_bijection(3);
        let (_, s) = map.iter().find(|(l, _)| l == &vec![2, 1]).unwrap();
        assert_eq!(s.as_slice(), &[0, 0, 1, 1, 1, 0, 0]);
        assert_eq!(young_bijection(1)[0].1, seq(&[0, 1, 0]));
    }

    #[test]
    fn classes() {
        let c = class_of_sequence(&seq(&[0, 1, 0]));
        assert_eq!(
            c,
            BlowupClass {
                d: 1,
                alphas: vec![0, 1, 0, 1, 0]
            }
        );
        let c = class_of_sequence(&seq(&[0, 0, 0, 1, 2, 1, 0, 0, 0]));
        assert_eq!(c.alphas.iter().sum::<i64>(), 3 * c.d - 1);
    }

    #[test]
    fn cremona_is_an_involution() {
        let c = BlowupClass {
            d: 5,
            alphas: vec![2, 2, 1, 3],
        };
        assert_eq!(cremona(&cremona(&c, 0, 1, 3), 0, 1, 3), c);
    }

    #[test]
    fn eval_basics() {
        let line = BlowupClass {
            d: 1,
            alphas: vec![],
        };
        assert_eq!(blowup_eval(&line, 8), BlowupValue::One);
        let exceptional = BlowupClass {
            d: 0,
            alphas: vec![0, -1, 0],
        };
        assert_eq!(blowup_eval(&exceptional, 8), BlowupValue::One);
        let negative = BlowupClass {
            d: 3,
            alphas: vec![-1, 2],
        };
        assert_eq!(blowup_eval(&negative, 8), BlowupValue::Zero);
    }

    #[test]
    fn contributions() {
        let mut a = [0u32; 24];
        a[0] = 1;
        assert_eq!(gbl_contribution(&a, &[]), BigInt::from(1));
        assert_eq!(gbl_contribution(&[0; 24], &[2]), BigInt::from(6));
        assert_eq!(gbl_contribution_sum(0, 2), BigInt::from(324));
        assert_eq!(gbl_contribution_sum(1, 2), BigInt::from(30));
    }

    #[test]
    fn lemma_holds_through_weight_eight() {
        let mut ev = BlowupEvaluator::new(DEFAULT_MAX_DEPTH);
        for a in 1..=8 {
            for s in enumerate_admissible(a) {
                let want = BlowupValue::from_bool(is_pyramidal(&s));
                assert_eq!(ev.eval(&class_of_sequence(&s)), want, "{:?}", s);
            }
        }
    }
}
