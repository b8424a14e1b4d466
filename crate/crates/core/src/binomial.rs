//! Binomial coefficients, cascade (r-canonical) representations and the
//! Kruskal-Katona shadow bound.
//!
//! Every non-negative integer `x` has a unique greedy expansion
//!
//! ```text
//! x = C(a_r, r) + C(a_{r-1}, r-1) + ... + C(a_{r-j}, r-j),   a_r > a_{r-1} > ... > a_{r-j}
//! ```
//!
//! obtained by repeatedly taking the largest top whose binomial still fits in
//! the remainder. Raising every bottom index from `r` to `s` turns that
//! expansion into the largest possible number of `K_s` subgraphs of a graph
//! with at most `x` copies of `K_r`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision non-negative integer used for every clique count.
pub type Count = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinomialError {
    #[error("representation level must be at least 1")]
    ZeroLevel,
    #[error("largest top is undefined for x = 0")]
    ZeroValue,
    #[error("target size s = {s} must exceed representation level r = {r}")]
    LevelNotAbove { r: u32, s: u32 },
    #[error("cascade top does not fit in 64 bits")]
    TopOverflow,
    #[error("malformed representation: {0}")]
    Malformed(String),
}

/// `C(n, k)`, zero whenever `k > n`.
pub fn binom(n: u64, k: u64) -> Count {
    if k > n {
        return Count::zero();
    }
    let k = k.min(n - k);
    let mut acc = Count::one();
    for i in 0..k {
        // acc = C(n - k + i, i) at the top of each pass; the division is exact.
        acc *= n - k + i + 1;
        acc /= i + 1;
    }
    acc
}

/// `C(t, b)` if it is at most `cap`, `None` otherwise.
///
/// The partial products `C(t - b + i, i)` are non-decreasing in `i`, so the
/// loop can stop as soon as one of them exceeds the cap. With `cap < 2^64`
/// no intermediate product can overflow `u128`.
fn binom_capped(t: u64, b: u64, cap: u64) -> Option<u64> {
    if b > t {
        return Some(0);
    }
    let base = (t - b) as u128;
    let mut acc: u128 = 1;
    if cap == 0 {
        return None;
    }
    for i in 1..=b as u128 {
        acc = acc * (base + i) / i;
        if acc > cap as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// One binomial `C(top, bottom)` of a cascade.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinomTerm {
    pub top: u64,
    pub bottom: u32,
}

impl BinomTerm {
    pub fn value(&self) -> Count {
        binom(self.top, self.bottom as u64)
    }
}

impl fmt::Display for BinomTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{})", self.top, self.bottom)
    }
}

/// The r-canonical representation `[x]^r` of some integer `x`.
///
/// Bottoms run `r, r-1, ...` without gaps, tops strictly decrease and no
/// term is zero. The empty representation stands for `x = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalRep {
    r: u32,
    terms: Vec<BinomTerm>,
}

impl CanonicalRep {
    /// Builds a representation from explicit terms, checking the structural
    /// invariants. Does not check greedy maximality.
    pub fn from_terms(r: u32, terms: Vec<BinomTerm>) -> Result<Self, BinomialError> {
        if r == 0 {
            return Err(BinomialError::ZeroLevel);
        }
        if terms.len() > r as usize {
            return Err(BinomialError::Malformed(format!(
                "{} terms exceed level {r}",
                terms.len()
            )));
        }
        for (i, term) in terms.iter().enumerate() {
            let want = r - i as u32;
            if term.bottom != want {
                return Err(BinomialError::Malformed(format!(
                    "term {i} has bottom {} but {want} was expected",
                    term.bottom
                )));
            }
            if term.top < term.bottom as u64 {
                return Err(BinomialError::Malformed(format!("{term} is zero")));
            }
            if i > 0 && terms[i - 1].top <= term.top {
                return Err(BinomialError::Malformed(format!(
                    "tops must strictly decrease, got {} then {}",
                    terms[i - 1].top,
                    term.top
                )));
            }
        }
        Ok(Self { r, terms })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn terms(&self) -> &[BinomTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn tops(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.top).collect()
    }

    pub fn eval(&self) -> Count {
        self.terms.iter().map(BinomTerm::value).sum()
    }

    /// `[x]^r_s`: every bottom raised by `s - r`.
    pub fn shift(&self, s: u32) -> Result<Count, BinomialError> {
        if s <= self.r {
            return Err(BinomialError::LevelNotAbove { r: self.r, s });
        }
        let lift = (s - self.r) as u64;
        Ok(self.terms.iter().map(|t| binom(t.top, t.bottom as u64 + lift)).sum())
    }
}

impl fmt::Display for CanonicalRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

fn max_top_u64(x: u64, b: u32) -> Result<u64, BinomialError> {
    debug_assert!(x >= 1 && b >= 1);
    if b == 1 {
        return Ok(x);
    }
    let b = b as u64;
    let fits = |t: u64| binom_capped(t, b, x).is_some();
    // C(b, b) = 1 <= x, so lo is always admissible.
    let mut lo = b;
    let mut step = 1u64;
    let mut hi = b + step;
    while fits(hi) {
        lo = hi;
        step *= 2;
        hi = b.checked_add(step).ok_or(BinomialError::TopOverflow)?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

fn max_top_big(x: &Count, b: u32) -> Result<u64, BinomialError> {
    if b == 1 {
        return x.to_u64().ok_or(BinomialError::TopOverflow);
    }
    let b64 = b as u64;
    let fits = |t: u64| &binom(t, b64) <= x;
    let mut lo = b64;
    let mut step = 1u64;
    let mut hi = b64 + step;
    while fits(hi) {
        lo = hi;
        step = step.checked_mul(2).ok_or(BinomialError::TopOverflow)?;
        hi = b64.checked_add(step).ok_or(BinomialError::TopOverflow)?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Largest `t` with `C(t, b) <= x`.
pub fn max_top(x: &Count, b: u32) -> Result<u64, BinomialError> {
    if b == 0 {
        return Err(BinomialError::ZeroLevel);
    }
    if x.is_zero() {
        return Err(BinomialError::ZeroValue);
    }
    match x.to_u64() {
        Some(small) => max_top_u64(small, b),
        None => max_top_big(x, b),
    }
}

/// Greedy cascade `[x]^r`.
///
/// At each bottom `b = r, r-1, ...` the largest top with `C(t, b)` not
/// exceeding the remainder is taken. Level 1 always absorbs whatever is left,
/// so the expansion is exact.
pub fn canonical_rep(x: &Count, r: u32) -> Result<CanonicalRep, BinomialError> {
    if r == 0 {
        return Err(BinomialError::ZeroLevel);
    }
    let mut terms = Vec::with_capacity(r as usize);
    if let Some(mut rem) = x.to_u64() {
        for b in (1..=r).rev() {
            if rem == 0 {
                break;
            }
            let top = max_top_u64(rem, b)?;
            rem -= binom_capped(top, b as u64, rem).expect("max_top result fits remainder");
            terms.push(BinomTerm { top, bottom: b });
        }
        debug_assert_eq!(rem, 0);
    } else {
        let mut rem = x.clone();
        for b in (1..=r).rev() {
            if rem.is_zero() {
                break;
            }
            let top = max_top_big(&rem, b)?;
            rem -= binom(top, b as u64);
            terms.push(BinomTerm { top, bottom: b });
        }
        debug_assert!(rem.is_zero());
    }
    Ok(CanonicalRep { r, terms })
}

pub fn eval_rep(rep: &CanonicalRep) -> Count {
    rep.eval()
}

pub fn shift_rep(rep: &CanonicalRep, s: u32) -> Result<Count, BinomialError> {
    rep.shift(s)
}

/// The Kruskal-Katona bound `[x]^r_s`: no graph with at most `x` copies of
/// `K_r` has more than this many copies of `K_s`.
pub fn kk_bound(x: &Count, r: u32, s: u32) -> Result<Count, BinomialError> {
    if r == 0 {
        return Err(BinomialError::ZeroLevel);
    }
    if s <= r {
        return Err(BinomialError::LevelNotAbove { r, s });
    }
    canonical_rep(x, r)?.shift(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    fn pascal(rows: usize) -> Vec<Vec<Count>> {
        let mut tri: Vec<Vec<Count>> = vec![vec![c(1)]];
        for n in 1..=rows {
            let prev = &tri[n - 1];
            let mut row = vec![c(1); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            tri.push(row);
        }
        tri
    }

    fn rep(r: u32, tops: &[u64]) -> CanonicalRep {
        let terms = tops
            .iter()
            .enumerate()
            .map(|(i, &top)| BinomTerm {
                top,
                bottom: r - i as u32,
            })
            .collect();
        CanonicalRep::from_terms(r, terms).unwrap()
    }

    #[test]
    fn binom_small_values() {
        assert_eq!(binom(7, 3), c(35));
        assert_eq!(binom(3, 5), c(0));
        assert_eq!(binom(0, 0), c(1));
        assert_eq!(binom(9, 0), c(1));
    }

    #[test]
    fn binom_matches_pascal_triangle() {
        let tri = pascal(64);
        for n in 0..=64u64 {
            for k in 0..=64u64 {
                let want = if k <= n {
                    tri[n as usize][k as usize].clone()
                } else {
                    c(0)
                };
                assert_eq!(binom(n, k), want, "C({n},{k})");
            }
        }
        // Row 52 from the same recurrence.
        let tri = pascal(52);
        assert_eq!(tri[52][26], c(495_918_532_948_104));
        assert_eq!(binom(52, 26), c(495_918_532_948_104));
    }

    #[test]
    fn binom_large_arguments() {
        let tri = pascal(200);
        assert_eq!(binom(200, 100), tri[200][100]);
        assert_eq!(binom(200, 3), c(1_313_400));
    }

    #[test]
    fn capped_binomial_agrees_with_exact() {
        for t in 0..80u64 {
            for b in 0..12u64 {
                let exact = binom(t, b);
                for cap in [0u64, 1, 10, 1000, 1 << 40, u64::MAX] {
                    let got = binom_capped(t, b, cap);
                    if exact <= c(cap) {
                        assert_eq!(got.map(c), Some(exact.clone()));
                    } else {
                        assert_eq!(got, None);
                    }
                }
            }
        }
    }

    #[test]
    fn max_top_examples() {
        // Linear-scan oracle.
        let scan = |x: u64, b: u64| (b..).take_while(|&t| binom(t, b) <= c(x)).last().unwrap();
        assert_eq!(scan(200, 3), 11);
        assert_eq!(max_top(&c(200), 3).unwrap(), 11);
        assert_eq!(max_top(&c(1), 5).unwrap(), 5);
        assert_eq!(max_top(&c(219), 3).unwrap(), 11);
        assert_eq!(max_top(&c(220), 3).unwrap(), 12);
        for x in 1..400u64 {
            for b in 1..6u32 {
                assert_eq!(max_top(&c(x), b).unwrap(), scan(x, b as u64), "x={x} b={b}");
            }
        }
    }

    #[test]
    fn max_top_rejects_zero() {
        assert_eq!(max_top(&c(0), 3), Err(BinomialError::ZeroValue));
        assert_eq!(max_top(&c(5), 0), Err(BinomialError::ZeroLevel));
    }

    #[test]
    fn max_top_beyond_u64() {
        let x = binom(300, 40);
        let t = max_top(&x, 40).unwrap();
        assert_eq!(t, 300);
        let t = max_top(&(x - 1u32), 40).unwrap();
        assert_eq!(t, 299);
    }

    #[test]
    fn canonical_rep_examples() {
        assert_eq!(canonical_rep(&c(200), 3).unwrap(), rep(3, &[11, 8, 7]));
        assert_eq!(canonical_rep(&c(707), 5).unwrap(), rep(5, &[11, 10, 7]));
        assert!(canonical_rep(&c(0), 3).unwrap().is_empty());
        assert_eq!(canonical_rep(&c(126), 4).unwrap(), rep(4, &[9]));
        assert_eq!(canonical_rep(&c(17), 1).unwrap(), rep(1, &[17]));
        assert_eq!(canonical_rep(&c(3), 0), Err(BinomialError::ZeroLevel));
    }

    #[test]
    fn canonical_rep_big_path_agrees_with_small_path() {
        // Force the BigUint route by going through a value above 2^64 and
        // comparing the tail of its expansion.
        let big = binom(120, 30);
        let huge = &big + c(707);
        let rep_big = canonical_rep(&huge, 30).unwrap();
        assert_eq!(rep_big.eval(), huge);
        assert_eq!(rep_big.terms()[0].top, 120);
    }

    #[test]
    fn eval_and_display() {
        assert_eq!(rep(3, &[11, 8, 7]).eval(), c(200));
        assert_eq!(rep(5, &[11, 10, 7]).eval(), c(707));
        assert_eq!(CanonicalRep::from_terms(3, vec![]).unwrap().eval(), c(0));
        assert_eq!(rep(3, &[11, 8, 7]).to_string(), "C(11,3)+C(8,2)+C(7,1)");
        assert_eq!(canonical_rep(&c(0), 3).unwrap().to_string(), "0");
    }

    #[test]
    fn from_terms_rejects_bad_shapes() {
        let t = |top, bottom| BinomTerm { top, bottom };
        assert!(CanonicalRep::from_terms(3, vec![t(11, 3), t(11, 2)]).is_err());
        assert!(CanonicalRep::from_terms(3, vec![t(11, 3), t(8, 1)]).is_err());
        assert!(CanonicalRep::from_terms(3, vec![t(2, 3)]).is_err());
        assert!(CanonicalRep::from_terms(0, vec![]).is_err());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(rep(5, &[11, 10, 7]).shift(10).unwrap(), c(21));
        assert_eq!(rep(3, &[11, 8, 7]).shift(4).unwrap(), c(407));
        assert_eq!(CanonicalRep::from_terms(3, vec![]).unwrap().shift(9).unwrap(), c(0));
        assert_eq!(
            rep(3, &[11, 8, 7]).shift(3),
            Err(BinomialError::LevelNotAbove { r: 3, s: 3 })
        );
    }

    #[test]
    fn kk_bound_examples() {
        assert_eq!(kk_bound(&c(200), 3, 4).unwrap(), c(407));
        assert_eq!(kk_bound(&c(25), 3, 5).unwrap(), c(6));
        assert_eq!(kk_bound(&c(4), 3, 4).unwrap(), c(1));
        assert_eq!(kk_bound(&c(44), 3, 5).unwrap(), c(23));
        assert_eq!(kk_bound(&c(0), 3, 4).unwrap(), c(0));
        assert_eq!(kk_bound(&c(707), 5, 10).unwrap(), c(21));
        assert!(kk_bound(&c(10), 4, 4).is_err());
        assert!(kk_bound(&c(10), 5, 3).is_err());
        // r = 1: C(x, 1) shifted to C(x, s).
        assert_eq!(kk_bound(&c(6), 1, 3).unwrap(), c(20));
    }

    #[test]
    fn complete_graph_tightness() {
        for r in 1..8u32 {
            for s in r + 1..10 {
                for n in s as u64..30 {
                    let x = binom(n, r as u64);
                    assert_eq!(kk_bound(&x, r, s).unwrap(), binom(n, s as u64));
                }
            }
        }
    }

    fn assert_greedy_maximal(x: u64, rep: &CanonicalRep) {
        let mut prefix = Count::zero();
        for term in rep.terms() {
            let bumped = binom(term.top + 1, term.bottom as u64);
            assert!(&prefix + bumped > c(x), "term {term} of [{x}] is not maximal");
            prefix += term.value();
        }
    }

    proptest! {
        #[test]
        fn round_trip_and_maximality(x in 0u64..5_000_000, r in 1u32..9) {
            let rep = canonical_rep(&c(x), r).unwrap();
            prop_assert_eq!(rep.eval(), c(x));
            // Re-validating checks bottoms and strictly decreasing tops.
            prop_assert!(CanonicalRep::from_terms(r, rep.terms().to_vec()).is_ok());
            assert_greedy_maximal(x, &rep);
        }

        #[test]
        fn bound_is_monotone(a in 0u64..200_000, b in 0u64..200_000, r in 1u32..7, ds in 1u32..5) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let s = r + ds;
            prop_assert!(kk_bound(&c(lo), r, s).unwrap() <= kk_bound(&c(hi), r, s).unwrap());
        }
    }
}
