//! Lee-metric primitives over `Z_q`.
//!
//! The Lee weight of a symbol `x ∈ Z_q` is `min(x, q − x)` — the number of
//! unit shifts needed to reach `x` from zero on the cycle of length `q`.
//! Vector weight is the coordinate sum, and Lee distance is the weight of
//! the componentwise difference mod `q`. For `q ∈ {2, 3}` the Lee and
//! Hamming metrics coincide; for larger `q` the Lee metric refines Hamming
//! by up to a factor of `⌊q/2⌋` per coordinate.
//!
//! Sphere volumes use the closed form
//! `V_t(n) = Σ_i C(n,i)·2^i·C(t,i)` whenever `t ≤ (q−1)/2` (no wraparound,
//! so the count is alphabet-independent); outside that regime the ball is
//! enumerated explicitly, subject to a vector cap.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

// ============================================================
// Vectors over Z_q
// ============================================================

/// A vector over `Z_q` with symbols stored as canonical residues in
/// `[0, q−1]`.
///
/// Equality, ordering, and hashing are lexicographic on the symbols;
/// vectors over different alphabets are never equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZqVector {
    q: u32,
    symbols: Vec<u32>,
}

impl ZqVector {
    /// Builds a vector from canonical residues, validating `q ≥ 2` and
    /// every symbol against the alphabet.
    pub fn new(q: u32, symbols: Vec<u32>) -> Result<Self> {
        check_q(q)?;
        if let Some(&bad) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::Domain(format!(
                "symbol {bad} out of range for Z_{q}"
            )));
        }
        Ok(ZqVector { q, symbols })
    }

    /// Builds a vector by reducing arbitrary integers mod `q`.
    pub fn reduced(q: u32, values: &[i64]) -> Result<Self> {
        check_q(q)?;
        let m = i64::from(q);
        let symbols = values
            .iter()
            .map(|&v| (v.rem_euclid(m)) as u32)
            .collect();
        Ok(ZqVector { q, symbols })
    }

    /// The all-zero vector of length `n`.
    pub fn zero(q: u32, n: usize) -> Result<Self> {
        check_q(q)?;
        Ok(ZqVector { q, symbols: vec![0; n] })
    }

    /// Alphabet size.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// True for the length-zero vector.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The canonical residues.
    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Componentwise sum mod `q`.
    pub fn add(&self, other: &ZqVector) -> Result<ZqVector> {
        self.check_same_shape(other)?;
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(&a, &b)| (a + b) % self.q)
            .collect();
        Ok(ZqVector { q: self.q, symbols })
    }

    /// Componentwise difference mod `q`.
    pub fn sub(&self, other: &ZqVector) -> Result<ZqVector> {
        self.check_same_shape(other)?;
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(&a, &b)| (a + self.q - b) % self.q)
            .collect();
        Ok(ZqVector { q: self.q, symbols })
    }

    /// Concatenation of two vectors over the same alphabet.
    pub fn concat(&self, other: &ZqVector) -> Result<ZqVector> {
        if self.q != other.q {
            return Err(Error::Shape(format!(
                "cannot concatenate vectors over Z_{} and Z_{}",
                self.q, other.q
            )));
        }
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(ZqVector { q: self.q, symbols })
    }

    fn check_same_shape(&self, other: &ZqVector) -> Result<()> {
        if self.q != other.q {
            return Err(Error::Shape(format!(
                "alphabet mismatch: Z_{} vs Z_{}",
                self.q, other.q
            )));
        }
        if self.symbols.len() != other.symbols.len() {
            return Err(Error::Shape(format!(
                "length mismatch: {} vs {}",
                self.symbols.len(),
                other.symbols.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ZqVector {
    /// Symbols joined by commas, e.g. `0,0,2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.symbols {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::Domain(format!("alphabet size q={q} must be at least 2")));
    }
    Ok(())
}

// ============================================================
// Weights and distances
// ============================================================

/// Lee weight of a single symbol: `min(x, q − x)`.
pub fn lee_symbol_weight(x: u32, q: u32) -> Result<u32> {
    check_q(q)?;
    if x >= q {
        return Err(Error::Domain(format!("symbol {x} out of range for Z_{q}")));
    }
    Ok(x.min(q - x))
}

pub(crate) fn symbol_weight_unchecked(x: u32, q: u32) -> u32 {
    x.min(q - x)
}

/// Lee distance between two symbols already reduced mod `q`.
pub(crate) fn symbol_distance_unchecked(a: u32, b: u32, q: u32) -> u32 {
    let d = if a >= b { a - b } else { b - a };
    d.min(q - d)
}

/// Lee weight of a vector: the sum of its symbol weights.
pub fn lee_weight(v: &ZqVector) -> u64 {
    v.symbols()
        .iter()
        .map(|&s| u64::from(symbol_weight_unchecked(s, v.q())))
        .sum()
}

/// Lee distance `d_L(a, b) = wt_L(a − b)`.
pub fn lee_distance(a: &ZqVector, b: &ZqVector) -> Result<u64> {
    a.check_same_shape(b)?;
    Ok(a.symbols()
        .iter()
        .zip(b.symbols())
        .map(|(&x, &y)| u64::from(symbol_distance_unchecked(x, y, a.q())))
        .sum())
}

/// Hamming distance: the number of differing coordinates.
pub fn hamming_distance(a: &ZqVector, b: &ZqVector) -> Result<u64> {
    a.check_same_shape(b)?;
    Ok(a.symbols()
        .iter()
        .zip(b.symbols())
        .filter(|(x, y)| x != y)
        .count() as u64)
}

// ============================================================
// Sphere volumes
// ============================================================

/// Exact binomial coefficient `C(n, k)` in arbitrary precision.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of vectors in `Z_q^n` of Lee weight at most `t`.
///
/// For `t ≤ (q−1)/2` the closed form `Σ_i C(n,i)·2^i·C(t,i)` is exact.
/// For larger radii the ball wraps around the alphabet and is counted by
/// explicit enumeration instead, which requires `q^n ≤ cap`.
pub fn lee_sphere_volume(n: usize, t: u64, q: u32, cap: u64) -> Result<BigUint> {
    check_q(q)?;
    if 2 * t <= u64::from(q) - 1 {
        let mut total = BigUint::zero();
        let top = (n as u64).min(t);
        for i in 0..=top {
            total += binomial(n as u64, i) * (BigUint::one() << i as usize) * binomial(t, i);
        }
        return Ok(total);
    }
    // Wraparound regime: count by walking the full space.
    let space = checked_pow(q, n).filter(|&s| s <= u128::from(cap));
    let Some(_) = space else {
        return Err(Error::CapExceeded(format!(
            "volume of radius {t} in Z_{q}^{n} needs enumeration of q^n > cap {cap} vectors"
        )));
    };
    let mut count: u64 = 0;
    let mut v = vec![0u32; n];
    loop {
        let wt: u64 = v
            .iter()
            .map(|&s| u64::from(symbol_weight_unchecked(s, q)))
            .sum();
        if wt <= t {
            count += 1;
        }
        if !increment(&mut v, q) {
            break;
        }
    }
    Ok(BigUint::from(count))
}

/// `V(r, t)` with the convention `V(r, t) = 0` when `t` is "−1"; used by
/// the Gilbert–Varshamov-type bound where the radius is an entry minus one.
pub(crate) fn volume_or_zero(n: usize, t_plus_one: u64, q: u32, cap: u64) -> Result<BigUint> {
    if t_plus_one == 0 {
        return Ok(BigUint::zero());
    }
    lee_sphere_volume(n, t_plus_one - 1, q, cap)
}

/// `q^n` as `u128`, or `None` on overflow.
pub(crate) fn checked_pow(q: u32, n: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(u128::from(q))?;
    }
    Some(acc)
}

/// Advances `v` to the lexicographic successor in `Z_q^n`; returns false
/// after the last vector.
pub(crate) fn increment(v: &mut [u32], q: u32) -> bool {
    for s in v.iter_mut().rev() {
        *s += 1;
        if *s < q {
            return true;
        }
        *s = 0;
    }
    false
}

/// All vectors of `Z_q^n` with Lee weight at most `t`, in lexicographic
/// order. Errors if the ball holds more than `cap` vectors.
pub fn lee_ball(n: usize, t: u64, q: u32, cap: u64) -> Result<Vec<ZqVector>> {
    check_q(q)?;
    let mut out = Vec::new();
    let mut prefix = vec![0u32; n];
    ball_rec(&mut prefix, 0, t, q, cap, &mut out)?;
    Ok(out)
}

fn ball_rec(
    prefix: &mut [u32],
    pos: usize,
    budget: u64,
    q: u32,
    cap: u64,
    out: &mut Vec<ZqVector>,
) -> Result<()> {
    if pos == prefix.len() {
        if out.len() as u64 >= cap {
            return Err(Error::CapExceeded(format!(
                "Lee ball enumeration exceeds cap {cap} vectors"
            )));
        }
        out.push(ZqVector { q, symbols: prefix.to_vec() });
        return Ok(());
    }
    for s in 0..q {
        let w = u64::from(symbol_weight_unchecked(s, q));
        if w <= budget {
            prefix[pos] = s;
            ball_rec(prefix, pos + 1, budget - w, q, cap, out)?;
        }
    }
    prefix[pos] = 0;
    Ok(())
}

/// Enumerates `Z_q^n` in lexicographic order. Errors if `q^n > cap`.
pub fn enumerate_space(n: usize, q: u32, cap: u64) -> Result<Vec<ZqVector>> {
    check_q(q)?;
    let size = checked_pow(q, n).filter(|&s| s <= u128::from(cap));
    let Some(size) = size else {
        return Err(Error::CapExceeded(format!(
            "enumerating Z_{q}^{n} exceeds cap {cap} vectors"
        )));
    };
    let mut out = Vec::with_capacity(size as usize);
    let mut v = vec![0u32; n];
    loop {
        out.push(ZqVector { q, symbols: v.clone() });
        if !increment(&mut v, q) {
            break;
        }
    }
    Ok(out)
}

/// Lexicographic rank of `v` in `Z_q^n` (most significant coordinate
/// first), as used to index tables over the full space.
pub(crate) fn lex_rank(v: &ZqVector) -> usize {
    let mut acc: usize = 0;
    for &s in v.symbols() {
        acc = acc * v.q() as usize + s as usize;
    }
    acc
}

// ============================================================
// Pairwise symbol-distance sums
// ============================================================

/// Sum of Lee distances from one symbol to every symbol of `Z_q`:
/// `q²/4` for even `q`, `(q²−1)/4` for odd `q` (independent of the symbol).
pub fn symbol_distance_sum(q: u32) -> Result<u64> {
    check_q(q)?;
    let q = u64::from(q);
    Ok(if q % 2 == 0 { q * q / 4 } else { (q * q - 1) / 4 })
}

/// Sum of Lee distances over all unordered pairs of a multiset of symbols
/// (pairs of equal elements contribute their distance once per pair of
/// positions).
pub fn multiset_pairwise_distance_sum(symbols: &[u32], q: u32) -> Result<u64> {
    check_q(q)?;
    if symbols.is_empty() {
        return Err(Error::Domain("multiset of symbols is empty".into()));
    }
    if let Some(&bad) = symbols.iter().find(|&&s| s >= q) {
        return Err(Error::Domain(format!("symbol {bad} out of range for Z_{q}")));
    }
    let mut total = 0u64;
    for (i, &a) in symbols.iter().enumerate() {
        for &b in &symbols[i + 1..] {
            total += u64::from(symbol_distance_unchecked(a, b, q));
        }
    }
    Ok(total)
}

// ============================================================
// Tests
// ============================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn v(q: u32, s: &[u32]) -> ZqVector {
        ZqVector::new(q, s.to_vec()).unwrap()
    }

    #[test]
    fn symbol_weights_fold_at_half_q() {
        assert_eq!(lee_symbol_weight(0, 5).unwrap(), 0);
        assert_eq!(lee_symbol_weight(1, 5).unwrap(), 1);
        assert_eq!(lee_symbol_weight(2, 5).unwrap(), 2);
        assert_eq!(lee_symbol_weight(3, 5).unwrap(), 2);
        assert_eq!(lee_symbol_weight(4, 5).unwrap(), 1);
        assert_eq!(lee_symbol_weight(3, 6).unwrap(), 3);
        assert_eq!(lee_symbol_weight(5, 6).unwrap(), 1);
    }

    #[test]
    fn symbol_out_of_range_is_domain_error() {
        assert!(matches!(lee_symbol_weight(5, 5), Err(Error::Domain(_))));
        assert!(matches!(ZqVector::new(4, vec![0, 4]), Err(Error::Domain(_))));
        assert!(matches!(ZqVector::new(1, vec![0]), Err(Error::Domain(_))));
    }

    #[test]
    fn vector_weights() {
        assert_eq!(lee_weight(&v(5, &[2, 2, 2])), 6);
        assert_eq!(lee_weight(&v(5, &[0, 4, 3])), 3);
        assert_eq!(lee_weight(&v(5, &[0, 0, 0])), 0);
        assert_eq!(lee_weight(&v(6, &[3, 5])), 4);
    }

    #[test]
    fn distances_match_weight_of_difference() {
        let a = v(5, &[0, 0]);
        let b = v(5, &[1, 2]);
        assert_eq!(lee_distance(&a, &b).unwrap(), 3);
        assert_eq!(hamming_distance(&a, &b).unwrap(), 2);
        // Wraparound: d(4, 0) = 1 in Z_5.
        assert_eq!(lee_distance(&v(5, &[4]), &v(5, &[0])).unwrap(), 1);
    }

    #[test]
    fn shape_mismatches_are_rejected() {
        let a = v(5, &[0, 0]);
        let b = v(5, &[0, 0, 0]);
        let c = v(7, &[0, 0]);
        assert!(matches!(lee_distance(&a, &b), Err(Error::Shape(_))));
        assert!(matches!(lee_distance(&a, &c), Err(Error::Shape(_))));
        assert!(matches!(a.add(&b), Err(Error::Shape(_))));
    }

    #[test]
    fn modular_vector_arithmetic() {
        let a = v(5, &[4, 1]);
        let b = v(5, &[3, 3]);
        assert_eq!(a.add(&b).unwrap(), v(5, &[2, 4]));
        assert_eq!(a.sub(&b).unwrap(), v(5, &[1, 3]));
        assert_eq!(ZqVector::reduced(5, &[-1, 7]).unwrap(), v(5, &[4, 2]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(10, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(50, 25), "126410606437752".parse().unwrap());
    }

    #[test]
    fn sphere_volume_closed_form_values() {
        // V_1(n) = 1 + 2n, V_2(n) = 1 + 2n + 2n².
        assert_eq!(lee_sphere_volume(3, 1, 5, 1_000).unwrap(), BigUint::from(7u32));
        assert_eq!(lee_sphere_volume(4, 2, 5, 1_000).unwrap(), BigUint::from(41u32));
        assert_eq!(lee_sphere_volume(2, 1, 5, 1_000).unwrap(), BigUint::from(5u32));
        // Length zero: just the empty vector.
        assert_eq!(lee_sphere_volume(0, 2, 5, 1_000).unwrap(), BigUint::one());
    }

    #[test]
    fn sphere_volume_wraparound_falls_back_to_enumeration() {
        // t = 2 > (3−1)/2, so Z_3^3 is walked: every vector has weight ≤ 3,
        // and weight-3 vectors are exactly (±1,±1,±1) → 27 − 8 = 19.
        assert_eq!(lee_sphere_volume(3, 2, 3, 1_000).unwrap(), BigUint::from(19u32));
        // Whole space once t reaches n⌊q/2⌋.
        assert_eq!(lee_sphere_volume(3, 3, 3, 1_000).unwrap(), BigUint::from(27u32));
    }

    #[test]
    fn sphere_volume_cap() {
        let err = lee_sphere_volume(30, 20, 3, 1_000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }

    #[test]
    fn closed_form_matches_enumeration_in_shared_regime() {
        for q in [3u32, 5, 6, 7] {
            for n in 0..=4usize {
                for t in 0..=u64::from((q - 1) / 2) {
                    let closed = lee_sphere_volume(n, t, q, 1_000_000).unwrap();
                    let count = lee_ball(n, t, q, 1_000_000).unwrap().len();
                    assert_eq!(closed, BigUint::from(count), "q={q} n={n} t={t}");
                }
            }
        }
    }

    #[test]
    fn ball_is_lexicographic_and_complete() {
        let ball = lee_ball(2, 1, 5, 1_000).unwrap();
        let expect: Vec<ZqVector> = [
            [0u32, 0], [0, 1], [0, 4], [1, 0], [4, 0],
        ]
        .iter()
        .map(|s| v(5, s))
        .collect();
        assert_eq!(ball, expect);
    }

    #[test]
    fn symbol_distance_sums() {
        assert_eq!(symbol_distance_sum(6).unwrap(), 9);
        assert_eq!(symbol_distance_sum(5).unwrap(), 6);
        assert_eq!(symbol_distance_sum(2).unwrap(), 1);
        // Exhaustive: the sum is the same from every fixed symbol.
        for q in 2u32..=16 {
            let expect = symbol_distance_sum(q).unwrap();
            for a in 0..q {
                let total: u64 = (0..q)
                    .map(|b| u64::from(symbol_distance_unchecked(a, b, q)))
                    .sum();
                assert_eq!(total, expect, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn multiset_sums_from_the_balanced_counterexample() {
        // Over Z_5: five 0s and five 2s beat the balanced multiset.
        let five_zeros_five_twos = [0u32, 0, 0, 0, 0, 2, 2, 2, 2, 2];
        assert_eq!(multiset_pairwise_distance_sum(&five_zeros_five_twos, 5).unwrap(), 50);
        let balanced = [0u32, 0, 1, 1, 2, 2, 3, 3, 4, 4];
        assert_eq!(multiset_pairwise_distance_sum(&balanced, 5).unwrap(), 60);
        // Growing the column by one symbol flips the comparison.
        let zeros_and_six_twos = [0u32, 0, 0, 0, 0, 2, 2, 2, 2, 2, 2];
        assert_eq!(multiset_pairwise_distance_sum(&zeros_and_six_twos, 5).unwrap(), 60);
        let balanced_plus_zero = [0u32, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4];
        assert_eq!(multiset_pairwise_distance_sum(&balanced_plus_zero, 5).unwrap(), 72);
    }

    #[test]
    fn multiset_validation() {
        assert!(matches!(
            multiset_pairwise_distance_sum(&[], 5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            multiset_pairwise_distance_sum(&[0, 5], 5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn enumerate_space_is_lexicographic() {
        let space = enumerate_space(2, 3, 100).unwrap();
        assert_eq!(space.len(), 9);
        assert_eq!(space[0], v(3, &[0, 0]));
        assert_eq!(space[5], v(3, &[1, 2]));
        assert_eq!(space[8], v(3, &[2, 2]));
        for (i, u) in space.iter().enumerate() {
            assert_eq!(lex_rank(u), i);
        }
        assert!(matches!(enumerate_space(10, 10, 100), Err(Error::CapExceeded(_))));
    }
}
