//! Irregular-distance codes: codes whose pairwise distances satisfy a
//! per-pair requirement matrix `D` instead of a single minimum distance.
//!
//! The minimal length `N_L(D)` for which such a code exists over `Z_q` is
//! computed by an exact depth-first search with distance-deficit pruning.
//! Two analytic companions bracket the search:
//!
//! * a Plotkin-type **lower** bound, `(8/(M²q))·Σ_{i<j} D_ij` for even `q`
//!   and `(8q/(M²(q²−1)))·Σ_{i<j} D_ij` for odd `q`, kept as an exact
//!   rational;
//! * a Gilbert–Varshamov-type **upper** bound: the smallest `r` with
//!   `q^r > max_j Σ_{i<j} V(r, D_ij − 1)`, optionally minimized over row
//!   permutations.
//!
//! The search is deterministic: codewords are assigned in row order with
//! symbols tried in increasing order, the first codeword is pinned to the
//! all-zero word (any solution translates to one), and the parallel path
//! fans out over second-codeword prefixes with an order-respecting
//! reduction — so the reported witness is always the lexicographically
//! smallest one.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::lee::{self, ZqVector};
use crate::matrices::DistanceMatrix;
use crate::ratio;
use crate::{Error, Result};

// ============================================================
// Code type and verification
// ============================================================

/// A list of equal-length codewords over `Z_q`, row-aligned with a
/// requirement matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrregularCode {
    q: u32,
    length: usize,
    codewords: Vec<ZqVector>,
}

impl IrregularCode {
    /// Builds a code, validating a uniform alphabet and length.
    pub fn new(q: u32, length: usize, codewords: Vec<ZqVector>) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!("alphabet size q={q} must be at least 2")));
        }
        for c in &codewords {
            if c.q() != q {
                return Err(Error::Shape(format!(
                    "codeword {c} lives in Z_{} rather than Z_{q}",
                    c.q()
                )));
            }
            if c.len() != length {
                return Err(Error::Shape(format!(
                    "codeword {c} has length {} rather than {length}",
                    c.len()
                )));
            }
        }
        Ok(IrregularCode { q, length, codewords })
    }

    /// Alphabet size.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Common codeword length.
    pub fn length(&self) -> usize {
        self.length
    }

    /// The codewords, row-aligned with the matrix they were built for.
    pub fn codewords(&self) -> &[ZqVector] {
        &self.codewords
    }
}

/// Checks `d_L(p_i, p_j) ≥ D_ij` for every pair under the given row
/// correspondence (row `i` of the matrix ↔ codeword `i`).
pub fn verify_d_code(code: &IrregularCode, d: &DistanceMatrix) -> Result<bool> {
    if code.codewords().len() != d.size() {
        return Err(Error::Shape(format!(
            "code has {} codewords but the matrix is {}×{}",
            code.codewords().len(),
            d.size(),
            d.size()
        )));
    }
    if code.q() != d.q() {
        return Err(Error::Shape(format!(
            "code alphabet Z_{} does not match matrix alphabet Z_{}",
            code.q(),
            d.q()
        )));
    }
    for i in 0..d.size() {
        for j in i + 1..d.size() {
            if lee::lee_distance(&code.codewords()[i], &code.codewords()[j])? < d.entry(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ============================================================
// Exact minimal-length search
// ============================================================

/// Result of a minimal-length search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A code of the stated (minimal) length exists; the witness is the
    /// lexicographically smallest one with first codeword zero.
    Found {
        /// `N_L(D)`.
        length: usize,
        /// A code achieving it.
        witness: IrregularCode,
    },
    /// No code exists at any length up to and including `r_max`.
    InfeasibleUpTo {
        /// The search horizon that was exhausted.
        r_max: usize,
    },
}

/// Computes `N_L(D)` over `Z_q` by trying lengths `0 ..= r_max` in order.
///
/// Infeasibility within the horizon is an outcome, not an error. The
/// witness is deterministic (see module docs); permutations of the rows
/// need no special handling because any row ordering's solution is just a
/// reordered codeword tuple, and all tuples are searched.
pub fn search_min_length(d: &DistanceMatrix, q: u32, r_max: usize) -> Result<SearchOutcome> {
    if q < 2 {
        return Err(Error::Domain(format!("alphabet size q={q} must be at least 2")));
    }
    for r in 0..=r_max {
        if let Some(witness) = search_at_length(d, q, r) {
            return Ok(SearchOutcome::Found {
                length: r,
                witness: IrregularCode::new(q, r, witness)?,
            });
        }
    }
    Ok(SearchOutcome::InfeasibleUpTo { r_max })
}

fn search_at_length(d: &DistanceMatrix, q: u32, r: usize) -> Option<Vec<ZqVector>> {
    let m = d.size();
    if m == 0 {
        return Some(Vec::new());
    }
    // Any solution translates so the first codeword is all-zero, and the
    // all-zero first row is lexicographically minimal.
    let zero = vec![0u32; r];
    if m == 1 {
        return Some(vec![ZqVector::new(q, zero).expect("zero codeword is valid")]);
    }
    // Requirements involving rows ≥ 1; the matrix stays shared.
    let assigned = vec![zero];

    #[cfg(feature = "parallel")]
    {
        let prefixes = second_row_prefixes(d, q, r, &assigned);
        let hit = prefixes.into_par_iter().find_map_first(|prefix| {
            let mut rows = assigned.clone();
            extend_with_prefix(d, q, r, &mut rows, &prefix)
        });
        return hit.map(to_vectors(q));
    }
    #[cfg(not(feature = "parallel"))]
    {
        let prefixes = second_row_prefixes(d, q, r, &assigned);
        for prefix in prefixes {
            let mut rows = assigned.clone();
            if let Some(sol) = extend_with_prefix(d, q, r, &mut rows, &prefix) {
                return Some(to_vectors(q)(sol));
            }
        }
        None
    }
}

fn to_vectors(q: u32) -> impl Fn(Vec<Vec<u32>>) -> Vec<ZqVector> {
    move |rows| {
        rows.into_iter()
            .map(|s| ZqVector::new(q, s).expect("search emits canonical symbols"))
            .collect()
    }
}

/// Feasible prefixes (length `min(2, r)`) for the second codeword, in
/// lexicographic order; these key the parallel fan-out.
fn second_row_prefixes(
    d: &DistanceMatrix,
    q: u32,
    r: usize,
    assigned: &[Vec<u32>],
) -> Vec<Vec<u32>> {
    let depth = r.min(2);
    let mut out = Vec::new();
    // The empty prefix (r = 0) makes exactly one loop pass, as it should.
    let mut prefix = vec![0u32; depth];
    loop {
        if prefix_feasible(d, q, r, assigned, 1, &prefix) {
            out.push(prefix.clone());
        }
        if !lee::increment(&mut prefix, q) {
            break;
        }
    }
    out
}

/// Checks the deficit bound for row `i` against all assigned rows, given
/// the first `prefix.len()` symbols of row `i`.
fn prefix_feasible(
    d: &DistanceMatrix,
    q: u32,
    r: usize,
    assigned: &[Vec<u32>],
    i: usize,
    prefix: &[u32],
) -> bool {
    let half = u64::from(q / 2);
    let remaining = (r - prefix.len()) as u64;
    for (j, row) in assigned.iter().enumerate() {
        let have: u64 = prefix
            .iter()
            .zip(row)
            .map(|(&a, &b)| u64::from(lee::symbol_distance_unchecked(a, b, q)))
            .sum();
        if have + remaining * half < d.entry(i, j) {
            return false;
        }
    }
    true
}

/// Completes the search after pinning the given prefix of the second
/// codeword. Returns the lexicographically smallest full assignment in the
/// subtree, if any.
fn extend_with_prefix(
    d: &DistanceMatrix,
    q: u32,
    r: usize,
    rows: &mut Vec<Vec<u32>>,
    prefix: &[u32],
) -> Option<Vec<Vec<u32>>> {
    debug_assert_eq!(rows.len(), 1);
    if !prefix_feasible(d, q, r, rows, 1, prefix) {
        return None;
    }
    let mut row = prefix.to_vec();
    row.resize(r, 0);
    if complete_row(d, q, r, rows, 1, &mut row, prefix.len()) {
        Some(rows.clone())
    } else {
        None
    }
}

/// Depth-first completion of row `i` from symbol position `from`; on a
/// complete row, recurses to the next row. `rows` holds completed rows.
fn complete_row(
    d: &DistanceMatrix,
    q: u32,
    r: usize,
    rows: &mut Vec<Vec<u32>>,
    i: usize,
    row: &mut Vec<u32>,
    from: usize,
) -> bool {
    if from == r {
        if !prefix_feasible(d, q, r, rows, i, row) {
            return false;
        }
        rows.push(row.clone());
        if rows.len() == d.size() {
            return true;
        }
        let mut next = vec![0u32; r];
        if complete_row(d, q, r, rows, i + 1, &mut next, 0) {
            return true;
        }
        rows.pop();
        return false;
    }
    for s in 0..q {
        row[from] = s;
        if prefix_feasible(d, q, r, rows, i, &row[..from + 1])
            && complete_row(d, q, r, rows, i, row, from + 1)
        {
            return true;
        }
    }
    row[from] = 0;
    false
}

// ============================================================
// Analytic bounds
// ============================================================

/// The Plotkin-type lower bound on `N_L(D)` as an exact rational:
/// `(8/(M²q))·Σ_{i<j} D_ij` for even `q`, `(8q/(M²(q²−1)))·Σ_{i<j} D_ij`
/// for odd `q`. Requires `M ≥ 2`.
pub fn plotkin_lower_bound(d: &DistanceMatrix, q: u32) -> Result<BigRational> {
    if d.size() < 2 {
        return Err(Error::Domain(format!(
            "Plotkin-type bound needs at least 2 rows, got {}",
            d.size()
        )));
    }
    if q < 2 {
        return Err(Error::Domain(format!("alphabet size q={q} must be at least 2")));
    }
    let m = d.size() as u64;
    let q64 = u64::from(q);
    let sum = d.upper_triangle_sum();
    let bound = if q % 2 == 0 {
        ratio::ratio(8 * sum, m * m * q64)
    } else {
        ratio::ratio(8 * q64 * sum, m * m * (q64 * q64 - 1))
    };
    Ok(bound)
}

/// Row-permutation policy for the Gilbert–Varshamov-type bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermutationPolicy {
    /// Evaluate the bound for the row order as given.
    Identity,
    /// Minimize over all row permutations (only for `M ≤ 8`).
    AllPermutations,
}

/// The Gilbert–Varshamov-type upper bound on `N_L(D)`: the smallest `r`
/// with `q^r > max_j Σ_{i<j} V(r, D_{π(i)π(j)} − 1)`, minimized over the
/// permutations the policy allows (`V(r, −1) = 0`).
pub fn gv_upper_bound(
    d: &DistanceMatrix,
    q: u32,
    policy: PermutationPolicy,
    cap: u64,
) -> Result<usize> {
    if q < 2 {
        return Err(Error::Domain(format!("alphabet size q={q} must be at least 2")));
    }
    let m = d.size();
    let orders: Vec<Vec<usize>> = match policy {
        PermutationPolicy::Identity => vec![(0..m).collect()],
        PermutationPolicy::AllPermutations => {
            if m > 8 {
                return Err(Error::Unsupported(format!(
                    "all-permutations policy is limited to M ≤ 8, got M = {m}"
                )));
            }
            permutations(m)
        }
    };
    let mut best: Option<usize> = None;
    for order in &orders {
        let r = gv_for_order(d, q, order, cap, best)?;
        best = match (best, r) {
            (None, r) => r,
            (Some(b), Some(r)) => Some(b.min(r)),
            (Some(b), None) => Some(b),
        };
    }
    best.ok_or_else(|| Error::Domain("empty permutation set".into()))
}

/// GV fixed point for one row order; `stop_at` short-circuits orders that
/// cannot beat an already-known value.
fn gv_for_order(
    d: &DistanceMatrix,
    q: u32,
    order: &[usize],
    cap: u64,
    stop_at: Option<usize>,
) -> Result<Option<usize>> {
    let m = order.len();
    let mut r = 0usize;
    loop {
        if let Some(limit) = stop_at {
            if r >= limit {
                // This order cannot improve on the best found so far.
                return Ok(None);
            }
        }
        let power = BigUint::from(q).pow(r as u32);
        let mut worst = BigUint::zero();
        for j in 0..m {
            let mut sum = BigUint::zero();
            for i in 0..j {
                sum += lee::volume_or_zero(r, d.entry(order[i], order[j]), q, cap)?;
            }
            if sum > worst {
                worst = sum;
            }
        }
        if power > worst {
            return Ok(Some(r));
        }
        r += 1;
    }
}

/// All permutations of `0..m` in lexicographic order.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    let mut used = vec![false; m];
    fn rec(m: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for i in 0..m {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(m, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(m, &mut current, &mut used, &mut out);
    out
}

/// `⌈2t / ⌊q/2⌋⌉`: the minimal length of a two-codeword code at distance
/// `2t`, i.e. the redundancy floor for binary-valued functions.
pub fn binary_redundancy_floor(q: u32, t: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::Domain(format!("alphabet size q={q} must be at least 2")));
    }
    let half = u64::from(q / 2);
    Ok((2 * t).div_ceil(half))
}

// ============================================================
// Tests
// ============================================================
