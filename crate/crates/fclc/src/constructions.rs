//! The four explicit FCLC encoders and their parity maps.
//!
//! Each constructor enumerates `Z_q^k` in lexicographic order, labels every
//! message with its function value, and appends `r` copies of a parity
//! symbol chosen so that messages with different labels land at Lee distance
//! at least `2t + 1`:
//!
//! * [`construct_lee_weight_fclc`] — parities follow the doubling map of
//!   [`parity_map_lee_weight`], indexed by the message's Lee weight.
//! * [`construct_wdist_fclc`] — the same doubling map, indexed by the
//!   weight-distribution block `Δ_T(u) = ⌊wt_L(u)/T⌋`.
//! * [`construct_modsum_fclc`] — the map of [`parity_map_modsum`], which for
//!   even `q` swaps the last two parities so that parity-adjacent labels
//!   stay at least 2 apart as sums.
//! * [`construct_local_fclc`] — colors the message space with
//!   [`TargetFunction::color_function`] and spreads `λ` parities evenly
//!   around `Z_q`.
//!
//! [`verify_fclc`] checks the distance property over all record pairs and
//! reports the first violating pair in record order, and [`redundancy_of`]
//! exposes the closed-form redundancy for each construction's parameter
//! regime.
//!
//! # Even alphabets and the doubling map
//!
//! For even `q` the doubling parity map has a structural blind spot: weights
//! `q − 1` and `q` receive parities at Lee distance 1 while messages with
//! those weights can be adjacent, so the Lee-weight construction cannot
//! reach the `2t + 1` floor once `k ≥ 2` puts both weights in range. The
//! encoder still builds such codebooks faithfully — [`verify_fclc`] will
//! pinpoint the offending pair — but they are not valid
//! `t`-error-correcting codes. Odd alphabets are unaffected: there the map
//! steps by exactly 2 between adjacent weights and repeats a parity only
//! after a full period of `q ≥ 2t + 3` weights. The modular-sum map dodges
//! the same trap by swapping its last two parities, and the
//! weight-distribution construction inherits the blind spot only when its
//! block count exceeds `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{self, TargetFunction};
use crate::lee::{self, ZqVector};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

// ============================================================
// Codebooks
// ============================================================

/// Which encoder produced a codebook.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstructionTag {
    /// Lee-weight function, doubling parity map.
    #[serde(rename = "lee-weight")]
    LeeWeight,
    /// Weight-distribution function, doubling map over block indices.
    #[serde(rename = "wdist")]
    WeightDistribution,
    /// Modular-sum function, doubling map with the even-`q` swap.
    #[serde(rename = "modsum")]
    ModularSum,
    /// Locally bounded function, evenly spread color parities.
    #[serde(rename = "local")]
    LocallyBounded,
}

impl fmt::Display for ConstructionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ConstructionTag::LeeWeight => "lee-weight",
            ConstructionTag::WeightDistribution => "wdist",
            ConstructionTag::ModularSum => "modsum",
            ConstructionTag::LocallyBounded => "local",
        };
        f.write_str(name)
    }
}

impl FromStr for ConstructionTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lee-weight" => Ok(ConstructionTag::LeeWeight),
            "wdist" => Ok(ConstructionTag::WeightDistribution),
            "modsum" => Ok(ConstructionTag::ModularSum),
            "local" => Ok(ConstructionTag::LocallyBounded),
            other => Err(Error::Parse(format!(
                "unknown construction '{other}' (expected lee-weight, wdist, modsum, or local)"
            ))),
        }
    }
}

/// One codebook row: a message, its function value, and its codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodebookRecord {
    /// The information vector `u ∈ Z_q^k`.
    pub message: ZqVector,
    /// The function value `f(u)` (canonical label).
    pub label: u32,
    /// The encoded vector `(u, parity^r) ∈ Z_q^{k+r}`.
    pub codeword: ZqVector,
}

/// A systematic function-correcting codebook over `Z_q^k`.
///
/// Records are stored in lexicographic message order when built by a
/// constructor; [`Codebook::from_json`] preserves whatever order the
/// document lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    q: u32,
    k: usize,
    t: u64,
    r: u64,
    construction: ConstructionTag,
    parity_map: BTreeMap<u32, u32>,
    records: Vec<CodebookRecord>,
}

impl Codebook {
    /// Alphabet size.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Message length.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Error budget the codebook was built for.
    pub fn t(&self) -> u64 {
        self.t
    }

    /// Number of appended parity symbols.
    pub fn r(&self) -> u64 {
        self.r
    }

    /// Which encoder produced this codebook.
    pub fn construction(&self) -> ConstructionTag {
        self.construction
    }

    /// The parity assignment, keyed by label (or by color for
    /// [`ConstructionTag::LocallyBounded`]).
    pub fn parity_map(&self) -> &BTreeMap<u32, u32> {
        &self.parity_map
    }

    /// All records, in construction order.
    pub fn records(&self) -> &[CodebookRecord] {
        &self.records
    }

    /// Number of records.
    pub fn len(&self) -> usize {
        self.records.len()
    }

    /// Whether the codebook holds no records.
    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Serializes to a JSON document with fixed field order
    /// `q, k, t, r, construction, parity_map, records`.
    pub fn to_json(&self) -> String {
        let shadow = CodebookJson {
            q: self.q,
            k: self.k,
            t: self.t,
            r: self.r,
            construction: self.construction,
            parity_map: self.parity_map.clone(),
            records: self
                .records
                .iter()
                .map(|rec| RecordJson {
                    u: rec.message.symbols().to_vec(),
                    f: rec.label,
                    c: rec.codeword.symbols().to_vec(),
                })
                .collect(),
        };
        serde_json::to_string(&shadow).expect("codebook serialization cannot fail")
    }

    /// Parses a codebook from the JSON layout written by
    /// [`Codebook::to_json`], validating symbol ranges and vector shapes.
    pub fn from_json(text: &str) -> Result<Self> {
        let shadow: CodebookJson = serde_json::from_str(text)?;
        let CodebookJson { q, k, t, r, construction, parity_map, records } = shadow;
        if q < 2 {
            return Err(Error::Parse(format!("codebook alphabet q={q} must be at least 2")));
        }
        let n = k + r as usize;
        let mut out = Vec::with_capacity(records.len());
        for rec in records {
            if rec.u.len() != k {
                return Err(Error::Parse(format!(
                    "record message has {} symbols, expected k={k}",
                    rec.u.len()
                )));
            }
            if rec.c.len() != n {
                return Err(Error::Parse(format!(
                    "record codeword has {} symbols, expected k+r={n}",
                    rec.c.len()
                )));
            }
            out.push(CodebookRecord {
                message: ZqVector::new(q, rec.u)?,
                label: rec.f,
                codeword: ZqVector::new(q, rec.c)?,
            });
        }
        Ok(Codebook { q, k, t, r, construction, parity_map, records: out })
    }

    /// Renders the records as CSV: a `u;f;c` header, then one row per
    /// record with comma-joined symbols in the `u` and `c` columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u;f;c\n");
        for rec in &self.records {
            out.push_str(&format!("{};{};{}\n", rec.message, rec.label, rec.codeword));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct RecordJson {
    u: Vec<u32>,
    f: u32,
    c: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct CodebookJson {
    q: u32,
    k: usize,
    t: u64,
    r: u64,
    construction: ConstructionTag,
    parity_map: BTreeMap<u32, u32>,
    records: Vec<RecordJson>,
}

// ============================================================
// Parity maps
// ============================================================

/// The doubling parity symbol for weight (or block index) `w`: `2w mod q`
/// for odd `q`; for even `q` the upper half-period shifts by one so the
/// map stays injective on one period. Periodic in `w` with period `q`.
fn doubling_parity(q: u32, w: u64) -> u32 {
    let q = u64::from(q);
    let w = w % q;
    let v = if q % 2 == 1 || w < q / 2 { 2 * w } else { 2 * w + 1 };
    (v % q) as u32
}

/// The Lee-weight parity assignment for weights `0 ..= w_max`.
///
/// Odd `q`: `p_w = 2w mod q`. Even `q`: `p_w = 2w mod q` below the
/// half-period and `(2w + 1) mod q` from `q/2` up. Beyond `q − 1` the map
/// repeats with period `q`.
pub fn parity_map_lee_weight(q: u32, w_max: u32) -> Result<BTreeMap<u32, u32>> {
    check_alphabet(q)?;
    Ok((0..=w_max).map(|w| (w, doubling_parity(q, u64::from(w)))).collect())
}

/// The modular-sum parity symbol for a label in `0 .. q`. Identical to the
/// doubling map except that for even `q` the labels `q − 2` and `q − 1`
/// swap parities, keeping parity-adjacent labels at Lee distance ≥ 2.
fn modsum_parity(q: u32, label: u32) -> u32 {
    let q64 = u64::from(q);
    let l = u64::from(label) % q64;
    let v = if q % 2 == 1 || l < q64 / 2 {
        2 * l
    } else if l == q64 - 2 {
        2 * (q64 - 1) + 1
    } else if l == q64 - 1 {
        2 * (q64 - 2) + 1
    } else {
        2 * l + 1
    };
    (v % q64) as u32
}

/// The modular-sum parity assignment for labels `0 .. q`.
pub fn parity_map_modsum(q: u32) -> Result<BTreeMap<u32, u32>> {
    check_alphabet(q)?;
    Ok((0..q).map(|l| (l, modsum_parity(q, l))).collect())
}

fn check_alphabet(q: u32) -> Result<()> {
    if q < 5 {
        return Err(Error::Unsupported(format!(
            "constructions require an alphabet of size q ≥ 5, got q={q}"
        )));
    }
    Ok(())
}

// ============================================================
// Redundancy formulas
// ============================================================

/// Parameters selecting a construction and its regime for
/// [`redundancy_of`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionParams {
    /// Lee-weight construction over `Z_q^k` correcting `t` errors.
    LeeWeight { q: u32, k: usize, t: u64 },
    /// Weight-distribution construction with block size `block`.
    WeightDistribution { q: u32, k: usize, t: u64, block: u32 },
    /// Modular-sum construction.
    ModularSum { q: u32, k: usize, t: u64 },
    /// Locally bounded construction with `lambda` colors.
    LocallyBounded { q: u32, k: usize, t: u64, lambda: u64 },
}

/// Closed-form redundancy for each construction's parameter regime.
///
/// * Lee weight: `r = t` while `2t ≤ q − 3`; beyond that regime the parity
///   period becomes too tight and `r = 2t + 1 − ⌊q/2⌋` (odd `q`) or
///   `r = 2t + 2 − ⌊q/2⌋` (even `q`).
/// * Weight distribution: `r = t` (and `r = 0` when a single block covers
///   the whole weight range, since no pair is constrained).
/// * Modular sum: `r = t` for odd `q` while `2t ≤ q − 3`, then
///   `2t + 1 − ⌊q/2⌋`; for even `q` the swap costs distance and
///   `r = 2t − 1`.
/// * Locally bounded: `r = ⌈t / ⌊q/(2λ)⌋⌉`.
///
/// `t = 0` yields `r = 0` for every construction: distinct messages are
/// already at distance ≥ 1.
pub fn redundancy_of(params: &ConstructionParams) -> Result<u64> {
    match *params {
        ConstructionParams::LeeWeight { q, k: _, t } => {
            check_alphabet(q)?;
            let q64 = u64::from(q);
            if 2 * t <= q64 - 3 {
                Ok(t)
            } else if q % 2 == 1 {
                Ok(2 * t + 1 - q64 / 2)
            } else {
                Ok(2 * t + 2 - q64 / 2)
            }
        }
        ConstructionParams::WeightDistribution { q, k, t, block } => {
            check_alphabet(q)?;
            if block == 0 {
                return Err(Error::Unsupported("block size T must be at least 1".into()));
            }
            let span = functions::max_weight(q, k) + 1;
            if span % u64::from(block) != 0 {
                return Err(Error::Unsupported(format!(
                    "block size T={block} does not divide k⌊q/2⌋+1 = {span}"
                )));
            }
            if t > u64::from(block) {
                return Err(Error::Unsupported(format!(
                    "error budget t={t} exceeds block size T={block}"
                )));
            }
            let e = span / u64::from(block);
            Ok(if e == 1 { 0 } else { t })
        }
        ConstructionParams::ModularSum { q, k: _, t } => {
            check_alphabet(q)?;
            let q64 = u64::from(q);
            if q % 2 == 1 {
                if 2 * t <= q64 - 3 {
                    Ok(t)
                } else {
                    Ok(2 * t + 1 - q64 / 2)
                }
            } else if t == 0 {
                Ok(0)
            } else {
                Ok(2 * t - 1)
            }
        }
        ConstructionParams::LocallyBounded { q, t, lambda, .. } => {
            check_alphabet(q)?;
            if lambda == 0 {
                return Err(Error::Domain("lambda must be at least 1".into()));
            }
            if 2 * lambda > u64::from(q) {
                return Err(Error::Unsupported(format!(
                    "lambda={lambda} exceeds q/2 = {}",
                    f64::from(q) / 2.0
                )));
            }
            let step = u64::from(q) / (2 * lambda);
            Ok(t.div_ceil(step))
        }
    }
}

// ============================================================
// Constructions
// ============================================================

/// Builds the Lee-weight FCLC over `Z_q^k`: each message `u` is extended
/// by `r` copies of the doubling parity for `wt_L(u)`.
///
/// See the module notes for the even-`q` caveat: for even `q` and `k ≥ 2`
/// the resulting codebook fails [`verify_fclc`] at the weight-`q−1` /
/// weight-`q` seam.
pub fn construct_lee_weight_fclc(q: u32, k: usize, t: u64, cap: u64) -> Result<Codebook> {
    let r = redundancy_of(&ConstructionParams::LeeWeight { q, k, t })?;
    let f = TargetFunction::lee_weight(q, k)?;
    let w_max = u32::try_from(functions::max_weight(q, k))
        .map_err(|_| Error::Domain(format!("weight range k⌊q/2⌋ overflows for k={k}")))?;
    let parity_map = parity_map_lee_weight(q, w_max)?;
    let pm = parity_map.clone();
    assemble(q, k, t, r, ConstructionTag::LeeWeight, parity_map, cap, move |u| {
        let label = f.evaluate(u)?;
        Ok((label, parity_for(&pm, label)?))
    })
}

/// Builds the weight-distribution FCLC over `Z_q^k` with block size
/// `block`: parities come from the doubling map indexed by
/// `Δ_T(u) = ⌊wt_L(u)/T⌋`.
///
/// Requires `block` to divide `k⌊q/2⌋ + 1` and `t ≤ block`. When the
/// function collapses to a single block (`E = 1`) the codebook is built
/// with `r = 0`: no pair of messages is constrained.
pub fn construct_wdist_fclc(q: u32, k: usize, t: u64, block: u32, cap: u64) -> Result<Codebook> {
    let r = redundancy_of(&ConstructionParams::WeightDistribution { q, k, t, block })?;
    let f = TargetFunction::weight_distribution(q, k, block)?;
    let blocks = (functions::max_weight(q, k) + 1) / u64::from(block);
    let parity_map: BTreeMap<u32, u32> =
        (0..blocks as u32).map(|m| (m, doubling_parity(q, u64::from(m)))).collect();
    let pm = parity_map.clone();
    assemble(q, k, t, r, ConstructionTag::WeightDistribution, parity_map, cap, move |u| {
        let label = f.evaluate(u)?;
        Ok((label, parity_for(&pm, label)?))
    })
}

/// Builds the modular-sum FCLC over `Z_q^k` using the
/// [`parity_map_modsum`] assignment.
pub fn construct_modsum_fclc(q: u32, k: usize, t: u64, cap: u64) -> Result<Codebook> {
    let r = redundancy_of(&ConstructionParams::ModularSum { q, k, t })?;
    let f = TargetFunction::modular_sum(q, k)?;
    let parity_map = parity_map_modsum(q)?;
    let pm = parity_map.clone();
    assemble(q, k, t, r, ConstructionTag::ModularSum, parity_map, cap, move |u| {
        let label = f.evaluate(u)?;
        Ok((label, parity_for(&pm, label)?))
    })
}

/// Builds an FCLC for an arbitrary locally `(2t, λ)`-bounded function:
/// messages are colored with [`TargetFunction::color_function`] at radius
/// `2t`, color `i` gets parity `2(i−1)⌊q/(2λ)⌋`, and the parity repeats
/// `r = ⌈t/⌊q/(2λ)⌋⌉` times.
///
/// The codebook's parity map is keyed by color (`1 ..= λ`), while record
/// labels remain the function values.
pub fn construct_local_fclc(f: &TargetFunction, t: u64, lambda: u64, cap: u64) -> Result<Codebook> {
    let (q, k) = (f.q(), f.k());
    let r = redundancy_of(&ConstructionParams::LocallyBounded { q, k, t, lambda })?;
    let coloring = f.color_function(2 * t, lambda, cap)?;
    let step = u64::from(q) / (2 * lambda);
    let parity_map: BTreeMap<u32, u32> = (1..=lambda as u32)
        .map(|i| (i, ((2 * u64::from(i - 1) * step) % u64::from(q)) as u32))
        .collect();
    let pm = parity_map.clone();
    assemble(q, k, t, r, ConstructionTag::LocallyBounded, parity_map, cap, move |u| {
        let label = f.evaluate(u)?;
        let color = coloring.color_of(u)?;
        Ok((label, parity_for(&pm, color)?))
    })
}

fn parity_for(map: &BTreeMap<u32, u32>, key: u32) -> Result<u32> {
    map.get(&key)
        .copied()
        .ok_or_else(|| Error::Domain(format!("no parity assigned to label {key}")))
}

/// Enumerates `Z_q^k`, applies `row` to every message to get its
/// `(label, parity)` pair, and appends `r` parity copies.
fn assemble<F>(
    q: u32,
    k: usize,
    t: u64,
    r: u64,
    construction: ConstructionTag,
    parity_map: BTreeMap<u32, u32>,
    cap: u64,
    row: F,
) -> Result<Codebook>
where
    F: Fn(&ZqVector) -> Result<(u32, u32)> + Sync,
{
    let space = lee::enumerate_space(k, q, cap)?;
    let make = |u: &ZqVector| -> Result<CodebookRecord> {
        let (label, parity) = row(u)?;
        let mut symbols = Vec::with_capacity(k + r as usize);
        symbols.extend_from_slice(u.symbols());
        symbols.resize(k + r as usize, parity);
        Ok(CodebookRecord { message: u.clone(), label, codeword: ZqVector::new(q, symbols)? })
    };
    let records = {
        #[cfg(feature = "parallel")]
        {
            space.par_iter().map(make).collect::<Result<Vec<_>>>()?
        }
        #[cfg(not(feature = "parallel"))]
        {
            space.iter().map(make).collect::<Result<Vec<_>>>()?
        }
    };
    Ok(Codebook { q, k, t, r, construction, parity_map, records })
}

// ============================================================
// Verification
// ============================================================

/// A failed distance check: the first pair of records (in record order)
/// with different labels whose codewords sit closer than `2t + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Record index of the earlier codeword.
    pub index_a: usize,
    /// Record index of the later codeword.
    pub index_b: usize,
    /// Message of the earlier record.
    pub u_a: Vec<u32>,
    /// Message of the later record.
    pub u_b: Vec<u32>,
    /// Label of the earlier record.
    pub label_a: u32,
    /// Label of the later record.
    pub label_b: u32,
    /// Lee distance between the two codewords.
    pub distance: u64,
    /// The `2t + 1` floor the pair had to meet.
    pub required: u64,
}

/// Outcome of [`verify_fclc`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    /// Whether every differing-label pair meets the distance floor.
    pub valid: bool,
    /// The first violating pair when `valid` is false.
    pub first_violation: Option<Violation>,
}

/// Checks the FCLC distance property: every pair of records with different
/// labels must have codewords at Lee distance at least `2t + 1`. Scans all
/// pairs and reports the first violation in record order (smallest first
/// index, then smallest second index).
pub fn verify_fclc(cb: &Codebook, t: u64) -> Result<VerifyOutcome> {
    #[cfg(feature = "parallel")]
    {
        verify_fclc_par(cb, t)
    }
    #[cfg(not(feature = "parallel"))]
    {
        verify_fclc_seq(cb, t)
    }
}

/// Sequential pair scan; see [`verify_fclc`].
pub fn verify_fclc_seq(cb: &Codebook, t: u64) -> Result<VerifyOutcome> {
    check_record_shapes(cb)?;
    let first = (0..cb.records.len()).find_map(|i| violation_at(cb, t, i));
    Ok(VerifyOutcome { valid: first.is_none(), first_violation: first })
}

/// Parallel pair scan over first indices with a deterministic
/// first-violation reduction; see [`verify_fclc`].
#[cfg(feature = "parallel")]
pub fn verify_fclc_par(cb: &Codebook, t: u64) -> Result<VerifyOutcome> {
    check_record_shapes(cb)?;
    let first = (0..cb.records.len())
        .into_par_iter()
        .find_map_first(|i| violation_at(cb, t, i));
    Ok(VerifyOutcome { valid: first.is_none(), first_violation: first })
}

/// First violation whose earlier index is exactly `i`, scanning later
/// indices in ascending order.
fn violation_at(cb: &Codebook, t: u64, i: usize) -> Option<Violation> {
    let required = 2 * t + 1;
    let a = &cb.records[i];
    for (j, b) in cb.records.iter().enumerate().skip(i + 1) {
        if a.label == b.label {
            continue;
        }
        let distance = codeword_distance(&a.codeword, &b.codeword);
        if distance < required {
            return Some(Violation {
                index_a: i,
                index_b: j,
                u_a: a.message.symbols().to_vec(),
                u_b: b.message.symbols().to_vec(),
                label_a: a.label,
                label_b: b.label,
                distance,
                required,
            });
        }
    }
    None
}

/// Lee distance between two codewords already known to share `q` and
/// length (guaranteed by [`check_record_shapes`]).
fn codeword_distance(a: &ZqVector, b: &ZqVector) -> u64 {
    let q = a.q();
    a.symbols()
        .iter()
        .zip(b.symbols())
        .map(|(&x, &y)| u64::from(lee::symbol_distance_unchecked(x, y, q)))
        .sum()
}

fn check_record_shapes(cb: &Codebook) -> Result<()> {
    let n = cb.k + cb.r as usize;
    for rec in &cb.records {
        if rec.message.q() != cb.q || rec.codeword.q() != cb.q {
            return Err(Error::Shape(format!(
                "record for {} does not match the codebook alphabet q={}",
                rec.message, cb.q
            )));
        }
        if rec.message.len() != cb.k || rec.codeword.len() != n {
            return Err(Error::Shape(format!(
                "record for {} does not have shape (k={}, k+r={n})",
                rec.message, cb.k
            )));
        }
    }
    Ok(())
}

// ============================================================
// Tests
// ============================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_CAP;

    fn v(q: u32, s: &[u32]) -> ZqVector {
        ZqVector::new(q, s.to_vec()).unwrap()
    }

    fn record_for<'a>(cb: &'a Codebook, message: &ZqVector) -> &'a CodebookRecord {
        cb.records()
            .iter()
            .find(|rec| &rec.message == message)
            .expect("message should be present in the codebook")
    }

    fn assert_valid(cb: &Codebook, t: u64) {
        let outcome = verify_fclc(cb, t).unwrap();
        assert!(
            outcome.valid,
            "expected a valid codebook at t={t}, got violation {:?}",
            outcome.first_violation
        );
    }

    // ==== parity maps ====

    #[test]
    fn lee_weight_parity_map_q5() {
        let map = parity_map_lee_weight(5, 6).unwrap();
        let values: Vec<u32> = (0..=6).map(|w| map[&w]).collect();
        assert_eq!(values, vec![0, 2, 4, 1, 3, 0, 2]);
    }

    #[test]
    fn lee_weight_parity_map_q6() {
        let map = parity_map_lee_weight(6, 9).unwrap();
        let values: Vec<u32> = (0..=9).map(|w| map[&w]).collect();
        assert_eq!(values, vec![0, 2, 4, 1, 3, 5, 0, 2, 4, 1]);
    }

    #[test]
    fn lee_weight_parity_map_q7_origin() {
        let map = parity_map_lee_weight(7, 0).unwrap();
        assert_eq!(map[&0], 0);
    }

    #[test]
    fn parity_maps_reject_small_alphabets() {
        assert!(matches!(parity_map_lee_weight(4, 3), Err(Error::Unsupported(_))));
        assert!(matches!(parity_map_modsum(4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn modsum_parity_map_q5() {
        let map = parity_map_modsum(5).unwrap();
        let values: Vec<u32> = (0..5).map(|l| map[&l]).collect();
        assert_eq!(values, vec![0, 2, 4, 1, 3]);
    }

    #[test]
    fn modsum_parity_map_q6_swaps_tail() {
        let map = parity_map_modsum(6).unwrap();
        let values: Vec<u32> = (0..6).map(|l| map[&l]).collect();
        assert_eq!(values, vec![0, 2, 4, 1, 5, 3]);
    }

    // ==== Lee-weight construction ====

    #[test]
    fn lee_weight_5_3_1_spot_records() {
        let cb = construct_lee_weight_fclc(5, 3, 1, DEFAULT_CAP).unwrap();
        assert_eq!(cb.len(), 125);
        assert_eq!(cb.r(), 1);
        let zero = record_for(&cb, &v(5, &[0, 0, 0]));
        assert_eq!(zero.label, 0);
        assert_eq!(zero.codeword, v(5, &[0, 0, 0, 0]));
        let heavy = record_for(&cb, &v(5, &[2, 2, 2]));
        assert_eq!(heavy.label, 6);
        assert_eq!(heavy.codeword, v(5, &[2, 2, 2, 2]));
    }

    #[test]
    fn lee_weight_5_3_1_verifies() {
        let cb = construct_lee_weight_fclc(5, 3, 1, DEFAULT_CAP).unwrap();
        assert_valid(&cb, 1);
    }

    #[test]
    fn lee_weight_5_2_2_extended_regime() {
        // t=2 > (q−3)/2 = 1, odd q: r = 2t+1−⌊q/2⌋ = 3.
        let cb = construct_lee_weight_fclc(5, 2, 2, DEFAULT_CAP).unwrap();
        assert_eq!(cb.r(), 3);
        assert_valid(&cb, 2);
    }

    #[test]
    fn lee_weight_even_q_fails_at_period_seam() {
        // Weights q−1=5 and q=6 get parities 5 and 0 (Lee distance 1) while
        // the messages (2,3) and (3,3) are adjacent, so t=1 is unreachable.
        let cb = construct_lee_weight_fclc(6, 2, 1, DEFAULT_CAP).unwrap();
        let outcome = verify_fclc(&cb, 1).unwrap();
        assert!(!outcome.valid);
        let violation = outcome.first_violation.unwrap();
        assert_eq!(violation.u_a, vec![2, 3]);
        assert_eq!(violation.u_b, vec![3, 3]);
        assert_eq!((violation.label_a, violation.label_b), (5, 6));
        assert_eq!(violation.distance, 2);
        assert_eq!(violation.required, 3);
    }

    #[test]
    fn lee_weight_even_q_is_fine_without_the_seam() {
        // k=1 keeps the weight range below q, so the even-q blind spot
        // never activates.
        let cb = construct_lee_weight_fclc(6, 1, 1, DEFAULT_CAP).unwrap();
        assert_valid(&cb, 1);
    }

    #[test]
    fn lee_weight_t0_has_no_parity() {
        let cb = construct_lee_weight_fclc(5, 2, 0, DEFAULT_CAP).unwrap();
        assert_eq!(cb.r(), 0);
        for rec in cb.records() {
            assert_eq!(rec.codeword, rec.message);
        }
        assert_valid(&cb, 0);
    }

    #[test]
    fn lee_weight_rejects_q4() {
        assert!(matches!(
            construct_lee_weight_fclc(4, 2, 1, DEFAULT_CAP),
            Err(Error::Unsupported(_))
        ));
    }

    // ==== weight-distribution construction ====

    #[test]
    fn wdist_6_1_t1_block2() {
        let cb = construct_wdist_fclc(6, 1, 1, 2, DEFAULT_CAP).unwrap();
        assert_eq!(cb.r(), 1);
        assert_eq!(record_for(&cb, &v(6, &[1])).codeword, v(6, &[1, 0]));
        assert_eq!(record_for(&cb, &v(6, &[2])).codeword, v(6, &[2, 2]));
        assert_valid(&cb, 1);
    }

    #[test]
    fn wdist_6_3_t2_block2_verifies() {
        // E = (3·3+1)/2 = 5 blocks, r = t = 2.
        let cb = construct_wdist_fclc(6, 3, 2, 2, DEFAULT_CAP).unwrap();
        assert_eq!(cb.r(), 2);
        assert_eq!(cb.len(), 216);
        assert_valid(&cb, 2);
    }

    #[test]
    fn wdist_single_block_is_trivial() {
        // T = k⌊q/2⌋+1 = 7 puts every message in block 0: r = 0.
        let cb = construct_wdist_fclc(5, 3, 1, 7, DEFAULT_CAP).unwrap();
        assert_eq!(cb.r(), 0);
        assert!(cb.records().iter().all(|rec| rec.label == 0));
        assert_valid(&cb, 1);
    }

    #[test]
    fn wdist_rejects_bad_blocks() {
        // 3 does not divide 2⌊5/2⌋+1 = 5.
        assert!(matches!(
            construct_wdist_fclc(5, 2, 1, 3, DEFAULT_CAP),
            Err(Error::Unsupported(_))
        ));
        // t must stay within one block.
        assert!(matches!(
            construct_wdist_fclc(5, 2, 6, 5, DEFAULT_CAP),
            Err(Error::Unsupported(_))
        ));
    }

    // ==== modular-sum construction ====

    #[test]
    fn modsum_5_2_1_spot_record_and_verify() {
        let cb = construct_modsum_fclc(5, 2, 1, DEFAULT_CAP).unwrap();
        assert_eq!(cb.r(), 1);
        let rec = record_for(&cb, &v(5, &[2, 3]));
        assert_eq!(rec.label, 0);
        assert_eq!(rec.codeword, v(5, &[2, 3, 0]));
        assert_valid(&cb, 1);
    }

    #[test]
    fn modsum_6_2_2_even_regime() {
        // Even q: r = 2t − 1 = 3.
        let cb = construct_modsum_fclc(6, 2, 2, DEFAULT_CAP).unwrap();
        assert_eq!(cb.r(), 3);
        let rec = record_for(&cb, &v(6, &[1, 5]));
        assert_eq!(rec.label, 0);
        assert_eq!(rec.codeword, v(6, &[1, 5, 0, 0, 0]));
        assert_valid(&cb, 2);
    }

    #[test]
    fn modsum_6_2_1_verifies() {
        let cb = construct_modsum_fclc(6, 2, 1, DEFAULT_CAP).unwrap();
        assert_eq!(cb.r(), 1);
        assert_valid(&cb, 1);
    }

    #[test]
    fn modsum_5_2_2_extended_regime() {
        // t=2 > (q−3)/2 = 1, odd q: r = 2t+1−⌊q/2⌋ = 3.
        let cb = construct_modsum_fclc(5, 2, 2, DEFAULT_CAP).unwrap();
        assert_eq!(cb.r(), 3);
        assert_valid(&cb, 2);
    }

    // ==== locally bounded construction ====

    #[test]
    fn local_weight_blocks_q6() {
        // ⌊wt/2⌋ on Z_6^3 is locally (2,3)-bounded; λ = 3 spreads parities
        // 0, 2, 4 and r = ⌈1/⌊6/6⌋⌉ = 1.
        let f = TargetFunction::weight_distribution(6, 3, 2).unwrap();
        let cb = construct_local_fclc(&f, 1, 3, DEFAULT_CAP).unwrap();
        assert_eq!(cb.r(), 1);
        assert_eq!(
            cb.parity_map().clone(),
            BTreeMap::from([(1, 0), (2, 2), (3, 4)])
        );
        assert_valid(&cb, 1);
    }

    #[test]
    fn local_lee_weight_q12() {
        // Lee weight on Z_12^2 is locally (2,5)-bounded; ⌊12/10⌋ = 1 gives
        // r = 1 with parities 0,2,4,6,8.
        let f = TargetFunction::lee_weight(12, 2).unwrap();
        let cb = construct_local_fclc(&f, 1, 5, DEFAULT_CAP).unwrap();
        assert_eq!(cb.r(), 1);
        assert_eq!(
            cb.parity_map().clone(),
            BTreeMap::from([(1, 0), (2, 2), (3, 4), (4, 6), (5, 8)])
        );
        assert_valid(&cb, 1);
    }

    #[test]
    fn local_constant_function_single_parity() {
        let rows: Vec<(ZqVector, u32)> = (0..10).map(|s| (v(10, &[s]), 0)).collect();
        let f = TargetFunction::from_table(10, 1, &rows, DEFAULT_CAP).unwrap();
        let cb = construct_local_fclc(&f, 7, 1, DEFAULT_CAP).unwrap();
        assert_eq!(cb.r(), 2); // ⌈7/5⌉
        assert_eq!(cb.parity_map().clone(), BTreeMap::from([(1, 0)]));
        assert_valid(&cb, 7);
    }

    #[test]
    fn local_rejects_oversized_lambda() {
        let f = TargetFunction::weight_distribution(6, 3, 2).unwrap();
        assert!(matches!(
            construct_local_fclc(&f, 1, 4, DEFAULT_CAP),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn local_rejects_unbounded_function() {
        // Lee weight on Z_6^2 has radius-2 balls with 5 labels > λ = 3.
        let f = TargetFunction::lee_weight(6, 2).unwrap();
        assert!(matches!(
            construct_local_fclc(&f, 1, 3, DEFAULT_CAP),
            Err(Error::Domain(_))
        ));
    }

    // ==== verification ====

    #[test]
    fn stripped_parity_fails_on_adjacent_weights() {
        // The r=0 codebook is the t=1 codebook with its parity column
        // deleted; the all-zero message and (0,0,1) collide immediately.
        let cb = construct_lee_weight_fclc(5, 3, 0, DEFAULT_CAP).unwrap();
        let outcome = verify_fclc(&cb, 1).unwrap();
        assert!(!outcome.valid);
        let violation = outcome.first_violation.unwrap();
        assert_eq!((violation.index_a, violation.index_b), (0, 1));
        assert_eq!(violation.u_a, vec![0, 0, 0]);
        assert_eq!(violation.u_b, vec![0, 0, 1]);
        assert_eq!(violation.distance, 1);
    }

    #[test]
    fn systematic_prefix_across_constructions() {
        let f = TargetFunction::weight_distribution(6, 3, 2).unwrap();
        let books = [
            construct_lee_weight_fclc(5, 2, 1, DEFAULT_CAP).unwrap(),
            construct_wdist_fclc(6, 3, 1, 2, DEFAULT_CAP).unwrap(),
            construct_modsum_fclc(6, 2, 2, DEFAULT_CAP).unwrap(),
            construct_local_fclc(&f, 1, 3, DEFAULT_CAP).unwrap(),
        ];
        for cb in &books {
            for rec in cb.records() {
                assert_eq!(&rec.codeword.symbols()[..cb.k()], rec.message.symbols());
            }
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn verify_seq_and_par_agree() {
        let valid = construct_modsum_fclc(5, 2, 1, DEFAULT_CAP).unwrap();
        let invalid = construct_lee_weight_fclc(6, 2, 1, DEFAULT_CAP).unwrap();
        for (cb, t) in [(&valid, 1), (&invalid, 1)] {
            let seq = verify_fclc_seq(cb, t).unwrap();
            let par = verify_fclc_par(cb, t).unwrap();
            assert_eq!(seq, par);
        }
    }

    // ==== redundancy formulas ====

    #[test]
    fn redundancy_values() {
        let r = |p: &ConstructionParams| redundancy_of(p).unwrap();
        assert_eq!(r(&ConstructionParams::LeeWeight { q: 5, k: 2, t: 1 }), 1);
        assert_eq!(r(&ConstructionParams::LeeWeight { q: 5, k: 2, t: 2 }), 3);
        assert_eq!(r(&ConstructionParams::LeeWeight { q: 6, k: 2, t: 2 }), 3);
        assert_eq!(r(&ConstructionParams::WeightDistribution { q: 6, k: 3, t: 2, block: 2 }), 2);
        assert_eq!(r(&ConstructionParams::WeightDistribution { q: 5, k: 3, t: 1, block: 7 }), 0);
        assert_eq!(r(&ConstructionParams::ModularSum { q: 6, k: 2, t: 2 }), 3);
        assert_eq!(r(&ConstructionParams::ModularSum { q: 5, k: 2, t: 2 }), 3);
        assert_eq!(r(&ConstructionParams::LocallyBounded { q: 6, k: 2, t: 4, lambda: 3 }), 4);
        assert_eq!(r(&ConstructionParams::LocallyBounded { q: 12, k: 1, t: 1, lambda: 5 }), 1);
    }

    #[test]
    fn redundancy_rejects_inadmissible_regimes() {
        assert!(matches!(
            redundancy_of(&ConstructionParams::LeeWeight { q: 4, k: 2, t: 1 }),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            redundancy_of(&ConstructionParams::WeightDistribution { q: 5, k: 2, t: 1, block: 3 }),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            redundancy_of(&ConstructionParams::WeightDistribution { q: 5, k: 2, t: 6, block: 5 }),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            redundancy_of(&ConstructionParams::LocallyBounded { q: 6, k: 1, t: 1, lambda: 4 }),
            Err(Error::Unsupported(_))
        ));
    }

    // ==== parity-map distance laws ====

    #[test]
    fn doubling_map_odd_q_steps_by_two() {
        for q in [5u32, 7, 9, 11] {
            for w in 0..4 * u64::from(q) {
                let d = lee::lee_symbol_weight(
                    (doubling_parity(q, w + 1) + q - doubling_parity(q, w)) % q,
                    q,
                )
                .unwrap();
                assert_eq!(d, 2, "q={q}, w={w}");
            }
        }
    }

    #[test]
    fn doubling_map_even_q_seam_profile() {
        // Even q walks in steps of 2 except at the half-period (distance 3)
        // and the period seam (distance 1) — the blind spot documented on
        // the module.
        for q in [6u32, 8, 10, 12] {
            for w in 0..4 * u64::from(q) {
                let d = lee::lee_symbol_weight(
                    (doubling_parity(q, w + 1) + q - doubling_parity(q, w)) % q,
                    q,
                )
                .unwrap();
                let expected = match (w % u64::from(q)) as u32 {
                    x if x == q / 2 - 1 => 3,
                    x if x == q - 1 => 1,
                    _ => 2,
                };
                assert_eq!(d, expected, "q={q}, w={w}");
            }
        }
    }

    #[test]
    fn doubling_map_repeats_only_after_full_periods() {
        for q in 5u32..=12 {
            let period = u64::from(q);
            for w in 0..4 * period {
                for w2 in (w + 1)..=4 * period {
                    if doubling_parity(q, w) == doubling_parity(q, w2) {
                        assert_eq!((w2 - w) % period, 0, "q={q}, w={w}, w2={w2}");
                    }
                }
            }
        }
    }

    #[test]
    fn modsum_map_keeps_parity_neighbors_apart() {
        // Labels whose parities are adjacent in Lee distance differ by at
        // least 2 as sums — the property that rescues even alphabets.
        for q in [6u32, 8, 10] {
            let map = parity_map_modsum(q).unwrap();
            for a in 0..q {
                for b in (a + 1)..q {
                    let pd = lee::lee_symbol_weight((map[&a] + q - map[&b]) % q, q).unwrap();
                    if pd == 1 {
                        let ld = lee::lee_symbol_weight((a + q - b) % q, q).unwrap();
                        assert!(ld >= 2, "q={q}: labels {a},{b} at parity distance 1");
                    }
                }
            }
        }
    }

    #[test]
    fn modsum_map_message_level_separation_q6() {
        // Message-level version of the same law, exhaustive over Z_6^2.
        let cb = construct_modsum_fclc(6, 2, 1, DEFAULT_CAP).unwrap();
        let map = cb.parity_map().clone();
        for a in cb.records() {
            for b in cb.records() {
                if a.label == b.label {
                    continue;
                }
                let pd =
                    lee::lee_symbol_weight((map[&a.label] + 6 - map[&b.label]) % 6, 6).unwrap();
                if pd == 1 {
                    assert!(lee::lee_distance(&a.message, &b.message).unwrap() >= 2);
                }
            }
        }
    }

    #[test]
    fn local_parities_spread_by_color_gap() {
        // Different-label messages within Lee distance 2t must draw
        // parities at distance ≥ 2⌊q/(2λ)⌋.
        let f = TargetFunction::weight_distribution(6, 3, 2).unwrap();
        let cb = construct_local_fclc(&f, 1, 3, DEFAULT_CAP).unwrap();
        let floor = 2 * (6 / (2 * 3));
        for a in cb.records() {
            for b in cb.records() {
                if a.label == b.label {
                    continue;
                }
                if lee::lee_distance(&a.message, &b.message).unwrap() <= 2 {
                    let pa = a.codeword.symbols()[cb.k()];
                    let pb = b.codeword.symbols()[cb.k()];
                    let pd = lee::lee_symbol_weight((pa + 6 - pb) % 6, 6).unwrap();
                    assert!(pd >= floor, "{} vs {}", a.message, b.message);
                }
            }
        }
    }

    // ==== serialization ====

    #[test]
    fn json_round_trip() {
        let cb = construct_modsum_fclc(5, 2, 1, DEFAULT_CAP).unwrap();
        let text = cb.to_json();
        let back = Codebook::from_json(&text).unwrap();
        assert_eq!(cb, back);
    }

    #[test]
    fn json_field_order_is_fixed() {
        let cb = construct_modsum_fclc(5, 1, 1, DEFAULT_CAP).unwrap();
        let text = cb.to_json();
        let positions: Vec<usize> = ["\"q\"", "\"k\"", "\"t\"", "\"r\"", "\"construction\"", "\"parity_map\"", "\"records\""]
            .iter()
            .map(|key| text.find(key).unwrap_or_else(|| panic!("missing {key}")))
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "field order drifted: {text}");
        assert!(text.contains("\"construction\":\"modsum\""));
        assert!(text.contains("\"u\":[0],\"f\":0,\"c\":[0,0]"));
    }

    #[test]
    fn csv_layout() {
        let cb = construct_modsum_fclc(5, 2, 1, DEFAULT_CAP).unwrap();
        let text = cb.to_csv();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("u;f;c"));
        assert_eq!(lines.next(), Some("0,0;0;0,0,0"));
        assert_eq!(text.lines().count(), 26);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn from_json_rejects_malformed_records() {
        let cb = construct_modsum_fclc(5, 1, 1, DEFAULT_CAP).unwrap();
        let good = cb.to_json();
        let bad_symbol = good.replace("\"c\":[0,0]", "\"c\":[0,9]");
        assert!(Codebook::from_json(&bad_symbol).is_err());
        let bad_shape = good.replace("\"c\":[0,0]", "\"c\":[0]");
        assert!(Codebook::from_json(&bad_shape).is_err());
    }

    #[test]
    fn construction_tags_round_trip() {
        for tag in [
            ConstructionTag::LeeWeight,
            ConstructionTag::WeightDistribution,
            ConstructionTag::ModularSum,
            ConstructionTag::LocallyBounded,
        ] {
            assert_eq!(tag.to_string().parse::<ConstructionTag>().unwrap(), tag);
        }
        assert!("nope".parse::<ConstructionTag>().is_err());
    }
}
