//! Lee-channel simulation and minimum-distance function decoding.
//!
//! The channel is discrete, memoryless, and symmetric in the Lee sense: a
//! transmitted symbol is shifted by `±i` with a probability `p_i` that
//! depends only on the magnitude `i ≤ M = ⌊q/2⌋` of the shift
//! ([`LeeChannelModel`]). Sampling is reproducible: every draw comes from a
//! ChaCha8 stream derived from `(seed, stream index)`, so results are
//! independent of thread scheduling.
//!
//! Decoding ([`decode_function`]) is full-codebook nearest-neighbor under
//! the Lee metric — the codebooks are nonlinear, so no syndrome shortcut
//! exists — with ties broken toward the lexicographically smallest
//! codeword. [`exhaustive_decode_check`] replays every codeword against
//! every error of weight at most `t` and confirms the decoded label,
//! and [`simulate`] estimates the label-error rate under a probabilistic
//! channel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::Codebook;
use crate::error::{Error, Result};
use crate::lee::{self, ZqVector};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Name recorded in reports for the generator behind all sampling.
pub const RNG_NAME: &str = "chacha8";

/// Absolute slack allowed when checking that the shift probabilities sum
/// to one.
const PROBABILITY_TOLERANCE: f64 = 1e-9;

// ============================================================
// Channel model
// ============================================================

/// A memoryless Lee channel over `Z_q`.
///
/// `p[i]` is the probability of shifting a symbol by `+i` (and, for
/// `0 < i < M`, also by `−i`); `M = ⌊q/2⌋`. For even `q` the antipodal
/// shift `M` is a single symbol and is counted once; for odd `q` both
/// `±M` occur with probability `p[M]`. The probabilities must satisfy
///
/// * odd `q`:  `p_0 + 2·Σ_{i=1}^{M} p_i = 1`
/// * even `q`: `p_0 + 2·Σ_{i=1}^{M−1} p_i + p_M = 1`
///
/// A `p` shorter than `M + 1` entries is padded with zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct LeeChannelModel {
    q: u32,
    p: Vec<f64>,
    seed: u64,
}

impl LeeChannelModel {
    /// Validates and builds a channel model, padding `p` to `M + 1`
    /// entries.
    pub fn new(q: u32, p: &[f64], seed: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!("channel alphabet q={q} must be at least 2")));
        }
        let m = (q / 2) as usize;
        if p.is_empty() {
            return Err(Error::Domain("probability vector must not be empty".into()));
        }
        if p.len() > m + 1 {
            return Err(Error::Domain(format!(
                "probability vector has {} entries but q={q} admits shifts 0..={m}",
                p.len()
            )));
        }
        let mut padded = p.to_vec();
        padded.resize(m + 1, 0.0);
        if let Some(bad) = padded.iter().find(|&&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::Domain(format!("shift probability {bad} is outside [0, 1]")));
        }
        let mut total = padded[0];
        for (i, &pi) in padded.iter().enumerate().skip(1) {
            let antipodal_once = q % 2 == 0 && i == m;
            total += if antipodal_once { pi } else { 2.0 * pi };
        }
        if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(Error::Domain(format!(
                "shift probabilities must total 1, got {total}"
            )));
        }
        Ok(LeeChannelModel { q, p: padded, seed })
    }

    /// Alphabet size.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Shift probabilities, padded to `M + 1` entries.
    pub fn p(&self) -> &[f64] {
        &self.p
    }

    /// Base RNG seed.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Serializes as `{"q":…,"p":[…],"seed":…}`.
    pub fn to_json(&self) -> String {
        let shadow = ModelJson { q: self.q, p: self.p.clone(), seed: self.seed };
        serde_json::to_string(&shadow).expect("channel model serialization cannot fail")
    }

    /// Parses and validates a model from the [`LeeChannelModel::to_json`]
    /// layout.
    pub fn from_json(text: &str) -> Result<Self> {
        let shadow: ModelJson = serde_json::from_str(text)?;
        LeeChannelModel::new(shadow.q, &shadow.p, shadow.seed)
    }

    /// The shift categories in draw order: `0, +1, −1, +2, −2, …`, with
    /// the antipodal shift listed once for even `q`.
    fn categories(&self) -> Vec<(u32, f64)> {
        let m = self.q / 2;
        let mut cats = vec![(0u32, self.p[0])];
        for i in 1..=m {
            let pi = self.p[i as usize];
            cats.push((i, pi));
            if !(self.q % 2 == 0 && i == m) {
                cats.push((self.q - i, pi));
            }
        }
        cats
    }
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    q: u32,
    p: Vec<f64>,
    seed: u64,
}

// ============================================================
// Error generation
// ============================================================

/// All error vectors of length `n` and Lee weight at most `t`, in
/// lexicographic order. The count always equals
/// [`lee::lee_sphere_volume`]`(n, t, q, cap)`.
pub fn enumerate_errors(n: usize, t: u64, q: u32, cap: u64) -> Result<Vec<ZqVector>> {
    lee::lee_ball(n, t, q, cap)
}

/// Passes `c` through the channel on stream 0; see
/// [`sample_channel_stream`].
pub fn sample_channel(c: &ZqVector, model: &LeeChannelModel) -> Result<ZqVector> {
    sample_channel_stream(c, model, 0)
}

/// Passes `c` through the channel, shifting each coordinate independently
/// with the model's probabilities. Draws come from a ChaCha8 generator
/// seeded with the model seed on the given stream, so equal
/// `(c, model, stream)` triples always produce the same output.
pub fn sample_channel_stream(
    c: &ZqVector,
    model: &LeeChannelModel,
    stream: u64,
) -> Result<ZqVector> {
    if c.q() != model.q {
        return Err(Error::Shape(format!(
            "vector {c} does not live over the channel alphabet Z_{}",
            model.q
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    rng.set_stream(stream);
    Ok(apply_noise(c, model, &mut rng))
}

/// One channel use of `c` drawing from `rng`.
fn apply_noise(c: &ZqVector, model: &LeeChannelModel, rng: &mut ChaCha8Rng) -> ZqVector {
    let q = model.q;
    let cats = model.categories();
    let symbols = c
        .symbols()
        .iter()
        .map(|&s| {
            // Inverse-CDF walk; residual mass from float rounding (at most
            // the validation tolerance) falls back to "no shift".
            let mut x: f64 = rng.gen();
            let mut shift = 0;
            for &(delta, prob) in &cats {
                if x < prob {
                    shift = delta;
                    break;
                }
                x -= prob;
            }
            (s + shift) % q
        })
        .collect();
    ZqVector::new(q, symbols).expect("shifted symbols stay within Z_q")
}

// ============================================================
// Decoding
// ============================================================

/// Minimum-distance function decoding: returns the label of a codeword
/// nearest to `y` in Lee distance, breaking ties toward the
/// lexicographically smallest codeword.
///
/// Whenever `y` is within Lee distance `t` of a codeword of a codebook
/// that passes verification at `t`, the decoded label is that codeword's
/// label (codewords with equal labels may tie benignly).
pub fn decode_function(cb: &Codebook, y: &ZqVector) -> Result<u32> {
    if cb.is_empty() {
        return Err(Error::Domain("cannot decode against an empty codebook".into()));
    }
    let n = cb.k() + cb.r() as usize;
    if y.q() != cb.q() || y.len() != n {
        return Err(Error::Shape(format!(
            "received vector {y} does not live in Z_{}^{n}",
            cb.q()
        )));
    }
    let mut best: Option<(u64, &ZqVector, u32)> = None;
    for rec in cb.records() {
        let d = lee::lee_distance(&rec.codeword, y)?;
        let better = match best {
            None => true,
            Some((bd, bc, _)) => d < bd || (d == bd && rec.codeword.symbols() < bc.symbols()),
        };
        if better {
            best = Some((d, &rec.codeword, rec.label));
        }
    }
    Ok(best.expect("codebook is non-empty").2)
}

// ============================================================
// Exhaustive checking
// ============================================================

/// A decoding failure found by [`exhaustive_decode_check`]: the smallest
/// `(message index, error index)` pair whose received word decodes to the
/// wrong label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeFailure {
    /// Record index of the transmitted codeword.
    pub message_index: usize,
    /// Index of the error vector in lexicographic ball order.
    pub error_index: usize,
    /// The transmitted message.
    pub message: Vec<u32>,
    /// The applied error vector.
    pub error: Vec<u32>,
    /// The received word `Enc(u) + e`.
    pub received: Vec<u32>,
    /// The label the decoder should have produced.
    pub expected_label: u32,
    /// The label the decoder produced.
    pub decoded_label: u32,
}

/// Outcome of [`exhaustive_decode_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeCheckOutcome {
    /// Whether every (codeword, error) case decoded to the right label.
    pub ok: bool,
    /// Number of cases checked (records × ball volume).
    pub cases: u64,
    /// The first failing case when `ok` is false.
    pub first_failure: Option<DecodeFailure>,
}

/// Replays every codeword under every error of Lee weight at most `t` and
/// checks that [`decode_function`] recovers the original label. Reports
/// the first failure by `(message index, error index)`.
///
/// The case count `records × V_t(k+r)` must stay within `cap`.
pub fn exhaustive_decode_check(cb: &Codebook, t: u64, cap: u64) -> Result<DecodeCheckOutcome> {
    #[cfg(feature = "parallel")]
    {
        exhaustive_decode_check_par(cb, t, cap)
    }
    #[cfg(not(feature = "parallel"))]
    {
        exhaustive_decode_check_seq(cb, t, cap)
    }
}

/// Sequential variant of [`exhaustive_decode_check`].
pub fn exhaustive_decode_check_seq(cb: &Codebook, t: u64, cap: u64) -> Result<DecodeCheckOutcome> {
    let (errors, cases) = decode_check_setup(cb, t, cap)?;
    let first = (0..cb.len()).find_map(|i| first_failure_for(cb, &errors, i));
    Ok(DecodeCheckOutcome { ok: first.is_none(), cases, first_failure: first })
}

/// Parallel variant of [`exhaustive_decode_check`]; messages are scanned
/// in parallel with a deterministic first-failure reduction.
#[cfg(feature = "parallel")]
pub fn exhaustive_decode_check_par(cb: &Codebook, t: u64, cap: u64) -> Result<DecodeCheckOutcome> {
    let (errors, cases) = decode_check_setup(cb, t, cap)?;
    let first = (0..cb.len())
        .into_par_iter()
        .find_map_first(|i| first_failure_for(cb, &errors, i));
    Ok(DecodeCheckOutcome { ok: first.is_none(), cases, first_failure: first })
}

fn decode_check_setup(cb: &Codebook, t: u64, cap: u64) -> Result<(Vec<ZqVector>, u64)> {
    let n = cb.k() + cb.r() as usize;
    let errors = lee::lee_ball(n, t, cb.q(), cap)?;
    let cases = (cb.len() as u64).checked_mul(errors.len() as u64).filter(|&c| c <= cap);
    let Some(cases) = cases else {
        return Err(Error::CapExceeded(format!(
            "{} records × {} errors exceeds cap {cap}",
            cb.len(),
            errors.len()
        )));
    };
    Ok((errors, cases))
}

/// First failing error index for message `i`, scanning the ball in order.
fn first_failure_for(cb: &Codebook, errors: &[ZqVector], i: usize) -> Option<DecodeFailure> {
    let rec = &cb.records()[i];
    for (e_idx, e) in errors.iter().enumerate() {
        let received = rec.codeword.add(e).expect("error vector matches codeword shape");
        let decoded = decode_function(cb, &received).expect("received word has codeword shape");
        if decoded != rec.label {
            return Some(DecodeFailure {
                message_index: i,
                error_index: e_idx,
                message: rec.message.symbols().to_vec(),
                error: e.symbols().to_vec(),
                received: received.symbols().to_vec(),
                expected_label: rec.label,
                decoded_label: decoded,
            });
        }
    }
    None
}

// ============================================================
// Monte Carlo simulation
// ============================================================

/// Result of [`simulate`]: label-error statistics for a codebook under a
/// probabilistic Lee channel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    /// Alphabet size.
    pub q: u32,
    /// Message length.
    pub k: usize,
    /// Error budget the codebook was built for.
    pub t: u64,
    /// Parity length.
    pub r: u64,
    /// Construction tag, as its canonical string.
    pub construction: String,
    /// Number of Monte Carlo trials.
    pub trials: u64,
    /// Trials whose decoded label differed from the true label.
    pub failures: u64,
    /// `failures / trials`.
    pub error_rate: f64,
    /// 95% normal-approximation half-width `1.96·√(p̂(1−p̂)/N)`.
    pub half_width: f64,
    /// Base seed used.
    pub seed: u64,
    /// Name of the generator ([`RNG_NAME`]).
    pub rng: String,
}

/// Estimates the label-error rate of `cb` under `model` by Monte Carlo:
/// each trial draws a uniform message, transmits its codeword, and checks
/// the decoded label. Trial `j` draws from ChaCha8 stream `j`, so the
/// report is independent of thread count and schedule.
pub fn simulate(cb: &Codebook, model: &LeeChannelModel, trials: u64) -> Result<SimulationReport> {
    if cb.is_empty() {
        return Err(Error::Domain("cannot simulate an empty codebook".into()));
    }
    if cb.q() != model.q() {
        return Err(Error::Shape(format!(
            "codebook alphabet q={} does not match channel q={}",
            cb.q(),
            model.q()
        )));
    }
    let one_trial = |j: u64| -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(model.seed());
        rng.set_stream(j);
        let rec = &cb.records()[rng.gen_range(0..cb.len())];
        let received = apply_noise(&rec.codeword, model, &mut rng);
        let decoded = decode_function(cb, &received).expect("received word has codeword shape");
        u64::from(decoded != rec.label)
    };
    let failures = {
        #[cfg(feature = "parallel")]
        {
            (0..trials).into_par_iter().map(one_trial).sum::<u64>()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..trials).map(one_trial).sum::<u64>()
        }
    };
    let error_rate = if trials == 0 { 0.0 } else { failures as f64 / trials as f64 };
    let half_width = if trials == 0 {
        0.0
    } else {
        1.96 * (error_rate * (1.0 - error_rate) / trials as f64).sqrt()
    };
    Ok(SimulationReport {
        q: cb.q(),
        k: cb.k(),
        t: cb.t(),
        r: cb.r(),
        construction: cb.construction().to_string(),
        trials,
        failures,
        error_rate,
        half_width,
        seed: model.seed(),
        rng: RNG_NAME.into(),
    })
}

// ============================================================
// Tests
// ============================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        construct_lee_weight_fclc, construct_modsum_fclc, verify_fclc, Codebook,
    };
    use crate::DEFAULT_CAP;

    fn v(q: u32, s: &[u32]) -> ZqVector {
        ZqVector::new(q, s.to_vec()).unwrap()
    }

    // ==== channel model ====

    #[test]
    fn model_pads_and_validates() {
        let m = LeeChannelModel::new(5, &[0.8, 0.1], 7).unwrap();
        assert_eq!(m.p(), &[0.8, 0.1, 0.0]);
        assert!(matches!(
            LeeChannelModel::new(5, &[0.8, 0.2], 7),
            Err(Error::Domain(_)) // totals 1.2 under the odd-q convention
        ));
        assert!(matches!(LeeChannelModel::new(5, &[1.2], 7), Err(Error::Domain(_))));
        assert!(matches!(
            LeeChannelModel::new(5, &[0.4, 0.1, 0.1, 0.1], 7),
            Err(Error::Domain(_)) // M+1 = 3 entries at most
        ));
    }

    #[test]
    fn even_q_counts_antipodal_once() {
        // q=4: p_0 + 2p_1 + p_2 = 0.7 + 0.2 + 0.1 = 1.
        assert!(LeeChannelModel::new(4, &[0.7, 0.1, 0.1], 7).is_ok());
        // The odd-q reading would need 0.7 + 2(0.1 + 0.1) = 1.1.
        assert!(LeeChannelModel::new(5, &[0.7, 0.1, 0.1], 7).is_err());
    }

    #[test]
    fn model_json_round_trip() {
        let m = LeeChannelModel::new(6, &[0.9, 0.05], 3).unwrap();
        let text = m.to_json();
        assert!(text.starts_with("{\"q\":6,\"p\":[0.9,0.05,0.0,0.0],\"seed\":3}"));
        assert_eq!(LeeChannelModel::from_json(&text).unwrap(), m);
    }

    // ==== sampling ====

    #[test]
    fn noiseless_channel_is_identity() {
        let m = LeeChannelModel::new(5, &[1.0], 1).unwrap();
        let c = v(5, &[0, 1, 2, 3, 4]);
        assert_eq!(sample_channel(&c, &m).unwrap(), c);
    }

    #[test]
    fn sampling_is_deterministic_per_stream() {
        let m = LeeChannelModel::new(5, &[0.5, 0.25], 42).unwrap();
        let c = ZqVector::zero(5, 64).unwrap();
        let a = sample_channel_stream(&c, &m, 3).unwrap();
        let b = sample_channel_stream(&c, &m, 3).unwrap();
        assert_eq!(a, b);
        let other = sample_channel_stream(&c, &m, 4).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn empirical_shift_frequency_q5() {
        // Pr(shift ±1) = 0.2 in total; expect 0.2 ± 0.01 over 10^5 symbols.
        let m = LeeChannelModel::new(5, &[0.8, 0.1], 2024).unwrap();
        let c = ZqVector::zero(5, 100_000).unwrap();
        let y = sample_channel(&c, &m).unwrap();
        let shifted = y.symbols().iter().filter(|&&s| s == 1 || s == 4).count();
        let freq = shifted as f64 / 100_000.0;
        assert!((freq - 0.2).abs() < 0.01, "±1 frequency {freq}");
        assert!(y.symbols().iter().all(|&s| s == 0 || s == 1 || s == 4));
    }

    #[test]
    fn empirical_antipodal_frequency_q4() {
        // Even q: the shift by 2 is a single symbol with probability 0.1.
        let m = LeeChannelModel::new(4, &[0.7, 0.1, 0.1], 99).unwrap();
        let c = ZqVector::zero(4, 100_000).unwrap();
        let y = sample_channel(&c, &m).unwrap();
        let antipodal = y.symbols().iter().filter(|&&s| s == 2).count();
        let freq = antipodal as f64 / 100_000.0;
        assert!((freq - 0.1).abs() < 0.01, "shift-2 frequency {freq}");
    }

    #[test]
    fn sample_rejects_mismatched_alphabet() {
        let m = LeeChannelModel::new(5, &[1.0], 0).unwrap();
        assert!(matches!(sample_channel(&v(6, &[0]), &m), Err(Error::Shape(_))));
    }

    // ==== error enumeration ====

    #[test]
    fn error_counts_match_sphere_volumes() {
        assert_eq!(enumerate_errors(2, 1, 5, DEFAULT_CAP).unwrap().len(), 5);
        assert_eq!(enumerate_errors(3, 1, 5, DEFAULT_CAP).unwrap().len(), 7);
        let only_zero = enumerate_errors(1, 0, 7, DEFAULT_CAP).unwrap();
        assert_eq!(only_zero, vec![ZqVector::zero(7, 1).unwrap()]);
        for (n, t, q) in [(2usize, 2u64, 5u32), (3, 2, 6), (2, 3, 7)] {
            let listed = enumerate_errors(n, t, q, DEFAULT_CAP).unwrap().len();
            let volume = lee::lee_sphere_volume(n, t, q, DEFAULT_CAP).unwrap();
            assert_eq!(volume.to_string(), listed.to_string(), "n={n}, t={t}, q={q}");
        }
    }

    // ==== decoding ====

    #[test]
    fn decode_recovers_labels_through_one_error() {
        let cb = construct_lee_weight_fclc(5, 3, 1, DEFAULT_CAP).unwrap();
        // Enc((0,0,1)) = (0,0,1,2) plus one Lee error in the third place.
        assert_eq!(decode_function(&cb, &v(5, &[0, 0, 2, 2])).unwrap(), 1);
        let table2 = construct_modsum_fclc(5, 2, 1, DEFAULT_CAP).unwrap();
        // Enc((2,3)) = (2,3,0) plus one error in the second place.
        assert_eq!(decode_function(&table2, &v(5, &[2, 4, 0])).unwrap(), 0);
    }

    #[test]
    fn decode_returns_exact_codeword_labels() {
        let cb = construct_modsum_fclc(5, 2, 1, DEFAULT_CAP).unwrap();
        for rec in cb.records() {
            assert_eq!(decode_function(&cb, &rec.codeword).unwrap(), rec.label);
        }
    }

    #[test]
    fn decode_breaks_ties_toward_lex_smallest() {
        // Two codewords both at distance 1 from y: the tie goes to (0,0).
        let cb = Codebook::from_json(
            "{\"q\":5,\"k\":1,\"t\":1,\"r\":1,\"construction\":\"modsum\",\
             \"parity_map\":{},\"records\":[\
             {\"u\":[1],\"f\":1,\"c\":[1,1]},\
             {\"u\":[0],\"f\":0,\"c\":[0,0]}]}",
        )
        .unwrap();
        assert_eq!(decode_function(&cb, &v(5, &[0, 1])).unwrap(), 0);
        assert_eq!(decode_function(&cb, &v(5, &[1, 0])).unwrap(), 0);
    }

    #[test]
    fn decode_rejects_empty_and_misshapen_input() {
        let empty = Codebook::from_json(
            "{\"q\":5,\"k\":1,\"t\":1,\"r\":0,\"construction\":\"modsum\",\
             \"parity_map\":{},\"records\":[]}",
        )
        .unwrap();
        assert!(matches!(decode_function(&empty, &v(5, &[0])), Err(Error::Domain(_))));
        let cb = construct_modsum_fclc(5, 2, 1, DEFAULT_CAP).unwrap();
        assert!(matches!(decode_function(&cb, &v(5, &[0, 0])), Err(Error::Shape(_))));
    }

    // ==== exhaustive checks ====

    #[test]
    fn exhaustive_check_passes_at_declared_budget() {
        let table1 = construct_lee_weight_fclc(5, 3, 1, DEFAULT_CAP).unwrap();
        let outcome = exhaustive_decode_check(&table1, 1, DEFAULT_CAP).unwrap();
        assert!(outcome.ok);
        assert_eq!(outcome.cases, 125 * 9);

        let table3 = construct_modsum_fclc(6, 2, 2, DEFAULT_CAP).unwrap();
        let outcome = exhaustive_decode_check(&table3, 2, DEFAULT_CAP).unwrap();
        assert!(outcome.ok);
        assert_eq!(outcome.cases, 36 * 61);
    }

    #[test]
    fn exhaustive_check_fails_beyond_budget() {
        let table1 = construct_lee_weight_fclc(5, 3, 1, DEFAULT_CAP).unwrap();
        let outcome = exhaustive_decode_check(&table1, 2, DEFAULT_CAP).unwrap();
        assert!(!outcome.ok);
        let failure = outcome.first_failure.unwrap();
        assert_eq!(failure.message_index, 0);
        assert_eq!(failure.message, vec![0, 0, 0]);
        assert_ne!(failure.decoded_label, failure.expected_label);
    }

    #[test]
    fn verified_codebooks_decode_exhaustively() {
        // ≥ 2t+1 separation implies nearest-codeword decoding within t.
        let books = [
            construct_lee_weight_fclc(5, 2, 1, DEFAULT_CAP).unwrap(),
            construct_modsum_fclc(5, 2, 2, DEFAULT_CAP).unwrap(),
            construct_modsum_fclc(6, 2, 1, DEFAULT_CAP).unwrap(),
        ];
        for cb in &books {
            let t = cb.t();
            assert!(verify_fclc(cb, t).unwrap().valid);
            assert!(exhaustive_decode_check(cb, t, DEFAULT_CAP).unwrap().ok);
        }
    }

    #[test]
    fn exhaustive_check_respects_cap() {
        let cb = construct_lee_weight_fclc(5, 3, 1, DEFAULT_CAP).unwrap();
        assert!(matches!(
            exhaustive_decode_check(&cb, 1, 1000),
            Err(Error::CapExceeded(_))
        ));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn exhaustive_check_seq_and_par_agree() {
        let good = construct_modsum_fclc(5, 2, 1, DEFAULT_CAP).unwrap();
        let bad = construct_lee_weight_fclc(5, 3, 1, DEFAULT_CAP).unwrap();
        for (cb, t) in [(&good, 1), (&bad, 2)] {
            let seq = exhaustive_decode_check_seq(cb, t, DEFAULT_CAP).unwrap();
            let par = exhaustive_decode_check_par(cb, t, DEFAULT_CAP).unwrap();
            assert_eq!(seq, par);
        }
    }

    // ==== simulation ====

    #[test]
    fn simulate_noiseless_never_fails() {
        let cb = construct_modsum_fclc(5, 2, 1, DEFAULT_CAP).unwrap();
        let m = LeeChannelModel::new(5, &[1.0], 11).unwrap();
        let report = simulate(&cb, &m, 500).unwrap();
        assert_eq!(report.failures, 0);
        assert_eq!(report.error_rate, 0.0);
        assert_eq!(report.rng, "chacha8");
    }

    #[test]
    fn simulate_is_reproducible() {
        let cb = construct_modsum_fclc(5, 2, 1, DEFAULT_CAP).unwrap();
        let m = LeeChannelModel::new(5, &[0.9, 0.05], 2024).unwrap();
        let a = simulate(&cb, &m, 2000).unwrap();
        let b = simulate(&cb, &m, 2000).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trials, 2000);
        assert_eq!(a.error_rate, a.failures as f64 / 2000.0);
        let expected_hw = 1.96 * (a.error_rate * (1.0 - a.error_rate) / 2000.0).sqrt();
        assert_eq!(a.half_width, expected_hw);
        // Double errors occur at ≈ 2.8%; the single-error budget catches
        // the rest, so the failure rate stays visibly below that.
        assert!(a.error_rate < 0.1, "error rate {}", a.error_rate);
    }

    #[test]
    fn simulation_report_field_order() {
        let cb = construct_modsum_fclc(5, 2, 1, DEFAULT_CAP).unwrap();
        let m = LeeChannelModel::new(5, &[1.0], 0).unwrap();
        let report = simulate(&cb, &m, 10).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let keys = [
            "\"q\"", "\"k\"", "\"t\"", "\"r\"", "\"construction\"", "\"trials\"",
            "\"failures\"", "\"error_rate\"", "\"half_width\"", "\"seed\"", "\"rng\"",
        ];
        let positions: Vec<usize> =
            keys.iter().map(|k| text.find(k).unwrap_or_else(|| panic!("missing {k}"))).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "field order drifted: {text}");
    }
}
