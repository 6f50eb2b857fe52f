//! Target functions on `Z_q^k`.
//!
//! A target function assigns each message a small-integer label; codes built
//! later only have to separate messages with *different* labels, which is
//! what makes their redundancy beat classical error correction. Four
//! families are built in:
//!
//! * **Lee weight** — `f(u) = wt_L(u)`, labels `0 ..= k⌊q/2⌋`.
//! * **Weight distribution** — `Δ_T(u) = ⌊wt_L(u)/T⌋` for a block size `T`
//!   dividing `k⌊q/2⌋ + 1`; labels `0 ..= E−1` with `E = (k⌊q/2⌋+1)/T`.
//! * **Modular sum** — `f(u) = Σ u_i mod q`.
//! * **Projection** — `f(u) = u_c` for a fixed coordinate `c`.
//!
//! Arbitrary functions can be supplied as lookup tables. Beyond evaluation,
//! this module computes images, *function balls* (the labels reachable
//! within a given Lee radius of a message), the locality bound `λ` derived
//! from ball sizes, and a conflict coloring used by the locally-bounded
//! construction.

use std::collections::BTreeSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::lee::{self, ZqVector};
use crate::{Error, Result};

// ============================================================
// Construction and evaluation
// ============================================================

/// The shape of a target function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionKind {
    /// `f(u) = wt_L(u)`.
    LeeWeight,
    /// `f(u) = ⌊wt_L(u) / block⌋`.
    WeightDistribution {
        /// Block size `T ≥ 1`; must divide `k⌊q/2⌋ + 1`.
        block: u32,
    },
    /// `f(u) = Σ_i u_i mod q`.
    ModularSum,
    /// `f(u) = u_coord` (1-based coordinate).
    Projection {
        /// Coordinate index in `1 ..= k`.
        coord: usize,
    },
    /// Arbitrary total function given by a table indexed by the
    /// lexicographic rank of `u`; labels are canonical `0 ..= E−1`.
    Table {
        /// `labels[rank(u)] = f(u)`.
        labels: Vec<u32>,
    },
}

/// A total function `f : Z_q^k → {0, 1, …}` with canonical integer labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetFunction {
    q: u32,
    k: usize,
    kind: FunctionKind,
}

impl TargetFunction {
    /// The Lee-weight function on `Z_q^k`.
    pub fn lee_weight(q: u32, k: usize) -> Result<Self> {
        check_domain(q, k)?;
        Ok(TargetFunction { q, k, kind: FunctionKind::LeeWeight })
    }

    /// The weight-distribution function with block size `block`.
    ///
    /// `block` must be at least 1 and divide `k⌊q/2⌋ + 1`, so the weight
    /// range splits into `E` equal blocks.
    pub fn weight_distribution(q: u32, k: usize, block: u32) -> Result<Self> {
        check_domain(q, k)?;
        if block == 0 {
            return Err(Error::Unsupported("block size T must be at least 1".into()));
        }
        let span = max_weight(q, k) + 1;
        if span % u64::from(block) != 0 {
            return Err(Error::Unsupported(format!(
                "block size T={block} does not divide k⌊q/2⌋+1 = {span}"
            )));
        }
        Ok(TargetFunction { q, k, kind: FunctionKind::WeightDistribution { block } })
    }

    /// The modular-sum function `u ↦ Σ u_i mod q`.
    pub fn modular_sum(q: u32, k: usize) -> Result<Self> {
        check_domain(q, k)?;
        Ok(TargetFunction { q, k, kind: FunctionKind::ModularSum })
    }

    /// Projection onto the (1-based) coordinate `coord`.
    pub fn projection(q: u32, k: usize, coord: usize) -> Result<Self> {
        check_domain(q, k)?;
        if coord == 0 || coord > k {
            return Err(Error::Domain(format!(
                "projection coordinate {coord} out of range 1..={k}"
            )));
        }
        Ok(TargetFunction { q, k, kind: FunctionKind::Projection { coord } })
    }

    /// Builds a table function from `(message, label)` pairs covering all of
    /// `Z_q^k` exactly once. User labels are re-indexed to canonical
    /// `0 ..= E−1` in ascending order of the supplied integers.
    pub fn from_table(q: u32, k: usize, rows: &[(ZqVector, u32)], cap: u64) -> Result<Self> {
        check_domain(q, k)?;
        let size = lee::checked_pow(q, k).filter(|&s| s <= u128::from(cap));
        let Some(size) = size else {
            return Err(Error::CapExceeded(format!(
                "table function over Z_{q}^{k} exceeds cap {cap} entries"
            )));
        };
        let size = size as usize;
        if rows.len() != size {
            return Err(Error::Domain(format!(
                "table has {} rows but Z_{q}^{k} has {size} messages",
                rows.len()
            )));
        }
        let distinct: BTreeSet<u32> = rows.iter().map(|(_, l)| *l).collect();
        let reindex: Vec<u32> = distinct.into_iter().collect();
        let mut labels = vec![u32::MAX; size];
        for (u, raw) in rows {
            if u.q() != q || u.len() != k {
                return Err(Error::Shape(format!(
                    "table row {u} does not live in Z_{q}^{k}"
                )));
            }
            let rank = lee::lex_rank(u);
            if labels[rank] != u32::MAX {
                return Err(Error::Domain(format!("table lists message {u} twice")));
            }
            labels[rank] = reindex.binary_search(raw).unwrap() as u32;
        }
        Ok(TargetFunction { q, k, kind: FunctionKind::Table { labels } })
    }

    /// Parses a table function from CSV text whose rows are
    /// `s_1,…,s_k,label` (k symbols then the label).
    pub fn from_table_csv(q: u32, k: usize, text: &str, cap: u64) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != k + 1 {
                return Err(Error::Parse(format!(
                    "table row {}: expected {} comma-separated fields, got {}",
                    lineno + 1,
                    k + 1,
                    fields.len()
                )));
            }
            let mut symbols = Vec::with_capacity(k);
            for f in &fields[..k] {
                symbols.push(parse_int(f, lineno + 1)?);
            }
            let label = parse_int(fields[k], lineno + 1)?;
            rows.push((ZqVector::new(q, symbols)?, label));
        }
        Self::from_table(q, k, &rows, cap)
    }

    /// Parses a function spec string: `lee-weight`, `wdist:T=2`, `modsum`,
    /// or `proj:2`.
    pub fn parse(spec: &str, q: u32, k: usize) -> Result<Self> {
        if spec == "lee-weight" {
            return Self::lee_weight(q, k);
        }
        if spec == "modsum" {
            return Self::modular_sum(q, k);
        }
        if let Some(rest) = spec.strip_prefix("wdist:T=") {
            let block: u32 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad block size in spec '{spec}'")))?;
            return Self::weight_distribution(q, k, block);
        }
        if let Some(rest) = spec.strip_prefix("proj:") {
            let coord: usize = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad coordinate in spec '{spec}'")))?;
            return Self::projection(q, k, coord);
        }
        Err(Error::Parse(format!(
            "unknown function spec '{spec}' (expected lee-weight, wdist:T=N, modsum, or proj:N)"
        )))
    }

    /// Alphabet size.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Message length.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The function's shape.
    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    /// Canonical spec string for reports (`lee-weight`, `wdist:T=2`, ...).
    pub fn spec_string(&self) -> String {
        match &self.kind {
            FunctionKind::LeeWeight => "lee-weight".into(),
            FunctionKind::WeightDistribution { block } => format!("wdist:T={block}"),
            FunctionKind::ModularSum => "modsum".into(),
            FunctionKind::Projection { coord } => format!("proj:{coord}"),
            FunctionKind::Table { .. } => "table".into(),
        }
    }

    /// Evaluates the function at `u`.
    pub fn evaluate(&self, u: &ZqVector) -> Result<u32> {
        if u.q() != self.q || u.len() != self.k {
            return Err(Error::Shape(format!(
                "message {u} does not live in Z_{}^{}",
                self.q, self.k
            )));
        }
        Ok(match &self.kind {
            FunctionKind::LeeWeight => lee::lee_weight(u) as u32,
            FunctionKind::WeightDistribution { block } => {
                (lee::lee_weight(u) / u64::from(*block)) as u32
            }
            FunctionKind::ModularSum => {
                let sum: u64 = u.symbols().iter().map(|&s| u64::from(s)).sum();
                (sum % u64::from(self.q)) as u32
            }
            FunctionKind::Projection { coord } => u.symbols()[coord - 1],
            FunctionKind::Table { labels } => labels[lee::lex_rank(u)],
        })
    }

    /// The image of the function as a sorted label list.
    ///
    /// Analytic for the named classes; table and projection kinds walk
    /// `Z_q^k` (bounded by `cap`).
    pub fn image(&self, cap: u64) -> Result<Vec<u32>> {
        match &self.kind {
            FunctionKind::LeeWeight => Ok((0..=max_weight(self.q, self.k) as u32).collect()),
            FunctionKind::WeightDistribution { block } => {
                let e = (max_weight(self.q, self.k) + 1) / u64::from(*block);
                Ok((0..e as u32).collect())
            }
            FunctionKind::ModularSum => Ok((0..self.q).collect()),
            FunctionKind::Projection { .. } | FunctionKind::Table { .. } => {
                let mut seen = BTreeSet::new();
                for u in lee::enumerate_space(self.k, self.q, cap)? {
                    seen.insert(self.evaluate(&u)?);
                }
                Ok(seen.into_iter().collect())
            }
        }
    }

    /// The expressiveness `E = |Im(f)|`.
    pub fn expressiveness(&self, cap: u64) -> Result<u64> {
        Ok(self.image(cap)?.len() as u64)
    }

    /// The set of labels reachable from `u` within Lee distance `rho`.
    pub fn function_ball(&self, u: &ZqVector, rho: u64, cap: u64) -> Result<BTreeSet<u32>> {
        if u.q() != self.q || u.len() != self.k {
            return Err(Error::Shape(format!(
                "message {u} does not live in Z_{}^{}",
                self.q, self.k
            )));
        }
        let mut labels = BTreeSet::new();
        for e in lee::lee_ball(self.k, rho, self.q, cap)? {
            labels.insert(self.evaluate(&u.add(&e)?)?);
        }
        Ok(labels)
    }

    /// The locality bound: the maximum function-ball size over all messages,
    /// i.e. the smallest `λ` such that `f` is locally `(rho, λ)`-bounded.
    pub fn local_bound(&self, rho: u64, cap: u64) -> Result<u64> {
        let errors = lee::lee_ball(self.k, rho, self.q, cap)?;
        let space = lee::enumerate_space(self.k, self.q, cap)?;
        let ball_size = |u: &ZqVector| -> Result<u64> {
            let mut labels = BTreeSet::new();
            for e in &errors {
                labels.insert(self.evaluate(&u.add(e)?)?);
            }
            Ok(labels.len() as u64)
        };
        #[cfg(feature = "parallel")]
        {
            space
                .par_iter()
                .map(ball_size)
                .try_reduce(|| 0, |a, b| Ok(a.max(b)))
        }
        #[cfg(not(feature = "parallel"))]
        {
            let mut best = 0;
            for u in &space {
                best = best.max(ball_size(u)?);
            }
            Ok(best)
        }
    }

    /// Colors `Z_q^k` with colors `1 ..= lambda` so that any two messages
    /// within Lee distance `rho` that disagree under `f` get different
    /// colors.
    ///
    /// Requires `f` to be locally `(rho, lambda)`-bounded (checked via
    /// [`TargetFunction::local_bound`]). A greedy pass in lexicographic
    /// order is tried first; if it needs more than `lambda` colors, an
    /// exact backtracking search takes over.
    pub fn color_function(&self, rho: u64, lambda: u64, cap: u64) -> Result<ColorMap> {
        if lambda == 0 {
            return Err(Error::Domain("lambda must be at least 1".into()));
        }
        let bound = self.local_bound(rho, cap)?;
        if bound > lambda {
            return Err(Error::Domain(format!(
                "function is locally ({rho}, {bound})-bounded, which exceeds lambda = {lambda}"
            )));
        }
        let space = lee::enumerate_space(self.k, self.q, cap)?;
        let errors = lee::lee_ball(self.k, rho, self.q, cap)?;
        // Conflict adjacency over lexicographic ranks; kept as sorted lists.
        let n = space.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, u) in space.iter().enumerate() {
            let fu = self.evaluate(u)?;
            for e in &errors {
                let v = u.add(e)?;
                let j = lee::lex_rank(&v);
                if j != i && self.evaluate(&v)? != fu {
                    adj[i].push(j);
                }
            }
            adj[i].sort_unstable();
            adj[i].dedup();
        }

        if let Some(colors) = greedy_coloring(&adj, lambda) {
            return Ok(ColorMap { q: self.q, k: self.k, lambda, colors });
        }
        if let Some(colors) = exact_coloring(&adj, lambda) {
            return Ok(ColorMap { q: self.q, k: self.k, lambda, colors });
        }
        Err(Error::Coloring(format!(
            "no {lambda}-coloring of the radius-{rho} conflict graph exists"
        )))
    }
}

fn check_domain(q: u32, k: usize) -> Result<()> {
    if q < 2 {
        return Err(Error::Domain(format!("alphabet size q={q} must be at least 2")));
    }
    if k == 0 {
        return Err(Error::Domain("message length k must be at least 1".into()));
    }
    Ok(())
}

/// `k⌊q/2⌋`, the maximum Lee weight on `Z_q^k`.
pub(crate) fn max_weight(q: u32, k: usize) -> u64 {
    k as u64 * u64::from(q / 2)
}

fn parse_int(field: &str, lineno: usize) -> Result<u32> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("table row {lineno}: '{field}' is not an integer")))
}

// ============================================================
// Colorings
// ============================================================

/// A coloring of `Z_q^k` with colors `1 ..= lambda`, indexed by
/// lexicographic rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorMap {
    q: u32,
    k: usize,
    lambda: u64,
    colors: Vec<u32>,
}

impl ColorMap {
    /// The color of message `u`.
    pub fn color_of(&self, u: &ZqVector) -> Result<u32> {
        if u.q() != self.q || u.len() != self.k {
            return Err(Error::Shape(format!(
                "message {u} does not live in Z_{}^{}",
                self.q, self.k
            )));
        }
        Ok(self.colors[lee::lex_rank(u)])
    }

    /// Number of colors allowed (`lambda`).
    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    /// Colors by lexicographic rank.
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        seen.extend(self.colors.iter().copied());
        seen.len()
    }
}

/// Lowest-available-color greedy pass in rank order; `None` if some vertex
/// needs a color above `lambda`.
fn greedy_coloring(adj: &[Vec<usize>], lambda: u64) -> Option<Vec<u32>> {
    let mut colors = vec![0u32; adj.len()];
    for i in 0..adj.len() {
        let mut taken: BTreeSet<u32> = BTreeSet::new();
        for &j in &adj[i] {
            if colors[j] != 0 {
                taken.insert(colors[j]);
            }
        }
        let mut c = 1u32;
        while taken.contains(&c) {
            c += 1;
        }
        if u64::from(c) > lambda {
            return None;
        }
        colors[i] = c;
    }
    Some(colors)
}

/// Exact backtracking search for a `lambda`-coloring, visiting vertices in
/// rank order and colors in increasing order (so the first solution found
/// is the lexicographically smallest color assignment).
fn exact_coloring(adj: &[Vec<usize>], lambda: u64) -> Option<Vec<u32>> {
    let n = adj.len();
    let mut colors = vec![0u32; n];
    let lambda = u32::try_from(lambda).unwrap_or(u32::MAX);
    fn rec(adj: &[Vec<usize>], colors: &mut Vec<u32>, i: usize, lambda: u32) -> bool {
        if i == colors.len() {
            return true;
        }
        'next_color: for c in 1..=lambda {
            for &j in &adj[i] {
                if colors[j] == c {
                    continue 'next_color;
                }
            }
            colors[i] = c;
            if rec(adj, colors, i + 1, lambda) {
                return true;
            }
            colors[i] = 0;
        }
        false
    }
    if rec(adj, &mut colors, 0, lambda) {
        Some(colors)
    } else {
        None
    }
}

// ============================================================
// Tests
// ============================================================
