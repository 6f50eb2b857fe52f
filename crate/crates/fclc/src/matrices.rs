//! Distance-requirement and function-distance matrices.
//!
//! To correct `t` errors for a function `f`, a pair of messages with
//! different labels needs codewords at Lee distance `≥ 2t+1`; distance
//! already present between the messages counts toward that. The
//! *distance-requirement matrix* of a message list records the remainder,
//! `[2t+1 − d_L(u_i, u_j)]⁺` for differing labels (0 otherwise).
//!
//! Aggregating over whole label classes gives the *function-distance
//! matrix*: entry `(a, b)` uses the function distance `d_L^f(a, b)` — the
//! minimum Lee distance between any preimage of `a` and any preimage of
//! `b`. A set of representative messages whose requirement matrix equals
//! the function-distance matrix witnesses that the function-level matrix
//! is achieved by concrete messages.
//!
//! Matrices serialize as `{"q", "t", "rows", "entries"}` with rows either
//! integer labels or message vectors, so downstream searches are
//! self-describing.

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::functions::TargetFunction;
use crate::lee::{self, ZqVector};
use crate::{Error, Result};

// ============================================================
// Matrix type and JSON schema
// ============================================================

/// Row metadata: what each row/column of a matrix stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowLabels {
    /// Rows indexed by function labels.
    Labels(Vec<u32>),
    /// Rows indexed by concrete message vectors.
    Vectors(Vec<ZqVector>),
}

impl RowLabels {
    fn len(&self) -> usize {
        match self {
            RowLabels::Labels(l) => l.len(),
            RowLabels::Vectors(v) => v.len(),
        }
    }
}

/// A symmetric, zero-diagonal matrix of pairwise distance requirements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    q: u32,
    t: u64,
    rows: RowLabels,
    entries: Vec<Vec<u64>>,
}

impl DistanceMatrix {
    /// Builds a matrix, validating squareness, symmetry, a zero diagonal,
    /// and row-metadata length.
    pub fn new(q: u32, t: u64, entries: Vec<Vec<u64>>, rows: RowLabels) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!("alphabet size q={q} must be at least 2")));
        }
        let m = entries.len();
        if rows.len() != m {
            return Err(Error::Shape(format!(
                "matrix has {m} rows but {} row labels",
                rows.len()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries in a {m}×{m} matrix",
                    row.len()
                )));
            }
            if row[i] != 0 {
                return Err(Error::Domain(format!("diagonal entry ({i},{i}) is nonzero")));
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::Domain(format!(
                        "matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(DistanceMatrix { q, t, rows, entries })
    }

    /// Builds a matrix with default integer row labels `0 ..= M−1`.
    pub fn from_entries(q: u32, t: u64, entries: Vec<Vec<u64>>) -> Result<Self> {
        let labels = (0..entries.len() as u32).collect();
        Self::new(q, t, entries, RowLabels::Labels(labels))
    }

    /// Alphabet the requirements were computed over.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// The error-correction radius the requirements encode.
    pub fn t(&self) -> u64 {
        self.t
    }

    /// Matrix dimension `M`.
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    /// All entries, row-major.
    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// Row metadata.
    pub fn rows(&self) -> &RowLabels {
        &self.rows
    }

    /// `Σ_{i<j} D_ij`, the quantity the Plotkin-type bound aggregates.
    pub fn upper_triangle_sum(&self) -> u64 {
        let mut total = 0;
        for i in 0..self.size() {
            for j in i + 1..self.size() {
                total += self.entries[i][j];
            }
        }
        total
    }

    /// Serializes to the stable `{"q","t","rows","entries"}` JSON schema.
    pub fn to_json(&self) -> String {
        let rows = match &self.rows {
            RowLabels::Labels(l) => l.iter().map(|&x| RowEntryJson::Label(x)).collect(),
            RowLabels::Vectors(v) => v
                .iter()
                .map(|u| RowEntryJson::Vector(u.symbols().to_vec()))
                .collect(),
        };
        let doc = MatrixJson { q: self.q, t: self.t, rows, entries: self.entries.clone() };
        serde_json::to_string(&doc).expect("matrix serialization cannot fail")
    }

    /// Parses and validates a matrix from its JSON schema. A missing
    /// `rows` field defaults to integer labels.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatrixJson = serde_json::from_str(text)?;
        let m = doc.entries.len();
        let rows = if doc.rows.is_empty() && m > 0 {
            RowLabels::Labels((0..m as u32).collect())
        } else {
            let all_labels = doc.rows.iter().all(|r| matches!(r, RowEntryJson::Label(_)));
            let all_vectors = doc.rows.iter().all(|r| matches!(r, RowEntryJson::Vector(_)));
            if all_labels {
                RowLabels::Labels(
                    doc.rows
                        .iter()
                        .map(|r| match r {
                            RowEntryJson::Label(x) => *x,
                            _ => unreachable!(),
                        })
                        .collect(),
                )
            } else if all_vectors {
                let mut vs = Vec::with_capacity(doc.rows.len());
                for r in &doc.rows {
                    if let RowEntryJson::Vector(symbols) = r {
                        vs.push(ZqVector::new(doc.q, symbols.clone())?);
                    }
                }
                RowLabels::Vectors(vs)
            } else {
                return Err(Error::Parse(
                    "matrix rows mix integer labels and vectors".into(),
                ));
            }
        };
        Self::new(doc.q, doc.t, doc.entries, rows)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    q: u32,
    t: u64,
    #[serde(default)]
    rows: Vec<RowEntryJson>,
    entries: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RowEntryJson {
    Label(u32),
    Vector(Vec<u32>),
}

// ============================================================
// Builders
// ============================================================

/// `[x]⁺ = max(x, 0)` over the signed gap `2t+1 − d`.
fn positive_part(target: u64, d: u64) -> u64 {
    target.saturating_sub(d)
}

/// The distance-requirement matrix of a list of pairwise-distinct messages:
/// `[2t+1 − d_L(u_i, u_j)]⁺` where labels differ, 0 where they agree.
pub fn distance_requirement_matrix(
    f: &TargetFunction,
    t: u64,
    vectors: &[ZqVector],
) -> Result<DistanceMatrix> {
    for (i, u) in vectors.iter().enumerate() {
        if vectors[i + 1..].contains(u) {
            return Err(Error::Domain(format!("message {u} appears twice")));
        }
    }
    let labels: Vec<u32> = vectors
        .iter()
        .map(|u| f.evaluate(u))
        .collect::<Result<_>>()?;
    let m = vectors.len();
    let target = 2 * t + 1;
    let mut entries = vec![vec![0u64; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            if labels[i] != labels[j] {
                let d = lee::lee_distance(&vectors[i], &vectors[j])?;
                let need = positive_part(target, d);
                entries[i][j] = need;
                entries[j][i] = need;
            }
        }
    }
    DistanceMatrix::new(f.q(), t, entries, RowLabels::Vectors(vectors.to_vec()))
}

/// The function distance `d_L^f(a, b)`: the minimum Lee distance between a
/// preimage of label `a` and a preimage of label `b ≠ a`.
pub fn function_distance(f: &TargetFunction, a: u32, b: u32, cap: u64) -> Result<u64> {
    if a == b {
        return Err(Error::Domain(format!(
            "function distance needs distinct labels, got {a} twice"
        )));
    }
    let classes = preimage_classes(f, cap)?;
    let image = f.image(cap)?;
    let pa = class_of(&image, &classes, a)?;
    let pb = class_of(&image, &classes, b)?;
    Ok(class_pair_min(pa, pb))
}

/// The function-distance matrix: rows indexed by the sorted image, entry
/// `(a, b) = [2t+1 − d_L^f(a, b)]⁺` off the diagonal.
pub fn function_distance_matrix(f: &TargetFunction, t: u64, cap: u64) -> Result<DistanceMatrix> {
    let image = f.image(cap)?;
    let classes = preimage_classes(f, cap)?;
    let e = image.len();
    let target = 2 * t + 1;
    let pairs: Vec<(usize, usize)> = (0..e)
        .flat_map(|i| (i + 1..e).map(move |j| (i, j)))
        .collect();
    let need = |&(i, j): &(usize, usize)| -> u64 {
        positive_part(target, class_pair_min(&classes[i], &classes[j]))
    };
    #[cfg(feature = "parallel")]
    let computed: Vec<u64> = pairs.par_iter().map(need).collect();
    #[cfg(not(feature = "parallel"))]
    let computed: Vec<u64> = pairs.iter().map(need).collect();

    let mut entries = vec![vec![0u64; e]; e];
    for ((i, j), v) in pairs.into_iter().zip(computed) {
        entries[i][j] = v;
        entries[j][i] = v;
    }
    DistanceMatrix::new(f.q(), t, entries, RowLabels::Labels(image))
}

/// Checks whether a set of representative messages achieves the
/// function-distance matrix: their requirement matrix must equal the
/// function-distance matrix under the label ordering the representatives
/// induce.
///
/// Returns `false` (rather than an error) when the representatives' labels
/// do not cover the image bijectively — such a set simply is not a
/// representative family.
pub fn representatives_match(
    f: &TargetFunction,
    t: u64,
    reps: &[ZqVector],
    cap: u64,
) -> Result<bool> {
    let image = f.image(cap)?;
    if reps.len() != image.len() {
        return Err(Error::Domain(format!(
            "expected {} representatives (one per label), got {}",
            image.len(),
            reps.len()
        )));
    }
    for (i, u) in reps.iter().enumerate() {
        if reps[i + 1..].contains(u) {
            return Err(Error::Domain(format!("representative {u} appears twice")));
        }
    }
    let labels: Vec<u32> = reps.iter().map(|u| f.evaluate(u)).collect::<Result<_>>()?;
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    if sorted != image {
        return Ok(false);
    }
    let drm = distance_requirement_matrix(f, t, reps)?;
    let fdm = function_distance_matrix(f, t, cap)?;
    // Position of each representative's label in the image ordering.
    let pos: Vec<usize> = labels
        .iter()
        .map(|l| image.binary_search(l).expect("label covered above"))
        .collect();
    for i in 0..reps.len() {
        for j in 0..reps.len() {
            if drm.entry(i, j) != fdm.entry(pos[i], pos[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Splits `Z_q^k` into preimage classes, one per image label (ascending).
fn preimage_classes(f: &TargetFunction, cap: u64) -> Result<Vec<Vec<ZqVector>>> {
    let image = f.image(cap)?;
    let mut classes: Vec<Vec<ZqVector>> = vec![Vec::new(); image.len()];
    for u in lee::enumerate_space(f.k(), f.q(), cap)? {
        let label = f.evaluate(&u)?;
        let idx = image
            .binary_search(&label)
            .expect("evaluation produced a label outside the image");
        classes[idx].push(u);
    }
    Ok(classes)
}

fn class_of<'c>(
    image: &[u32],
    classes: &'c [Vec<ZqVector>],
    label: u32,
) -> Result<&'c [ZqVector]> {
    match image.binary_search(&label) {
        Ok(idx) => Ok(&classes[idx]),
        Err(_) => Err(Error::Domain(format!("label {label} is not in the image"))),
    }
}

/// Minimum pairwise Lee distance across two disjoint preimage classes,
/// stopping early at 1 (the global minimum for distinct labels).
fn class_pair_min(a: &[ZqVector], b: &[ZqVector]) -> u64 {
    let mut best = u64::MAX;
    for u in a {
        for v in b {
            let d = lee::lee_distance(u, v).expect("classes share a domain");
            if d < best {
                best = d;
                if best <= 1 {
                    return best;
                }
            }
        }
    }
    best
}

// ============================================================
// Tests
// ============================================================
