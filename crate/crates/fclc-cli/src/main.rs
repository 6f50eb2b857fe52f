//! `fclc` — batch command line for function-correcting Lee-metric codes.
//!
//! Every run is fully determined by its flags plus input files: identical
//! invocations produce byte-identical output, independent of thread
//! count. Outputs are machine-readable (JSON, or CSV where a CSV schema
//! exists) and newline-terminated.
//!
//! Exit codes: `0` success, `1` domain/validation error, `2` unsupported
//! parameters, `3` enumeration cap exceeded, `64` usage error.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fclc::channel::{
    decode_function, exhaustive_decode_check, simulate, LeeChannelModel,
};
use fclc::constructions::{
    construct_lee_weight_fclc, construct_local_fclc, construct_modsum_fclc,
    construct_wdist_fclc, verify_fclc, Codebook, ConstructionParams, ConstructionTag,
};
use fclc::functions::TargetFunction;
use fclc::irregular::{
    gv_upper_bound, plotkin_lower_bound, search_min_length, PermutationPolicy, SearchOutcome,
};
use fclc::lee::{self, ZqVector};
use fclc::matrices::{distance_requirement_matrix, function_distance_matrix, DistanceMatrix};
use fclc::report::{comparison_report, report_csv};
use fclc::{ratio, Error, Result};

const USAGE_EXIT: u8 = 64;

// ============================================================
// Flags
// ============================================================

/// Output format; CSV is accepted only by subcommands with a CSV schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "fclc",
    version,
    about = "Function-correcting codes for Lee-metric channels"
)]
struct Cli {
    /// Worker threads for parallel stages (env FCLC_THREADS as fallback);
    /// results never depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Cap on the number of vectors any enumeration may visit.
    #[arg(long, global = true, default_value_t = fclc::DEFAULT_CAP)]
    cap: u64,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format (where a CSV schema exists).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lee distance between two vectors over Z_q.
    Dist {
        #[arg(long)]
        q: u32,
        /// First vector, comma-separated symbols (e.g. 2,2,2).
        #[arg(long)]
        a: String,
        /// Second vector.
        #[arg(long)]
        b: String,
    },
    /// Lee weight of a vector over Z_q.
    Weight {
        #[arg(long)]
        q: u32,
        /// Vector, comma-separated symbols.
        #[arg(long)]
        vector: String,
    },
    /// Distance-requirement matrix of a target function over message
    /// representatives.
    MatrixDrm {
        /// Function spec: lee-weight, modsum, wdist:T=N, or proj:N.
        #[arg(long)]
        function: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: u64,
        /// Semicolon-separated representative vectors (e.g. 0,0;0,1);
        /// defaults to the lexicographically first message per label.
        #[arg(long)]
        reps: Option<String>,
    },
    /// Function distance matrix over all pairs of labels.
    MatrixFdm {
        /// Function spec: lee-weight, modsum, wdist:T=N, or proj:N.
        #[arg(long)]
        function: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: u64,
    },
    /// Exact minimal length N_L of an irregular-distance code for a
    /// matrix, with a witness code.
    NlSearch {
        /// Path to a distance matrix JSON file.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        q: u32,
        /// Largest length to try before declaring infeasibility.
        #[arg(long, default_value_t = 8)]
        r_max: usize,
    },
    /// Plotkin-type lower and Gilbert–Varshamov-type upper bounds on N_L.
    NlBounds {
        /// Path to a distance matrix JSON file.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        q: u32,
        /// Minimize the GV bound over row permutations (M ≤ 8).
        #[arg(long)]
        min_over_permutations: bool,
    },
    /// Build a function-correcting codebook.
    Encode {
        /// One of lee-weight, wdist, modsum, local.
        #[arg(long)]
        construction: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: u64,
        /// Block size for wdist.
        #[arg(long = "T")]
        block: Option<u32>,
        /// Color count for local.
        #[arg(long)]
        lambda: Option<u64>,
        /// Target function spec for local (e.g. wdist:T=2).
        #[arg(long)]
        function: Option<String>,
    },
    /// Check the encoded-distance property of a codebook at budget t.
    Verify {
        /// Path to a codebook JSON file.
        #[arg(long)]
        codebook: PathBuf,
        #[arg(long)]
        t: u64,
    },
    /// Decode a received word to a function label.
    Decode {
        /// Path to a codebook JSON file.
        #[arg(long)]
        codebook: PathBuf,
        /// Received word, comma-separated symbols.
        #[arg(long)]
        y: String,
    },
    /// Replay every codeword under every error of Lee weight ≤ t.
    CheckExhaustive {
        /// Path to a codebook JSON file.
        #[arg(long)]
        codebook: PathBuf,
        #[arg(long)]
        t: u64,
    },
    /// Monte Carlo label-error simulation over a Lee channel.
    Simulate {
        /// Path to a codebook JSON file.
        #[arg(long)]
        codebook: PathBuf,
        /// Path to a channel JSON file ({"q","p","seed"}).
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        trials: u64,
        /// Overrides the seed stored in the channel file.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Redundancy comparison: construction vs lower bound vs classical
    /// baselines.
    Compare {
        /// One of lee-weight, wdist, modsum, local.
        #[arg(long)]
        construction: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: u64,
        /// Block size for wdist.
        #[arg(long = "T")]
        block: Option<u32>,
        /// Color count for local.
        #[arg(long)]
        lambda: Option<u64>,
    },
}

// ============================================================
// Output shells
// ============================================================

#[derive(Serialize)]
struct NlSearchOut {
    #[serde(rename = "N_L")]
    n_l: Option<usize>,
    witness: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    infeasible_up_to: Option<usize>,
}

#[derive(Serialize)]
struct NlBoundsOut {
    plotkin_rational: String,
    plotkin_decimal: String,
    plotkin_ceiling: u64,
    gv_upper: usize,
}

// ============================================================
// Entry point
// ============================================================

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version print to stdout and exit 0; everything
            // else is a usage error.
            let code = if e.use_stderr() { USAGE_EXIT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Unsupported(_) => 2,
                Error::CapExceeded(_) => 3,
                _ => 1,
            })
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let threads = cli.threads.or_else(|| {
        std::env::var("FCLC_THREADS").ok().and_then(|s| s.parse().ok())
    });
    if let Some(n) = threads {
        fclc::exec::configure_threads(n);
    }
    let text = dispatch(&cli.command, cli.cap, cli.format)?;
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn dispatch(command: &Command, cap: u64, format: Format) -> Result<String> {
    match command {
        Command::Dist { q, a, b } => {
            let a = parse_vector(*q, a)?;
            let b = parse_vector(*q, b)?;
            Ok(format!("{}\n", lee::lee_distance(&a, &b)?))
        }
        Command::Weight { q, vector } => {
            let v = parse_vector(*q, vector)?;
            Ok(format!("{}\n", lee::lee_weight(&v)))
        }
        Command::MatrixDrm { function, q, k, t, reps } => {
            let f = TargetFunction::parse(function, *q, *k)?;
            let reps = match reps {
                Some(text) => text
                    .split(';')
                    .map(|v| parse_vector(*q, v))
                    .collect::<Result<Vec<_>>>()?,
                None => canonical_representatives(&f, cap)?,
            };
            let m = distance_requirement_matrix(&f, *t, &reps)?;
            json_only(format, m.to_json(), "matrix-drm")
        }
        Command::MatrixFdm { function, q, k, t } => {
            let f = TargetFunction::parse(function, *q, *k)?;
            let m = function_distance_matrix(&f, *t, cap)?;
            json_only(format, m.to_json(), "matrix-fdm")
        }
        Command::NlSearch { matrix, q, r_max } => {
            let d = DistanceMatrix::from_json(&fs::read_to_string(matrix)?)?;
            let out = match search_min_length(&d, *q, *r_max)? {
                SearchOutcome::Found { length, witness } => NlSearchOut {
                    n_l: Some(length),
                    witness: Some(
                        witness.codewords().iter().map(|c| c.symbols().to_vec()).collect(),
                    ),
                    infeasible_up_to: None,
                },
                SearchOutcome::InfeasibleUpTo { r_max } => NlSearchOut {
                    n_l: None,
                    witness: None,
                    infeasible_up_to: Some(r_max),
                },
            };
            json_only(format, to_json(&out), "nl-search")
        }
        Command::NlBounds { matrix, q, min_over_permutations } => {
            let d = DistanceMatrix::from_json(&fs::read_to_string(matrix)?)?;
            let bound = plotkin_lower_bound(&d, *q)?;
            let policy = if *min_over_permutations {
                PermutationPolicy::AllPermutations
            } else {
                PermutationPolicy::Identity
            };
            let out = NlBoundsOut {
                plotkin_rational: ratio::rational_string(&bound),
                plotkin_decimal: ratio::decimal_string(&bound, 3),
                plotkin_ceiling: ratio::ceil_u64(&bound),
                gv_upper: gv_upper_bound(&d, *q, policy, cap)?,
            };
            json_only(format, to_json(&out), "nl-bounds")
        }
        Command::Encode { construction, q, k, t, block, lambda, function } => {
            let cb = build_codebook(construction, *q, *k, *t, *block, lambda, function, cap)?;
            Ok(match format {
                Format::Json => format!("{}\n", cb.to_json()),
                Format::Csv => cb.to_csv(),
            })
        }
        Command::Verify { codebook, t } => {
            let cb = Codebook::from_json(&fs::read_to_string(codebook)?)?;
            let outcome = verify_fclc(&cb, *t)?;
            json_only(format, to_json(&outcome), "verify")
        }
        Command::Decode { codebook, y } => {
            let cb = Codebook::from_json(&fs::read_to_string(codebook)?)?;
            let y = parse_vector(cb.q(), y)?;
            Ok(format!("{}\n", decode_function(&cb, &y)?))
        }
        Command::CheckExhaustive { codebook, t } => {
            let cb = Codebook::from_json(&fs::read_to_string(codebook)?)?;
            let outcome = exhaustive_decode_check(&cb, *t, cap)?;
            json_only(format, to_json(&outcome), "check-exhaustive")
        }
        Command::Simulate { codebook, channel, trials, seed } => {
            let cb = Codebook::from_json(&fs::read_to_string(codebook)?)?;
            let model = LeeChannelModel::from_json(&fs::read_to_string(channel)?)?;
            let model = match seed {
                Some(s) => LeeChannelModel::new(model.q(), model.p(), *s)?,
                None => model,
            };
            let report = simulate(&cb, &model, *trials)?;
            json_only(format, to_json(&report), "simulate")
        }
        Command::Compare { construction, q, k, t, block, lambda } => {
            let params = build_params(construction, *q, *k, *t, *block, lambda)?;
            let report = comparison_report(&params, cap)?;
            Ok(match format {
                Format::Json => format!("{}\n", report.to_json()),
                Format::Csv => report_csv(std::slice::from_ref(&report)),
            })
        }
    }
}

// ============================================================
// Helpers
// ============================================================

fn parse_symbols(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<u32>()
                .map_err(|e| Error::Parse(format!("bad symbol '{s}': {e}")))
        })
        .collect()
}

fn parse_vector(q: u32, text: &str) -> Result<ZqVector> {
    ZqVector::new(q, parse_symbols(text)?)
}

/// The lexicographically first message attaining each label, ordered by
/// label — the canonical representative choice for `matrix-drm`.
fn canonical_representatives(f: &TargetFunction, cap: u64) -> Result<Vec<ZqVector>> {
    let mut by_label: BTreeMap<u32, ZqVector> = BTreeMap::new();
    for u in lee::enumerate_space(f.k(), f.q(), cap)? {
        by_label.entry(f.evaluate(&u)?).or_insert(u);
    }
    Ok(by_label.into_values().collect())
}

fn build_params(
    construction: &str,
    q: u32,
    k: usize,
    t: u64,
    block: Option<u32>,
    lambda: &Option<u64>,
) -> Result<ConstructionParams> {
    match construction.parse::<ConstructionTag>()? {
        ConstructionTag::LeeWeight => Ok(ConstructionParams::LeeWeight { q, k, t }),
        ConstructionTag::WeightDistribution => {
            let block = block
                .ok_or_else(|| Error::Domain("wdist requires --T <block size>".into()))?;
            Ok(ConstructionParams::WeightDistribution { q, k, t, block })
        }
        ConstructionTag::ModularSum => Ok(ConstructionParams::ModularSum { q, k, t }),
        ConstructionTag::LocallyBounded => {
            let lambda = lambda
                .ok_or_else(|| Error::Domain("local requires --lambda <colors>".into()))?;
            Ok(ConstructionParams::LocallyBounded { q, k, t, lambda })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn build_codebook(
    construction: &str,
    q: u32,
    k: usize,
    t: u64,
    block: Option<u32>,
    lambda: &Option<u64>,
    function: &Option<String>,
    cap: u64,
) -> Result<Codebook> {
    match construction.parse::<ConstructionTag>()? {
        ConstructionTag::LeeWeight => construct_lee_weight_fclc(q, k, t, cap),
        ConstructionTag::WeightDistribution => {
            let block = block
                .ok_or_else(|| Error::Domain("wdist requires --T <block size>".into()))?;
            construct_wdist_fclc(q, k, t, block, cap)
        }
        ConstructionTag::ModularSum => construct_modsum_fclc(q, k, t, cap),
        ConstructionTag::LocallyBounded => {
            let lambda = lambda
                .ok_or_else(|| Error::Domain("local requires --lambda <colors>".into()))?;
            let spec = function
                .as_ref()
                .ok_or_else(|| Error::Domain("local requires --function <spec>".into()))?;
            let f = TargetFunction::parse(spec, q, k)?;
            construct_local_fclc(&f, t, lambda, cap)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serialization cannot fail")
}

fn json_only(format: Format, json: String, what: &str) -> Result<String> {
    match format {
        Format::Json => Ok(format!("{json}\n")),
        Format::Csv => Err(Error::Domain(format!(
            "{what} has no CSV schema; use --format json"
        ))),
    }
}
