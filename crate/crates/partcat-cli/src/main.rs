//! partcat: batch interface to the partition-category engine.
//!
//! Every verb prints a deterministic report for fixed flags and runs silent
//! internal cross-checks; the exit code is 0 exactly when the computation and
//! all cross-checks succeed. Set PARTCAT_THREADS to cap the worker pool used
//! by determinant evaluation and census runs.

mod objects;
mod output;
mod spectra;
mod table;
mod towers;

use clap::{Parser, Subcommand};
use num::BigRational;
use output::{Failure, Format};
use partcat_core::{Category, CategorySpec, Family};
use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "partcat",
    about = "Exact computations in categories of partitions with loop parameter t",
    version
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// List all partitions of a category at one shape.
    Enumerate {
        /// Named family (P, NC2, ...) or path to a category-spec JSON file.
        #[arg(long)]
        category: String,
        /// Shape as two counts: upper points, lower points.
        #[arg(long, num_args = 2, value_names = ["K", "L"])]
        points: Vec<usize>,
    },
    /// Gram matrix of the flat basis C(0,k); optionally its determinant.
    Gram {
        #[arg(long)]
        category: String,
        #[arg(long)]
        k: usize,
        /// Print the exact determinant polynomial instead of the matrix.
        #[arg(long)]
        det: bool,
        /// Also evaluate the determinant at an exact rational t, "p/q" or "n".
        #[arg(long)]
        t: Option<String>,
    },
    /// Semisimplicity scan: determinant root classification for k = 0..kmax.
    Scan {
        #[arg(long)]
        category: String,
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        /// Include full determinant coefficient lists in text output.
        #[arg(long)]
        det: bool,
    },
    /// Moebius matrix of the coarsening order on C(0,k).
    Mobius {
        #[arg(long)]
        category: String,
        #[arg(long)]
        k: usize,
    },
    /// Knop product factorization of the k-th Gram determinant.
    Omega {
        #[arg(long)]
        category: String,
        #[arg(long)]
        k: usize,
        /// Also evaluate at an exact rational t.
        #[arg(long)]
        t: Option<String>,
    },
    /// Inclusion scalar w for an injection of k points into l points.
    Wscalar {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Image of the injection as comma-separated 1-based labels
        /// (default 1,2,...,k).
        #[arg(long)]
        inj: Option<String>,
    },
    /// List projective partitions of degree k.
    Projectives {
        #[arg(long)]
        category: String,
        #[arg(long)]
        k: usize,
    },
    /// Census of new indecomposable objects per degree up to kmax.
    Census {
        #[arg(long)]
        category: String,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Loop parameter; the census counts assume t != 0 and reject 0.
        #[arg(long)]
        t: Option<String>,
        /// Cap on through-blocks for explicit symmetry-group enumeration.
        #[arg(long, default_value_t = 7)]
        bound: usize,
    },
    /// Verify the surjective-partition description of the census per degree.
    SurjectiveCheck {
        #[arg(long)]
        category: String,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[arg(long, default_value_t = 7)]
        bound: usize,
    },
    /// Throughput-one idempotent tower e_0..e_kmax with exact coefficients.
    Jw {
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Cost guard; raise together with kmax for deep towers.
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Fattening map on pair partitions: apply to one diagram or verify the
    /// bijection and scalar identities up to a thin-point bound.
    Fatten {
        /// Diagram in text notation, e.g. "1 2 | 1' 2'"; omit to run the
        /// bounded verification sweep.
        #[arg(long)]
        partition: Option<String>,
        /// Invert: map a thin noncrossing diagram back to pair partitions.
        #[arg(long)]
        unfatten: bool,
        /// Max thin points per composable pair in the verification sweep.
        #[arg(long, default_value_t = 8)]
        bound: usize,
        /// Seed for the deterministic subsample when the sweep is large.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact negligibility test for a morphism at a rational parameter.
    Negligible {
        #[arg(long)]
        category: String,
        #[arg(long)]
        k: usize,
        /// Evaluation point, "p/q" or "n".
        #[arg(long)]
        t: String,
        /// Test x_p for this diagram instead of x_id at degree k.
        #[arg(long)]
        partition: Option<String>,
        /// Read the morphism from a JSON file instead of building x_p.
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Summary table: root classes and census counts for the six core rows.
    Table {
        /// Census depth per family.
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Scan depth per family.
        #[arg(long, default_value_t = 5)]
        bound: usize,
    },
}

/// Parse "p/q" or "n" into an exact rational.
fn parse_rational(s: &str) -> Result<BigRational, Failure> {
    let parse_int = |x: &str| {
        x.trim()
            .parse::<num::BigInt>()
            .map_err(|_| Failure::Usage(format!("not an integer: {x:?}")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den == num::BigInt::from(0) {
                return Err(Failure::Usage("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
    }
}

/// A named family id, or a path to a JSON category-spec file
/// ({"named": "..."} or {"generated": {"generators": [...], "bound": n}}).
fn load_category(arg: &str) -> Result<Category, Failure> {
    if let Ok(f) = Family::from_str(arg) {
        return Ok(Category::named(f));
    }
    if !Path::new(arg).exists() {
        return Err(Failure::Usage(format!(
            "--category {arg:?} is neither a named family ({}) nor an existing spec file",
            Family::ALL.map(|f| f.id()).join(", ")
        )));
    }
    let data = std::fs::read_to_string(arg)
        .map_err(|e| Failure::Usage(format!("cannot read {arg:?}: {e}")))?;
    let spec: CategorySpec = serde_json::from_str(&data)
        .map_err(|e| Failure::Usage(format!("bad category spec in {arg:?}: {e}")))?;
    Ok(Category::new(spec))
}

fn configure_threads() {
    if let Ok(v) = std::env::var("PARTCAT_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                // ignore the error if a pool already exists (e.g. under tests)
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let fmt = cli.format;
    match cli.verb {
        Verb::Enumerate { category, points } => {
            let cat = load_category(&category)?;
            if points.len() != 2 {
                return Err(Failure::Usage("--points takes exactly two counts".into()));
            }
            spectra::enumerate(&cat, points[0], points[1], fmt)
        }
        Verb::Gram { category, k, det, t } => {
            let cat = load_category(&category)?;
            let t = t.as_deref().map(parse_rational).transpose()?;
            spectra::gram(&cat, k, det, t.as_ref(), fmt)
        }
        Verb::Scan { category, kmax, det } => {
            let cat = load_category(&category)?;
            spectra::scan(&cat, kmax, det, fmt)
        }
        Verb::Mobius { category, k } => {
            let cat = load_category(&category)?;
            spectra::mobius(&cat, k, fmt)
        }
        Verb::Omega { category, k, t } => {
            let cat = load_category(&category)?;
            let t = t.as_deref().map(parse_rational).transpose()?;
            spectra::omega(&cat, k, t.as_ref(), fmt)
        }
        Verb::Wscalar { k, l, inj } => spectra::wscalar(k, l, inj.as_deref(), fmt),
        Verb::Projectives { category, k } => {
            let cat = load_category(&category)?;
            objects::projectives(&cat, k, fmt)
        }
        Verb::Census {
            category,
            kmax,
            t,
            bound,
        } => {
            let cat = load_category(&category)?;
            let t = t.as_deref().map(parse_rational).transpose()?;
            objects::census(&cat, kmax, t.as_ref(), bound, fmt)
        }
        Verb::SurjectiveCheck {
            category,
            kmax,
            bound,
        } => {
            let cat = load_category(&category)?;
            objects::surjective_check(&cat, kmax, bound, fmt)
        }
        Verb::Jw { kmax, bound } => towers::jw(kmax, bound, fmt),
        Verb::Fatten {
            partition,
            unfatten,
            bound,
            seed,
        } => towers::fatten(partition.as_deref(), unfatten, bound, seed, fmt),
        Verb::Negligible {
            category,
            k,
            t,
            partition,
            morphism,
        } => {
            let cat = load_category(&category)?;
            let t = parse_rational(&t)?;
            towers::negligible(&cat, k, &t, partition.as_deref(), morphism.as_deref(), fmt)
        }
        Verb::Table { kmax, bound } => table::table(kmax, bound, fmt),
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("partcat: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
