//! Command-line interface. Exit codes: 0 success, 1 verification failure,
//! 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::affine::{BoundedAffinePerm, Indexing};
use crate::dyck::{count_avoiding_paths, enumerate_avoiding_paths, synthesize};
use crate::engine::Engine;
use crate::fset::{a_sequence, inversion_multiset, lambda_partition, Frame, LatticeMultiset};
use crate::harness::{
    census_report, enumerate_rows, verify_engine, verify_main_theorem, verify_structure,
    verify_synthesis, EnumRow,
};
use crate::paths::{nu, nu_bar};

#[derive(Parser, Debug)]
#[command(name = "posicat", version, about = "Positroid Catalan numbers and inversion multisets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one quantity for a single permutation.
    Compute {
        /// `window:3,6,4,5,7,8,9`, `cycle:(0,3,2,5,1,4)` or `{"n":..,"k":..,"window":[..]}`
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum)]
        what: What,
        /// Print each applied recurrence rule as a JSON line on stderr.
        #[arg(long)]
        trace: bool,
        /// Read labels as 1..=n (windows list f(1), ..., f(n)).
        #[arg(long)]
        one_based: bool,
        #[arg(long, value_enum, default_value_t = Coords::Rect)]
        coords: Coords,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Count (or list) Dyck paths above the diagonal avoiding a set.
    Dyck {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        n: i64,
        /// Points as `a,b;a,b`; empty for none.
        #[arg(long, default_value = "")]
        forbid: String,
        #[arg(long, value_enum, default_value_t = Coords::Rect)]
        coords: Coords,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// Build a repetition-free permutation with a prescribed inversion set.
    Synthesize {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "")]
        forbid: String,
        #[arg(long, value_enum, default_value_t = Coords::Rect)]
        coords: Coords,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// List the n-cycle elements of period n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        repetition_free: bool,
        #[arg(long, value_enum, default_value_t = ListFormat::Json)]
        format: ListFormat,
    },
    /// Run an exhaustive verification suite and print its JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Worker threads; defaults to POSICAT_JOBS, then to the number of CPUs.
        #[arg(long, env = "POSICAT_JOBS")]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Catalan,
    Rpoly,
    Rtilde,
    Inversions,
    Fset,
    Lambda,
    Nu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coords {
    Rect,
    Sheared,
}

impl From<Coords> for Frame {
    fn from(c: Coords) -> Self {
        match c {
            Coords::Rect => Frame::Rect,
            Coords::Sheared => Frame::Sheared,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Main,
    Synthesis,
    Engine,
    Structure,
    Census,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] crate::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

macro_rules! lib_err {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Lib(e.into())
            }
        }
    )*};
}
lib_err!(
    crate::affine::PermError,
    crate::poly::PolyError,
    crate::paths::PathError,
    crate::fset::SetError,
    crate::engine::EngineError,
    crate::dyck::DyckError
);

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read_set(text: &str, coords: Coords, k: i64, n: i64) -> Result<LatticeMultiset, CliError> {
    if k < 1 || n <= k {
        return Err(CliError::Usage(format!(
            "need 1 <= k < n, got k = {k}, n = {n}"
        )));
    }
    Ok(LatticeMultiset::parse_points(text, coords.into(), k, n)?)
}

fn jobs_or_default(jobs: Option<usize>) -> usize {
    jobs.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1)
    })
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Compute {
            perm,
            what,
            trace,
            one_based,
            coords,
            format,
        } => {
            let indexing = if one_based {
                Indexing::OneBased
            } else {
                Indexing::ZeroBased
            };
            let f = BoundedAffinePerm::parse_with(&perm, indexing)?;
            let mut engine = if trace {
                Engine::new().with_trace()
            } else {
                Engine::new()
            };
            let (text, json) = compute(&f, what, coords, &mut engine)?;
            for event in engine.take_trace() {
                writeln!(err, "{}", serde_json::to_string(&event).expect("serializable"))?;
            }
            match format {
                OutFormat::Text => writeln!(out, "{text}")?,
                OutFormat::Json => writeln!(
                    out,
                    "{}",
                    serde_json::json!({ "perm": f, "what": format!("{what:?}").to_lowercase(), "value": json })
                )?,
            }
            Ok(0)
        }
        Command::Dyck {
            k,
            n,
            forbid,
            coords,
            list,
            cap,
        } => {
            let set = read_set(&forbid, coords, k, n)?;
            if list {
                for p in enumerate_avoiding_paths(k, n, &set, cap)? {
                    writeln!(out, "{p}")?;
                }
            } else {
                writeln!(out, "{}", count_avoiding_paths(k, n, &set))?;
            }
            Ok(0)
        }
        Command::Synthesize {
            k,
            n,
            forbid,
            coords,
            format,
        } => {
            let set = read_set(&forbid, coords, k, n)?;
            let s = synthesize(&set)?;
            match format {
                OutFormat::Text => {
                    writeln!(out, "{}", s.perm)?;
                    writeln!(out, "profile: {}", s.profile)?;
                }
                OutFormat::Json => writeln!(
                    out,
                    "{}",
                    serde_json::json!({ "perm": s.perm, "profile": s.profile })
                )?,
            }
            Ok(0)
        }
        Command::Enumerate {
            n,
            k,
            repetition_free,
            format,
        } => {
            if n < 2 {
                return Err(CliError::Usage("enumerate needs n >= 2".into()));
            }
            let mut engine = Engine::new();
            let rows = enumerate_rows(n, k, repetition_free, &mut engine)?;
            if format == ListFormat::Csv {
                writeln!(out, "{}", EnumRow::CSV_HEADER)?;
            }
            for row in rows {
                match format {
                    ListFormat::Json => {
                        writeln!(out, "{}", serde_json::to_string(&row).expect("serializable"))?
                    }
                    ListFormat::Csv => writeln!(out, "{}", row.to_csv())?,
                }
            }
            Ok(0)
        }
        Command::Verify { suite, n_max, jobs } => {
            if n_max < 2 {
                return Err(CliError::Usage("--n-max must be at least 2".into()));
            }
            let jobs = jobs_or_default(jobs);
            let report = match suite {
                Suite::Main => verify_main_theorem(n_max, jobs),
                Suite::Synthesis => verify_synthesis(n_max, jobs),
                Suite::Engine => verify_engine(n_max, jobs),
                Suite::Structure => verify_structure(n_max, jobs),
                Suite::Census => census_report(n_max, jobs),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            )?;
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn compute(
    f: &BoundedAffinePerm,
    what: What,
    coords: Coords,
    engine: &mut Engine,
) -> Result<(String, serde_json::Value), CliError> {
    Ok(match what {
        What::Catalan => {
            let c: BigUint = engine.compute_c(f)?;
            (c.to_string(), serde_json::json!(c.to_string()))
        }
        What::Rpoly => {
            let r = engine.compute_r(f)?;
            (r.to_string(), serde_json::json!(r))
        }
        What::Rtilde => {
            let r = engine.compute_rtilde(f)?;
            (r.to_string(), serde_json::json!(r))
        }
        What::Inversions => {
            let inv = f.inversions();
            let text = inv
                .iter()
                .map(|x| format!("({}, {})", x.i, x.j))
                .collect::<Vec<_>>()
                .join("\n");
            (text, serde_json::json!(inv))
        }
        What::Fset => {
            let set = inversion_multiset(f, coords.into())?;
            (set.format_points(), set.to_json())
        }
        What::Lambda => {
            let lambda = lambda_partition(f)?;
            let a = a_sequence(f)?;
            let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
            (
                format!("lambda: {}\na: {}", join(&lambda), join(&a)),
                serde_json::json!({ "lambda": lambda, "a": a }),
            )
        }
        What::Nu => {
            let (v, vb) = (nu(f)?, nu_bar(f)?);
            (
                format!("nu: {v}\nnu_bar: {vb}"),
                serde_json::json!({ "nu": v, "nu_bar": vb }),
            )
        }
    })
}
