use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sunrigid::heisenberg::{evaluate_word, LatticePresentation, Word};
use sunrigid::jetgroup::JetTransformation;
use sunrigid::json::{ANElementWire, CertificateWire, JetWire, LatticeWire, NormalizationWire};
use sunrigid::linalg;
use sunrigid::normalization::{contraction_certificate, kill_level_minus_one, reconstruct_from_low_order, sternberg_normalize};
use sunrigid::scalar::{parse_q, qpow};
use sunrigid::su_grading::{jet_u_vector, phi_chart_jet};
use sunrigid::suites::{self, SuiteReport};
use sunrigid::{Error, Q};

#[derive(Parser)]
#[command(name = "sunrigid", version, about = "Exact checks for graded jets, lattices and su(n+1,1) charts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
    /// Normalize a jet with contracting level-0 part.
    Normalize {
        #[arg(long)]
        jet: PathBuf,
        #[arg(long)]
        k: i64,
        /// Truncate the input to this order before normalizing.
        #[arg(long)]
        r: Option<u32>,
    },
    /// Rebuild a jet from its low levels and the relation with `I(k)`.
    Reconstruct {
        #[arg(long)]
        low: PathBuf,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u32,
    },
    /// Evaluate a word in the generators of a lattice.
    Word {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Contraction constants for the linear parts of the translations.
    Certificate {
        #[arg(long)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        /// Use the standard lattice of this dimension.
        #[arg(long, default_value_t = 1, conflicts_with = "lattice")]
        n: usize,
        #[arg(long)]
        lattice: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Relations,
    Brackets,
    Centralizer,
    Theta,
    Kernel,
}

#[derive(Args)]
struct VerifyArgs {
    suite: Suite,
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2])]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [2i64, 3])]
    k: Vec<i64>,
    /// Jet order for the relations suite.
    #[arg(long, default_value_t = 6)]
    r: u32,
    /// Highest level searched by the centralizer suite.
    #[arg(long, default_value_t = 3)]
    max_level: i32,
    /// Record the wall time in the report.
    #[arg(long)]
    timing: bool,
}

enum Failure {
    Malformed(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::DimensionMismatch { .. } | Error::Precondition(_) => Failure::Malformed(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn emit(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run_verify(a: &VerifyArgs) -> Result<bool, Failure> {
    if a.n.contains(&0) || a.k.iter().any(|&k| k < 2) {
        return Err(Failure::Malformed("need n >= 1 and k >= 2".into()));
    }
    let report: SuiteReport = match a.suite {
        Suite::Relations => suites::relations_suite(&a.n, &a.k, a.r, a.timing)?,
        Suite::Brackets => suites::brackets_suite(&a.n, a.timing)?,
        Suite::Centralizer => suites::centralizer_suite(&a.n, a.max_level, a.timing)?,
        Suite::Theta => suites::theta_suite(&a.n, a.timing)?,
        Suite::Kernel => suites::kernel_suite(&a.n, a.timing)?,
    };
    emit(&report);
    Ok(report.all_pass())
}

/// Whether the level-0 part has the eigenvalues of `I(k)`.
fn level_zero_matches(f: &JetTransformation, k: i64) -> bool {
    let g0 = f.level_zero();
    let kq = Q::from_integer(k.into());
    if g0.b != qpow(&kq, -2) {
        return false;
    }
    let d = g0.a.len();
    let mut shifted = g0.a.clone();
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= kq.recip();
    }
    let mut p = linalg::identity(d);
    for _ in 0..d {
        p = linalg::matmul(&p, &shifted);
    }
    p.iter().flatten().all(|x| *x == Q::from_integer(0.into()))
}

fn run_normalize(jet: &Path, k: i64, r: Option<u32>) -> Result<bool, Failure> {
    let wire: JetWire = read_json(jet)?;
    let mut f = wire.to_jet()?;
    if let Some(r) = r {
        if r > f.r() {
            return Err(Failure::Malformed(format!("requested order {r} exceeds the jet order {}", f.r())));
        }
        f = f.project(r)?;
    }
    let (l, f) = kill_level_minus_one(&f)?;
    if !level_zero_matches(&f, k) {
        return Err(Failure::Malformed(format!("level-0 part does not have the eigenvalues of I({k})")));
    }
    let res = sternberg_normalize(&f)?;
    let mut out = serde_json::to_value(NormalizationWire::from(&res)).expect("serializable");
    out["k"] = json!(k);
    if !l.is_identity() {
        out["L"] = serde_json::to_value(JetWire::from_jet(&l)).expect("serializable");
    }
    emit(&out);
    Ok(true)
}

fn run_reconstruct(low: &Path, k: i64, m: u32, r: u32) -> Result<bool, Failure> {
    let wire: JetWire = read_json(low)?;
    let low = wire.to_jet()?;
    let f = reconstruct_from_low_order(k, &low, m, r)?;
    emit(&JetWire::from_jet(&f));
    Ok(true)
}

fn run_word(lattice: &Path, word: &str) -> Result<bool, Failure> {
    let lat: LatticeWire = read_json(lattice)?;
    let lat = lat.to_lattice()?;
    let w: Word = word.parse()?;
    let g = evaluate_word(&w, &lat)?;
    emit(&json!({
        "word": w.to_string(),
        "element": ANElementWire::from_element(&g),
        "identity": g.is_identity(),
    }));
    Ok(true)
}

fn run_certificate(k: i64, lambda: &str, eps: &str, n: usize, lattice: Option<&Path>) -> Result<bool, Failure> {
    let lambda = parse_q(lambda)?;
    let eps = parse_q(eps)?;
    let lat = match lattice {
        Some(p) => {
            let w: LatticeWire = read_json(p)?;
            if w.k != k {
                return Err(Failure::Malformed(format!("lattice has k = {}, expected {k}", w.k)));
            }
            w.to_lattice()?
        }
        None if n == 0 => return Err(Failure::Malformed("need n >= 1".into())),
        None => LatticePresentation::standard(n, k),
    };
    let us = (1..=2 * lat.n)
        .map(|i| {
            let w: Word = format!("b{i}").parse()?;
            Ok(jet_u_vector(&phi_chart_jet(&w, &lat, 1)?))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let cert = contraction_certificate(k, &lambda, &eps, &us)?;
    emit(&CertificateWire::new(k, &lambda, &eps, &cert));
    Ok(cert.holds())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Verify(a) => run_verify(a),
        Command::Normalize { jet, k, r } => run_normalize(jet, *k, *r),
        Command::Reconstruct { low, k, m, r } => run_reconstruct(low, *k, *m, *r),
        Command::Word { lattice, word } => run_word(lattice, word),
        Command::Certificate { k, lambda, eps, n, lattice } => run_certificate(*k, lambda, eps, *n, lattice.as_deref()),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
