use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use osp_yangian::{Rational, SuperSpace};
use osp_yangian_cli::export::{export, Target};
use osp_yangian_cli::runner::{self, Selection, Suite};
use osp_yangian_cli::{FormatError, UsageError};

#[derive(Parser)]
#[command(name = "yangian", version, about = "Exact verification of the so/sp/osp Yangian R-matrix identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity suites and report per (spec, suite) cell.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated suites, or `all`.
        #[arg(long, default_value = "all")]
        suites: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also write one JSON report per cell into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Write a matrix (or the mode series) as exact sparse JSON.
    Export {
        #[command(flatten)]
        common: Common,
        /// P, K, R, T, S, B or modes.
        #[arg(long)]
        which: String,
        /// Spectral parameter for R, T, S and B.
        #[arg(long, allow_hyphen_values = true)]
        u0: Option<String>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Common {
    /// Even-block size; a comma-separated list runs several specs.
    #[arg(long = "M", value_name = "M")]
    m: String,
    /// Odd-block size (must be even); list zipped with --M.
    #[arg(long = "N", value_name = "N")]
    n: String,
    /// +1 or -1; list zipped with --M, or a single value for all.
    #[arg(long, allow_hyphen_values = true, default_value = "+1")]
    theta0: String,
    /// Number of sites L in the monodromy.
    #[arg(long, default_value_t = 1)]
    sites: usize,
    /// Comma-separated site parameters; overrides --sites.
    #[arg(long, allow_hyphen_values = true)]
    inhomogeneities: Option<String>,
    /// Truncation order of the mode expansion.
    #[arg(long, default_value_t = 6)]
    nmax: usize,
    /// Replace κ (negative controls only).
    #[arg(long, allow_hyphen_values = true)]
    kappa_override: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn list<T>(field: &str, s: &str, parse: impl Fn(&str) -> Option<T>) -> Result<Vec<T>, UsageError> {
    s.split(',')
        .map(str::trim)
        .map(|x| parse(x).ok_or_else(|| UsageError::new(field, format!("cannot parse {x:?}"))))
        .collect()
}

fn rational(field: &str, s: &str) -> Result<Rational, UsageError> {
    s.trim().parse().map_err(|_| UsageError::new(field, format!("not an exact rational: {s:?}")))
}

impl Common {
    fn specs(&self) -> Result<Vec<SuperSpace>, UsageError> {
        let ms = list("M", &self.m, |x| x.parse::<usize>().ok())?;
        let ns = list("N", &self.n, |x| x.parse::<usize>().ok())?;
        let ts = list("theta0", &self.theta0, |x| x.trim_start_matches('+').parse::<i64>().ok())?;
        if ns.len() != ms.len() {
            return Err(UsageError::new("N", format!("{} value(s) for {} M value(s)", ns.len(), ms.len())));
        }
        if ts.len() != 1 && ts.len() != ms.len() {
            return Err(UsageError::new("theta0", format!("{} value(s) for {} M value(s)", ts.len(), ms.len())));
        }
        ms.iter()
            .zip(&ns)
            .enumerate()
            .map(|(k, (&m, &n))| {
                let t = if ts.len() == 1 { ts[0] } else { ts[k] };
                SuperSpace::new(m, n, t).map_err(|e| {
                    let field = match e {
                        osp_yangian::Error::OddFermionicBlock(_) => "N",
                        osp_yangian::Error::InvalidTheta0(_) => "theta0",
                        _ => "M",
                    };
                    UsageError::new(field, e)
                })
            })
            .collect()
    }

    fn selection(&self, suites: Vec<Suite>, jobs: usize) -> Result<Selection, UsageError> {
        let mut sel = Selection::new(self.specs()?, suites).with_sites(self.sites).with_n_max(self.nmax).with_jobs(jobs);
        if let Some(s) = &self.inhomogeneities {
            let sites = s.split(',').map(|x| rational("inhomogeneities", x)).collect::<Result<Vec<_>, _>>()?;
            sel = sel.with_inhomogeneities(sites);
        }
        if let Some(k) = &self.kappa_override {
            sel = sel.with_kappa(rational("kappa-override", k)?);
        }
        Ok(sel)
    }
}

enum Failure {
    Usage(UsageError),
    Other(anyhow::Error),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn verify(common: &Common, suites: &str, format: Format, out: Option<&PathBuf>, jobs: usize) -> Result<bool, Failure> {
    let sel = common.selection(Suite::parse_list(suites)?, jobs)?;
    let cells = runner::run(&sel)?;
    match format {
        Format::Text => print!("{}", runner::table(&cells)),
        Format::Json => print!("{}", runner::reports_json(&cells)),
    }
    if let Some(dir) = out {
        runner::write_reports(dir, &cells).with_context(|| format!("writing reports to {}", dir.display()))?;
    }
    Ok(runner::all_passed(&cells))
}

fn export_cmd(common: &Common, which: &str, u0: Option<&str>, out: Option<&PathBuf>) -> Result<bool, Failure> {
    let target: Target = which.parse()?;
    let sel = common.selection(vec![Suite::Pk], 1)?;
    let u0 = u0.map(|s| rational("u0", s)).transpose()?;
    let json = match export(&sel, target, u0.as_ref()) {
        Ok(s) => s,
        Err(FormatError::Usage(e)) => return Err(e.into()),
        Err(FormatError::Core(e)) => return Err(UsageError::new("u0", e).into()),
    };
    match out {
        Some(path) => std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{json}"),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify { common, suites, format, out, jobs } => verify(common, suites, *format, out.as_ref(), *jobs),
        Command::Export { common, which, u0, out } => export_cmd(common, which, u0.as_deref(), out.as_ref()),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
