//! Suite selection and the batch runner: one [`CheckReport`] per
//! (spec, suite) cell, in a fixed order whatever the thread count.

use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use osp_yangian::{
    check_center, check_centrality, check_crossing, check_modes, check_order1, check_pk_algebra, check_pk_relations3,
    check_relcomm, check_rsrs, check_rtt, check_s_eq_cb, check_unitarity, check_ybe, CheckReport, Generator,
    MonodromyRep, RMatrix, Rational, SuperSpace,
};
use rayon::prelude::*;

use crate::formats::{to_pretty, ReportJson};
use crate::UsageError;

/// Mode orders r, s run over −2..=MODE_ORDER_MAX in the `modes` suite.
pub const MODE_ORDER_MAX: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Pk,
    Pk3,
    Ybe,
    Crossing,
    Unitarity,
    Rtt,
    Relcomm,
    Modes,
    Center,
    Centrality,
    Order1,
    RsrsS,
    RsrsB,
    SEqCb,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Pk,
        Suite::Pk3,
        Suite::Ybe,
        Suite::Crossing,
        Suite::Unitarity,
        Suite::Rtt,
        Suite::Relcomm,
        Suite::Modes,
        Suite::Center,
        Suite::Centrality,
        Suite::Order1,
        Suite::RsrsS,
        Suite::RsrsB,
        Suite::SEqCb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pk => "pk",
            Suite::Pk3 => "pk3",
            Suite::Ybe => "ybe",
            Suite::Crossing => "crossing",
            Suite::Unitarity => "unitarity",
            Suite::Rtt => "rtt",
            Suite::Relcomm => "relcomm",
            Suite::Modes => "modes",
            Suite::Center => "center",
            Suite::Centrality => "centrality",
            Suite::Order1 => "order1",
            Suite::RsrsS => "rsrs-S",
            Suite::RsrsB => "rsrs-B",
            Suite::SEqCb => "S-eq-cB",
        }
    }

    /// Whether the suite runs on a monodromy representation.
    pub fn needs_rep(self) -> bool {
        self >= Suite::Rtt
    }

    /// Parses a comma-separated list; `all` selects every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>, UsageError> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(UsageError::new("suites", "at least one suite is required"));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| UsageError::new("suites", format!("unknown suite {s:?}")))
    }
}

/// Everything one `verify` invocation runs.
#[derive(Clone, Debug)]
pub struct Selection {
    pub specs: Vec<SuperSpace>,
    pub suites: Vec<Suite>,
    pub sites: usize,
    pub inhomogeneities: Option<Vec<Rational>>,
    pub n_max: usize,
    pub kappa_override: Option<Rational>,
    pub jobs: usize,
}

impl Selection {
    pub fn new(specs: Vec<SuperSpace>, suites: Vec<Suite>) -> Self {
        Self { specs, suites, sites: 1, inhomogeneities: None, n_max: 6, kappa_override: None, jobs: 1 }
    }

    pub fn with_sites(mut self, sites: usize) -> Self {
        self.sites = sites;
        self
    }

    pub fn with_inhomogeneities(mut self, sites: Vec<Rational>) -> Self {
        self.sites = sites.len();
        self.inhomogeneities = Some(sites);
        self
    }

    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn with_kappa(mut self, kappa: Rational) -> Self {
        self.kappa_override = Some(kappa);
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn rmatrix(&self, space: SuperSpace) -> RMatrix {
        match &self.kappa_override {
            Some(k) => RMatrix::with_kappa(space, k.clone()),
            None => RMatrix::new(space),
        }
    }

    /// The representation used for `space`.
    pub fn representation(&self, space: SuperSpace) -> Result<MonodromyRep, UsageError> {
        let r = self.rmatrix(space);
        let built = match &self.inhomogeneities {
            Some(sites) => MonodromyRep::new(r, sites.clone()),
            None => MonodromyRep::with_default_sites(r, self.sites),
        };
        built.map_err(|e| UsageError::new("inhomogeneities", format!("{e} for {space}")))
    }

    /// Checks every precondition up front, so that a bad selection is a
    /// usage error rather than a column of failed cells.
    pub fn validate(&self) -> Result<(), UsageError> {
        if self.specs.is_empty() {
            return Err(UsageError::new("M", "at least one spec is required"));
        }
        if self.suites.is_empty() {
            return Err(UsageError::new("suites", "at least one suite is required"));
        }
        if self.sites == 0 {
            return Err(UsageError::new("sites", "at least one site is required"));
        }
        if self.jobs == 0 {
            return Err(UsageError::new("jobs", "must be positive"));
        }
        let need = (MODE_ORDER_MAX + 2) as usize;
        if self.suites.contains(&Suite::Modes) && self.n_max < need {
            return Err(UsageError::new("nmax", format!("the modes suite needs at least {need} (got {})", self.n_max)));
        }
        if self.suites.iter().any(|s| s.needs_rep()) {
            for &s in &self.specs {
                self.representation(s)?;
            }
        }
        Ok(())
    }

    fn cells(&self) -> Vec<(SuperSpace, Suite)> {
        let mut specs = self.specs.clone();
        specs.sort();
        specs.dedup();
        let mut suites = self.suites.clone();
        suites.sort();
        suites.dedup();
        specs.iter().flat_map(|&sp| suites.iter().map(move |&su| (sp, su))).collect()
    }
}

/// The outcome of one (spec, suite) cell.
#[derive(Clone, Debug)]
pub struct Cell {
    pub suite: Suite,
    pub report: CheckReport,
    pub representation: Option<MonodromyRep>,
    pub wall: Duration,
}

impl Cell {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    pub fn json(&self) -> ReportJson {
        ReportJson::new(&self.report, self.representation.as_ref())
    }

    /// `M3-N0-p1_ybe.json` style names.
    pub fn file_name(&self) -> String {
        let s = self.report.space;
        let t = if s.theta0() > 0 { "p1" } else { "m1" };
        format!("M{}-N{}-{}_{}.json", s.m(), s.n(), t, self.suite)
    }
}

fn run_cell(sel: &Selection, space: SuperSpace, suite: Suite) -> Cell {
    let start = Instant::now();
    let rep = suite.needs_rep().then(|| sel.representation(space).expect("validated"));
    let r = sel.rmatrix(space);
    let report = match suite {
        Suite::Pk => check_pk_algebra(space),
        Suite::Pk3 => check_pk_relations3(space),
        Suite::Ybe => check_ybe(&r),
        Suite::Crossing => check_crossing(&r),
        Suite::Unitarity => check_unitarity(&r),
        Suite::Rtt => check_rtt(rep.as_ref().expect("rep")),
        Suite::Relcomm => check_relcomm(rep.as_ref().expect("rep")),
        Suite::Modes => check_modes(rep.as_ref().expect("rep"), MODE_ORDER_MAX, MODE_ORDER_MAX, sel.n_max)
            .expect("validated truncation"),
        Suite::Center => check_center(rep.as_ref().expect("rep")),
        Suite::Centrality => check_centrality(rep.as_ref().expect("rep")),
        Suite::Order1 => check_order1(rep.as_ref().expect("rep")),
        Suite::RsrsS => check_rsrs(rep.as_ref().expect("rep"), Generator::Twisted),
        Suite::RsrsB => check_rsrs(rep.as_ref().expect("rep"), Generator::Reflection),
        Suite::SEqCb => check_s_eq_cb(rep.as_ref().expect("rep")),
    };
    Cell { suite, report, representation: rep, wall: start.elapsed() }
}

/// Runs every cell on a pool of `jobs` threads. Cells come back sorted by
/// spec, then suite.
pub fn run(sel: &Selection) -> Result<Vec<Cell>, UsageError> {
    sel.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(sel.jobs)
        .build()
        .map_err(|e| UsageError::new("jobs", e.to_string()))?;
    let cells = sel.cells();
    Ok(pool.install(|| cells.par_iter().map(|&(sp, su)| run_cell(sel, sp, su)).collect()))
}

pub fn all_passed(cells: &[Cell]) -> bool {
    cells.iter().all(Cell::passed)
}

/// Fixed-width summary: spec, suite, verdict, identities, grid size, wall time.
pub fn table(cells: &[Cell]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<26} {:<11} {:<6} {:>10} {:>6} {:>10}", "spec", "suite", "result", "identities", "grid", "time");
    for c in cells {
        let passed = c.report.results.iter().filter(|r| r.pass).count();
        let _ = writeln!(
            out,
            "{:<26} {:<11} {:<6} {:>10} {:>6} {:>9.2}s",
            c.report.space.to_string(),
            c.suite.name(),
            if c.passed() { "PASS" } else { "FAIL" },
            format!("{passed}/{}", c.report.results.len()),
            c.report.grid.len(),
            c.wall.as_secs_f64()
        );
        for f in c.report.failures() {
            let _ = writeln!(out, "    failed: {}", f.identity);
            if let Some(w) = &f.witness {
                let json = crate::formats::WitnessJson::from(w);
                let _ = writeln!(out, "    witness: {}", serde_json::to_string(&json).unwrap_or_default());
            }
        }
        for n in c.report.notes.iter().filter(|n| n.starts_with("KAPPA OVERRIDDEN")) {
            let _ = writeln!(out, "    {n}");
        }
    }
    let failed = cells.iter().filter(|c| !c.passed()).count();
    let _ = writeln!(out, "{} cell(s), {} failed", cells.len(), failed);
    out
}

/// All reports as one pretty-printed JSON array, in cell order.
pub fn reports_json(cells: &[Cell]) -> String {
    let all: Vec<ReportJson> = cells.iter().map(Cell::json).collect();
    to_pretty(&all)
}

/// One JSON file per cell under `dir`.
pub fn write_reports(dir: &Path, cells: &[Cell]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for c in cells {
        std::fs::write(dir.join(c.file_name()), to_pretty(&c.json()))?;
    }
    Ok(())
}
