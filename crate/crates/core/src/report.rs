//! Machine-readable verdicts of identity suites.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::grading::SuperSpace;
use crate::rational::Rational;
use crate::sampling::Grid;

/// Where an identity failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Sample point (spectral parameters, or mode orders).
    pub point: Vec<Rational>,
    /// 1-based (row, column) multi-indices of a nonzero residual entry.
    pub entry: Option<(Vec<usize>, Vec<usize>)>,
    /// The residual value LHS − RHS at that entry.
    pub value: Option<Rational>,
    /// Extra context (index quadruple, evaluation error, …).
    pub detail: Option<String>,
}

impl Witness {
    pub fn residual(point: Vec<Rational>, diff: (Vec<usize>, Vec<usize>, Rational)) -> Self {
        let (row, col, value) = diff;
        Self { point, entry: Some((row, col)), value: Some(value), detail: None }
    }

    pub fn error(point: Vec<Rational>, err: &Error) -> Self {
        Self { point, entry: None, value: None, detail: Some(alloc::format!("{err}")) }
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(match self.detail.take() {
            Some(d) => alloc::format!("{detail}; {d}"),
            None => detail,
        });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityResult {
    pub identity: String,
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl IdentityResult {
    pub fn new(identity: impl Into<String>, witness: Option<Witness>) -> Self {
        Self { identity: identity.into(), pass: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub suite: String,
    pub space: SuperSpace,
    pub kappa: Rational,
    pub kappa_overridden: bool,
    /// Sample points; empty for purely algebraic suites.
    pub grid: Vec<Vec<Rational>>,
    /// Per-variable degree bounds the grid was sized for.
    pub degree_bounds: Vec<u32>,
    pub results: Vec<IdentityResult>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, space: SuperSpace, kappa: Rational) -> Self {
        let kappa_overridden = kappa != space.kappa();
        let mut notes = Vec::new();
        if kappa_overridden {
            notes.push(alloc::format!(
                "KAPPA OVERRIDDEN: using {} instead of {}",
                kappa,
                space.kappa()
            ));
        }
        if space.is_degenerate() {
            notes.push(String::from(
                "degenerate space: so(1) or kappa = 0 (the P and K poles of R(u) coincide)",
            ));
        }
        Self {
            suite: suite.into(),
            space,
            kappa,
            kappa_overridden,
            grid: Vec::new(),
            degree_bounds: Vec::new(),
            results: Vec::new(),
            notes,
        }
    }

    pub fn with_grid(mut self, grid: &Grid) -> Self {
        self.grid = grid.points();
        self.degree_bounds = grid.degree().to_vec();
        self
    }

    pub fn push(&mut self, result: IdentityResult) {
        self.results.push(result);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        !self.results.is_empty() && self.results.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityResult> {
        self.results.iter().filter(|r| !r.pass)
    }

    pub fn result(&self, identity: &str) -> Option<&IdentityResult> {
        self.results.iter().find(|r| r.identity == identity)
    }

    /// Appends another report's results; grids must agree or `other`'s is
    /// dropped (its notes say which grid it used).
    pub fn merge(mut self, other: CheckReport) -> Self {
        if self.grid.is_empty() {
            self.grid = other.grid;
            self.degree_bounds = other.degree_bounds;
        }
        self.results.extend(other.results);
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
        self
    }
}
