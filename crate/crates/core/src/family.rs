//! Spectral-parameter families of graded matrices and the grid verifier.

use alloc::borrow::Cow;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Result;
use crate::grading::SuperSpace;
use crate::matrix::GradedMatrix;
use crate::rational::Rational;
use crate::report::{IdentityResult, Witness};
use crate::sampling::{map_indexed, AffineForm, Grid, PoleBound, MAX_VARS};

/// Evaluates to an ordered list of factors whose product is the value.
pub type EvalFn = dyn Fn(&[Rational]) -> Result<Vec<GradedMatrix>> + Send + Sync;

/// A matrix-valued rational function of (u, v) with declared poles and
/// numerator degree bound. Clones share the evaluation rule.
///
/// A family may hand out its value as a product of sparse factors; the
/// verifier multiplies through them instead of forming the dense product.
#[derive(Clone)]
pub struct RationalOperatorFamily {
    space: SuperSpace,
    factors: usize,
    bound: PoleBound,
    label: String,
    eval: Arc<EvalFn>,
}

impl core::fmt::Debug for RationalOperatorFamily {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("RationalOperatorFamily")
            .field("label", &self.label)
            .field("factors", &self.factors)
            .field("bound", &self.bound)
            .finish()
    }
}

impl RationalOperatorFamily {
    pub fn new<F>(space: SuperSpace, factors: usize, bound: PoleBound, label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&[Rational]) -> Result<GradedMatrix> + Send + Sync + 'static,
    {
        Self::factored(space, factors, bound, label, move |p| Ok(alloc::vec![eval(p)?]))
    }

    /// A family whose value is the ordered product of the returned factors.
    pub fn factored<F>(space: SuperSpace, factors: usize, bound: PoleBound, label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&[Rational]) -> Result<Vec<GradedMatrix>> + Send + Sync + 'static,
    {
        Self { space, factors, bound, label: label.into(), eval: Arc::new(eval) }
    }

    pub fn constant(matrix: GradedMatrix, label: impl Into<String>) -> Self {
        let (space, factors) = (matrix.space(), matrix.factors());
        Self::new(space, factors, PoleBound::constant(), label, move |_| Ok(matrix.clone()))
    }

    /// `scalar(point) · 𝕀` for a scalar rational function with the given bound.
    pub fn scalar<F>(space: SuperSpace, factors: usize, bound: PoleBound, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&[Rational]) -> Result<Rational> + Send + Sync + 'static,
    {
        Self::new(space, factors, bound, label, move |p| {
            Ok(GradedMatrix::scalar(space, factors, f(p)?))
        })
    }

    pub fn space(&self) -> SuperSpace {
        self.space
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn bound(&self) -> &PoleBound {
        &self.bound
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn poles(&self) -> Vec<AffineForm> {
        self.bound.poles()
    }

    pub fn degree_bound(&self) -> [u32; MAX_VARS] {
        self.bound.degree()
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.bound.degree()[var] > 0 || self.bound.poles().iter().any(|f| f.depends_on(var))
    }

    /// Exact evaluation; errors naming the vanishing form at a pole.
    pub fn eval(&self, point: &[Rational]) -> Result<GradedMatrix> {
        let parts = self.eval_factors(point)?;
        let mut it = parts.into_iter();
        let first = it.next().unwrap_or_else(|| GradedMatrix::identity(self.space, self.factors));
        it.try_fold(first, |acc, f| acc.try_mul(&f))
    }

    /// The value as an ordered list of factors.
    pub fn eval_factors(&self, point: &[Rational]) -> Result<Vec<GradedMatrix>> {
        for form in self.bound.poles() {
            form.nonzero_at(point)?;
        }
        (self.eval)(point)
    }

    /// The same family acting on `on` inside `total` factors.
    pub fn embedded(&self, on: &[usize], total: usize) -> Self {
        let inner = self.clone();
        let on_v = on.to_vec();
        let label = alloc::format!("{}{:?}", self.label, on);
        Self::factored(self.space, total, self.bound.clone(), label, move |p| {
            inner.eval_factors(p)?.iter().map(|f| f.embed(&on_v, total)).collect()
        })
    }

    /// Partial super-transpose in `factor`.
    pub fn transposed(&self, factor: usize) -> Self {
        let inner = self.clone();
        let label = alloc::format!("{}^t{}", self.label, factor);
        Self::new(self.space, self.factors, self.bound.clone(), label, move |p| {
            inner.eval(p)?.super_transpose(factor)
        })
    }

    /// Pointwise product `self · rhs`.
    pub fn then(&self, rhs: &Self) -> Self {
        let (a, b) = (self.clone(), rhs.clone());
        let label = alloc::format!("{} {}", self.label, rhs.label);
        Self::factored(self.space, self.factors, self.bound.mul(&rhs.bound), label, move |p| {
            let mut parts = a.eval_factors(p)?;
            parts.extend(b.eval_factors(p)?);
            Ok(parts)
        })
    }

    fn same_rule(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.eval, &other.eval)
    }
}

/// `Π lhs = Π rhs` as an identity of rational functions.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub lhs: Vec<RationalOperatorFamily>,
    pub rhs: Vec<RationalOperatorFamily>,
}

impl Identity {
    pub fn new(name: impl Into<String>, lhs: Vec<RationalOperatorFamily>, rhs: Vec<RationalOperatorFamily>) -> Self {
        Self { name: name.into(), lhs, rhs }
    }

    /// Bound on the cleared difference.
    pub fn bound(&self) -> PoleBound {
        let l = PoleBound::product(self.lhs.iter().map(|f| f.bound()));
        let r = PoleBound::product(self.rhs.iter().map(|f| f.bound()));
        l.add(&r)
    }
}

/// The smallest shared grid (in `vars` variables) that is complete for every
/// identity: per-variable maximum degree, union of all poles.
pub fn shared_grid(identities: &[Identity], vars: usize) -> Grid {
    let mut degree = [0u32; MAX_VARS];
    let mut poles: Vec<AffineForm> = Vec::new();
    for id in identities {
        let b = id.bound();
        for (d, x) in degree.iter_mut().zip(b.degree()) {
            *d = (*d).max(x);
        }
        poles.extend(b.poles());
    }
    poles.sort();
    poles.dedup();
    Grid::tensor(&degree[..vars], &poles)
}

/// Per-axis memo of family values. Families depending on a single variable
/// are evaluated once per axis value; mixed families once per point.
struct Cache {
    families: Vec<RationalOperatorFamily>,
    /// `values[f][axis index]` for single-variable families, `[0]` for constants.
    values: Vec<Option<Vec<Result<Vec<GradedMatrix>>>>>,
    var_of: Vec<Option<usize>>,
}

impl Cache {
    fn build(identities: &[Identity], grid: &Grid) -> Self {
        let mut families: Vec<RationalOperatorFamily> = Vec::new();
        for id in identities {
            for f in id.lhs.iter().chain(&id.rhs) {
                if !families.iter().any(|g| g.same_rule(f)) {
                    families.push(f.clone());
                }
            }
        }
        let vars = grid.vars();
        let deps: Vec<Vec<usize>> = families
            .iter()
            .map(|f| (0..vars).filter(|&k| f.depends_on(k)).collect())
            .collect();
        let mut jobs: Vec<(usize, Option<usize>, usize)> = Vec::new();
        for (fi, d) in deps.iter().enumerate() {
            match d.len() {
                0 => jobs.push((fi, None, 0)),
                1 => jobs.extend((0..grid.axes()[d[0]].len()).map(|i| (fi, Some(d[0]), i))),
                _ => {}
            }
        }
        let computed = map_indexed(jobs.len(), |n| {
            let (fi, var, i) = jobs[n];
            let mut point: Vec<Rational> = grid.axes().iter().map(|a| a[0].clone()).collect();
            if let Some(k) = var {
                point[k] = grid.axes()[k][i].clone();
            }
            families[fi].eval_factors(&point)
        });
        let mut values: Vec<Option<Vec<Result<Vec<GradedMatrix>>>>> = deps
            .iter()
            .map(|d| if d.len() <= 1 { Some(Vec::new()) } else { None })
            .collect();
        for ((fi, _, _), v) in jobs.iter().zip(computed) {
            values[*fi].as_mut().expect("single-variable family").push(v);
        }
        let var_of = deps.iter().map(|d| if d.len() == 1 { Some(d[0]) } else { None }).collect();
        Self { families, values, var_of }
    }

    fn get(&self, f: &RationalOperatorFamily, pos: &[usize], point: &[Rational]) -> Result<Cow<'_, [GradedMatrix]>> {
        let fi = self.families.iter().position(|g| g.same_rule(f)).expect("cached family");
        match &self.values[fi] {
            Some(vals) => {
                let i = self.var_of[fi].map_or(0, |k| pos[k]);
                vals[i].as_ref().map(|v| Cow::Borrowed(v.as_slice())).map_err(Clone::clone)
            }
            None => f.eval_factors(point).map(Cow::Owned),
        }
    }

    /// The left-to-right product through every factor of every family.
    fn product(&self, fs: &[RationalOperatorFamily], pos: &[usize], point: &[Rational]) -> Result<GradedMatrix> {
        let mut acc: Option<GradedMatrix> = None;
        for f in fs {
            let got = self.get(f, pos, point)?;
            for m in got.iter() {
                acc = Some(match acc {
                    None => m.clone(),
                    Some(a) => a.try_mul(m)?,
                });
            }
        }
        Ok(acc.unwrap_or_else(|| GradedMatrix::identity(fs[0].space(), fs[0].factors())))
    }
}

fn compare(point: &[Rational], l: GradedMatrix, r: GradedMatrix) -> Option<Witness> {
    l.first_difference(&r).map(|entry| Witness::residual(point.to_vec(), entry))
}

/// Checks every identity at every grid point; the first failing point (in
/// grid order) becomes the witness.
pub fn verify_on_grid(identities: &[Identity], grid: &Grid) -> Vec<IdentityResult> {
    let cache = Cache::build(identities, grid);
    let per_point: Vec<Vec<Option<Witness>>> = map_indexed(grid.len(), |n| {
        let pos = grid.position(n);
        let point = grid.point(n);
        identities
            .iter()
            .map(|id| {
                let lhs = cache.product(&id.lhs, &pos, &point);
                let rhs = cache.product(&id.rhs, &pos, &point);
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) => compare(&point, l, r),
                    (Err(e), _) | (_, Err(e)) => Some(Witness::error(point.clone(), &e)),
                }
            })
            .collect()
    });
    identities
        .iter()
        .enumerate()
        .map(|(k, id)| {
            let w = per_point.iter().find_map(|ws| ws[k].clone());
            IdentityResult::new(id.name.clone(), w)
        })
        .collect()
}

/// Exact pointwise checks of matrix equalities that need no grid.
pub fn verify_exact(name: &str, lhs: &GradedMatrix, rhs: &GradedMatrix) -> IdentityResult {
    let w = match lhs.try_sub(rhs) {
        Ok(_) => lhs.first_difference(rhs).map(|d| Witness::residual(Vec::new(), d)),
        Err(e) => Some(Witness::error(Vec::new(), &e)),
    };
    IdentityResult::new(name, w)
}
