//! Evaluation and monodromy representations T(u) = R₀L(u−a_L)···R₀₁(u−a₁)
//! of the RTT algebra, and the identities they satisfy.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::family::{Identity, RationalOperatorFamily};
use crate::grading::SuperSpace;
use crate::matrix::{super_commutator, GradedMatrix, LinearSpan};
use crate::rational::Rational;
use crate::report::{CheckReport, IdentityResult, Witness};
use crate::rmatrix::{self, RMatrix};
use crate::sampling::{map_indexed, AffineForm, Grid, PoleBound};

/// Sign (as a bit) relating the coefficient X of `E_ij ⊗ X` in the matrix T
/// to the generator T^{ij}: T^{ij} = (−1)^bit X.
pub(crate) type EntrySign = fn(&SuperSpace, usize, usize) -> u8;

/// T^{ij} = (−1)^{[i][j]} θᵢθⱼ X^{ij}.
fn generator_sign(space: &SuperSpace, i: usize, j: usize) -> u8 {
    let theta = space.theta(i).expect("index in range") * space.theta(j).expect("index in range");
    (space.parity(i).expect("index in range") & space.parity(j).expect("index in range")) ^ u8::from(theta < 0)
}

pub(crate) const ENTRY_SIGN: EntrySign = generator_sign;

/// An L-site monodromy on aux ⊗ V^{⊗L}, aux first.
#[derive(Clone, Debug)]
pub struct MonodromyRep {
    r: RMatrix,
    sites: Vec<Rational>,
}

/// Embedded P and K for every site in one factor layout.
#[derive(Clone)]
struct Layout {
    id: GradedMatrix,
    p: Vec<GradedMatrix>,
    k: Vec<GradedMatrix>,
}

impl MonodromyRep {
    /// Validates that the inhomogeneities are distinct and that no two differ
    /// by ±1 or ±κ.
    pub fn new(r: RMatrix, sites: Vec<Rational>) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::InvalidRepresentation(String::from("at least one site is required")));
        }
        for (x, a) in sites.iter().enumerate() {
            for b in &sites[x + 1..] {
                if let Some(why) = site_conflict(a, b, r.kappa()) {
                    return Err(Error::InvalidRepresentation(alloc::format!(
                        "inhomogeneities {a} and {b} {why}"
                    )));
                }
            }
        }
        Ok(Self { r, sites })
    }

    /// `L` sites at 0, 1/3, −2/5, 3/7, … skipping values that would violate
    /// the guards.
    pub fn with_default_sites(r: RMatrix, sites: usize) -> Result<Self> {
        let mut chosen: Vec<Rational> = Vec::with_capacity(sites);
        let mut k: i64 = 0;
        while chosen.len() < sites {
            let a = if k == 0 {
                Rational::zero()
            } else {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                Rational::new(sign * k, 2 * k + 1)
            };
            if chosen.iter().all(|b| site_conflict(&a, b, r.kappa()).is_none()) {
                chosen.push(a);
            }
            k += 1;
        }
        Self::new(r, chosen)
    }

    pub fn space(&self) -> SuperSpace {
        self.r.space()
    }

    pub fn rmatrix(&self) -> &RMatrix {
        &self.r
    }

    pub fn kappa(&self) -> &Rational {
        self.r.kappa()
    }

    pub fn inhomogeneities(&self) -> &[Rational] {
        &self.sites
    }

    pub fn sites(&self) -> usize {
        self.sites.len()
    }

    /// A single site, as a representation of its own.
    pub fn site(&self, k: usize) -> Self {
        Self { r: self.r.clone(), sites: alloc::vec![self.sites[k].clone()] }
    }

    fn layout(&self, aux: usize, total: usize) -> Layout {
        let l = self.sites();
        let first = total - l + 1;
        let embed = |m: &GradedMatrix, k: usize| m.embed(&[aux, first + k], total).expect("valid layout");
        Layout {
            id: GradedMatrix::identity(self.space(), total),
            p: (0..l).map(|k| embed(self.r.p(), k)).collect(),
            k: (0..l).map(|k| embed(self.r.k(), k)).collect(),
        }
    }

    /// R-factors of T(x) in product order: site L first.
    fn factors(&self, layout: &Layout, x: &Rational) -> Result<Vec<GradedMatrix>> {
        (0..self.sites())
            .rev()
            .map(|k| self.r.combine(&layout.id, &layout.p[k], &layout.k[k], &(x - &self.sites[k])))
            .collect()
    }

    fn product(&self, layout: &Layout, x: &Rational) -> Result<GradedMatrix> {
        let mut parts = self.factors(layout, x)?.into_iter();
        let first = parts.next().expect("at least one site");
        parts.try_fold(first, |acc, f| acc.try_mul(&f))
    }

    /// T(u) on aux ⊗ quantum.
    pub fn monodromy(&self, u: &Rational) -> Result<GradedMatrix> {
        self.product(&self.layout(1, self.sites() + 1), u)
    }

    /// Poles and degree of T(ℓ).
    pub fn bound_at(&self, arg: &AffineForm) -> PoleBound {
        let parts: Vec<PoleBound> = self
            .sites
            .iter()
            .map(|a| PoleBound::r_factor(&arg.shift(&-a), self.kappa()))
            .collect();
        PoleBound::product(&parts)
    }

    /// ℓ ↦ T(ℓ) with the auxiliary space at factor `aux` and the quantum
    /// space on the last L of `total` factors.
    pub fn family_at(&self, arg: &AffineForm, aux: usize, total: usize) -> RationalOperatorFamily {
        let layout = self.layout(aux, total);
        let me = self.clone();
        let form = arg.clone();
        RationalOperatorFamily::factored(
            self.space(),
            total,
            self.bound_at(arg),
            alloc::format!("T{aux}({arg})"),
            move |pt| me.factors(&layout, &form.eval(pt)),
        )
    }

    /// u ↦ T(u) on aux ⊗ quantum.
    pub fn family(&self) -> RationalOperatorFamily {
        self.family_at(&AffineForm::u(), 1, self.sites() + 1)
    }

    /// The quantum-space operator T^{ij} read off a matrix on aux ⊗ quantum.
    pub fn entry(&self, t: &GradedMatrix, i: usize, j: usize) -> Result<GradedMatrix> {
        entry_with(t, i, j, ENTRY_SIGN)
    }

    /// All (M+N)² quantum-space entries, row-major.
    pub fn entries(&self, t: &GradedMatrix) -> Result<Entries> {
        Entries::read(t, ENTRY_SIGN)
    }

    /// Taylor coefficients of T(u) in u⁻¹ up to order `n_max`.
    pub fn mode_expand(&self, n_max: usize) -> ModeSeries {
        let layout = self.layout(1, self.sites() + 1);
        let mut acc: Option<Vec<GradedMatrix>> = None;
        for k in (0..self.sites()).rev() {
            let a = &self.sites[k];
            let shifted = a - self.kappa();
            let site: Vec<GradedMatrix> = (0..=n_max)
                .map(|n| {
                    if n == 0 {
                        layout.id.clone()
                    } else {
                        let e = (n - 1) as u32;
                        &layout.p[k].scale(&a.pow(e)) - &layout.k[k].scale(&shifted.pow(e))
                    }
                })
                .collect();
            acc = Some(match acc {
                None => site,
                Some(prev) => (0..=n_max)
                    .map(|n| {
                        (0..=n).fold(GradedMatrix::zero(self.space(), self.sites() + 1), |s, m| {
                            &s + &(&prev[m] * &site[n - m])
                        })
                    })
                    .collect(),
            });
        }
        ModeSeries { space: self.space(), n_max, modes: acc.expect("at least one site") }
    }

    fn report(&self, suite: &str) -> CheckReport {
        let mut report = CheckReport::new(suite, self.space(), self.kappa().clone());
        let sites: Vec<String> = self.sites.iter().map(|a| alloc::format!("{a}")).collect();
        report.note(alloc::format!(
            "representation: {} site(s), inhomogeneities [{}]",
            self.sites(),
            sites.join(", ")
        ));
        report
    }
}

fn site_conflict(a: &Rational, b: &Rational, kappa: &Rational) -> Option<&'static str> {
    let d = a - b;
    if d.is_zero() {
        Some("coincide")
    } else if d == Rational::one() || d == -Rational::one() {
        Some("differ by 1")
    } else if &d == kappa || d == -kappa {
        Some("differ by kappa")
    } else {
        None
    }
}

pub(crate) fn entry_with(t: &GradedMatrix, i: usize, j: usize, sign: EntrySign) -> Result<GradedMatrix> {
    let s = t.space();
    let x = t.leading_block(i, j)?;
    s.parity(i)?;
    s.parity(j)?;
    let bit = sign(&s, i, j);
    Ok(if bit == 1 { -&x } else { x })
}

/// The (M+N)² entries T^{ij} of one matrix value, as quantum-space operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entries {
    dim: usize,
    blocks: Vec<GradedMatrix>,
}

impl Entries {
    fn read(t: &GradedMatrix, sign: EntrySign) -> Result<Self> {
        let d = t.space().dim();
        let mut blocks = Vec::with_capacity(d * d);
        for i in 1..=d {
            for j in 1..=d {
                blocks.push(entry_with(t, i, j, sign)?);
            }
        }
        Ok(Self { dim: d, blocks })
    }

    fn zero_like(&self) -> Self {
        let z = GradedMatrix::zero(self.blocks[0].space(), self.blocks[0].factors());
        Self { dim: self.dim, blocks: alloc::vec![z; self.blocks.len()] }
    }

    /// T^{ij}, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &GradedMatrix {
        &self.blocks[(i - 1) * self.dim + j - 1]
    }
}

/// Truncated u⁻¹ expansion of a monodromy: T(u) = Σ_{n ≤ n_max} T₍ₙ₎ u⁻ⁿ + O(u^{−n_max−1}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeSeries {
    space: SuperSpace,
    n_max: usize,
    modes: Vec<GradedMatrix>,
}

impl ModeSeries {
    pub fn space(&self) -> SuperSpace {
        self.space
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn modes(&self) -> &[GradedMatrix] {
        &self.modes
    }

    /// T₍ₙ₎; zero for n < 0, an error beyond the truncation.
    pub fn mode(&self, n: i64) -> Result<GradedMatrix> {
        if n < 0 {
            return Ok(GradedMatrix::zero(self.space, self.modes[0].factors()));
        }
        self.modes
            .get(n as usize)
            .cloned()
            .ok_or(Error::Truncation { needed: n as usize, n_max: self.n_max })
    }

    /// Σ_{n ≤ n_max} T₍ₙ₎ u⁻ⁿ.
    pub fn partial_sum(&self, u: &Rational) -> Result<GradedMatrix> {
        let inv = u.recip().ok_or_else(|| Error::Pole {
            form: String::from("u"),
            point: String::from("(0)"),
        })?;
        let mut acc = GradedMatrix::zero(self.space, self.modes[0].factors());
        let mut w = Rational::one();
        for m in &self.modes {
            acc = &acc + &m.scale(&w);
            w = &w * &inv;
        }
        Ok(acc)
    }
}

/// The first-order coefficient operator of a single site at a = 0 is P − K.
fn parity(space: SuperSpace, i: usize) -> u8 {
    space.parity(i).expect("index in range")
}

fn sgn(bit: u8) -> Rational {
    Rational::sign(bit)
}

fn theta(space: SuperSpace, i: usize) -> Rational {
    Rational::from_integer(space.theta(i).expect("index in range") as i64)
}

fn conj(space: SuperSpace, i: usize) -> usize {
    space.conjugate_index(i).expect("index in range")
}

/// R₁₂(u−v) T₁(u) T₂(v) = T₂(v) T₁(u) R₁₂(u−v) on aux ⊗ aux ⊗ quantum.
pub fn check_rtt(rep: &MonodromyRep) -> CheckReport {
    let total = rep.sites() + 2;
    let (u, v) = (AffineForm::u(), AffineForm::v());
    let r12 = rep.rmatrix().family_at(&u.sub(&v), &[1, 2], total);
    let t1 = rep.family_at(&u, 1, total);
    let t2 = rep.family_at(&v, 2, total);
    let ids = alloc::vec![Identity::new(
        "R12(u-v) T1(u) T2(v) = T2(v) T1(u) R12(u-v)",
        alloc::vec![r12.clone(), t1.clone(), t2.clone()],
        alloc::vec![t2, t1, r12],
    )];
    rmatrix::run(rep.report("rtt"), &ids, 2)
}

/// Bracket reading used for the entrywise relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Bracket {
    Super,
    #[cfg_attr(not(test), allow(dead_code))]
    Plain,
}

fn bracket(kind: Bracket, x: &GradedMatrix, px: u8, y: &GradedMatrix, py: u8) -> GradedMatrix {
    match kind {
        Bracket::Super => super_commutator(x, px, y, py),
        Bracket::Plain => &(x * y) - &(y * x),
    }
}

/// Residual LHS − RHS of the entrywise exchange relation for one quadruple.
#[allow(clippy::too_many_arguments)]
fn relcomm_residual(
    space: SuperSpace,
    kappa: &Rational,
    (i, j, k, l): (usize, usize, usize, usize),
    u: &Rational,
    v: &Rational,
    tu: &Entries,
    tv: &Entries,
    kind: Bracket,
) -> (GradedMatrix, GradedMatrix) {
    let d = space.dim();
    let pa = |a: usize| parity(space, a);
    let lhs = bracket(kind, tu.get(i, j), pa(i) ^ pa(j), tv.get(k, l), pa(k) ^ pa(l));
    let w = (u - v).recip().expect("off the grid poles");
    let w_k = (&(u - v) + kappa).recip().expect("off the grid poles");
    let s = sgn(pa(k) & pa(i) ^ pa(k) & pa(j) ^ pa(i) & pa(j));
    let mut rhs = (&(tv.get(k, j) * tu.get(i, l)) - &(tu.get(k, j) * tv.get(i, l))).scale(&(&s * &w));
    let mut sum = GradedMatrix::zero(space, lhs.factors());
    if i == conj(space, k) {
        for p in 1..=d {
            let c = &sgn(pa(p) ^ pa(j) & pa(i) ^ pa(j) & pa(p)) * &(&theta(space, conj(space, i)) * &theta(space, conj(space, p)));
            sum = &sum + &(tu.get(p, j) * tv.get(conj(space, p), l)).scale(&c);
        }
    }
    if j == conj(space, l) {
        for p in 1..=d {
            let c = &sgn(pa(k) & pa(j) ^ pa(i) & pa(k) ^ pa(i) & pa(p)) * &(&theta(space, conj(space, p)) * &theta(space, conj(space, j)));
            sum = &sum - &(tv.get(k, conj(space, p)) * tu.get(i, p)).scale(&c);
        }
    }
    rhs = &rhs + &sum.scale(&w_k);
    (lhs, rhs)
}

fn quadruples(d: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::with_capacity(d.pow(4));
    for i in 1..=d {
        for j in 1..=d {
            for k in 1..=d {
                for l in 1..=d {
                    out.push((i, j, k, l));
                }
            }
        }
    }
    out
}

fn relcomm_bound(rep: &MonodromyRep) -> PoleBound {
    let (u, v) = (AffineForm::u(), AffineForm::v());
    let both = rep.bound_at(&u).mul(&rep.bound_at(&v));
    let diff = u.sub(&v);
    let first = both.mul(&PoleBound::rational_in(&diff, 0, alloc::vec![diff.clone()]));
    let second = both.mul(&PoleBound::rational_in(&diff, 0, alloc::vec![diff.shift(rep.kappa())]));
    both.add(&first).add(&second)
}

fn relcomm_with(rep: &MonodromyRep, sign: EntrySign, kind: Bracket) -> CheckReport {
    let space = rep.space();
    let grid = Grid::for_bound(&relcomm_bound(rep), 2);
    let axes = grid.axes();
    let read = |x: &Rational| rep.monodromy(x).and_then(|t| Entries::read(&t, sign));
    let cache: Vec<Vec<Result<Entries>>> = axes.iter().map(|a| map_indexed(a.len(), |n| read(&a[n]))).collect();
    let quads = quadruples(space.dim());
    let per_point: Vec<Vec<Option<Witness>>> = map_indexed(grid.len(), |n| {
        let pos = grid.position(n);
        let point = grid.point(n);
        let (tu, tv) = match (&cache[0][pos[0]], &cache[1][pos[1]]) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return alloc::vec![Some(Witness::error(point.clone(), e)); quads.len()],
        };
        quads
            .iter()
            .map(|&q| {
                let (lhs, rhs) = relcomm_residual(space, rep.kappa(), q, &point[0], &point[1], tu, tv, kind);
                lhs.first_difference(&rhs).map(|d| Witness::residual(point.clone(), d))
            })
            .collect()
    });
    let mut report = rep.report("relcomm").with_grid(&grid);
    report.note("entries T^{ij} are quantum-space operators; brackets are super-commutators with parity [i]+[j]");
    for (x, &(i, j, k, l)) in quads.iter().enumerate() {
        let w = per_point.iter().find_map(|ws| ws[x].clone());
        report.push(IdentityResult::new(alloc::format!("[T{i}{j}(u), T{k}{l}(v)]"), w));
    }
    report
}

/// The entrywise exchange relation for every index quadruple (i, j, k, l),
/// identically in (u, v).
pub fn check_relcomm(rep: &MonodromyRep) -> CheckReport {
    relcomm_with(rep, ENTRY_SIGN, Bracket::Super)
}

/// Residual of the mode relation at orders (r, s) for one quadruple.
fn modes_residual(
    space: SuperSpace,
    kappa: &Rational,
    (i, j, k, l): (usize, usize, usize, usize),
    (r, s): (i64, i64),
    t: &[Entries],
    zero: &Entries,
) -> (GradedMatrix, GradedMatrix) {
    let d = space.dim();
    let pa = |a: usize| parity(space, a);
    let at = |n: i64| if n < 0 { zero } else { &t[n as usize] };
    let (pij, pkl) = (pa(i) ^ pa(j), pa(k) ^ pa(l));
    let br = |x: i64, y: i64| super_commutator(at(x).get(i, j), pij, at(y).get(k, l), pkl);
    let lhs = &br(r + 2, s) + &br(r, s + 2);
    let mut rhs = &(&br(r + 1, s + 1).scale(&Rational::from_integer(2)) - &br(r + 1, s).scale(kappa))
        + &br(r, s + 1).scale(kappa);
    let kj_il = |x: i64, y: i64| at(x).get(k, j) * at(y).get(i, l);
    let mixed = &(&(&(&kj_il(s, r + 1) - &kj_il(r + 1, s)) - &kj_il(s + 1, r)) + &kj_il(r, s + 1))
        + &(&kj_il(s, r) - &kj_il(r, s)).scale(kappa);
    rhs = &rhs + &mixed.scale(&sgn(pa(k) & pa(i) ^ pa(k) & pa(j) ^ pa(i) & pa(j)));
    if i == conj(space, k) {
        for p in 1..=d {
            let pb = conj(space, p);
            let c = &sgn(pa(p) ^ pa(j) & pa(i) ^ pa(j) & pa(p)) * &(&theta(space, conj(space, i)) * &theta(space, pb));
            let term = &(at(r + 1).get(p, j) * at(s).get(pb, l)) - &(at(r).get(p, j) * at(s + 1).get(pb, l));
            rhs = &rhs + &term.scale(&c);
        }
    }
    if j == conj(space, l) {
        for p in 1..=d {
            let pb = conj(space, p);
            let c = &sgn(pa(k) & pa(j) ^ pa(i) & pa(k) ^ pa(i) & pa(p)) * &(&theta(space, pb) * &theta(space, conj(space, j)));
            let term = &(at(s).get(k, pb) * at(r + 1).get(i, p)) - &(at(s + 1).get(k, pb) * at(r).get(i, p));
            rhs = &rhs - &term.scale(&c);
        }
    }
    (lhs, rhs)
}

/// The mode relations for r ∈ −2..=r_max, s ∈ −2..=s_max and every index
/// quadruple, from an expansion to order `n_max`; T₍ₙ₎ = 0 for n < 0.
pub fn check_modes(rep: &MonodromyRep, r_max: i64, s_max: i64, n_max: usize) -> Result<CheckReport> {
    let needed = r_max.max(s_max) + 2;
    if needed > n_max as i64 {
        return Err(Error::Truncation { needed: needed.max(0) as usize, n_max });
    }
    let series = rep.mode_expand(n_max);
    let entries: Vec<Entries> = series.modes.iter().map(|m| rep.entries(m)).collect::<Result<_>>()?;
    let zero = entries[0].zero_like();
    let space = rep.space();
    let quads = quadruples(space.dim());
    let orders: Vec<(i64, i64)> = (-2..=r_max).flat_map(|r| (-2..=s_max).map(move |s| (r, s))).collect();
    let results = map_indexed(orders.len(), |x| {
        let (r, s) = orders[x];
        let w = quads.iter().find_map(|&q| {
            let (lhs, rhs) = modes_residual(space, rep.kappa(), q, (r, s), &entries, &zero);
            lhs.first_difference(&rhs).map(|d| {
                let point = alloc::vec![Rational::from_integer(r), Rational::from_integer(s)];
                Witness::residual(point, d).with_detail(alloc::format!("(i,j,k,l) = {q:?}"))
            })
        });
        IdentityResult::new(alloc::format!("modes r={r} s={s}"), w)
    });
    let mut report = rep.report("modes");
    report.note(alloc::format!("expansion order n_max = {n_max}; witness point is (r, s)"));
    let id = GradedMatrix::identity(space, rep.sites() + 1);
    report.push(crate::family::verify_exact("T(0) = I", &series.modes[0], &id));
    for res in results {
        report.push(res);
    }
    Ok(report)
}

/// C(u) = Tᵗ(u−κ) T(u) (transpose in aux) and the quantum-space operator
/// c(u) = C(u)^{11}, with checks that C(u) = 𝕀 ⊗ c(u) and that c(u) is
/// scalar.
pub fn central_element(rep: &MonodromyRep, u: &Rational) -> Result<(GradedMatrix, CheckReport)> {
    let t = rep.monodromy(u)?;
    let tt = rep.monodromy(&(u - rep.kappa()))?.super_transpose(1)?;
    let c_full = tt.try_mul(&t)?;
    let c = rep.entry(&c_full, 1, 1)?;
    let aux_id = GradedMatrix::identity(rep.space(), 1);
    let mut report = rep.report("central-element");
    report.grid = alloc::vec![alloc::vec![u.clone()]];
    report.push(crate::family::verify_exact("C(u) = I (x) c(u)", &c_full, &aux_id.graded_kron(&c)?));
    let scalar = c.as_scalar().unwrap_or_else(|| c.get(0, 0));
    report.push(crate::family::verify_exact(
        "c(u) is scalar",
        &c,
        &GradedMatrix::scalar(rep.space(), rep.sites(), scalar),
    ));
    Ok((c, report))
}

/// Π_j (1 − (ℓ − a_j)⁻²), the expected central scalar.
pub(crate) fn central_scalar(rep: &MonodromyRep, arg: &AffineForm, total: usize) -> RationalOperatorFamily {
    let sites = rep.inhomogeneities().to_vec();
    let forms: Vec<AffineForm> = sites.iter().flat_map(|a| [arg.shift(&-a), arg.shift(&-a)]).collect();
    let bound = PoleBound::rational_in(arg, 2 * sites.len() as u32, forms);
    let form = arg.clone();
    RationalOperatorFamily::scalar(rep.space(), total, bound, alloc::format!("c({arg})"), move |p| {
        let x = form.eval(p);
        Ok(sites.iter().fold(Rational::one(), |acc, a| {
            let y = &x - a;
            &acc * &(&Rational::one() - &(&y * &y).recip().expect("off the poles"))
        }))
    })
}

/// Tᵗ(ℓ−κ) T(ℓ) on aux ⊗ quantum.
fn central_family(rep: &MonodromyRep, arg: &AffineForm, aux: usize, total: usize) -> [RationalOperatorFamily; 2] {
    let tt = rep.family_at(&arg.shift(&-rep.kappa()), aux, total).transposed(aux);
    [tt, rep.family_at(arg, aux, total)]
}

/// c(u) read off C(u) and widened back to 𝕀 ⊗ c(u).
fn central_block_family(rep: &MonodromyRep) -> RationalOperatorFamily {
    let [tt, t] = central_family(rep, &AffineForm::u(), 1, rep.sites() + 1);
    let c = tt.then(&t);
    let me = rep.clone();
    let bound = c.bound().clone();
    RationalOperatorFamily::new(rep.space(), rep.sites() + 1, bound, "I (x) C(u)^11", move |p| {
        let block = me.entry(&c.eval(p)?, 1, 1)?;
        GradedMatrix::identity(me.space(), 1).graded_kron(&block)
    })
}

/// C(u) = c(u)·𝕀 with c(u) = Π_j (1 − (u−a_j)⁻²), identically in u; its
/// blocks agree, it is scalar, and it factorizes over sites.
pub fn check_center(rep: &MonodromyRep) -> CheckReport {
    let u = AffineForm::u();
    let total = rep.sites() + 1;
    let c = central_family(rep, &u, 1, total).to_vec();
    let blocks = central_block_family(rep);
    let scalar = central_scalar(rep, &u, total);
    let mut ids = alloc::vec![
        Identity::new("C(u) = I (x) C(u)^11", c.clone(), alloc::vec![blocks]),
        Identity::new("C(u) = prod_j (1 - (u-a_j)^-2) I", c.clone(), alloc::vec![scalar]),
    ];
    let per_site: Vec<RationalOperatorFamily> = (0..rep.sites())
        .map(|k| {
            let single = rep.site(k);
            let [tt, t] = central_family(&single, &u, 1, 2);
            let one = tt.then(&t);
            let space = rep.space();
            RationalOperatorFamily::scalar(space, total, one.bound().clone(), alloc::format!("c_{}(u)", k + 1), move |p| {
                let m = one.eval(p)?;
                m.as_scalar().ok_or_else(|| Error::InvalidRepresentation(String::from("single-site C(u) is not scalar")))
            })
        })
        .collect();
    ids.push(Identity::new("C(u) = prod_j C_site_j(u)", c, per_site));
    rmatrix::run(rep.report("center"), &ids, 1)
}

/// T₁ᵗ(u−κ) R₁₂⁻¹(u−v) T₂(v) = T₂(v) R₁₂⁻¹(u−v) T₁ᵗ(u−κ) and
/// C₁(u) T₂(v) = T₂(v) C₁(u), identically in (u, v).
pub fn check_centrality(rep: &MonodromyRep) -> CheckReport {
    let total = rep.sites() + 2;
    let (u, v) = (AffineForm::u(), AffineForm::v());
    let [tt1, t1] = central_family(rep, &u, 1, total);
    let t2 = rep.family_at(&v, 2, total);
    let rinv = rep.rmatrix().inverse_family_at(&u.sub(&v), &[1, 2], total);
    let ids = alloc::vec![
        Identity::new(
            "T1^t(u-kappa) R12^-1(u-v) T2(v) = T2(v) R12^-1(u-v) T1^t(u-kappa)",
            alloc::vec![tt1.clone(), rinv.clone(), t2.clone()],
            alloc::vec![t2.clone(), rinv, tt1.clone()],
        ),
        Identity::new(
            "C1(u) T2(v) = T2(v) C1(u)",
            alloc::vec![tt1.clone(), t1.clone(), t2.clone()],
            alloc::vec![t2, tt1, t1],
        ),
    ];
    rmatrix::run(rep.report("centrality"), &ids, 2)
}

/// The order-1 generators J^{ab} = T₍₁₎^{ab} of a single site at a = 0
/// (T₍₁₎ = P − K), a basis of their span, and checks of antisymmetry under
/// the super-transpose, closure under the graded bracket and the graded
/// dimension M(M−1)/2 + N(N+1)/2 | MN.
pub fn order1_algebra(space: SuperSpace) -> (Vec<GradedMatrix>, CheckReport) {
    let r = RMatrix::new(space);
    let t1 = r.p() - r.k();
    let d = space.dim();
    let mut report = CheckReport::new("order1", space, space.kappa());
    report.push(crate::family::verify_exact(
        "T(1)^t + T(1) = 0",
        &(&t1.super_transpose(1).expect("two factors") + &t1),
        &GradedMatrix::zero(space, 2),
    ));

    let mut gens: Vec<(GradedMatrix, u8)> = Vec::with_capacity(d * d);
    for a in 1..=d {
        for b in 1..=d {
            let j = entry_with(&t1, a, b, ENTRY_SIGN).expect("valid indices");
            gens.push((j, parity(space, a) ^ parity(space, b)));
        }
    }
    let zero = GradedMatrix::zero(space, 1);
    let anti = gens.iter().enumerate().find_map(|(x, (j, _))| {
        let s = &j.super_transpose(1).expect("one factor") + j;
        s.first_difference(&zero).map(|diff| {
            Witness::residual(Vec::new(), diff).with_detail(alloc::format!("J^{}{}", x / d + 1, x % d + 1))
        })
    });
    report.push(IdentityResult::new("J^t + J = 0 for every generator", anti));

    let mut span = LinearSpan::new(d * d);
    let mut even = LinearSpan::new(d * d);
    let mut odd = LinearSpan::new(d * d);
    let mut basis = Vec::new();
    for (j, p) in &gens {
        if span.insert(j) {
            basis.push(j.clone());
        }
        if *p == 0 { even.insert(j) } else { odd.insert(j) };
    }
    let closure = gens.iter().enumerate().find_map(|(x, (a, pa))| {
        gens.iter().enumerate().find_map(|(y, (b, pb))| {
            let br = super_commutator(a, *pa, b, *pb);
            (!span.contains(&br)).then(|| {
                Witness {
                    point: Vec::new(),
                    entry: None,
                    value: None,
                    detail: Some(alloc::format!(
                        "[J^{}{}, J^{}{}] leaves the span",
                        x / d + 1,
                        x % d + 1,
                        y / d + 1,
                        y % d + 1
                    )),
                }
            })
        })
    });
    report.push(IdentityResult::new("span closed under the graded bracket", closure));

    let (m, n) = (space.m(), space.n());
    let want_even = m * m.saturating_sub(1) / 2 + n * (n + 1) / 2;
    let want_odd = m * n;
    let dims = |name: &str, got: usize, want: usize| {
        let w = (got != want).then(|| Witness {
            point: Vec::new(),
            entry: None,
            value: Some(Rational::from_integer(got as i64 - want as i64)),
            detail: Some(alloc::format!("rank {got}, expected {want}")),
        });
        IdentityResult::new(alloc::format!("{name} = {want}"), w)
    };
    report.push(dims("dim", span.rank(), want_even + want_odd));
    report.push(dims("even dim", even.rank(), want_even));
    report.push(dims("odd dim", odd.rank(), want_odd));
    report.note(alloc::format!(
        "graded dimension {}|{}",
        even.rank(),
        odd.rank()
    ));
    (basis, report)
}

/// `order1_algebra` for the space of `rep`, plus T₍₁₎ᵗ + T₍₁₎ = 0 on the
/// representation itself.
pub fn check_order1(rep: &MonodromyRep) -> CheckReport {
    let (_, base) = order1_algebra(rep.space());
    let series = rep.mode_expand(1);
    let t1 = &series.modes[1];
    let mut report = rep.report("order1");
    report.push(crate::family::verify_exact(
        "T(1)^t + T(1) = 0 on the representation",
        &(&t1.super_transpose(1).expect("aux factor") + t1),
        &GradedMatrix::zero(rep.space(), rep.sites() + 1),
    ));
    report.merge(base)
}
