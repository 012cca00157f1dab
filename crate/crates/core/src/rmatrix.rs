//! The super-permutation P, its partial transpose K, the rational R-matrix
//! R(u) = 𝕀 + P/u − K/(u+κ), and checks of the relations they satisfy.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::family::{shared_grid, verify_exact, verify_on_grid, Identity, RationalOperatorFamily};
use crate::grading::SuperSpace;
use crate::matrix::GradedMatrix;
use crate::rational::Rational;
use crate::report::CheckReport;
use crate::sampling::{AffineForm, PoleBound};

/// P = Σ (−1)^[j] E_ij ⊗ E_ji.
pub fn permutation_op(space: SuperSpace) -> GradedMatrix {
    let d = space.dim();
    let mut acc = GradedMatrix::zero(space, 2);
    for i in 1..=d {
        for j in 1..=d {
            let sign = Rational::sign(space.parity(j).expect("in range"));
            let term = unit(space, i, j).graded_kron(&unit(space, j, i)).expect("same space");
            acc = &acc + &term.scale(&sign);
        }
    }
    acc
}

/// K = P^{t₁}.
pub fn k_op(space: SuperSpace) -> GradedMatrix {
    permutation_op(space).super_transpose(1).expect("two factors")
}

/// K written out term by term: Σ (−1)^{[i][j]} θᵢθⱼ E_{j̄ī} ⊗ E_ji.
pub fn k_op_explicit(space: SuperSpace) -> GradedMatrix {
    let d = space.dim();
    let mut acc = GradedMatrix::zero(space, 2);
    for i in 1..=d {
        for j in 1..=d {
            let (pi, pj) = (space.parity(i).unwrap(), space.parity(j).unwrap());
            let theta = space.theta(i).unwrap() * space.theta(j).unwrap();
            let coef = &Rational::sign(pi & pj) * &Rational::from_integer(theta as i64);
            let (ib, jb) = (space.conjugate_index(i).unwrap(), space.conjugate_index(j).unwrap());
            let term = unit(space, jb, ib).graded_kron(&unit(space, j, i)).expect("same space");
            acc = &acc + &term.scale(&coef);
        }
    }
    acc
}

fn unit(space: SuperSpace, i: usize, j: usize) -> GradedMatrix {
    GradedMatrix::elementary(space, i, j).expect("in range")
}

/// R(u) for a fixed space and crossing parameter, with P and K cached.
#[derive(Clone, Debug)]
pub struct RMatrix {
    space: SuperSpace,
    kappa: Rational,
    p: GradedMatrix,
    k: GradedMatrix,
}

impl RMatrix {
    pub fn new(space: SuperSpace) -> Self {
        Self::with_kappa(space, space.kappa())
    }

    /// Any κ; only κ = (M−N−2)θ₀/2 gives a solution of Yang–Baxter.
    pub fn with_kappa(space: SuperSpace, kappa: Rational) -> Self {
        Self { space, kappa, p: permutation_op(space), k: k_op(space) }
    }

    pub fn space(&self) -> SuperSpace {
        self.space
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    pub fn is_overridden(&self) -> bool {
        self.kappa != self.space.kappa()
    }

    pub fn p(&self) -> &GradedMatrix {
        &self.p
    }

    pub fn k(&self) -> &GradedMatrix {
        &self.k
    }

    /// Pole forms of R(ℓ): ℓ and ℓ + κ.
    pub fn poles(&self, arg: &AffineForm) -> [AffineForm; 2] {
        [arg.clone(), arg.shift(&self.kappa)]
    }

    /// `𝕀 + P/x − K/(x+κ)` from already embedded P and K.
    pub(crate) fn combine(&self, id: &GradedMatrix, p: &GradedMatrix, k: &GradedMatrix, x: &Rational) -> Result<GradedMatrix> {
        let form = AffineForm::u();
        for f in self.poles(&form) {
            f.nonzero_at(core::slice::from_ref(x))?;
        }
        let a = x.recip().expect("checked");
        let b = (x + &self.kappa).recip().expect("checked");
        Ok(&(id + &p.scale(&a)) - &k.scale(&b))
    }

    /// R(u) on two factors.
    pub fn eval(&self, u: &Rational) -> Result<GradedMatrix> {
        self.combine(&GradedMatrix::identity(self.space, 2), &self.p, &self.k, u)
    }

    /// The one-variable family u ↦ R(u).
    pub fn family(&self) -> RationalOperatorFamily {
        self.family_at(&AffineForm::u(), &[1, 2], 2)
    }

    /// ℓ(u, v) ↦ R(ℓ) acting on factors `on` of `total`.
    pub fn family_at(&self, arg: &AffineForm, on: &[usize], total: usize) -> RationalOperatorFamily {
        let id = GradedMatrix::identity(self.space, total);
        let p = self.p.embed(on, total).expect("valid factor set");
        let k = self.k.embed(on, total).expect("valid factor set");
        let me = self.clone();
        let form = arg.clone();
        let label = alloc::format!("R{:?}({})", on, arg);
        RationalOperatorFamily::new(
            self.space,
            total,
            PoleBound::r_factor(arg, &self.kappa),
            label,
            move |pt| me.combine(&id, &p, &k, &form.eval(pt)),
        )
    }

    /// ℓ ↦ R(ℓ)⁻¹ on `on` of `total`, by exact inversion.
    pub fn inverse_family_at(&self, arg: &AffineForm, on: &[usize], total: usize) -> RationalOperatorFamily {
        let me = self.clone();
        let form = arg.clone();
        let on_v = on.to_vec();
        let label = alloc::format!("R^-1{:?}({})", on, arg);
        RationalOperatorFamily::new(
            self.space,
            total,
            PoleBound::r_inverse_factor(arg, &self.kappa),
            label,
            move |pt| me.eval(&form.eval(pt))?.invert()?.embed(&on_v, total),
        )
    }

    fn report(&self, suite: &str) -> CheckReport {
        CheckReport::new(suite, self.space, self.kappa.clone())
    }
}

/// P² = 𝕀, PK = KP = θ₀K, K² = θ₀(M−N)K, plus the two constructions of K
/// agreeing and K₂₁ = K₁₂.
pub fn check_pk_algebra(space: SuperSpace) -> CheckReport {
    let p = permutation_op(space);
    let k = k_op(space);
    let id = GradedMatrix::identity(space, 2);
    let theta0 = Rational::from_integer(space.theta0() as i64);
    let k_sq = &theta0 * &Rational::from_integer(space.m() as i64 - space.n() as i64);
    let mut report = CheckReport::new("pk", space, space.kappa());
    report.push(verify_exact("P^2 = I", &(&p * &p), &id));
    report.push(verify_exact("P K = theta0 K", &(&p * &k), &k.scale(&theta0)));
    report.push(verify_exact("K P = theta0 K", &(&k * &p), &k.scale(&theta0)));
    report.push(verify_exact("K^2 = theta0 (M-N) K", &(&k * &k), &k.scale(&k_sq)));
    report.push(verify_exact("K = P^t1 (explicit sum)", &k, &k_op_explicit(space)));
    report.push(verify_exact("K21 = K12", &(&(&p * &k) * &p), &k));
    report
}

/// The six three-space relations between P and K used in the proof of the
/// Yang–Baxter equation.
pub fn check_pk_relations3(space: SuperSpace) -> CheckReport {
    let p = permutation_op(space);
    let k = k_op(space);
    let on = |m: &GradedMatrix, a: usize, b: usize| m.embed(&[a, b], 3).expect("valid");
    let (p12, p13, p23) = (on(&p, 1, 2), on(&p, 1, 3), on(&p, 2, 3));
    let (k12, k13, k23) = (on(&k, 1, 2), on(&k, 1, 3), on(&k, 2, 3));
    let t0 = Rational::from_integer(space.theta0() as i64);
    let mut report = CheckReport::new("pk3", space, space.kappa());
    let rels: [(&str, GradedMatrix, GradedMatrix); 6] = [
        ("P13 K23 = K12 P13", &p13 * &k23, &k12 * &p13),
        ("K13 K12 = P23 K12", &k13 * &k12, &p23 * &k12),
        ("P12 P23 K12 = theta0 P13 K12", &(&p12 * &p23) * &k12, (&p13 * &k12).scale(&t0)),
        ("P12 K23 K12 = theta0 K13 K12", &(&p12 * &k23) * &k12, (&k13 * &k12).scale(&t0)),
        ("K12 K13 K23 = theta0 P13 K23", &(&k12 * &k13) * &k23, (&p13 * &k23).scale(&t0)),
        ("K12 P23 K12 = K12", &(&k12 * &p23) * &k12, k12.clone()),
    ];
    for (name, l, r) in rels.iter() {
        report.push(verify_exact(name, l, r));
    }
    report
}

/// R₁₂(u) R₁₃(u+v) R₂₃(v) = R₂₃(v) R₁₃(u+v) R₁₂(u).
pub fn check_ybe(r: &RMatrix) -> CheckReport {
    let (u, v) = (AffineForm::u(), AffineForm::v());
    let r12 = r.family_at(&u, &[1, 2], 3);
    let r13 = r.family_at(&u.add(&v), &[1, 3], 3);
    let r23 = r.family_at(&v, &[2, 3], 3);
    let ids = vec![Identity::new(
        "R12(u) R13(u+v) R23(v) = R23(v) R13(u+v) R12(u)",
        vec![r12.clone(), r13.clone(), r23.clone()],
        vec![r23, r13, r12],
    )];
    run(r.report("ybe"), &ids, 2)
}

fn crossing_identities(r: &RMatrix) -> Vec<Identity> {
    let u = AffineForm::u();
    let crossed = r.family_at(&u.neg().shift(&-r.kappa()), &[1, 2], 2).transposed(1);
    let t1t2 = r.family().transposed(1).transposed(2);
    vec![
        Identity::new("R^t1(-u-kappa) = R(u)", vec![crossed], vec![r.family()]),
        Identity::new("R^t1t2(u) = R(u)", vec![t1t2], vec![r.family()]),
    ]
}

fn unitarity_identity(r: &RMatrix) -> Identity {
    let u = AffineForm::u();
    let space = r.space();
    let scalar = RationalOperatorFamily::scalar(
        space,
        2,
        PoleBound::rational_in(&u, 2, vec![u.clone(), u.clone()]),
        "(1-1/u^2)",
        |p| {
            let x = &p[0];
            Ok(&Rational::one() - &(x * x).recip().expect("nonzero"))
        },
    );
    let minus = r.family_at(&u.neg(), &[1, 2], 2);
    Identity::new("R(u) R(-u) = (1 - 1/u^2) I", vec![r.family(), minus], vec![scalar])
}

pub fn check_crossing(r: &RMatrix) -> CheckReport {
    run(r.report("crossing"), &crossing_identities(r), 1)
}

pub fn check_unitarity(r: &RMatrix) -> CheckReport {
    run(r.report("unitarity"), &[unitarity_identity(r)], 1)
}

/// Crossing, unitarity and R^{t₁t₂} = R on one shared grid.
pub fn check_crossing_unitarity(r: &RMatrix) -> CheckReport {
    let mut ids = crossing_identities(r);
    ids.push(unitarity_identity(r));
    run(r.report("crossing-unitarity"), &ids, 1)
}

pub(crate) fn run(report: CheckReport, identities: &[Identity], vars: usize) -> CheckReport {
    let grid = shared_grid(identities, vars);
    let mut report = report.with_grid(&grid);
    for res in verify_on_grid(identities, &grid) {
        report.push(res);
    }
    report
}


#[cfg(test)]
mod tests {
    use super::*;

    fn sp(m: usize, n: usize, t: i64) -> SuperSpace {
        SuperSpace::new(m, n, t).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn symplectic_p_is_plain_swap() {
        let s = sp(0, 2, -1);
        let p = permutation_op(s);
        let expected = GradedMatrix::from_entries(
            s,
            2,
            [
                (vec![1, 1], vec![1, 1], q(1, 1)),
                (vec![1, 2], vec![2, 1], q(1, 1)),
                (vec![2, 1], vec![1, 2], q(1, 1)),
                (vec![2, 2], vec![2, 2], q(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn p_matrix_entries_are_graded_flip_signs() {
        let s = sp(1, 2, 1);
        let p = permutation_op(s);
        for i in 1..=3 {
            for j in 1..=3 {
                let want = Rational::sign(s.parity(i).unwrap() * s.parity(j).unwrap());
                assert_eq!(p.entry(&[i, j], &[j, i]).unwrap(), want, "({i},{j})");
            }
        }
        assert_eq!(p.nnz(), 9);
    }

    #[test]
    fn symplectic_k_matches_hand_expansion() {
        // K = E22⊗E11 − E12⊗E21 − E21⊗E12 + E11⊗E22.
        let s = sp(0, 2, -1);
        let e = |i, j| unit(s, i, j);
        let kron = |a: GradedMatrix, b: GradedMatrix| a.graded_kron(&b).unwrap();
        let expected = &(&(&kron(e(2, 2), e(1, 1)) - &kron(e(1, 2), e(2, 1)))
            - &kron(e(2, 1), e(1, 2)))
            + &kron(e(1, 1), e(2, 2));
        assert_eq!(k_op(s), expected);
        assert_eq!(k_op_explicit(s), expected);
    }

    #[test]
    fn k_squared_orthogonal() {
        let s = sp(3, 0, 1);
        let k = k_op(s);
        assert_eq!(&k * &k, k.scale(&q(3, 1)));
    }

    #[test]
    fn one_dimensional_r_is_scalar() {
        let s = sp(1, 0, 1);
        let r = RMatrix::new(s);
        assert_eq!(*r.kappa(), q(-1, 2));
        let u = q(3, 1);
        let expected = &(&Rational::one() + &q(1, 3)) - &(u.clone() - q(1, 2)).recip().unwrap();
        assert_eq!(r.eval(&u).unwrap().as_scalar(), Some(expected));
    }

    #[test]
    fn r_pole_errors_name_the_form() {
        let r = RMatrix::new(sp(3, 0, 1));
        let err = r.eval(&q(-1, 2)).unwrap_err();
        assert!(matches!(err, crate::Error::Pole { ref form, .. } if form == "u + 1/2"), "{err:?}");
        assert!(r.eval(&Rational::zero()).is_err());
    }

    #[test]
    fn unitarity_point_value() {
        let r = RMatrix::new(sp(3, 0, 1));
        let u = q(2, 1);
        let prod = &r.eval(&u).unwrap() * &r.eval(&-&u).unwrap();
        assert_eq!(prod.as_scalar(), Some(q(3, 4)));
        assert_eq!(&Rational::one() - &q(1, 9), q(8, 9));
    }

    #[test]
    fn crossing_point_value_symplectic() {
        let s = sp(0, 2, -1);
        let r = RMatrix::new(s);
        assert_eq!(*r.kappa(), q(2, 1));
        let u = q(1, 1);
        let lhs = r.eval(&(-&u - r.kappa())).unwrap().super_transpose(1).unwrap();
        assert_eq!(lhs, r.eval(&u).unwrap());
    }

    #[test]
    fn inverse_of_r_by_unitarity() {
        let r = RMatrix::new(sp(1, 2, 1));
        let u0 = q(5, 3);
        let inv = r.eval(&u0).unwrap().invert().unwrap();
        let factor = &Rational::one() - &(&u0 * &u0).recip().unwrap();
        let expected = r.eval(&-&u0).unwrap().scale(&factor.recip().unwrap());
        assert_eq!(inv, expected);
    }
}
