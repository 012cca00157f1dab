//! The automorphism τ[T(u)] = Tᵗ(−u−κ), the twisted generator
//! S(u) = τ[T(u)] T(u), the reflection generator B(u) = T⁻¹(−u) T(u), and the
//! reflection equation they satisfy.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::family::{verify_exact, Identity, RationalOperatorFamily};
use crate::matrix::GradedMatrix;
use crate::rational::Rational;
use crate::report::{CheckReport, IdentityResult, Witness};
use crate::rmatrix;
use crate::rtt::{central_scalar, MonodromyRep, ENTRY_SIGN};
use crate::sampling::{AffineForm, PoleBound};

/// Which boundary generator a reflection-equation check runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// S(u) = τ[T(u)] T(u).
    Twisted,
    /// B(u) = T⁻¹(−u) T(u).
    Reflection,
}

impl Generator {
    pub fn suite(self) -> &'static str {
        match self {
            Generator::Twisted => "rsrs-S",
            Generator::Reflection => "rsrs-B",
        }
    }
}

/// τ[T(u)] = Tᵗ(−u−κ), transposed in the auxiliary space.
pub fn tau(rep: &MonodromyRep, u: &Rational) -> Result<GradedMatrix> {
    rep.monodromy(&(-u - rep.kappa()))?.super_transpose(1)
}

/// τ[T(u)] assembled entry by entry:
/// τ(T^{ab}(u)) = (−1)^{[a]([b]+1)} θ_a θ_b T^{b̄ā}(−u−κ).
pub fn tau_entrywise(rep: &MonodromyRep, u: &Rational) -> Result<GradedMatrix> {
    let space = rep.space();
    let t = rep.entries(&rep.monodromy(&(-u - rep.kappa()))?)?;
    let d = space.dim();
    let mut acc = GradedMatrix::zero(space, rep.sites() + 1);
    for a in 1..=d {
        for b in 1..=d {
            let (pa, pb) = (space.parity(a)?, space.parity(b)?);
            let theta = space.theta(a)? * space.theta(b)?;
            let sign = Rational::sign((pa & (pb ^ 1)) ^ u8::from(theta < 0));
            let value = t.get(space.conjugate_index(b)?, space.conjugate_index(a)?).scale(&sign);
            acc = &acc + &from_entry(rep, a, b, &value)?;
        }
    }
    Ok(acc)
}

/// The aux ⊗ quantum matrix whose only generator entry is T^{ab} = `value`.
fn from_entry(rep: &MonodromyRep, a: usize, b: usize, value: &GradedMatrix) -> Result<GradedMatrix> {
    let space = rep.space();
    let sign = Rational::sign(ENTRY_SIGN(&space, a, b));
    GradedMatrix::elementary(space, a, b)?.graded_kron(&value.scale(&sign))
}

/// S(u) = τ[T(u)] T(u).
pub fn twisted_generator(rep: &MonodromyRep, u: &Rational) -> Result<GradedMatrix> {
    tau(rep, u)?.try_mul(&rep.monodromy(u)?)
}

/// B(u) = T⁻¹(−u) T(u), by exact inversion.
pub fn reflection_generator(rep: &MonodromyRep, u: &Rational) -> Result<GradedMatrix> {
    rep.monodromy(&-u)?.invert()?.try_mul(&rep.monodromy(u)?)
}

/// ℓ ↦ τ[T(ℓ)] with aux at factor `aux` of `total`.
fn tau_family(rep: &MonodromyRep, arg: &AffineForm, aux: usize, total: usize) -> RationalOperatorFamily {
    rep.family_at(&arg.neg().shift(&-rep.kappa()), aux, total).transposed(aux)
}

/// ℓ ↦ T(−ℓ)⁻¹ with aux at factor `aux` of `total`.
fn inverse_family(rep: &MonodromyRep, arg: &AffineForm, aux: usize, total: usize) -> RationalOperatorFamily {
    let parts: Vec<PoleBound> = rep
        .inhomogeneities()
        .iter()
        .map(|a| PoleBound::r_inverse_factor(&arg.neg().shift(&-a), rep.kappa()))
        .collect();
    let me = rep.clone();
    let form = arg.clone();
    let on: Vec<usize> = core::iter::once(aux).chain(total - rep.sites() + 1..=total).collect();
    RationalOperatorFamily::new(
        rep.space(),
        total,
        PoleBound::product(&parts),
        alloc::format!("T{aux}(-{arg})^-1"),
        move |p| me.monodromy(&-form.eval(p))?.invert()?.embed(&on, total),
    )
}

/// The generator at ℓ as a product of families, aux at factor `aux`.
fn generator_families(rep: &MonodromyRep, which: Generator, arg: &AffineForm, aux: usize, total: usize) -> Vec<RationalOperatorFamily> {
    let first = match which {
        Generator::Twisted => tau_family(rep, arg, aux, total),
        Generator::Reflection => inverse_family(rep, arg, aux, total),
    };
    alloc::vec![first, rep.family_at(arg, aux, total)]
}

/// R₁₂(u−v) G₁(u) R₁₂(u+v) G₂(v) = G₂(v) R₁₂(u+v) G₁(u) R₁₂(u−v) for
/// G = S or B, identically in (u, v).
pub fn check_rsrs(rep: &MonodromyRep, which: Generator) -> CheckReport {
    let total = rep.sites() + 2;
    let (u, v) = (AffineForm::u(), AffineForm::v());
    let r = rep.rmatrix();
    let minus = r.family_at(&u.sub(&v), &[1, 2], total);
    let plus = r.family_at(&u.add(&v), &[1, 2], total);
    let g1 = generator_families(rep, which, &u, 1, total);
    let g2 = generator_families(rep, which, &v, 2, total);
    let name = match which {
        Generator::Twisted => "R12(u-v) S1(u) R12(u+v) S2(v) = S2(v) R12(u+v) S1(u) R12(u-v)",
        Generator::Reflection => "R12(u-v) B1(u) R12(u+v) B2(v) = B2(v) R12(u+v) B1(u) R12(u-v)",
    };
    let mut lhs = alloc::vec![minus.clone()];
    lhs.extend(g1.iter().cloned());
    lhs.push(plus.clone());
    lhs.extend(g2.iter().cloned());
    let mut rhs = g2;
    rhs.push(plus);
    rhs.extend(g1);
    rhs.push(minus);
    rmatrix::run(rep_report(rep, which.suite()), &[Identity::new(name, lhs, rhs)], 2)
}

fn rep_report(rep: &MonodromyRep, suite: &str) -> CheckReport {
    let mut report = CheckReport::new(suite, rep.space(), rep.kappa().clone());
    let sites: Vec<String> = rep.inhomogeneities().iter().map(|a| alloc::format!("{a}")).collect();
    report.note(alloc::format!(
        "representation: {} site(s), inhomogeneities [{}]",
        rep.sites(),
        sites.join(", ")
    ));
    report
}

/// S(u) = c(−u) B(u) identically in u, together with the properties of τ
/// visible on the representation: the entrywise sign formula, τ² = id, and
/// τ[T(u)] = R₀₁(u+a₁)···R₀L(u+a_L).
pub fn check_s_eq_cb(rep: &MonodromyRep) -> CheckReport {
    let total = rep.sites() + 1;
    let u = AffineForm::u();
    let s = generator_families(rep, Generator::Twisted, &u, 1, total);
    let b = generator_families(rep, Generator::Reflection, &u, 1, total);
    let c = central_scalar(rep, &u.neg(), total);
    let mut rhs = alloc::vec![c];
    rhs.extend(b);

    let tau_u = tau_family(rep, &u, 1, total);
    let twice = rep
        .family_at(&u.neg().shift(&-rep.kappa()).neg().shift(&-rep.kappa()), 1, total)
        .transposed(1)
        .transposed(1);
    let me = rep.clone();
    let entrywise = RationalOperatorFamily::new(
        rep.space(),
        total,
        tau_u.bound().clone(),
        "tau entrywise",
        move |p| tau_entrywise(&me, &p[0]),
    );
    let reversed: Vec<RationalOperatorFamily> = (0..rep.sites())
        .map(|k| {
            let a = &rep.inhomogeneities()[k];
            let on = [1, k + 2];
            rep.rmatrix().family_at(&u.shift(a), &on, total)
        })
        .collect();

    let ids = alloc::vec![
        Identity::new("S(u) = c(-u) B(u)", s, rhs),
        Identity::new(
            "tau(T^ab(u)) = (-1)^([a]([b]+1)) theta_a theta_b T^(b' a')(-u-kappa)",
            alloc::vec![tau_u.clone()],
            alloc::vec![entrywise],
        ),
        Identity::new("tau(tau(T(u))) = T(u)", alloc::vec![twice], alloc::vec![rep.family()]),
        Identity::new("tau[T(u)] = R01(u+a1) ... R0L(u+aL)", alloc::vec![tau_u], reversed),
    ];
    rmatrix::run(rep_report(rep, "S-eq-cB"), &ids, 1)
}

/// Exact comparison of S(u) and c(−u) B(u) at one point, each side computed
/// from its own definition.
pub fn compare_s_and_cb(rep: &MonodromyRep, u: &Rational) -> IdentityResult {
    let value = || -> Result<(GradedMatrix, GradedMatrix)> {
        let s = twisted_generator(rep, u)?;
        let b = reflection_generator(rep, u)?;
        let (c, _) = crate::rtt::central_element(rep, &-u)?;
        let scalar = c.as_scalar().unwrap_or_else(Rational::zero);
        Ok((s, b.scale(&scalar)))
    };
    match value() {
        Ok((s, cb)) => {
            let mut r = verify_exact("S(u) = c(-u) B(u)", &s, &cb);
            if let Some(w) = r.witness.as_mut() {
                w.point = alloc::vec![u.clone()];
            }
            r
        }
        Err(e) => IdentityResult::new("S(u) = c(-u) B(u)", Some(Witness::error(alloc::vec![u.clone()], &e))),
    }
}
