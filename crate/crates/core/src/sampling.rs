//! Deterministic identity testing for rational operator families in one or
//! two spectral parameters (u, v).
//!
//! Every family carries a [`PoleBound`]: the multiset of affine forms in its
//! denominator and a per-variable degree bound for the numerator left after
//! clearing them. For an identity F = G the difference is cleared by the
//! least common multiple of both denominators; if the cleared numerator has
//! degree ≤ D in each variable, vanishing on a tensor grid of D + 1 distinct
//! values per variable proves it vanishes identically.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Number of spectral variables supported.
pub const MAX_VARS: usize = 2;

/// `a·u + b·v + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm {
    coeffs: [Rational; MAX_VARS],
    constant: Rational,
}

impl AffineForm {
    pub fn new(u: Rational, v: Rational, constant: Rational) -> Self {
        Self { coeffs: [u, v], constant }
    }

    pub fn u() -> Self {
        Self::new(Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn v() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(Rational::zero(), Rational::zero(), c)
    }

    pub fn shift(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.clone(), constant: &self.constant + c }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: [-&self.coeffs[0], -&self.coeffs[1]],
            constant: -&self.constant,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coeffs: [&self.coeffs[0] + &other.coeffs[0], &self.coeffs[1] + &other.coeffs[1]],
            constant: &self.constant + &other.constant,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn depends_on(&self, var: usize) -> bool {
        !self.coeffs[var].is_zero()
    }

    pub fn is_constant(&self) -> bool {
        (0..MAX_VARS).all(|k| !self.depends_on(k))
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = self.constant.clone();
        for (c, x) in self.coeffs.iter().zip(point) {
            if !c.is_zero() {
                acc += &(c * x);
            }
        }
        acc
    }

    /// Scaled so that the first nonzero variable coefficient is 1; forms that
    /// differ by a nonzero factor vanish together.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.recip().expect("nonzero");
                Self {
                    coeffs: [&self.coeffs[0] * &inv, &self.coeffs[1] * &inv],
                    constant: &self.constant * &inv,
                }
            }
        }
    }

    /// Evaluates and errors with the form's name if it vanishes.
    pub fn nonzero_at(&self, point: &[Rational]) -> Result<Rational> {
        let x = self.eval(point);
        if x.is_zero() {
            Err(Error::Pole { form: self.to_string(), point: format_point(point) })
        } else {
            Ok(x)
        }
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, name) in self.coeffs.iter().zip(["u", "v"]) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
                (true, false) => {}
            }
            if !mag.is_one() {
                let _ = write!(out, "{mag}*");
            }
            out.push_str(name);
        }
        let c = &self.constant;
        if out.is_empty() {
            let _ = write!(out, "{c}");
        } else if !c.is_zero() {
            if c.is_negative() {
                let _ = write!(out, " - {}", -c);
            } else {
                let _ = write!(out, " + {c}");
            }
        }
        f.write_str(&out)
    }
}

pub fn format_point(point: &[Rational]) -> String {
    let mut s = String::from("(");
    for (k, x) in point.iter().enumerate() {
        if k > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s.push(')');
    s
}

/// Denominator forms (with multiplicity) and numerator degree per variable,
/// plus forms where evaluation breaks down without the function having a pole.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PoleBound {
    denominator: Vec<AffineForm>,
    degree: [u32; MAX_VARS],
    avoid: Vec<AffineForm>,
}

impl PoleBound {
    /// A polynomial of the given degrees in (u, v).
    pub fn polynomial(degree: [u32; MAX_VARS]) -> Self {
        Self { denominator: Vec::new(), degree, avoid: Vec::new() }
    }

    pub fn constant() -> Self {
        Self::default()
    }

    /// `N(ℓ) / Π forms`, with `N` of degree `numerator_degree` in ℓ.
    pub fn rational_in(arg: &AffineForm, numerator_degree: u32, forms: Vec<AffineForm>) -> Self {
        let mut degree = [0; MAX_VARS];
        for (k, slot) in degree.iter_mut().enumerate() {
            if arg.depends_on(k) {
                *slot = numerator_degree;
            }
        }
        let mut denominator: Vec<_> = forms
            .into_iter()
            .filter(|f| !f.is_constant())
            .map(|f| f.normalized())
            .collect();
        denominator.sort();
        Self { denominator, degree, avoid: Vec::new() }
    }

    /// The same bound, additionally keeping `forms` away from zero.
    pub fn avoiding(mut self, forms: impl IntoIterator<Item = AffineForm>) -> Self {
        self.avoid.extend(forms.into_iter().filter(|f| !f.is_constant()).map(|f| f.normalized()));
        self.avoid.sort();
        self.avoid.dedup();
        self
    }

    /// R(ℓ) = 𝕀 + P/ℓ − K/(ℓ+κ): denominator ℓ(ℓ+κ), numerator degree 2.
    pub fn r_factor(arg: &AffineForm, kappa: &Rational) -> Self {
        Self::rational_in(arg, 2, alloc::vec![arg.clone(), arg.shift(kappa)])
    }

    /// R(ℓ)⁻¹ = ℓ² R(−ℓ) / (ℓ² − 1): denominator (ℓ−κ)(ℓ−1)(ℓ+1), numerator
    /// degree 3. Inverting R(ℓ) needs R(ℓ) itself, so ℓ and ℓ+κ are avoided.
    pub fn r_inverse_factor(arg: &AffineForm, kappa: &Rational) -> Self {
        let one = Rational::one();
        Self::rational_in(arg, 3, alloc::vec![arg.shift(&-kappa), arg.shift(&-&one), arg.shift(&one)])
            .avoiding([arg.clone(), arg.shift(kappa)])
    }

    pub fn avoided(&self) -> &[AffineForm] {
        &self.avoid
    }

    pub fn degree(&self) -> [u32; MAX_VARS] {
        self.degree
    }

    pub fn denominator(&self) -> &[AffineForm] {
        &self.denominator
    }

    fn denominator_degree(forms: &[AffineForm], var: usize) -> u32 {
        forms.iter().filter(|f| f.depends_on(var)).count() as u32
    }

    /// Bound for a product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut denominator = self.denominator.clone();
        denominator.extend(other.denominator.iter().cloned());
        denominator.sort();
        let mut degree = self.degree;
        for (d, o) in degree.iter_mut().zip(other.degree) {
            *d += o;
        }
        Self { denominator, degree, avoid: Vec::new() }.avoiding(union(&self.avoid, &other.avoid))
    }

    pub fn product<'a>(items: impl IntoIterator<Item = &'a PoleBound>) -> Self {
        items.into_iter().fold(Self::constant(), |acc, b| acc.mul(b))
    }

    /// Bound for a sum (or difference), over the lcm of the denominators.
    pub fn add(&self, other: &Self) -> Self {
        let lcm = multiset_lcm(&self.denominator, &other.denominator);
        let mut degree = [0; MAX_VARS];
        for (k, slot) in degree.iter_mut().enumerate() {
            let lift = |b: &Self| {
                let extra = Self::denominator_degree(&lcm, k)
                    - Self::denominator_degree(&b.denominator, k);
                b.degree[k] + extra
            };
            *slot = lift(self).max(lift(other));
        }
        Self { denominator: lcm, degree, avoid: Vec::new() }.avoiding(union(&self.avoid, &other.avoid))
    }

    /// Distinct forms that must not vanish.
    pub fn poles(&self) -> Vec<AffineForm> {
        let mut p = union(&self.denominator, &self.avoid);
        p.sort();
        p.dedup();
        p
    }
}

fn union(a: &[AffineForm], b: &[AffineForm]) -> Vec<AffineForm> {
    a.iter().chain(b).cloned().collect()
}

fn multiset_lcm(a: &[AffineForm], b: &[AffineForm]) -> Vec<AffineForm> {
    // Both sorted.
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j].clone());
            j += 1;
        } else {
            out.push(a[i].clone());
            i += 1;
            j += 1;
        }
    }
    out
}

/// A tensor grid of sample points avoiding a pole set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    axes: Vec<Vec<Rational>>,
    degree: Vec<u32>,
}

fn primes() -> impl Iterator<Item = i64> {
    (2i64..).filter(|&n| (2..).take_while(|k| k * k <= n).all(|k| n % k != 0))
}

impl Grid {
    /// `degree[k] + 1` values per variable, drawn in order from 2, 3, 5, 7, …
    /// and skipping any value at which some pole form could vanish. The first
    /// variable is fixed first; later variables also avoid every mixed form
    /// at every earlier value.
    pub fn tensor(degree: &[u32], poles: &[AffineForm]) -> Self {
        let vars = degree.len();
        assert!((1..=MAX_VARS).contains(&vars));
        let mut axes: Vec<Vec<Rational>> = Vec::with_capacity(vars);
        for (k, &deg) in degree.iter().enumerate() {
            let relevant: Vec<&AffineForm> = poles
                .iter()
                .filter(|f| f.depends_on(k) && (k + 1..MAX_VARS).all(|l| !f.depends_on(l)))
                .collect();
            let mut axis = Vec::with_capacity(deg as usize + 1);
            for p in primes() {
                if axis.len() == deg as usize + 1 {
                    break;
                }
                let x = Rational::from_integer(p);
                let ok = relevant.iter().all(|f| {
                    // Enumerate earlier-axis values this form also uses.
                    let mut points: Vec<Vec<Rational>> = alloc::vec![alloc::vec![]];
                    for (l, axis_l) in axes.iter().enumerate() {
                        if f.depends_on(l) {
                            points = points
                                .into_iter()
                                .flat_map(|pt| {
                                    axis_l.iter().map(move |y| {
                                        let mut q = pt.clone();
                                        q.push(y.clone());
                                        q
                                    })
                                })
                                .collect();
                        } else {
                            for pt in points.iter_mut() {
                                pt.push(Rational::zero());
                            }
                        }
                    }
                    points.into_iter().all(|mut pt| {
                        pt.push(x.clone());
                        pt.resize(MAX_VARS, Rational::zero());
                        !f.eval(&pt).is_zero()
                    })
                });
                if ok {
                    axis.push(x);
                }
            }
            axes.push(axis);
        }
        Self { axes, degree: degree.to_vec() }
    }

    pub fn for_bound(bound: &PoleBound, vars: usize) -> Self {
        Self::tensor(&bound.degree()[..vars], &bound.poles())
    }

    pub fn axes(&self) -> &[Vec<Rational>] {
        &self.axes
    }

    pub fn degree(&self) -> &[u32] {
        &self.degree
    }

    pub fn vars(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Axis positions of the `n`-th point (row-major, first variable slowest).
    pub fn position(&self, mut n: usize) -> Vec<usize> {
        let mut pos = alloc::vec![0; self.vars()];
        for (k, axis) in self.axes.iter().enumerate().rev() {
            pos[k] = n % axis.len();
            n /= axis.len();
        }
        pos
    }

    pub fn point(&self, n: usize) -> Vec<Rational> {
        self.position(n)
            .iter()
            .zip(&self.axes)
            .map(|(&i, axis)| axis[i].clone())
            .collect()
    }

    pub fn points(&self) -> Vec<Vec<Rational>> {
        (0..self.len()).map(|n| self.point(n)).collect()
    }
}

/// Maps `f` over `0..n`, in parallel when the `parallel` feature is on.
/// Output order is always `0..n`.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn form_display() {
        let f = AffineForm::u().sub(&AffineForm::v()).shift(&q(1, 2));
        assert_eq!(f.to_string(), "u - v + 1/2");
        assert_eq!(AffineForm::u().neg().shift(&q(-3, 2)).to_string(), "-u - 3/2");
        assert_eq!(AffineForm::constant(q(2, 1)).to_string(), "2");
    }

    #[test]
    fn pole_error_names_form() {
        let f = AffineForm::u().shift(&q(1, 2));
        let err = f.nonzero_at(&[q(-1, 2)]).unwrap_err();
        assert_eq!(
            err,
            Error::Pole { form: "u + 1/2".to_string(), point: "(-1/2)".to_string() }
        );
    }

    #[test]
    fn r_factor_bounds_add_up() {
        let k = q(1, 2);
        let u = AffineForm::u();
        let v = AffineForm::v();
        let lhs = PoleBound::product(&[
            PoleBound::r_factor(&u, &k),
            PoleBound::r_factor(&u.add(&v), &k),
            PoleBound::r_factor(&v, &k),
        ]);
        assert_eq!(lhs.degree(), [4, 4]);
        // Same factor multiset on both sides: the lcm adds nothing.
        assert_eq!(lhs.add(&lhs).degree(), [4, 4]);
    }

    #[test]
    fn unitarity_bound() {
        let k = q(1, 2);
        let u = AffineForm::u();
        let lhs = PoleBound::r_factor(&u, &k).mul(&PoleBound::r_factor(&u.neg(), &k));
        let rhs = PoleBound::rational_in(&u, 2, vec![u.clone(), u.clone()]);
        assert_eq!(lhs.add(&rhs).degree()[0], 4);
    }

    #[test]
    fn grid_avoids_poles() {
        let poles = vec![
            AffineForm::u().shift(&q(-2, 1)),
            AffineForm::u().sub(&AffineForm::v()),
            AffineForm::v().shift(&q(-7, 1)),
        ];
        let g = Grid::tensor(&[2, 2], &poles);
        assert_eq!(g.axes()[0], vec![q(3, 1), q(5, 1), q(7, 1)]);
        assert_eq!(g.axes()[1], vec![q(2, 1), q(11, 1), q(13, 1)]);
        for p in g.points() {
            for f in &poles {
                assert!(!f.eval(&p).is_zero());
            }
        }
        assert_eq!(g.len(), 9);
    }
}
