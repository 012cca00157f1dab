//! The Z2-graded fundamental space of gl(M|N): parities, the signs θᵢ,
//! conjugate indices and the crossing parameter κ.
//!
//! Public indices are 1-based. The `*0` helpers take 0-based indices and skip
//! range checks; they are what the matrix kernels use.

use core::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An (M, N, θ₀) triple. N is even, M + N ≥ 1, θ₀ = ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperSpace {
    m: usize,
    n: usize,
    theta0: i8,
}

impl SuperSpace {
    pub fn new(m: usize, n: usize, theta0: i64) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::OddFermionicBlock(n));
        }
        if theta0 != 1 && theta0 != -1 {
            return Err(Error::InvalidTheta0(theta0));
        }
        if m + n == 0 {
            return Err(Error::EmptySpace);
        }
        Ok(Self { m, n, theta0: theta0 as i8 })
    }

    /// so(M): N = 0, θ₀ = +1.
    pub fn orthogonal(m: usize) -> Result<Self> {
        Self::new(m, 0, 1)
    }

    /// sp(N): M = 0, θ₀ = −1.
    pub fn symplectic(n: usize) -> Result<Self> {
        Self::new(0, n, -1)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta0(&self) -> i8 {
        self.theta0
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    fn check(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.dim() {
            Err(Error::IndexOutOfRange { index: i, dim: self.dim() })
        } else {
            Ok(i - 1)
        }
    }

    /// [i] ∈ {0, 1} with (−1)^[i] = θ₀ on the first block and −θ₀ on the second.
    pub fn parity(&self, i: usize) -> Result<u8> {
        self.check(i).map(|i0| self.parity0(i0))
    }

    pub fn theta(&self, i: usize) -> Result<i8> {
        self.check(i).map(|i0| self.theta_0(i0))
    }

    pub fn conjugate_index(&self, i: usize) -> Result<usize> {
        self.check(i).map(|i0| self.conj0(i0) + 1)
    }

    /// κ = (M − N − 2)·θ₀ / 2.
    pub fn kappa(&self) -> Rational {
        let twice = (self.m as i64 - self.n as i64 - 2) * self.theta0 as i64;
        Rational::new(twice, 2)
    }

    /// so(1) and κ = 0 are admissible but degenerate: for κ = 0 the two poles
    /// of R(u) coincide.
    pub fn is_degenerate(&self) -> bool {
        self.dim() == 1 || self.kappa().is_zero()
    }

    #[inline]
    pub(crate) fn parity0(&self, i0: usize) -> u8 {
        let first_block_odd = self.theta0 < 0;
        (first_block_odd != (i0 >= self.m)) as u8
    }

    #[inline]
    pub(crate) fn theta_0(&self, i0: usize) -> i8 {
        if i0 < self.m + self.n / 2 {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub(crate) fn conj0(&self, i0: usize) -> usize {
        if i0 < self.m {
            self.m - 1 - i0
        } else {
            2 * self.m + self.n - 1 - i0
        }
    }

    /// The regression family: so(3), so(4), so(5), sp(2), sp(4), osp(1|2),
    /// osp(2|2), osp(3|2).
    pub fn regression_family() -> [SuperSpace; 8] {
        let s = |m, n, t| SuperSpace::new(m, n, t).expect("valid");
        [
            s(3, 0, 1),
            s(4, 0, 1),
            s(5, 0, 1),
            s(0, 2, -1),
            s(0, 4, -1),
            s(1, 2, 1),
            s(2, 2, 1),
            s(3, 2, 1),
        ]
    }
}

impl fmt::Display for SuperSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.theta0 > 0 { '+' } else { '-' };
        write!(f, "(M={}, N={}, theta0={}1)", self.m, self.n, sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(m: usize, n: usize, t: i64) -> SuperSpace {
        SuperSpace::new(m, n, t).unwrap()
    }

    #[test]
    fn parity_examples() {
        assert_eq!(sp(3, 0, 1).parity(2), Ok(0));
        assert_eq!(sp(0, 2, -1).parity(1), Ok(0));
        assert_eq!(sp(1, 2, 1).parity(3), Ok(1));
        assert_eq!(sp(1, 2, -1).parity(1), Ok(1));
        assert_eq!(sp(1, 2, -1).parity(2), Ok(0));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(sp(2, 2, 1).theta(3), Ok(1));
        assert_eq!(sp(2, 2, 1).theta(4), Ok(-1));
        assert_eq!(sp(1, 0, 1).theta(1), Ok(1));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(sp(2, 2, 1).conjugate_index(1), Ok(2));
        assert_eq!(sp(2, 2, 1).conjugate_index(3), Ok(4));
        assert_eq!(sp(0, 2, -1).conjugate_index(2), Ok(1));
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(sp(3, 0, 1).kappa(), Rational::new(1, 2));
        assert_eq!(sp(0, 2, -1).kappa(), Rational::from_integer(2));
        assert_eq!(sp(1, 2, 1).kappa(), Rational::new(-3, 2));
    }

    #[test]
    fn rejects_invalid() {
        assert_eq!(SuperSpace::new(3, 1, 1), Err(Error::OddFermionicBlock(1)));
        assert_eq!(SuperSpace::new(3, 0, 0), Err(Error::InvalidTheta0(0)));
        assert_eq!(SuperSpace::new(0, 0, 1), Err(Error::EmptySpace));
        let s = sp(2, 2, 1);
        assert_eq!(s.parity(0), Err(Error::IndexOutOfRange { index: 0, dim: 4 }));
        assert!(s.theta(5).is_err());
        assert!(s.conjugate_index(5).is_err());
    }

    #[test]
    fn degenerate_flags() {
        assert!(sp(1, 0, 1).is_degenerate());
        assert!(sp(2, 0, 1).is_degenerate());
        assert!(!sp(3, 0, 1).is_degenerate());
    }

    proptest! {
        #[test]
        fn sign_and_conjugation_laws(m in 0usize..6, half in 0usize..4, t in prop_oneof![Just(1i64), Just(-1i64)]) {
            prop_assume!(m + 2 * half > 0);
            let s = sp(m, 2 * half, t);
            let mut first = None;
            let mut second = None;
            for i in 1..=s.dim() {
                let ib = s.conjugate_index(i).unwrap();
                prop_assert_eq!(s.conjugate_index(ib).unwrap(), i);
                let p = s.parity(i).unwrap();
                let lhs = s.theta(i).unwrap() * s.theta(ib).unwrap();
                let rhs = s.theta0() * if p == 0 { 1 } else { -1 };
                prop_assert_eq!(lhs, rhs);
                let block = if i <= m { &mut first } else { &mut second };
                match *block {
                    None => *block = Some(p),
                    Some(q) => prop_assert_eq!(p, q),
                }
            }
        }
    }
}
