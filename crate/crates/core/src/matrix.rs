//! Exact sparse matrices on tensor powers of the graded fundamental space.
//!
//! A [`GradedMatrix`] stores the matrix entries of an operator on
//! V^{⊗n}, V = C^{M|N}, in row-compressed form. Composite basis vectors are
//! multi-indices with the first tensor factor most significant. The graded
//! tensor product sign convention lives in exactly one place, [`koszul`]:
//! the operator E_{i₁j₁} ⊗ … ⊗ E_{iₙjₙ} has the single matrix entry
//!
//! ```text
//!   (−1)^{ Σ_{p<q} [i_q]([i_p] + [j_p]) }
//! ```
//!
//! at (i₁…iₙ, j₁…jₙ). This is the unique realization for which
//! (A⊗B)(C⊗D) = (−1)^{[B][C]} AC ⊗ BD on homogeneous operators. Expansion
//! coefficients ("coefficient form") and matrix entries therefore differ by
//! that sign, and every operation that works per tensor factor (embedding,
//! partial super-transposition, block extraction) converts through it.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::grading::SuperSpace;
use crate::rational::Rational;

type Row = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    space: SuperSpace,
    factors: usize,
    dim: usize,
    rows: Vec<Row>,
}

/// Sign exponent relating the coefficient of E_{I,J} to its matrix entry.
/// `row` and `col` are 0-based digit strings.
pub(crate) fn koszul(space: &SuperSpace, row: &[usize], col: &[usize]) -> u8 {
    let mut prefix = 0u8;
    let mut acc = 0u8;
    for (&i, &j) in row.iter().zip(col) {
        let pi = space.parity0(i);
        acc ^= pi & prefix;
        prefix ^= pi ^ space.parity0(j);
    }
    acc
}

fn dim_of(space: &SuperSpace, factors: usize) -> usize {
    space.dim().pow(factors as u32)
}

impl GradedMatrix {
    pub fn zero(space: SuperSpace, factors: usize) -> Self {
        assert!(factors >= 1, "a graded matrix needs at least one factor");
        let dim = dim_of(&space, factors);
        Self { space, factors, dim, rows: vec![Vec::new(); dim] }
    }

    pub fn identity(space: SuperSpace, factors: usize) -> Self {
        Self::scalar(space, factors, Rational::one())
    }

    /// `c · 𝕀`.
    pub fn scalar(space: SuperSpace, factors: usize, c: Rational) -> Self {
        let mut m = Self::zero(space, factors);
        if !c.is_zero() {
            for (r, row) in m.rows.iter_mut().enumerate() {
                row.push((r, c.clone()));
            }
        }
        m
    }

    /// The matrix unit E_ij on a single factor (1-based indices).
    pub fn elementary(space: SuperSpace, i: usize, j: usize) -> Result<Self> {
        Self::from_entries(space, 1, [(vec![i], vec![j], Rational::one())])
    }

    /// Builds a matrix from 1-based multi-index entries; duplicates are summed.
    pub fn from_entries<I>(space: SuperSpace, factors: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<usize>, Rational)>,
    {
        let mut m = Self::zero(space, factors);
        let mut raw: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m.dim];
        for (row, col, value) in entries {
            let r = m.linear_from_one_based(&row)?;
            let c = m.linear_from_one_based(&col)?;
            raw[r].push((c, value));
        }
        for (r, mut row) in raw.into_iter().enumerate() {
            row.sort_by_key(|e| e.0);
            m.rows[r] = coalesce(row);
        }
        Ok(m)
    }

    /// Builds from 0-based linear (row, col, value) triples. Duplicates summed.
    pub(crate) fn from_linear(
        space: SuperSpace,
        factors: usize,
        triples: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut m = Self::zero(space, factors);
        for (r, c, v) in triples {
            m.rows[r].push((c, v));
        }
        for row in m.rows.iter_mut() {
            row.sort_by_key(|e| e.0);
            *row = coalesce(core::mem::take(row));
        }
        m
    }

    pub fn space(&self) -> SuperSpace {
        self.space
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    fn linear_from_one_based(&self, idx: &[usize]) -> Result<usize> {
        if idx.len() != self.factors {
            return Err(Error::FactorMismatch { left: idx.len(), right: self.factors });
        }
        let d = self.space.dim();
        let mut lin = 0;
        for &i in idx {
            if i == 0 || i > d {
                return Err(Error::IndexOutOfRange { index: i, dim: d });
            }
            lin = lin * d + (i - 1);
        }
        Ok(lin)
    }

    pub(crate) fn digits(&self, mut lin: usize) -> Vec<usize> {
        digits_of(self.space.dim(), self.factors, &mut lin)
    }

    fn one_based(&self, lin: usize) -> Vec<usize> {
        self.digits(lin).into_iter().map(|x| x + 1).collect()
    }

    pub fn entry(&self, row: &[usize], col: &[usize]) -> Result<Rational> {
        let r = self.linear_from_one_based(row)?;
        let c = self.linear_from_one_based(col)?;
        Ok(self.get(r, c))
    }

    pub(crate) fn get(&self, r: usize, c: usize) -> Rational {
        match self.rows[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.rows[r][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Nonzero entries as 1-based (row, column, value), in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, Vec<usize>, &Rational)> + '_ {
        self.linear_entries()
            .map(move |(r, c, v)| (self.one_based(r), self.one_based(c), v))
    }

    pub(crate) fn linear_entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        if self.factors != other.factors {
            return Err(Error::FactorMismatch { left: self.factors, right: other.factors });
        }
        Ok(())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let n = self.dim;
        let mut acc: Vec<Rational> = vec![Rational::zero(); n];
        let mut seen = vec![false; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(n);
        for row in &self.rows {
            for (k, x) in row {
                for (j, y) in &rhs.rows[*k] {
                    let prod = x * y;
                    if seen[*j] {
                        acc[*j] += &prod;
                    } else {
                        seen[*j] = true;
                        touched.push(*j);
                        acc[*j] = prod;
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                seen[j] = false;
                let v = core::mem::take(&mut acc[j]);
                if !v.is_zero() {
                    out.push((j, v));
                }
            }
            touched.clear();
            rows.push(out);
        }
        Self { space: self.space, factors: self.factors, dim: n, rows }
    }

    fn zip_rows(&self, rhs: &Self, sign: &Rational) -> Self {
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                        out.push(a[i].clone());
                        i += 1;
                    } else if i == a.len() || b[j].0 < a[i].0 {
                        out.push((b[j].0, sign * &b[j].1));
                        j += 1;
                    } else {
                        let v = &a[i].1 + &(sign * &b[j].1);
                        if !v.is_zero() {
                            out.push((a[i].0, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                out
            })
            .collect();
        Self { space: self.space, factors: self.factors, dim: self.dim, rows }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        Ok(self.zip_rows(rhs, &Rational::one()))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        Ok(self.zip_rows(rhs, &Rational::from_integer(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.space, self.factors);
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(j, v)| (*j, v * c)).collect())
            .collect();
        Self { space: self.space, factors: self.factors, dim: self.dim, rows }
    }

    /// Returns `c` if the matrix equals `c · 𝕀`.
    pub fn as_scalar(&self) -> Option<Rational> {
        let c = match self.rows[0].first() {
            Some((0, v)) => v.clone(),
            Some(_) => return None,
            None => Rational::zero(),
        };
        let ok = self.rows.iter().enumerate().all(|(r, row)| {
            if c.is_zero() {
                row.is_empty()
            } else {
                row.len() == 1 && row[0].0 == r && row[0].1 == c
            }
        });
        ok.then_some(c)
    }

    /// The first entry (row-major) where `self − other` is nonzero, as
    /// 1-based (row, column, difference).
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<usize>, Vec<usize>, Rational)> {
        let diff = self.try_sub(other).ok()?;
        let (r, c, v) = diff.linear_entries().next()?;
        Some((self.one_based(r), self.one_based(c), v.clone()))
    }

    /// Operator parity if every nonzero entry has the same
    /// [row] + [column]; `Some(0)` for the zero matrix.
    pub fn operator_parity(&self) -> Option<u8> {
        let par = parity_table(&self.space, self.factors);
        let mut found = None;
        for (r, c, _) in self.linear_entries() {
            let p = par[r] ^ par[c];
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(0))
    }

    /// A ⊗ B with (A⊗B)_{(i,k),(j,l)} = (−1)^{[k]([i]+[j])} A_ij B_kl, where
    /// the brackets are composite parities of the multi-indices.
    pub fn graded_kron(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let pa = parity_table(&self.space, self.factors);
        let pb = parity_table(&self.space, other.factors);
        let factors = self.factors + other.factors;
        let dim = self.dim * other.dim;
        let mut rows = Vec::with_capacity(dim);
        for (i, arow) in self.rows.iter().enumerate() {
            for (k, brow) in other.rows.iter().enumerate() {
                let mut out = Vec::with_capacity(arow.len() * brow.len());
                for (j, a) in arow {
                    let flip = pb[k] & (pa[i] ^ pa[*j]);
                    for (l, b) in brow {
                        let v = a * b;
                        out.push((j * other.dim + l, if flip == 1 { -v } else { v }));
                    }
                }
                rows.push(out);
            }
        }
        Ok(Self { space: self.space, factors, dim, rows })
    }

    /// Places `self` on the (sorted, 1-based) factor set `on` of an
    /// `total`-factor space, acting as the identity elsewhere. Equivalent to
    /// `self ⊗ 𝕀` conjugated by the graded permutation that moves the leading
    /// factors to `on`.
    pub fn embed(&self, on: &[usize], total: usize) -> Result<Self> {
        let sorted = on.windows(2).all(|w| w[0] < w[1]);
        let in_range = on.iter().all(|&f| f >= 1 && f <= total);
        if on.len() != self.factors || !sorted || !in_range {
            return Err(Error::InvalidFactorSet { set: on.to_vec(), total });
        }
        let d = self.space.dim();
        let rest: Vec<usize> = (1..=total).filter(|f| !on.contains(f)).collect();
        let rest_count = d.pow(rest.len() as u32);
        let mut triples = Vec::with_capacity(self.nnz() * rest_count);
        let mut row_digits = vec![0usize; total];
        let mut col_digits = vec![0usize; total];
        for (r, c, v) in self.linear_entries() {
            let rs = self.digits(r);
            let cs = self.digits(c);
            let coef = if koszul(&self.space, &rs, &cs) == 1 { -v } else { v.clone() };
            for (pos, f) in on.iter().enumerate() {
                row_digits[f - 1] = rs[pos];
                col_digits[f - 1] = cs[pos];
            }
            for t in 0..rest_count {
                let mut t_lin = t;
                let td = digits_of(d, rest.len(), &mut t_lin);
                for (pos, f) in rest.iter().enumerate() {
                    row_digits[f - 1] = td[pos];
                    col_digits[f - 1] = td[pos];
                }
                let s = koszul(&self.space, &row_digits, &col_digits);
                triples.push((
                    linear_of(d, &row_digits),
                    linear_of(d, &col_digits),
                    if s == 1 { -&coef } else { coef.clone() },
                ));
            }
        }
        Ok(Self::from_linear(self.space, total, triples))
    }

    /// Partial super-transposition in tensor factor `factor` (1-based): in
    /// coefficient form, E_ij ↦ (−1)^{[i][j]+[j]} θᵢθⱼ E_{j̄ī} on that factor.
    pub fn super_transpose(&self, factor: usize) -> Result<Self> {
        if factor == 0 || factor > self.factors {
            return Err(Error::FactorOutOfRange { factor, factors: self.factors });
        }
        let d = self.space.dim();
        let k = factor - 1;
        let s = &self.space;
        let triples = self
            .linear_entries()
            .map(|(r, c, v)| {
                let mut rs = self.digits(r);
                let mut cs = self.digits(c);
                let before = koszul(s, &rs, &cs);
                let (i, j) = (rs[k], cs[k]);
                let pi = s.parity0(i);
                let pj = s.parity0(j);
                let theta = s.theta_0(i) * s.theta_0(j);
                rs[k] = s.conj0(j);
                cs[k] = s.conj0(i);
                let after = koszul(s, &rs, &cs);
                let flip = before ^ after ^ (pi & pj) ^ pj ^ (theta < 0) as u8;
                let val = if flip == 1 { -v } else { v.clone() };
                (linear_of(d, &rs), linear_of(d, &cs), val)
            })
            .collect::<Vec<_>>();
        Ok(Self::from_linear(self.space, self.factors, triples))
    }

    /// Exact inverse by Gauss–Jordan elimination over the rationals.
    pub fn invert(&self) -> Result<Self> {
        let n = self.dim;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                let mut dense = vec![Rational::zero(); n];
                for (c, v) in &self.rows[r] {
                    dense[*c] = v.clone();
                }
                dense
            })
            .collect();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                let mut e = vec![Rational::zero(); n];
                e[r] = Rational::one();
                e
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::Singular { column: self.one_based(col) })?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].recip().expect("nonzero pivot");
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                if !x.is_zero() {
                    *x *= &p;
                }
            }
            let (pivot_a, pivot_inv) = (a[col].clone(), inv[col].clone());
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_a) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
                for (x, y) in inv[r].iter_mut().zip(&pivot_inv) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        let rows = inv
            .into_iter()
            .map(|dense| {
                dense
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Ok(Self { space: self.space, factors: self.factors, dim: n, rows })
    }

    /// The coefficient X^{ij} in `self = Σ E_ij ⊗ X^{ij}`, where E_ij acts on
    /// the first factor (1-based i, j). Requires at least two factors.
    pub fn leading_block(&self, i: usize, j: usize) -> Result<Self> {
        if self.factors < 2 {
            return Err(Error::FactorMismatch { left: self.factors, right: 2 });
        }
        let d = self.space.dim();
        for x in [i, j] {
            if x == 0 || x > d {
                return Err(Error::IndexOutOfRange { index: x, dim: d });
            }
        }
        let inner = self.factors - 1;
        let idim = self.dim / d;
        let par = parity_table(&self.space, inner);
        let outer = self.space.parity0(i - 1) ^ self.space.parity0(j - 1);
        let mut out = Self::zero(self.space, inner);
        for (q, row) in out.rows.iter_mut().enumerate() {
            let flip = par[q] & outer;
            *row = self.rows[(i - 1) * idim + q]
                .iter()
                .filter(|(c, _)| c / idim == j - 1)
                .map(|(c, v)| (c % idim, if flip == 1 { -v } else { v.clone() }))
                .collect();
        }
        Ok(out)
    }

    /// The graded swap of adjacent factors `k`, `k+1` (1-based):
    /// x ⊗ y ↦ (−1)^{[x][y]} y ⊗ x.
    pub fn graded_swap(space: SuperSpace, factors: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= factors {
            return Err(Error::FactorOutOfRange { factor: k, factors });
        }
        let d = space.dim();
        let dim = dim_of(&space, factors);
        let triples = (0..dim).map(|c| {
            let mut lin = c;
            let mut ds = digits_of(d, factors, &mut lin);
            let sign = space.parity0(ds[k - 1]) & space.parity0(ds[k]);
            ds.swap(k - 1, k);
            (linear_of(d, &ds), c, Rational::sign(sign))
        });
        Ok(Self::from_linear(space, factors, triples.collect::<Vec<_>>()))
    }

    /// Diagonal grading operator (−1)^{[q]} on the composite basis.
    pub fn parity_operator(space: SuperSpace, factors: usize) -> Self {
        let par = parity_table(&space, factors);
        let triples = par.iter().enumerate().map(|(q, p)| (q, q, Rational::sign(*p)));
        Self::from_linear(space, factors, triples.collect::<Vec<_>>())
    }
}

/// XY − (−1)^{px·py} YX.
pub fn super_commutator(x: &GradedMatrix, px: u8, y: &GradedMatrix, py: u8) -> GradedMatrix {
    let xy = x * y;
    let yx = y * x;
    if px & py == 1 {
        &xy + &yx
    } else {
        &xy - &yx
    }
}

/// An exact linear span of matrices (flattened), kept in reduced row
/// echelon form.
#[derive(Clone, Debug, Default)]
pub struct LinearSpan {
    len: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl LinearSpan {
    /// An empty span of matrices with `len` entries.
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn flatten(&self, m: &GradedMatrix) -> Vec<Rational> {
        assert_eq!(m.dim * m.dim, self.len, "matrix size does not match the span");
        let mut v = vec![Rational::zero(); self.len];
        for (r, c, x) in m.linear_entries() {
            v[r * m.dim + c] = x.clone();
        }
        v
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, m: &GradedMatrix) -> bool {
        self.reduce(self.flatten(m)).iter().all(Rational::is_zero)
    }

    /// Adds `m`; true if it was independent of the span.
    pub fn insert(&mut self, m: &GradedMatrix) -> bool {
        let mut v = self.reduce(self.flatten(m));
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let f = row[pivot].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

pub(crate) fn digits_of(d: usize, n: usize, lin: &mut usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = *lin % d;
        *lin /= d;
    }
    out
}

pub(crate) fn linear_of(d: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

/// Composite parity of every basis index of V^{⊗factors}.
pub(crate) fn parity_table(space: &SuperSpace, factors: usize) -> Vec<u8> {
    let mut table = vec![0u8];
    for _ in 0..factors {
        let mut next = Vec::with_capacity(table.len() * space.dim());
        for p in &table {
            for i in 0..space.dim() {
                next.push(p ^ space.parity0(i));
            }
        }
        table = next;
    }
    table
}

fn coalesce(sorted: Row) -> Row {
    let mut out: Row = Vec::with_capacity(sorted.len());
    for (c, v) in sorted {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += &v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

macro_rules! checked_op {
    ($tr:ident, $method:ident, $via:ident) => {
        impl $tr<&GradedMatrix> for &GradedMatrix {
            type Output = GradedMatrix;
            /// Panics if the operands live on different spaces.
            fn $method(self, rhs: &GradedMatrix) -> GradedMatrix {
                self.$via(rhs).expect("incompatible graded matrices")
            }
        }
    };
}

checked_op!(Mul, mul, try_mul);
checked_op!(Add, add, try_add);
checked_op!(Sub, sub, try_sub);

impl Neg for &GradedMatrix {
    type Output = GradedMatrix;
    fn neg(self) -> GradedMatrix {
        self.scale(&Rational::from_integer(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(m: usize, n: usize, t: i64) -> SuperSpace {
        SuperSpace::new(m, n, t).unwrap()
    }

    fn e(s: SuperSpace, i: usize, j: usize) -> GradedMatrix {
        GradedMatrix::elementary(s, i, j).unwrap()
    }

    #[test]
    fn elementary_units_multiply() {
        let s = sp(2, 0, 1);
        let m = e(s, 1, 2);
        assert_eq!(m.entry(&[1], &[2]).unwrap(), Rational::one());
        assert_eq!(m.nnz(), 1);
        assert_eq!(&e(s, 1, 2) * &e(s, 2, 1), e(s, 1, 1));
        assert!((&e(s, 1, 2) * &e(s, 1, 2)).is_zero());
        assert!(GradedMatrix::elementary(s, 3, 1).is_err());
    }

    #[test]
    fn transpose_of_unit_symplectic() {
        // All parities zero, θ₁θ₂ = −1 and E_{2̄1̄} = E_12.
        let s = sp(0, 2, -1);
        let t = e(s, 1, 2).super_transpose(1).unwrap();
        assert_eq!(t, e(s, 1, 2).scale(&Rational::from_integer(-1)));
    }

    #[test]
    fn kron_bosonic_is_plain_kronecker() {
        let s = sp(2, 0, 1);
        let a = GradedMatrix::from_entries(
            s,
            1,
            [
                (vec![1], vec![1], Rational::from_integer(2)),
                (vec![1], vec![2], Rational::from_integer(3)),
                (vec![2], vec![1], Rational::new(1, 2)),
            ],
        )
        .unwrap();
        let b = a.scale(&Rational::from_integer(5));
        let k = a.graded_kron(&b).unwrap();
        for (r1, c1, x) in a.entries() {
            for (r2, c2, y) in b.entries() {
                let got = k.entry(&[r1[0], r2[0]], &[c1[0], c2[0]]).unwrap();
                assert_eq!(got, x * y);
            }
        }
        assert_eq!(k.nnz(), 9);
    }

    #[test]
    fn kron_identities_and_mismatch() {
        let s = sp(1, 2, 1);
        let i1 = GradedMatrix::identity(s, 1);
        assert_eq!(i1.graded_kron(&i1).unwrap(), GradedMatrix::identity(s, 2));
        let other = GradedMatrix::identity(sp(3, 0, 1), 1);
        assert_eq!(i1.graded_kron(&other), Err(Error::SpaceMismatch));
    }

    #[test]
    fn koszul_rule_on_odd_units() {
        // (E13⊗E31)(E31⊗E13) = (−1)^{[E31][E31]} E11⊗E33 = −E11⊗E33.
        let s = sp(1, 2, 1);
        let lhs = &e(s, 1, 3).graded_kron(&e(s, 3, 1)).unwrap()
            * &e(s, 3, 1).graded_kron(&e(s, 1, 3)).unwrap();
        let rhs = e(s, 1, 1).graded_kron(&e(s, 3, 3)).unwrap();
        assert_eq!(lhs, -&rhs);
    }

    #[test]
    fn embed_errors() {
        let s = sp(2, 0, 1);
        let a = GradedMatrix::identity(s, 2);
        assert!(a.embed(&[1], 3).is_err());
        assert!(a.embed(&[2, 1], 3).is_err());
        assert!(a.embed(&[1, 4], 3).is_err());
        assert_eq!(a.embed(&[1, 3], 3).unwrap(), GradedMatrix::identity(s, 3));
    }

    #[test]
    fn transpose_errors() {
        let s = sp(2, 0, 1);
        let a = GradedMatrix::identity(s, 2);
        assert_eq!(
            a.super_transpose(3),
            Err(Error::FactorOutOfRange { factor: 3, factors: 2 })
        );
    }

    #[test]
    fn invert_diagonal_and_singular() {
        let s = sp(1, 2, 1);
        let d = GradedMatrix::from_entries(
            s,
            1,
            [
                (vec![1], vec![1], Rational::from_integer(2)),
                (vec![2], vec![2], Rational::new(-1, 3)),
                (vec![3], vec![3], Rational::from_integer(7)),
            ],
        )
        .unwrap();
        let inv = d.invert().unwrap();
        assert_eq!(inv.entry(&[2], &[2]).unwrap(), Rational::from_integer(-3));
        assert_eq!(inv.entry(&[3], &[3]).unwrap(), Rational::new(1, 7));
        assert_eq!(GradedMatrix::identity(s, 2).invert().unwrap(), GradedMatrix::identity(s, 2));
        let sing = e(s, 1, 1);
        assert_eq!(sing.invert(), Err(Error::Singular { column: vec![2] }));
    }

    #[test]
    fn scalar_detection() {
        let s = sp(1, 2, 1);
        let c = GradedMatrix::scalar(s, 2, Rational::new(3, 4));
        assert_eq!(c.as_scalar(), Some(Rational::new(3, 4)));
        assert_eq!(GradedMatrix::zero(s, 1).as_scalar(), Some(Rational::zero()));
        assert_eq!(e(s, 1, 1).as_scalar(), None);
    }

    #[test]
    fn leading_block_round_trip() {
        let s = sp(1, 2, 1);
        let x = e(s, 2, 3).graded_kron(&e(s, 3, 1)).unwrap();
        let y = e(s, 3, 1).graded_kron(&e(s, 2, 2)).unwrap();
        let sum = &x + &y;
        assert_eq!(sum.leading_block(2, 3).unwrap(), e(s, 3, 1));
        assert_eq!(sum.leading_block(3, 1).unwrap(), e(s, 2, 2));
        assert!(sum.leading_block(1, 1).unwrap().is_zero());
    }
}
