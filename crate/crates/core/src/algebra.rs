//! Finite-dimensional algebras over `Q` given by structure constants.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::linalg::{self, Matrix};
use crate::quadform::QuadraticForm;
use crate::{Error, Result};

pub const MAX_DIM: usize = 8;

/// Coordinates of an element relative to a basis `e_1, …, e_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub coords: Vec<Rational>,
}

impl AlgebraElement {
    pub fn new(coords: Vec<Rational>) -> Self {
        AlgebraElement { coords }
    }

    pub fn zero(n: usize) -> Self {
        AlgebraElement { coords: vec![Rational::zero(); n] }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.coords[i] = Rational::one();
        e
    }

    pub fn scalar(n: usize, s: Rational) -> Self {
        let mut e = Self::zero(n);
        e.coords[0] = s;
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    /// True when only the first coordinate may be nonzero.
    pub fn is_scalar(&self) -> bool {
        self.coords[1..].iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coords.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|a| -a).collect())
    }
}

/// Structure constants `e_i e_j = Σ_k c[i][j][k] e_k`, with `e_1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTable {
    dim: usize,
    c: Vec<Rational>,
}

impl MultiplicationTable {
    /// Validates dimensions, that `e_1` is a two-sided identity, and
    /// associativity on all basis triples.
    pub fn new(dim: usize, c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let t = Self::unchecked(dim, c)?;
        t.check_identity()?;
        t.check_associative()?;
        Ok(t)
    }

    fn unchecked(dim: usize, c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(Error::InvalidDimension(dim));
        }
        if c.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: c.len() });
        }
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for plane in c {
            if plane.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: plane.len() });
            }
            for row in plane {
                if row.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
                }
                flat.extend(row);
            }
        }
        Ok(MultiplicationTable { dim, c: flat })
    }

    /// Builds a table from a product rule on basis indices (0-based).
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Vec<Rational>) -> Result<Self> {
        let c = (0..dim).map(|i| (0..dim).map(|j| f(i, j)).collect()).collect();
        Self::new(dim, c)
    }

    /// Accepts an associative table whose identity is not `e_1`, recovers
    /// the identity by solving `u e_i = e_i u = e_i`, and rewrites the table in
    /// a basis starting with it.
    pub fn with_recovered_identity(dim: usize, c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let t = Self::unchecked(dim, c)?;
        t.check_associative()?;
        let n = dim;
        // unknown u; equations (u e_i)_k = δ_ik and (e_i u)_k = δ_ik
        let mut rows: Matrix = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|l| t.get(l, i, k).clone()).collect());
                rhs.push(if i == k { Rational::one() } else { Rational::zero() });
                rows.push((0..n).map(|l| t.get(i, l, k).clone()).collect());
                rhs.push(if i == k { Rational::one() } else { Rational::zero() });
            }
        }
        let mut aug: Matrix = rows
            .into_iter()
            .zip(rhs)
            .map(|(mut r, b)| {
                r.push(b);
                r
            })
            .collect();
        let pivots = linalg::rref(&mut aug);
        if pivots.contains(&n) {
            return Err(Error::IdentityViolated);
        }
        let mut u = vec![Rational::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            u[c] = aug[r][n].clone();
        }
        // complete u to a basis with standard vectors
        let mut basis = vec![u];
        for i in 0..n {
            let mut cand = basis.clone();
            cand.push(AlgebraElement::basis(n, i).coords);
            if linalg::rank(&cand) == cand.len() {
                basis = cand;
            }
            if basis.len() == n {
                break;
            }
        }
        let moved = t.rebase(&basis)?;
        moved.check_identity()?;
        Ok(moved)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Structure constant with 0-based indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> Vec<Vec<Vec<Rational>>> {
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.get(i, j, k).clone()).collect()).collect())
            .collect()
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::basis(self.dim, 0)
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim, i)
    }

    fn check_identity(&self) -> Result<()> {
        let n = self.dim;
        for j in 0..n {
            for k in 0..n {
                let want = if j == k { Rational::one() } else { Rational::zero() };
                if *self.get(0, j, k) != want || *self.get(j, 0, k) != want {
                    return Err(Error::IdentityViolated);
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_raw(&AlgebraElement::basis(n, i), &AlgebraElement::basis(n, j));
                for k in 0..n {
                    let ek = AlgebraElement::basis(n, k);
                    let left = self.product_raw(&ij, &ek);
                    let jk = self.product_raw(&AlgebraElement::basis(n, j), &ek);
                    let right = self.product_raw(&AlgebraElement::basis(n, i), &jk);
                    if left != right {
                        return Err(Error::AssociativityViolated { i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    fn product_raw(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x.coords[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.coords[j].is_zero() {
                    continue;
                }
                let s = &x.coords[i] * &y.coords[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        AlgebraElement::new(out)
    }

    fn check_element(&self, x: &AlgebraElement) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(())
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.product_raw(x, y))
    }

    /// Product of elements already known to belong to this table.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        debug_assert!(x.dim() == self.dim && y.dim() == self.dim);
        self.product_raw(x, y)
    }

    /// Rewrites the table in a new basis; `basis[i]` holds the old
    /// coordinates of the new `i`-th basis vector, the first of which must be 1.
    pub fn change_of_basis(&self, basis: &[Vec<Rational>]) -> Result<Self> {
        let t = self.rebase(basis)?;
        t.check_identity()?;
        Ok(t)
    }

    fn rebase(&self, basis: &[Vec<Rational>]) -> Result<Self> {
        let n = self.dim;
        if basis.len() != n || basis.iter().any(|b| b.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: basis.len() });
        }
        // columns are the new basis vectors
        let p = linalg::transpose(&basis.to_vec());
        let pinv = linalg::inverse(&p)?;
        let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let prod = self.product_raw(&AlgebraElement::new(basis[i].clone()), &AlgebraElement::new(basis[j].clone()));
                c[i][j] = linalg::mat_vec(&pinv, &prod.coords);
            }
        }
        Self::unchecked(n, c)
    }

    /// Basis of the center `{x : x e_i = e_i x for all i}`.
    pub fn center(&self) -> Vec<AlgebraElement> {
        let n = self.dim;
        let mut rows: Matrix = Vec::new();
        for i in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|l| self.get(l, i, k) - self.get(i, l, k)).collect());
            }
        }
        linalg::kernel(&rows, n).into_iter().map(AlgebraElement::new).collect()
    }

    pub fn is_central(&self) -> bool {
        self.center().len() == 1
    }

    /// Decides whether the algebra has a standard involution by testing
    /// that every basis element and every pairwise sum satisfies a scalar
    /// quadratic relation with the read-off trace.
    pub fn has_standard_involution(&self) -> Option<StandardInvolution> {
        let n = self.dim;
        let mut t = vec![Rational::zero(); n];
        let mut nrm = vec![Rational::zero(); n];
        t[0] = Rational::from_integer(2.into());
        nrm[0] = Rational::one();
        // Step 1
        for i in 1..n {
            let ei = self.basis_element(i);
            let sq = self.product_raw(&ei, &ei);
            t[i] = sq.coords[i].clone();
            // t_i e_i − e_i² must be scalar
            let r = ei.scale(&t[i]).sub(&sq);
            if !r.is_scalar() {
                return None;
            }
            nrm[i] = r.coords[0].clone();
        }
        // Step 2
        let mut cross = vec![vec![Rational::zero(); n]; n];
        for i in 1..n {
            for j in i + 1..n {
                let s = self.basis_element(i).add(&self.basis_element(j));
                let sq = self.product_raw(&s, &s);
                let r = s.scale(&(&t[i] + &t[j])).sub(&sq);
                if !r.is_scalar() {
                    return None;
                }
                cross[i][j] = r.coords[0].clone();
                cross[j][i] = r.coords[0].clone();
            }
        }
        Some(StandardInvolution { trace: t, norm: nrm, cross })
    }

    pub fn standard_involution(&self) -> Result<StandardInvolution> {
        self.has_standard_involution().ok_or(Error::NoStandardInvolution)
    }

    /// Radical of the reduced-norm form, which for algebras with a standard
    /// involution is the Jacobson radical.
    pub fn jacobson_radical(&self) -> Result<Vec<AlgebraElement>> {
        if self.dim != 4 {
            return Err(Error::InvalidDimension(self.dim));
        }
        let inv = self.standard_involution()?;
        Ok(inv.norm_form().radical().into_iter().map(AlgebraElement::new).collect())
    }
}

/// Trace row and norm data of a standard involution.
///
/// Sign convention: `norm[i]` is `nrd(e_i)`, so `e_i² − t_i e_i + n_i = 0`.
/// `cross[i][j]` is `nrd(e_i + e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardInvolution {
    pub trace: Vec<Rational>,
    pub norm: Vec<Rational>,
    pub cross: Vec<Vec<Rational>>,
}

impl StandardInvolution {
    pub fn dim(&self) -> usize {
        self.trace.len()
    }

    /// Polar form `T(e_i, e_j) = nrd(e_i + e_j) − nrd(e_i) − nrd(e_j)`.
    pub fn bilinear(&self, i: usize, j: usize) -> Rational {
        if i == j {
            return &self.norm[i] * Rational::from_integer(2.into());
        }
        if i == 0 {
            return self.trace[j].clone();
        }
        if j == 0 {
            return self.trace[i].clone();
        }
        &self.cross[i][j] - &self.norm[i] - &self.norm[j]
    }

    pub fn trd(&self, x: &AlgebraElement) -> Rational {
        linalg::dot(&self.trace, &x.coords)
    }

    pub fn nrd(&self, x: &AlgebraElement) -> Rational {
        let n = self.dim();
        let mut s = Rational::zero();
        for i in 0..n {
            if x.coords[i].is_zero() {
                continue;
            }
            s += &self.norm[i] * &x.coords[i] * &x.coords[i];
            for j in i + 1..n {
                if !x.coords[j].is_zero() {
                    s += self.bilinear(i, j) * &x.coords[i] * &x.coords[j];
                }
            }
        }
        s
    }

    pub fn conj(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::scalar(x.dim(), self.trd(x)).sub(x)
    }

    /// The reduced norm as a quadratic form in the table's basis.
    pub fn norm_form(&self) -> QuadraticForm {
        let n = self.dim();
        let gram = (0..n).map(|i| (0..n).map(|j| self.bilinear(i, j)).collect()).collect();
        QuadraticForm::from_gram(gram).expect("square Gram matrix")
    }
}

/// Tables used in examples and tests.
pub mod tables {
    use super::*;
    use crate::arith::rat;

    fn r(n: i64) -> Rational {
        rat(n, 1)
    }

    /// `(a, b | Q)` in the basis `1, i, j, ij`.
    pub fn quaternion(a: &Rational, b: &Rational) -> MultiplicationTable {
        let z = Rational::zero;
        let ab = a * b;
        let v = |w: [Rational; 4]| w.to_vec();
        MultiplicationTable::from_fn(4, |x, y| match (x, y) {
            (0, k) | (k, 0) => AlgebraElement::basis(4, k).coords,
            (1, 1) => v([a.clone(), z(), z(), z()]),
            (1, 2) => v([z(), z(), z(), r(1)]),
            (1, 3) => v([z(), z(), a.clone(), z()]),
            (2, 1) => v([z(), z(), z(), r(-1)]),
            (2, 2) => v([b.clone(), z(), z(), z()]),
            (2, 3) => v([z(), -b.clone(), z(), z()]),
            (3, 1) => v([z(), z(), -a.clone(), z()]),
            (3, 2) => v([z(), b.clone(), z(), z()]),
            (3, 3) => v([-ab.clone(), z(), z(), z()]),
            _ => unreachable!(),
        })
        .expect("quaternion table is associative")
    }

    /// 2×2 matrices in the basis `E11 + E22, E11 − E22, E12 + E21, E12 − E21`,
    /// which is `(1, 1 | Q)` with `i ↦ diag(1, −1)` and `j ↦ antidiag(1, 1)`.
    pub fn m2() -> MultiplicationTable {
        quaternion(&r(1), &r(1))
    }

    /// `Q[x]/(x^n)`.
    pub fn truncated_polynomial(n: usize) -> MultiplicationTable {
        MultiplicationTable::from_fn(n, |i, j| {
            let mut v = vec![Rational::zero(); n];
            if i + j < n {
                v[i + j] = Rational::one();
            }
            v
        })
        .expect("polynomial table is associative")
    }

    /// `Q × Q × … × Q` presented with basis `1, e_2, …, e_n` where `e_2..e_n`
    /// are orthogonal idempotents and `1 = Σ` of all idempotents.
    pub fn idempotents(n: usize) -> MultiplicationTable {
        // e_1 = 1 = f_1 + … + f_n; e_k = f_k for k ≥ 2
        MultiplicationTable::from_fn(n, |i, j| {
            let mut v = vec![Rational::zero(); n];
            match (i, j) {
                (0, k) | (k, 0) => v[k] = Rational::one(),
                (a, b) if a == b => v[a] = Rational::one(),
                _ => {}
            }
            v
        })
        .expect("idempotent table is associative")
    }

    /// `Q[x, y, z]/(x, y, z)²`.
    pub fn square_zero(n: usize) -> MultiplicationTable {
        MultiplicationTable::from_fn(n, |i, j| {
            let mut v = vec![Rational::zero(); n];
            match (i, j) {
                (0, k) | (k, 0) => v[k] = Rational::one(),
                _ => {}
            }
            v
        })
        .expect("square-zero table is associative")
    }
}

#[cfg(test)]
mod tests {
    use super::tables::*;
    use super::*;
    use crate::arith::rat;

    fn el(v: &[i64]) -> AlgebraElement {
        AlgebraElement::new(v.iter().map(|&x| rat(x, 1)).collect())
    }

    type M2 = [[Rational; 2]; 2];

    fn m2_mul(a: &M2, b: &M2) -> M2 {
        let mut c: M2 = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
            }
        }
        c
    }

    fn image(x: &AlgebraElement) -> M2 {
        // 1 ↦ I, i ↦ diag(1,−1), j ↦ antidiag(1,1), ij ↦ [[0,1],[−1,0]]
        let c = &x.coords;
        [
            [&c[0] + &c[1], &c[2] + &c[3]],
            [&c[2] - &c[3], &c[0] - &c[1]],
        ]
    }

    #[test]
    fn matrix_ring_products() {
        let t = m2();
        let i = el(&[0, 1, 0, 0]);
        let j = el(&[0, 0, 1, 0]);
        let ij = t.multiply(&i, &j).unwrap();
        assert_eq!(image(&ij), [[rat(0, 1), rat(1, 1)], [rat(-1, 1), rat(0, 1)]]);
        // homomorphism on all 16 basis products
        for a in 0..4 {
            for b in 0..4 {
                let x = t.basis_element(a);
                let y = t.basis_element(b);
                assert_eq!(image(&t.mul(&x, &y)), m2_mul(&image(&x), &image(&y)));
            }
        }
        let x = el(&[3, -1, 2, 5]);
        assert_eq!(t.multiply(&t.one(), &x).unwrap(), x);
        assert!(t.multiply(&t.one(), &el(&[1, 0])).is_err());
    }

    #[test]
    fn idempotent_product() {
        let t = idempotents(3);
        let p = t.mul(&t.basis_element(1), &t.basis_element(2));
        assert!(p.is_zero());
    }

    #[test]
    fn centers() {
        assert_eq!(m2().center().len(), 1);
        assert_eq!(truncated_polynomial(4).center().len(), 4);
        let h = quaternion(&rat(-1, 1), &rat(-1, 1));
        let c = h.center();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_scalar());
    }

    #[test]
    fn involution_detection() {
        let h = quaternion(&rat(-1, 1), &rat(-1, 1));
        let inv = h.has_standard_involution().unwrap();
        assert_eq!(&inv.trace[1..], &[rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert!(quaternion(&rat(3, 2), &rat(-7, 5)).has_standard_involution().is_some());
        assert!(idempotents(3).has_standard_involution().is_none());
        assert!(truncated_polynomial(4).has_standard_involution().is_none());
    }

    #[test]
    fn trace_and_norm() {
        let h = quaternion(&rat(-1, 1), &rat(-1, 1));
        let inv = h.standard_involution().unwrap();
        let one = h.one();
        assert_eq!(inv.trd(&one), rat(2, 1));
        assert_eq!(inv.nrd(&one), rat(1, 1));
        assert_eq!(inv.conj(&one), one);
        let x = el(&[0, 1, 1, 0]);
        assert_eq!(inv.trd(&x), rat(0, 1));
        assert_eq!(inv.nrd(&x), rat(2, 1));

        // matrix trace and determinant on the images
        let t = m2();
        let inv = t.standard_involution().unwrap();
        for v in [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [2, -3, 5, 7]] {
            let x = el(&v);
            let m = image(&x);
            assert_eq!(inv.trd(&x), &m[0][0] + &m[1][1]);
            assert_eq!(inv.nrd(&x), &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]);
        }
    }

    #[test]
    fn radicals() {
        assert!(quaternion(&rat(2, 1), &rat(-3, 1)).jacobson_radical().unwrap().is_empty());
        let rad = square_zero(4).jacobson_radical().unwrap();
        assert_eq!(rad.len(), 3);
        assert!(rad.iter().all(|x| x.coords[0].is_zero()));
        assert!(matches!(idempotents(4).jacobson_radical(), Err(Error::NoStandardInvolution)));
        assert!(matches!(idempotents(3).jacobson_radical(), Err(Error::InvalidDimension(3))));
    }

    #[test]
    fn construction_checks() {
        let mut c = quaternion(&rat(-1, 1), &rat(-1, 1)).constants();
        // break associativity: i² = 2 instead of −1
        c[1][1][0] = rat(2, 1);
        c[1][1][1] = rat(1, 1);
        assert!(matches!(MultiplicationTable::new(4, c), Err(Error::AssociativityViolated { .. })));
        let mut c = quaternion(&rat(-1, 1), &rat(-1, 1)).constants();
        c[0][1][1] = rat(2, 1);
        assert!(matches!(MultiplicationTable::new(4, c), Err(Error::IdentityViolated)));
        assert!(matches!(MultiplicationTable::new(9, vec![]), Err(Error::InvalidDimension(9))));
    }

    #[test]
    fn identity_recovery() {
        let h = quaternion(&rat(-1, 1), &rat(-1, 1));
        // basis 1+i, i, j, k: the identity is e_1 − e_2
        let basis = vec![
            vec![rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)],
        ];
        let shifted = h.rebase(&basis).unwrap();
        assert!(MultiplicationTable::new(4, shifted.constants()).is_err());
        let fixed = MultiplicationTable::with_recovered_identity(4, shifted.constants()).unwrap();
        assert!(fixed.has_standard_involution().is_some());
        assert!(fixed.is_central());
    }
}
