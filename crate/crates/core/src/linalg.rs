//! Exact linear algebra over `Q` and integer Hermite forms.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::{Error, Result};

pub type Matrix = Vec<Vec<Rational>>;

pub fn zero_matrix(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zero_matrix(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zero_matrix(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Basis of `{x : m x = 0}`.
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -w[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut w = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            w.swap(p, c);
            det = -det;
        }
        det *= &w[c][c];
        let inv = w[c][c].recip();
        for i in c + 1..n {
            if w[i][c].is_zero() {
                continue;
            }
            let f = &w[i][c] * &inv;
            for j in c..n {
                let t = &f * &w[c][j];
                w[i][j] -= t;
            }
        }
    }
    det
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::SingularMatrix);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `m x = v` for a square invertible `m`.
pub fn solve(m: &Matrix, v: &[Rational]) -> Result<Vec<Rational>> {
    Ok(mat_vec(&inverse(m)?, v))
}

/// Lower-triangular row Hermite form of the integer lattice spanned by `rows`.
///
/// Row `k` of the result is zero beyond column `k`, has a nonnegative
/// diagonal, and entries left of a positive diagonal in lower rows are
/// reduced into `[0, diagonal)`. A zero diagonal marks a missing pivot and
/// then the whole row is zero.
pub fn hnf_lower(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for c in (0..n).rev() {
        // gcd-combine all rows on column c into one pivot row
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::new();
        for r in work.drain(..) {
            if r[c].is_zero() {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(p) => {
                    let e = p[c].extended_gcd(&r[c]);
                    let (pa, ra) = (&p[c] / &e.gcd, &r[c] / &e.gcd);
                    let new_p: Vec<BigInt> = (0..n).map(|k| &e.x * &p[k] + &e.y * &r[k]).collect();
                    let other: Vec<BigInt> = (0..n).map(|k| &pa * &r[k] - &ra * &p[k]).collect();
                    debug_assert!(other[c].is_zero());
                    if other.iter().any(|x| !x.is_zero()) {
                        rest.push(other);
                    }
                    pivot = Some(new_p);
                }
            }
        }
        work = rest;
        if let Some(mut p) = pivot {
            if p[c].is_negative() {
                for x in p.iter_mut() {
                    *x = -x.clone();
                }
            }
            out[c] = p;
        }
    }
    // reduce entries left of each pivot using the pivot rows above
    for r in 0..n {
        for c in (0..r).rev() {
            let d = out[c][c].clone();
            if d.is_zero() || out[r][c].is_zero() {
                continue;
            }
            let q = out[r][c].div_floor(&d);
            if q.is_zero() {
                continue;
            }
            for k in 0..=c {
                let t = &q * &out[c][k];
                out[r][k] -= t;
            }
        }
    }
    out
}

/// A full or partial lattice in `Q^n`, stored as `basis / den` with the
/// basis in lower row Hermite form and `den` minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub den: BigInt,
    pub basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn from_rational_rows(rows: &[Vec<Rational>], n: usize) -> Lattice {
        let mut den = BigInt::one();
        for r in rows {
            for x in r {
                den = den.lcm(x.denom());
            }
        }
        let int_rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        Lattice::from_integer_rows(den, &int_rows, n)
    }

    pub fn from_integer_rows(den: BigInt, rows: &[Vec<BigInt>], n: usize) -> Lattice {
        let basis = hnf_lower(rows, n);
        let mut g = den.clone();
        for r in &basis {
            for x in r {
                g = g.gcd(x);
            }
        }
        if g.is_one() || g.is_zero() {
            return Lattice { den, basis };
        }
        Lattice {
            den: &den / &g,
            basis: basis.iter().map(|r| r.iter().map(|x| x / &g).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.basis.iter().filter(|r| r.iter().any(|x| !x.is_zero())).count()
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        let d = Rational::from_integer(self.den.clone());
        self.basis
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| r.iter().map(|x| Rational::from_integer(x.clone()) / &d).collect())
            .collect()
    }

    /// Integer coordinates of `v` in this basis, if `v` lies in the lattice.
    /// Requires full rank.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<BigInt>> {
        let n = self.dim();
        let mut w: Vec<Rational> = v.iter().map(|x| x * Rational::from_integer(self.den.clone())).collect();
        let mut coords = vec![BigInt::zero(); n];
        for c in (0..n).rev() {
            let d = &self.basis[c][c];
            if d.is_zero() {
                if !w[c].is_zero() {
                    return None;
                }
                continue;
            }
            let q = &w[c] / Rational::from_integer(d.clone());
            if !q.is_integer() {
                return None;
            }
            let q = q.to_integer();
            for k in 0..=c {
                w[k] -= Rational::from_integer(&q * &self.basis[c][k]);
            }
            coords[c] = q;
        }
        Some(coords)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &Lattice) -> bool {
        other.rows().iter().all(|r| self.contains_vector(r))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut rows = self.rows();
        rows.extend(other.rows());
        Lattice::from_rational_rows(&rows, self.dim())
    }

    /// Covolume: product of diagonal entries over `den^n`.
    pub fn covolume(&self) -> Rational {
        let n = self.dim() as u32;
        let prod = self.basis.iter().enumerate().fold(BigInt::one(), |acc, (i, r)| acc * &r[i]);
        Rational::new(prod, num_traits::pow(self.den.clone(), n as usize))
    }

    /// Index `[self : sub]` for a full-rank sublattice.
    pub fn index_of(&self, sub: &Lattice) -> Option<BigInt> {
        if !self.contains(sub) {
            return None;
        }
        let q = sub.covolume() / self.covolume();
        if q.is_integer() {
            Some(q.to_integer().abs())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn kernel_and_det() {
        let m = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        let k = kernel(&m, 2);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&m, &k[0]).iter().all(|x| x.is_zero()));
        assert!(determinant(&m).is_zero());
        let m = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(3, 1), rat(5, 2)]];
        assert_eq!(determinant(&m), rat(-3, 1));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
    }

    #[test]
    fn hermite_form_shape() {
        let rows = vec![ints(&[2, 0, 0]), ints(&[3, 5, 0]), ints(&[1, 7, 4]), ints(&[6, 10, 8])];
        let h = hnf_lower(&rows, 3);
        for (i, r) in h.iter().enumerate() {
            assert!(r[i].is_positive());
            for c in i + 1..3 {
                assert!(r[c].is_zero());
            }
            for c in 0..i {
                assert!(!r[c].is_negative() && r[c] < h[c][c]);
            }
        }
        let l = Lattice::from_integer_rows(int(1), &rows, 3);
        for r in &rows {
            let v: Vec<Rational> = r.iter().map(|x| Rational::from_integer(x.clone())).collect();
            assert!(l.contains_vector(&v));
        }
        assert!(!l.contains_vector(&[rat(1, 2), rat(0, 1), rat(0, 1)]));
    }

    #[test]
    fn partial_rank() {
        let rows = vec![ints(&[1, 0, 0, 0]), ints(&[0, 2, 0, 0])];
        let l = Lattice::from_integer_rows(int(1), &rows, 4);
        assert_eq!(l.rank(), 2);
        assert!(l.basis[3].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn lattice_index() {
        let big = Lattice::from_rational_rows(&[vec![rat(1, 2), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]], 2);
        let small = Lattice::from_rational_rows(&[vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(3, 1)]], 2);
        assert_eq!(big.index_of(&small), Some(int(6)));
        assert_eq!(small.index_of(&big), None);
        assert_eq!(big.den, int(2));
    }
}
