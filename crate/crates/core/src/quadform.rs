//! Quadratic forms over `Q` or `Z_(p)` and their normalization into atomic
//! blocks.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{self, ord_p, Rational, Valuation};
use crate::linalg::{self, Matrix};
use crate::{Error, Result};

/// The coefficient ring of a form: the field `Q` (trivial valuation) or
/// `Z` localized at a prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LocalRing {
    Rationals,
    Localized(BigInt),
}

impl LocalRing {
    pub fn localized(p: BigInt) -> Result<LocalRing> {
        if arith::is_prime(&p) {
            Ok(LocalRing::Localized(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn ord(&self, x: &Rational) -> Valuation {
        match self {
            LocalRing::Rationals if x.is_zero() => Valuation::Infinite,
            LocalRing::Rationals => Valuation::Finite(0),
            LocalRing::Localized(p) => ord_p(x, p),
        }
    }

    pub fn uniformizer(&self) -> Rational {
        match self {
            LocalRing::Rationals => Rational::one(),
            LocalRing::Localized(p) => Rational::from_integer(p.clone()),
        }
    }

    pub fn contains_half(&self) -> bool {
        !matches!(self, LocalRing::Localized(p) if *p == BigInt::from(2))
    }

    pub fn is_unit(&self, x: &Rational) -> bool {
        self.ord(x) == Valuation::Finite(0)
    }

    pub fn is_integral(&self, x: &Rational) -> bool {
        self.ord(x) >= Valuation::Finite(0)
    }
}

/// A quadratic form on `R^n`, held through its Gram matrix
/// `A[i][j] = T(e_i, e_j)` with `A[i][i] = 2 Q(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    gram: Matrix,
}

impl QuadraticForm {
    /// From the values `q[i] = Q(e_i)` and the off-diagonal bilinear values.
    /// `t` is read only above the diagonal.
    pub fn new(q: Vec<Rational>, t: &[Vec<Rational>]) -> Result<Self> {
        let n = q.len();
        if t.len() != n || t.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: t.len() });
        }
        let mut gram = linalg::zero_matrix(n, n);
        for i in 0..n {
            gram[i][i] = &q[i] * Rational::from_integer(2.into());
            for j in i + 1..n {
                gram[i][j] = t[i][j].clone();
                gram[j][i] = t[i][j].clone();
            }
        }
        Ok(QuadraticForm { gram })
    }

    pub fn diagonal(q: Vec<Rational>) -> Self {
        let n = q.len();
        Self::new(q, &linalg::zero_matrix(n, n)).expect("square")
    }

    pub fn from_gram(gram: Matrix) -> Result<Self> {
        let n = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Precondition("Gram matrix must be symmetric".into()));
                }
            }
        }
        Ok(QuadraticForm { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn q(&self, i: usize) -> Rational {
        &self.gram[i][i] / Rational::from_integer(2.into())
    }

    pub fn t(&self, i: usize, j: usize) -> &Rational {
        &self.gram[i][j]
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.bilinear(x, x) / Rational::from_integer(2.into())
    }

    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        linalg::dot(x, &linalg::mat_vec(&self.gram, y))
    }

    /// True when every `Q(e_i)` and `T(e_i, e_j)` is integral in `ring`.
    pub fn is_integral(&self, ring: &LocalRing) -> bool {
        let n = self.rank();
        (0..n).all(|i| ring.is_integral(&self.q(i)) && (i + 1..n).all(|j| ring.is_integral(&self.gram[i][j])))
    }

    /// The form in the basis given by the columns of `p`: `Q'(x) = Q(Px)`.
    pub fn transport(&self, p: &Matrix) -> Result<Self> {
        if p.len() != self.rank() || p.iter().any(|r| r.len() != self.rank()) {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: p.len() });
        }
        if linalg::determinant(p).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let gram = linalg::mat_mul(&linalg::transpose(p), &linalg::mat_mul(&self.gram, p));
        Ok(QuadraticForm { gram })
    }

    /// Basis of `{x : T(x, y) = 0 for all y}`.
    pub fn radical(&self) -> Vec<Vec<Rational>> {
        linalg::kernel(&self.gram, self.rank())
    }

    pub fn is_nonsingular(&self) -> bool {
        self.radical().is_empty()
    }

    /// Splits the form into an orthogonal sum of scaled atomic blocks.
    pub fn normalize(&self, ring: &LocalRing) -> Result<NormalizedForm> {
        if let LocalRing::Localized(_) = ring {
            if !self.is_integral(ring) {
                return Err(Error::NotIntegral("form coefficients"));
            }
        }
        Normalizer { form: self, ring }.run()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// `u x²` with `u` a unit.
    Unary { u: Rational },
    /// `a x² + b xy + c y²`.
    Binary { a: Rational, b: Rational, c: Rational },
}

/// One summand `π^e · Q_i` of a normalized form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub valuation: Valuation,
    /// Index of the first basis vector of the block.
    pub start: usize,
}

impl Block {
    pub fn size(&self) -> usize {
        match self.kind {
            BlockKind::Unary { .. } => 1,
            BlockKind::Binary { .. } => 2,
        }
    }

    /// `ord(b) < ord(2a) ≤ ord(2c)` and `ord(a)·ord(b) = 0`; unary blocks
    /// need a unit coefficient (or zero at infinite valuation).
    pub fn is_atomic(&self, ring: &LocalRing) -> bool {
        match &self.kind {
            BlockKind::Unary { u } => {
                if self.valuation.is_infinite() {
                    u.is_zero()
                } else {
                    ring.is_unit(u)
                }
            }
            BlockKind::Binary { a, b, c } => {
                if ring.contains_half() {
                    return false;
                }
                let two = Rational::from_integer(2.into());
                let (oa, ob) = (ring.ord(a), ring.ord(b));
                let (o2a, o2c) = (ring.ord(&(a * &two)), ring.ord(&(c * &two)));
                let prod_zero = match (oa, ob) {
                    (Valuation::Finite(x), Valuation::Finite(y)) => x * y == 0,
                    (Valuation::Infinite, Valuation::Finite(0)) => true,
                    _ => false,
                };
                ob < o2a && o2a <= o2c && prod_zero
            }
        }
    }
}

/// Output of normalization: a change of basis whose columns are the new
/// basis vectors, and the blocks in that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedForm {
    pub ring: LocalRing,
    pub change_of_basis: Matrix,
    pub blocks: Vec<Block>,
}

impl NormalizedForm {
    /// New basis vectors, in old coordinates.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        linalg::transpose(&self.change_of_basis)
    }

    pub fn valuations(&self) -> Vec<Valuation> {
        self.blocks.iter().map(|b| b.valuation).collect()
    }

    /// Gram matrix of `⊥ π^{e_i} Q_i`.
    pub fn block_gram(&self) -> Matrix {
        let n = self.change_of_basis.len();
        let mut g = linalg::zero_matrix(n, n);
        let pi = self.ring.uniformizer();
        let two = Rational::from_integer(2.into());
        for blk in &self.blocks {
            let scale = match blk.valuation {
                Valuation::Infinite => Rational::zero(),
                Valuation::Finite(e) => num_traits::pow(pi.clone(), e as usize),
            };
            let s = blk.start;
            match &blk.kind {
                BlockKind::Unary { u } => g[s][s] = &scale * u * &two,
                BlockKind::Binary { a, b, c } => {
                    g[s][s] = &scale * a * &two;
                    g[s + 1][s + 1] = &scale * c * &two;
                    g[s][s + 1] = &scale * b;
                    g[s + 1][s] = &scale * b;
                }
            }
        }
        g
    }

    /// Basis vectors of blocks with infinite valuation.
    pub fn radical(&self) -> Vec<Vec<Rational>> {
        let basis = self.basis();
        self.blocks
            .iter()
            .filter(|b| b.valuation.is_infinite())
            .map(|b| basis[b.start].clone())
            .collect()
    }
}

struct Normalizer<'a> {
    form: &'a QuadraticForm,
    ring: &'a LocalRing,
}

fn axpy(y: &[Rational], a: &Rational, x: &[Rational]) -> Vec<Rational> {
    y.iter().zip(x).map(|(yi, xi)| yi + a * xi).collect()
}

impl Normalizer<'_> {
    fn t(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.form.bilinear(x, y)
    }

    fn run(&self) -> Result<NormalizedForm> {
        let n = self.form.rank();
        let mut rest: Vec<Vec<Rational>> = linalg::identity(n);
        let mut out: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut blocks = Vec::new();
        while !rest.is_empty() {
            let m = rest.len();
            // Step 1
            let mut best: Option<(Valuation, usize, usize)> = None;
            for i in 0..m {
                for j in i..m {
                    let v = self.ring.ord(&self.t(&rest[i], &rest[j]));
                    if v.is_infinite() {
                        continue;
                    }
                    // strict improvement, or the same valuation on the diagonal
                    // beating an off-diagonal pick
                    let better = match best {
                        None => true,
                        Some((bv, bi, bj)) => v < bv || (v == bv && i == j && bi != bj),
                    };
                    if better {
                        best = Some((v, i, j));
                    }
                }
            }
            let Some((v, i, j)) = best else {
                for e in rest.drain(..) {
                    blocks.push(Block {
                        kind: BlockKind::Unary { u: Rational::zero() },
                        valuation: Valuation::Infinite,
                        start: out.len(),
                    });
                    out.push(e);
                }
                break;
            };
            if i == j {
                // Step 2
                let f1 = rest[i].clone();
                rest.swap(0, i);
                rest.remove(0);
                self.orthogonalize_unary(&f1, &mut rest);
                let q = self.form.eval(&f1);
                let e = self.ring.ord(&q);
                let u = &q / self.pi_pow(e);
                blocks.push(Block { kind: BlockKind::Unary { u }, valuation: e, start: out.len() });
                out.push(f1);
            } else if self.ring.contains_half() {
                // Step 3
                let f1: Vec<Rational> = rest[i].iter().zip(&rest[j]).map(|(a, b)| a + b).collect();
                rest.swap(0, i);
                rest.remove(0);
                self.orthogonalize_unary(&f1, &mut rest);
                let q = self.form.eval(&f1);
                let e = self.ring.ord(&q);
                let u = &q / self.pi_pow(e);
                blocks.push(Block { kind: BlockKind::Unary { u }, valuation: e, start: out.len() });
                out.push(f1);
            } else {
                // Step 4
                let tij = self.t(&rest[i], &rest[j]);
                let scale = self.pi_pow(v) / &tij;
                let mut f1: Vec<Rational> = rest[i].iter().map(|x| x * &scale).collect();
                let mut f2 = rest[j].clone();
                rest.swap(0, i);
                rest.swap(1, j);
                rest.drain(0..2);
                // keep ord Q(f1) ≤ ord Q(f2) so the block is atomic
                if self.ring.ord(&self.form.eval(&f1)) > self.ring.ord(&self.form.eval(&f2)) {
                    core::mem::swap(&mut f1, &mut f2);
                }
                let t11 = self.t(&f1, &f1);
                let t22 = self.t(&f2, &f2);
                let t12 = self.t(&f1, &f2);
                let d = &t11 * &t22 - &t12 * &t12;
                for ek in rest.iter_mut() {
                    let t1k = self.t(&f1, ek);
                    let t2k = self.t(&f2, ek);
                    let tk = (&t12 * &t2k - &t22 * &t1k) / &d;
                    let uk = (&t12 * &t1k - &t11 * &t2k) / &d;
                    let moved = axpy(&axpy(ek, &tk, &f1), &uk, &f2);
                    if !self.ring.is_integral(&tk) || !self.ring.is_integral(&uk) {
                        return Err(Error::Internal("non-integral coefficient in binary step".into()));
                    }
                    *ek = moved;
                }
                let pe = self.pi_pow(v);
                let a = self.form.eval(&f1) / &pe;
                let c = self.form.eval(&f2) / &pe;
                let b = &t12 / &pe;
                blocks.push(Block { kind: BlockKind::Binary { a, b, c }, valuation: v, start: out.len() });
                out.push(f1);
                out.push(f2);
            }
        }
        Ok(NormalizedForm {
            ring: self.ring.clone(),
            change_of_basis: linalg::transpose(&out),
            blocks,
        })
    }

    fn orthogonalize_unary(&self, f1: &[Rational], rest: &mut [Vec<Rational>]) {
        let t11 = self.t(f1, f1);
        for ek in rest.iter_mut() {
            let c = -self.t(f1, ek) / &t11;
            debug_assert!(self.ring.is_integral(&c));
            *ek = axpy(ek, &c, f1);
        }
    }

    fn pi_pow(&self, e: Valuation) -> Rational {
        match e {
            Valuation::Finite(e) => num_traits::pow(self.ring.uniformizer(), e as usize),
            Valuation::Infinite => Rational::zero(),
        }
    }
}
