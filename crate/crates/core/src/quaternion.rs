//! Quaternion algebras `(a, b | Q)`: recognition from multiplication
//! tables, explicit splittings, and the associated conics.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::algebra::{tables, AlgebraElement, MultiplicationTable, StandardInvolution};
use crate::arith::{self, Place, Rational};
use crate::linalg;
use crate::quadform::{LocalRing, QuadraticForm};
use crate::symbols;
use crate::{Error, Result};

/// `(a, b | Q)`: basis `1, i, j, ij` with `i² = a`, `j² = b`, `ji = −ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionAlgebraQ {
    pub a: Rational,
    pub b: Rational,
}

impl QuaternionAlgebraQ {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroInput("quaternion algebra parameter"));
        }
        Ok(QuaternionAlgebraQ { a, b })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(arith::rat(a, 1), arith::rat(b, 1))
    }

    pub fn table(&self) -> MultiplicationTable {
        tables::quaternion(&self.a, &self.b)
    }

    pub fn ramified_set(&self) -> Result<Vec<Place>> {
        symbols::ramified_set(&self.a, &self.b)
    }

    pub fn discriminant(&self) -> Result<BigInt> {
        symbols::algebra_discriminant(&self.a, &self.b)
    }

    pub fn is_matrix_ring(&self) -> Result<bool> {
        symbols::is_matrix_ring_global(&self.a, &self.b)
    }

    /// Product of basis coordinates without going through a table.
    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let (a, b) = (&self.a, &self.b);
        let ab = a * b;
        let (x0, x1, x2, x3) = (&x[0], &x[1], &x[2], &x[3]);
        let (y0, y1, y2, y3) = (&y[0], &y[1], &y[2], &y[3]);
        vec![
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - &ab * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ]
    }

    pub fn trd(&self, x: &[Rational]) -> Rational {
        &x[0] * Rational::from_integer(2.into())
    }

    pub fn nrd(&self, x: &[Rational]) -> Rational {
        let (a, b) = (&self.a, &self.b);
        &x[0] * &x[0] - a * &x[1] * &x[1] - b * &x[2] * &x[2] + a * b * &x[3] * &x[3]
    }

    pub fn conj(&self, x: &[Rational]) -> Vec<Rational> {
        vec![x[0].clone(), -&x[1], -&x[2], -&x[3]]
    }
}

/// Result of recognizing a table: the standard form and the coordinates of
/// its generators `i`, `j` in the table's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognition {
    pub algebra: QuaternionAlgebraQ,
    pub i: AlgebraElement,
    pub j: AlgebraElement,
}

/// Decides whether a rank-4 table is a quaternion algebra and if so returns
/// a standard form for it.
pub fn recognize(table: &MultiplicationTable) -> Result<Recognition> {
    recognize_traced(table, &mut crate::trace::Trace::off())
}

pub fn recognize_traced(table: &MultiplicationTable, trace: &mut crate::trace::Trace) -> Result<Recognition> {
    if table.dim() != 4 {
        return Err(Error::InvalidDimension(table.dim()));
    }
    trace.step("identquatalg.step1");
    let inv = table.standard_involution()?;
    trace.step("identquatalg.step2");
    let form = inv.norm_form();
    let nf = form.normalize(&LocalRing::Rationals)?;
    trace.step("identquatalg.step3");
    if nf.blocks.iter().any(|b| b.valuation.is_infinite()) {
        return Err(Error::SingularNorm { radical: form.radical() });
    }
    let basis = nf.basis();
    if basis[0] != table.one().coords {
        return Err(Error::Internal("normalized norm basis does not start with 1".into()));
    }
    let i = AlgebraElement::new(basis[1].clone());
    let j = AlgebraElement::new(basis[2].clone());
    let a = -inv.nrd(&i);
    let b = -inv.nrd(&j);
    let ii = table.mul(&i, &i);
    let jj = table.mul(&j, &j);
    let ij = table.mul(&i, &j);
    let ji = table.mul(&j, &i);
    if ii != AlgebraElement::scalar(4, a.clone()) || jj != AlgebraElement::scalar(4, b.clone()) || ij != ji.neg() {
        return Err(Error::Internal("recognized generators fail the quaternion relations".into()));
    }
    Ok(Recognition { algebra: QuaternionAlgebraQ::new(a, b)?, i, j })
}

/// Turns a zerodivisor into a nonzero element of square zero.
pub fn nilpotent_from_zerodivisor(table: &MultiplicationTable, x: &AlgebraElement) -> Result<AlgebraElement> {
    let inv = table.standard_involution()?;
    if x.is_zero() || !inv.nrd(x).is_zero() {
        return Err(Error::NotZeroDivisor);
    }
    // Step 1
    if inv.trd(x).is_zero() {
        return Ok(x.clone());
    }
    // Step 2: y ⟂ 1, x for the bilinear form of nrd
    let n = table.dim();
    let form = inv.norm_form();
    let one = table.one();
    let rows = vec![
        linalg::mat_vec(form.gram(), &one.coords),
        linalg::mat_vec(form.gram(), &x.coords),
    ];
    let y = linalg::kernel(&rows, n)
        .into_iter()
        .next()
        .map(AlgebraElement::new)
        .ok_or_else(|| Error::Internal("no element orthogonal to 1 and x".into()))?;
    let xy = table.mul(x, &y);
    Ok(if xy.is_zero() { y } else { xy })
}

pub type Mat2 = [[Rational; 2]; 2];

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c: Mat2 = Default::default();
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        }
    }
    c
}

pub fn mat2_scalar(s: Rational) -> Mat2 {
    [[s.clone(), Rational::zero()], [Rational::zero(), s]]
}

/// An explicit isomorphism `B ≅ M_2(Q)` given by left multiplication on the
/// ideal `I = Q e' + Q ke'`.
///
/// `e' = e/s` is normalized so that `trd(e'k) = 1`, which gives
/// `e'k + ke' = te' + 1`. In the basis `e', ke'` this sends
/// `e' ↦ [[0, 1], [0, 0]]`, `k ↦ [[0, −n], [1, t]]`, `i' ↦ diag(1, −1)` and
/// `j' ↦ [[0, 1], [1, 0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingData {
    /// The nilpotent certificate.
    pub e: AlgebraElement,
    /// `i'` and `j'` with `i'² = j'² = 1` and `j'i' = −i'j'`.
    pub i_prime: AlgebraElement,
    pub j_prime: AlgebraElement,
    /// Images of the table's second and third basis elements.
    pub i_image: Mat2,
    pub j_image: Mat2,
    /// Basis `e', ke'` of the ideal the algebra acts on.
    pub ideal_basis: [AlgebraElement; 2],
}

impl SplittingData {
    /// Matrix of left multiplication by `x` on the ideal.
    pub fn image(&self, table: &MultiplicationTable, x: &AlgebraElement) -> Result<Mat2> {
        let [u, v] = &self.ideal_basis;
        let cu = ideal_coords(u, v, &table.mul(x, u))?;
        let cv = ideal_coords(u, v, &table.mul(x, v))?;
        Ok([[cu[0].clone(), cv[0].clone()], [cu[1].clone(), cv[1].clone()]])
    }

    /// Checks the relations on `i'`, `j'`, their images, the homomorphism
    /// property on all basis products, and bijectivity.
    pub fn verify(&self, table: &MultiplicationTable) -> Result<()> {
        let one = table.one();
        let ii = table.mul(&self.i_prime, &self.i_prime);
        let jj = table.mul(&self.j_prime, &self.j_prime);
        let ij = table.mul(&self.i_prime, &self.j_prime);
        let ji = table.mul(&self.j_prime, &self.i_prime);
        if ii != one || jj != one || ji != ij.neg() {
            return Err(Error::Internal("i', j' fail the (1,1) relations".into()));
        }
        let r = |n: i64| Rational::from_integer(n.into());
        if self.image(table, &self.i_prime)? != [[r(1), r(0)], [r(0), r(-1)]]
            || self.image(table, &self.j_prime)? != [[r(0), r(1)], [r(1), r(0)]]
        {
            return Err(Error::Internal("i', j' have the wrong matrix images".into()));
        }
        let n = table.dim();
        let images: Vec<Mat2> = (0..n).map(|k| self.image(table, &table.basis_element(k))).collect::<Result<_>>()?;
        for x in 0..n {
            for y in 0..n {
                let prod = table.mul(&table.basis_element(x), &table.basis_element(y));
                if self.image(table, &prod)? != mat2_mul(&images[x], &images[y]) {
                    return Err(Error::Internal("splitting map is not multiplicative".into()));
                }
            }
        }
        let flat: Vec<Vec<Rational>> = images
            .iter()
            .map(|m| vec![m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), m[1][1].clone()])
            .collect();
        if linalg::rank(&flat) != 4 {
            return Err(Error::Internal("splitting map is not bijective".into()));
        }
        Ok(())
    }
}

fn ideal_coords(u: &AlgebraElement, v: &AlgebraElement, w: &AlgebraElement) -> Result<[Rational; 2]> {
    // solve α u + β v = w
    let n = u.dim();
    let mut aug: linalg::Matrix = (0..n).map(|r| vec![u.coords[r].clone(), v.coords[r].clone(), w.coords[r].clone()]).collect();
    let piv = linalg::rref(&mut aug);
    if piv != [0, 1] {
        return Err(Error::Internal("element does not lie in the ideal".into()));
    }
    Ok([aug[0][2].clone(), aug[1][2].clone()])
}

/// Builds an explicit `M_2(Q)` structure from a nonzero `e` with `e² = 0`.
/// The table's basis is read as `1, i, j, …` and `k` ranges over `i, j, ij`.
pub fn split_from_nilpotent(table: &MultiplicationTable, e: &AlgebraElement) -> Result<SplittingData> {
    split_from_nilpotent_traced(table, e, &mut crate::trace::Trace::off())
}

pub fn split_from_nilpotent_traced(
    table: &MultiplicationTable,
    e: &AlgebraElement,
    trace: &mut crate::trace::Trace,
) -> Result<SplittingData> {
    if table.dim() != 4 {
        return Err(Error::InvalidDimension(table.dim()));
    }
    let inv: StandardInvolution = table.standard_involution()?;
    if e.is_zero() || !table.mul(e, e).is_zero() {
        return Err(Error::Precondition("expected a nonzero element of square zero".into()));
    }
    // Step 1
    trace.step("m2ffound.step1");
    let i = table.basis_element(1);
    let j = table.basis_element(2);
    let ij = table.mul(&i, &j);
    let (k, s) = [i.clone(), j.clone(), ij]
        .into_iter()
        .map(|k| {
            let s = inv.trd(&table.mul(e, &k));
            (k, s)
        })
        .find(|(_, s)| !s.is_zero())
        .ok_or(Error::DegenerateInput("e lies in the radical of the norm form"))?;
    let t = inv.trd(&k);
    let n = inv.nrd(&k);
    // trd(e'k) = +1, as the matrix model requires
    let e1 = e.scale(&s.recip());
    // Step 2
    trace.step("m2ffound.step2");
    let one = table.one();
    let coef = one.scale(&(&n + Rational::one())).sub(&k.scale(&t));
    let j_prime = k.add(&table.mul(&coef, &e1));
    let k_plus_t = k.add(&one.scale(&t));
    let i_prime = table.mul(&e1, &k).sub(&table.mul(&k_plus_t, &e1));
    let ke1 = table.mul(&k, &e1);
    let mut data = SplittingData {
        e: e.clone(),
        i_prime,
        j_prime,
        i_image: mat2_scalar(Rational::zero()),
        j_image: mat2_scalar(Rational::zero()),
        ideal_basis: [e1, ke1],
    };
    data.i_image = data.image(table, &i)?;
    data.j_image = data.image(table, &j)?;
    Ok(data)
}

/// A diagonal ternary form `c_1 x² + c_2 y² + c_3 z²` over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConicQ {
    pub coeffs: [Rational; 3],
}

impl ConicQ {
    pub fn new(c1: Rational, c2: Rational, c3: Rational) -> Result<Self> {
        if c1.is_zero() || c2.is_zero() || c3.is_zero() {
            return Err(Error::ZeroInput("conic coefficient"));
        }
        Ok(ConicQ { coeffs: [c1, c2, c3] })
    }

    pub fn eval(&self, p: &[BigInt; 3]) -> Rational {
        (0..3).fold(Rational::zero(), |acc, k| acc + &self.coeffs[k] * Rational::from_integer(&p[k] * &p[k]))
    }

    pub fn form(&self) -> QuadraticForm {
        QuadraticForm::diagonal(self.coeffs.to_vec())
    }
}

/// The conic of trace-zero elements of reduced norm zero: `⟨−a, −b, ab⟩`.
pub fn conic_of(b: &QuaternionAlgebraQ) -> ConicQ {
    ConicQ { coeffs: [-b.a.clone(), -b.b.clone(), &b.a * &b.b] }
}

/// The algebra `(−bc, −ac | Q)` whose conic is similar to `⟨a, b, c⟩`.
pub fn algebra_of_conic(c: &ConicQ) -> QuaternionAlgebraQ {
    let [x, y, z] = &c.coeffs;
    QuaternionAlgebraQ { a: -(y * z), b: -(x * z) }
}

pub const DEFAULT_HEIGHT_BOUND: u64 = 10_000;

/// Searches primitive integer zeros of height at most `bound`.
///
/// Scan order: shells of increasing max-norm `h`; inside a shell the
/// nonnegative triples are taken in decreasing lexicographic order, and the
/// first primitive zero is returned. Signs are irrelevant because the form
/// is diagonal. Definite forms and conics of ramified algebras have no
/// zeros, and the search returns `None` for them without scanning.
pub fn find_isotropic_naive(c: &ConicQ, bound: u64) -> Result<Option<[BigInt; 3]>> {
    if bound == 0 {
        return Err(Error::Precondition("height bound must be at least 1".into()));
    }
    let signs: Vec<bool> = c.coeffs.iter().map(|x| x.is_positive()).collect();
    if signs.iter().all(|&s| s) || signs.iter().all(|&s| !s) {
        return Ok(None);
    }
    let alg = algebra_of_conic(c);
    if !alg.is_matrix_ring()? {
        return Ok(None);
    }
    // integral coefficients
    let den = c.coeffs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let k: Vec<BigInt> = c.coeffs.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    for h in 1..=bound {
        if let Some(p) = shell_search(&k, h) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Solves `k[free]·v² = rhs` for `0 ≤ v ≤ h`.
fn solve_coord(kf: &BigInt, rhs: &BigInt, h: &BigInt) -> Option<BigInt> {
    if kf.is_zero() {
        return None;
    }
    let (q, r) = rhs.div_rem(kf);
    if !r.is_zero() || q.is_negative() {
        return None;
    }
    let v = arith::exact_sqrt(&q)?;
    (&v <= h).then_some(v)
}

fn shell_search(k: &[BigInt], h: u64) -> Option<[BigInt; 3]> {
    let hb = BigInt::from(h);
    let val = |x: &BigInt, y: &BigInt, z: &BigInt| &k[0] * x * x + &k[1] * y * y + &k[2] * z * z;
    let primitive = |p: &[BigInt; 3]| p[0].gcd(&p[1]).gcd(&p[2]).is_one();
    let mut found: Vec<[BigInt; 3]> = Vec::new();
    // x = h: free y in [0,h], solve z
    for y in (0..=h).rev() {
        let y = BigInt::from(y);
        let rhs = -(&k[0] * &hb * &hb + &k[1] * &y * &y);
        if let Some(z) = solve_coord(&k[2], &rhs, &hb) {
            found.push([hb.clone(), y, z]);
        }
    }
    // x < h, y = h: free x, solve z
    for x in (0..h).rev() {
        let x = BigInt::from(x);
        let rhs = -(&k[0] * &x * &x + &k[1] * &hb * &hb);
        if let Some(z) = solve_coord(&k[2], &rhs, &hb) {
            found.push([x, hb.clone(), z]);
        }
    }
    // x < h, y < h, z = h: free x, solve y
    for x in (0..h).rev() {
        let x = BigInt::from(x);
        let rhs = -(&k[0] * &x * &x + &k[2] * &hb * &hb);
        if let Some(y) = solve_coord(&k[1], &rhs, &BigInt::from(h - 1)) {
            found.push([x, y, hb.clone()]);
        }
    }
    // every triple in the shell has a coordinate equal to h; take the
    // lexicographically greatest primitive zero
    let best = found.into_iter().filter(primitive).max();
    debug_assert!(best.as_ref().map_or(true, |p| val(&p[0], &p[1], &p[2]).is_zero()));
    best
}

/// Splits `b` from a zero of its conic found by [`find_isotropic_naive`]:
/// the zero `(x, y, z)` is the nilpotent `xi + yj + zij`. `None` when no zero
/// of height at most `bound` exists.
pub fn split_algebra(b: &QuaternionAlgebraQ, bound: u64) -> Result<Option<(MultiplicationTable, SplittingData)>> {
    split_algebra_traced(b, bound, &mut crate::trace::Trace::off())
}

pub fn split_algebra_traced(
    b: &QuaternionAlgebraQ,
    bound: u64,
    trace: &mut crate::trace::Trace,
) -> Result<Option<(MultiplicationTable, SplittingData)>> {
    let Some(p) = find_isotropic_naive(&conic_of(b), bound)? else {
        return Ok(None);
    };
    let table = b.table();
    let mut coords = vec![Rational::zero()];
    coords.extend(p.iter().map(|x| Rational::from_integer(x.clone())));
    let e = nilpotent_from_zerodivisor(&table, &AlgebraElement::new(coords))?;
    let data = split_from_nilpotent_traced(&table, &e, trace)?;
    data.verify(&table)?;
    Ok(Some((table, data)))
}

/// A general ternary form over `Z`: `q[0]x² + q[1]y² + q[2]z² + t01·xy +
/// t02·xz + t12·yz`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryForm {
    pub q: [BigInt; 3],
    pub t01: BigInt,
    pub t02: BigInt,
    pub t12: BigInt,
}

impl TernaryForm {
    pub fn diagonal(q: [BigInt; 3]) -> Self {
        TernaryForm { q, t01: BigInt::zero(), t02: BigInt::zero(), t12: BigInt::zero() }
    }

    pub fn eval(&self, p: &[BigInt; 3]) -> BigInt {
        let [x, y, z] = p;
        &self.q[0] * x * x + &self.q[1] * y * y + &self.q[2] * z * z + &self.t01 * x * y + &self.t02 * x * z + &self.t12 * y * z
    }

    /// Half the determinant of the Gram matrix; nonsingular mod `p` iff this
    /// is nonzero mod `p` (including `p = 2`).
    pub fn half_discriminant(&self) -> BigInt {
        let [a, b, c] = &self.q;
        BigInt::from(4) * a * b * c + &self.t01 * &self.t02 * &self.t12
            - a * &self.t12 * &self.t12
            - b * &self.t02 * &self.t02
            - c * &self.t01 * &self.t01
    }
}

fn normalize_point(p: [BigInt; 3], m: &BigInt) -> [BigInt; 3] {
    let lead = p.iter().find(|x| !x.is_zero()).cloned().expect("nonzero point");
    let inv = arith::mod_inverse(&lead, m).expect("unit lead coordinate");
    p.map(|x| (x * &inv).mod_floor(m))
}

/// A projective point on the reduction of `form` modulo `p`, with its first
/// nonzero coordinate equal to 1.
///
/// Coordinate points are tried first; otherwise `(x, y)` is drawn at random
/// and the quadratic in `z` is solved with a modular square root. For
/// `p = 2` the seven points of the plane are checked in order.
pub fn conic_point_mod_p(form: &TernaryForm, p: &BigInt, seed: u64) -> Result<[BigInt; 3]> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if form.half_discriminant().mod_floor(p).is_zero() {
        return Err(Error::DegenerateInput("conic is singular modulo p"));
    }
    let zero = BigInt::zero;
    let one = BigInt::one;
    if *p == BigInt::from(2) {
        let pts = [
            [one(), zero(), zero()],
            [zero(), one(), zero()],
            [zero(), zero(), one()],
            [one(), one(), zero()],
            [one(), zero(), one()],
            [zero(), one(), one()],
            [one(), one(), one()],
        ];
        return pts
            .into_iter()
            .find(|pt| form.eval(pt).mod_floor(p).is_zero())
            .ok_or_else(|| Error::Internal("no point on a nonsingular conic over F_2".into()));
    }
    for k in 0..3 {
        let mut pt = [zero(), zero(), zero()];
        pt[k] = one();
        if form.eval(&pt).mod_floor(p).is_zero() {
            return Ok(pt);
        }
    }
    // q[2] is a unit now, so every vertical line through (x, y) meets the conic
    // in the roots of q2·z² + (t02·x + t12·y)·z + (q0x² + q1y² + t01·xy)
    let mut rng = arith::rng(seed);
    let two = BigInt::from(2);
    let inv2q = arith::mod_inverse(&(&two * &form.q[2]), p).expect("unit");
    for _ in 0..100_000 {
        let x: BigInt = BigInt::from(rng.gen::<u64>()).mod_floor(p);
        let y: BigInt = BigInt::from(rng.gen::<u64>()).mod_floor(p);
        if x.is_zero() && y.is_zero() {
            continue;
        }
        let lin = &form.t02 * &x + &form.t12 * &y;
        let cst = &form.q[0] * &x * &x + &form.q[1] * &y * &y + &form.t01 * &x * &y;
        let disc = (&lin * &lin - BigInt::from(4) * &form.q[2] * cst).mod_floor(p);
        let Ok(r) = arith::sqrt_mod_p(&disc, p) else {
            continue;
        };
        let z = ((-lin + r) * &inv2q).mod_floor(p);
        let pt = normalize_point([x, y, z], p);
        debug_assert!(form.eval(&pt).mod_floor(p).is_zero());
        return Ok(pt);
    }
    Err(Error::BoundExhausted("random lines missed the conic"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn r(n: i64) -> Rational {
        rat(n, 1)
    }

    fn el(v: &[Rational]) -> AlgebraElement {
        AlgebraElement::new(v.to_vec())
    }

    #[test]
    fn recognize_standard_tables() {
        let rec = recognize(&tables::m2()).unwrap();
        assert!(rec.algebra.ramified_set().unwrap().is_empty());
        let rec = recognize(&tables::quaternion(&r(-1), &r(-1))).unwrap();
        assert_eq!(rec.algebra.ramified_set().unwrap(), vec![Place::Finite(int(2)), Place::Real]);
        match recognize(&tables::square_zero(4)) {
            Err(Error::SingularNorm { radical }) => assert_eq!(radical.len(), 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(recognize(&tables::idempotents(4)), Err(Error::NoStandardInvolution)));
    }

    #[test]
    fn recognize_after_basis_change() {
        let h = tables::quaternion(&r(-1), &r(-1));
        let basis = vec![
            vec![r(1), r(0), r(0), r(0)],
            vec![r(1), r(1), r(0), r(0)],
            vec![r(2), r(1), r(1), r(0)],
            vec![r(-1), r(3), r(1), r(1)],
        ];
        let t = h.change_of_basis(&basis).unwrap();
        let rec = recognize(&t).unwrap();
        assert_eq!(rec.algebra.ramified_set().unwrap(), vec![Place::Finite(int(2)), Place::Real]);
    }

    #[test]
    fn nilpotents() {
        let t = tables::m2();
        // E11 = (1 + i)/2
        let x = el(&[rat(1, 2), rat(1, 2), r(0), r(0)]);
        let e = nilpotent_from_zerodivisor(&t, &x).unwrap();
        assert!(!e.is_zero());
        assert!(t.mul(&e, &e).is_zero());
        // in (1,1): 1 + i
        let x = el(&[r(1), r(1), r(0), r(0)]);
        let e = nilpotent_from_zerodivisor(&t, &x).unwrap();
        assert!(!e.is_zero() && t.mul(&e, &e).is_zero());
        // trace zero already
        let x = el(&[r(0), r(0), r(1), r(1)]);
        assert_eq!(nilpotent_from_zerodivisor(&t, &x).unwrap(), x);
        assert!(matches!(nilpotent_from_zerodivisor(&t, &t.one()), Err(Error::NotZeroDivisor)));
    }

    #[test]
    fn splitting() {
        let t = tables::m2();
        let e = el(&[r(0), r(0), rat(1, 2), rat(1, 2)]);
        assert!(t.mul(&e, &e).is_zero());
        let s = split_from_nilpotent(&t, &e).unwrap();
        s.verify(&t).unwrap();
        let s2 = split_from_nilpotent(&t, &e.scale(&r(2))).unwrap();
        assert_eq!(s.i_prime, s2.i_prime);
        assert_eq!(s.j_prime, s2.j_prime);
        // images of the generators satisfy the defining relations
        let sq = mat2_mul(&s.i_image, &s.i_image);
        assert_eq!(sq, mat2_scalar(r(1)));
    }

    #[test]
    fn conics() {
        let c = conic_of(&QuaternionAlgebraQ::from_ints(-1, -1).unwrap());
        assert_eq!(c.coeffs, [r(1), r(1), r(1)]);
        let alg = algebra_of_conic(&ConicQ::new(r(1), r(1), r(1)).unwrap());
        assert_eq!((alg.a, alg.b), (r(-1), r(-1)));
        let c = conic_of(&QuaternionAlgebraQ::from_ints(1, 1).unwrap());
        assert_eq!(c.coeffs, [r(-1), r(-1), r(1)]);
        assert_eq!(find_isotropic_naive(&c, 1).unwrap(), Some([int(1), int(0), int(1)]));
        assert_eq!(find_isotropic_naive(&ConicQ::new(r(1), r(1), r(1)).unwrap(), 50).unwrap(), None);
        let c = ConicQ::new(r(-2), r(-3), r(6)).unwrap();
        if let Some(p) = find_isotropic_naive(&c, 100).unwrap() {
            assert!(c.eval(&p).is_zero());
        }
        let c = conic_of(&QuaternionAlgebraQ::from_ints(2, 7).unwrap());
        let p = find_isotropic_naive(&c, 100).unwrap().unwrap();
        assert!(c.eval(&p).is_zero());
    }

    #[test]
    fn points_mod_p() {
        let f = TernaryForm::diagonal([int(1), int(1), int(1)]);
        let pt = conic_point_mod_p(&f, &int(3), 0).unwrap();
        assert!(f.eval(&pt).mod_floor(&int(3)).is_zero());
        // xy − z²
        let g = TernaryForm { q: [int(0), int(0), int(-1)], t01: int(1), t02: int(0), t12: int(0) };
        assert_eq!(conic_point_mod_p(&g, &int(7), 0).unwrap(), [int(1), int(0), int(0)]);
        let sing = TernaryForm::diagonal([int(1), int(1), int(0)]);
        assert!(conic_point_mod_p(&sing, &int(5), 0).is_err());
        for p in arith_primes(100) {
            let f = TernaryForm::diagonal([int(1), int(3), int(5)]);
            if f.half_discriminant().mod_floor(&int(p)).is_zero() {
                continue;
            }
            let pt = conic_point_mod_p(&f, &int(p), 7).unwrap();
            assert!(f.eval(&pt).mod_floor(&int(p)).is_zero());
        }
    }

    fn arith_primes(n: i64) -> Vec<i64> {
        (2..n).filter(|k| (2..*k).all(|d| k % d != 0)).collect()
    }
}
