//! `Z`-orders in quaternion algebras over `Q`: Hermite bases, discriminants,
//! saturation, local maximalization and the maximal-order driver.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, ord_p, Rational, Valuation};
use crate::linalg::{self, Lattice};
use crate::quadform::{Block, BlockKind, LocalRing, QuadraticForm};
use crate::quaternion::QuaternionAlgebraQ;
use crate::symbols;
use crate::trace::Trace;
use crate::{Error, Result};

/// Rounds of product closure before a lattice is declared not to be an order.
pub const CLOSURE_ROUNDS: usize = 20;
/// Passes through saturation in the dyadic branch of local maximalization.
pub const PMAX_ROUNDS: usize = 10;

/// An order `O = Z x_1 + ... + Z x_4`, stored as integer rows in lower
/// Hermite form over a common denominator, in coordinates `1, i, j, ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderZ {
    algebra: QuaternionAlgebraQ,
    lattice: Lattice,
}

fn integral_element(alg: &QuaternionAlgebraQ, x: &[Rational]) -> bool {
    alg.trd(x).is_integer() && alg.nrd(x).is_integer()
}

fn one() -> Vec<Rational> {
    vec![Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()]
}

/// Smallest multiplicatively closed lattice containing `rows`.
fn closure(alg: &QuaternionAlgebraQ, rows: &[Vec<Rational>]) -> Result<Lattice> {
    let mut lat = Lattice::from_rational_rows(rows, 4);
    for _ in 0..CLOSURE_ROUNDS {
        let basis = lat.rows();
        if basis.iter().any(|x| !integral_element(alg, x)) {
            return Err(Error::NotIntegral("lattice element with non-integral trace or norm"));
        }
        let mut all = basis.clone();
        let mut closed = true;
        for x in &basis {
            for y in &basis {
                let p = alg.mul(x, y);
                if closed && !lat.contains_vector(&p) {
                    closed = false;
                }
                all.push(p);
            }
        }
        if closed {
            if lat.rank() < 4 {
                return Err(Error::NotAnOrder("lattice has rank below 4"));
            }
            return Ok(lat);
        }
        lat = Lattice::from_rational_rows(&all, 4);
    }
    Err(Error::NotAnOrder("product closure did not stabilize"))
}

impl OrderZ {
    /// Validates a denominator and integer basis rows (any full-rank basis;
    /// it is brought into Hermite form).
    pub fn from_parts(algebra: QuaternionAlgebraQ, den: BigInt, basis: &[Vec<BigInt>]) -> Result<Self> {
        if !den.is_positive() {
            return Err(Error::NotAnOrder("denominator must be positive"));
        }
        if basis.len() != 4 || basis.iter().any(|r| r.len() != 4) {
            return Err(Error::DimensionMismatch { expected: 4, found: basis.len() });
        }
        let lattice = Lattice::from_integer_rows(den, basis, 4);
        let order = OrderZ { algebra, lattice };
        order.verify()?;
        Ok(order)
    }

    /// Checks rank, `1 ∈ O`, integrality of the basis and closure on the 16
    /// basis products.
    pub fn verify(&self) -> Result<()> {
        if self.lattice.rank() != 4 {
            return Err(Error::NotAnOrder("lattice has rank below 4"));
        }
        if !self.lattice.contains_vector(&one()) {
            return Err(Error::NotAnOrder("lattice does not contain 1"));
        }
        let xs = self.elements();
        if xs.iter().any(|x| !integral_element(&self.algebra, x)) {
            return Err(Error::NotIntegral("basis element with non-integral trace or norm"));
        }
        for x in &xs {
            for y in &xs {
                if !self.lattice.contains_vector(&self.algebra.mul(x, y)) {
                    return Err(Error::NotAnOrder("lattice not closed under multiplication"));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &QuaternionAlgebraQ {
        &self.algebra
    }

    pub fn den(&self) -> &BigInt {
        &self.lattice.den
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.lattice.basis
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Basis elements in coordinates `1, i, j, ij`.
    pub fn elements(&self) -> Vec<Vec<Rational>> {
        self.lattice.rows()
    }

    pub fn contains_element(&self, x: &[Rational]) -> bool {
        self.lattice.contains_vector(x)
    }

    pub fn contains(&self, other: &OrderZ) -> bool {
        self.lattice.contains(&other.lattice)
    }

    /// `[self : sub]` when `sub ⊆ self`.
    pub fn index_of(&self, sub: &OrderZ) -> Option<BigInt> {
        self.lattice.index_of(&sub.lattice)
    }

    /// The smallest order containing `self` and `elements`.
    pub fn adjoin(&self, elements: &[Vec<Rational>]) -> Result<OrderZ> {
        check_elements(&self.algebra, elements)?;
        let mut rows = self.elements();
        rows.extend(elements.iter().cloned());
        Ok(OrderZ { algebra: self.algebra.clone(), lattice: closure(&self.algebra, &rows)? })
    }
}

fn check_elements(alg: &QuaternionAlgebraQ, elements: &[Vec<Rational>]) -> Result<()> {
    for x in elements {
        if x.len() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: x.len() });
        }
        if !integral_element(alg, x) {
            return Err(Error::NotIntegral("generator with non-integral trace or norm"));
        }
    }
    Ok(())
}

/// `Z + Zi + Zj + Zij` after scaling `a`, `b` by squares to integers.
pub fn standard_order(b: &QuaternionAlgebraQ) -> OrderZ {
    let alg = QuaternionAlgebraQ {
        a: Rational::from_integer(arith::integral_square_scaling(&b.a)),
        b: Rational::from_integer(arith::integral_square_scaling(&b.b)),
    };
    let rows: Vec<Vec<BigInt>> =
        (0..4).map(|r| (0..4).map(|c| if r == c { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    OrderZ { algebra: alg, lattice: Lattice::from_integer_rows(BigInt::one(), &rows, 4) }
}

/// The order generated by `1` and `elements`.
pub fn order_from_generators(b: &QuaternionAlgebraQ, elements: &[Vec<Rational>]) -> Result<OrderZ> {
    check_elements(b, elements)?;
    let mut rows = vec![one()];
    rows.extend(elements.iter().cloned());
    Ok(OrderZ { algebra: b.clone(), lattice: closure(b, &rows)? })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantData {
    /// `|det(trd(x_i x_j))|`.
    pub disc: BigInt,
    /// Positive square root of `disc`.
    pub reduced: BigInt,
}

pub fn discriminant(o: &OrderZ) -> Result<DiscriminantData> {
    let alg = &o.algebra;
    let xs = o.elements();
    let gram: Vec<Vec<Rational>> =
        xs.iter().map(|x| xs.iter().map(|y| alg.trd(&alg.mul(x, y))).collect()).collect();
    let det = linalg::determinant(&gram);
    if !det.is_integer() || det.is_zero() {
        return Err(Error::NotAnOrder("degenerate trace form"));
    }
    let disc = det.to_integer().abs();
    let reduced = arith::exact_sqrt(&disc).ok_or_else(|| Error::DiscriminantNotSquare(disc.clone()))?;
    // second route: |trd((xy − yx) z̄)| on a basis 1, x, y, z
    if xs[0] == one() {
        let (x, y, z) = (&xs[1], &xs[2], &xs[3]);
        let comm: Vec<Rational> =
            alg.mul(x, y).iter().zip(alg.mul(y, x)).map(|(u, v)| u - v).collect();
        let r = alg.trd(&alg.mul(&comm, &alg.conj(z))).abs();
        if r != Rational::from_integer(reduced.clone()) {
            return Err(Error::Internal("discriminant routes disagree".into()));
        }
    }
    Ok(DiscriminantData { disc, reduced })
}

pub fn is_maximal(o: &OrderZ) -> Result<bool> {
    let d = discriminant(o)?.reduced;
    Ok(d == symbols::algebra_discriminant(&o.algebra.a, &o.algebra.b)?)
}

/// Output of saturation: the enlarged order and a basis of it at `p`
/// (in coordinates `1, i, j, ij`) on which the norm form splits into the
/// listed blocks, each of valuation at most 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saturation {
    pub order: OrderZ,
    pub basis: Vec<Vec<Rational>>,
    pub blocks: Vec<Block>,
}

/// Gram matrix of `T(x, y) = trd(x ȳ)` on the basis of `o`.
pub fn norm_form(o: &OrderZ) -> QuadraticForm {
    let alg = &o.algebra;
    let xs = o.elements();
    let gram = xs.iter().map(|x| xs.iter().map(|y| alg.trd(&alg.mul(x, &alg.conj(y)))).collect()).collect();
    QuadraticForm::from_gram(gram).expect("trace form is symmetric")
}

pub fn p_saturate(o: &OrderZ, p: &BigInt) -> Result<Saturation> {
    p_saturate_traced(o, p, &mut Trace::off())
}

pub fn p_saturate_traced(o: &OrderZ, p: &BigInt, trace: &mut Trace) -> Result<Saturation> {
    let ring = LocalRing::localized(p.clone())?;
    let xs = o.elements();
    // Step 1
    trace.step("computesaturatedorder.step1");
    let nf = norm_form(o).normalize(&ring)?;
    // Step 2: clear denominators prime to p
    trace.step("computesaturatedorder.step2");
    let mut basis: Vec<Vec<Rational>> = Vec::with_capacity(4);
    for coords in nf.basis() {
        let d = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        if d.is_multiple_of(p) {
            return Err(Error::Internal("change of basis not integral at p".into()));
        }
        let dr = Rational::from_integer(d);
        let mut x = vec![Rational::zero(); 4];
        for (c, xr) in coords.iter().zip(&xs) {
            let c = c * &dr;
            for k in 0..4 {
                x[k] += &c * &xr[k];
            }
        }
        basis.push(x);
    }
    // Step 3
    trace.step("computesaturatedorder.step3");
    let mut blocks = nf.blocks.clone();
    let pr = Rational::from_integer(p.clone());
    for blk in blocks.iter_mut() {
        let e = blk.valuation.finite().ok_or(Error::Internal("degenerate norm form".into()))?;
        let half = e.div_euclid(2);
        if half == 0 {
            continue;
        }
        let s = num_traits::pow(pr.clone(), half as usize).recip();
        for x in &mut basis[blk.start..blk.start + blk.size()] {
            for c in x.iter_mut() {
                *c *= &s;
            }
        }
        blk.valuation = Valuation::Finite(e - 2 * half);
    }
    let mut rows = xs;
    rows.extend(basis.iter().cloned());
    let order = OrderZ { algebra: o.algebra.clone(), lattice: closure(&o.algebra, &rows)? };
    Ok(Saturation { order, basis, blocks })
}

fn is_scalar(x: &[Rational]) -> bool {
    x[1..].iter().all(Zero::is_zero)
}

fn scalar_part(x: &[Rational]) -> Rational {
    x[0].clone()
}

fn sub(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(u, v)| u - v).collect()
}

fn add(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(u, v)| u + v).collect()
}

fn scale(x: &[Rational], s: &Rational) -> Vec<Rational> {
    x.iter().map(|u| u * s).collect()
}

fn ord_finite(x: &Rational, p: &BigInt) -> i64 {
    ord_p(x, p).finite().unwrap_or(i64::MAX)
}

enum LocalStep {
    Done,
    /// Adjoin and stop.
    Last(Vec<Rational>),
    /// Adjoin and saturate again.
    Again(Vec<Rational>),
}

fn odd_step(alg: &QuaternionAlgebraQ, sat: &Saturation, p: &BigInt) -> Result<LocalStep> {
    let Some(pos) = sat.basis.iter().position(|x| is_scalar(x)) else {
        return Err(Error::Internal("saturated basis lacks a scalar".into()));
    };
    let mut pure: Vec<Vec<Rational>> =
        sat.basis.iter().enumerate().filter(|(k, _)| *k != pos).map(|(_, x)| x.clone()).collect();
    // first of i, j, k with a unit square
    let Some(m) = pure.iter().position(|x| ord_finite(&alg.nrd(x), p) == 0) else {
        return Err(Error::Internal("no unit among the pure basis vectors".into()));
    };
    pure.swap(0, m);
    let (i, j) = (&pure[0], &pure[1]);
    let a = scalar_part(&alg.mul(i, i));
    let b = scalar_part(&alg.mul(j, j));
    if ord_finite(&b, p) != 1 {
        return Ok(LocalStep::Done);
    }
    let a_mod = arith::rational_mod(&a, p).ok_or(Error::Internal("square not integral at p".into()))?;
    if arith::legendre(&a_mod, p)? != 1 {
        return Ok(LocalStep::Done);
    }
    let x = Rational::from_integer(arith::sqrt_mod_p(&a_mod, p)?);
    let xi = sub(&scale(&one(), &x), i);
    let elt = scale(&alg.mul(&xi, j), &Rational::from_integer(p.clone()).recip());
    Ok(LocalStep::Last(elt))
}

fn even_step(alg: &QuaternionAlgebraQ, sat: &Saturation, trace: &mut Trace) -> Result<LocalStep> {
    let two = BigInt::from(2);
    let Some(pos) = sat.basis.iter().position(|x| is_scalar(x)) else {
        return Err(Error::Internal("saturated basis lacks a scalar".into()));
    };
    let Some(first) = sat.blocks.iter().find(|b| (b.start..b.start + b.size()).contains(&pos)) else {
        return Err(Error::Internal("scalar outside every block".into()));
    };
    let others: Vec<&Block> = sat.blocks.iter().filter(|b| b.start != first.start).collect();
    let half = Rational::new(BigInt::one(), two.clone());
    if let BlockKind::Binary { .. } = first.kind {
        // Step 3a: trd(i) odd
        trace.step("computepmaxorder.step3a");
        let i = &sat.basis[if pos == first.start { first.start + 1 } else { first.start }];
        let t = alg.trd(i);
        let n = alg.nrd(i);
        if !t.is_integer() || t.to_integer().is_even() {
            return Ok(LocalStep::Done);
        }
        let rest: Vec<Vec<Rational>> =
            others.iter().flat_map(|b| sat.basis[b.start..b.start + b.size()].iter().cloned()).collect();
        if rest.len() != 2 {
            return Ok(LocalStep::Done);
        }
        let candidates = [rest[0].clone(), rest[1].clone(), add(&rest[0], &rest[1])];
        let j = candidates.iter().min_by_key(|x| ord_finite(&alg.nrd(x), &two)).expect("nonempty");
        let b = scalar_part(&alg.mul(j, j));
        if ord_finite(&b, &two) != 1 {
            return Ok(LocalStep::Done);
        }
        // T² − tT + nrd(i) has a root mod 2 exactly when nrd(i) is even
        let n = arith::rational_mod(&n, &two).ok_or(Error::Internal("norm not integral at 2".into()))?;
        if !n.is_zero() {
            return Ok(LocalStep::Done);
        }
        // then 0 is a root
        let xi = scale(i, &Rational::from_integer(BigInt::from(-1)));
        return Ok(LocalStep::Last(scale(&alg.mul(&xi, j), &half)));
    }
    // Step 3b: all traces even
    trace.step("computepmaxorder.step3b");
    if others.iter().any(|b| b.size() != 1) {
        return Ok(LocalStep::Done);
    }
    let mut pure: Vec<Vec<Rational>> = others.iter().map(|b| sat.basis[b.start].clone()).collect();
    let Some(m) = pure.iter().position(|x| ord_finite(&alg.nrd(x), &two) == 0) else {
        return Ok(LocalStep::Done);
    };
    pure.swap(0, m);
    let (i, j) = (&pure[0], &pure[1]);
    let a = scalar_part(&alg.mul(i, i));
    let b = scalar_part(&alg.mul(j, j));
    if !a.is_integer() || !b.is_integer() || ord_finite(&b, &two) > 1 {
        return Ok(LocalStep::Done);
    }
    let (y, z, w) = symbols::valuation_game(&a.to_integer(), &b.to_integer(), trace);
    let ij = alg.mul(i, j);
    let mut elt = one();
    for (c, v) in [(y, i), (z, j), (w, &ij)] {
        elt = add(&elt, &scale(v, &Rational::from_integer(c)));
    }
    Ok(LocalStep::Again(scale(&elt, &half)))
}

pub fn p_maximalize(o: &OrderZ, p: &BigInt) -> Result<OrderZ> {
    p_maximalize_traced(o, p, &mut Trace::off())
}

pub fn p_maximalize_traced(o: &OrderZ, p: &BigInt, trace: &mut Trace) -> Result<OrderZ> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let alg = o.algebra.clone();
    let target = ord_int_finite(&symbols::algebra_discriminant(&alg.a, &alg.b)?, p);
    let two = BigInt::from(2);
    let mut cur = o.clone();
    for _ in 0..PMAX_ROUNDS {
        trace.step("computepmaxorder.step1");
        let sat = p_saturate_traced(&cur, p, trace)?;
        cur = sat.order.clone();
        let step = if *p == two {
            even_step(&alg, &sat, trace)?
        } else {
            trace.step("computepmaxorder.step2");
            odd_step(&alg, &sat, p)?
        };
        match step {
            LocalStep::Done => break,
            LocalStep::Last(x) => {
                cur = cur.adjoin(&[x])?;
                break;
            }
            LocalStep::Again(x) => cur = cur.adjoin(&[x])?,
        }
    }
    let mut have = ord_int_finite(&discriminant(&cur)?.reduced, p);
    if have != target && *p == two {
        // the dyadic steps above assume a diagonal shape for the pure part;
        // otherwise enlarge through (1/2)O/O, which holds every minimal overorder
        while have > target {
            trace.step("computepmaxorder.search");
            cur = enlarge_at_two(&cur)?;
            have = ord_int_finite(&discriminant(&cur)?.reduced, p);
        }
    }
    if have != target {
        return Err(Error::Internal("local maximalization missed the target discriminant".into()));
    }
    Ok(cur)
}

fn ord_int_finite(n: &BigInt, p: &BigInt) -> i64 {
    arith::ord_int(n, p).finite().unwrap_or(i64::MAX)
}

fn enlarge_at_two(o: &OrderZ) -> Result<OrderZ> {
    let xs = o.elements();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for mask in 1u32..16 {
        let mut x = vec![Rational::zero(); 4];
        for (k, xk) in xs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                x = add(&x, xk);
            }
        }
        let x = scale(&x, &half);
        if o.contains_element(&x) || !integral_element(&o.algebra, &x) {
            continue;
        }
        if let Ok(bigger) = o.adjoin(&[x]) {
            return Ok(bigger);
        }
    }
    Err(Error::Internal("no dyadic overorder found".into()))
}

/// A maximal order containing `o`.
pub fn max_order(o: &OrderZ) -> Result<OrderZ> {
    max_order_traced(o, &mut Trace::off())
}

pub fn max_order_traced(o: &OrderZ, trace: &mut Trace) -> Result<OrderZ> {
    let d = discriminant(o)?.reduced;
    let mut cur = o.clone();
    for p in arith::factor(&d)?.primes() {
        cur = p_maximalize_traced(&cur, p, trace)?;
    }
    if !is_maximal(&cur)? {
        return Err(Error::Internal("maximal order driver ended below maximal".into()));
    }
    Ok(cur)
}

/// Reductions between factoring, quadratic residuosity and the
/// matrix-ring problem.
///
/// These are correctness demonstrations, not algorithms of practical
/// interest: the maximal-order engine and the global Hilbert symbol both
/// factor integers internally.
pub mod demo {
    use super::*;
    use num_bigint::RandBigInt;

    /// Attempts before giving up on finding a useful `b`.
    pub const FACTOR_TRIALS: usize = 64;

    /// A proper factor of `n`, read off the discriminant of a maximal order
    /// in `(n, b | Q)` for random `b`.
    pub fn factor_via_maxorder(n: &BigInt, seed: u64) -> Result<BigInt> {
        if n < &BigInt::from(3) || n.is_even() {
            return Err(Error::Precondition("n must be odd and at least 3".into()));
        }
        if arith::is_prime(n) {
            return Err(Error::Precondition("n is prime".into()));
        }
        if arith::exact_sqrt(n).is_some() {
            return Err(Error::Precondition("n is a perfect square".into()));
        }
        if arith::is_prime_power(n) {
            return Err(Error::Precondition("n is a prime power".into()));
        }
        let mut g = arith::rng(seed);
        for _ in 0..FACTOR_TRIALS {
            let b = g.gen_bigint_range(&BigInt::one(), n);
            let common = b.gcd(n);
            if !common.is_one() {
                return Ok(common);
            }
            let alg = QuaternionAlgebraQ::new(Rational::from_integer(n.clone()), Rational::from_integer(b))?;
            let o = max_order(&standard_order(&alg))?;
            let f = discriminant(&o)?.reduced.gcd(n);
            if !f.is_one() && &f != n {
                return Ok(f);
            }
        }
        Err(Error::BoundExhausted("no splitting witness within the trial budget"))
    }

    fn check_residuosity_input(a: &BigInt, b: &BigInt) -> Result<()> {
        if !b.is_positive() || b.is_even() {
            return Err(Error::Precondition("modulus must be odd and positive".into()));
        }
        if !a.gcd(b).is_one() {
            return Err(Error::Precondition("arguments must be coprime".into()));
        }
        Ok(())
    }

    /// Whether `a` is a square modulo `sqrad(b)`, by factoring.
    pub fn quadratic_residuosity(a: &BigInt, b: &BigInt) -> Result<bool> {
        check_residuosity_input(a, b)?;
        let r = arith::sqrad(b)?;
        for p in arith::factor(&r)?.primes() {
            if arith::legendre(a, p)? != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Residuosity decided by whether `(a, ℓb | Q)` splits, for a prime `ℓ`
    /// with `ℓb` a square unit mod `a` and `(a/ℓ) = 1`. Inputs with `a ≤ 0` or
    /// Jacobi symbol `(a/b) ≠ 1` go through [`quadratic_residuosity`].
    pub fn residuosity_via_splitting(a: &BigInt, b: &BigInt, seed: u64) -> Result<bool> {
        check_residuosity_input(a, b)?;
        if !a.is_positive() || symbols::jacobi(a, b)? != 1 {
            return quadratic_residuosity(a, b);
        }
        let l = find_auxiliary_prime(a, b, seed)?;
        symbols::is_matrix_ring_global(&Rational::from_integer(a.clone()), &Rational::from_integer(l * b))
    }

    fn find_auxiliary_prime(a: &BigInt, b: &BigInt, seed: u64) -> Result<BigInt> {
        let mut g = arith::rng(seed);
        let b_inv = if a.is_one() { BigInt::zero() } else { arith::mod_inverse(b, a).expect("coprime") };
        let span = BigInt::one() << 32u32;
        for _ in 0..arith::DEFAULT_PRIME_SEARCH_BUDGET {
            let c = g.gen_bigint_range(&BigInt::zero(), a);
            if !c.gcd(a).is_one() {
                continue;
            }
            let r = (&c * &c * &b_inv).mod_floor(a);
            let l = r + a * g.gen_bigint_range(&BigInt::zero(), &span);
            if l.is_even() || !arith::is_prime(&l) {
                continue;
            }
            if arith::legendre(a, &l)? == 1 {
                return Ok(l);
            }
        }
        Err(Error::BoundExhausted("no auxiliary prime found"))
    }

    /// Pairwise coprime integers `q_k > 1` such that every input is a product
    /// of powers of them.
    pub fn coprime_base(inputs: &[BigInt]) -> Vec<BigInt> {
        let mut base: Vec<BigInt> = inputs.iter().map(|x| x.abs()).filter(|x| x > &BigInt::one()).collect();
        loop {
            base.sort();
            base.dedup();
            let mut split = None;
            'outer: for s in 0..base.len() {
                for t in s + 1..base.len() {
                    let g = base[s].gcd(&base[t]);
                    if !g.is_one() {
                        split = Some((s, t, g));
                        break 'outer;
                    }
                }
            }
            let Some((s, t, g)) = split else { return base };
            let (x, y) = (&base[s] / &g, &base[t] / &g);
            base.remove(t);
            base.remove(s);
            base.extend([x, y, g].into_iter().filter(|v| v > &BigInt::one()));
        }
    }

    /// Decides whether `(a, b | Q)` is a matrix ring with residuosity queries
    /// in place of factoring at the odd primes.
    ///
    /// For each element `q` of a coprime base of the odd parts of `a` and
    /// `b`, write `a = q^α a'`, `b = q^β b'`. At a prime `p` dividing `q` to
    /// odd order the symbol is `(c/p)` with
    /// `c = (−1)^{αβ} a'^β b'^α`, so one query `c mod sqrad(q)` covers all of
    /// `q`.
    pub fn is_matrix_ring_via_residuosity(b: &QuaternionAlgebraQ) -> Result<bool> {
        let x = arith::integral_square_scaling(&b.a);
        let y = arith::integral_square_scaling(&b.b);
        let (xr, yr) = (Rational::from_integer(x.clone()), Rational::from_integer(y.clone()));
        if symbols::hilbert_real(&xr, &yr)? != 1 || symbols::hilbert_even(&xr, &yr)? != 1 {
            return Ok(false);
        }
        let two = BigInt::from(2);
        let odd = |n: &BigInt| arith::split_prime_power(n, &two).1;
        for q in coprime_base(&[odd(&x), odd(&y)]) {
            let (alpha, a_rest) = arith::split_prime_power(&x, &q);
            let (beta, b_rest) = arith::split_prime_power(&y, &q);
            if alpha % 2 == 0 && beta % 2 == 0 {
                continue;
            }
            let mut c = BigInt::one();
            if alpha % 2 == 1 && beta % 2 == 1 {
                c = -c;
            }
            if beta % 2 == 1 {
                c *= &a_rest;
            }
            if alpha % 2 == 1 {
                c *= &b_rest;
            }
            if !quadratic_residuosity(&c, &q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
