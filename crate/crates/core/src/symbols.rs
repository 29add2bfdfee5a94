//! Square symbols, Hilbert symbols at every place of `Q`, ramification,
//! and the Jacobi symbol by reciprocity.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, int, legendre_unchecked, ord_p, split_prime_power, Place, Rational, Valuation};
use crate::trace::Trace;
use crate::{Error, Result};

/// `(a | v)` at an odd place: 1 if `a` is a local square, −1 for a nonsquare
/// unit class (finite `v`), 0 for odd valuation or a negative real.
pub fn square_symbol(a: &Rational, v: &Place) -> Result<i8> {
    if a.is_zero() {
        return Err(Error::ZeroInput("square symbol argument"));
    }
    match v {
        Place::Real => Ok(if a.is_positive() { 1 } else { 0 }),
        Place::Finite(p) if *p == int(2) => Err(Error::NotOddPrime(p.clone())),
        Place::Finite(p) => Ok(square_symbol_odd(a, p)),
    }
}

fn square_symbol_odd(a: &Rational, p: &BigInt) -> i8 {
    let (en, un) = split_prime_power(a.numer(), p);
    let (ed, ud) = split_prime_power(a.denom(), p);
    if (en + ed) % 2 == 1 {
        return 0;
    }
    // unit part un/ud has the square class of un·ud
    legendre_unchecked(&(un * ud), p)
}

fn check_nonzero(a: &Rational, b: &Rational) -> Result<()> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput("Hilbert symbol argument"));
    }
    Ok(())
}

/// Hilbert symbol at an odd prime: 1 iff one of `(a|p)`, `(b|p)`, `(−ab|p)`
/// is 1, or `(a|p) = (b|p) = −1`.
pub fn hilbert_odd(a: &Rational, b: &Rational, p: &BigInt) -> Result<i8> {
    check_nonzero(a, b)?;
    if p.is_even() || !arith::is_prime(p) {
        return Err(Error::NotOddPrime(p.clone()));
    }
    Ok(hilbert_odd_unchecked(a, b, p))
}

fn hilbert_odd_unchecked(a: &Rational, b: &Rational, p: &BigInt) -> i8 {
    let sa = square_symbol_odd(a, p);
    if sa == 1 {
        return 1;
    }
    let sb = square_symbol_odd(b, p);
    if sb == 1 {
        return 1;
    }
    if sa == -1 && sb == -1 {
        return 1;
    }
    if square_symbol_odd(&-(a * b), p) == 1 {
        return 1;
    }
    -1
}

pub fn hilbert_real(a: &Rational, b: &Rational) -> Result<i8> {
    check_nonzero(a, b)?;
    Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 })
}

/// Dyadic Hilbert symbol `(a, b)_2`.
pub fn hilbert_even(a: &Rational, b: &Rational) -> Result<i8> {
    hilbert_even_traced(a, b, &mut Trace::off())
}

pub fn hilbert_even_traced(a: &Rational, b: &Rational, trace: &mut Trace) -> Result<i8> {
    check_nonzero(a, b)?;
    // Step 1: integral representatives in the same square classes
    trace.step("evenhilbalg.step1");
    let (a, b) = dyadic_reduce(arith::integral_square_scaling(a), arith::integral_square_scaling(b));
    Ok(even_symbol_reduced(&a, &b, trace))
}

/// Brings a pair of nonzero integers to `ord_2 a = 0`, `ord_2 b ∈ {0, 1}`
/// using `(a,b) = (at², bu²) = (b,a) = (−ab, b)`.
fn dyadic_reduce(a: BigInt, b: BigInt) -> (BigInt, BigInt) {
    let two = int(2);
    let (ea, ua) = split_prime_power(&a, &two);
    let (eb, ub) = split_prime_power(&b, &two);
    let a = if ea % 2 == 1 { ua * 2 } else { ua };
    let b = if eb % 2 == 1 { ub * 2 } else { ub };
    match (ea % 2, eb % 2) {
        (0, _) => (a, b),
        (1, 0) => (b, a),
        _ => {
            // (2u, 2w) ~ (−4uw, 2w) ~ (−uw, 2w)
            let c: BigInt = -(&a * &b) / 4u32;
            (c, b)
        }
    }
}

fn even_symbol_reduced(a: &BigInt, b: &BigInt, trace: &mut Trace) -> i8 {
    // Step 2
    let (y, z, w) = valuation_game(a, b, trace);
    trace.step("evenhilbalg.step2");
    let ab = a * b;
    let numer = BigInt::one() - a * &y * &y - b * &z * &z + &ab * &w * &w;
    debug_assert!((&numer % 4u32).is_zero());
    // nrd(i') for i' = (1 + yi + zj + wij)/2; T² − T + n has a root mod 2 iff n is even
    let n: BigInt = numer / 4u32;
    if n.is_even() {
        return 1;
    }
    // Step 3: b' = (j')² for j' = (zb)i − (ya)j
    trace.step("evenhilbalg.step3");
    let b_prime = &ab * (&z * &z * b + &y * &y * a);
    match ord_p(&Rational::from_integer(b_prime), &int(2)) {
        Valuation::Finite(e) if e % 2 == 0 => 1,
        Valuation::Finite(_) => -1,
        // b' = 0 would make j' a nonzero nilpotent, so the algebra splits
        Valuation::Infinite => 1,
    }
}

/// Returns `(y, z, w)` with `1 − ay² − bz² + abw² ≡ 0 (mod 4)` and `y` odd,
/// for `a` odd and `ord_2 b ∈ {0, 1}`.
pub fn valuation_game(a: &BigInt, b: &BigInt, trace: &mut Trace) -> (BigInt, BigInt, BigInt) {
    debug_assert!(a.is_odd());
    if b.is_even() {
        // Step 1
        trace.step("valuationgame.step1");
        let (y, z) = even_norm(a, b, trace);
        return (y, z, BigInt::zero());
    }
    // Step 2: modulo 2 every odd residue is a square with root 1, so the
    // remaining step never applies over Q
    trace.step("valuationgame.step2");
    (BigInt::one(), BigInt::one(), BigInt::one())
}

/// Returns `(y, z)` with `1 − ay² − bz² ≡ 0 (mod 4)` and `y` odd, for `a` odd
/// and `ord_2 b = 1`. Square roots of odd residues mod 2 are lifted to 1.
pub fn even_norm(a: &BigInt, b: &BigInt, trace: &mut Trace) -> (BigInt, BigInt) {
    trace.step("evennorm.step2");
    let mut y = BigInt::one();
    let mut z = BigInt::zero();
    loop {
        trace.step("evennorm.step3");
        let n = BigInt::one() - a * &y * &y - b * &z * &z;
        let t = if n.is_zero() { u64::MAX } else { split_prime_power(&n, &int(2)).0 };
        if t >= 2 {
            return (y, z);
        }
        if t % 2 == 0 {
            y += BigInt::one() << (t / 2);
        } else {
            z += BigInt::one() << (t / 2);
        }
    }
}

/// `(a, b)_v` at any place.
pub fn hilbert(a: &Rational, b: &Rational, v: &Place) -> Result<i8> {
    check_nonzero(a, b)?;
    match v {
        Place::Real => hilbert_real(a, b),
        Place::Finite(p) if *p == int(2) => hilbert_even(a, b),
        Place::Finite(p) => Ok(hilbert_odd_unchecked(a, b, p)),
    }
}

/// Places where `(a, b)_v` can be −1: 2, the real place, and the primes
/// dividing the numerators and denominators of `a` and `b`. Sorted.
pub fn support(a: &Rational, b: &Rational) -> Result<Vec<Place>> {
    check_nonzero(a, b)?;
    let n = int(2) * a.numer() * a.denom() * b.numer() * b.denom();
    let f = arith::factor(&n)?;
    let mut places: Vec<Place> = f.primes().map(|p| Place::Finite(p.clone())).collect();
    places.push(Place::Real);
    Ok(places)
}

/// Places where `(a, b | Q)` ramifies.
pub fn ramified_set(a: &Rational, b: &Rational) -> Result<Vec<Place>> {
    let mut out = Vec::new();
    for v in support(a, b)? {
        if hilbert(a, b, &v)? == -1 {
            out.push(v);
        }
    }
    debug_assert!(out.len() % 2 == 0);
    Ok(out)
}

/// Product of the finite ramified primes.
pub fn algebra_discriminant(a: &Rational, b: &Rational) -> Result<BigInt> {
    Ok(ramified_set(a, b)?.iter().filter_map(|v| v.prime()).fold(BigInt::one(), |acc, p| acc * p))
}

/// `(a, b | Q) ≅ M_2(Q)` iff no place ramifies.
pub fn is_matrix_ring_global(a: &Rational, b: &Rational) -> Result<bool> {
    Ok(ramified_set(a, b)?.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub symbols: Vec<(Place, i8)>,
    pub product: i8,
}

impl ReciprocityReport {
    pub fn holds(&self) -> bool {
        self.product == 1
    }
}

/// All local symbols over the support and their product.
pub fn reciprocity_check(a: &Rational, b: &Rational) -> Result<ReciprocityReport> {
    let mut symbols = Vec::new();
    let mut product = 1i8;
    for v in support(a, b)? {
        let s = hilbert(a, b, &v)?;
        product *= s;
        symbols.push((v, s));
    }
    Ok(ReciprocityReport { symbols, product })
}

/// `(a, b)_2` recovered from the odd and real symbols by reciprocity.
pub fn hilbert_even_by_reciprocity(a: &Rational, b: &Rational) -> Result<i8> {
    let mut product = 1i8;
    for v in support(a, b)? {
        if v.is_odd() {
            product *= hilbert(a, b, &v)?;
        }
    }
    Ok(product)
}

/// Jacobi symbol `(a / b)` for odd `b`, by repeated reduction and flipping
/// through the symbols at 2 and at the real place.
pub fn jacobi(a: &BigInt, b: &BigInt) -> Result<i8> {
    jacobi_traced(a, b, &mut Trace::off())
}

pub fn jacobi_traced(a: &BigInt, b: &BigInt, trace: &mut Trace) -> Result<i8> {
    if b.is_zero() {
        return Err(Error::ZeroInput("Jacobi denominator"));
    }
    if b.is_even() {
        return Err(Error::Precondition("Jacobi denominator must be odd".into()));
    }
    // Step 1
    trace.step("jacobi.step1");
    let mut z = 1i8;
    let mut a = a.clone();
    let mut b = b.clone();
    loop {
        // Step 2
        trace.step("jacobi.step2");
        let m = b.abs();
        if m.is_one() {
            return Ok(z);
        }
        let r = a.mod_floor(&m);
        if r.is_zero() {
            return Ok(0);
        }
        let (_, a1) = split_prime_power(&r, &int(2));
        // Step 3
        trace.step("jacobi.step3");
        let (ra, rb) = (Rational::from_integer(r.clone()), Rational::from_integer(b.clone()));
        z *= even_symbol_reduced_pair(&r, &b, trace) * hilbert_real(&ra, &rb)?;
        a = b;
        b = a1;
    }
}

fn even_symbol_reduced_pair(a: &BigInt, b: &BigInt, trace: &mut Trace) -> i8 {
    trace.step("evenhilbalg.step1");
    let (a, b) = dyadic_reduce(a.clone(), b.clone());
    even_symbol_reduced(&a, &b, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn r(n: i64) -> Rational {
        rat(n, 1)
    }

    /// Closed form over Q_2: for a = 2^α u, b = 2^β v,
    /// (a,b)_2 = (−1)^{ε(u)ε(v) + α ω(v) + β ω(u)}.
    fn dyadic_oracle(a: i64, b: i64) -> i8 {
        fn split(mut x: i64) -> (u32, i64) {
            let mut k = 0;
            while x % 2 == 0 {
                x /= 2;
                k += 1;
            }
            (k, x)
        }
        let eps = |u: i64| ((u.rem_euclid(4) - 1) / 2) as u32;
        let omega = |u: i64| {
            let m = u.rem_euclid(8);
            if m == 3 || m == 5 {
                1
            } else {
                0
            }
        };
        let (al, u) = split(a);
        let (be, v) = split(b);
        let e = eps(u) * eps(v) + al * omega(v) + be * omega(u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn square_symbols() {
        for p in [3, 5, 7, 11] {
            assert_eq!(square_symbol(&r(4), &Place::Finite(int(p))).unwrap(), 1);
        }
        assert_eq!(square_symbol(&r(3), &Place::Finite(int(3))).unwrap(), 0);
        assert_eq!(square_symbol(&r(-1), &Place::Real).unwrap(), 0);
        assert!(square_symbol(&r(3), &Place::Finite(int(2))).is_err());
        assert_eq!(square_symbol(&rat(2, 9), &Place::Finite(int(3))).unwrap(), -1);
    }

    #[test]
    fn odd_symbols() {
        assert_eq!(hilbert_odd(&r(2), &r(3), &int(3)).unwrap(), -1);
        assert_eq!(hilbert_odd(&r(3), &r(3), &int(3)).unwrap(), -1);
        for b in [-7, 3, 5, 15, 45] {
            assert_eq!(hilbert_odd(&r(1), &r(b), &int(5)).unwrap(), 1);
        }
        assert!(hilbert_odd(&r(1), &r(1), &int(2)).is_err());
    }

    #[test]
    fn even_symbol_golden() {
        assert_eq!(hilbert_even(&r(-1), &r(-1)).unwrap(), -1);
        assert_eq!(hilbert_even(&r(2), &r(2)).unwrap(), 1);
        assert_eq!(hilbert_even(&r(5), &r(2)).unwrap(), -1);
        assert_eq!(hilbert_even(&r(3), &r(2)).unwrap(), -1);
    }

    #[test]
    fn even_symbol_matches_closed_form() {
        for a in -64i64..=64 {
            for b in -64i64..=64 {
                if a == 0 || b == 0 {
                    continue;
                }
                assert_eq!(hilbert_even(&r(a), &r(b)).unwrap(), dyadic_oracle(a, b), "({a},{b})");
            }
        }
        // rational inputs reduce to the same square classes
        assert_eq!(hilbert_even(&rat(3, 4), &rat(1, 2)).unwrap(), dyadic_oracle(3, 2));
        assert_eq!(hilbert_even(&rat(-5, 3), &rat(7, 6)).unwrap(), dyadic_oracle(-15, 42));
    }

    #[test]
    fn even_norm_congruence() {
        for a in (-41i64..=41).step_by(2) {
            for b in [-6i64, -2, 2, 6, 10, 14, 18] {
                let (y, z) = even_norm(&int(a), &int(b), &mut Trace::off());
                let n = BigInt::one() - int(a) * &y * &y - int(b) * &z * &z;
                assert!((n % 4u32).is_zero());
                assert!(y.is_odd());
            }
        }
    }

    #[test]
    fn trace_labels() {
        let mut t = Trace::recording();
        hilbert_even_traced(&r(-1), &r(-1), &mut t).unwrap();
        assert_eq!(
            t.steps(),
            &["evenhilbalg.step1", "valuationgame.step2", "evenhilbalg.step2", "evenhilbalg.step3"]
        );
    }

    #[test]
    fn ramification() {
        assert_eq!(ramified_set(&r(-1), &r(-1)).unwrap(), vec![Place::Finite(int(2)), Place::Real]);
        assert_eq!(algebra_discriminant(&r(-1), &r(-1)).unwrap(), int(2));
        assert!(ramified_set(&r(1), &r(1)).unwrap().is_empty());
        assert_eq!(algebra_discriminant(&r(1), &r(1)).unwrap(), int(1));
        for p in [5, 13, 17, 29] {
            assert!(ramified_set(&r(-1), &r(p)).unwrap().is_empty());
        }
        assert!(is_matrix_ring_global(&r(1), &r(1)).unwrap());
        assert!(!is_matrix_ring_global(&r(-1), &r(-1)).unwrap());
        let rep = reciprocity_check(&r(-2), &r(-5)).unwrap();
        assert!(rep.holds());
        let local_split = rep.symbols.iter().all(|(_, s)| *s == 1);
        assert_eq!(is_matrix_ring_global(&r(-2), &r(-5)).unwrap(), local_split);
    }

    #[test]
    fn reciprocity_reports() {
        let rep = reciprocity_check(&r(-1), &r(-1)).unwrap();
        assert_eq!(rep.symbols, vec![(Place::Finite(int(2)), -1), (Place::Real, -1)]);
        assert!(rep.holds());
        let rep = reciprocity_check(&r(1), &r(77)).unwrap();
        assert!(rep.symbols.iter().all(|(_, s)| *s == 1));
    }

    #[test]
    fn jacobi_values() {
        assert_eq!(jacobi(&int(2), &int(15)).unwrap(), 1);
        assert_eq!(jacobi(&int(7), &int(15)).unwrap(), -1);
        assert_eq!(jacobi(&int(5), &int(1)).unwrap(), 1);
        assert_eq!(jacobi(&int(6), &int(15)).unwrap(), 0);
        assert!(jacobi(&int(1), &int(4)).is_err());
        assert!(jacobi(&int(1), &int(0)).is_err());
        // negative numerators against Euler's criterion at a prime
        for a in -30i64..30 {
            let want = legendre_unchecked(&int(a), &int(31));
            assert_eq!(jacobi(&int(a), &int(31)).unwrap(), want, "a = {a}");
        }
    }
}
