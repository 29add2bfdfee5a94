//! Integer and rational arithmetic: valuations, Legendre symbols, modular
//! square roots, primality and factorization.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, RandBigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

pub type Rational = BigRational;

/// Trial division bound used before Pollard rho.
pub const TRIAL_DIVISION_BOUND: u32 = 10_000;
/// Candidates tried by [`random_prime_in_progression`].
pub const DEFAULT_PRIME_SEARCH_BUDGET: u64 = 100_000;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Seeded generator used by every randomized routine.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A value in `Z ∪ {+∞}`.
///
/// The derived order puts every finite value below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

impl core::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// A place of `Q`: a prime `p` or the real place.
///
/// Finite places sort before the real place and among themselves by `p`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(BigInt),
    Real,
}

impl Place {
    /// The place attached to `p`; fails unless `p` is prime.
    pub fn finite(p: BigInt) -> Result<Place> {
        if is_prime(&p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn prime(&self) -> Option<&BigInt> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Real => None,
        }
    }

    /// Odd places are the real place and the odd primes.
    pub fn is_odd(&self) -> bool {
        match self {
            Place::Finite(p) => p.is_odd(),
            Place::Real => true,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Real => write!(f, "inf"),
        }
    }
}

/// Exponent of `p` in `n`, and the cofactor.
pub fn split_prime_power(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
    debug_assert!(!n.is_zero());
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return (k, m);
        }
        m = q;
        k += 1;
    }
}

pub fn ord_int(n: &BigInt, p: &BigInt) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(split_prime_power(n, p).0 as i64)
}

pub fn ord_p(x: &Rational, p: &BigInt) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let num = split_prime_power(x.numer(), p).0 as i64;
    let den = split_prime_power(x.denom(), p).0 as i64;
    Valuation::Finite(num - den)
}

/// Valuation at a place. At the real place the value is 0 for positive and
/// 1 for negative numbers (the uniformizer there is −1).
pub fn ord(x: &Rational, v: &Place) -> Valuation {
    match v {
        Place::Finite(p) => ord_p(x, p),
        Place::Real => {
            if x.is_zero() {
                Valuation::Infinite
            } else if x.is_positive() {
                Valuation::Finite(0)
            } else {
                Valuation::Finite(1)
            }
        }
    }
}

/// Least nonnegative residue.
pub fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Reduces `x` modulo `m` when the denominator of `x` is invertible mod `m`.
pub fn rational_mod(x: &Rational, m: &BigInt) -> Option<BigInt> {
    let inv = mod_inverse(x.denom(), m)?;
    Some((x.numer() * inv).mod_floor(m))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// The nonnegative square root of `n` if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// An integer in the square class of `x`: the numerator when the
/// denominator is a perfect square, else `x · den²`.
pub fn integral_square_scaling(x: &Rational) -> BigInt {
    if exact_sqrt(x.denom()).is_some() {
        x.numer().clone()
    } else {
        x.numer() * x.denom()
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i8> {
    if p.is_even() || !is_prime(p) {
        return Err(Error::NotOddPrime(p.clone()));
    }
    Ok(legendre_unchecked(a, p))
}

/// Euler's criterion; `p` must be an odd prime.
pub(crate) fn legendre_unchecked(a: &BigInt, p: &BigInt) -> i8 {
    let r = a.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e: BigInt = (p - 1u32) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// A square root of `a` modulo the prime `p` (Tonelli–Shanks), normalized to
/// the smaller of the two roots.
pub fn sqrt_mod_p(a: &BigInt, p: &BigInt) -> Result<BigInt> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let a = a.mod_floor(p);
    if p == &int(2) || a.is_zero() {
        return Ok(a);
    }
    if legendre_unchecked(&a, p) != 1 {
        return Err(Error::NoSquareRoot { a, p: p.clone() });
    }
    let one = BigInt::one();
    let pm1: BigInt = p - 1u32;
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q: BigInt = &pm1 >> s;
    let mut z = int(2);
    while legendre_unchecked(&z, p) != -1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let b = c.modpow(&(&one << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    let other = p - &r;
    Ok(if other < r { other } else { r })
}

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const RANDOM_MR_ROUNDS: usize = 64;

fn miller_rabin_round(n: &BigInt, d: &BigInt, s: u64, base: &BigInt) -> bool {
    let nm1: BigInt = n - 1u32;
    let mut x = base.modpow(d, n);
    if x.is_one() || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Miller–Rabin: deterministic below 2^64 (and well beyond, the fixed base
/// set covers n < 3.3·10^24), plus 64 random bases from a fixed seed above.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &int(2) {
        return false;
    }
    for &p in SMALL_PRIMES.iter() {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let nm1: BigInt = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d: BigInt = &nm1 >> s;
    for &p in SMALL_PRIMES.iter() {
        if !miller_rabin_round(n, &d, s, &BigInt::from(p)) {
            return false;
        }
    }
    if n.bits() <= 64 {
        return true;
    }
    let mut g = rng(0x6d69_6c6c_6572_7261);
    let upper: BigInt = n - 2u32;
    for _ in 0..RANDOM_MR_ROUNDS {
        let base = g.gen_bigint_range(&int(2), &upper);
        if !miller_rabin_round(n, &d, s, &base) {
            return false;
        }
    }
    true
}

/// Prime factorization with a sign; `factors` is sorted by prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub negative: bool,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn product(&self) -> BigInt {
        let mut n = BigInt::one();
        for (p, e) in &self.factors {
            n *= num_traits::pow(p.clone(), *e as usize);
        }
        if self.negative {
            -n
        } else {
            n
        }
    }

    pub fn exponent(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

fn brent_seed(n: &BigInt) -> u64 {
    let (_, digits) = n.to_u64_digits();
    digits.iter().fold(0x9e37_79b9_7f4a_7c15u64, |h, d| {
        (h ^ d).wrapping_mul(0x100_0000_01b3).rotate_left(17)
    })
}

/// Pollard rho with Brent's cycle detection; returns a proper divisor of the
/// odd composite `n`.
fn pollard_brent(n: &BigInt) -> BigInt {
    let mut g = rng(brent_seed(n));
    let one = BigInt::one();
    loop {
        let mut y = g.gen_bigint_range(&one, n);
        let c = g.gen_bigint_range(&one, n);
        let m = 128u64;
        let f = |v: &BigInt| (v * v + &c) % n;
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut d = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while d.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && d.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                d = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &d == n {
            loop {
                ys = f(&ys);
                d = (&x - &ys).abs().gcd(n);
                if !d.is_one() {
                    break;
                }
            }
        }
        if &d != n {
            return d;
        }
    }
}

fn factor_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(r) = exact_sqrt(&n) {
        factor_into(r.clone(), out);
        factor_into(r, out);
        return;
    }
    let d = pollard_brent(&n);
    let e = &n / &d;
    factor_into(d, out);
    factor_into(e, out);
}

/// Complete factorization: trial division to 10^4, then Pollard–Brent.
pub fn factor(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput("factor argument"));
    }
    let negative = n.is_negative();
    let mut m = n.abs();
    let mut found: Vec<BigInt> = Vec::new();
    let mut d = 2u32;
    while d <= TRIAL_DIVISION_BOUND {
        let dd = BigInt::from(d);
        if &dd * &dd > m {
            break;
        }
        while (&m % &dd).is_zero() {
            m /= &dd;
            found.push(dd.clone());
        }
        d += if d == 2 { 1 } else { 2 };
    }
    factor_into(m, &mut found);
    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { negative, factors })
}

/// Product of the primes dividing `n` to an odd power.
pub fn sqrad(n: &BigInt) -> Result<BigInt> {
    if !n.is_positive() {
        return Err(Error::Precondition("sqrad needs a positive integer".into()));
    }
    let f = factor(n)?;
    Ok(f.factors
        .iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(BigInt::one(), |acc, (p, _)| acc * p))
}

/// A random prime `ℓ < bound` with `ℓ ≡ b (mod q)`.
pub fn random_prime_in_progression(b: &BigInt, q: &BigInt, bound: &BigInt, seed: u64) -> Result<BigInt> {
    random_prime_in_progression_with_budget(b, q, bound, seed, DEFAULT_PRIME_SEARCH_BUDGET)
}

pub fn random_prime_in_progression_with_budget(
    b: &BigInt,
    q: &BigInt,
    bound: &BigInt,
    seed: u64,
    budget: u64,
) -> Result<BigInt> {
    if !q.is_positive() {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    if !b.gcd(q).is_one() {
        return Err(Error::Precondition("progression residue must be coprime to the modulus".into()));
    }
    let r = b.mod_floor(q);
    // ℓ = r + q·m with 0 ≤ m < span
    let span: BigInt = (bound - &r + q - 1u32).div_floor(q);
    if !span.is_positive() {
        return Err(Error::BoundExhausted("empty progression below bound"));
    }
    let mut g = rng(seed);
    for _ in 0..budget {
        let m = g.gen_bigint_range(&BigInt::zero(), &span);
        let l = &r + q * m;
        if is_prime(&l) {
            return Ok(l);
        }
    }
    Err(Error::BoundExhausted("no prime found in progression"))
}

/// `n = m^k` with `k ≥ 2` for some prime `m`.
pub fn is_prime_power(n: &BigInt) -> bool {
    if n < &int(2) {
        return false;
    }
    if is_prime(n) {
        return true;
    }
    let bits = n.bits();
    for k in 2..=bits as u32 {
        let r = n.nth_root(k);
        if r < int(2) {
            break;
        }
        if num_traits::pow(r.clone(), k as usize) == *n && is_prime_power(&r) {
            return true;
        }
    }
    false
}

pub fn to_i64(n: &BigInt) -> Option<i64> {
    n.to_i64()
}

pub fn sign_of(n: &BigInt) -> Sign {
    n.sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_squares(p: u64) -> Vec<u64> {
        (1..p).map(|x| x * x % p).collect()
    }

    #[test]
    fn valuations() {
        assert_eq!(ord_p(&rat(18, 1), &int(3)), Valuation::Finite(2));
        assert_eq!(ord_p(&rat(3, 4), &int(2)), Valuation::Finite(-2));
        assert_eq!(ord(&rat(-5, 1), &Place::Real), Valuation::Finite(1));
        assert_eq!(ord(&rat(5, 1), &Place::Real), Valuation::Finite(0));
        assert_eq!(ord(&rat(0, 1), &Place::Real), Valuation::Infinite);
        assert_eq!(ord_p(&rat(0, 1), &int(7)), Valuation::Infinite);
        assert!(Valuation::Finite(1_000_000) < Valuation::Infinite);
    }

    #[test]
    fn legendre_against_squares() {
        let sq7 = brute_squares(7);
        assert!(sq7.contains(&2));
        assert!(!sq7.contains(&3));
        assert_eq!(legendre(&int(2), &int(7)).unwrap(), 1);
        assert_eq!(legendre(&int(3), &int(7)).unwrap(), -1);
        assert_eq!(legendre(&int(14), &int(7)).unwrap(), 0);
        assert_eq!(legendre(&int(-1), &int(7)).unwrap(), -1);
        assert!(matches!(legendre(&int(1), &int(2)), Err(Error::NotOddPrime(_))));
        assert!(matches!(legendre(&int(1), &int(9)), Err(Error::NotOddPrime(_))));
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_mod_p(&int(2), &int(7)).unwrap(), int(3));
        assert_eq!(sqrt_mod_p(&int(0), &int(5)).unwrap(), int(0));
        assert!(matches!(sqrt_mod_p(&int(3), &int(5)), Err(Error::NoSquareRoot { .. })));
        assert_eq!(sqrt_mod_p(&int(1), &int(2)).unwrap(), int(1));
        // p ≡ 1 mod 8 exercises the full Tonelli–Shanks loop
        for p in [17u64, 41, 73, 97, 113, 257] {
            for a in 1..p {
                let r = sqrt_mod_p(&BigInt::from(a), &BigInt::from(p));
                let is_sq = brute_squares(p).contains(&a);
                match r {
                    Ok(r) => {
                        assert!(is_sq);
                        let r = r.to_u64().unwrap();
                        assert_eq!(r * r % p, a);
                        assert!(r <= p - r);
                    }
                    Err(_) => assert!(!is_sq),
                }
            }
        }
    }

    #[test]
    fn factoring() {
        let f = factor(&int(91)).unwrap();
        assert_eq!(f.factors, vec![(int(7), 1), (int(13), 1)]);
        let f = factor(&int(-16)).unwrap();
        assert!(f.negative);
        assert_eq!(f.factors, vec![(int(2), 4)]);
        assert!(factor(&int(1)).unwrap().factors.is_empty());
        assert!(factor(&int(0)).is_err());
        // beyond trial division: product of two 9-digit primes, and a square of one
        let p = int(1_000_000_007);
        let q = int(998_244_353);
        let n = &p * &q * &q;
        let f = factor(&n).unwrap();
        assert_eq!(f.factors, vec![(q.clone(), 2), (p.clone(), 1)]);
        assert_eq!(f.product(), n);
    }

    #[test]
    fn sqrad_values() {
        assert_eq!(sqrad(&int(12)).unwrap(), int(3));
        assert_eq!(sqrad(&int(1)).unwrap(), int(1));
        assert_eq!(sqrad(&int(45)).unwrap(), int(5));
    }

    #[test]
    fn primality() {
        assert!(!is_prime(&int(91)));
        assert!(is_prime(&int(97)));
        assert!(!is_prime(&int(1)));
        assert!(is_prime(&int(2)));
        // Carmichael number
        assert!(!is_prime(&int(561)));
        let m127: BigInt = (BigInt::one() << 127u32) - 1u32;
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m127 * int(3))));
        let sieve: Vec<u64> = (2..2000u64).filter(|n| (2..*n).take_while(|d| d * d <= *n).all(|d| n % d != 0)).collect();
        for n in 0..2000u64 {
            assert_eq!(is_prime(&BigInt::from(n)), sieve.contains(&n), "n = {n}");
        }
    }

    #[test]
    fn progression_search() {
        let allowed = [5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97];
        for seed in 0..20 {
            let l = random_prime_in_progression(&int(1), &int(4), &int(100), seed).unwrap();
            assert!(allowed.contains(&l.to_i64().unwrap()), "{l}");
        }
        assert!(random_prime_in_progression(&int(2), &int(4), &int(100), 0).is_err());
        let r = random_prime_in_progression_with_budget(&int(0), &int(1), &int(2), 1, 50);
        assert!(matches!(r, Err(Error::BoundExhausted(_))));
    }

    #[test]
    fn prime_powers() {
        assert!(is_prime_power(&int(25)));
        assert!(is_prime_power(&int(27)));
        assert!(is_prime_power(&int(7)));
        assert!(!is_prime_power(&int(36)));
        assert!(!is_prime_power(&int(15)));
        assert!(is_prime_power(&int(1024)));
    }
}
