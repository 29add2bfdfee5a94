use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use quatring::algebra::AlgebraElement;
use quatring::arith::{self, int, rat, Valuation};
use quatring::orders;
use quatring::quadform::{LocalRing, QuadraticForm};
use quatring::quaternion::{self, mat2_mul, QuaternionAlgebraQ, TernaryForm};
use quatring::symbols;
use quatring::{Place, Rational};

const PRIMES: [i64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 101, 997];

fn nonzero(r: i64) -> impl Strategy<Value = i64> {
    (-r..=r).prop_filter("nonzero", |x| *x != 0)
}

fn rational() -> impl Strategy<Value = Rational> {
    (nonzero(2000), 1i64..200).prop_map(|(n, d)| rat(n, d))
}

fn any_rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
}

fn places_of(a: &Rational, b: &Rational) -> Vec<Place> {
    let mut out: Vec<Place> = symbols::support(a, b).unwrap();
    out.push(Place::Finite(int(2)));
    out.push(Place::Real);
    out.sort();
    out.dedup();
    out
}

fn trial_primes(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = int(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            out.push(p.clone());
            while n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

proptest! {
    #[test]
    fn valuation_is_additive(x in rational(), y in rational(), p in prop::sample::select(vec![2i64, 3, 5, 7])) {
        let p = int(p);
        prop_assert_eq!(arith::ord_p(&(&x * &y), &p), arith::ord_p(&x, &p) + arith::ord_p(&y, &p));
        prop_assert_eq!(arith::ord_p(&Rational::zero(), &p), Valuation::Infinite);
    }

    #[test]
    fn legendre_is_multiplicative(a in -10_000i64..10_000, b in -10_000i64..10_000, p in prop::sample::select(PRIMES.to_vec())) {
        let (a, b, p) = (int(a), int(b), int(p));
        let lab = arith::legendre(&(&a * &b), &p).unwrap();
        prop_assert_eq!(lab, arith::legendre(&a, &p).unwrap() * arith::legendre(&b, &p).unwrap());
        // Euler's criterion
        let e = arith::mod_floor(&a, &p).modpow(&((&p - 1) / 2), &p);
        let expect = if e.is_zero() { 0 } else if e.is_one() { 1 } else { -1 };
        prop_assert_eq!(arith::legendre(&a, &p).unwrap(), expect);
    }

    #[test]
    fn jacobi_matches_prime_factors(a in -5000i64..5000, b in (1i64..2000).prop_map(|k| 2 * k + 1)) {
        let (a, b) = (int(a), int(b));
        let mut expect = 1i8;
        let mut m = b.clone();
        for p in trial_primes(&b) {
            while m.is_multiple_of(&p) {
                expect *= arith::legendre(&a, &p).unwrap();
                m /= &p;
            }
        }
        prop_assert_eq!(symbols::jacobi(&a, &b).unwrap(), expect);
    }

    #[test]
    fn square_roots_square(r in 0i64..100_000, p in prop::sample::select(PRIMES.to_vec())) {
        let p = int(p);
        let a = int(r) * int(r);
        let s = arith::sqrt_mod_p(&a, &p).unwrap();
        prop_assert!(s >= BigInt::zero() && s < p);
        prop_assert_eq!(arith::mod_floor(&(&s * &s - &a), &p), BigInt::zero());
    }

    #[test]
    fn factorization_reconstructs(n in nonzero(1_000_000_000_000)) {
        let n = int(n);
        let f = arith::factor(&n).unwrap();
        prop_assert_eq!(f.product(), n.clone());
        prop_assert!(f.primes().all(arith::is_prime));
        let primes: Vec<BigInt> = f.primes().cloned().collect();
        prop_assert_eq!(primes, trial_primes(&n));
        let s = arith::sqrad(&n.abs()).unwrap();
        let odd: BigInt = f.factors.iter().filter(|(_, e)| e % 2 == 1).map(|(p, _)| p.clone()).product();
        prop_assert_eq!(&s, &odd);
        let rest = n.abs() / &s;
        prop_assert!(arith::exact_sqrt(&rest).is_some());
    }

    #[test]
    fn reduced_norm_is_multiplicative(a in nonzero(30), b in nonzero(30),
            x in prop::collection::vec(any_rational(), 4), y in prop::collection::vec(any_rational(), 4)) {
        let alg = QuaternionAlgebraQ::from_ints(a, b).unwrap();
        let xy = alg.mul(&x, &y);
        prop_assert_eq!(alg.nrd(&xy), alg.nrd(&x) * alg.nrd(&y));
        prop_assert_eq!(alg.conj(&xy), alg.mul(&alg.conj(&y), &alg.conj(&x)));
        let n = alg.mul(&x, &alg.conj(&x));
        prop_assert_eq!(n, vec![alg.nrd(&x), Rational::zero(), Rational::zero(), Rational::zero()]);
        prop_assert_eq!(alg.trd(&x), &x[0] * rat(2, 1));
    }

    #[test]
    fn normalization_transports(q in prop::collection::vec((-50i64..50).prop_map(|n| rat(n, 1)), 1..5),
            t in prop::collection::vec((-50i64..50).prop_map(|n| rat(n, 1)), 16),
            p in prop::sample::select(vec![2i64, 3, 5])) {
        let n = q.len();
        let t: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| t[4 * i + j].clone()).collect()).collect();
        let f = QuadraticForm::new(q, &t).unwrap();
        let ring = LocalRing::localized(int(p)).unwrap();
        let nf = f.normalize(&ring).unwrap();
        let moved = f.transport(&nf.change_of_basis).unwrap();
        prop_assert_eq!(moved.gram(), &nf.block_gram());
        prop_assert!(nf.blocks.iter().all(|b| b.is_atomic(&ring)));
        let vals = nf.valuations();
        prop_assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let covered: usize = nf.blocks.iter().map(|b| b.size()).sum();
        prop_assert_eq!(covered, n);
        let det = quatring::linalg::determinant(&nf.change_of_basis);
        prop_assert!(ring.is_unit(&det));
    }

    #[test]
    fn hilbert_symbol_identities(a in rational(), b in rational(), c in rational()) {
        for v in places_of(&a, &b) {
            let h = symbols::hilbert(&a, &b, &v).unwrap();
            prop_assert_eq!(h, symbols::hilbert(&b, &a, &v).unwrap());
            prop_assert_eq!(h, symbols::hilbert(&a, &(&b * &c * &c), &v).unwrap());
            prop_assert_eq!(symbols::hilbert(&a, &-&a, &v).unwrap(), 1);
            let ab = symbols::hilbert(&a, &(&b * &c), &v).unwrap();
            prop_assert_eq!(ab, h * symbols::hilbert(&a, &c, &v).unwrap());
        }
        if !a.is_one() {
            let one_minus = Rational::one() - &a;
            for v in places_of(&a, &one_minus) {
                prop_assert_eq!(symbols::hilbert(&a, &one_minus, &v).unwrap(), 1);
            }
        }
        prop_assert!(symbols::reciprocity_check(&a, &b).unwrap().holds());
        prop_assert_eq!(symbols::ramified_set(&a, &b).unwrap().len() % 2, 0);
        prop_assert_eq!(symbols::hilbert_even_by_reciprocity(&a, &b).unwrap(),
            symbols::hilbert_even(&a, &b).unwrap());
    }

    #[test]
    fn split_algebras_give_matrix_models(a in nonzero(40), x in 1i64..12, y in 0i64..12,
            u in prop::collection::vec(any_rational(), 4), w in prop::collection::vec(any_rational(), 4)) {
        // b = x² − a y² is a norm from Q(√a), so (a, b) splits
        let b = x * x - a * y * y;
        prop_assume!(b != 0);
        let alg = QuaternionAlgebraQ::from_ints(a, b).unwrap();
        prop_assert!(alg.is_matrix_ring().unwrap());
        let (table, data) = quaternion::split_algebra(&alg, quaternion::DEFAULT_HEIGHT_BOUND).unwrap().expect("split");
        prop_assert!(!data.e.is_zero());
        prop_assert!(table.mul(&data.e, &data.e).is_zero());
        let (u, w) = (AlgebraElement::new(u), AlgebraElement::new(w));
        let uw = table.mul(&u, &w);
        prop_assert_eq!(data.image(&table, &uw).unwrap(),
            mat2_mul(&data.image(&table, &u).unwrap(), &data.image(&table, &w).unwrap()));
    }

    #[test]
    fn conic_points_lie_on_the_conic(c in prop::collection::vec(-500i64..500, 6),
            p in prop::sample::select(vec![2i64, 3, 5, 7, 1_000_003]), seed in any::<u64>()) {
        let form = TernaryForm { q: [int(c[0]), int(c[1]), int(c[2])], t01: int(c[3]), t02: int(c[4]), t12: int(c[5]) };
        let p = int(p);
        prop_assume!(!arith::mod_floor(&form.half_discriminant(), &p).is_zero());
        let pt = quaternion::conic_point_mod_p(&form, &p, seed).unwrap();
        prop_assert!(pt.iter().any(|x| !x.is_zero()));
        prop_assert!(pt.iter().all(|x| x >= &BigInt::zero() && x < &p));
        prop_assert_eq!(arith::mod_floor(&form.eval(&pt), &p), BigInt::zero());
        prop_assert_eq!(quaternion::conic_point_mod_p(&form, &p, seed).unwrap(), pt);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maximal_orders_contain_the_standard_order(a in nonzero(60), b in nonzero(60)) {
        let alg = QuaternionAlgebraQ::from_ints(a, b).unwrap();
        let o = orders::standard_order(&alg);
        let d0 = orders::discriminant(&o).unwrap();
        prop_assert_eq!(&d0.reduced, &int(4 * a * b).abs());
        prop_assert_eq!(&d0.reduced * &d0.reduced, d0.disc);
        let m = orders::max_order(&o).unwrap();
        m.verify().unwrap();
        prop_assert!(m.contains(&o));
        let index = m.index_of(&o).unwrap();
        let bad = int(2 * a * b);
        for p in trial_primes(&index) {
            prop_assert!(bad.is_multiple_of(&p));
        }
        let d = orders::discriminant(&m).unwrap();
        prop_assert_eq!(&d.reduced, &alg.discriminant().unwrap());
        prop_assert_eq!(&d0.reduced, &(&d.reduced * &index));
        prop_assert!(orders::is_maximal(&m).unwrap());
        // maximal orders are fixed
        let again = orders::max_order(&m).unwrap();
        prop_assert_eq!(again.lattice(), m.lattice());
    }

    #[test]
    fn local_steps_stay_inside_the_maximal_index(a in nonzero(40), b in nonzero(40), p in prop::sample::select(vec![2i64, 3, 5])) {
        let alg = QuaternionAlgebraQ::from_ints(a, b).unwrap();
        let o = orders::standard_order(&alg);
        let p = int(p);
        let sat = orders::p_saturate(&o, &p).unwrap();
        prop_assert!(sat.order.contains(&o));
        let idx = sat.order.index_of(&o).unwrap();
        prop_assert_eq!(trial_primes(&idx).into_iter().filter(|q| q != &p).count(), 0);
        prop_assert!(sat.blocks.iter().all(|b| b.valuation <= Valuation::Finite(1)));
        let pm = orders::p_maximalize(&o, &p).unwrap();
        prop_assert!(pm.contains(&o));
        let dp = orders::discriminant(&pm).unwrap().reduced;
        let expect = arith::ord_int(&alg.discriminant().unwrap(), &p);
        prop_assert_eq!(arith::ord_int(&dp, &p), expect);
    }

    #[test]
    fn residuosity_routes_agree(a in -200i64..200, b in (1i64..150).prop_map(|k| 2 * k + 1), seed in any::<u64>()) {
        let (a, b) = (int(a), int(b));
        prop_assume!(a.gcd(&b).is_one());
        let direct = orders::demo::quadratic_residuosity(&a, &b).unwrap();
        prop_assert_eq!(orders::demo::residuosity_via_splitting(&a, &b, seed).unwrap(), direct);
    }

    #[test]
    fn matrix_ring_routes_agree(a in nonzero(200), b in nonzero(200)) {
        let alg = QuaternionAlgebraQ::from_ints(a, b).unwrap();
        prop_assert_eq!(orders::demo::is_matrix_ring_via_residuosity(&alg).unwrap(), alg.is_matrix_ring().unwrap());
    }
}
