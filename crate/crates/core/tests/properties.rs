use proptest::prelude::*;

use rankin_core::dirichlet::{l_value_at_zero, quadratic_character};
use rankin_core::eisenstein::{divisors, weight1_eisenstein, weight2_eisenstein};
use rankin_core::exact::factor::{factor_poly, is_irreducible, product_of_factors};
use rankin_core::exact::rational::{frac, int, is_prime};
use rankin_core::exact::{series_mul, solve_exact, QMatrix, QSeries, Rational, SolveOutcome, UniPoly};

mod common;

fn poly_strategy() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-20i64..=20, 1..=7)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(|c| UniPoly::from_i64(&c))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| frac(n, d))
}

fn series_strategy(prec: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(small_rational(), prec).prop_map(QSeries::rational)
}

fn mat_vec(a: &QMatrix, x: &[Rational]) -> Vec<Rational> {
    a.transpose().apply_row(x)
}

fn square_matrix(max: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, n), n)
            .prop_map(|rows| QMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn factorization_multiplies_back(f in poly_strategy()) {
        let fs = factor_poly(&f).unwrap();
        prop_assert_eq!(product_of_factors(&fs, &f.leading()), f.clone());
        for (g, _) in &fs {
            prop_assert!(g.is_monic());
            prop_assert!(is_irreducible(g));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn solve_reproduces_rhs(a in (1usize..=8).prop_flat_map(|n| (
        prop::collection::vec(prop::collection::vec(-5i64..=5, n), n + 2),
        prop::collection::vec(-5i64..=5, n),
    ))) {
        let (rows, x) = a;
        let a = QMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect());
        let x: Vec<Rational> = x.into_iter().map(int).collect();
        let b = mat_vec(&a, &x);
        match solve_exact(&a, &b).unwrap() {
            SolveOutcome::Unique(y) => prop_assert_eq!(mat_vec(&a, &y), b),
            SolveOutcome::Underdetermined { particular, .. } => prop_assert_eq!(mat_vec(&a, &particular), b),
            SolveOutcome::Inconsistent => prop_assert!(false, "consistent system reported inconsistent"),
        }
    }

    #[test]
    fn series_product_laws(a in series_strategy(8), b in series_strategy(8), c in series_strategy(8)) {
        let ab = series_mul(&a, &b).unwrap();
        prop_assert_eq!(&ab, &series_mul(&b, &a).unwrap());
        let left = series_mul(&ab, &c).unwrap();
        let right = series_mul(&a, &series_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn cayley_hamilton(m in square_matrix(5)) {
        let p = m.charpoly().unwrap();
        prop_assert!(m.eval_poly(&p).is_zero());
    }
}

#[test]
fn series_truncates_to_shorter_operand() {
    let a = QSeries::rational(vec![frac(1, 2), int(1), int(0), int(4)]);
    let b = QSeries::rational(vec![frac(1, 2), int(1)]);
    let p = series_mul(&a, &b).unwrap();
    assert_eq!(p.precision(), 2);
    assert_eq!(p.rational_coeff(1), Some(int(1)));
    assert_eq!(p.rational_coeff(2), None);
}

fn odd_primes(limit: u64) -> impl Iterator<Item = u64> {
    (3..=limit).filter(|&n| is_prime(n))
}

#[test]
fn characters_are_multiplicative_and_balanced() {
    for n in odd_primes(200) {
        let chi = quadratic_character(n).unwrap();
        let m = n as i64;
        let total: i64 = (0..m).map(|a| chi.value(a) as i64).sum();
        assert_eq!(total, 0, "N = {n}");
        for a in 0..m {
            for b in 0..m {
                assert_eq!(chi.value(a * b), chi.value(a) * chi.value(b), "N = {n}, {a} * {b}");
            }
        }
        assert_eq!(chi.is_odd(), n % 4 == 3);
    }
}

#[test]
fn l_values_match_class_numbers() {
    for n in odd_primes(200).filter(|n| n % 4 == 3) {
        let l = l_value_at_zero(&quadratic_character(n).unwrap()).unwrap();
        let w = if n == 3 { 6 } else { 2 };
        assert_eq!(l, frac(2 * common::class_number_oracle(n as i64), w), "N = {n}");
        if n > 3 {
            assert!(l.is_integer() && l > int(0));
        }
    }
}

#[test]
fn weight_one_coefficients() {
    for n in odd_primes(200).filter(|n| n % 4 == 3) {
        let chi = quadratic_character(n).unwrap();
        let g = weight1_eisenstein(&chi, 201).unwrap().expansion;
        assert_eq!(g.rational_coeff(0).unwrap(), l_value_at_zero(&chi).unwrap() / int(2));
        assert_eq!(g.rational_coeff(1), Some(int(1)));
        for k in 1..=200u64 {
            let a = g.rational_coeff(k as usize).unwrap();
            assert!(a >= int(0) && a <= int(divisors(k).len() as i64), "N = {n}, a_{k}");
        }
        for m in 1..=200u64 {
            for k in 1..=200 / m {
                if num_integer::gcd(m, k) == 1 {
                    let prod = g.rational_coeff(m as usize).unwrap() * g.rational_coeff(k as usize).unwrap();
                    assert_eq!(g.rational_coeff((m * k) as usize).unwrap(), prod);
                }
            }
        }
    }
}

#[test]
fn weight_two_normalization() {
    for n in odd_primes(200) {
        let e = weight2_eisenstein(n, 3).unwrap();
        assert_eq!(e.constant_term(), frac(n as i64 - 1, 24));
        assert_eq!(e.expansion.rational_coeff(1), Some(int(1)));
    }
}
