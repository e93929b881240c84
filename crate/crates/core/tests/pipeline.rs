mod common;

use num_traits::Zero;

use rankin_core::exact::rational::{frac, int, valuations};
use rankin_core::exact::Rational;
use rankin_core::iwasawa::{certify, prime_scan, theorem1_bound, CurveInput, DEFAULT_HECKE_CAP};
use rankin_core::modsym::{build_space, eigenform_qexp, newform_decomposition, Sign};
use rankin_core::rankin::{decompose, decompose_with, rankin_product};
use rankin_core::{EigenformCache, Error};

#[test]
fn eigenvalue_traces_match_hecke_traces() {
    for n in (11..=120).filter(|&n| common::is_prime(n)) {
        let s = build_space(n, Sign::Plus).unwrap();
        let forms = newform_decomposition(&s).unwrap();
        let deg: usize = forms.iter().map(|f| f.degree()).sum();
        assert_eq!(deg, s.cuspidal_dimension(), "N = {n}");
        for l in [2u64, 3, 5, 7, 11, 13].into_iter().filter(|&l| l != n) {
            let t = s.hecke_operator(l).unwrap().trace();
            let sum: Rational = forms.iter().map(|f| f.eigenvalue(l).unwrap().trace()).sum();
            assert_eq!(sum, t, "N = {n}, l = {l}");
        }
    }
}

#[test]
fn hecke_recurrences_in_expansions() {
    let forms = newform_decomposition(&build_space(67, Sign::Plus).unwrap()).unwrap();
    for f in &forms {
        let q = eigenform_qexp(f, 30).unwrap();
        let a = |n: usize| q.coeff(n).unwrap().clone();
        assert_eq!(a(1), f.field.one());
        assert_eq!(a(6), &a(2) * &a(3));
        assert_eq!(a(4), &(&a(2) * &a(2)) - &f.field.one().scale(&int(2)));
        assert_eq!(a(9), &(&a(3) * &a(3)) - &f.field.one().scale(&int(3)));
        assert_eq!(a(8), &(&a(2) * &a(4)) - &a(2).scale(&int(2)));
    }
    assert!(matches!(eigenform_qexp(&forms[0], 68), Err(Error::Unsupported(_))));
    let s = build_space(67, Sign::Plus).unwrap();
    assert!(matches!(s.hecke_operator(67), Err(Error::Unsupported(_))));
}

#[test]
fn decomposition_holds_through_the_level() {
    // one coefficient per orbit; its conjugates multiply the conjugate forms,
    // so each rational coefficient receives Tr(lambda a_n)
    let d = decompose(67).unwrap();
    let g2 = rankin_product(67, d.precision).unwrap();
    let e = rankin_core::weight2_eisenstein(67, 30).unwrap().expansion;
    for n in 0..30 {
        let mut v = &d.eisenstein_coefficient * e.rational_coeff(n).unwrap();
        for c in &d.newforms {
            v += (&c.lambda * &c.form.coefficient(n as u64).unwrap()).trace();
        }
        assert_eq!(v, g2.rational_coeff(n).unwrap());
    }
}

#[test]
fn decomposition_rejects_bad_levels() {
    for n in [1, 2, 5, 12, 13, 15, 29] {
        assert!(matches!(decompose(n), Err(Error::Domain(_))), "N = {n}");
    }
    assert!(rankin_product(11, 11).is_err());
}

#[test]
fn cached_forms_give_identical_decompositions() {
    let dir = tempfile::tempdir().unwrap();
    let cache = EigenformCache::new(dir.path());
    for n in [11, 43, 67] {
        let (cold, hit) = cache.newforms(n).unwrap();
        assert!(!hit);
        let (warm, hit) = cache.newforms(n).unwrap();
        assert!(hit);
        let a = decompose_with(n, &cold, None).unwrap();
        let b = decompose_with(n, &warm, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, decompose(n).unwrap());
    }
}

fn curve(level: u64, m_e: u64) -> CurveInput {
    let forms = newform_decomposition(&build_space(level, Sign::Plus).unwrap()).unwrap();
    CurveInput::new(forms.into_iter().find(|f| f.is_rational()).unwrap(), Some(m_e)).unwrap()
}

#[test]
fn positive_verdicts_have_unit_coefficient() {
    for (n, m) in [(11, 1), (67, 5)] {
        let c = curve(n, m);
        let lambda = decompose(n).unwrap().coefficient_of(&c.form.label).unwrap().to_rational().unwrap();
        let cert = prime_scan(&c, &lambda, 200).unwrap();
        for v in cert.verdicts.iter().filter(|v| v.conclusion.is_positive()) {
            assert_eq!(valuations(&lambda, v.p), (0, 0), "N = {n}, p = {}", v.p);
            assert!(v.corollaries.is_some());
            assert_ne!(m % v.p, 0);
        }
        assert!(cert.verdicts.iter().any(|v| v.conclusion.is_positive()));
    }
}

#[test]
fn primes_past_the_explicit_bound_are_positive() {
    // the bound for 11a is about 2453, beyond the default scan cap, so the
    // set of primes to test is empty at this scale
    let bound = theorem1_bound(11, 1).unwrap();
    let c = curve(11, 1);
    let cert = prime_scan(&c, &frac(2, 5), DEFAULT_HECKE_CAP).unwrap();
    assert!(*bound.lower() > int(DEFAULT_HECKE_CAP as i64));
    for v in cert.verdicts.iter().filter(|v| int(v.p as i64) > *bound.upper()) {
        let eligible = !v.anomalous && v.reduction == rankin_core::iwasawa::Reduction::GoodOrdinary;
        assert!(!eligible || v.conclusion.is_positive(), "p = {}", v.p);
    }
}

#[test]
fn scans_are_deterministic() {
    let c = curve(11, 1);
    let a = prime_scan(&c, &frac(2, 5), 300).unwrap();
    let b = prime_scan(&c, &frac(2, 5), 300).unwrap();
    assert_eq!(a, b);
    let ja = rankin_core::report::to_string(&rankin_core::report::certificate(&a));
    let jb = rankin_core::report::to_string(&rankin_core::report::certificate(&b));
    assert_eq!(ja, jb);
}

#[test]
fn vanishing_coefficient_is_never_positive() {
    // 43a has odd sign, so its coefficient is 0
    let d = decompose(43).unwrap();
    let c = curve(43, 1);
    let lambda = d.coefficient_of(&c.form.label).unwrap().to_rational().unwrap();
    assert!(lambda.is_zero());
    for p in [3, 5, 7, 13] {
        assert!(!certify(&c, p, Some(&lambda)).unwrap().conclusion.is_positive());
    }
}
