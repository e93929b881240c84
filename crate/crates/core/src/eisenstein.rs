//! q-expansions of the weight-one series attached to (1, chi) and of the
//! weight-two Eisenstein series of prime level.

use num_traits::Zero;

use crate::dirichlet::{l_value_at_zero, trivial_character, DirichletCharacter};
use crate::error::{domain, Result};
use crate::exact::rational::{frac, int, is_prime, Rational};
use crate::exact::QSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinSeries {
    pub level: u64,
    pub weight: u32,
    pub nebentypus: DirichletCharacter,
    pub expansion: QSeries,
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn sigma1(n: u64) -> u64 {
    divisors(n).iter().sum()
}

/// `L(0,chi)/2 + sum_{n>=1} (sum_{d|n} chi(d)) q^n`.
pub fn weight1_eisenstein(chi: &DirichletCharacter, prec: usize) -> Result<EisensteinSeries> {
    if prec < 2 {
        return Err(domain!("precision must be at least 2, got {prec}"));
    }
    if chi.is_trivial() || !chi.is_odd() {
        return Err(domain!("weight-one series needs an odd quadratic character"));
    }
    let a0 = l_value_at_zero(chi)? / int(2);
    let mut c = Vec::with_capacity(prec);
    c.push(a0);
    for n in 1..prec as u64 {
        let s: i64 = divisors(n).iter().map(|&d| chi.value(d as i64) as i64).sum();
        c.push(int(s));
    }
    Ok(EisensteinSeries {
        level: chi.modulus(),
        weight: 1,
        nebentypus: chi.clone(),
        expansion: QSeries::rational(c),
    })
}

/// `(N-1)/24 + sum_{n>=1} (sigma(n) - N sigma(n/N)) q^n`.
pub fn weight2_eisenstein(n: u64, prec: usize) -> Result<EisensteinSeries> {
    if !is_prime(n) {
        return Err(domain!("level {n} is not prime"));
    }
    if prec < 2 {
        return Err(domain!("precision must be at least 2, got {prec}"));
    }
    let mut c = vec![frac(n as i64 - 1, 24)];
    for m in 1..prec as u64 {
        let mut a = sigma1(m) as i64;
        if m % n == 0 {
            a -= n as i64 * sigma1(m / n) as i64;
        }
        c.push(int(a));
    }
    Ok(EisensteinSeries {
        level: n,
        weight: 2,
        nebentypus: trivial_character(n)?,
        expansion: QSeries::rational(c),
    })
}

impl EisensteinSeries {
    pub fn constant_term(&self) -> Rational {
        self.expansion.rational_coeff(0).unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::quadratic_character;

    fn coeffs(s: &QSeries) -> Vec<Rational> {
        (0..s.precision()).map(|n| s.rational_coeff(n).unwrap()).collect()
    }

    #[test]
    fn level_11() {
        let chi = quadratic_character(11).unwrap();
        let g = weight1_eisenstein(&chi, 6).unwrap();
        assert_eq!(coeffs(&g.expansion), vec![frac(1, 2), int(1), int(0), int(2), int(1), int(2)]);
        let e = weight2_eisenstein(11, 12).unwrap();
        assert_eq!(
            coeffs(&e.expansion)[..6],
            [frac(5, 12), int(1), int(3), int(4), int(7), int(6)]
        );
        assert_eq!(e.expansion.rational_coeff(11), Some(int(1)));
    }

    #[test]
    fn level_67() {
        let chi = quadratic_character(67).unwrap();
        let g = weight1_eisenstein(&chi, 6).unwrap();
        assert_eq!(g.expansion.rational_coeff(2), Some(int(0)));
        assert_eq!(g.expansion.rational_coeff(4), Some(int(1)));
        // 5 is a nonresidue mod 67, so a_5 = 1 + chi(5) = 0
        assert_eq!(g.expansion.rational_coeff(5), Some(int(0)));
        assert_eq!(weight2_eisenstein(67, 3).unwrap().constant_term(), frac(11, 4));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(weight2_eisenstein(12, 5).is_err());
        assert!(weight1_eisenstein(&quadratic_character(13).unwrap(), 5).is_err());
        assert!(weight1_eisenstein(&quadratic_character(11).unwrap(), 1).is_err());
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(sigma1(6), 12);
    }
}
