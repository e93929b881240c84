//! Real Dirichlet characters modulo a prime.

use std::fmt;

use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::exact::rational::{frac, is_prime, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A character modulo a prime `N` taking values in {-1, 0, 1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<i8>,
    trivial: bool,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Legendre symbol `(a | p)` by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// The quadratic character modulo an odd prime.
pub fn quadratic_character(n: u64) -> Result<DirichletCharacter> {
    if n == 2 || !is_prime(n) {
        return Err(domain!("quadratic character needs an odd prime modulus, got {n}"));
    }
    let values = (0..n).map(|a| legendre(a as i64, n)).collect();
    Ok(DirichletCharacter { modulus: n, values, trivial: false })
}

/// The principal character modulo a prime.
pub fn trivial_character(n: u64) -> Result<DirichletCharacter> {
    if !is_prime(n) {
        return Err(domain!("modulus {n} is not prime"));
    }
    let values = (0..n).map(|a| if a == 0 { 0 } else { 1 }).collect();
    Ok(DirichletCharacter { modulus: n, values, trivial: true })
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn value(&self, a: i64) -> i8 {
        self.values[a.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn parity(&self) -> Parity {
        if self.value(-1) == -1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == Parity::Odd
    }
}

/// `L(0, chi) = -B_{1,chi} = -(1/N) sum_{a<N} a chi(a)` for odd primitive `chi`.
pub fn l_value_at_zero(chi: &DirichletCharacter) -> Result<Rational> {
    if chi.is_trivial() || !chi.is_odd() {
        return Err(domain!(
            "L(0, chi) is only used for odd nontrivial characters (modulus {})",
            chi.modulus()
        ));
    }
    let n = chi.modulus() as i64;
    let s: i64 = (1..n).map(|a| a * chi.value(a) as i64).sum();
    Ok(frac(-s, n))
}

/// The Gauss sum of the odd quadratic character mod a prime `N = 3 mod 4`,
/// kept symbolically as `i * sqrt(N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolicGaussSum {
    pub radicand: u64,
    pub imaginary: bool,
}

/// `value / sqrt(radicand)`, never evaluated numerically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverSqrt {
    pub value: Rational,
    pub radicand: u64,
}

impl SymbolicGaussSum {
    /// Divide a rational by `g(chi)/i = sqrt(N)`.
    pub fn divide_by_g_over_i(&self, q: &Rational) -> OverSqrt {
        OverSqrt { value: q.clone(), radicand: self.radicand }
    }
}

impl fmt::Display for SymbolicGaussSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.imaginary {
            write!(f, "i*sqrt({})", self.radicand)
        } else {
            write!(f, "sqrt({})", self.radicand)
        }
    }
}

impl fmt::Display for OverSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_zero() {
            return f.write_str("0");
        }
        write!(f, "({})/sqrt({})", self.value, self.radicand)
    }
}

pub fn gauss_sum(chi: &DirichletCharacter) -> Result<SymbolicGaussSum> {
    if chi.is_trivial() || !chi.is_odd() || chi.modulus() % 4 != 3 {
        return Err(Error::Unsupported(format!(
            "symbolic Gauss sums are only provided for the odd quadratic character modulo a prime 3 mod 4 (got modulus {})",
            chi.modulus()
        )));
    }
    Ok(SymbolicGaussSum { radicand: chi.modulus(), imaginary: true })
}
