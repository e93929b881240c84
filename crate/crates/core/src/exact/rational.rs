use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

/// Canonical arbitrary-precision rational (reduced, positive denominator).
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `v_p(n)` for a nonzero integer.
pub fn valuation_int(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Valuations of numerator and denominator separately; the numerator
/// valuation of zero is reported as `u32::MAX`.
pub fn valuations(q: &Rational, p: u64) -> (u32, u32) {
    (valuation_int(q.numer(), p), valuation_int(q.denom(), p))
}

/// Largest odd divisor of |n| (n nonzero).
pub fn odd_part(n: &BigInt) -> BigInt {
    let mut n = n.abs();
    if n.is_zero() {
        return n;
    }
    let two = BigInt::from(2);
    while n.is_even() {
        n /= &two;
    }
    n
}

/// Odd part of a rational: odd parts of numerator over odd part of denominator,
/// sign kept.
pub fn odd_part_rational(q: &Rational) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let num = odd_part(q.numer());
    let num = if q.is_negative() { -num } else { num };
    Rational::new(num, odd_part(q.denom()))
}

pub fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Parse `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || domain!("cannot parse rational '{s}'");
    match s.split_once('/') {
        None => Ok(from_bigint(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// `a/b` or `a` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Modular inverse of `a` modulo `m` (gcd must be 1).
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Squarefree part of a nonzero integer, sign included, by trial division.
/// Returns `None` when |n| is too large to factor by trial division quickly.
pub fn squarefree_part(n: &BigInt) -> Option<BigInt> {
    use num_traits::ToPrimitive;
    let sign = if n.is_negative() { -1i64 } else { 1 };
    let mut m = n.abs().to_u128()?;
    if m == 0 || m > (1u128 << 80) {
        return None;
    }
    let mut out: u128 = 1;
    let mut d: u128 = 2;
    while d * d <= m {
        let mut e = 0;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= d;
        }
        d += if d == 2 { 1 } else { 2 };
        if d > 1 << 24 {
            return None;
        }
    }
    out *= m;
    Some(BigInt::from(out) * sign)
}
