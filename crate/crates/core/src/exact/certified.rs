//! Rational interval enclosures of the few transcendental constants the
//! bound checks need (pi, logarithms, square roots).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use crate::error::{domain, Error, Result};

/// Working precision for every certified comparison.
pub const DEFAULT_BITS: u32 = 128;
/// Comparisons closer than `2^-GUARD_BITS` are refused.
pub const GUARD_BITS: u32 = 64;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

fn pow2(bits: u32) -> Rational {
    Rational::from_integer(BigInt::one() << bits as usize)
}

fn floor_dyadic(x: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    Rational::new((x * &s).floor().to_integer(), s.to_integer())
}

fn ceil_dyadic(x: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    Rational::new((x * &s).ceil().to_integer(), s.to_integer())
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    /// Widen to dyadic endpoints with `bits` fractional bits.
    pub fn round_out(&self, bits: u32) -> Self {
        Self {
            lo: floor_dyadic(&self.lo, bits),
            hi: ceil_dyadic(&self.hi, bits),
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, q: &Rational) -> Interval {
        self.mul(&Interval::point(q.clone()))
    }

    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(domain!("reciprocal of an interval containing zero"));
        }
        Ok(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Interval) -> Result<Interval> {
        Ok(self.mul(&o.recip()?))
    }

    /// Square root of a nonnegative interval, outward to `bits`.
    pub fn sqrt(&self, bits: u32) -> Result<Interval> {
        if self.lo.is_negative() {
            return Err(domain!("square root of a possibly negative interval"));
        }
        Ok(Interval {
            lo: sqrt_below(&self.lo, bits),
            hi: sqrt_above(&self.hi, bits),
        })
    }

    /// Certified strict comparison with a 2^-GUARD_BITS margin.
    pub fn certified_cmp(&self, o: &Interval) -> Result<Ordering> {
        let guard = pow2(GUARD_BITS).recip();
        if &self.hi + &guard < o.lo {
            Ok(Ordering::Less)
        } else if &o.hi + &guard < self.lo {
            Ok(Ordering::Greater)
        } else {
            Err(Error::GuardBand(format!(
                "[{}, {}] vs [{}, {}]",
                decimal(&self.lo, 20, false),
                decimal(&self.hi, 20, true),
                decimal(&o.lo, 20, false),
                decimal(&o.hi, 20, true)
            )))
        }
    }
}

fn sqrt_below(x: &Rational, bits: u32) -> Rational {
    let scaled = (x * pow2(2 * bits)).floor().to_integer();
    Rational::new(scaled.sqrt(), pow2(bits).to_integer())
}

fn sqrt_above(x: &Rational, bits: u32) -> Rational {
    let scaled = (x * pow2(2 * bits)).ceil().to_integer();
    let s = scaled.sqrt();
    let s = if &s * &s == scaled { s } else { s + 1 };
    Rational::new(s, pow2(bits).to_integer())
}

// arctan(1/k) by its alternating series, enclosed by consecutive partial sums
fn atan_inv(k: u64, bits: u32) -> Interval {
    let k = int(k as i64);
    let k2 = &k * &k;
    let tol = pow2(bits + 4).recip();
    let mut pow = k.recip();
    let mut sum = Rational::zero();
    let mut n: i64 = 0;
    loop {
        let term = &pow / int(2 * n + 1);
        if n % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        pow = &pow / &k2;
        let next = &pow / int(2 * n + 3);
        if next < tol {
            let (lo, hi) = (&sum - &next, &sum + &next);
            return Interval::new(lo, hi).round_out(bits + 4);
        }
        n += 1;
    }
}

/// Enclosure of pi via Machin's formula.
pub fn pi(bits: u32) -> Interval {
    let a = atan_inv(5, bits + 8).scale(&int(16));
    let b = atan_inv(239, bits + 8).scale(&int(4));
    a.sub(&b).round_out(bits)
}

// 2 atanh(z) = ln((1+z)/(1-z)) for 0 <= z <= 1/3
fn two_atanh(z: &Rational, bits: u32) -> Interval {
    let tol = pow2(bits + 4).recip();
    let z2 = z * z;
    let mut pow = z.clone();
    let mut sum = Rational::zero();
    let mut n: i64 = 0;
    loop {
        sum += &pow / int(2 * n + 1);
        pow = &pow * &z2;
        // tail <= z^(2n+3) / ((2n+3)(1-z^2))
        let tail = &pow / int(2 * n + 3) / (Rational::one() - &z2);
        if tail < tol || z.is_zero() {
            let lo = &sum * int(2);
            let hi = (&sum + &tail) * int(2);
            return Interval::new(lo, hi).round_out(bits + 2);
        }
        n += 1;
    }
}

pub fn ln2(bits: u32) -> Interval {
    two_atanh(&Rational::new(1.into(), 3.into()), bits + 4).round_out(bits)
}

/// Enclosure of ln(x) for positive rational x.
pub fn ln(x: &Rational, bits: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(domain!("logarithm of a nonpositive number"));
    }
    // x = 2^k r with 1 <= r < 2
    let mut k: i64 = 0;
    let mut r = x.clone();
    let two = int(2);
    while r >= two {
        r /= &two;
        k += 1;
    }
    while r < Rational::one() {
        r *= &two;
        k -= 1;
    }
    let extra = 8 + (64 - k.unsigned_abs().leading_zeros());
    let z = (&r - Rational::one()) / (&r + Rational::one());
    let lr = two_atanh(&z, bits + extra);
    let l2 = ln2(bits + extra).scale(&int(k));
    Ok(lr.add(&l2).round_out(bits))
}

/// Decimal rendering of a rational, rounded down or up to `digits` places.
pub fn decimal(x: &Rational, digits: u32, round_up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let y = x * Rational::from_integer(scale.clone());
    let n = if round_up { y.ceil() } else { y.floor() }.to_integer();
    let neg = n.is_negative();
    let a = n.abs();
    let ip = &a / &scale;
    let fp = &a % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{ip}");
    }
    format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = digits as usize)
}

/// Which side of the true value a reported decimal lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Upper,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
        })
    }
}

/// A real number known only through a rational enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedReal {
    pub enclosure: Interval,
    pub precision_bits: u32,
}

impl CertifiedReal {
    pub fn new(enclosure: Interval, precision_bits: u32) -> Self {
        Self { enclosure, precision_bits }
    }

    pub fn lower(&self) -> &Rational {
        self.enclosure.lo()
    }

    pub fn upper(&self) -> &Rational {
        self.enclosure.hi()
    }

    /// Decimal that is a guaranteed bound on the side `dir`.
    pub fn decimal(&self, digits: u32, dir: Direction) -> String {
        match dir {
            Direction::Lower => decimal(self.lower(), digits, false),
            Direction::Upper => decimal(self.upper(), digits, true),
        }
    }

    /// Nearest double, for display only.
    pub fn approx_f64(&self) -> f64 {
        let m = self.enclosure.midpoint();
        let s = decimal(&m, 17, false);
        s.parse().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    fn close(i: &Interval, x: f64) {
        let lo: f64 = decimal(i.lo(), 30, false).parse().unwrap();
        let hi: f64 = decimal(i.hi(), 30, true).parse().unwrap();
        let slack = 4.0 * f64::EPSILON * x.abs().max(1.0);
        assert!(lo - slack <= x && x <= hi + slack, "{x} not in [{lo}, {hi}]");
        assert!(i.width() < pow2(100).recip());
    }

    #[test]
    fn pi_enclosure() {
        let p = pi(128);
        close(&p, std::f64::consts::PI);
        assert!(p.lo() < &frac(314159265358979324, 100000000000000000));
        assert!(p.hi() > &frac(314159265358979323, 100000000000000000));
    }

    #[test]
    fn logs() {
        close(&ln2(128), std::f64::consts::LN_2);
        close(&ln(&int(11), 128).unwrap(), 11f64.ln());
        close(&ln(&frac(1, 7), 128).unwrap(), (1f64 / 7.0).ln());
        close(&ln(&int(1), 128).unwrap(), 0.0);
        assert!(ln(&int(0), 64).is_err());
    }

    #[test]
    fn square_roots() {
        let r = Interval::point(int(2)).sqrt(128).unwrap();
        close(&r, std::f64::consts::SQRT_2);
        let e = Interval::point(int(49)).sqrt(64).unwrap();
        assert_eq!(e, Interval::point(int(7)));
    }

    #[test]
    fn guard_band_refuses_ties() {
        let a = Interval::point(int(1));
        assert!(matches!(a.certified_cmp(&a), Err(Error::GuardBand(_))));
        let b = Interval::point(int(2));
        assert_eq!(a.certified_cmp(&b).unwrap(), Ordering::Less);
        assert_eq!(b.certified_cmp(&a).unwrap(), Ordering::Greater);
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal(&frac(2, 3), 3, false), "0.666");
        assert_eq!(decimal(&frac(2, 3), 3, true), "0.667");
        assert_eq!(decimal(&frac(-2, 3), 3, false), "-0.667");
        assert_eq!(decimal(&int(5), 0, true), "5");
    }
}
