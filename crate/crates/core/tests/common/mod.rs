//! Independent oracles shared by the integration tests. Nothing here calls
//! into the modular symbols engine.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Weierstrass coefficients `[a1, a2, a3, a4, a6]`.
pub type Curve = [i64; 5];

pub const CURVE_11A1: Curve = [0, -1, 1, -10, -20];
pub const CURVE_67A1: Curve = [0, 1, 1, -12, -21];

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Number of projective points over `F_p`, by brute force.
pub fn point_count(e: &Curve, p: u64) -> u64 {
    let p = p as i64;
    let [a1, a2, a3, a4, a6] = e.map(|c| c.rem_euclid(p));
    let mut n = 1;
    for x in 0..p {
        for y in 0..p {
            let lhs = (y * y + a1 * x * y + a3 * y).rem_euclid(p);
            let rhs = (x * x % p * x + a2 * x % p * x + a4 * x + a6).rem_euclid(p);
            if lhs == rhs {
                n += 1;
            }
        }
    }
    n
}

/// `p + 1 - #E(F_p)`; this also gives the right value at multiplicative primes.
pub fn trace_of_frobenius(e: &Curve, p: u64) -> i64 {
    p as i64 + 1 - point_count(e, p) as i64
}

/// `a_n` for `n < limit`, from Frobenius traces.
pub fn dirichlet_coefficients(e: &Curve, level: u64, limit: usize) -> Vec<i64> {
    let mut a = vec![0i64; limit];
    if limit > 1 {
        a[1] = 1;
    }
    for p in 2..limit as u64 {
        if !is_prime(p) {
            continue;
        }
        let ap = trace_of_frobenius(e, p);
        // prime powers
        let mut pk = p as usize;
        let mut prev = 1i64;
        let mut cur = ap;
        while pk < limit {
            a[pk] = cur;
            let next = if level % p == 0 { ap * cur } else { ap * cur - p as i64 * prev };
            prev = cur;
            cur = next;
            pk = match pk.checked_mul(p as usize) {
                Some(v) => v,
                None => break,
            };
        }
    }
    // multiplicative extension
    for n in 2..limit {
        let mut m = n;
        let mut p = 2;
        while p * p <= m && m % p != 0 {
            p += 1;
        }
        if p * p > m {
            continue;
        }
        let mut q = 1;
        while m % p == 0 {
            m /= p;
            q *= p;
        }
        if m > 1 {
            a[n] = a[q] * a[m];
        }
    }
    a
}

pub fn legendre(a: i64, p: u64) -> i64 {
    let p = p as i64;
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut r = 1i64;
    let mut b = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// `L(E,1)` for even analytic sign.
pub fn l_value(a: &[i64], level: u64) -> f64 {
    let t = 2.0 * PI / (level as f64).sqrt();
    2.0 * (1..a.len()).map(|n| a[n] as f64 / n as f64 * (-t * n as f64).exp()).sum::<f64>()
}

/// `L(E,chi,1)` for the quadratic character of conductor `level`, assuming
/// the twist has level `level^2` and even sign.
pub fn twisted_l_value(a: &[i64], level: u64) -> f64 {
    let t = 2.0 * PI / level as f64;
    2.0 * (1..a.len())
        .map(|n| legendre(n as i64, level) as f64 * a[n] as f64 / n as f64 * (-t * n as f64).exp())
        .sum::<f64>()
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let (x, y) = ((a + b) / 2.0, (a * b).sqrt());
        a = x;
        b = y;
        if (a - b).abs() < 1e-16 * a {
            break;
        }
    }
    a
}

/// Real and imaginary periods (each up to a factor of 2) for a curve with
/// negative discriminant, by the AGM.
pub fn periods_negative_discriminant(e: &Curve) -> (f64, f64) {
    let [a1, a2, a3, a4, a6] = e.map(|c| c as f64);
    let b2 = a1 * a1 + 4.0 * a2;
    let b4 = 2.0 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4.0 * a6;
    let f = |x: f64| 4.0 * x * x * x + b2 * x * x + 2.0 * b4 * x + b6;
    // the unique real root of the cubic, by bisection
    let (mut lo, mut hi) = (-1e4, 1e4);
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let e1 = (lo + hi) / 2.0;
    let a = 3.0 * e1 + b2 / 4.0;
    let b = (3.0 * e1 * e1 + b2 / 2.0 * e1 + b4 / 2.0).sqrt();
    let real = 2.0 * PI / agm(2.0 * b.sqrt(), (2.0 * b + a).sqrt());
    let imag = PI / agm(2.0 * b.sqrt(), (2.0 * b - a).sqrt());
    (real, imag)
}

/// Closest rational with denominator at most `max_den`, if within `tol`.
pub fn recognize(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    (1..=max_den).find_map(|d| {
        let n = (x * d as f64).round();
        ((x * d as f64 - n).abs() < tol * d as f64).then_some((n as i64, d))
    })
}

pub fn odd_part(mut n: i64) -> i64 {
    n = n.abs();
    if n == 0 {
        return 0;
    }
    while n % 2 == 0 {
        n /= 2;
    }
    n
}

/// Class number of discriminant `-n`, counting reduced triples `(a,b,c)`.
pub fn class_number_oracle(n: i64) -> i64 {
    let mut h = 0;
    for a in (1..=n).take_while(|a| 3 * a * a <= n) {
        for c in a..=n {
            for b in -a + 1..=a {
                if b * b - 4 * a * c != -n {
                    continue;
                }
                if (a == c || b.abs() == a) && b < 0 {
                    continue;
                }
                h += 1;
            }
        }
    }
    h
}
