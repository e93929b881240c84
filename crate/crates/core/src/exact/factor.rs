//! Factorization of univariate polynomials over the rationals.
//!
//! Squarefree decomposition first, then for each squarefree part:
//! factor modulo a small prime of good reduction (distinct-degree plus
//! Cantor-Zassenhaus), Hensel-lift the modular factorization, and
//! recombine subsets of the lifted factors by trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::UniPoly;
use super::rational::{is_prime, Rational};
use crate::error::{domain, Result};

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// by coefficient vector (constant term first). The leading coefficient of
/// `f` is the remaining unit.
pub fn factor_poly(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if f.is_zero() {
        return Err(domain!("cannot factor the zero polynomial"));
    }
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for g in factor_squarefree(&part) {
            out.push((g, mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| poly_order(a, b));
    Ok(out)
}

/// Deterministic total order on polynomials: degree, then coefficients from
/// the constant term upward.
pub fn poly_order(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

pub fn is_irreducible(f: &UniPoly) -> bool {
    match factor_poly(f) {
        Ok(fs) => fs.len() == 1 && fs[0].1 == 1,
        Err(_) => false,
    }
}

fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return vec![f.monic()];
    }
    let big_f = f.primitive_integer();
    // x is a factor whenever the constant term vanishes; pull it out so the
    // modular machinery only sees polynomials with f(0) != 0.
    if big_f[0].is_zero() {
        let rest = UniPoly::from_integers(&big_f[1..]);
        let mut v = vec![UniPoly::x()];
        v.extend(factor_squarefree(&rest));
        return v;
    }

    let (p, modular) = match choose_prime(&big_f) {
        Some(x) => x,
        None => return vec![f.monic()],
    };
    if modular.len() == 1 {
        return vec![f.monic()];
    }

    let lc = big_f.last().unwrap().clone();
    let max_coef = big_f.iter().map(|c| c.abs()).max().unwrap();
    // Mignotte-style coefficient bound for any factor, scaled by lc.
    let bound: BigInt = (BigInt::one() << n) * BigInt::from(n + 1) * &max_coef * &lc.abs();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(&big_f, &modular, p, k);
    recombine(&big_f, lifted, &modulus)
        .into_iter()
        .map(|g| UniPoly::from_integers(&g).monic())
        .collect()
}

/// Try a few primes of good reduction and keep the one giving the fewest
/// modular factors.
fn choose_prime(f: &[BigInt]) -> Option<(u64, Vec<Vec<u64>>)> {
    let lc = f.last().unwrap();
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 4 && p < 2000 {
        if is_prime(p) && !(lc % BigInt::from(p)).is_zero() {
            let fp = reduce(f, p);
            let d = fp_derivative(&fp, p);
            if fp_gcd(&fp, &d, p).len() == 1 {
                tried += 1;
                let facs = factor_mod_p(&fp, p);
                let better = best.as_ref().is_none_or(|(_, b)| facs.len() < b.len());
                if better {
                    best = Some((p, facs));
                }
                if best.as_ref().unwrap().1.len() == 1 {
                    break;
                }
            }
        }
        p += 2;
    }
    best
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x]; vectors lowest degree first, trimmed.

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn reduce(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn inv_p(a: u64, p: u64) -> u64 {
    pow_p(a, p - 2, p)
}

fn pow_p(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn fp_add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let inv = inv_p(b[db], p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        q[k] = c;
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * bc % p) % p;
            }
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    let inv = inv_p(*a.last().unwrap(), p);
    a.iter().map(|&c| c * inv % p).collect()
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        fp_monic(&a, p)
    }
}

/// `s, t` with `s a + t b = 1` for coprime `a, b`.
fn fp_xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], vec![]);
    let (mut t0, mut t1): (Fp, Fp) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_p(r0[0], p);
    let sc = |v: &Fp| trim(v.iter().map(|&c| c * inv % p).collect());
    (sc(&s0), sc(&t0))
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as u64 % p) % p)
            .collect(),
    )
}

fn fp_powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let base = fp_divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        acc = fp_divrem(&fp_mul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = fp_divrem(&fp_mul(&acc, &base, p), m, p).1;
        }
    }
    acc
}

/// Monic irreducible factors of a squarefree polynomial over F_p, p odd.
fn factor_mod_p(f: &Fp, p: u64) -> Vec<Vec<u64>> {
    let f = fp_monic(f, p);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f, p) {
        equal_degree(&g, d, p, &mut rng, &mut out);
    }
    out.sort();
    out
}

fn distinct_degree(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut res = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    let pe = BigUint::from(p);
    while f.len() - 1 >= 2 * (d + 1) {
        d += 1;
        h = fp_powmod(&h, &pe, &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = fp_divrem(&f, &g, p).0;
            h = fp_divrem(&h, &f, p).1;
            res.push((g, d));
        }
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        res.push((f, deg));
    }
    res
}

fn equal_degree(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.clone());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &e, f, p), &vec![1], p);
        let g = fp_gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = fp_divrem(f, &g, p).0;
            equal_degree(&g, d, p, rng, out);
            equal_degree(&fp_monic(&h, p), d, p, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting over Z/p^k.

fn z_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn z_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    a.iter().map(|c| c.mod_floor(m)).collect()
}

fn to_z(a: &Fp) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift `f ≡ g h (mod p)` (g monic, lc(h) ≡ lc(f)) to modulus p^k.
/// Returns (G, H) with G monic and lc(H) = lc(f) exactly.
fn lift_pair(f: &[BigInt], g: &Fp, h: &Fp, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = fp_xgcd(g, h, p);
    let pb = BigInt::from(p);
    let lc = f.last().unwrap().clone();
    let mut big_g = to_z(g);
    let mut big_h = to_z(h);
    *big_h.last_mut().unwrap() = lc.clone();
    let mut pj = pb.clone();
    for _ in 1..k {
        let prod = z_mul(&big_g, &big_h);
        let n = f.len().max(prod.len());
        let diff: Vec<BigInt> = (0..n)
            .map(|i| {
                f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default()
            })
            .collect();
        let e: Fp = trim(
            diff.iter()
                .map(|c| {
                    debug_assert!((c % &pj).is_zero());
                    (c / &pj).mod_floor(&pb).to_u64().unwrap()
                })
                .collect(),
        );
        if !e.is_empty() {
            let (q, r) = fp_divrem(&fp_mul(&s, &e, p), h, p);
            let dg = fp_add(&fp_mul(&t, &e, p), &fp_mul(&q, g, p), p);
            for (i, c) in dg.iter().enumerate() {
                big_g[i] += BigInt::from(*c) * &pj;
            }
            for (i, c) in r.iter().enumerate() {
                big_h[i] += BigInt::from(*c) * &pj;
            }
        }
        pj *= &pb;
    }
    (big_g, big_h)
}

/// Lift a full modular factorization of the primitive `f` to monic factors
/// modulo p^k with `f ≡ lc(f) * prod G_i`.
fn hensel_lift(f: &[BigInt], factors: &[Fp], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let modulus = BigInt::from(p).pow(k);
    let lc_p = f.last().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let mut cur = f.to_vec();
    let mut out = Vec::new();
    for i in 0..factors.len() - 1 {
        let rest = factors[i + 1..]
            .iter()
            .fold(vec![lc_p], |acc, g| fp_mul(&acc, g, p));
        let (g_lift, h_lift) = lift_pair(&cur, &factors[i], &rest, p, k);
        out.push(z_mod(&g_lift, &modulus));
        cur = h_lift;
    }
    // last factor: normalize the remaining cofactor to be monic mod p^k
    let lc = cur.last().unwrap().clone();
    let inv = mod_inverse(&lc, &modulus);
    out.push(z_mod(&cur.iter().map(|c| c * &inv).collect::<Vec<_>>(), &modulus));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

fn primitive(a: Vec<BigInt>) -> Vec<BigInt> {
    let g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let mut v: Vec<BigInt> = a.into_iter().map(|c| c / &g).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        v = v.into_iter().map(|c| -c).collect();
    }
    v
}

fn recombine(f: &[BigInt], mut lifted: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut cur = UniPoly::from_integers(f);
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let lc = cur.primitive_integer().last().unwrap().clone();
        for subset in combinations(lifted.len(), s) {
            let prod = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| z_mod(&z_mul(&acc, &lifted[i]), m));
            let cand = primitive(symmetric(&prod, m));
            let cand_poly = UniPoly::from_integers(&cand);
            if let Some(q) = cur.exact_div(&cand_poly) {
                found.push(cand);
                cur = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        s += 1;
    }
    if cur.degree().unwrap_or(0) > 0 {
        found.push(cur.primitive_integer());
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Reassemble `unit * prod g^e` from a factor list.
pub fn product_of_factors(factors: &[(UniPoly, usize)], unit: &Rational) -> UniPoly {
    factors.iter().fold(UniPoly::constant(unit.clone()), |acc, (g, e)| {
        &acc * &g.pow(*e as u32)
    })
}
