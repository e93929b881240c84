//! Integer row-style Hermite normal form, used for the integral structure
//! on modular symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{lcm_of_denominators, Rational};

/// Row HNF `H = U A` with `U` unimodular. Returns `(H, U, rank)`; the first
/// `rank` rows of `H` are nonzero and the remaining rows of `U` form a
/// Z-basis of the left kernel of `A`.
pub fn hnf_with_transform(a: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, usize) {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // fold every lower row into row r with gcd steps
        for i in r + 1..m {
            if h[i][c].is_zero() {
                continue;
            }
            if h[r][c].is_zero() {
                h.swap(r, i);
                u.swap(r, i);
                continue;
            }
            let (x, y) = (h[r][c].clone(), h[i][c].clone());
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (xa, ya) = (&x / &g, &y / &g);
            combine(&mut h, r, i, &s, &t, &ya, &xa);
            combine(&mut u, r, i, &s, &t, &ya, &xa);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate(&mut h[r]);
            negate(&mut u[r]);
        }
        let piv = h[r][c].clone();
        for i in 0..r {
            let q = h[i][c].div_floor(&piv);
            if !q.is_zero() {
                sub_multiple(&mut h, i, r, &q);
                sub_multiple(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (h, u, r)
}

// rows (r, i) <- (s*row_r + t*row_i, -ya*row_r + xa*row_i)
fn combine(
    m: &mut [Vec<BigInt>],
    r: usize,
    i: usize,
    s: &BigInt,
    t: &BigInt,
    ya: &BigInt,
    xa: &BigInt,
) {
    for j in 0..m[r].len() {
        let a = m[r][j].clone();
        let b = m[i][j].clone();
        m[r][j] = s * &a + t * &b;
        m[i][j] = xa * &b - ya * &a;
    }
}

fn negate(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -x.clone();
    }
}

fn sub_multiple(m: &mut [Vec<BigInt>], i: usize, r: usize, q: &BigInt) {
    for j in 0..m[i].len() {
        let d = q * &m[r][j];
        m[i][j] -= d;
    }
}

/// Z-basis (in HNF) of the lattice spanned by rational vectors.
pub fn lattice_basis(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let d = lcm_of_denominators(vectors.iter().flatten());
    let ints: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    let (h, _, rank) = hnf_with_transform(&ints);
    h.into_iter()
        .take(rank)
        .map(|row| row.into_iter().map(|x| Rational::new(x, d.clone())).collect())
        .collect()
}

/// Z-basis of `{ sum c_i b_i : c in Z^k, sum c_i images_i = 0 }` where
/// `images_i` are rational vectors attached to the basis vectors `b_i`.
pub fn integral_kernel(basis: &[Vec<Rational>], images: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let d = lcm_of_denominators(images.iter().flatten());
    let ints: Vec<Vec<BigInt>> = images
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    let (_, u, rank) = hnf_with_transform(&ints);
    let dim = basis.first().map_or(0, |b| b.len());
    u.into_iter()
        .skip(rank)
        .map(|coef| {
            let mut v = vec![Rational::zero(); dim];
            for (c, b) in coef.iter().zip(basis) {
                if c.is_zero() {
                    continue;
                }
                let c = Rational::from_integer(c.clone());
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &c * y;
                }
            }
            v
        })
        .collect()
}

/// Positive generator of the fractional ideal of Z generated by rationals.
pub fn rational_gcd<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let vals: Vec<&Rational> = values.into_iter().filter(|v| !v.is_zero()).collect();
    if vals.is_empty() {
        return Rational::zero();
    }
    let d = lcm_of_denominators(vals.iter().copied());
    let g = vals.iter().fold(BigInt::zero(), |g, v| {
        g.gcd(&(*v * Rational::from_integer(d.clone())).to_integer())
    });
    Rational::new(g, d)
}
