//! Real root isolation by Sturm sequences, and interval evaluation of
//! number-field elements at real embeddings.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::certified::Interval;
use super::numfield::NFElem;
use super::poly::UniPoly;
use super::rational::{int, Rational};
use crate::error::{domain, internal, Result};

fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_changes(seq: &[UniPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn cauchy_bound(p: &UniPoly) -> Rational {
    let lc = p.leading().abs();
    let m = p.coeffs().iter().map(|c| c.abs() / &lc).max().unwrap_or_else(Rational::zero);
    m + Rational::one()
}

/// Disjoint isolating intervals `(a, b]` for the real roots of a
/// squarefree polynomial, in increasing order.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<Interval>> {
    let deg = p.degree().ok_or_else(|| domain!("zero polynomial has no isolated roots"))?;
    if deg == 0 {
        return Ok(vec![]);
    }
    if UniPoly::gcd(p, &p.derivative()).degree() != Some(0) {
        return Err(domain!("root isolation needs a squarefree polynomial"));
    }
    let seq = sturm_sequence(p);
    let b = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-&b, b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
        match n {
            0 => {}
            1 => out.push(Interval::new(lo, hi)),
            _ => {
                let mid = (&lo + &hi) / int(2);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo().cmp(b.lo()));
    Ok(out)
}

/// Halve an isolating interval `(lo, hi]` of a root of `p`, keeping the root.
fn bisect(p: &UniPoly, iv: &Interval) -> Interval {
    let mid = iv.midpoint();
    let fm = p.eval(&mid);
    if fm.is_zero() {
        return Interval::point(mid);
    }
    let fh = p.eval(iv.hi());
    if fh.is_zero() {
        // root sits at hi; shrink toward it
        return Interval::new(mid, iv.hi().clone());
    }
    if fm.is_positive() == fh.is_positive() {
        Interval::new(iv.lo().clone(), mid)
    } else {
        Interval::new(mid, iv.hi().clone())
    }
}

/// A real embedding of `Q[x]/(g)`: the root of `g` inside an isolating
/// interval.
#[derive(Clone, Debug)]
pub struct RealEmbedding {
    minpoly: UniPoly,
    root: Interval,
}

impl RealEmbedding {
    /// All real embeddings of the field defined by an irreducible `g`,
    /// ordered by increasing root.
    pub fn all(minpoly: &UniPoly) -> Result<Vec<RealEmbedding>> {
        if minpoly.degree() == Some(1) {
            let r = -(minpoly.coeff(0) / minpoly.coeff(1));
            return Ok(vec![RealEmbedding { minpoly: minpoly.clone(), root: Interval::point(r) }]);
        }
        Ok(isolate_real_roots(minpoly)?
            .into_iter()
            .map(|root| RealEmbedding { minpoly: minpoly.clone(), root })
            .collect())
    }

    pub fn root(&self) -> &Interval {
        &self.root
    }

    /// Shrink the root enclosure below width `2^-bits`.
    pub fn refine(&mut self, bits: u32) {
        let tol = Rational::new(1.into(), num_bigint::BigInt::one() << bits as usize);
        while self.root.width() > tol {
            self.root = bisect(&self.minpoly, &self.root);
        }
    }

    /// Enclosure of the image of `x` under this embedding.
    pub fn eval(&self, x: &NFElem) -> Interval {
        let mut acc = Interval::point(Rational::zero());
        for c in x.coords().iter().rev() {
            acc = acc.mul(&self.root).add(&Interval::point(c.clone()));
        }
        acc
    }

    /// Enclosure of `x` refined until its width is below `2^-bits`.
    pub fn eval_to(&mut self, x: &NFElem, bits: u32) -> Interval {
        let tol = Rational::new(1.into(), num_bigint::BigInt::one() << bits as usize);
        let mut b = bits;
        loop {
            self.refine(b);
            let v = self.eval(x);
            if v.width() <= tol {
                return v;
            }
            b += 16;
        }
    }

    /// Exact sign of `x` under this embedding.
    pub fn sign(&mut self, x: &NFElem) -> Result<Ordering> {
        if x.is_zero() {
            return Ok(Ordering::Equal);
        }
        let mut bits = 32;
        while bits <= 8192 {
            self.refine(bits);
            let v = self.eval(x);
            if v.lo().is_positive() {
                return Ok(Ordering::Greater);
            }
            if v.hi().is_negative() {
                return Ok(Ordering::Less);
            }
            bits *= 2;
        }
        Err(internal!("could not separate a nonzero field element from 0"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::numfield::NumberField;
    use crate::exact::rational::frac;

    #[test]
    fn golden_roots() {
        let p = UniPoly::from_i64(&[-1, -1, 1]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi() <= roots[1].lo());
    }

    #[test]
    fn no_real_roots() {
        let p = UniPoly::from_i64(&[1, 0, 1]);
        assert!(isolate_real_roots(&p).unwrap().is_empty());
    }

    #[test]
    fn clustered_roots() {
        // (x - 1/100)(x - 2/100)(x + 3)
        let p = &(&UniPoly::new(vec![frac(-1, 100), int(1)]) * &UniPoly::new(vec![frac(-2, 100), int(1)]))
            * &UniPoly::from_i64(&[3, 1]);
        let r = isolate_real_roots(&p).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r[1].contains(&frac(1, 100)) || r[1].hi() == &frac(1, 100));
    }

    #[test]
    fn embedding_signs() {
        let g = UniPoly::from_i64(&[-1, -1, 1]);
        let k = NumberField::new(g.clone()).unwrap();
        let beta = k.gen();
        let mut embs = RealEmbedding::all(&g).unwrap();
        // (1-sqrt5)/2 < 0 < (1+sqrt5)/2
        assert_eq!(embs[0].sign(&beta).unwrap(), Ordering::Less);
        assert_eq!(embs[1].sign(&beta).unwrap(), Ordering::Greater);
        // (2/55)(7 - sqrt5) and its conjugate
        let x = NFElem::new(&k, vec![frac(16, 55), frac(-4, 55)]).unwrap();
        for e in embs.iter_mut() {
            assert_eq!(e.sign(&x).unwrap(), Ordering::Greater);
        }
        let v = embs[1].eval_to(&beta, 100);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let lo: f64 = crate::exact::certified::decimal(v.lo(), 20, false).parse().unwrap();
        assert!((lo - phi).abs() < 1e-12);
    }
}
