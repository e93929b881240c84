use crate::error::{domain, Result};
use crate::exact::rational::is_prime;

/// Point `(c : d)` of the projective line over `Z/N`, `N` prime, in
/// normal form `(c : 1)` or `(1 : 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Element {
    pub c: u64,
    pub d: u64,
}

/// Enumeration of `P^1(Z/N)`: index `c` is `(c : 1)` and index `N` is `(1 : 0)`.
#[derive(Clone, Debug)]
pub struct P1List {
    n: u64,
    inv: Vec<u64>,
}

impl P1List {
    pub fn new(n: u64) -> Result<Self> {
        if !is_prime(n) {
            return Err(domain!("level {n} is not prime"));
        }
        let mut inv = vec![0u64; n as usize];
        for a in 1..n {
            if inv[a as usize] == 0 {
                let b = crate::exact::rational::inv_mod(a as i64, n as i64).unwrap() as u64;
                inv[a as usize] = b;
                inv[b as usize] = a;
            }
        }
        Ok(Self { n, inv })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the class of `(c : d)`; the pair must not vanish mod N.
    #[inline]
    pub fn index(&self, c: i64, d: i64) -> usize {
        let n = self.n as i64;
        let c = c.rem_euclid(n) as u64;
        let d = d.rem_euclid(n) as u64;
        if d == 0 {
            debug_assert!(c != 0, "(0:0) is not a point of P^1");
            return self.n as usize;
        }
        ((c as u128 * self.inv[d as usize] as u128) % self.n as u128) as usize
    }

    pub fn element(&self, i: usize) -> P1Element {
        if i == self.n as usize {
            P1Element { c: 1, d: 0 }
        } else {
            P1Element { c: i as u64, d: 1 }
        }
    }

    pub fn normalize(&self, c: i64, d: i64) -> P1Element {
        self.element(self.index(c, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_points_at_eleven() {
        let p = P1List::new(11).unwrap();
        assert_eq!(p.len(), 12);
        let mut seen = std::collections::BTreeSet::new();
        for c in 0..11 {
            for d in 0..11 {
                if c == 0 && d == 0 {
                    continue;
                }
                seen.insert(p.index(c, d));
            }
        }
        assert_eq!(seen.len(), 12);
    }

    #[test]
    fn normalization_is_canonical() {
        let p = P1List::new(7).unwrap();
        // (2:4) = (1:2) = (4:1) since 2^-1 = 4 mod 7
        assert_eq!(p.normalize(2, 4), P1Element { c: 4, d: 1 });
        assert_eq!(p.normalize(3, 0), P1Element { c: 1, d: 0 });
        assert_eq!(p.normalize(-3, 7), p.normalize(1, 0));
        assert!(P1List::new(12).is_err());
    }
}
