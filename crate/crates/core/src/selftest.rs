//! Invariant checks over a range of levels, used by the `selftest` command.

use std::collections::BTreeMap;

use crate::dirichlet::{l_value_at_zero, quadratic_character};
use crate::error::Result;
use crate::exact::rational::{frac, is_prime, primes_up_to};
use crate::exact::QMatrix;
use crate::modsym::{build_space, genus_x0_prime, newform_decomposition, Sign};
use crate::rankin::{decompose, decompose_with, key_equality_check, verify_bounds};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub level: u64,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelftestReport {
    pub checks: Vec<CheckOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &str, level: u64, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckOutcome { name: name.to_string(), level, passed, detail: detail.into() });
    }

    fn push_result(&mut self, name: &str, level: u64, r: Result<(bool, String)>) {
        match r {
            Ok((ok, d)) => self.push(name, level, ok, d),
            Err(e) => self.push(name, level, false, format!("error: {e}")),
        }
    }
}

/// Class number of discriminant `-n` by counting reduced forms.
pub fn class_number(n: u64) -> u64 {
    let d = n as i64;
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= d {
        for b in -a + 1..=a {
            if (b * b + d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + d) / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    h
}

fn hecke_checks(n: u64, rep: &mut SelftestReport) {
    let r = (|| -> Result<(bool, String)> {
        let s = build_space(n, Sign::Zero)?;
        let star = s.star_involution();
        let dim = s.dimension();
        let mut ok = star.mul(&star) == QMatrix::identity(dim);
        let ls: Vec<u64> = [2u64, 3, 5, 7, 11, 13].into_iter().filter(|&l| l != n).collect();
        let mats = ls.iter().map(|&l| s.hecke_ambient(l)).collect::<Result<Vec<_>>>()?;
        for (i, a) in mats.iter().enumerate() {
            ok &= a.mul(&star) == star.mul(a);
            for b in &mats[i + 1..] {
                ok &= a.mul(b) == b.mul(a);
            }
        }
        Ok((ok, format!("star and T_l for l in {ls:?}")))
    })();
    rep.push_result("hecke-commute-star", n, r);

    let r = (|| -> Result<(bool, String)> {
        let d = build_space(n, Sign::Plus)?.cuspidal_dimension() as u64;
        let g = genus_x0_prime(n);
        Ok((d == g, format!("plus cuspidal dimension {d}, genus {g}")))
    })();
    rep.push_result("dimension-genus", n, r);
}

fn rankin_checks(n: u64, rep: &mut SelftestReport) {
    let r = (|| -> Result<(bool, String)> {
        let l = l_value_at_zero(&quadratic_character(n)?)?;
        let w = if n == 3 { 6 } else { 2 };
        let expect = frac(2 * class_number(n) as i64, w);
        Ok((l == expect, format!("L(0,chi) = {l}, 2h/w = {expect}")))
    })();
    rep.push_result("class-number", n, r);

    let d = match decompose(n) {
        Ok(d) => d,
        Err(e) => {
            rep.push("decomposition", n, false, format!("error: {e}"));
            return;
        }
    };
    rep.push(
        "decomposition",
        n,
        true,
        format!("residual zero through q^{}", d.residual_checked_to),
    );
    let k = key_equality_check(&d);
    rep.push("first-coefficient", n, k.passed(), format!("difference {}", k.difference));
    match verify_bounds(&d, &BTreeMap::new()) {
        Ok(b) => {
            rep.push("nonnegativity", n, b.nonnegativity_holds(), "");
            let eight = b.forms.iter().all(|f| f.embeddings.iter().all(|e| e.eight_times_below_bound));
            rep.push("size-bound", n, b.size_bound_holds() && b.l_value_below_bound, format!("8x variant {eight}"));
        }
        Err(e) => rep.push("bounds", n, false, format!("error: {e}")),
    }
}

fn golden_11(rep: &mut SelftestReport) {
    let r = (|| -> Result<(bool, String)> {
        let forms = newform_decomposition(&build_space(11, Sign::Plus)?)?;
        let d = decompose_with(11, &forms, None)?;
        let lam = d.newforms.first().map(|c| c.lambda.clone());
        let ok = d.eisenstein_coefficient == frac(3, 5) && lam.as_ref().and_then(|l| l.to_rational()) == Some(frac(2, 5));
        let shown = lam.map(|l| l.to_string()).unwrap_or_default();
        Ok((ok, format!("c = {}, lambda = {shown}", d.eisenstein_coefficient)))
    })();
    rep.push_result("golden-11", 11, r);
}

/// Run every check for levels up to `n_max`.
pub fn run_selftest(n_max: u64) -> SelftestReport {
    let mut rep = SelftestReport::default();
    for n in primes_up_to(n_max) {
        if n >= 11 {
            hecke_checks(n, &mut rep);
        }
        if n % 4 == 3 && is_prime(n) {
            rankin_checks(n, &mut rep);
        }
    }
    if n_max >= 11 {
        golden_11(&mut rep);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(3), 1);
        assert_eq!(class_number(23), 3);
        assert_eq!(class_number(47), 5);
        assert_eq!(class_number(163), 1);
    }

    #[test]
    fn small_range() {
        let r = run_selftest(3);
        assert!(r.passed());
        assert!(r.checks.iter().any(|c| c.name == "first-coefficient" && c.level == 3));
        let r = run_selftest(23);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
