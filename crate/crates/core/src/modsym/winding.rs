//! Projections of (twisted) winding elements onto a rational newform.

use num_traits::{Signed, Zero};

use super::newform::{dual_eigenvector, Eigenform};
use super::space::{build_space, ModularSymbolSpace, Sign};
use crate::dirichlet::DirichletCharacter;
use crate::error::{domain, Error, Result};
use crate::exact::lattice::rational_gcd;
use crate::exact::rational::Rational;

fn dot(v: &[Rational], w: &[Rational]) -> Rational {
    v.iter()
        .zip(w)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| a * b)
        .sum()
}

/// `sum_a chi(a) {oo, a/N}` in a space of level `N`, or `{0, oo}` for trivial `chi`.
pub fn winding_element(space: &ModularSymbolSpace, chi: &DirichletCharacter) -> Vec<Rational> {
    let n = space.level() as i64;
    if chi.is_trivial() {
        return space.symbol((0, 1), (1, 0));
    }
    let mut acc = vec![Rational::zero(); space.dimension()];
    for a in 1..n {
        let c = chi.value(a);
        if c == 0 {
            continue;
        }
        let s = space.symbol((1, 0), (a, n));
        for (x, y) in acc.iter_mut().zip(s) {
            if c > 0 {
                *x += y;
            } else {
                *x -= y;
            }
        }
    }
    acc
}

/// Coordinate of the winding element in the rank-one image of the integral
/// cuspidal lattice under the projection onto `f`, inside the given space.
pub fn winding_ratio_in(space: &ModularSymbolSpace, f: &Eigenform, chi: &DirichletCharacter) -> Result<Rational> {
    let w = dual_eigenvector(space, f)?;
    let e = winding_element(space, chi);
    let lattice = space.integral_cuspidal_lattice();
    let images: Vec<Rational> = lattice.iter().map(|b| dot(b, &w)).collect();
    let g = rational_gcd(images.iter());
    if g.is_zero() {
        return Err(Error::Internal(format!(
            "form {} has zero image on the integral cuspidal lattice",
            f.label
        )));
    }
    // generator sign: that of the first lattice vector with nonzero image
    let first = images.iter().find(|x| !x.is_zero()).unwrap();
    let gen = if first.is_negative() { -g } else { g };
    Ok(dot(&e, &w) / gen)
}

/// `L(f,1)/Omega^+` (trivial `chi`) or the twisted analogue (odd quadratic
/// `chi` of modulus `N`), up to sign and a power of 2.
pub fn twisted_winding_ratio(f: &Eigenform, chi: &DirichletCharacter) -> Result<Rational> {
    if !f.is_rational() {
        return Err(Error::Unsupported(format!(
            "winding ratios are only computed for rational forms ({} has degree {})",
            f.label,
            f.degree()
        )));
    }
    let sign = if chi.is_trivial() {
        Sign::Plus
    } else {
        if chi.modulus() != f.level || !chi.is_odd() {
            return Err(domain!(
                "twisting character must be the odd quadratic character modulo the level {}",
                f.level
            ));
        }
        Sign::Minus
    };
    if chi.modulus() != f.level {
        return Err(domain!("character modulus {} differs from the level {}", chi.modulus(), f.level));
    }
    let space = build_space(f.level, sign)?;
    winding_ratio_in(&space, f, chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::{quadratic_character, trivial_character};
    use crate::exact::rational::{frac, odd_part_rational};
    use crate::modsym::newform::newform_decomposition;

    #[test]
    fn eleven_a_plus_ratio() {
        let s = build_space(11, Sign::Plus).unwrap();
        let f = &newform_decomposition(&s).unwrap()[0];
        let r = twisted_winding_ratio(f, &trivial_character(11).unwrap()).unwrap();
        assert_eq!(odd_part_rational(&r.abs()), frac(1, 5));
        let rm = twisted_winding_ratio(f, &quadratic_character(11).unwrap()).unwrap();
        assert!(!rm.is_zero());
    }

    #[test]
    fn rank_one_form_vanishes() {
        // 37 has a rational form with odd functional equation sign
        let s = build_space(37, Sign::Plus).unwrap();
        let forms = newform_decomposition(&s).unwrap();
        let triv = trivial_character(37).unwrap();
        let zeros = forms
            .iter()
            .filter(|f| f.is_rational())
            .filter(|f| twisted_winding_ratio(f, &triv).unwrap().is_zero())
            .count();
        assert_eq!(zeros, 1);
    }
}
