use std::fmt;
use std::sync::Arc;

use super::numfield::{NFElem, NumberField};
use super::rational::Rational;
use crate::error::{domain, Result};

/// Truncated q-expansion `a_0 + a_1 q + ... + a_{B-1} q^{B-1} + O(q^B)`.
///
/// The precision `B` is the number of known coefficients; nothing at or
/// beyond it is ever reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    field: Arc<NumberField>,
    coeffs: Vec<NFElem>,
}

impl QSeries {
    pub fn rational(coeffs: Vec<Rational>) -> Self {
        let q = NumberField::rationals();
        let coeffs = coeffs.into_iter().map(|c| NFElem::from_rational(&q, c)).collect();
        Self { field: q, coeffs }
    }

    pub fn over(field: &Arc<NumberField>, coeffs: Vec<NFElem>) -> Result<Self> {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.coerce(field))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { field: field.clone(), coeffs })
    }

    /// The constant series 1 at the given precision.
    pub fn one(prec: usize) -> Self {
        let mut c = vec![Rational::from_integer(0.into()); prec];
        if prec > 0 {
            c[0] = Rational::from_integer(1.into());
        }
        Self::rational(c)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeff(&self, n: usize) -> Option<&NFElem> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[NFElem] {
        &self.coeffs
    }

    /// Coefficient as a rational, if known and rational.
    pub fn rational_coeff(&self, n: usize) -> Option<Rational> {
        self.coeffs.get(n).and_then(|c| c.to_rational())
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().take(prec).cloned().collect(),
        }
    }

    fn common_field(&self, o: &QSeries) -> Result<Arc<NumberField>> {
        if NumberField::same(&self.field, &o.field) || o.field.is_rational() {
            Ok(self.field.clone())
        } else if self.field.is_rational() {
            Ok(o.field.clone())
        } else {
            Err(domain!(
                "incompatible coefficient fields {} and {}",
                self.field.minpoly(),
                o.field.minpoly()
            ))
        }
    }

    pub fn add(&self, o: &QSeries) -> Result<QSeries> {
        let k = self.common_field(o)?;
        let prec = self.precision().min(o.precision());
        let coeffs = (0..prec)
            .map(|n| Ok(&self.coeffs[n].coerce(&k)? + &o.coeffs[n].coerce(&k)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { field: k, coeffs })
    }

    pub fn scale(&self, c: &NFElem) -> Result<QSeries> {
        let tmp = QSeries { field: c.field().clone(), coeffs: vec![c.clone()] };
        let k = self.common_field(&tmp)?;
        let c = c.coerce(&k)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| Ok(&a.coerce(&k)? * &c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { field: k, coeffs })
    }
}

/// Product truncated to the smaller precision.
pub fn series_mul(a: &QSeries, b: &QSeries) -> Result<QSeries> {
    let k = a.common_field(b)?;
    let prec = a.precision().min(b.precision());
    let ac = a.coeffs[..prec]
        .iter()
        .map(|c| c.coerce(&k))
        .collect::<Result<Vec<_>>>()?;
    let bc = b.coeffs[..prec]
        .iter()
        .map(|c| c.coerce(&k))
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![k.zero(); prec];
    for i in 0..prec {
        if ac[i].is_zero() {
            continue;
        }
        for j in 0..prec - i {
            if bc[j].is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(&ac[i] * &bc[j]);
        }
    }
    Ok(QSeries { field: k, coeffs: out })
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.is_rational() {
                c.to_string()
            } else {
                format!("({c})")
            };
            terms.push(match n {
                0 => cs,
                1 => format!("{cs}*q"),
                _ => format!("{cs}*q^{n}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} + O(q^{})", terms.join(" + "), self.precision())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::UniPoly;
    use crate::exact::rational::{frac, int};

    #[test]
    fn square_of_half_plus_q() {
        let a = QSeries::rational(vec![frac(1, 2), int(1), int(0), int(0)]);
        let sq = series_mul(&a, &a).unwrap();
        assert_eq!(sq.rational_coeff(0), Some(frac(1, 4)));
        assert_eq!(sq.rational_coeff(1), Some(int(1)));
        assert_eq!(sq.rational_coeff(2), Some(int(1)));
        assert_eq!(sq.rational_coeff(3), Some(int(0)));
        assert_eq!(sq.rational_coeff(4), None);
    }

    #[test]
    fn precision_is_minimum() {
        let a = QSeries::rational(vec![int(1); 5]);
        let b = QSeries::rational(vec![int(1); 3]);
        assert_eq!(series_mul(&a, &b).unwrap().precision(), 3);
        assert_eq!(a.add(&b).unwrap().precision(), 3);
    }

    #[test]
    fn incompatible_fields() {
        let k1 = NumberField::new(UniPoly::from_i64(&[-1, -1, 1])).unwrap();
        let k2 = NumberField::new(UniPoly::from_i64(&[-2, 0, 1])).unwrap();
        let a = QSeries::over(&k1, vec![k1.gen()]).unwrap();
        let b = QSeries::over(&k2, vec![k2.gen()]).unwrap();
        assert!(series_mul(&a, &b).is_err());
        // Q embeds into anything
        let c = QSeries::rational(vec![int(2)]);
        let p = series_mul(&a, &c).unwrap();
        assert_eq!(p.coeff(0).unwrap(), &k1.gen().scale(&int(2)));
    }
}
