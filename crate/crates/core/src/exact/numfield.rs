use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use super::factor::is_irreducible;
use super::matrix::QMatrix;
use super::poly::UniPoly;
use super::rational::Rational;
use crate::error::{domain, internal, Result};

/// `Q[x]/(g)` for a monic irreducible `g`. The rationals are the case `g = x`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    minpoly: UniPoly,
}

impl NumberField {
    pub fn new(minpoly: UniPoly) -> Result<Arc<Self>> {
        if minpoly.degree().unwrap_or(0) == 0 {
            return Err(domain!("defining polynomial must have positive degree"));
        }
        if !minpoly.is_monic() {
            return Err(domain!("defining polynomial {minpoly} is not monic"));
        }
        if !is_irreducible(&minpoly) {
            return Err(domain!("defining polynomial {minpoly} is reducible"));
        }
        Ok(Arc::new(Self { minpoly }))
    }

    pub fn rationals() -> Arc<Self> {
        static Q: OnceLock<Arc<NumberField>> = OnceLock::new();
        Q.get_or_init(|| Arc::new(NumberField { minpoly: UniPoly::x() }))
            .clone()
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn zero(self: &Arc<Self>) -> NFElem {
        NFElem::from_rational(self, Rational::zero())
    }

    pub fn one(self: &Arc<Self>) -> NFElem {
        NFElem::from_rational(self, Rational::one())
    }

    /// The power-basis generator (class of x).
    pub fn gen(self: &Arc<Self>) -> NFElem {
        if self.is_rational() {
            // x = 0 in Q[x]/(x)
            return self.zero();
        }
        let mut c = vec![Rational::zero(); self.degree()];
        c[1] = Rational::one();
        NFElem { field: self.clone(), coords: c }
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || a.minpoly == b.minpoly
    }
}

/// Element of a number field in power-basis coordinates.
#[derive(Clone, Debug)]
pub struct NFElem {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

impl PartialEq for NFElem {
    fn eq(&self, o: &Self) -> bool {
        NumberField::same(&self.field, &o.field) && self.coords == o.coords
    }
}
impl Eq for NFElem {}

impl NFElem {
    pub fn new(field: &Arc<NumberField>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(domain!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            ));
        }
        Ok(Self { field: field.clone(), coords })
    }

    pub fn from_rational(field: &Arc<NumberField>, q: Rational) -> Self {
        let mut c = vec![Rational::zero(); field.degree()];
        c[0] = q;
        Self { field: field.clone(), coords: c }
    }

    /// Reduce an arbitrary polynomial in the generator.
    pub fn from_poly(field: &Arc<NumberField>, p: &UniPoly) -> Self {
        let r = p.rem(field.minpoly());
        let c = (0..field.degree()).map(|i| r.coeff(i)).collect();
        Self { field: field.clone(), coords: c }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn as_poly(&self) -> UniPoly {
        UniPoly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    /// Move an element of Q into `field`; other fields must match.
    pub fn coerce(&self, field: &Arc<NumberField>) -> Result<NFElem> {
        if NumberField::same(&self.field, field) {
            return Ok(self.clone());
        }
        match self.to_rational() {
            Some(q) if self.field.is_rational() => Ok(NFElem::from_rational(field, q)),
            _ => Err(domain!(
                "incompatible number fields: {} vs {}",
                self.field.minpoly(),
                field.minpoly()
            )),
        }
    }

    fn check(&self, o: &NFElem) {
        assert!(
            NumberField::same(&self.field, &o.field),
            "mixed number fields {} and {}",
            self.field.minpoly(),
            o.field.minpoly()
        );
    }

    pub fn scale(&self, q: &Rational) -> NFElem {
        NFElem {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    /// Matrix of multiplication by `self` acting on row vectors of
    /// power-basis coordinates.
    pub fn multiplication_matrix(&self) -> QMatrix {
        let d = self.field.degree();
        let mut rows = Vec::with_capacity(d);
        let mut basis = self.field.one();
        let g = self.field.gen();
        for _ in 0..d {
            rows.push((&basis * self).coords);
            basis = &basis * &g;
        }
        QMatrix::from_rows(rows)
    }

    pub fn trace(&self) -> Rational {
        if self.field.is_rational() {
            return self.coords[0].clone();
        }
        self.multiplication_matrix().trace()
    }

    pub fn norm(&self) -> Rational {
        if self.field.is_rational() {
            return self.coords[0].clone();
        }
        self.multiplication_matrix().determinant()
    }

    /// Characteristic polynomial of multiplication (power of the minimal polynomial).
    pub fn charpoly(&self) -> UniPoly {
        self.multiplication_matrix()
            .charpoly()
            .expect("multiplication matrix is square")
    }

    pub fn minpoly(&self) -> UniPoly {
        self.charpoly().squarefree_part()
    }

    /// True if the element generates the whole field.
    pub fn is_primitive(&self) -> bool {
        self.minpoly().degree() == Some(self.field.degree())
    }

    pub fn inverse(&self) -> Result<NFElem> {
        if self.is_zero() {
            return Err(domain!("inverse of zero"));
        }
        // Solve y * M = 1 where M is multiplication by self.
        let m = self.multiplication_matrix();
        let inv = m.inverse().ok_or_else(|| internal!("nonzero field element not invertible"))?;
        Ok(NFElem { field: self.field.clone(), coords: inv.row(0).to_vec() })
    }

    pub fn pow(&self, mut e: u32) -> NFElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under the field embedding sending the current generator to
    /// `image` (an element of another field).
    pub fn substitute_generator(&self, image: &NFElem) -> NFElem {
        let mut acc = image.field.zero();
        for c in self.coords.iter().rev() {
            acc = &(&acc * image) + &NFElem::from_rational(&image.field, c.clone());
        }
        acc
    }
}

impl Add for &NFElem {
    type Output = NFElem;
    fn add(self, o: &NFElem) -> NFElem {
        self.check(o);
        NFElem {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &NFElem {
    type Output = NFElem;
    fn sub(self, o: &NFElem) -> NFElem {
        self.check(o);
        NFElem {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &NFElem {
    type Output = NFElem;
    fn mul(self, o: &NFElem) -> NFElem {
        self.check(o);
        if self.field.is_rational() {
            return NFElem {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &o.coords[0]],
            };
        }
        NFElem::from_poly(&self.field, &(&self.as_poly() * &o.as_poly()))
    }
}

impl Neg for &NFElem {
    type Output = NFElem;
    fn neg(self) -> NFElem {
        NFElem {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// Polynomial in `a` (the generator name), e.g. `16/55 - 4/55*a`.
impl fmt::Display for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.as_poly().to_string().replace('x', "a");
        write!(f, "{s}")
    }
}
