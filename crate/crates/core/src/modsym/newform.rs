//! Splitting the plus cuspidal space into Galois orbits of newforms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::space::{ModularSymbolSpace, Sign};
use crate::error::{domain, internal, Error, Result};
use crate::exact::factor::factor_poly;
use crate::exact::rational::{int, primes_up_to, squarefree_part, Rational};
use crate::exact::{NFElem, NumberField, QMatrix, QSeries, Subspace};

/// A Galois orbit of newforms, given by its Hecke eigenvalues at primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenform {
    pub level: u64,
    pub label: String,
    pub field: Arc<NumberField>,
    /// `a_l` for primes `l != N` up to the table bound.
    pub eigenvalues: BTreeMap<u64, NFElem>,
}

impl Eigenform {
    pub fn is_rational(&self) -> bool {
        self.field.is_rational()
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn eigenvalue(&self, p: u64) -> Option<&NFElem> {
        self.eigenvalues.get(&p)
    }

    /// Largest prime in the eigenvalue table.
    pub fn table_bound(&self) -> u64 {
        self.eigenvalues.keys().next_back().copied().unwrap_or(0)
    }

    /// Rational eigenvalue `a_p`, for forms with rational coefficients.
    pub fn rational_eigenvalue(&self, p: u64) -> Result<Rational> {
        if !self.is_rational() {
            return Err(Error::Unsupported(format!(
                "form {} has a Hecke field of degree {}",
                self.label,
                self.degree()
            )));
        }
        match self.eigenvalues.get(&p) {
            Some(a) => Ok(a.to_rational().unwrap()),
            None if p == self.level => Err(Error::Unsupported(format!(
                "a_{p} at the level is not computed"
            ))),
            None => Err(Error::CapExceeded(format!(
                "a_{p} is beyond the eigenvalue table of {} (bound {})",
                self.label,
                self.table_bound()
            ))),
        }
    }

    /// `a_n` from the prime eigenvalues by multiplicativity and the Hecke
    /// recursion. `n` must be prime to the level.
    pub fn coefficient(&self, n: u64) -> Result<NFElem> {
        if n == 0 {
            return Ok(self.field.zero());
        }
        if n % self.level == 0 {
            return Err(Error::Unsupported(format!(
                "coefficient a_{n} needs U_{} which is not implemented",
                self.level
            )));
        }
        let mut acc = self.field.one();
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            if p * p > m {
                p = m;
            }
            if m % p == 0 {
                let mut k = 0;
                while m % p == 0 {
                    m /= p;
                    k += 1;
                }
                acc = &acc * &self.prime_power_coefficient(p, k)?;
            }
            p += 1;
        }
        Ok(acc)
    }

    fn prime_power_coefficient(&self, p: u64, k: u32) -> Result<NFElem> {
        let ap = self.eigenvalues.get(&p).ok_or_else(|| {
            Error::CapExceeded(format!(
                "a_{p} is beyond the eigenvalue table of {} (bound {})",
                self.label,
                self.table_bound()
            ))
        })?;
        let pr = int(p as i64);
        let mut prev = self.field.one();
        let mut cur = ap.clone();
        for _ in 1..k {
            let next = &(ap * &cur) - &prev.scale(&pr);
            prev = cur;
            cur = next;
        }
        Ok(if k == 0 { prev } else { cur })
    }
}

/// q-expansion `sum_{n < prec} a_n q^n` over the Hecke field.
pub fn eigenform_qexp(f: &Eigenform, prec: usize) -> Result<QSeries> {
    if prec as u64 > f.level {
        return Err(Error::Unsupported(format!(
            "precision {prec} exceeds the level {}; coefficients at multiples of the level need U_N",
            f.level
        )));
    }
    let coeffs = (0..prec as u64)
        .map(|n| f.coefficient(n))
        .collect::<Result<Vec<_>>>()?;
    QSeries::over(&f.field, coeffs)
}

pub fn sturm_bound(n: u64) -> u64 {
    (n + 1).div_ceil(6)
}

/// Default eigenvalue table bound for every orbit at level `N`.
pub fn default_table_bound(n: u64) -> u64 {
    (n - 1).max(50)
}

fn label_suffix(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

struct Piece {
    space: Subspace,
    /// Operator (on the cuspidal coordinates) with irreducible charpoly on the piece.
    operator: Option<QMatrix>,
}

/// Newform orbits of the plus cuspidal space, with eigenvalues for primes
/// up to `table_bound` (at least up to the Sturm bound).
pub fn newform_decomposition_to(space: &ModularSymbolSpace, table_bound: u64) -> Result<Vec<Eigenform>> {
    if space.sign() != Sign::Plus {
        return Err(domain!("newform decomposition runs on the plus quotient"));
    }
    let n = space.level();
    let g = space.cuspidal_dimension();
    if g == 0 {
        return Ok(vec![]);
    }
    let sturm = sturm_bound(n);
    let split_primes: Vec<u64> = primes_up_to(sturm.max(2)).into_iter().filter(|&l| l != n).collect();
    let mut ops: Vec<(String, QMatrix)> = Vec::new();
    for &l in &split_primes {
        ops.push((format!("T_{l}"), space.hecke_operator(l)?));
    }
    let singles = ops.len();

    let mut done: Vec<Piece> = Vec::new();
    let mut work = vec![Subspace::full(g)];
    while let Some(piece) = work.pop() {
        let mut settled = false;
        let mut k = 0;
        loop {
            if k == ops.len() {
                if !extend_combinations(&mut ops, singles) {
                    break;
                }
                continue;
            }
            let op = &ops[k].1;
            let r = piece.restrict(op)?;
            let cp = r.charpoly()?;
            let factors = factor_poly(&cp)?;
            if factors.len() == 1 && factors[0].1 == 1 {
                done.push(Piece { space: piece.clone(), operator: Some(op.clone()) });
                settled = true;
                break;
            }
            if factors.len() > 1 {
                for (f, e) in factors.iter().rev() {
                    let m = r.eval_poly(&f.pow(*e as u32));
                    let ker = m.left_kernel();
                    work.push(piece.sub_from_coords(&ker));
                }
                settled = true;
                break;
            }
            k += 1;
        }
        if !settled {
            return Err(Error::Separation(format!(
                "level {n}: a piece of dimension {} is not split by Hecke operators up to T_{sturm} or their small combinations",
                piece.dim()
            )));
        }
    }

    let primes: Vec<u64> = primes_up_to(table_bound.max(sturm)).into_iter().filter(|&l| l != n).collect();
    let tmats: Vec<(u64, QMatrix)> = primes
        .iter()
        .map(|&l| Ok((l, space.hecke_operator(l)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut forms = done
        .into_iter()
        .map(|p| orbit_eigenvalues(n, &p, &tmats))
        .collect::<Result<Vec<_>>>()?;
    forms.sort_by(compare_orbits);
    for (i, f) in forms.iter_mut().enumerate() {
        f.label = format!("{n}{}", label_suffix(i));
    }
    Ok(forms)
}

pub fn newform_decomposition(space: &ModularSymbolSpace) -> Result<Vec<Eigenform>> {
    newform_decomposition_to(space, default_table_bound(space.level()))
}

// adds T_a + k T_b for the next k; false when exhausted
fn extend_combinations(ops: &mut Vec<(String, QMatrix)>, singles: usize) -> bool {
    const MAX_K: i64 = 20;
    let combos = ops.len() - singles;
    let pairs = singles * (singles.saturating_sub(1)) / 2;
    if pairs == 0 || combos as i64 >= pairs as i64 * MAX_K {
        return false;
    }
    let k = combos as i64 / pairs as i64 + 1;
    let idx = combos % pairs;
    let mut c = 0;
    for a in 0..singles {
        for b in a + 1..singles {
            if c == idx {
                let m = ops[a].1.add(&ops[b].1.scale(&int(k)));
                let name = format!("{} + {k}*{}", ops[a].0, ops[b].0);
                ops.push((name, m));
                return true;
            }
            c += 1;
        }
    }
    false
}

fn orbit_eigenvalues(n: u64, piece: &Piece, tmats: &[(u64, QMatrix)]) -> Result<Eigenform> {
    let d = piece.space.dim();
    let r = piece.space.restrict(piece.operator.as_ref().unwrap())?;
    let cp = r.charpoly()?;
    let k0 = NumberField::new(cp)?;
    // cyclic vector e_0 and its Krylov basis
    let mut v = vec![Rational::zero(); d];
    v[0] = Rational::one();
    let mut krylov = Vec::with_capacity(d);
    let mut w = v.clone();
    for _ in 0..d {
        krylov.push(w.clone());
        w = r.apply_row(&w);
    }
    let kinv = QMatrix::from_rows(krylov)
        .inverse()
        .ok_or_else(|| internal!("Krylov basis is singular on an irreducible piece"))?;
    let mut eig = BTreeMap::new();
    for (l, t) in tmats {
        let s = piece.space.restrict(t)?;
        let c = kinv.apply_row(&s.apply_row(&v));
        eig.insert(*l, NFElem::new(&k0, c)?);
    }
    canonicalize(Eigenform { level: n, label: String::new(), field: k0, eigenvalues: eig })
}

/// Re-express the eigenvalues in a canonical generator of the Hecke field.
fn canonicalize(f: Eigenform) -> Result<Eigenform> {
    let d = f.degree();
    if d == 1 {
        let q = NumberField::rationals();
        let eig = f
            .eigenvalues
            .iter()
            .map(|(&l, a)| (l, NFElem::from_rational(&q, a.coords()[0].clone())))
            .collect();
        return Ok(Eigenform { field: q, eigenvalues: eig, ..f });
    }
    let theta = f.field.gen();
    let gen = if d == 2 {
        quadratic_generator(&theta)?
    } else {
        f.eigenvalues
            .values()
            .find(|a| a.is_primitive())
            .cloned()
            .unwrap_or(theta)
    };
    let mut out = rebase(&f, &gen)?;
    if d == 2 {
        // conjugate so that the first irrational a_l has a negative generator coefficient
        if let Some(a) = out.eigenvalues.values().find(|a| !a.is_rational()) {
            if a.coords()[1].is_positive() {
                let b1 = out.field.minpoly().coeff(1);
                let conj = NFElem::new(&out.field, vec![-b1, -Rational::one()])?;
                let eig = out
                    .eigenvalues
                    .iter()
                    .map(|(&l, a)| (l, a.substitute_generator(&conj)))
                    .collect();
                out.eigenvalues = eig;
            }
        }
    }
    Ok(out)
}

// (1 + sqrt s)/2 when s = 1 mod 4, else sqrt s, as an element of Q(theta)
fn quadratic_generator(theta: &NFElem) -> Result<NFElem> {
    let mp = theta.field().minpoly();
    let (b, c) = (mp.coeff(1), mp.coeff(0));
    let disc = &b * &b - int(4) * &c;
    let num = disc.numer() * disc.denom();
    let s = squarefree_part(&num).ok_or_else(|| internal!("zero discriminant"))?;
    // disc = m^2 s
    let m2 = &disc / Rational::from_integer(s.clone());
    let (mn, md) = (m2.numer().sqrt(), m2.denom().sqrt());
    let m = Rational::new(mn, md);
    if &m * &m != m2 {
        return Err(internal!("discriminant factorization failed"));
    }
    let two = int(2);
    let sqrt_disc = &theta.scale(&two) + &NFElem::from_rational(theta.field(), b);
    let sqrt_s = sqrt_disc.scale(&m.recip());
    let s_mod4 = ((&s % BigInt::from(4)) + BigInt::from(4)) % BigInt::from(4);
    if s_mod4 == BigInt::one() {
        let one = theta.field().one();
        Ok((&one + &sqrt_s).scale(&Rational::new(1.into(), 2.into())))
    } else {
        Ok(sqrt_s)
    }
}

/// Move every eigenvalue to the field generated by `gen` (a primitive element).
fn rebase(f: &Eigenform, gen: &NFElem) -> Result<Eigenform> {
    let d = f.degree();
    let k1 = NumberField::new(gen.minpoly())?;
    // theta = sum c_i gen^i
    let mut rows = Vec::with_capacity(d);
    let mut p = f.field.one();
    for _ in 0..d {
        rows.push(p.coords().to_vec());
        p = &p * gen;
    }
    let inv = QMatrix::from_rows(rows)
        .inverse()
        .ok_or_else(|| internal!("chosen generator is not primitive"))?;
    let theta = f.field.gen();
    let image = NFElem::new(&k1, inv.apply_row(theta.coords()))?;
    let eig = f
        .eigenvalues
        .iter()
        .map(|(&l, a)| (l, a.substitute_generator(&image)))
        .collect();
    Ok(Eigenform { level: f.level, label: f.label.clone(), field: k1, eigenvalues: eig })
}

fn compare_orbits(a: &Eigenform, b: &Eigenform) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (l, x) in &a.eigenvalues {
            let Some(y) = b.eigenvalues.get(l) else { break };
            let (px, py) = (x.minpoly(), y.minpoly());
            let o = px.coeffs().cmp(py.coeffs());
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// Column vector `w` with `T_l w = a_l w` on the whole space of `space`
/// (for a rational form), used to read off the form's component.
pub fn dual_eigenvector(space: &ModularSymbolSpace, f: &Eigenform) -> Result<Vec<Rational>> {
    if !f.is_rational() {
        return Err(Error::Unsupported(format!("form {} is not rational", f.label)));
    }
    let dim = space.dimension();
    let mut blocks: Vec<QMatrix> = Vec::new();
    for (&l, a) in &f.eigenvalues {
        let t = space.hecke_ambient(l)?;
        let a = a.to_rational().unwrap();
        blocks.push(t.sub(&QMatrix::identity(dim).scale(&a)));
        let ker = QMatrix::stack(&blocks).right_kernel();
        if ker.len() == 1 {
            return Ok(ker.into_iter().next().unwrap());
        }
        if ker.is_empty() {
            return Err(internal!("form {} has no eigenvector in the {} space", f.label, space.sign()));
        }
    }
    Err(Error::Separation(format!(
        "the eigenvalue table of {} does not isolate a line",
        f.label
    )))
}

/// Extend the eigenvalue table of a rational form to all primes up to `cap`
/// using one Manin symbol and the dual eigenvector.
pub fn extend_rational_eigenvalues(space: &ModularSymbolSpace, f: &mut Eigenform, cap: u64) -> Result<()> {
    if cap <= f.table_bound() {
        return Ok(());
    }
    let w = dual_eigenvector(space, f)?;
    let (gen_num, _) = space.generator_numerators();
    // phi(g) scaled to integers
    let phi: Vec<Rational> = gen_num
        .iter()
        .map(|v| {
            v.iter()
                .zip(&w)
                .filter(|(x, _)| **x != 0)
                .map(|(&x, y)| Rational::from_integer(x.into()) * y)
                .sum()
        })
        .collect();
    let den = crate::exact::rational::lcm_of_denominators(phi.iter());
    let dr = Rational::from_integer(den);
    let phi_int: Vec<i128> = phi
        .iter()
        .map(|x| {
            let v = (x * &dr).to_integer();
            i128::try_from(v).map_err(|_| internal!("dual eigenvector values overflow"))
        })
        .collect::<Result<Vec<_>>>()?;
    let x = phi_int
        .iter()
        .position(|&v| v != 0)
        .ok_or_else(|| internal!("dual eigenvector vanishes on every Manin symbol"))?;
    let p1 = space.p1();
    let e = p1.element(x);
    let (c, d) = (e.c as i64, e.d as i64);
    let q = NumberField::rationals();
    for p in primes_up_to(cap) {
        if p == f.level || f.eigenvalues.contains_key(&p) {
            continue;
        }
        let mut acc: i128 = 0;
        for h in super::heilbronn::heilbronn_cremona(p) {
            acc += phi_int[p1.index(c * h[0] + d * h[2], c * h[1] + d * h[3])];
        }
        if acc % phi_int[x] != 0 {
            return Err(internal!("a_{p} of {} is not an integer", f.label));
        }
        f.eigenvalues
            .insert(p, NFElem::from_rational(&q, int((acc / phi_int[x]) as i64)));
    }
    Ok(())
}

/// Check `a_l^2 <= 4 l` in every real embedding (exact, via the minimal polynomial roots).
pub fn satisfies_ramanujan(f: &Eigenform, l: u64) -> Result<bool> {
    let a = f
        .eigenvalue(l)
        .ok_or_else(|| Error::CapExceeded(format!("a_{l} not in the table of {}", f.label)))?;
    let bound = int(4 * l as i64);
    if let Some(q) = a.to_rational() {
        return Ok(&q * &q <= bound);
    }
    let sq = a * a;
    let diff = &NFElem::from_rational(&f.field, bound) - &sq;
    let embs = crate::exact::realroots::RealEmbedding::all(f.field.minpoly())?;
    // the Hecke field of a newform is totally real
    if embs.len() != f.degree() {
        return Ok(false);
    }
    for mut e in embs {
        if e.sign(&diff)? == Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn trace_of_eigenvalue(f: &Eigenform, l: u64) -> Option<Rational> {
    f.eigenvalue(l).map(|a| a.trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modsym::space::build_space;

    fn rat(f: &Eigenform, l: u64) -> Rational {
        f.eigenvalue(l).unwrap().to_rational().unwrap()
    }

    #[test]
    fn level_11() {
        let s = build_space(11, Sign::Plus).unwrap();
        let forms = newform_decomposition(&s).unwrap();
        assert_eq!(forms.len(), 1);
        let f = &forms[0];
        assert_eq!(f.label, "11a");
        assert!(f.is_rational());
        assert_eq!(rat(f, 2), int(-2));
        assert_eq!(rat(f, 3), int(-1));
        assert_eq!(rat(f, 5), int(1));
        assert_eq!(f.coefficient(4).unwrap().to_rational(), Some(int(2)));
        assert_eq!(f.coefficient(6).unwrap().to_rational(), Some(int(2)));
        let q = eigenform_qexp(f, 6).unwrap();
        let c: Vec<Rational> = (0..6).map(|n| q.rational_coeff(n).unwrap()).collect();
        assert_eq!(c, vec![int(0), int(1), int(-2), int(-1), int(2), int(1)]);
        assert!(eigenform_qexp(f, 12).is_err());
    }

    #[test]
    fn level_67_orbits() {
        let s = build_space(67, Sign::Plus).unwrap();
        let forms = newform_decomposition(&s).unwrap();
        let degs: Vec<usize> = forms.iter().map(|f| f.degree()).collect();
        assert_eq!(degs, vec![1, 2, 2]);
        let f1 = &forms[0];
        assert_eq!((rat(f1, 2), rat(f1, 3), rat(f1, 5)), (int(2), int(-2), int(2)));
        assert_eq!(f1.coefficient(4).unwrap().to_rational(), Some(int(2)));
        for f in &forms[1..] {
            assert_eq!(f.field.minpoly().to_string(), "x^2 - x - 1");
        }
        let k = &forms[1].field;
        let beta = k.gen();
        let one = k.one();
        // a_2 = -beta on one orbit and -beta - 1 on the other
        let a2: Vec<NFElem> = forms[1..].iter().map(|f| f.eigenvalue(2).unwrap().clone()).collect();
        assert!(a2.contains(&(-&beta)));
        assert!(a2.contains(&(&(-&beta) - &one)));
    }

    #[test]
    fn extension_matches_direct_hecke() {
        let s = build_space(37, Sign::Plus).unwrap();
        let mut forms = newform_decomposition_to(&s, 20).unwrap();
        let direct = newform_decomposition_to(&s, 60).unwrap();
        for (f, g) in forms.iter_mut().zip(&direct) {
            if f.is_rational() {
                extend_rational_eigenvalues(&s, f, 60).unwrap();
                assert_eq!(f.eigenvalues, g.eigenvalues);
            }
        }
    }

    #[test]
    fn labels() {
        assert_eq!(label_suffix(0), "a");
        assert_eq!(label_suffix(25), "z");
        assert_eq!(label_suffix(26), "aa");
    }
}
