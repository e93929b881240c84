//! Decomposition of the squared weight-one Eisenstein series in the
//! eigenbasis of `M_2(Gamma_0(N))`, and the checks built on it.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::dirichlet::{l_value_at_zero, quadratic_character};
use crate::eisenstein::{weight1_eisenstein, weight2_eisenstein};
use crate::error::{domain, internal, Error, Result};
use crate::exact::certified::{ln, pi, CertifiedReal, Interval, DEFAULT_BITS};
use crate::exact::rational::{int, is_prime, odd_part, Rational};
use crate::exact::realroots::RealEmbedding;
use crate::exact::{series_mul, solve_exact, NFElem, QMatrix, QSeries, SolveOutcome};
use crate::modsym::{build_space, newform_decomposition, sturm_bound, Eigenform, Sign};

pub fn check_level(n: u64) -> Result<()> {
    if !is_prime(n) || n % 4 != 3 {
        return Err(domain!("level must be a prime ≡ 3 (mod 4), got {n}"));
    }
    Ok(())
}

/// Default working precision `2 * sturm(N) + 10`.
pub fn default_precision(n: u64) -> usize {
    2 * sturm_bound(n) as usize + 10
}

/// `G_{1,chi}^2` to the given precision.
pub fn rankin_product(n: u64, prec: usize) -> Result<QSeries> {
    check_level(n)?;
    let min = sturm_bound(n) as usize + 10;
    if prec < min {
        return Err(domain!("precision {prec} is below sturm(N) + 10 = {min}"));
    }
    let g = weight1_eisenstein(&quadratic_character(n)?, prec)?;
    series_mul(&g.expansion, &g.expansion)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewformCoefficient {
    pub form: Eigenform,
    /// Coefficient of the orbit representative; conjugate forms carry the
    /// conjugate coefficient.
    pub lambda: NFElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    pub level: u64,
    pub l_value: Rational,
    pub eisenstein_coefficient: Rational,
    pub newforms: Vec<NewformCoefficient>,
    pub precision: usize,
    /// Coefficients `a_1 .. a_solve_rows` entered the linear solve.
    pub solve_rows: usize,
    /// Every coefficient `a_0 .. a_residual_checked_to` was matched exactly.
    pub residual_checked_to: usize,
}

impl DecompositionResult {
    pub fn coefficient_of(&self, label: &str) -> Option<&NFElem> {
        self.newforms.iter().find(|c| c.form.label == label).map(|c| &c.lambda)
    }
}

/// Decompose using freshly computed newforms.
pub fn decompose(n: u64) -> Result<DecompositionResult> {
    check_level(n)?;
    let space = build_space(n, Sign::Plus)?;
    let forms = newform_decomposition(&space)?;
    decompose_with(n, &forms, None)
}

/// Decompose against a supplied list of newform orbits.
pub fn decompose_with(n: u64, forms: &[Eigenform], prec: Option<usize>) -> Result<DecompositionResult> {
    check_level(n)?;
    let prec = prec.unwrap_or_else(|| default_precision(n));
    let g2 = rankin_product(n, prec)?;
    let eis = weight2_eisenstein(n, prec)?.expansion;
    let l0 = l_value_at_zero(&quadratic_character(n)?)?;
    // coefficients a_n with N | n are out of reach (no U_N)
    let usable = prec.min(n as usize);
    let solve_rows = (sturm_bound(n) as usize + 10).min(usable - 1);

    // per orbit: powers of the field generator and the coefficients a_n
    let mut blocks: Vec<(Vec<NFElem>, Vec<NFElem>)> = Vec::new();
    for f in forms {
        if f.level != n {
            return Err(domain!("form {} has level {}, expected {n}", f.label, f.level));
        }
        let gpow: Vec<NFElem> = (0..f.degree()).map(|i| f.field.gen().pow(i as u32)).collect();
        let an = (0..usable as u64).map(|m| f.coefficient(m)).collect::<Result<Vec<_>>>()?;
        blocks.push((gpow, an));
    }
    let unknowns = 1 + blocks.iter().map(|b| b.0.len()).sum::<usize>();
    let row = |m: usize| -> Vec<Rational> {
        let mut r = vec![eis.rational_coeff(m).unwrap()];
        for (gpow, an) in &blocks {
            for g in gpow {
                r.push((g * &an[m]).trace());
            }
        }
        r
    };
    if solve_rows < unknowns {
        return Err(internal!(
            "only {solve_rows} usable coefficients for {unknowns} unknowns at level {n}"
        ));
    }
    let a = QMatrix::from_rows_with_cols((1..=solve_rows).map(row).collect(), unknowns);
    let b: Vec<Rational> = (1..=solve_rows).map(|m| g2.rational_coeff(m).unwrap()).collect();
    let x = match solve_exact(&a, &b)? {
        SolveOutcome::Unique(x) => x,
        SolveOutcome::Underdetermined { free_columns, .. } => {
            return Err(Error::NoSolution(format!(
                "decomposition at level {n} is underdetermined in columns {free_columns:?}"
            )))
        }
        SolveOutcome::Inconsistent => {
            return Err(Error::NoSolution(format!(
                "G^2 is not in the span of E and the newforms at level {n}"
            )))
        }
    };
    for m in 0..usable {
        let r = row(m);
        let fit: Rational = r.iter().zip(&x).map(|(p, q)| p * q).sum();
        if fit != g2.rational_coeff(m).unwrap() {
            return Err(internal!("decomposition residual is nonzero at q^{m} (level {n})"));
        }
    }
    let c = x[0].clone();
    let mut pos = 1;
    let mut newforms = Vec::new();
    for f in forms {
        let d = f.degree();
        let lambda = NFElem::new(&f.field, x[pos..pos + d].to_vec())?;
        pos += d;
        newforms.push(NewformCoefficient { form: f.clone(), lambda });
    }
    Ok(DecompositionResult {
        level: n,
        l_value: l0,
        eisenstein_coefficient: c,
        newforms,
        precision: prec,
        solve_rows,
        residual_checked_to: usable - 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyEqualityCheck {
    pub l_value: Rational,
    /// `c + sum over all embeddings of Lambda_f`.
    pub first_coefficient_sum: Rational,
    pub difference: Rational,
}

impl KeyEqualityCheck {
    pub fn passed(&self) -> bool {
        self.difference.is_zero()
    }
}

/// Compare the `q^1` coefficients: `L(0,chi) = c + sum_f Tr(Lambda_f)`.
pub fn key_equality_check(d: &DecompositionResult) -> KeyEqualityCheck {
    let s: Rational = d.newforms.iter().map(|c| c.lambda.trace()).sum();
    let total = &d.eisenstein_coefficient + s;
    KeyEqualityCheck {
        l_value: d.l_value.clone(),
        difference: &d.l_value - &total,
        first_coefficient_sum: total,
    }
}

/// Certified enclosure of `sqrt(N) (log N + 5) / (2 pi)`.
pub fn ramare_envelope(n: u64) -> Result<CertifiedReal> {
    let bits = DEFAULT_BITS + 16;
    let nr = int(n as i64);
    let root = Interval::point(nr.clone()).sqrt(bits)?;
    let log = ln(&nr, bits)?.add(&Interval::point(int(5)));
    let two_pi = pi(bits).scale(&int(2));
    let v = root.mul(&log).div(&two_pi)?.round_out(DEFAULT_BITS);
    Ok(CertifiedReal::new(v, DEFAULT_BITS))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingBound {
    pub value: CertifiedReal,
    pub nonnegative: bool,
    pub below_bound: bool,
    /// The same size check for `8 * Lambda`.
    pub eight_times_below_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DenominatorCheck {
    /// Smallest admissible torsion order `m`.
    Passed { m: u64 },
    Failed,
    Skipped,
    NotRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormBounds {
    pub label: String,
    pub embeddings: Vec<EmbeddingBound>,
    /// False if the Hecke field is not totally real (never expected).
    pub totally_real: bool,
    pub modular_degree: Option<u64>,
    pub denominator: DenominatorCheck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub level: u64,
    pub ramare_bound: CertifiedReal,
    pub l_value_below_bound: bool,
    pub forms: Vec<FormBounds>,
    pub key_equality: KeyEqualityCheck,
}

impl BoundReport {
    pub fn nonnegativity_holds(&self) -> bool {
        self.forms
            .iter()
            .all(|f| f.totally_real && f.embeddings.iter().all(|e| e.nonnegative))
    }

    pub fn size_bound_holds(&self) -> bool {
        self.forms.iter().all(|f| f.embeddings.iter().all(|e| e.below_bound))
    }

    pub fn all_passed(&self) -> bool {
        self.l_value_below_bound
            && self.nonnegativity_holds()
            && self.size_bound_holds()
            && self.key_equality.passed()
            && self
                .forms
                .iter()
                .all(|f| !matches!(f.denominator, DenominatorCheck::Failed))
    }
}

/// Torsion orders allowed over Q.
pub const TORSION_ORDERS: [u64; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12];

/// Smallest `m` with `oddpart(den) | m^2 oddpart(m_E)`.
pub fn denominator_witness(lambda: &Rational, modular_degree: u64) -> Option<u64> {
    let den = odd_part(lambda.denom());
    let me = odd_part(&BigInt::from(modular_degree));
    TORSION_ORDERS
        .iter()
        .copied()
        .find(|&m| (BigInt::from(m * m) * &me).is_multiple_of(&den))
}

/// Certify the size, sign and denominator checks of a decomposition.
/// `modular_degrees` maps labels of rational forms to `m_E`.
pub fn verify_bounds(d: &DecompositionResult, modular_degrees: &BTreeMap<String, u64>) -> Result<BoundReport> {
    let bound = ramare_envelope(d.level)?;
    let b = &bound.enclosure;
    let l_ok = Interval::point(d.l_value.clone()).certified_cmp(b)? == Ordering::Less;
    let mut forms = Vec::new();
    for nc in &d.newforms {
        let f = &nc.form;
        let embs = RealEmbedding::all(f.field.minpoly())?;
        let totally_real = embs.len() == f.degree();
        let mut out = Vec::new();
        for mut e in embs {
            let sign = e.sign(&nc.lambda)?;
            let v = e.eval_to(&nc.lambda, DEFAULT_BITS).round_out(DEFAULT_BITS);
            let below = v.certified_cmp(b)? == Ordering::Less;
            let below8 = v.scale(&int(8)).certified_cmp(b)? == Ordering::Less;
            out.push(EmbeddingBound {
                value: CertifiedReal::new(v, DEFAULT_BITS),
                nonnegative: sign != Ordering::Less,
                below_bound: below,
                eight_times_below_bound: below8,
            });
        }
        let m_e = modular_degrees.get(&f.label).copied();
        let denominator = match (nc.lambda.to_rational(), f.is_rational(), m_e) {
            (Some(q), true, Some(m)) => match denominator_witness(&q, m) {
                Some(w) => DenominatorCheck::Passed { m: w },
                None => DenominatorCheck::Failed,
            },
            (_, true, None) => DenominatorCheck::Skipped,
            _ => DenominatorCheck::NotRational,
        };
        forms.push(FormBounds {
            label: f.label.clone(),
            embeddings: out,
            totally_real,
            modular_degree: m_e,
            denominator,
        });
    }
    Ok(BoundReport {
        level: d.level,
        ramare_bound: bound,
        l_value_below_bound: l_ok,
        forms,
        key_equality: key_equality_check(d),
    })
}

/// The Eisenstein coefficient predicted from constant terms alone.
pub fn predicted_eisenstein_coefficient(n: u64) -> Result<Rational> {
    check_level(n)?;
    let l0 = l_value_at_zero(&quadratic_character(n)?)?;
    Ok(&l0 * &l0 / int(4) / Rational::new((n - 1).into(), 24.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    #[test]
    fn level_11() {
        let d = decompose(11).unwrap();
        assert_eq!(d.eisenstein_coefficient, frac(3, 5));
        assert_eq!(d.newforms.len(), 1);
        assert_eq!(d.newforms[0].lambda.to_rational(), Some(frac(2, 5)));
        assert!(key_equality_check(&d).passed());
        assert_eq!(d.residual_checked_to, 10);
        let mut m = BTreeMap::new();
        m.insert("11a".to_string(), 1u64);
        let r = verify_bounds(&d, &m).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.forms[0].denominator, DenominatorCheck::Passed { m: 5 });
    }

    #[test]
    fn level_67() {
        let d = decompose(67).unwrap();
        assert_eq!(d.eisenstein_coefficient, frac(1, 11));
        let degrees: Vec<usize> = d.newforms.iter().map(|c| c.form.degree()).collect();
        assert_eq!(degrees, vec![1, 2, 2]);
        assert_eq!(d.newforms[0].lambda.to_rational(), Some(frac(2, 5)));
        let zero = d.newforms.iter().filter(|c| c.lambda.is_zero()).count();
        assert_eq!(zero, 1);
        let other = d.newforms.iter().find(|c| c.form.degree() == 2 && !c.lambda.is_zero()).unwrap();
        // (2/55)(7 -+ sqrt 5): trace 28/55, norm (4/3025)(49 - 5)
        assert_eq!(other.lambda.trace(), frac(28, 55));
        assert_eq!(other.lambda.norm(), frac(176, 3025));
        assert!(key_equality_check(&d).passed());
        let mut m = BTreeMap::new();
        m.insert("67a".to_string(), 5u64);
        let r = verify_bounds(&d, &m).unwrap();
        assert!(r.all_passed());
    }

    #[test]
    fn product_coefficients() {
        let g = rankin_product(11, 12).unwrap();
        assert_eq!(g.rational_coeff(0), Some(frac(1, 4)));
        assert_eq!(g.rational_coeff(1), Some(int(1)));
        assert_eq!(g.rational_coeff(2), Some(int(1)));
        assert!(rankin_product(11, 5).is_err());
        assert!(rankin_product(13, 30).is_err());
    }

    #[test]
    fn level_3_has_no_cusp_forms() {
        let d = decompose(3).unwrap();
        assert!(d.newforms.is_empty());
        assert_eq!(d.eisenstein_coefficient, frac(1, 3));
        assert_eq!(d.l_value, frac(1, 3));
        assert!(key_equality_check(&d).passed());
    }

    #[test]
    fn eisenstein_coefficient_from_constant_terms() {
        assert_eq!(predicted_eisenstein_coefficient(11).unwrap(), frac(3, 5));
        assert_eq!(predicted_eisenstein_coefficient(67).unwrap(), frac(1, 11));
    }

    #[test]
    fn envelope_at_11() {
        let b = ramare_envelope(11).unwrap();
        assert_eq!(b.decimal(3, crate::exact::certified::Direction::Lower), "3.905");
    }
}
