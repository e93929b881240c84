//! Per-prime certificates that the cyclotomic mu and lambda invariants of a
//! prime-level elliptic curve vanish, from the exact Rankin coefficient.

use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::certified::{ln, CertifiedReal, Interval, DEFAULT_BITS};
use crate::exact::rational::{int, is_prime, primes_up_to, valuations, Rational};
use crate::modsym::{build_space, extend_rational_eigenvalues, Eigenform, Sign};

/// Largest prime the eigenvalue tables are extended to by default.
pub const DEFAULT_HECKE_CAP: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInput {
    pub form: Eigenform,
    pub modular_degree: Option<u64>,
    /// Free-text note on where `m_E` came from.
    pub modular_degree_source: Option<String>,
    /// Prime level means semistable, so the Manin constant is taken to be 1.
    pub manin_constant_one: bool,
}

impl CurveInput {
    pub fn new(form: Eigenform, modular_degree: Option<u64>) -> Result<Self> {
        if !form.is_rational() {
            return Err(domain!("form {} is not rational, so it has no attached curve", form.label));
        }
        if modular_degree == Some(0) {
            return Err(domain!("modular degree must be positive"));
        }
        Ok(CurveInput {
            form,
            modular_degree,
            modular_degree_source: None,
            manin_constant_one: true,
        })
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.modular_degree_source = Some(source.into());
        self
    }

    pub fn level(&self) -> u64 {
        self.form.level
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Reduction {
    GoodOrdinary,
    GoodSupersingular,
    Bad,
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reduction::GoodOrdinary => "good-ordinary",
            Reduction::GoodSupersingular => "good-supersingular",
            Reduction::Bad => "bad",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionData {
    pub p: u64,
    pub reduction: Reduction,
    /// `None` at the level.
    pub a_p: Option<i64>,
    pub anomalous: bool,
}

pub fn reduction_data(f: &Eigenform, p: u64) -> Result<ReductionData> {
    if !is_prime(p) {
        return Err(domain!("{p} is not prime"));
    }
    if p == f.level {
        return Ok(ReductionData { p, reduction: Reduction::Bad, a_p: None, anomalous: false });
    }
    let a = f.rational_eigenvalue(p)?;
    let a = a
        .to_integer()
        .to_i64()
        .filter(|_| a.is_integer())
        .ok_or_else(|| Error::Internal(format!("a_{p} of {} is not a small integer", f.label)))?;
    let m = p as i64;
    let reduction = if a.mod_floor(&m) == 0 { Reduction::GoodSupersingular } else { Reduction::GoodOrdinary };
    Ok(ReductionData { p, reduction, a_p: Some(a), anomalous: (a - 1).mod_floor(&m) == 0 })
}

/// Certified enclosure of `100 sqrt(N) (log N + 5) m_E`.
pub fn theorem1_bound(n: u64, modular_degree: u64) -> Result<CertifiedReal> {
    if modular_degree == 0 {
        return Err(domain!("modular degree must be positive"));
    }
    let bits = DEFAULT_BITS + 16;
    let nr = int(n as i64);
    let root = Interval::point(nr.clone()).sqrt(bits)?;
    let log = ln(&nr, bits)?.add(&Interval::point(int(5)));
    let v = root.mul(&log).scale(&int(100 * modular_degree as i64)).round_out(DEFAULT_BITS);
    Ok(CertifiedReal::new(v, DEFAULT_BITS))
}

/// Status of the mod-p surjectivity hypothesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KatoHypothesis {
    /// Semistable and `p >= 11`.
    Automatic,
    ExternalCheckNeeded,
    NotApplicable,
}

impl fmt::Display for KatoHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KatoHypothesis::Automatic => "automatic",
            KatoHypothesis::ExternalCheckNeeded => "external check needed",
            KatoHypothesis::NotApplicable => "not applicable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FailureReason {
    BadReduction,
    Supersingular,
    Anomalous,
    LambdaVanishes,
    NumeratorDivisible,
    DenominatorDivisible,
    DividesModularDegree,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::BadReduction => "bad reduction",
            FailureReason::Supersingular => "supersingular",
            FailureReason::Anomalous => "anomalous",
            FailureReason::LambdaVanishes => "coefficient vanishes",
            FailureReason::NumeratorDivisible => "p divides the numerator",
            FailureReason::DenominatorDivisible => "p divides the denominator",
            FailureReason::DividesModularDegree => "p divides the modular degree",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    MuLambdaZero,
    Inconclusive(Vec<FailureReason>),
}

impl Conclusion {
    pub fn is_positive(&self) -> bool {
        matches!(self, Conclusion::MuLambdaZero)
    }
}

/// Consequences attached to a positive verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corollaries {
    pub rank_zero_every_layer: bool,
    pub sha_p_primary_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeVerdict {
    pub p: u64,
    pub reduction: Reduction,
    pub a_p: Option<i64>,
    pub anomalous: bool,
    /// `(v_p(numerator), v_p(denominator))` of the coefficient.
    pub lambda_valuation: (u32, u32),
    pub kato: KatoHypothesis,
    pub conclusion: Conclusion,
    pub corollaries: Option<Corollaries>,
}

fn kato_status(p: u64) -> KatoHypothesis {
    if p >= 11 {
        KatoHypothesis::Automatic
    } else {
        KatoHypothesis::ExternalCheckNeeded
    }
}

/// Verdict at one odd prime from the exact coefficient `lambda`.
pub fn certify(curve: &CurveInput, p: u64, lambda: Option<&Rational>) -> Result<PrimeVerdict> {
    if p == 2 {
        return Err(domain!("p must be odd"));
    }
    if !is_prime(p) {
        return Err(domain!("{p} is not prime"));
    }
    let lambda = lambda.ok_or_else(|| {
        Error::Dependency(format!("no Rankin coefficient supplied for {}", curve.form.label))
    })?;
    let rd = reduction_data(&curve.form, p)?;
    let val = if lambda.is_zero() { (0, 0) } else { valuations(lambda, p) };
    let mut reasons = Vec::new();
    match rd.reduction {
        Reduction::Bad => reasons.push(FailureReason::BadReduction),
        Reduction::GoodSupersingular => reasons.push(FailureReason::Supersingular),
        Reduction::GoodOrdinary => {}
    }
    if rd.anomalous {
        reasons.push(FailureReason::Anomalous);
    }
    if lambda.is_zero() {
        reasons.push(FailureReason::LambdaVanishes);
    } else {
        if val.0 > 0 {
            reasons.push(FailureReason::NumeratorDivisible);
        }
        if val.1 > 0 {
            reasons.push(FailureReason::DenominatorDivisible);
        }
    }
    if curve.modular_degree.is_some_and(|m| m % p == 0) {
        reasons.push(FailureReason::DividesModularDegree);
    }
    let kato = if rd.reduction == Reduction::Bad { KatoHypothesis::NotApplicable } else { kato_status(p) };
    let (conclusion, corollaries) = if reasons.is_empty() {
        let c = Corollaries { rank_zero_every_layer: true, sha_p_primary_trivial: true };
        (Conclusion::MuLambdaZero, Some(c))
    } else {
        (Conclusion::Inconclusive(reasons), None)
    };
    Ok(PrimeVerdict {
        p,
        reduction: rd.reduction,
        a_p: rd.a_p,
        anomalous: rd.anomalous,
        lambda_valuation: val,
        kato,
        conclusion,
        corollaries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IwasawaCertificate {
    pub level: u64,
    pub label: String,
    pub modular_degree: Option<u64>,
    pub modular_degree_source: Option<String>,
    pub manin_constant_one: bool,
    pub lambda: Rational,
    /// Absent when no modular degree was supplied.
    pub theorem1_bound: Option<CertifiedReal>,
    pub p_max: u64,
    pub verdicts: Vec<PrimeVerdict>,
}

impl IwasawaCertificate {
    pub fn verdict(&self, p: u64) -> Option<&PrimeVerdict> {
        self.verdicts.iter().find(|v| v.p == p)
    }

    pub fn positive_primes(&self) -> Vec<u64> {
        self.verdicts.iter().filter(|v| v.conclusion.is_positive()).map(|v| v.p).collect()
    }
}

/// Verdicts at every odd prime `p <= p_max` (the level included, as bad).
pub fn prime_scan(curve: &CurveInput, lambda: &Rational, p_max: u64) -> Result<IwasawaCertificate> {
    prime_scan_capped(curve, lambda, p_max, DEFAULT_HECKE_CAP)
}

pub fn prime_scan_capped(curve: &CurveInput, lambda: &Rational, p_max: u64, cap: u64) -> Result<IwasawaCertificate> {
    if p_max > cap {
        return Err(Error::CapExceeded(format!("p_max {p_max} exceeds the Hecke cap {cap}")));
    }
    let mut curve = curve.clone();
    if curve.form.table_bound() < p_max {
        let space = build_space(curve.level(), Sign::Plus)?;
        extend_rational_eigenvalues(&space, &mut curve.form, p_max)?;
    }
    let verdicts = primes_up_to(p_max)
        .into_iter()
        .filter(|&p| p != 2)
        .map(|p| certify(&curve, p, Some(lambda)))
        .collect::<Result<Vec<_>>>()?;
    let theorem1_bound = curve.modular_degree.map(|m| theorem1_bound(curve.level(), m)).transpose()?;
    Ok(IwasawaCertificate {
        level: curve.level(),
        label: curve.form.label.clone(),
        modular_degree: curve.modular_degree,
        modular_degree_source: curve.modular_degree_source.clone(),
        manin_constant_one: curve.manin_constant_one,
        lambda: lambda.clone(),
        theorem1_bound,
        p_max,
        verdicts,
    })
}
