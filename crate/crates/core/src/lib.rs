//! Exact weight-two modular symbols, the decomposition of the squared
//! weight-one Eisenstein series at prime level `N ≡ 3 (mod 4)`, and
//! per-prime mu = lambda = 0 certificates built from it.

pub mod cache;
pub mod dirichlet;
pub mod eisenstein;
pub mod error;
pub mod exact;
pub mod iwasawa;
pub mod modsym;
pub mod rankin;
pub mod report;
pub mod selftest;

pub use cache::EigenformCache;
pub use dirichlet::{gauss_sum, l_value_at_zero, quadratic_character, DirichletCharacter};
pub use eisenstein::{weight1_eisenstein, weight2_eisenstein, EisensteinSeries};
pub use error::{Error, Result};
pub use exact::{CertifiedReal, NFElem, NumberField, QMatrix, QSeries, Rational, UniPoly};
pub use iwasawa::{certify, prime_scan, reduction_data, theorem1_bound, CurveInput, IwasawaCertificate, PrimeVerdict};
pub use modsym::{build_space, newform_decomposition, Eigenform, ModularSymbolSpace, Sign};
pub use rankin::{decompose, decompose_with, key_equality_check, rankin_product, verify_bounds, BoundReport, DecompositionResult};
pub use selftest::{run_selftest, SelftestReport};
