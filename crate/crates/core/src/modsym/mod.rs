//! Weight-2 modular symbols of prime level: Manin-symbol presentation,
//! Hecke operators, newform orbits and winding elements.

pub mod heilbronn;
pub mod newform;
pub mod p1;
pub mod space;
pub mod winding;

pub use newform::{
    default_table_bound, eigenform_qexp, extend_rational_eigenvalues, newform_decomposition,
    newform_decomposition_to, sturm_bound, Eigenform,
};
pub use p1::{P1Element, P1List};
pub use space::{build_space, genus_x0_prime, ModularSymbolSpace, Sign};
pub use winding::twisted_winding_ratio;
