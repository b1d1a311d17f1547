//! Edge-state analysis and entanglement-witness construction for the
//! one-parameter qutrit-qutrit PPT-entangled family.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function on immutable values:
//!
//! * [`linalg`]: dense complex operators on `C^dA ⊗ C^dB`, partial transpose,
//!   a cyclic Jacobi Hermitian eigensolver, null spaces and projectors.
//! * [`states`]: the state family `ρ_a`, product vectors and the closed-form
//!   kernel vectors.
//! * [`product_opt`]: minimisation of `⟨e,f|A|e,f⟩` over normalised product
//!   vectors (multistart see-saw) plus an independent sampling oracle.
//! * [`analysis`]: PPT checks, the product-vector subtraction test and the
//!   range-criterion feasibility objective.
//! * [`witness`]: `W = P + Q^{T_B} − εI`, its verification and the
//!   cross-check against the published matrix.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod analysis;
mod error;
pub mod linalg;
pub mod product_opt;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use linalg::{EigenDecomposition, KernelBasis, Operator, C64};
pub use product_opt::{OptimizerConfig, ProductMinResult};
pub use states::{ProductVector, StateParameter};
pub use witness::WitnessCertificate;

/// Version string echoed into serialized certificates.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
