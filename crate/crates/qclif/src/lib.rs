//! Exact spinor-space machinery for quaternionic Clifford analysis.
//!
//! Everything is computed over the field Q(i)[√2] with arbitrary-precision
//! rationals, so the algebraic identities this crate is built around hold
//! with zero tolerance:
//!
//! - [`clifford`]: the sparse complex Clifford algebra ℂ_m, its geometric
//!   product, conjugations and Hermitian inner product;
//! - [`witt`]: Witt basis, primitive idempotent, and the concrete spinor
//!   space 𝕊 = ℂ⋀†_n I with its homogeneous parts 𝕊^r;
//! - [`structures`]: the complex structures I, J, K, the spin elements s_I,
//!   s_J and the double-cover checks;
//! - [`cells`]: the operators P, Q and the symplectic-cell decomposition of
//!   spinor space with exact projectors;
//! - [`fields`]: polynomial spinor-valued fields with real and Wirtinger
//!   partial derivatives;
//! - [`operators`]: the eight Dirac-type operators, their cell-split parts,
//!   and the realized Stein–Weiss gradient sets;
//! - [`systems`]: symbolic first-order PDE systems for cell-valued fields,
//!   exact polynomial kernels, and the main kernel-equality checks;
//! - [`verify`]: the full verification battery behind `qclif verify`.
//!
//! The `qclif` binary exposes the `verify`, `cells`, `system` and `check`
//! subcommands; the crate's `examples/` directory holds one runnable example
//! per capability.

pub mod cells;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod operators;
pub mod report;
pub mod scalar;
pub mod structures;
pub mod systems;
pub mod verify;
pub mod witt;

pub use clifford::{verify_quaternion_embeddings, Blade, Multivector};
pub use cells::{build_pq, CellBasis, CellTable};
pub use error::{Error, Result};
pub use fields::{Deriv, Monomial, PolyField};
pub use operators::{
    build_operator, monogenicity_report, split_apply, stein_weiss_set, OpName, OperatorSet,
    OperatorSpec, SplitSign,
};
pub use report::{Check, Report};
pub use scalar::{Rational, Scalar};
pub use structures::{double_cover_check, SpinElement, StructureKind, StructureMap};
pub use systems::{emit_system, kernel_on_degree, FirstOrderSystem, SystemOp};
pub use witt::{SpinorBasis, WittFrame};
