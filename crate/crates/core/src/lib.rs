//! Spectral theory of quasi-linear operators over Cayley-Dickson algebras.
//!
//! * [`cdnum`]: the algebras `A_v` of dimension `2^v` and their arithmetic.
//! * [`identities`]: randomized identity checks per level.
//! * [`hmodule`]: the module `A_v^n` with its algebra-valued inner product.
//! * [`qlop`]: ℝ-linear operators on `A_v^n`, adjoints, projections.
//! * [`spectral`]: graded resolutions of the identity and spectra.
//! * [`funcalc`]: functional calculus through spectral measures.
//! * [`diagmodel`]: unbounded diagonal operators on `ℓ²(A_v)`.

pub mod cdnum;
pub mod diagmodel;
pub mod error;
pub mod funcalc;
pub mod hmodule;
pub mod identities;
pub mod linalg;
pub mod qlop;
pub mod random;
pub mod spectral;

pub use cdnum::CdNumber;
pub use error::{Error, Result};
pub use hmodule::ModuleVector;
pub use qlop::{CdMatrixOperator, QlOperator};
