//! Exact computations for finite-symmetry topological field theories.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: integer matrices with Smith normal form, finite abelian
//!   groups and their characters, finite groups as Cayley tables, and
//!   quadratic refinements with values in ℚ/ℤ.
//! * [`complexes`]: finite cell complexes, preset manifolds, products and
//!   (relative) cohomology with finite abelian coefficients.
//! * [`pathintegral`]: groupoid-cardinality partition functions for targets
//!   `BG` and `BⁿA`.
//! * [`tqft2d`]: the functorial two-dimensional finite gauge theory.
//! * [`fusion`]: fusion rings, Perron–Frobenius dimensions and obstructions.
//! * [`anomaly`]: line-defect lattices, minimal abelian TFT data and anomaly
//!   arithmetic.
//! * [`ising`]: the square-lattice Ising model, transfer matrices and
//!   Kramers–Wannier duality.
//!
//! Everything that lives in ℤ, ℚ or ℚ/ℤ is computed exactly. Floating point
//! appears only for Perron–Frobenius dimensions, quantum dimensions, complex
//! Gauss sums and Ising Boltzmann weights.

pub mod algebra;
pub mod anomaly;
pub mod complexes;
pub mod error;
pub mod fusion;
pub mod ising;
pub mod limits;
pub mod pathintegral;
pub mod tqft2d;

pub use error::{Error, Result};
pub use limits::Limits;
