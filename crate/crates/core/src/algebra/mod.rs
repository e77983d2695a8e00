//! Exact arithmetic foundations.

mod abelian;
mod group;
mod matrix;
mod phase;
mod quadratic;

pub use abelian::{dual_group, Character, Element, FiniteAbelianGroup};
pub use group::{conjugacy_classes, FiniteGroup};
pub use matrix::{smith_decomposition, smith_normal_form, IntMatrix, SmithDecomposition};
pub use phase::Phase;
pub use quadratic::{bihomomorphism, Bihomomorphism, QuadraticForm};

/// Exact rational in the `a/b` form used by every serialised output
/// (integers included, e.g. `64/1`).
pub fn rational_string(x: &num_rational::BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}
