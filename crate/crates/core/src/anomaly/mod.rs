//! Arithmetic shadows of anomalies and higher-form symmetries: allowed
//! line operators from a quadratic form, minimal abelian TFT data, chiral
//! defect fusion, the θ = π Yang–Mills test, fractional instantons and the
//! Gauss sum behind self-duality.
//!
//! All phases are elements of ℚ/ℤ (`x` stands for `e^{2πi x}`).

mod anyons;
mod arith;
mod lines;

pub use anyons::{
    chiral_fuse, defect_quantum_dim, flux_projector_action, minimal_tft_data, Anyon, AnyonTable,
    ChiralAngle, ChiralFusion, MinimalTft,
};
pub use arith::{
    fractional_instanton, gauss_sum, gauss_sum_direct, gauss_sum_exact, ym_theta_pi_anomaly, GaussSum,
    YmVerdict,
};
pub use lines::{allowed_lines, LineLattice, LinePair, SubgroupEmbedding};
