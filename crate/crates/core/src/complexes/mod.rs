//! Cell complexes, preset manifolds and cohomology with finite abelian
//! coefficients.
//!
//! Orientation data is not modelled: every quantity computed here is an
//! order or a count, which does not depend on it.

mod chain;
mod cohomology;
mod enumerate;
mod presets;

pub use chain::{ChainComplex, SubcomplexMap};
pub use cohomology::{
    apply_coboundary, cohomology, relative_cohomology, restrict, restriction_map, Cochain,
    CohomologyGroup, CohomologyMap,
};
pub use enumerate::{enumerate_cocycles, enumerate_relative_cocycles, CocycleEnumeration};
pub use presets::{
    circle, cylinder, disk, interval, klein, pants, point, preset, rp, sphere, surface, torus,
    ManifoldExpr, Space,
};
