//! Finite-torus analogues of the translation-span theorems: DFT zero sets,
//! exact span dimensions, annihilators, spherical zero radii, the
//! dimension-driven `p`-interval verdicts, and the angular reduction of
//! functions on `ℂ × S¹`.

mod angular;
mod grid;
mod span;
mod spherical;
mod verdict;

pub use angular::{angular_decompose, radial_pair_check, rotational_component, AngularFamily, AngularSamples, PairResidual};
pub use grid::GridFunction;
pub use span::{
    annihilator_residual, circulant_rank, dft_zero_set, span_dimension_oracle, Annihilator, ZeroSet, DEFAULT_REL_TOL,
};
pub use spherical::{spherical_zero_radii, SphericalZeroSet};
pub use verdict::{verdict, DensityVerdict, DimensionInput, PInterval, RowStatus, VerdictRow, ZeroData};
