//! Fourier side: product-formula transforms of Cantor measures, annulus
//! `L^q` diagnostics, and the bump/mollifier quantities `a_j`, `b_j^ε`.
//!
//! Measures are transformed without a normalising constant, so that
//! `ν̂(0) = 1`. Functions (the bump `χ`) use `(2π)^{−n/2} ∫ f e^{−ix·t}`.

mod annulus;
mod bump;
mod cantor;
mod mollifier;
mod pairing;

pub use annulus::{lq_annulus_diagnostics, AnnulusReport, OctaveRow, SpectralGrid, Spectrum, Trend, TREND_THRESHOLD};
pub use bump::{bump_profile, BumpFunction, DyadicProfile, SAMPLES_PER_OCTAVE};
pub use cantor::{cantor_fourier, product_measure_fourier, spectral_csv, CantorTransform, SpectralValue};
pub use mollifier::{mollifier_sum, MollifierFlags, MollifierSweep, RadialField};
pub use pairing::{mollified_pairing, Pairing, TestBump};
