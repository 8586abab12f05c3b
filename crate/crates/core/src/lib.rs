//! Numerical toolkit for fractal supports of Fourier transforms.
//!
//! * [`geometry`]: covering and packing numbers, ε-neighbourhood volumes,
//!   Minkowski ratios, box dimension and density statistics.
//! * [`fractal`]: exact Cantor/Salem level sets, their natural measures and
//!   Cartesian products.
//! * [`fourier`]: Fourier transforms of Cantor measures via infinite
//!   products, annulus L^q diagnostics and the mollifier machinery
//!   (`a_j`, `b_j^ε`, `u_ε`).
//! * [`tauberian`]: discrete-torus Wiener–Tauberian experiments and
//!   density verdict tables.

pub mod error;
pub mod fourier;
pub mod fractal;
pub mod geometry;
pub mod numeric;
pub mod rational;
pub mod tauberian;

pub use error::{Error, Result};
pub use rational::Rational;
