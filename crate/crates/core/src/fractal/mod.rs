//! Exact Cantor/Salem level sets, natural measures and Cartesian products.
//!
//! Level `K_j` consists of `N^j` closed intervals of length
//! `L_j = η_1 ⋯ η_j`; every level-`(j−1)` interval `[s, s + L_{j−1}]`
//! has children `[s + a_k L_{j−1}, s + a_k L_{j−1} + L_j]`.

mod level;
mod measure;
mod params;
mod product;
mod sampler;

pub use level::{
    build_level, cantor_minkowski_ratio, level_starts_f64, limit_neighborhood_volume,
    limit_neighborhood_volume_f64, CantorLevel, LimitVolume, MAX_MEMBERS, MAX_RATIONAL_LEVEL,
};
pub use measure::{natural_measure, CantorMeasure};
pub use params::{CantorParams, EtaRule, ValidationReport, Violation, BETA_TOLERANCE};
pub use product::{product_measure, product_neighborhood_bounds, ProductSet, PRODUCT_BUDGET};
pub use sampler::{sample_salem_points, REJECTION_BUDGET};
