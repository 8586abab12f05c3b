//! Covering/packing statistics, ε-neighbourhood volumes, Minkowski ratios,
//! box-dimension fits and density statistics of finite sets and measures.
//!
//! Covers use closed balls with centres in the set, and packings use balls
//! whose centres are more than `2ε` apart. With that pairing,
//! `Ñ(2ε) ≤ P(ε) ≤ Ñ(ε/2)` holds exactly for every finite set.

mod cloud;
mod covering;
mod density;
mod dimension;
mod interval;
mod series;
mod volume;

pub use cloud::{distance, within, PointCloud, ScaleSweep, TIE_REL};
pub use covering::{
    covering_number, covering_number_capped, packing_number, packing_number_capped,
    packing_premeasure_lower, Cover, Mode, Packing, PremeasureBound, DEFAULT_CAP, HARD_CAP,
};
pub use density::{
    ad_regularity_check, upper_density_estimate, DensityEstimate, RegularityReport,
    WeightedMeasure,
};
pub use dimension::{box_dimension_estimate, box_dimension_from_counts, CoverCount, DimensionFit};
pub use interval::{Interval, IntervalUnion};
pub use series::{Series, SeriesReport, SeriesRow};
pub use volume::{
    disc_union_area, eps_neighborhood_volume, minkowski_ratio_sweep, occupancy_grid_volume,
    MinkowskiSweep, SetRef, VolumeEstimate, VolumeMethod,
};
