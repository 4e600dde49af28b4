//! Covering numbers, minimum 2-covers, finite Minkowski dimension and
//! Steiner augmentation.

mod cover;
mod dimension;
pub mod setcover;
mod steiner;
mod two_cover;

pub use cover::{covering_number, CoverResult};
pub use dimension::{
    dim_fm, dim_fm_oracle, fractal_bound, minkowski_slope_estimate, trivial_dim_bound, DimResult,
    FractalBound,
};
pub use steiner::{check_steiner, steiner_augment, SteinerCheck, STEINER_RTOL};
pub use two_cover::{min_two_cover, TwoCover, TwoCoverResult};
