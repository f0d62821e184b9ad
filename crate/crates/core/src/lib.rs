//! Exact q-series arithmetic and the modular-form identities behind the
//! genus-0 Yau-Zaslow formula for K3 surfaces.
//!
//! Everything is computed over arbitrary-precision rationals. Series carry
//! their own truncation, so a coefficient is only ever reported when it is
//! known exactly.

pub mod bps;
pub mod error;
pub mod harvey_moore;
pub mod mirror;
pub mod modular;
pub mod noether_lefschetz;
pub mod rat;
pub mod report;
pub mod series;
pub mod weakly_holomorphic;

pub use error::SeriesError;
pub use rat::Rat;
pub use report::{Mismatch, Report};
pub use series::{BiSeries, LaurentSeries};
