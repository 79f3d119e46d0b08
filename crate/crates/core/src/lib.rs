//! Trinomials `z^n + a z^m + b`: roots, Mahler measure, house bounds and
//! irreducibility over the rationals.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix `f64`. Factorization and the Schinzel conditions are exact over `BigInt`.

pub mod bounds;
pub mod factor;
pub mod mahler;
pub mod poly;
pub mod quad;
pub mod scalar;
pub mod special;

pub use scalar::Real;

pub type Trinomial = poly::TrinomialSpec<f64>;
pub type Trinomial32 = poly::TrinomialSpec<f32>;
pub type Form = poly::FamilyForm<f64>;
pub type Form32 = poly::FamilyForm<f32>;
pub type Roots = poly::RootSet<f64>;
pub type Measure = mahler::MeasureResult<f64>;
pub type Measure32 = mahler::MeasureResult<f32>;
pub type HouseBound = bounds::HouseBoundReport<f64>;
pub type Comparison = bounds::ComparisonBounds<f64>;
pub type Extremal = bounds::ExtremalityVerdict<f64>;
pub type Limit = mahler::LimitCase<f64>;
