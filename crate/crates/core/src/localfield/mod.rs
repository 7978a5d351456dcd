//! Local fields at the infinite place: precision-tracked Laurent series
//! and base-q digit expansions of p-adic exponents.

pub mod digits;
pub mod series;

pub use digits::{PAdicDigits, Tail};
pub use series::{
    bracket, one_unit_power, LaurentSeries, LocalFieldDescriptor, DEFAULT_REL_PREC,
};
