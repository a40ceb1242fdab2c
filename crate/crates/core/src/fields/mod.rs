//! Exact arithmetic in `Q`, `Q(i)`, `Q(t)`, `Q(i)(t)` and a Hahn field over `Q`.

pub mod coeff;
pub mod element;
pub mod hahn_series;
pub mod parse;
pub mod place;
pub mod poly;
pub mod ratfunc;

pub use coeff::{int, rat, Gaussian, Rational};
pub use element::{FieldElement, FieldId};
pub use hahn_series::HahnSeries;
pub use parse::parse_element;
pub use place::{Place, PlaceKind, ValueOrInf};
