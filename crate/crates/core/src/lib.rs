pub mod algebra;
pub mod error;
pub mod expr;
pub mod fraction;
pub mod poly;
pub mod rep;
pub mod scalar;
pub mod sohs;

pub use algebra::{Element, Monomial, MultiDegree, Presentation, PresetKind};
pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
