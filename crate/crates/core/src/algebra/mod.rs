//! Exact arithmetic in the presented *-algebras.

mod degree;
mod element;
mod presentation;
pub mod rewrite;
mod views;

pub use degree::MultiDegree;
pub use element::{Element, Monomial};
pub use presentation::{Order, PresetKind, Presentation};
pub use views::{degree_split, pbw_views, PbwViews};
