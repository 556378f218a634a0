//! Class 1 and Class 2 algebras, their elements, filtration slices and homomorphisms.

mod basis;
mod element;
mod hom;
mod mono;
mod spec;

pub use basis::{filtered_basis, slice_dimension, FilteredBasis};
pub use element::{ad_power, Degree, Element};
pub(crate) use element::check_same;
pub use hom::{hom_apply, Hom};
pub use mono::{monomials_of_degree, Mono};
pub use spec::{Algebra, AlgebraClass, AlgebraSpec, Terms};
