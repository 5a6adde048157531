//! Fibered theories over a base category, their models in monos, and
//! quotients of the whole package by filters.

pub mod fibration;
pub mod quotient;
pub mod theory;
pub mod tope;
pub mod tuple;

pub use fibration::*;
pub use quotient::*;
pub use theory::*;
pub use tope::*;
pub use tuple::*;
