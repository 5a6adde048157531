//! Truncated simplicial sets with exhaustive hom search.

pub mod complex;
pub mod discrete;
pub mod family;
pub mod hom;
pub mod sub;
pub mod unique;

pub use complex::*;
pub use discrete::*;
pub use family::*;
pub use hom::*;
pub use sub::*;
pub use unique::*;
