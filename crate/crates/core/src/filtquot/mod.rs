//! Filters of subterminal objects and filter quotient categories.

pub mod filter;
pub mod germ;
pub mod induced;
pub mod preserve;
pub mod quotient;

pub use filter::{validate_filter, Filter, FilterReport, FilterViolation};
pub use germ::{Germ, GermContext, QuotientError};
pub use induced::{filter_image, induced_functor, restrict_filter, InducedError, QuotientSide};
pub use preserve::{check_preservation, germ_mono_characterization, verify_projection, GermMonoReport, GermMonoRow, ProjectionReport};
pub use quotient::{check_composition, filter_quotient, CompositionWitness, FilterQuotient};
