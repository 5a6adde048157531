//! Finite categories and exhaustive universal-property computations.

pub mod builtins;
pub mod category;
pub mod functor;
pub mod limits;
pub mod poset;
pub mod props;
pub mod validate;

pub use category::{ArrowInfo, Category, FiniteCategory, Obj, PowerInfo, Product};
pub use functor::{find_equivalence, Equivalence, Functor, FunctorViolation};
pub use limits::{colimit, limit, Cone, Diagram, Op, Shape};
pub use poset::FinitePoset;
pub use props::{exponential, is_epi, is_iso, is_mono, subobject_classifier, subterminal_poset, Exponential, SubobjectClassifier, SubterminalPoset};
pub use validate::{validate_category, RawCategory, ValidationReport, Violation};
