//! Model structures on finite categories and their transfer to filter quotients.

pub mod class;
pub mod lifting;
pub mod structure;
pub mod transfer;

pub use class::{ClassError, ClassSpec, MorphismClass};
pub use lifting::{factor, has_lift, lifting_failure, lifts, verify_wfs, LiftError, LiftingWitness, Square, WfsReport};
pub use structure::{right_properness_failures, two_of_three, verify_model_structure, ModelReport, ModelStructure, TwoOfThreeWitness};
pub use transfer::{
    times_subterminal, transfer_class, transfer_model_structure, validate_model_filter, ModelFilterReport, StabilityWitness, TransferError, TransferredModel,
};
