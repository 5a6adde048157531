//! Filter products: finite index sets by reduction to filter quotients,
//! and Fréchet germs of eventually described sequences over ℕ.

pub mod product;
pub mod sequence;

pub use product::{finite_filter_product, indicator, indicators_match_powerset, strict_initial, FilterProduct, ProductError};
pub use sequence::{
    frechet_germ_eq, generators_verdict, inequivalent_family, internal_naturals, parse_tail, EventualSequence, Generator, Partition, SequenceParseError, Tail,
    Verdict,
};
