//! Finite category theory engine.
//!
//! Filter quotients and filter products of finite categories, model
//! structures and their transfer along model filters, T-shapes data with
//! strict intervals, and truncated simplicial sets, all checked by
//! exhaustive search.

pub mod cli;
pub mod filterprod;
pub mod filtquot;
pub mod fincat;
pub mod model;
pub mod shapes;
pub mod sset;
