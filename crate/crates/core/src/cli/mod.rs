//! The `germcat` command line: workspace documents, resolution and checks.

pub mod doc;
pub mod gallery;
pub mod run;
pub mod workspace;

pub use doc::*;
pub use gallery::*;
pub use run::*;
pub use workspace::*;
