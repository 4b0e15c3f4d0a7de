//! Executable compendium of subset-search-problem reductions.
//!
//! Problems expose a canonical universe and a solution set over it; reductions
//! carry a transform, an element embedding and optional solution lifting, and
//! the verifier checks the SSP and SPR properties extensionally on small
//! instances.

pub mod cli;
pub mod compendium;
pub mod error;
pub mod formats;
pub mod model;
pub mod problems;
pub mod reductions;
pub mod verifier;

pub use error::{Error, Result};
pub use model::{Budget, Element, Solution, SolutionSet, Universe};
pub use problems::{Instance, Payload, ProblemId};
