//! Finite-category workbench for path categories, display map categories and
//! axiomatic identity types.

pub mod cli;
pub mod constructions;
pub mod corpus;
pub mod correspondence;
pub mod dispcat;
pub mod error;
pub mod fincat;
pub mod format;
pub mod par;
pub mod pathcat;
pub mod report;
pub mod syntaxmodel;
pub mod typeformers;

pub use error::{Error, Result};
pub use fincat::{FiniteCategory, MorId, ObjId, PullbackWitness};
pub use report::{Finding, Node, Report};
