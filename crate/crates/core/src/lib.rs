//! Exact construction, classification and counting of sum-free subsets of
//! finite abelian groups, with brute-force oracles for every structural
//! statement the crate computes.

pub mod arith;
pub mod classification;
pub mod config;
pub mod counting;
pub mod error;
pub mod group;
pub mod orbits;
pub mod sumfree;
pub mod verify;

pub use config::{Ctx, Exec, Guards};
pub use error::{Error, Result};
pub use group::{FinAbGroup, GroupSubset, GroupType, Subgroup};
