//! Cohen-Macaulay tests for posets of dimension at most two and for
//! permutation graphs.
//!
//! The combinatorial layer criterion decides the question for dimension-two
//! posets; positive answers come with an explicit shelling order, and an exact
//! homology oracle (links of every face) checks verdicts independently.

pub mod cli;
pub mod cm;
pub mod error;
pub mod perm;
pub mod poset;
pub mod shelling;
pub mod topology;

pub use cm::{decide_cm, CmVerdict, DimensionClass};
pub use error::{Error, Result};
pub use perm::{Graph, Permutation};
pub use poset::{Chain, HeightProfile, Poset};
pub use shelling::ChainOrder;
pub use topology::{Field, SimplicialComplex};
