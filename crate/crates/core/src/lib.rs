//! Decision procedures for finite semirings and their semimodules.

pub mod algebra;
pub mod auditor;
pub mod bitset;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod homs;
pub mod limits;
pub mod projinj;
pub mod semisimple;
pub mod summands;

pub use algebra::{Monoid, Partition, Semimodule, Semiring};
pub use bitset::ElemSet;
pub use error::{Error, Result};
pub use limits::{Enumerated, Limits, Search};
