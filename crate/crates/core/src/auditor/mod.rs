//! Exhaustive auditing of implication chains and equivalence theorems over
//! small semirings.

pub mod claims;
pub mod corpus;
pub mod enumerate;
pub mod fixtures;

pub use claims::{audit_instance, Record, Verdict};
pub use corpus::{audit_corpus, CorpusConfig, CorpusReport};
pub use enumerate::{canonical_form, canonicalize, enumerate_semirings};
