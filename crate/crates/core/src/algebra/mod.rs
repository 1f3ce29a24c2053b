//! Finite semirings, semimodules, substructures and congruences.

pub mod monoid;
pub mod partition;
pub mod semimodule;
pub mod semiring;
pub mod text;

pub use monoid::Monoid;
pub use partition::Partition;
pub use semimodule::Semimodule;
pub use semiring::Semiring;
