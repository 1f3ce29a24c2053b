//! Search bounds and exhaustiveness markers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource bounds shared by every enumeration and search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of items any single enumeration may return.
    pub max_results: usize,
    /// Maximum search nodes for backtracking searches (Hom sets, isomorphisms).
    pub max_steps: u64,
    /// Largest carrier a derived construction (sums, matrices, End) may build.
    pub max_carrier: usize,
    /// Largest bounded test family used to stand in for "every semimodule".
    pub max_family: usize,
    /// Largest order the semiring enumerator accepts.
    pub max_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_results: 200_000, max_steps: 50_000_000, max_carrier: 256, max_family: 400, max_order: 4 }
    }
}

impl Limits {
    /// Applies a `key=value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::InvalidParameters(format!("limit {key} needs a positive integer, got {value:?}"));
        let v: u64 = value.parse().map_err(|_| bad())?;
        if v == 0 {
            return Err(bad());
        }
        match key {
            "max_results" => self.max_results = v as usize,
            "max_steps" => self.max_steps = v,
            "max_carrier" => self.max_carrier = v as usize,
            "max_family" => self.max_family = v as usize,
            "max_order" => self.max_order = v as usize,
            _ => return Err(Error::InvalidParameters(format!("unknown limit {key:?}"))),
        }
        Ok(())
    }
}

/// Result list of an enumeration, with an explicit completeness marker.
///
/// A non-exhaustive list must never be used to claim that some object is
/// the *only* one of its kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumerated<T> {
    pub items: Vec<T>,
    pub exhaustive: bool,
}

impl<T> Enumerated<T> {
    pub fn complete(items: Vec<T>) -> Self {
        Enumerated { items, exhaustive: true }
    }

    /// Errors with `LimitExceeded` unless the list is exhaustive.
    pub fn require_exhaustive(self, what: &str) -> Result<Vec<T>> {
        if self.exhaustive {
            Ok(self.items)
        } else {
            Err(Error::LimitExceeded(format!("{what}: enumeration truncated at {} items", self.items.len())))
        }
    }
}

/// Outcome of an existence search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search<T> {
    /// Found, with witness.
    Present(T),
    /// Exhaustive search found nothing.
    Absent,
    /// The search hit a limit before deciding.
    Unknown,
}

impl<T> Search<T> {
    pub fn is_present(&self) -> bool {
        matches!(self, Search::Present(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Search::Absent)
    }

    pub fn witness(&self) -> Option<&T> {
        match self {
            Search::Present(w) => Some(w),
            _ => None,
        }
    }

    /// `Some(true)` present, `Some(false)` absent, `None` unknown.
    pub fn decided(&self) -> Option<bool> {
        match self {
            Search::Present(_) => Some(true),
            Search::Absent => Some(false),
            Search::Unknown => None,
        }
    }
}
