//! Cache-array estimator: organizes a capacity into mats and sub-arrays and
//! estimates latency, energy, leakage and area from Elmore RC models.

pub mod bench;
pub mod cell;
pub mod elmore;
pub mod estimate;
pub mod org;
pub mod tech;

pub use bench::{benchmark, BenchDecks, BenchRow, BenchTable};
pub use cell::{CellDeck, SramCellDeck};
pub use elmore::RcLadder;
pub use estimate::{estimate, ArrayEstimate, Breakdown};
pub use org::{candidates, organize, ArrayOrganization, Objective, WORD_BITS};
pub use tech::{CryoScaling, PeripheryDeck, TechnologyDeck};

#[cfg(test)]
mod tests;
