//! Temperature-aware modeling of double-barrier MTJ STT-MRAM, from material
//! laws up to cache arrays.
//!
//! The crate is layered bottom-up:
//!
//! - [`material`]: temperature laws for polarization, magnetization and anisotropy
//! - [`device`]: two-barrier conductance, critical current and thermal stability
//! - [`switching`]: macrospin Monte Carlo, analytic write-error tails, read disturb
//! - [`bitcell`]: 1T1MTJ operating points and process-variation Monte Carlo
//! - [`arch`]: array organization and latency/energy/leakage estimates
//!
//! Monte Carlo loops run on rayon when the `parallel` feature is on (default).
//! Results do not depend on the thread count; see [`par`] and [`rng`].

pub mod arch;
pub mod bitcell;
pub mod constants;
pub mod deck;
pub mod device;
pub mod error;
pub mod material;
pub mod numeric;
pub mod par;
pub mod rng;
pub mod stats;
pub mod switching;

pub use constants::{PhysicalConstants, CODATA};
pub use error::{Error, ErrorKind, Result};
pub use material::MaterialDeck;
pub use par::ExecPolicy;
