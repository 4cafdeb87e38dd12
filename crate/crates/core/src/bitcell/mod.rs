//! 1T1MTJ bitcell: access transistor, series operating point, and
//! process-variation Monte Carlo of write and read metrics.

pub mod analysis;
pub mod calibrate;
pub mod circuit;
pub mod report;
pub mod transistor;
pub mod variability;

pub use analysis::{
    read_analysis, read_analysis_at, write_analysis, write_energy, BitcellOptions, ReadAnalysis, ReadSample,
    WriteAnalysis, WriteSample,
};
pub use circuit::{
    forced_current_voltage, solve_bitcell, write_points, BitcellPoint, DmtjLoad, ReadPath, Resistor, SeriesLoad,
};
pub use report::{analyze_bitcell, export_bitcell_deck, samples_csv, BitcellReport, MramCellDeck};
pub use transistor::{Transistor, TransistorDeck, TransistorParams};
pub use variability::{ProcessSample, VariabilityDeck};

#[cfg(test)]
mod tests;
