//! Memory cells seen by the array estimator.

use serde::{Deserialize, Serialize};

use crate::bitcell::MramCellDeck;
use crate::error::{Error, Result};

/// 6T SRAM cell. Widths are in multiples of the minimum transistor width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SramCellDeck {
    pub name: String,
    pub cell_area_f2: f64,
    /// Gate width of each of the two access devices.
    pub access_width: f64,
    /// Effective width of the access and pull-down stack on a read.
    pub read_width: f64,
    /// Total off width between the rails of a holding cell.
    pub leakage_width: f64,
    /// Bitline differential developed before sensing.
    pub read_swing_v: f64,
    /// Cell flip time after the bitlines are driven, in FO4 delays.
    pub flip_fo4: f64,
}

impl Default for SramCellDeck {
    fn default() -> Self {
        Self {
            name: "sram6t".into(),
            cell_area_f2: 150.0,
            access_width: 1.5,
            read_width: 1.0,
            leakage_width: 4.0,
            read_swing_v: 0.1,
            flip_fo4: 2.0,
        }
    }
}

impl SramCellDeck {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("cell_area_f2", self.cell_area_f2),
            ("access_width", self.access_width),
            ("read_width", self.read_width),
            ("read_swing_v", self.read_swing_v),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{}: {name} = {v} must be positive", self.name)));
            }
        }
        if !(self.leakage_width >= 0.0) || !(self.flip_fo4 >= 0.0) {
            return Err(Error::Config(format!("{}: leakage_width and flip_fo4 must be >= 0", self.name)));
        }
        Ok(())
    }
}

/// Any cell the estimator can organize into an array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "cell", rename_all = "lowercase")]
pub enum CellDeck {
    Sram(SramCellDeck),
    Mram(MramCellDeck),
}

impl CellDeck {
    pub fn name(&self) -> &str {
        match self {
            CellDeck::Sram(c) => &c.name,
            CellDeck::Mram(c) => &c.name,
        }
    }

    pub fn area_f2(&self) -> f64 {
        match self {
            CellDeck::Sram(c) => c.cell_area_f2,
            CellDeck::Mram(c) => c.cell_area_f2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CellDeck::Sram(c) => c.validate(),
            CellDeck::Mram(c) => c.validate(),
        }
    }

    /// Gate width each cell hangs on its word line.
    pub fn wordline_width(&self) -> f64 {
        match self {
            CellDeck::Sram(c) => 2.0 * c.access_width,
            CellDeck::Mram(_) => MRAM_ACCESS_WIDTH,
        }
    }

    /// Drain width each cell hangs on its bit line.
    pub fn bitline_width(&self) -> f64 {
        match self {
            CellDeck::Sram(c) => c.access_width,
            CellDeck::Mram(_) => MRAM_ACCESS_WIDTH,
        }
    }
}

/// The MRAM access device is minimum width.
pub const MRAM_ACCESS_WIDTH: f64 = 1.0;
