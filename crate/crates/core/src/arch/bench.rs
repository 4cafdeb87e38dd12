//! MRAM versus SRAM comparison across capacities.

use serde::{Deserialize, Serialize};

use super::cell::{CellDeck, SramCellDeck};
use super::estimate::ArrayEstimate;
use super::org::{organize, ArrayOrganization, Objective};
use super::tech::TechnologyDeck;
use crate::bitcell::MramCellDeck;
use crate::error::{Error, Result};
use crate::par::ExecPolicy;

/// Cell decks of the comparison. All three are required.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchDecks {
    pub mram40: Option<MramCellDeck>,
    pub mram13: Option<MramCellDeck>,
    pub sram: Option<SramCellDeck>,
}

impl BenchDecks {
    /// Published cell characteristics and the default SRAM cell.
    pub fn published() -> Self {
        Self {
            mram40: Some(MramCellDeck::published_40nm()),
            mram13: Some(MramCellDeck::published_13nm()),
            sram: Some(SramCellDeck::default()),
        }
    }

    fn cells(&self) -> Result<[CellDeck; 3]> {
        let missing = |n: &str| Error::Config(format!("benchmark needs the {n} deck"));
        Ok([
            CellDeck::Mram(self.mram40.clone().ok_or_else(|| missing("mram40"))?),
            CellDeck::Mram(self.mram13.clone().ok_or_else(|| missing("mram13"))?),
            CellDeck::Sram(self.sram.clone().ok_or_else(|| missing("sram baseline"))?),
        ])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub capacity: u64,
    pub metric: String,
    pub mram40: f64,
    pub mram13: f64,
    pub sram: f64,
    pub mram40_norm: f64,
    pub mram13_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchPoint {
    pub capacity: u64,
    pub cell: String,
    pub organization: ArrayOrganization,
    pub estimate: ArrayEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchTable {
    pub rows: Vec<BenchRow>,
    pub points: Vec<BenchPoint>,
}

pub const METRICS: [&str; 6] = [
    "read_latency_s",
    "write_latency_s",
    "read_energy_j",
    "write_energy_j",
    "leakage_w",
    "area_m2",
];

fn metric(e: &ArrayEstimate, name: &str) -> f64 {
    match name {
        "read_latency_s" => e.read_latency_s,
        "write_latency_s" => e.write_latency_s,
        "read_energy_j" => e.read_energy_j,
        "write_energy_j" => e.write_energy_j,
        "leakage_w" => e.leakage_w,
        _ => e.area_m2,
    }
}

/// Organize and estimate every deck at every capacity (bytes).
pub fn benchmark(
    capacities: &[u64],
    decks: &BenchDecks,
    tech: &TechnologyDeck,
    objective: Objective,
    policy: ExecPolicy,
) -> Result<BenchTable> {
    let cells = decks.cells()?;
    if capacities.is_empty() {
        return Err(Error::Validation("benchmark needs at least one capacity".into()));
    }
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for &cap in capacities {
        let mut est = Vec::with_capacity(3);
        for cell in &cells {
            let (organization, estimate) = organize(cap, cell, tech, objective, policy)?;
            points.push(BenchPoint { capacity: cap, cell: cell.name().into(), organization, estimate });
            est.push(estimate);
        }
        for m in METRICS {
            let [a, b, s] = [metric(&est[0], m), metric(&est[1], m), metric(&est[2], m)];
            rows.push(BenchRow {
                capacity: cap,
                metric: m.into(),
                mram40: a,
                mram13: b,
                sram: s,
                mram40_norm: a / s,
                mram13_norm: b / s,
            });
        }
    }
    Ok(BenchTable { rows, points })
}

impl BenchTable {
    pub fn rows_for<'a>(&'a self, metric: &'a str) -> impl Iterator<Item = &'a BenchRow> + 'a {
        self.rows.iter().filter(move |r| r.metric == metric)
    }

    pub fn to_csv(&self) -> Result<String> {
        let err = |e: csv::Error| Error::Validation(format!("csv: {e}"));
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Validation(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Validation(e.to_string()))
    }
}

/// Capacities from `lo` to `hi` bytes in powers of two.
pub fn capacity_range(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if !(lo.is_power_of_two() && hi.is_power_of_two() && lo <= hi) {
        return Err(Error::Validation(format!("capacity range {lo}..{hi} must be powers of two, ascending")));
    }
    Ok((0..).map(|k| lo << k).take_while(|&c| c <= hi).collect())
}
