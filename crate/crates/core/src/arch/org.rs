//! Partitioning a capacity into mats and sub-arrays.

use serde::{Deserialize, Serialize};

use super::cell::CellDeck;
use super::estimate::{estimate, ArrayEstimate};
use super::tech::TechnologyDeck;
use crate::error::{Error, Result};
use crate::par::{map_slice, ExecPolicy};

/// Bits delivered per access.
pub const WORD_BITS: u64 = 512;
pub const MIN_CAPACITY_BYTES: u64 = 64 << 10;
pub const MAX_CAPACITY_BYTES: u64 = 8 << 20;
const MIN_DIM: u64 = 16;
const MAX_DIM: u64 = 1024;
const SUBARRAYS_PER_MAT: [u64; 3] = [1, 2, 4];
const BITLINE_MUX: [u64; 4] = [1, 2, 4, 8];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    /// Read latency.
    #[default]
    Latency,
    /// Read energy per access.
    Energy,
    /// Read latency times read energy.
    Edp,
}

impl Objective {
    pub fn score(self, e: &ArrayEstimate) -> f64 {
        match self {
            Objective::Latency => e.read_latency_s,
            Objective::Energy => e.read_energy_j,
            Objective::Edp => e.read_latency_s * e.read_energy_j,
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "latency" => Ok(Self::Latency),
            "energy" => Ok(Self::Energy),
            "edp" => Ok(Self::Edp),
            _ => Err(Error::Validation(format!("unknown objective '{s}' (latency, energy, edp)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayOrganization {
    pub capacity_bits: u64,
    pub word_bits: u64,
    pub banks: u64,
    pub mats_per_bank: u64,
    pub subarrays_per_mat: u64,
    pub rows: u64,
    pub cols: u64,
    /// Columns sharing one sense amplifier.
    pub mux_bitline: u64,
    /// Sense amplifier outputs sharing one sub-array output.
    pub mux_sense: u64,
    /// Sub-array outputs sharing one mat output.
    pub mux_output: u64,
}

impl ArrayOrganization {
    pub fn subarrays(&self) -> u64 {
        self.banks * self.mats_per_bank * self.subarrays_per_mat
    }

    /// Bits one active sub-array delivers.
    pub fn bits_per_subarray(&self) -> u64 {
        self.cols / (self.mux_bitline * self.mux_sense * self.mux_output)
    }

    /// Sub-arrays activated by one access.
    pub fn active_subarrays(&self) -> u64 {
        self.word_bits / self.bits_per_subarray()
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            ("banks", self.banks),
            ("mats_per_bank", self.mats_per_bank),
            ("subarrays_per_mat", self.subarrays_per_mat),
            ("rows", self.rows),
            ("cols", self.cols),
            ("mux_bitline", self.mux_bitline),
            ("mux_sense", self.mux_sense),
            ("mux_output", self.mux_output),
            ("word_bits", self.word_bits),
        ];
        for (name, v) in all {
            if !v.is_power_of_two() {
                return Err(Error::Config(format!("{name} = {v} must be a power of two")));
            }
        }
        if self.subarrays() * self.rows * self.cols != self.capacity_bits {
            return Err(Error::Config(format!(
                "partition {}x{}x{}x{}x{} does not hold {} bits",
                self.banks, self.mats_per_bank, self.subarrays_per_mat, self.rows, self.cols, self.capacity_bits
            )));
        }
        let muxed = self.mux_bitline * self.mux_sense * self.mux_output;
        if muxed > self.cols {
            return Err(Error::Config(format!("mux degree {muxed} exceeds {} columns", self.cols)));
        }
        let out = self.bits_per_subarray();
        if out > self.word_bits || self.word_bits / out > self.subarrays() {
            return Err(Error::Config(format!(
                "{} sub-arrays of {out} output bits cannot deliver a {}-bit word",
                self.subarrays(),
                self.word_bits
            )));
        }
        Ok(())
    }

    /// Same sub-array geometry at another capacity; the mat count absorbs
    /// the change.
    pub fn with_capacity_bits(&self, bits: u64) -> Result<Self> {
        let per_mat = self.subarrays_per_mat * self.rows * self.cols * self.banks;
        if bits % per_mat != 0 {
            return Err(Error::Config(format!("{bits} bits is not a whole number of mats")));
        }
        let o = Self { capacity_bits: bits, mats_per_bank: bits / per_mat, ..*self };
        o.validate()?;
        Ok(o)
    }
}

/// Every organization the search considers for `capacity_bytes`.
pub fn candidates(capacity_bytes: u64) -> Vec<ArrayOrganization> {
    let bits = capacity_bytes * 8;
    let dims: Vec<u64> = (0..).map(|k| MIN_DIM << k).take_while(|&d| d <= MAX_DIM).collect();
    let mut out = Vec::new();
    for &rows in &dims {
        for &cols in &dims {
            for &subs in &SUBARRAYS_PER_MAT {
                let per_mat = rows * cols * subs;
                if bits % per_mat != 0 {
                    continue;
                }
                for &mux in &BITLINE_MUX {
                    let o = ArrayOrganization {
                        capacity_bits: bits,
                        word_bits: WORD_BITS,
                        banks: 1,
                        mats_per_bank: bits / per_mat,
                        subarrays_per_mat: subs,
                        rows,
                        cols,
                        mux_bitline: mux,
                        mux_sense: 1,
                        mux_output: 1,
                    };
                    if o.validate().is_ok() {
                        out.push(o);
                    }
                }
            }
        }
    }
    out
}

/// Organization minimizing `objective`, with its estimate.
pub fn organize(
    capacity_bytes: u64,
    cell: &CellDeck,
    tech: &TechnologyDeck,
    objective: Objective,
    policy: ExecPolicy,
) -> Result<(ArrayOrganization, ArrayEstimate)> {
    if !(MIN_CAPACITY_BYTES..=MAX_CAPACITY_BYTES).contains(&capacity_bytes) {
        return Err(Error::Domain(format!(
            "capacity {capacity_bytes} B outside [{MIN_CAPACITY_BYTES}, {MAX_CAPACITY_BYTES}] B"
        )));
    }
    cell.validate()?;
    tech.validate()?;
    let cands = candidates(capacity_bytes);
    let scored = map_slice(policy, &cands, |o| estimate(o, cell, tech).map(|e| (objective.score(&e), e)));
    let mut best: Option<(f64, usize, ArrayEstimate)> = None;
    let mut last_err = None;
    for (k, r) in scored.into_iter().enumerate() {
        match r {
            Ok((s, e)) => {
                if best.as_ref().is_none_or(|b| s < b.0) {
                    best = Some((s, k, e));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match best {
        Some((_, k, e)) => Ok((cands[k], e)),
        None => Err(Error::Config(format!(
            "no feasible organization for {capacity_bytes} B of {}{}",
            cell.name(),
            last_err.map(|e| format!(": {e}")).unwrap_or_default()
        ))),
    }
}
