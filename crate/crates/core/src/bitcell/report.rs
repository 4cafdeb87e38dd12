//! Bitcell summary and the cell deck handed to the array estimator.

use serde::{Deserialize, Serialize};

use super::analysis::{read_analysis, write_analysis, BitcellOptions, ReadAnalysis, WriteAnalysis};
use super::transistor::TransistorDeck;
use crate::device::DeviceDeck;
use crate::error::{Error, Result};

/// Write and read figures of one bitcell design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BitcellReport {
    pub name: String,
    pub temperature_k: f64,
    pub trials: usize,
    pub seed: u64,
    pub supply_v: f64,
    pub i_write_lh_a: f64,
    pub i_write_hl_a: f64,
    pub t_p_nominal_s: f64,
    pub t_p_median_s: f64,
    pub t_p_6sigma_s: f64,
    pub t_p_max_s: f64,
    pub write_energy_avg_j: f64,
    pub write_failures: usize,
    pub i_read_a: f64,
    pub read_power_w: f64,
    pub v_sm_nominal_v: f64,
    pub v_sm_3sigma_v: f64,
    pub sense_failure: bool,
    pub lrs_eff_ohm: f64,
    pub hrs_eff_ohm: f64,
}

impl BitcellReport {
    pub fn new(name: &str, opts: &BitcellOptions, w: &WriteAnalysis, r: &ReadAnalysis) -> Self {
        Self {
            name: name.to_string(),
            temperature_k: opts.temperature_k,
            trials: opts.trials,
            seed: opts.variability.rng_seed,
            supply_v: w.supply_v,
            i_write_lh_a: w.nominal_i_lh_a,
            i_write_hl_a: w.nominal_i_hl_a,
            t_p_nominal_s: w.nominal_t_p_s,
            t_p_median_s: w.t_p_median_s,
            t_p_6sigma_s: w.t_p_6sigma_s,
            t_p_max_s: w.t_p_max_s,
            write_energy_avg_j: w.write_energy_avg_j,
            write_failures: w.failures,
            i_read_a: r.i_read_a,
            read_power_w: r.read_power_w,
            v_sm_nominal_v: r.v_sm_nominal_v,
            v_sm_3sigma_v: r.v_sm_3sigma_v,
            sense_failure: r.sense_failure,
            lrs_eff_ohm: r.lrs_eff_ohm,
            hrs_eff_ohm: r.hrs_eff_ohm,
        }
    }
}

/// Full write and read analysis of one cell design.
pub fn analyze_bitcell(
    deck: &DeviceDeck,
    trdeck: &TransistorDeck,
    opts: &BitcellOptions,
) -> Result<(BitcellReport, WriteAnalysis, ReadAnalysis)> {
    let w = write_analysis(deck, trdeck, opts)?;
    let r = read_analysis(deck, trdeck, opts)?;
    Ok((BitcellReport::new(&deck.name, opts, &w, &r), w, r))
}

fn default_cell_area() -> f64 {
    30.0
}

/// Electrical description of an MRAM cell for the array estimator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MramCellDeck {
    pub name: String,
    pub supply_v: f64,
    pub i_write_a: f64,
    pub t_write_pulse_s: f64,
    pub write_energy_j: f64,
    pub i_read_a: f64,
    pub v_sense_margin_v: f64,
    pub r_low_ohm: f64,
    pub r_high_ohm: f64,
    #[serde(default = "default_cell_area")]
    pub cell_area_f2: f64,
}

impl MramCellDeck {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("supply_v", self.supply_v),
            ("i_write_a", self.i_write_a),
            ("t_write_pulse_s", self.t_write_pulse_s),
            ("write_energy_j", self.write_energy_j),
            ("i_read_a", self.i_read_a),
            ("v_sense_margin_v", self.v_sense_margin_v),
            ("r_low_ohm", self.r_low_ohm),
            ("r_high_ohm", self.r_high_ohm),
            ("cell_area_f2", self.cell_area_f2),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Validation(format!("cell deck {}: {name} = {v} must be positive", self.name)));
            }
        }
        if self.r_high_ohm <= self.r_low_ohm {
            return Err(Error::Validation(format!("cell deck {}: r_high_ohm must exceed r_low_ohm", self.name)));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: Self = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: "<cell deck>".into(),
            message: format!("line {}, column {}: {e}", e.line(), e.column()),
        })?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Validation(e.to_string()))
    }

    /// Published 77 K characteristics of the 40 nm cell.
    pub fn published_40nm() -> Self {
        Self::published("dmtj40", 54.9e-6, 92.6e-6, 4.71e-9, 393e-15, 14.6e-6, 146.3e-3, 8.3e3, 18.3e3)
    }

    /// Published 77 K characteristics of the 13 nm cell.
    pub fn published_13nm() -> Self {
        Self::published("dmtj13", 26.0e-6, 44.8e-6, 0.75e-9, 33.0e-15, 1.91e-6, 68.0e-3, 20.8e3, 56.1e3)
    }

    #[allow(clippy::too_many_arguments)]
    fn published(name: &str, lh: f64, hl: f64, tp: f64, e: f64, ir: f64, vsm: f64, rl: f64, rh: f64) -> Self {
        Self {
            name: name.into(),
            supply_v: 1.2,
            i_write_a: lh.max(hl),
            t_write_pulse_s: tp,
            write_energy_j: e,
            i_read_a: ir,
            v_sense_margin_v: vsm,
            r_low_ohm: rl,
            r_high_ohm: rh,
            cell_area_f2: default_cell_area(),
        }
    }
}

/// Cell deck for the array estimator from a complete report.
pub fn export_bitcell_deck(r: &BitcellReport) -> Result<MramCellDeck> {
    if r.sense_failure {
        return Err(Error::Validation(format!(
            "{}: 3-sigma sensing margin {:e} V is not positive",
            r.name, r.v_sm_3sigma_v
        )));
    }
    let d = MramCellDeck {
        name: r.name.clone(),
        supply_v: r.supply_v,
        i_write_a: r.i_write_lh_a.max(r.i_write_hl_a),
        t_write_pulse_s: r.t_p_6sigma_s,
        write_energy_j: r.write_energy_avg_j,
        i_read_a: r.i_read_a,
        v_sense_margin_v: r.v_sm_nominal_v,
        r_low_ohm: r.lrs_eff_ohm,
        r_high_ohm: r.hrs_eff_ohm,
        cell_area_f2: default_cell_area(),
    };
    d.validate()?;
    Ok(d)
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Validation(format!("csv: {e}"))
}

/// One row per MC sample: process deviations, write currents, pulse and
/// read voltages.
pub fn samples_csv(w: &WriteAnalysis, r: &ReadAnalysis) -> Result<String> {
    if w.samples.len() != r.samples.len() {
        return Err(Error::Validation("write and read sample counts differ".into()));
    }
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record([
        "trial", "area_factor", "dt_fl_nm", "dt_ox_top_nm", "dt_ox_bottom_nm", "dvth_mv",
        "i_lh_ua", "i_hl_ua", "t_p_ns", "v_lrs_mv", "v_hrs_mv",
    ])
    .map_err(csv_err)?;
    for (ws, rs) in w.samples.iter().zip(&r.samples) {
        let p = &ws.process;
        out.write_record([
            p.index.to_string(),
            format!("{:e}", p.area_factor),
            format!("{:e}", p.dt_fl_m * 1e9),
            format!("{:e}", p.dt_top_m * 1e9),
            format!("{:e}", p.dt_bottom_m * 1e9),
            format!("{:e}", p.dvth_v * 1e3),
            format!("{:e}", ws.i_lh_a * 1e6),
            format!("{:e}", ws.i_hl_a * 1e6),
            ws.t_p_s.map(|t| format!("{:e}", t * 1e9)).unwrap_or_default(),
            format!("{:e}", rs.v_lrs_v * 1e3),
            format!("{:e}", rs.v_hrs_v * 1e3),
        ])
        .map_err(csv_err)?;
    }
    String::from_utf8(out.into_inner().map_err(csv_err)?).map_err(csv_err)
}
