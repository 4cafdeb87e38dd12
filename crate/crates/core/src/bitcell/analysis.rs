//! Monte Carlo write and read analysis of a bitcell population.

use serde::{Deserialize, Serialize};

use super::circuit::{forced_current_voltage, write_points, DmtjLoad, ReadPath};
use super::transistor::{Transistor, TransistorDeck};
use super::variability::{ProcessSample, VariabilityDeck};
use crate::device::{DeviceDeck, ResistanceState};
use crate::error::{Error, Result};
use crate::par::{try_map_range, ExecPolicy};
use crate::stats::{self, GaussianFit};
use crate::switching::{
    max_read_current, worst_case_pulse, ActivationModel, PulseOptions, SwitchingDevice,
};

/// Settings shared by the write and read analyses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BitcellOptions {
    pub temperature_k: f64,
    pub wer_target: f64,
    pub rdr_target: f64,
    pub t_read_s: f64,
    pub read_path: ReadPath,
    pub trials: usize,
    pub variability: VariabilityDeck,
    pub pulse: PulseOptions,
    pub policy: ExecPolicy,
}

impl Default for BitcellOptions {
    fn default() -> Self {
        Self {
            temperature_k: 77.0,
            wer_target: 1e-7,
            rdr_target: 1e-9,
            t_read_s: 1e-9,
            read_path: ReadPath::default(),
            trials: 10_000,
            variability: VariabilityDeck::default(),
            pulse: PulseOptions::default(),
            policy: ExecPolicy::default(),
        }
    }
}

impl BitcellOptions {
    pub fn validate(&self) -> Result<()> {
        self.variability.validate()?;
        if self.trials == 0 {
            return Err(Error::Validation("bitcell analysis needs at least one trial".into()));
        }
        if !(self.t_read_s > 0.0) {
            return Err(Error::Validation(format!("read pulse {} s must be positive", self.t_read_s)));
        }
        Ok(())
    }

    fn activation(&self) -> &ActivationModel {
        &self.pulse.activation
    }
}

/// One MC sample of the write analysis. `t_p_s` is `None` when the cell
/// cannot reach the error-rate target within the pulse budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WriteSample {
    pub process: ProcessSample,
    pub i_lh_a: f64,
    pub i_hl_a: f64,
    pub t_p_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WriteAnalysis {
    pub supply_v: f64,
    pub nominal_i_lh_a: f64,
    pub nominal_i_hl_a: f64,
    pub nominal_t_p_s: f64,
    pub fit: GaussianFit,
    pub t_p_median_s: f64,
    pub t_p_6sigma_s: f64,
    pub t_p_max_s: f64,
    /// Mean over samples of `V * (I_lh + I_hl) / 2 * t_p_6sigma`.
    pub write_energy_avg_j: f64,
    pub failures: usize,
    pub samples: Vec<WriteSample>,
}

struct Cell {
    deck: DeviceDeck,
    tr: Transistor,
}

fn nominal_and_samples<'a>(
    deck: &'a DeviceDeck,
    trdeck: &TransistorDeck,
    opts: &BitcellOptions,
) -> Result<(Cell, impl Fn(usize) -> (ProcessSample, Cell) + Sync + Send + 'a)> {
    opts.validate()?;
    deck.validate()?;
    trdeck.validate()?;
    let tr = trdeck.at(opts.temperature_k)?;
    let var = opts.variability;
    let nominal = Cell { deck: deck.clone(), tr };
    let draw = move |k: usize| {
        let s = var.sample(deck, k as u64);
        let (deck, tr) = s.apply(deck, &tr);
        (s, Cell { deck, tr })
    };
    Ok((nominal, draw))
}

fn write_cell(cell: &Cell, opts: &BitcellOptions) -> Result<(f64, f64, Option<f64>)> {
    let t = opts.temperature_k;
    let (lh, hl) = write_points(&cell.deck, &cell.tr, t)?;
    let dev = SwitchingDevice::from_deck(&cell.deck, t)?;
    let tp = match worst_case_pulse(&dev, lh.i_cell_a, hl.i_cell_a, opts.wer_target, &opts.pulse) {
        Ok(tp) => Some(tp),
        Err(Error::Saturation(_)) => None,
        Err(e) => return Err(e),
    };
    Ok((lh.i_cell_a, hl.i_cell_a, tp))
}

/// Worst-case write pulse distribution and write energy.
pub fn write_analysis(deck: &DeviceDeck, trdeck: &TransistorDeck, opts: &BitcellOptions) -> Result<WriteAnalysis> {
    let (nominal, draw) = nominal_and_samples(deck, trdeck, opts)?;
    let (i_lh, i_hl, tp_nom) = write_cell(&nominal, opts)?;
    let tp_nom = tp_nom.ok_or_else(|| {
        Error::Numerical(format!("nominal {} cell cannot reach WER {:e}", deck.name, opts.wer_target))
    })?;
    let samples = try_map_range(opts.policy, opts.trials, |k| {
        let (process, cell) = draw(k);
        let (i_lh_a, i_hl_a, t_p_s) = write_cell(&cell, opts)?;
        Ok::<_, Error>(WriteSample { process, i_lh_a, i_hl_a, t_p_s })
    })?;
    let ok: Vec<&WriteSample> = samples.iter().filter(|s| s.t_p_s.is_some()).collect();
    if ok.is_empty() {
        return Err(Error::Numerical(format!("no {} sample reached WER {:e}", deck.name, opts.wer_target)));
    }
    let tps: Vec<f64> = ok.iter().filter_map(|s| s.t_p_s).collect();
    let sorted = stats::sorted(&tps);
    let fit = GaussianFit::of(&tps);
    let t_p_6sigma_s = fit.sigma_point(6.0);
    let v = nominal.tr.supply_v;
    let energies: Vec<f64> = ok
        .iter()
        .map(|s| write_energy(v, s.i_lh_a, s.i_hl_a, t_p_6sigma_s))
        .collect();
    Ok(WriteAnalysis {
        supply_v: v,
        nominal_i_lh_a: i_lh,
        nominal_i_hl_a: i_hl,
        nominal_t_p_s: tp_nom,
        fit,
        t_p_median_s: stats::quantile_sorted(&sorted, 0.5),
        t_p_6sigma_s,
        t_p_max_s: *sorted.last().unwrap(),
        write_energy_avg_j: stats::mean(&energies),
        failures: samples.len() - ok.len(),
        samples,
    })
}

/// Supply energy of one write, averaged over the two transitions.
pub fn write_energy(supply_v: f64, i_lh: f64, i_hl: f64, t_p: f64) -> f64 {
    supply_v * 0.5 * (i_lh + i_hl) * t_p
}

/// Bitcell voltages of one MC sample with the read current forced in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadSample {
    pub process: ProcessSample,
    pub v_lrs_v: f64,
    pub v_hrs_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadAnalysis {
    pub i_read_a: f64,
    pub v_lrs_nominal_v: f64,
    pub v_hrs_nominal_v: f64,
    pub v_sm_nominal_v: f64,
    pub v_sm_3sigma_v: f64,
    pub lrs: GaussianFit,
    pub hrs: GaussianFit,
    /// The 3-sigma LRS and HRS populations overlap.
    pub sense_failure: bool,
    /// Instantaneous supply power while reading, averaged over both states.
    pub read_power_w: f64,
    pub lrs_eff_ohm: f64,
    pub hrs_eff_ohm: f64,
    pub samples: Vec<ReadSample>,
}

fn read_cell(cell: &Cell, opts: &BitcellOptions, i_read: f64) -> Result<(f64, f64)> {
    let v = |state| -> Result<f64> {
        let load = DmtjLoad { deck: &cell.deck, state, temperature_k: opts.temperature_k };
        Ok(forced_current_voltage(&load, &cell.tr, cell.tr.supply_v, i_read, opts.read_path)?.v_cell())
    };
    Ok((v(ResistanceState::Lrs)?, v(ResistanceState::Hrs)?))
}

/// Read current at the disturb target and the resulting sensing margin.
pub fn read_analysis(deck: &DeviceDeck, trdeck: &TransistorDeck, opts: &BitcellOptions) -> Result<ReadAnalysis> {
    opts.validate()?;
    let dev = SwitchingDevice::from_deck(deck, opts.temperature_k)?;
    let i_read = max_read_current(&dev, opts.rdr_target, opts.t_read_s, opts.activation())?;
    read_analysis_at(deck, trdeck, opts, i_read)
}

/// [`read_analysis`] with an explicit read current.
pub fn read_analysis_at(
    deck: &DeviceDeck,
    trdeck: &TransistorDeck,
    opts: &BitcellOptions,
    i_read: f64,
) -> Result<ReadAnalysis> {
    let (nominal, draw) = nominal_and_samples(deck, trdeck, opts)?;
    let (vl, vh) = read_cell(&nominal, opts, i_read)?;
    let samples = try_map_range(opts.policy, opts.trials, |k| {
        let (process, cell) = draw(k);
        let (v_lrs_v, v_hrs_v) = read_cell(&cell, opts, i_read)?;
        Ok::<_, Error>(ReadSample { process, v_lrs_v, v_hrs_v })
    })?;
    let lrs = GaussianFit::of(&samples.iter().map(|s| s.v_lrs_v).collect::<Vec<_>>());
    let hrs = GaussianFit::of(&samples.iter().map(|s| s.v_hrs_v).collect::<Vec<_>>());
    let v_sm_3sigma_v = hrs.sigma_point(-3.0) - lrs.sigma_point(3.0);
    let (lrs_eff_ohm, hrs_eff_ohm) = if i_read > 0.0 {
        (vl / i_read, vh / i_read)
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(ReadAnalysis {
        i_read_a: i_read,
        v_lrs_nominal_v: vl,
        v_hrs_nominal_v: vh,
        v_sm_nominal_v: vh - vl,
        v_sm_3sigma_v,
        lrs,
        hrs,
        sense_failure: v_sm_3sigma_v <= 0.0,
        read_power_w: i_read * 0.5 * (vl + vh),
        lrs_eff_ohm,
        hrs_eff_ohm,
        samples,
    })
}
