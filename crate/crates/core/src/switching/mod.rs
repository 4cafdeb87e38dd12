//! Switching statistics: macrospin Monte Carlo, analytic write-error tails
//! and read disturb.

mod analytic;
mod curve;
mod macrospin;
mod read;
mod vec3;

pub use analytic::{analytic_pulse, analytic_wer, transit_time, ActivationModel, TailModel};
pub use curve::{samples_csv, wer_curve, Method, WerCurve, WerOptions, WerPoint};
pub use macrospin::{sample_initial_y, simulate_trial, TrialDiagnostics, MAX_RETRIES, REJECT_DRIFT};
pub use read::{max_read_current, read_disturb_rate};
pub use vec3::Vec3;

use serde::{Deserialize, Serialize};

use crate::constants::CODATA;
use crate::device::{characterize, relaxation_time, DeviceCharacteristics, DeviceDeck};
use crate::error::{Error, Result};
use crate::par::{try_map_range, ExecPolicy};
use crate::stats;

/// Device quantities that enter the switching dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwitchingDevice {
    pub delta: f64,
    pub i_c_a: f64,
    pub h_k_a_per_m: f64,
    pub alpha: f64,
}

impl SwitchingDevice {
    pub fn from_characteristics(c: &DeviceCharacteristics, alpha: f64) -> Self {
        Self {
            delta: c.delta,
            i_c_a: c.i_c_a,
            h_k_a_per_m: c.h_k_eff_a_per_m,
            alpha,
        }
    }

    pub fn from_deck(deck: &DeviceDeck, t: f64) -> Result<Self> {
        let c = characterize(deck, t)?;
        Ok(Self::from_characteristics(&c, deck.material.alpha))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.i_c_a > 0.0 && self.h_k_a_per_m > 0.0 && self.alpha > 0.0) {
            return Err(Error::Validation(format!("invalid switching device {self:?}")));
        }
        Ok(())
    }

    /// Characteristic time `tau_D = (1 + a^2) / (a gamma0 mu0 Hk)`.
    pub fn tau_d_s(&self) -> f64 {
        relaxation_time(self.alpha, self.h_k_a_per_m)
    }

    /// Unit of the integrator's reduced time, `1 / (gamma0 mu0 Hk)`.
    pub fn time_scale_s(&self) -> f64 {
        1.0 / (CODATA.gamma0() * CODATA.mu0() * self.h_k_a_per_m)
    }
}

pub const DEFAULT_DT_S: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwitchingProblem {
    pub device: SwitchingDevice,
    /// Signed write current. The sign picks the transition; dynamics use |i|.
    pub i_applied_a: f64,
    pub temperature_k: f64,
    pub t_max_s: f64,
    pub seed: u64,
    pub dt_s: f64,
}

impl SwitchingProblem {
    pub fn new(device: SwitchingDevice, i_applied_a: f64, temperature_k: f64, t_max_s: f64, seed: u64) -> Self {
        Self {
            device,
            i_applied_a,
            temperature_k,
            t_max_s,
            seed,
            dt_s: DEFAULT_DT_S,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.device.validate()?;
        if !(self.t_max_s > 0.0) || !(self.dt_s > 0.0) {
            return Err(Error::Validation("t_max_s and dt_s must be positive".into()));
        }
        if !self.i_applied_a.is_finite() {
            return Err(Error::Validation("write current must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwitchingSample {
    pub switched: bool,
    pub t_switch_s: Option<f64>,
}

impl SwitchingSample {
    /// Switching time, `+inf` if the trial did not switch.
    pub fn time_or_inf(&self) -> f64 {
        self.t_switch_s.unwrap_or(f64::INFINITY)
    }
}

/// First trial of `problem`.
pub fn simulate_switch(problem: &SwitchingProblem) -> Result<SwitchingSample> {
    problem.validate()?;
    simulate_trial(problem, 0).map(|(s, _)| s)
}

/// Outcome of many independent trials.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialSet {
    pub samples: Vec<SwitchingSample>,
    pub diagnostics: TrialDiagnostics,
    pub t_max_s: f64,
}

impl TrialSet {
    /// Switching times in ascending order, unswitched trials as `+inf`.
    pub fn sorted_times(&self) -> Vec<f64> {
        let t: Vec<f64> = self.samples.iter().map(|s| s.time_or_inf()).collect();
        stats::sorted(&t)
    }

    /// Number of trials still unswitched after `t`.
    pub fn errors_at(&self, t: f64) -> u64 {
        self.samples.iter().filter(|s| s.time_or_inf() > t).count() as u64
    }

    pub fn trials(&self) -> u64 {
        self.samples.len() as u64
    }
}

/// Run `trials` trials. Trial `k` draws from the stream `(seed, k)`, so the
/// result is identical for any policy or thread count.
pub fn run_trials(problem: &SwitchingProblem, trials: usize, policy: ExecPolicy) -> Result<TrialSet> {
    problem.validate()?;
    if trials == 0 {
        return Err(Error::Validation("trials must be at least 1".into()));
    }
    let out = try_map_range(policy, trials, |k| simulate_trial(problem, k as u64))?;
    let mut diagnostics = TrialDiagnostics::default();
    let mut samples = Vec::with_capacity(trials);
    for (s, d) in out {
        diagnostics.merge(&d);
        samples.push(s);
    }
    Ok(TrialSet { samples, diagnostics, t_max_s: problem.t_max_s })
}

/// Options for [`pulse_for_wer`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseOptions {
    pub model: TailModel,
    pub activation: ActivationModel,
    /// Longest pulse considered reachable.
    pub t_max_s: f64,
}

impl Default for PulseOptions {
    fn default() -> Self {
        Self {
            model: TailModel::default(),
            activation: ActivationModel::default(),
            t_max_s: 1e-6,
        }
    }
}

/// Pulse width that brings the write error rate down to `wer_target`.
pub fn pulse_for_wer(dev: &SwitchingDevice, i_write: f64, wer_target: f64, opts: &PulseOptions) -> Result<f64> {
    analytic::check_target(wer_target)?;
    dev.validate()?;
    let t = analytic_pulse(dev, i_write, wer_target, opts.model, &opts.activation);
    if !(t <= opts.t_max_s) {
        return Err(Error::Saturation(format!(
            "WER {wer_target:e} at {:e} A needs {t:e} s, beyond the {:e} s budget",
            i_write.abs(),
            opts.t_max_s
        )));
    }
    Ok(t)
}

/// Larger of the two pulse widths for the two transition currents.
pub fn worst_case_pulse(
    dev: &SwitchingDevice,
    i_lh: f64,
    i_hl: f64,
    wer_target: f64,
    opts: &PulseOptions,
) -> Result<f64> {
    Ok(pulse_for_wer(dev, i_lh, wer_target, opts)?.max(pulse_for_wer(dev, i_hl, wer_target, opts)?))
}
