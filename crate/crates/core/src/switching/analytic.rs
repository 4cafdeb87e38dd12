//! Closed-form write-error tails.
//!
//! Above `Ic` the initial polar angle `theta0` sets the switching time
//! almost deterministically, so the error rate at pulse width `t` is the
//! probability that `theta0` was too small to reach the equator in time.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::SwitchingDevice;
use crate::error::{Error, Result};
use crate::numeric::bisect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailModel {
    /// Small-angle growth `theta ~ theta0 exp((x-1) t / tau_D)` and the full
    /// equilibrium cone: `WER = 1 - exp(-D pi^2/4 exp(-2 t (x-1) / tau_D))`.
    Ballistic,
    /// Exact precessional transit time from `theta0` to the equator, and an
    /// initial cone narrowed by thermal diffusion during the slow start,
    /// `D_eff = D (x-1)/x`.
    #[default]
    DiffusionCorrected,
}

/// Thermal-activation parameters used below `Ic` and for read disturb.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActivationModel {
    pub tau0_s: f64,
    /// Exponent `n` in `Delta (1 - i/Ic)^n`.
    pub exponent: f64,
}

impl Default for ActivationModel {
    fn default() -> Self {
        Self { tau0_s: 1e-9, exponent: 1.0 }
    }
}

impl ActivationModel {
    /// Mean dwell time at reduced current `x = i / Ic < 1`.
    pub fn dwell_time(&self, delta: f64, x: f64) -> f64 {
        self.tau0_s * (delta * (1.0 - x).powf(self.exponent)).exp()
    }
}

/// Time (s) for the noiseless trajectory to go from `theta0` to the equator.
pub fn transit_time(dev: &SwitchingDevice, x: f64, theta0: f64) -> f64 {
    let u0 = theta0.cos();
    let one_minus_u0 = 2.0 * (0.5 * theta0).sin().powi(2);
    let a = 1.0 / (2.0 * (x - 1.0));
    let b = 1.0 / (2.0 * (x + 1.0));
    let c = 1.0 / (1.0 - x * x);
    dev.tau_d_s() * (-a * one_minus_u0.ln() + b * u0.ln_1p() + c * (x / (x - u0)).ln())
}

fn theta_for_time(dev: &SwitchingDevice, x: f64, t: f64) -> f64 {
    // transit_time is decreasing in theta0; search in ln(theta0)
    let top = (0.5 * PI).ln();
    if transit_time(dev, x, 0.5 * PI) >= t {
        return 0.5 * PI;
    }
    let mut lo = -400.0_f64;
    while transit_time(dev, x, lo.exp()) < t {
        lo *= 2.0;
        if lo < -1e5 {
            return 0.0;
        }
    }
    bisect(|u| transit_time(dev, x, u.exp()) - t, lo, top, 1e-13, 300)
        .map(f64::exp)
        .unwrap_or(0.0)
}

/// Probability that a pulse of width `t` at current `i` leaves the bit unswitched.
pub fn analytic_wer(dev: &SwitchingDevice, i: f64, t: f64, model: TailModel, act: &ActivationModel) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    let x = i.abs() / dev.i_c_a;
    if x <= 1.0 {
        return (-t / act.dwell_time(dev.delta, x)).exp();
    }
    match model {
        TailModel::Ballistic => {
            let arg = dev.delta * PI * PI / 4.0 * (-2.0 * t * (x - 1.0) / dev.tau_d_s()).exp();
            -(-arg).exp_m1()
        }
        TailModel::DiffusionCorrected => {
            let d_eff = dev.delta * (x - 1.0) / x;
            let th = theta_for_time(dev, x, t);
            -(-d_eff * th.sin().powi(2)).exp_m1()
        }
    }
}

/// Pulse width at which the analytic model reaches `wer_target`.
pub fn analytic_pulse(
    dev: &SwitchingDevice,
    i: f64,
    wer_target: f64,
    model: TailModel,
    act: &ActivationModel,
) -> f64 {
    let x = i.abs() / dev.i_c_a;
    // -ln(1 - w), accurate for tiny w
    let q = -(-wer_target).ln_1p();
    if x <= 1.0 {
        return act.dwell_time(dev.delta, x) * (-wer_target.ln());
    }
    match model {
        TailModel::Ballistic => {
            let r = dev.delta * PI * PI / 4.0 / q;
            if r <= 1.0 {
                return 0.0;
            }
            dev.tau_d_s() / (2.0 * (x - 1.0)) * r.ln()
        }
        TailModel::DiffusionCorrected => {
            let d_eff = dev.delta * (x - 1.0) / x;
            let s2 = q / d_eff;
            if s2 >= 1.0 {
                return 0.0;
            }
            transit_time(dev, x, s2.sqrt().asin())
        }
    }
}

/// Check used by callers that need a reachable target.
pub(crate) fn check_target(wer_target: f64) -> Result<()> {
    if !(wer_target > 0.0 && wer_target <= 0.5) {
        return Err(Error::Domain(format!("WER target {wer_target} not in (0, 0.5]")));
    }
    Ok(())
}
