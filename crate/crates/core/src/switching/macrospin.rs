//! Thermally driven macrospin integrator.
//!
//! Time is measured in units of `1 / (gamma0 mu0 Hk)` and fields in units of
//! `Hk`, so a device enters only through `alpha`, `Delta` and `i / Ic`. The
//! equation is Landau-Lifshitz-Gilbert-Slonczewski in explicit form,
//!
//! ```text
//! (1 + a^2) dm/ds = -m x h - a m x (m x h) - j m x (m x p) + a j m x p
//! ```
//!
//! with `h = m_z z + h_th`, `j = a i / Ic` and polarizer `p = -z`, so
//! positive current drives the magnetization from `+z` towards `-z`. The
//! thermal field has per-component variance `a / (Delta ds)` and is held
//! fixed over a step, which makes Heun's scheme converge to the
//! Stratonovich solution.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::vec3::Vec3;
use super::{SwitchingProblem, SwitchingSample};
use crate::error::{Error, Result};
use crate::rng::{normal, stream};

/// Norm error after a Heun step above which the step is redone in halves.
pub const REJECT_DRIFT: f64 = 1e-3;
pub const MAX_RETRIES: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TrialDiagnostics {
    pub steps: u64,
    /// Largest `| |m| - 1 |` produced by an accepted step before renormalization.
    pub max_norm_drift: f64,
    /// Largest `| |m| - 1 |` left after renormalization.
    pub max_residual_drift: f64,
    pub renormalizations: u64,
    pub rejected_steps: u64,
}

impl TrialDiagnostics {
    pub fn merge(&mut self, o: &TrialDiagnostics) {
        self.steps += o.steps;
        self.max_norm_drift = self.max_norm_drift.max(o.max_norm_drift);
        self.max_residual_drift = self.max_residual_drift.max(o.max_residual_drift);
        self.renormalizations += o.renormalizations;
        self.rejected_steps += o.rejected_steps;
    }
}

#[inline]
fn rhs(m: Vec3, h_th: Vec3, alpha: f64, j: f64) -> Vec3 {
    let h = Vec3::new(h_th.x, h_th.y, h_th.z + m.z);
    let p = Vec3::new(0.0, 0.0, -1.0);
    let mxh = m.cross(h);
    let mxp = m.cross(p);
    let torque = mxh + m.cross(mxh) * alpha + m.cross(mxp) * j - mxp * (alpha * j);
    torque * (-1.0 / (1.0 + alpha * alpha))
}

#[inline]
fn heun(m: Vec3, h_th: Vec3, alpha: f64, j: f64, ds: f64) -> Vec3 {
    let f1 = rhs(m, h_th, alpha, j);
    let pred = (m + f1 * ds).normalized();
    let f2 = rhs(pred, h_th, alpha, j);
    m + (f1 + f2) * (0.5 * ds)
}

/// Draw `1 - cos(theta0)` from the equilibrium density `sin(t) exp(-D sin^2 t)`
/// restricted to the upper hemisphere.
pub fn sample_initial_y<R: Rng + ?Sized>(rng: &mut R, delta: f64) -> f64 {
    // exp(-D (2y - y^2)) = exp(-D y) * exp(-D (y - y^2)); the first factor is
    // sampled exactly, the second (<= 1) by rejection.
    let norm = -(-delta).exp_m1();
    loop {
        let u: f64 = rng.random();
        let y = -(-u * norm).ln_1p() / delta;
        let accept: f64 = rng.random();
        if accept < (-delta * (y - y * y)).exp() {
            return y;
        }
    }
}

pub(crate) fn initial_state<R: Rng + ?Sized>(rng: &mut R, delta: f64) -> Vec3 {
    let y = sample_initial_y(rng, delta);
    let phi = rng.random::<f64>() * std::f64::consts::TAU;
    let s = (y * (2.0 - y)).sqrt();
    Vec3::new(s * phi.cos(), s * phi.sin(), 1.0 - y)
}

/// Run trial `index` of `problem`.
pub fn simulate_trial(
    problem: &SwitchingProblem,
    index: u64,
) -> Result<(SwitchingSample, TrialDiagnostics)> {
    let dev = &problem.device;
    let alpha = dev.alpha;
    let scale = dev.time_scale_s();
    let ds = problem.dt_s / scale;
    let s_max = problem.t_max_s / scale;
    let j = alpha * problem.i_applied_a.abs() / dev.i_c_a;
    let sigma = (alpha / (dev.delta * ds)).sqrt();

    let mut rng = stream(problem.seed, index);
    let mut m = initial_state(&mut rng, dev.delta);
    let mut diag = TrialDiagnostics::default();
    let mut s = 0.0;
    while s < s_max {
        let h_th = Vec3::new(normal(&mut rng), normal(&mut rng), normal(&mut rng)) * sigma;
        let mut next = heun(m, h_th, alpha, j, ds);
        let mut drift = (next.norm() - 1.0).abs();
        let mut retries = 0;
        while !(drift <= REJECT_DRIFT) {
            retries += 1;
            diag.rejected_steps += 1;
            if retries > MAX_RETRIES {
                return Err(Error::Numerical(format!(
                    "macrospin step at t = {:e} s rejected {MAX_RETRIES} times (|m| - 1 = {drift:e})",
                    s * scale
                )));
            }
            let n = 1u32 << retries;
            let sub = ds / n as f64;
            let mut mm = m;
            drift = 0.0;
            for _ in 0..n {
                mm = heun(mm, h_th, alpha, j, sub);
                drift = drift.max((mm.norm() - 1.0).abs());
                mm = mm.normalized();
            }
            next = mm;
        }
        diag.max_norm_drift = diag.max_norm_drift.max(drift);
        if next.norm() != 1.0 {
            diag.renormalizations += 1;
        }
        let prev_z = m.z;
        m = next.normalized();
        diag.max_residual_drift = diag.max_residual_drift.max((m.norm() - 1.0).abs());
        diag.steps += 1;
        if m.z < 0.0 {
            let frac = prev_z / (prev_z - m.z);
            let t = (s + frac * ds) * scale;
            if t <= problem.t_max_s {
                return Ok((SwitchingSample { switched: true, t_switch_s: Some(t) }, diag));
            }
            break;
        }
        s += ds;
    }
    Ok((SwitchingSample { switched: false, t_switch_s: None }, diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use crate::stats;

    #[test]
    fn initial_angle_matches_boltzmann_mean() {
        // For large Delta, y = 1 - cos(theta) is close to Exp(2 Delta).
        let delta = 60.0;
        let mut r = stream(3, 0);
        let ys: Vec<f64> = (0..200_000).map(|_| sample_initial_y(&mut r, delta)).collect();
        let m = stats::mean(&ys);
        // exact mean of exp(-D(2y-y^2)) on [0,1] differs from 1/(2D) at O(1/D^2)
        assert!((m * 2.0 * delta - 1.0).abs() < 0.03, "{m}");
        assert!(ys.iter().all(|&y| (0.0..=1.0).contains(&y)));
    }

    #[test]
    fn small_delta_stays_in_hemisphere() {
        let mut r = stream(4, 0);
        for _ in 0..10_000 {
            let m = initial_state(&mut r, 0.5);
            assert!(m.z >= 0.0 && (m.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn deterministic_precession_conserves_energy() {
        // No damping torque, no current, no noise: m_z is conserved.
        let m0 = Vec3::new(0.3, 0.0, (1.0f64 - 0.09).sqrt());
        let mut m = m0;
        for _ in 0..10_000 {
            m = heun(m, Vec3::default(), 0.0, 0.0, 0.01).normalized();
        }
        assert!((m.z - m0.z).abs() < 1e-6);
    }

    #[test]
    fn damping_relaxes_to_easy_axis() {
        let mut m = Vec3::new(0.6, 0.0, 0.8);
        for _ in 0..20_000 {
            m = heun(m, Vec3::default(), 0.1, 0.0, 0.05).normalized();
        }
        assert!(m.z > 0.999_999);
    }
}
