//! Alpha-power-law access transistor with a subthreshold tail.

use serde::{Deserialize, Serialize};

use crate::constants::CODATA;
use crate::error::{Error, Result};

/// NMOS parameters at one temperature, for a minimum-width device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransistorParams {
    pub temperature_k: f64,
    pub v_th_v: f64,
    /// Saturation current prefactor, A / V^alpha_p.
    pub k_gain: f64,
    pub alpha_p: f64,
    /// Saturation voltage prefactor, `V_dsat = k_v * V_ov^(alpha_p / 2)`.
    pub k_v: f64,
    pub lambda_per_v: f64,
    /// Junction and gate leakage floor at full drain bias.
    pub i_off_a: f64,
    pub ss_mv_per_dec: f64,
}

impl TransistorParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("temperature_k", self.temperature_k),
            ("k_gain", self.k_gain),
            ("alpha_p", self.alpha_p),
            ("k_v", self.k_v),
            ("ss_mv_per_dec", self.ss_mv_per_dec),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("transistor {name} = {v} must be positive")));
            }
        }
        if !(self.lambda_per_v >= 0.0) || !(self.i_off_a >= 0.0) {
            return Err(Error::Config("lambda_per_v and i_off_a must be >= 0".into()));
        }
        Ok(())
    }

    fn n_phi(&self) -> f64 {
        self.ss_mv_per_dec * 1e-3 * self.alpha_p / std::f64::consts::LN_10
    }

    /// Smoothed overdrive: `V_gs - V_th` above threshold, exponential below.
    pub fn overdrive(&self, vgs: f64) -> f64 {
        let n = self.n_phi();
        let z = (vgs - self.v_th_v) / n;
        // softplus
        n * if z > 30.0 { z } else { z.exp().ln_1p() }
    }

    /// Drain current (A) for `vds >= 0`, one unit of width.
    pub fn drain_current(&self, vgs: f64, vds: f64) -> f64 {
        if vds <= 0.0 {
            return 0.0;
        }
        let vov = self.overdrive(vgs);
        let idsat = self.k_gain * vov.powf(self.alpha_p);
        let vdsat = self.k_v * vov.powf(0.5 * self.alpha_p);
        let x = vds / vdsat;
        let channel = if x < 1.0 { idsat * (2.0 - x) * x } else { idsat };
        let phi_t = CODATA.k_b() * self.temperature_k / CODATA.e();
        channel * (1.0 + self.lambda_per_v * vds) + self.i_off_a * -(-vds / phi_t).exp_m1()
    }

    pub fn with_vth_shift(&self, dv: f64) -> Self {
        Self { v_th_v: self.v_th_v + dv, ..*self }
    }
}

/// Room-temperature and 77 K parameter sets of one access device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransistorDeck {
    pub width_scale: f64,
    pub supply_v: f64,
    pub room: TransistorParams,
    pub cryo: TransistorParams,
}

impl TransistorDeck {
    pub fn validate(&self) -> Result<()> {
        self.room.validate()?;
        self.cryo.validate()?;
        if !(self.width_scale > 0.0) || !(self.supply_v > 0.0) {
            return Err(Error::Config("width_scale and supply_v must be positive".into()));
        }
        Ok(())
    }

    /// Parameter set for temperature `t`. Only the two calibrated
    /// temperatures are available.
    pub fn at(&self, t: f64) -> Result<Transistor> {
        let p = [self.room, self.cryo]
            .into_iter()
            .find(|p| (p.temperature_k - t).abs() < 0.5)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "no transistor parameters at {t} K (have {} K and {} K)",
                    self.room.temperature_k, self.cryo.temperature_k
                ))
            })?;
        Ok(Transistor { params: p, width_scale: self.width_scale, supply_v: self.supply_v })
    }

    /// Shipped 65 nm access device.
    pub fn tech65() -> Self {
        Self {
            width_scale: 1.0,
            supply_v: 1.2,
            room: ROOM,
            cryo: CRYO,
        }
    }

    /// `I_on(77 K) / I_on(300 K)` at `V_gs = V_ds = supply`.
    pub fn on_ratio(&self) -> f64 {
        let v = self.supply_v;
        self.cryo.drain_current(v, v) / self.room.drain_current(v, v)
    }

    /// `I_off(77 K) / I_off(300 K)` at `V_gs = 0`, `V_ds = supply`.
    pub fn off_ratio(&self) -> f64 {
        let v = self.supply_v;
        self.cryo.drain_current(0.0, v) / self.room.drain_current(0.0, v)
    }
}

/// A sized transistor at a fixed temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transistor {
    pub params: TransistorParams,
    pub width_scale: f64,
    pub supply_v: f64,
}

impl Transistor {
    pub fn drain_current(&self, vgs: f64, vds: f64) -> f64 {
        self.width_scale * self.params.drain_current(vgs, vds)
    }

    pub fn with_vth_shift(&self, dv: f64) -> Self {
        Self { params: self.params.with_vth_shift(dv), ..*self }
    }
}

const CRYO: TransistorParams = TransistorParams {
    temperature_k: 77.0,
    v_th_v: CRYO_FIT[0],
    k_gain: CRYO_FIT[1],
    alpha_p: 1.3,
    k_v: CRYO_FIT[2],
    lambda_per_v: 0.05,
    i_off_a: 2.53e-10,
    ss_mv_per_dec: 35.0,
};

const ROOM: TransistorParams = TransistorParams {
    temperature_k: 300.0,
    v_th_v: 0.42,
    k_gain: ROOM_K_GAIN,
    alpha_p: 1.3,
    k_v: CRYO_FIT[2],
    lambda_per_v: 0.05,
    i_off_a: 5e-9,
    ss_mv_per_dec: 90.0,
};

// V_th, k_gain, k_v fitted to the four 77 K write currents of the shipped
// bitcells; see `calibrate::fit_transistor`.
const CRYO_FIT: [f64; 3] = [0.5069994517106181, 1.9094754191921449e-4, 0.8411449871594695];
const ROOM_K_GAIN: f64 = 1.259446686032991e-4;
