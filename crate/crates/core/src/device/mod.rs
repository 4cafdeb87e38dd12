//! Double-barrier MTJ compact model.
//!
//! The stack is free layer between a thick top barrier and a thin bottom
//! barrier whose reference layers point in opposite directions. In the low
//! resistance state the top barrier is parallel and the bottom one
//! antiparallel, and vice versa for the high resistance state.

mod barrier;
mod extract;
mod geometry;
mod magnetic;
mod presets;
mod report;

pub use barrier::{
    barrier_conductance, barrier_tmr0, series_partition, Alignment, BarrierElectrical,
    InelasticLaw, ResistanceState, SeriesPoint, StackElectrical, DEFAULT_MAX_BIAS_V,
    SERIES_MAX_ITER, SERIES_TOL_V,
};
pub use extract::{
    calibrate_demag_for_critical_current, calibrate_demag_for_delta, extract_barriers,
    BarrierFit, ResistanceAnchor, MAX_INELASTIC_RATIO,
};
pub use geometry::DeviceGeometry;
pub use magnetic::{
    critical_current, effective_anisotropy, effective_anisotropy_field, relaxation_time,
    retention_threshold, stt_efficiency, thermal_stability, thin_disk_nz_minus_nxy, DemagModel,
    Regime, Stability,
};
pub use report::{characteristics_csv, sweep_csv, CharacteristicsRow};

use serde::{Deserialize, Serialize};

use crate::error::{Context, Error, Result};
use crate::material::MaterialDeck;
use crate::numeric::bisect;

fn default_decay() -> f64 {
    6.0
}

/// Everything needed to evaluate one device at any temperature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceDeck {
    pub name: String,
    pub material: MaterialDeck,
    pub geometry: DeviceGeometry,
    /// Nominal resistance-area product. Only used to seed barrier extraction.
    pub ra_ohm_um2: f64,
    pub electrical: StackElectrical,
    pub demag: DemagModel,
    /// Barrier conductance falls as `exp(-k * dt)` with thickness change `dt` in nm.
    #[serde(default = "default_decay")]
    pub barrier_decay_per_nm: f64,
}

impl DeviceDeck {
    pub fn validate(&self) -> Result<()> {
        self.material.validate()?;
        self.geometry.validate()?;
        self.electrical.validate()?;
        self.demag.validate(&self.geometry)?;
        if !(self.barrier_decay_per_nm >= 0.0) {
            return Err(Error::Config("barrier_decay_per_nm must be >= 0".into()));
        }
        Ok(())
    }

    /// Device with process deviations applied: cross-section scaled by
    /// `area_factor`, layer thicknesses shifted by the given amounts (m).
    pub fn perturbed(&self, area_factor: f64, dt_fl: f64, dt_top: f64, dt_bottom: f64) -> Self {
        let mut d = self.clone();
        d.geometry.diameter_m *= area_factor.sqrt();
        d.geometry.t_fl_m += dt_fl;
        d.geometry.t_ox_top_m += dt_top;
        d.geometry.t_ox_bottom_m += dt_bottom;
        let k = self.barrier_decay_per_nm;
        d.electrical.top = self.electrical.top.scaled(area_factor * (-k * dt_top * 1e9).exp());
        d.electrical.bottom = self
            .electrical
            .bottom
            .scaled(area_factor * (-k * dt_bottom * 1e9).exp());
        d
    }

    pub fn with_diameter(&self, diameter_m: f64) -> Self {
        let mut d = self.clone();
        let f = (diameter_m / self.geometry.diameter_m).powi(2);
        d.geometry.diameter_m = diameter_m;
        d.electrical.top = self.electrical.top.scaled(f);
        d.electrical.bottom = self.electrical.bottom.scaled(f);
        d
    }
}

/// Stack resistance and barrier voltages at applied bias `v_applied`.
pub fn device_resistance(
    deck: &DeviceDeck,
    state: ResistanceState,
    t: f64,
    v_applied: f64,
) -> Result<SeriesPoint> {
    let p = deck.material.polarization_at(t)?;
    series_partition(&deck.electrical, state.alignments(), p, t, v_applied)
}

/// Bias that drives `current_a` through the stack.
pub fn voltage_at_current(
    deck: &DeviceDeck,
    state: ResistanceState,
    t: f64,
    current_a: f64,
) -> Result<SeriesPoint> {
    if current_a == 0.0 {
        return device_resistance(deck, state, t, 0.0);
    }
    let sign = current_a.signum();
    let target = current_a.abs();
    let vmax = deck.electrical.max_bias_v;
    let i_max = device_resistance(deck, state, t, vmax)?.current_a;
    if target > i_max {
        return Err(Error::Domain(format!(
            "{target:e} A exceeds the {i_max:e} A reachable within {vmax} V"
        )));
    }
    let v = bisect(
        |v| match device_resistance(deck, state, t, v) {
            Ok(pt) => pt.current_a - target,
            Err(_) => f64::NAN,
        },
        0.0,
        vmax,
        1e-13,
        200,
    )?;
    device_resistance(deck, state, t, sign * v)
}

/// Operating snapshot of a device at one temperature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviceCharacteristics {
    pub name: String,
    pub diameter_m: f64,
    pub temperature_k: f64,
    pub polarization: f64,
    pub ms_t: f64,
    pub ki_j_per_m2: f64,
    pub r_low_ohm: f64,
    pub r_high_ohm: f64,
    pub tmr0: f64,
    pub i_c_a: f64,
    pub delta: f64,
    pub h_k_eff_a_per_m: f64,
    pub k_eff_j_per_m3: f64,
    pub d_w_m: f64,
    pub regime: Regime,
    pub nz_minus_nxy: f64,
    pub tau_d_s: f64,
    /// Δ clears the ten-year retention threshold.
    pub thermally_stable: bool,
}

pub fn characterize(deck: &DeviceDeck, t: f64) -> Result<DeviceCharacteristics> {
    let ctx = || format!("characterizing {} at {t} K", deck.name);
    deck.validate().context(ctx())?;
    let r_low = device_resistance(deck, ResistanceState::Lrs, t, 0.0)
        .context(ctx())?
        .resistance_ohm;
    let r_high = device_resistance(deck, ResistanceState::Hrs, t, 0.0)
        .context(ctx())?
        .resistance_ohm;
    let g = &deck.geometry;
    let m = &deck.material;
    let hk = effective_anisotropy_field(g, m, &deck.demag, t).context(ctx())?;
    let i_c = critical_current(g, m, &deck.demag, t).context(ctx())?;
    let st = thermal_stability(g, m, &deck.demag, t).context(ctx())?;
    Ok(DeviceCharacteristics {
        name: deck.name.clone(),
        diameter_m: g.diameter_m,
        temperature_k: t,
        polarization: m.polarization_at(t)?,
        ms_t: m.saturation_magnetization_at(t)?,
        ki_j_per_m2: m.anisotropy_at(t)?,
        r_low_ohm: r_low,
        r_high_ohm: r_high,
        tmr0: (r_high - r_low) / r_low,
        i_c_a: i_c,
        delta: st.delta,
        h_k_eff_a_per_m: hk,
        k_eff_j_per_m3: st.k_eff_j_per_m3,
        d_w_m: st.d_w_m,
        regime: st.regime,
        nz_minus_nxy: deck.demag.nz_minus_nxy(g),
        tau_d_s: relaxation_time(m.alpha, hk),
        thermally_stable: st.delta >= retention_threshold(),
    })
}

/// One point of a diameter sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub diameter_m: f64,
    pub temperature_k: f64,
    pub delta: f64,
    pub i_c_a: f64,
    pub d_w_m: f64,
    pub regime: Regime,
}

/// Δ and I_c versus diameter, other deck values fixed.
pub fn sweep_diameter(deck: &DeviceDeck, temps: &[f64], diameters: &[f64]) -> Result<Vec<SweepPoint>> {
    let mut out = Vec::with_capacity(temps.len() * diameters.len());
    for &t in temps {
        for &d in diameters {
            if !(5e-9..=80e-9).contains(&d) {
                return Err(Error::Domain(format!(
                    "diameter {:.3} nm outside [5, 80] nm",
                    d * 1e9
                )));
            }
            let dev = deck.with_diameter(d);
            let st = thermal_stability(&dev.geometry, &dev.material, &dev.demag, t)?;
            let i_c = critical_current(&dev.geometry, &dev.material, &dev.demag, t)?;
            out.push(SweepPoint {
                diameter_m: d,
                temperature_k: t,
                delta: st.delta,
                i_c_a: i_c,
                d_w_m: st.d_w_m,
                regime: st.regime,
            });
        }
    }
    Ok(out)
}

pub use presets::{dmtj13, dmtj40};
