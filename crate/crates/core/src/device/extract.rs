//! Fitting barrier conductances and demag factors to measured device values.

use serde::{Deserialize, Serialize};

use super::barrier::{
    series_partition, BarrierElectrical, InelasticLaw, ResistanceState, StackElectrical,
    DEFAULT_MAX_BIAS_V,
};
use super::geometry::DeviceGeometry;
use super::magnetic::{
    critical_current, effective_anisotropy, thermal_stability, DemagModel, Regime,
};
use super::DeviceDeck;
use crate::error::{Error, Result};
use crate::material::MaterialDeck;
use crate::numeric::{bisect, levenberg_marquardt, LmOptions};

/// Zero-bias composite resistances measured at one temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResistanceAnchor {
    pub temperature_k: f64,
    pub r_low_ohm: f64,
    pub r_high_ohm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BarrierFit {
    pub electrical: StackElectrical,
    /// Relative errors, `(R_L, R_H)` per anchor in order.
    pub residuals: Vec<f64>,
}

impl BarrierFit {
    pub fn max_abs_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |a, r| a.max(r.abs()))
    }
}

// x = [ln G_T top, G_SI/G_T top, ln G_T bottom, G_SI/G_T bottom]
fn stack_from(x: &[f64], v_h: f64, law: InelasticLaw) -> StackElectrical {
    let (gt, gb) = (x[0].exp(), x[2].exp());
    StackElectrical {
        top: BarrierElectrical { g_t_s: gt, g_si_s: gt * x[1], v_h_v: v_h },
        bottom: BarrierElectrical { g_t_s: gb, g_si_s: gb * x[3], v_h_v: v_h },
        inelastic: law,
        max_bias_v: DEFAULT_MAX_BIAS_V,
    }
}

fn residuals(stack: &StackElectrical, material: &MaterialDeck, anchors: &[ResistanceAnchor]) -> Vec<f64> {
    let mut r = Vec::with_capacity(2 * anchors.len());
    for a in anchors {
        let Ok(p) = material.polarization_at(a.temperature_k) else {
            return vec![f64::NAN; 2 * anchors.len()];
        };
        for (state, want) in [(ResistanceState::Lrs, a.r_low_ohm), (ResistanceState::Hrs, a.r_high_ohm)] {
            let got = series_partition(stack, state.alignments(), p, a.temperature_k, 0.0)
                .map(|pt| pt.resistance_ohm)
                .unwrap_or(f64::NAN);
            r.push(got / want - 1.0);
        }
    }
    r
}

/// Largest `G_SI / G_T` the extraction accepts at the reference temperature.
/// Elastic tunneling stays the dominant channel of each barrier.
pub const MAX_INELASTIC_RATIO: f64 = 1.0;

/// Fit `G_T` and `G_SI` of both barriers to zero-bias resistances.
///
/// The fit runs on `ln G_T` and `G_SI / G_T` (bounded by `max_ratio`) from a
/// grid of starting points. `ra_ohm_um2 / area` seeds the top-barrier
/// parallel resistance.
pub fn extract_barriers(
    geometry: &DeviceGeometry,
    material: &MaterialDeck,
    ra_ohm_um2: f64,
    anchors: &[ResistanceAnchor],
    v_h: f64,
    law: InelasticLaw,
    max_ratio: f64,
) -> Result<BarrierFit> {
    if anchors.len() < 2 {
        return Err(Error::Calibration(
            "need anchors at two or more temperatures to separate G_T from G_SI".into(),
        ));
    }
    for a in anchors {
        if !(a.r_high_ohm > a.r_low_ohm && a.r_low_ohm > 0.0) {
            return Err(Error::Calibration(format!("anchor {a:?} needs 0 < R_L < R_H")));
        }
    }
    let f = |x: &[f64]| residuals(&stack_from(x, v_h, law), material, anchors);
    let lower = [-40.0, 0.0, -40.0, 0.0];
    let upper = [5.0, max_ratio, 5.0, max_ratio];
    let r_seed = ra_ohm_um2 / (geometry.area() * 1e12);
    let p300 = material.polarization_at(anchors[0].temperature_k)?;
    let mut starts = vec![[
        (1.0 / (r_seed * (1.0 + p300 * p300))).ln(),
        0.05 * max_ratio,
        (10.0 / r_seed).ln(),
        0.1 * max_ratio,
    ]];
    for i in 0..7 {
        for j in 0..7 {
            for k in 0..4 {
                let a = -12.0 + i as f64;
                let b = -12.0 + j as f64 * 10.0 / 6.0;
                let c = max_ratio * k as f64 / 3.0;
                starts.push([a, c, b, c]);
            }
        }
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    for s in &starts {
        let Ok(fit) = levenberg_marquardt(f, s, &lower, &upper, LmOptions::default()) else {
            continue;
        };
        if best.as_ref().is_none_or(|(c, _)| fit.cost < *c) {
            best = Some((fit.cost, fit.x));
        }
    }
    let (_, x) = best.ok_or_else(|| Error::Calibration("no start point converged".into()))?;
    let electrical = stack_from(&x, v_h, law);
    Ok(BarrierFit {
        residuals: f(&x),
        electrical,
    })
}

/// Demag model (same variant as the deck's) that puts single-domain Δ at `target`.
pub fn calibrate_demag_for_delta(deck: &DeviceDeck, t: f64, target: f64) -> Result<DemagModel> {
    let g = deck.geometry;
    let kt = crate::constants::CODATA.k_b() * t;
    // single-domain expression, monotone in n; the branch is checked afterwards
    let solve = |n: f64| -> f64 {
        effective_anisotropy(&g, &deck.material, &DemagModel::Fixed { nz_minus_nxy: n }, t)
            .map(|k| k * g.volume() / kt - target)
            .unwrap_or(f64::NAN)
    };
    let n = bisect(solve, 0.0, 0.999_999, 1e-14, 200)
        .map_err(|e| Error::Calibration(format!("Δ = {target} unreachable at {t} K: {e}")))?;
    let s = thermal_stability(&g, &deck.material, &DemagModel::Fixed { nz_minus_nxy: n }, t)?;
    if s.regime != Regime::SingleDomain || (s.delta / target - 1.0).abs() > 1e-9 {
        return Err(Error::Calibration(format!(
            "Δ at {t} K is set by the domain-wall branch; demag cannot calibrate it"
        )));
    }
    Ok(deck.demag.matching(&g, n))
}

/// Demag model that puts the critical current at `target_a`.
pub fn calibrate_demag_for_critical_current(
    deck: &DeviceDeck,
    t: f64,
    target_a: f64,
) -> Result<DemagModel> {
    let g = deck.geometry;
    let solve = |n: f64| -> f64 {
        critical_current(&g, &deck.material, &DemagModel::Fixed { nz_minus_nxy: n }, t)
            .map(|ic| ic / target_a - 1.0)
            .unwrap_or(-1.0)
    };
    let n = bisect(solve, 0.0, 0.999_999, 1e-14, 200)
        .map_err(|e| Error::Calibration(format!("I_c = {target_a:e} A unreachable at {t} K: {e}")))?;
    Ok(deck.demag.matching(&g, n))
}
