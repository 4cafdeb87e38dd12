//! Fitting the access-transistor decks.

use super::circuit::write_points;
use super::transistor::{Transistor, TransistorParams};
use crate::device::{dmtj13, dmtj40, DeviceDeck};
use crate::error::{Error, Result};
use crate::numeric::{bisect_log, levenberg_marquardt, LmOptions};

/// Measured write currents of one bitcell.
#[derive(Debug, Clone)]
pub struct WriteTarget {
    pub deck: DeviceDeck,
    pub i_lh_a: f64,
    pub i_hl_a: f64,
}

/// 77 K write currents of the shipped 40 nm and 13 nm bitcells.
pub fn shipped_write_targets() -> Vec<WriteTarget> {
    vec![
        WriteTarget { deck: dmtj40(), i_lh_a: 54.9e-6, i_hl_a: 92.6e-6 },
        WriteTarget { deck: dmtj13(), i_lh_a: 26.0e-6, i_hl_a: 44.8e-6 },
    ]
}

/// Relative write-current errors `[lh, hl]` per target.
pub fn write_residuals(tr: &Transistor, targets: &[WriteTarget], t: f64) -> Result<Vec<f64>> {
    let mut r = Vec::with_capacity(2 * targets.len());
    for tg in targets {
        let (lh, hl) = write_points(&tg.deck, tr, t)?;
        r.push(lh.i_cell_a / tg.i_lh_a - 1.0);
        r.push(hl.i_cell_a / tg.i_hl_a - 1.0);
    }
    Ok(r)
}

/// Fit `V_th`, `k_gain` and `k_v` of `base` to the write currents.
pub fn fit_transistor(
    base: TransistorParams,
    width_scale: f64,
    supply_v: f64,
    targets: &[WriteTarget],
) -> Result<(TransistorParams, Vec<f64>)> {
    let t = base.temperature_k;
    let build = |x: &[f64]| Transistor {
        params: TransistorParams { v_th_v: x[0], k_gain: x[1].exp(), k_v: x[2], ..base },
        width_scale,
        supply_v,
    };
    let residual = |x: &[f64]| {
        write_residuals(&build(x), targets, t).unwrap_or_else(|_| vec![1e3; 2 * targets.len()])
    };
    let fit = levenberg_marquardt(
        residual,
        &[base.v_th_v, base.k_gain.ln(), base.k_v],
        &[0.2, (1e-6f64).ln(), 0.1],
        &[0.8, (1e-2f64).ln(), 3.0],
        LmOptions::default(),
    )?;
    let tr = build(&fit.x);
    let res = write_residuals(&tr, targets, t)?;
    Ok((tr.params, res))
}

/// `k_gain` of `room` that puts the full-bias on-current at `cryo / ratio`.
pub fn gain_for_on_ratio(room: TransistorParams, cryo: &TransistorParams, v: f64, ratio: f64) -> Result<f64> {
    if !(ratio > 0.0) {
        return Err(Error::Calibration(format!("on ratio {ratio} must be positive")));
    }
    let target = cryo.drain_current(v, v) / ratio;
    bisect_log(
        |k| TransistorParams { k_gain: k, ..room }.drain_current(v, v) - target,
        1e-7,
        1e-1,
        1e-14,
        300,
    )
}
