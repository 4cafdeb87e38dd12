//! Anisotropy, critical current and thermal stability of the free layer.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::geometry::DeviceGeometry;
use crate::constants::CODATA;
use crate::error::{Error, Result};
use crate::material::MaterialDeck;

/// Effective demagnetizing difference `N_z - N_xy` of the free layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum DemagModel {
    Fixed { nz_minus_nxy: f64 },
    /// Thin-disk asymptotic value from `t_FL / D` plus a calibration offset.
    ThinDisk { offset: f64 },
}

/// `N_z - N_xy` of a thin circular disk of aspect ratio `tau = t / D`.
pub fn thin_disk_nz_minus_nxy(tau: f64) -> f64 {
    let nz = 1.0 - (2.0 * tau / PI) * ((4.0 / tau).ln() - 0.5);
    (3.0 * nz - 1.0) / 2.0
}

impl DemagModel {
    pub fn nz_minus_nxy(&self, geom: &DeviceGeometry) -> f64 {
        match *self {
            DemagModel::Fixed { nz_minus_nxy } => nz_minus_nxy,
            DemagModel::ThinDisk { offset } => {
                thin_disk_nz_minus_nxy(geom.t_fl_m / geom.diameter_m) + offset
            }
        }
    }

    /// Model whose value at `geom` equals `n`, keeping the variant.
    pub fn matching(&self, geom: &DeviceGeometry, n: f64) -> Self {
        match self {
            DemagModel::Fixed { .. } => DemagModel::Fixed { nz_minus_nxy: n },
            DemagModel::ThinDisk { .. } => DemagModel::ThinDisk {
                offset: n - thin_disk_nz_minus_nxy(geom.t_fl_m / geom.diameter_m),
            },
        }
    }

    pub fn validate(&self, geom: &DeviceGeometry) -> Result<()> {
        let n = self.nz_minus_nxy(geom);
        if !(n > 0.0 && n < 1.0) {
            return Err(Error::Config(format!("N_z - N_xy = {n} outside (0, 1)")));
        }
        Ok(())
    }
}

/// Spin-transfer efficiency of the double-barrier stack, `4P / (1 - P^4)`.
pub fn stt_efficiency(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("polarization {p} not in (0, 1)")));
    }
    Ok(4.0 * p / (1.0 - p.powi(4)))
}

/// Snapshot of the material at one temperature, with magnetization in A/m.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MaterialPoint {
    pub p: f64,
    pub ms_t: f64,
    pub ms_a_per_m: f64,
    pub ki: f64,
}

impl MaterialPoint {
    pub fn at(deck: &MaterialDeck, t: f64) -> Result<Self> {
        let ms_t = deck.saturation_magnetization_at(t)?;
        Ok(Self {
            p: deck.polarization_at(t)?,
            ms_t,
            ms_a_per_m: ms_t / CODATA.mu0(),
            ki: deck.anisotropy_at(t)?,
        })
    }
}

fn hk_eff(geom: &DeviceGeometry, m: &MaterialPoint, n: f64) -> f64 {
    2.0 * m.ki / (geom.t_fl_m * m.ms_t) - n * m.ms_a_per_m
}

fn k_eff(geom: &DeviceGeometry, m: &MaterialPoint, n: f64) -> f64 {
    m.ki / geom.t_fl_m - 0.5 * m.ms_t * m.ms_a_per_m * n
}

/// Effective perpendicular anisotropy field (A/m).
pub fn effective_anisotropy_field(
    geom: &DeviceGeometry,
    deck: &MaterialDeck,
    demag: &DemagModel,
    t: f64,
) -> Result<f64> {
    let m = MaterialPoint::at(deck, t)?;
    let h = hk_eff(geom, &m, demag.nz_minus_nxy(geom));
    if !(h > 0.0) {
        return Err(Error::Config(format!(
            "in-plane instability: H_k,eff = {h:e} A/m at {t} K"
        )));
    }
    Ok(h)
}

/// Effective anisotropy energy density (J/m³).
pub fn effective_anisotropy(
    geom: &DeviceGeometry,
    deck: &MaterialDeck,
    demag: &DemagModel,
    t: f64,
) -> Result<f64> {
    let m = MaterialPoint::at(deck, t)?;
    Ok(k_eff(geom, &m, demag.nz_minus_nxy(geom)))
}

/// Zero-temperature-limit critical switching current (A).
pub fn critical_current(
    geom: &DeviceGeometry,
    deck: &MaterialDeck,
    demag: &DemagModel,
    t: f64,
) -> Result<f64> {
    let m = MaterialPoint::at(deck, t)?;
    let h = effective_anisotropy_field(geom, deck, demag, t)?;
    let g = stt_efficiency(m.p)?;
    let c = CODATA;
    Ok(deck.alpha * c.e() * c.gamma0() * c.mu0() * h * m.ms_a_per_m * geom.volume()
        / (c.mu_b() * g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    SingleDomain,
    DomainWall,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::SingleDomain => "single-domain",
            Regime::DomainWall => "domain-wall",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stability {
    pub delta: f64,
    pub regime: Regime,
    pub d_w_m: f64,
    pub k_eff_j_per_m3: f64,
}

/// Thermal stability factor with the single-domain / domain-wall branches.
pub fn thermal_stability(
    geom: &DeviceGeometry,
    deck: &MaterialDeck,
    demag: &DemagModel,
    t: f64,
) -> Result<Stability> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("thermal stability undefined at {t} K")));
    }
    let m = MaterialPoint::at(deck, t)?;
    let keff = k_eff(geom, &m, demag.nz_minus_nxy(geom));
    if !(keff > 0.0) {
        return Err(Error::Config(format!(
            "K_eff = {keff:e} J/m^3 at {t} K: no perpendicular easy axis"
        )));
    }
    let d_w = PI * (deck.aex / keff).sqrt();
    let kt = CODATA.k_b() * t;
    let (delta, regime) = if geom.diameter_m <= d_w {
        (keff * geom.volume() / kt, Regime::SingleDomain)
    } else {
        (PI.powi(3) * deck.aex * geom.t_fl_m / (4.0 * kt), Regime::DomainWall)
    };
    Ok(Stability {
        delta,
        regime,
        d_w_m: d_w,
        k_eff_j_per_m3: keff,
    })
}

/// Magnetic relaxation time `(1 + a^2) / (a gamma0 mu0 Hk)` (s).
pub fn relaxation_time(alpha: f64, hk_a_per_m: f64) -> f64 {
    (1.0 + alpha * alpha) / (alpha * CODATA.gamma0() * CODATA.mu0() * hk_a_per_m)
}

/// Smallest Δ giving ten years of retention with a 1 ns attempt time.
pub fn retention_threshold() -> f64 {
    (10.0 * 365.25 * 86_400.0 / 1e-9_f64).ln()
}
