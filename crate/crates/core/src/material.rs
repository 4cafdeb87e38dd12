//! Temperature scaling of the free-layer material parameters.
//!
//! Spin polarization follows `P(T) = P0 (1 - beta T^1.5)`, saturation
//! magnetization follows the Bloch-like `Ms(T) = Ms0 (1 - (T/T*)^1.5)` and the
//! interfacial anisotropy tracks magnetization as `Ki(T) = Ki0 (Ms(T)/Ms0)^n`.
//! Magnetization is carried as `mu0*Ms` in tesla throughout.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lowest and highest supported temperature (K).
pub const T_MIN: f64 = 0.0;
pub const T_MAX: f64 = 400.0;

pub const DEFAULT_KI_EXPONENT: f64 = 2.18;

fn default_ki_exponent() -> f64 {
    DEFAULT_KI_EXPONENT
}

/// Material parameters of the CoFeB free layer.
///
/// Field names in deck files are the symbols used in the model
/// (`P0`, `Ms0`, `Ki0`, ...). Units: `Ms0` in T (as `mu0*Ms`), `Ki0` in J/m²,
/// `Aex` in J/m, `beta` in K^-1.5, `Tstar` in K.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialDeck {
    #[serde(rename = "P0")]
    pub p0: f64,
    #[serde(rename = "Ms0")]
    pub ms0: f64,
    #[serde(rename = "Ki0")]
    pub ki0: f64,
    pub alpha: f64,
    #[serde(rename = "Aex")]
    pub aex: f64,
    pub beta: f64,
    #[serde(rename = "Tstar")]
    pub t_star: f64,
    #[serde(default = "default_ki_exponent")]
    pub ki_exponent: f64,
}

/// Fit constants that are not derived from anchors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialFit {
    pub alpha: f64,
    #[serde(rename = "Aex")]
    pub aex: f64,
    pub beta: f64,
    #[serde(rename = "Tstar")]
    pub t_star: f64,
    #[serde(default = "default_ki_exponent")]
    pub ki_exponent: f64,
}

impl Default for MaterialFit {
    /// CoFeB values: beta = 2e-5 K^-1.5, T* = 1120 K, alpha = 0.03, Aex = 20 pJ/m.
    fn default() -> Self {
        Self {
            alpha: 0.03,
            aex: 20e-12,
            beta: 2e-5,
            t_star: 1120.0,
            ki_exponent: DEFAULT_KI_EXPONENT,
        }
    }
}

/// Measured values at one anchor temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialAnchors {
    pub temperature_k: f64,
    pub polarization: f64,
    /// `mu0*Ms` in tesla.
    pub ms_t: f64,
    pub ki_j_per_m2: f64,
}

impl MaterialAnchors {
    /// Room-temperature CoFeB anchors: P = 0.66, mu0Ms = 1.58 T, Ki = 1.3 mJ/m².
    pub fn cofeb_300k() -> Self {
        Self {
            temperature_k: 300.0,
            polarization: 0.66,
            ms_t: 1.58,
            ki_j_per_m2: 1.3e-3,
        }
    }
}

fn check_range(t: f64) -> Result<()> {
    if !(T_MIN..=T_MAX).contains(&t) || t.is_nan() {
        return Err(Error::Domain(format!(
            "temperature {t} K outside supported range [{T_MIN}, {T_MAX}] K"
        )));
    }
    Ok(())
}

impl MaterialDeck {
    /// Invert the three laws so that they reproduce `anchors` at the anchor temperature.
    pub fn calibrate(anchors: &MaterialAnchors, fit: &MaterialFit) -> Result<Self> {
        let t = anchors.temperature_k;
        check_range(t).map_err(|e| Error::Calibration(e.to_string()))?;
        if !(anchors.polarization > 0.0 && anchors.polarization < 1.0) {
            return Err(Error::Calibration(format!(
                "anchor polarization {} not in (0, 1)",
                anchors.polarization
            )));
        }
        if anchors.ms_t <= 0.0 || anchors.ki_j_per_m2 <= 0.0 {
            return Err(Error::Calibration(
                "anchor magnetization and anisotropy must be positive".into(),
            ));
        }
        if t >= fit.t_star {
            return Err(Error::Calibration(format!(
                "anchor temperature {t} K not below T* = {} K",
                fit.t_star
            )));
        }
        let p0 = anchors.polarization / (1.0 - fit.beta * t.powf(1.5));
        if !(p0 > 0.0 && p0 < 1.0) {
            return Err(Error::Calibration(format!("anchors imply P0 = {p0} outside (0, 1)")));
        }
        let ms0 = anchors.ms_t / (1.0 - (t / fit.t_star).powf(1.5));
        if ms0 <= 0.0 || !ms0.is_finite() {
            return Err(Error::Calibration(format!("anchors imply Ms0 = {ms0} T")));
        }
        let ki0 = anchors.ki_j_per_m2 / (anchors.ms_t / ms0).powf(fit.ki_exponent);
        let deck = Self {
            p0,
            ms0,
            ki0,
            alpha: fit.alpha,
            aex: fit.aex,
            beta: fit.beta,
            t_star: fit.t_star,
            ki_exponent: fit.ki_exponent,
        };
        deck.validate().map_err(|e| Error::Calibration(e.to_string()))?;
        Ok(deck)
    }

    /// CoFeB deck anchored at 300 K.
    pub fn cofeb() -> Self {
        Self::calibrate(&MaterialAnchors::cofeb_300k(), &MaterialFit::default())
            .expect("built-in anchors are valid")
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p0 > 0.0 && self.p0 < 1.0) {
            return Err(Error::Config(format!("P0 = {} not in (0, 1)", self.p0)));
        }
        for (name, v) in [
            ("Ms0", self.ms0),
            ("Ki0", self.ki0),
            ("Aex", self.aex),
            ("Tstar", self.t_star),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("{name} = {v} must be positive")));
            }
        }
        if !(self.alpha > 0.0 && self.alpha <= 0.2) {
            return Err(Error::Config(format!("alpha = {} not in (0, 0.2]", self.alpha)));
        }
        if self.beta < 0.0 || !self.beta.is_finite() {
            return Err(Error::Config(format!("beta = {} must be non-negative", self.beta)));
        }
        // P is decreasing, so the hot end of the range is the binding one.
        let p_hot = self.p0 * (1.0 - self.beta * T_MAX.powf(1.5));
        if p_hot <= 0.0 {
            return Err(Error::Config(format!(
                "P({T_MAX} K) = {p_hot} leaves (0, 1); beta too large"
            )));
        }
        if !self.ki_exponent.is_finite() || self.ki_exponent <= 0.0 {
            return Err(Error::Config("ki_exponent must be positive".into()));
        }
        Ok(())
    }

    /// Spin polarization at `t` kelvin.
    pub fn polarization_at(&self, t: f64) -> Result<f64> {
        check_range(t)?;
        Ok(self.p0 * (1.0 - self.beta * t.powf(1.5)))
    }

    /// `mu0*Ms` (tesla) at `t` kelvin. Defined for `t < Tstar`.
    pub fn saturation_magnetization_at(&self, t: f64) -> Result<f64> {
        check_range(t)?;
        if t >= self.t_star {
            return Err(Error::Domain(format!(
                "temperature {t} K at or above T* = {} K",
                self.t_star
            )));
        }
        Ok(self.ms0 * (1.0 - (t / self.t_star).powf(1.5)))
    }

    /// Interfacial perpendicular anisotropy (J/m²) at `t` kelvin.
    pub fn anisotropy_at(&self, t: f64) -> Result<f64> {
        let ms = self.saturation_magnetization_at(t)?;
        Ok(self.ki0 * (ms / self.ms0).powf(self.ki_exponent))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn reference_deck() -> MaterialDeck {
        MaterialDeck::cofeb()
    }

    #[test]
    fn zero_temperature_identities() {
        let d = reference_deck();
        assert_eq!(d.polarization_at(0.0).unwrap(), d.p0);
        assert_eq!(d.saturation_magnetization_at(0.0).unwrap(), d.ms0);
        assert_eq!(d.anisotropy_at(0.0).unwrap(), d.ki0);
    }

    #[test]
    fn polarization_back_solve_matches_forward_bitwise() {
        let p0 = 0.66 / (1.0 - 2e-5 * 300f64.powf(1.5));
        let expected = p0 * (1.0 - 2e-5 * 77f64.powf(1.5));
        let got = reference_deck().polarization_at(77.0).unwrap();
        assert_eq!(got.to_bits(), expected.to_bits());
        assert!((got - 0.73).abs() <= 0.005, "P(77) = {got}");
    }

    #[test]
    fn calibrated_p0() {
        // 0.66 / (1 - 2e-5 * 5196.152) = 0.66 / 0.896077
        assert!((reference_deck().p0 - 0.736_54).abs() < 1e-5);
    }

    #[test]
    fn magnetization_hand_values() {
        let d = reference_deck();
        // Ms0 = 1.58 / (1 - (300/1120)^1.5) = 1.58 / 0.861371
        let ms0 = 1.58 / (1.0 - (300.0f64 / 1120.0).powf(1.5));
        assert!((ms0 - 1.834_29).abs() < 1e-4);
        assert!((d.ms0 - ms0).abs() < 1e-12);
        let ms77 = d.saturation_magnetization_at(77.0).unwrap();
        assert!((ms77 - 1.80).abs() <= 0.01, "Ms(77) = {ms77}");
        assert!((ms77 - 1.801).abs() < 1e-3);
    }

    #[test]
    fn anisotropy_hand_values() {
        let ki77 = reference_deck().anisotropy_at(77.0).unwrap();
        let hand = 1.3e-3 * (1.801_22f64 / 1.58).powf(2.18);
        assert!((ki77 / hand - 1.0).abs() < 1e-4);
        assert!((ki77 / 1.73e-3 - 1.0).abs() <= 0.02, "Ki(77) = {ki77}");
    }

    #[test]
    fn out_of_range_temperature_is_domain_error() {
        let d = reference_deck();
        assert!(matches!(d.polarization_at(-1.0), Err(Error::Domain(_))));
        assert!(matches!(d.polarization_at(400.1), Err(Error::Domain(_))));
        let mut hot = d;
        hot.t_star = 350.0;
        assert!(matches!(hot.saturation_magnetization_at(360.0), Err(Error::Domain(_))));
        assert!(matches!(hot.anisotropy_at(350.0), Err(Error::Domain(_))));
    }

    #[test]
    fn anchors_at_zero_kelvin_are_the_deck() {
        let a = MaterialAnchors { temperature_k: 0.0, ..MaterialAnchors::cofeb_300k() };
        let d = MaterialDeck::calibrate(&a, &MaterialFit::default()).unwrap();
        assert_eq!(d.p0, 0.66);
        assert_eq!(d.ms0, 1.58);
        assert_eq!(d.ki0, 1.3e-3);
    }

    #[test]
    fn calibration_rejects_unphysical_anchors() {
        let fit = MaterialFit::default();
        let a = MaterialAnchors { polarization: 0.99, ..MaterialAnchors::cofeb_300k() };
        // 0.99 / 0.896 > 1
        assert!(matches!(MaterialDeck::calibrate(&a, &fit), Err(Error::Calibration(_))));
        let a = MaterialAnchors { ms_t: -1.0, ..MaterialAnchors::cofeb_300k() };
        assert!(matches!(MaterialDeck::calibrate(&a, &fit), Err(Error::Calibration(_))));
    }

    #[test]
    fn strictly_decreasing_on_dense_grid() {
        let d = reference_deck();
        let mut prev = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        for i in 0..=4000 {
            let t = i as f64 * 0.1;
            let cur = (
                d.polarization_at(t).unwrap(),
                d.saturation_magnetization_at(t).unwrap(),
                d.anisotropy_at(t).unwrap(),
            );
            if i > 0 {
                assert!(cur.0 < prev.0 && cur.1 < prev.1 && cur.2 < prev.2, "t = {t}");
            }
            prev = cur;
        }
    }

    #[test]
    fn toml_round_trip_uses_symbol_names() {
        let d = reference_deck();
        let s = toml::to_string(&d).unwrap();
        assert!(s.contains("P0 =") && s.contains("Tstar =") && s.contains("Aex ="));
        let back: MaterialDeck = toml::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    proptest! {
        #[test]
        fn calibration_round_trip(
            t in 0.0f64..400.0,
            p in 0.3f64..0.8,
            ms in 0.5f64..2.0,
            ki in 2e-4f64..3e-3,
        ) {
            let a = MaterialAnchors { temperature_k: t, polarization: p, ms_t: ms, ki_j_per_m2: ki };
            let d = MaterialDeck::calibrate(&a, &MaterialFit::default()).unwrap();
            prop_assert!((d.polarization_at(t).unwrap() / p - 1.0).abs() < 1e-12);
            prop_assert!((d.saturation_magnetization_at(t).unwrap() / ms - 1.0).abs() < 1e-12);
            prop_assert!((d.anisotropy_at(t).unwrap() / ki - 1.0).abs() < 1e-12);
        }

        #[test]
        fn anisotropy_tracks_magnetization_power(
            p0 in 0.3f64..0.9,
            ms0 in 0.5f64..2.5,
            ki0 in 1e-4f64..5e-3,
            n in 1.5f64..3.0,
            t_star in 500.0f64..1500.0,
            t in 0.0f64..400.0,
        ) {
            let d = MaterialDeck { p0, ms0, ki0, alpha: 0.03, aex: 2e-11, beta: 2e-5, t_star, ki_exponent: n };
            let lhs = d.anisotropy_at(t).unwrap() / d.ki0;
            let rhs = (d.saturation_magnetization_at(t).unwrap() / d.ms0).powf(n);
            prop_assert!((lhs / rhs - 1.0).abs() < 1e-13);
        }
    }
}
