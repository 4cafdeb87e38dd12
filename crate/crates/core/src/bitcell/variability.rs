//! Process variation sampling.

use serde::{Deserialize, Serialize};

use super::transistor::Transistor;
use crate::device::DeviceDeck;
use crate::error::{Error, Result};
use crate::rng::{child_seed, stream, truncated_normal};

const PROCESS_TAG: u64 = 0x70726f63;

fn default_truncation() -> f64 {
    4.0
}

/// Gaussian spreads of the bitcell fabrication parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariabilityDeck {
    /// Relative spread of the junction cross-section.
    pub sigma_over_mu_area: f64,
    /// Relative spread of free-layer and barrier thicknesses.
    pub sigma_over_mu_thickness: f64,
    pub transistor_vth_sigma_v: f64,
    /// Samples beyond this many sigma are redrawn.
    #[serde(default = "default_truncation")]
    pub truncation_sigma: f64,
    pub rng_seed: u64,
}

impl Default for VariabilityDeck {
    fn default() -> Self {
        Self {
            sigma_over_mu_area: 0.05,
            sigma_over_mu_thickness: 0.01,
            transistor_vth_sigma_v: 0.02,
            truncation_sigma: 4.0,
            rng_seed: 1,
        }
    }
}

impl VariabilityDeck {
    /// No variation at all.
    pub fn none(rng_seed: u64) -> Self {
        Self {
            sigma_over_mu_area: 0.0,
            sigma_over_mu_thickness: 0.0,
            transistor_vth_sigma_v: 0.0,
            rng_seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("sigma_over_mu_area", self.sigma_over_mu_area),
            ("sigma_over_mu_thickness", self.sigma_over_mu_thickness),
            ("transistor_vth_sigma_v", self.transistor_vth_sigma_v),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::Validation(format!("{name} = {v} must be >= 0")));
            }
        }
        if !(self.truncation_sigma > 0.0) {
            return Err(Error::Validation("truncation_sigma must be positive".into()));
        }
        // the truncated area factor must stay positive
        if self.sigma_over_mu_area * self.truncation_sigma >= 1.0
            || self.sigma_over_mu_thickness * self.truncation_sigma >= 1.0
        {
            return Err(Error::Validation("relative spread too large for truncation".into()));
        }
        Ok(())
    }

    /// Deviations of MC sample `index`. Depends only on the seed and index.
    pub fn sample(&self, geometry_of: &DeviceDeck, index: u64) -> ProcessSample {
        let mut rng = stream(child_seed(self.rng_seed, PROCESS_TAG), index);
        let lim = self.truncation_sigma;
        let mut z = [0.0; 5];
        for v in &mut z {
            *v = truncated_normal(&mut rng, lim);
        }
        let g = &geometry_of.geometry;
        let st = self.sigma_over_mu_thickness;
        ProcessSample {
            index,
            area_factor: 1.0 + self.sigma_over_mu_area * z[0],
            dt_fl_m: st * g.t_fl_m * z[1],
            dt_top_m: st * g.t_ox_top_m * z[2],
            dt_bottom_m: st * g.t_ox_bottom_m * z[3],
            dvth_v: self.transistor_vth_sigma_v * z[4],
        }
    }
}

/// One drawn set of fabrication deviations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcessSample {
    pub index: u64,
    pub area_factor: f64,
    pub dt_fl_m: f64,
    pub dt_top_m: f64,
    pub dt_bottom_m: f64,
    pub dvth_v: f64,
}

impl ProcessSample {
    pub fn apply(&self, deck: &DeviceDeck, tr: &Transistor) -> (DeviceDeck, Transistor) {
        (
            deck.perturbed(self.area_factor, self.dt_fl_m, self.dt_top_m, self.dt_bottom_m),
            tr.with_vth_shift(self.dvth_v),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::device::dmtj40;
    use proptest::prelude::*;

    #[test]
    fn zero_spread_is_nominal() {
        let d = dmtj40();
        let s = VariabilityDeck::none(3).sample(&d, 17);
        assert_eq!((s.area_factor, s.dt_fl_m, s.dt_top_m, s.dt_bottom_m, s.dvth_v), (1.0, 0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn sample_statistics() {
        let d = dmtj40();
        let v = VariabilityDeck::default();
        let a: Vec<f64> = (0..20_000).map(|k| v.sample(&d, k).area_factor).collect();
        let m = crate::stats::mean(&a);
        let s = crate::stats::std_dev(&a);
        assert!((m - 1.0).abs() < 2e-3, "{m}");
        assert!((s / 0.05 - 1.0).abs() < 0.03, "{s}");
    }

    #[test]
    fn rejects_negative_spread() {
        let v = VariabilityDeck { sigma_over_mu_area: -0.1, ..Default::default() };
        assert!(matches!(v.validate(), Err(Error::Validation(_))));
    }

    proptest! {
        #[test]
        fn truncated_and_reproducible(seed in any::<u64>(), index in any::<u64>()) {
            let d = dmtj40();
            let v = VariabilityDeck { rng_seed: seed, ..Default::default() };
            let s = v.sample(&d, index);
            prop_assert_eq!(s, v.sample(&d, index));
            prop_assert!((s.area_factor - 1.0).abs() <= 4.0 * 0.05 + 1e-15);
            prop_assert!(s.dvth_v.abs() <= 4.0 * 0.02 + 1e-15);
        }
    }
}
