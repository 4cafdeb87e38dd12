//! Read disturb: thermally activated switching under a sub-critical current.

use super::analytic::ActivationModel;
use super::SwitchingDevice;
use crate::error::{Error, Result};

/// Probability that a read pulse of `t_read` at `i_read` flips the bit.
pub fn read_disturb_rate(
    dev: &SwitchingDevice,
    i_read: f64,
    t_read: f64,
    act: &ActivationModel,
) -> Result<f64> {
    let x = i_read.abs() / dev.i_c_a;
    if x >= 1.0 {
        return Err(Error::Domain(format!(
            "read current super-critical: {:e} A >= I_c = {:e} A",
            i_read.abs(),
            dev.i_c_a
        )));
    }
    if !(t_read > 0.0) {
        return Err(Error::Domain(format!("read pulse {t_read} s must be positive")));
    }
    Ok(-(-t_read / act.dwell_time(dev.delta, x)).exp_m1())
}

/// Largest read current whose disturb rate stays at `rdr_target`.
pub fn max_read_current(
    dev: &SwitchingDevice,
    rdr_target: f64,
    t_read: f64,
    act: &ActivationModel,
) -> Result<f64> {
    if !(rdr_target > 0.0 && rdr_target < 1.0) {
        return Err(Error::Domain(format!("RDR target {rdr_target} not in (0, 1)")));
    }
    if !(t_read > 0.0) {
        return Err(Error::Domain(format!("read pulse {t_read} s must be positive")));
    }
    // dwell time giving the target, then invert Delta (1 - x)^n
    let tau = t_read / -(-rdr_target).ln_1p();
    let barrier = (tau / act.tau0_s).ln();
    if barrier <= 0.0 {
        return Ok(dev.i_c_a);
    }
    let frac = barrier / dev.delta;
    if frac >= 1.0 {
        return Err(Error::Saturation(format!(
            "RDR {rdr_target:e} at {t_read:e} s needs Δ > {barrier:.1}; device has {:.1}",
            dev.delta
        )));
    }
    Ok(dev.i_c_a * (1.0 - frac.powf(1.0 / act.exponent)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dev() -> SwitchingDevice {
        SwitchingDevice { delta: 60.0, i_c_a: 2.9e-6, h_k_a_per_m: 4.4e5, alpha: 0.03 }
    }

    #[test]
    fn zero_current_floor() {
        let r = read_disturb_rate(&dev(), 0.0, 1e-9, &ActivationModel::default()).unwrap();
        assert!(r < 1e-20 && r > 0.0);
        assert!((r / (-60.0f64).exp() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn supercritical_is_domain_error() {
        let r = read_disturb_rate(&dev(), 3e-6, 1e-9, &ActivationModel::default());
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_round_trip() {
        let act = ActivationModel::default();
        let i = max_read_current(&dev(), 1e-9, 1e-9, &act).unwrap();
        let r = read_disturb_rate(&dev(), i, 1e-9, &act).unwrap();
        assert!((r / 1e-9 - 1.0).abs() < 1e-6);
        assert!(i < dev().i_c_a);
        let quad = ActivationModel { exponent: 2.0, ..act };
        let i2 = max_read_current(&dev(), 1e-9, 1e-9, &quad).unwrap();
        assert!((read_disturb_rate(&dev(), i2, 1e-9, &quad).unwrap() / 1e-9 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn target_near_one_approaches_ic() {
        let i = max_read_current(&dev(), 1.0 - 1e-12, 1e-9, &ActivationModel::default()).unwrap();
        assert!(i > 0.99 * dev().i_c_a && i <= dev().i_c_a);
    }

    proptest! {
        #[test]
        fn monotone_in_current_and_time(a in 0.0f64..0.99, b in 0.0f64..0.99, t in 1e-10f64..1e-6) {
            let act = ActivationModel::default();
            let d = dev();
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assume!(hi - lo > 1e-6);
            let r1 = read_disturb_rate(&d, lo * d.i_c_a, t, &act).unwrap();
            let r2 = read_disturb_rate(&d, hi * d.i_c_a, t, &act).unwrap();
            prop_assert!(r1 < r2);
            let r3 = read_disturb_rate(&d, lo * d.i_c_a, 2.0 * t, &act).unwrap();
            prop_assert!(r3 > r1);
        }
    }
}
