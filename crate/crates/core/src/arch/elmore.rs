//! Elmore delay of RC ladders.

use std::f64::consts::LN_2;

/// Series resistors, each followed by a shunt capacitor to ground.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RcLadder {
    pub stages: Vec<(f64, f64)>,
}

impl RcLadder {
    pub fn push(&mut self, r: f64, c: f64) -> &mut Self {
        self.stages.push((r, c));
        self
    }

    /// Driver of resistance `r_drv` into a distributed wire (`r_wire`,
    /// `c_wire`, split in `segments`) loaded by `c_load` along its length
    /// and `c_end` at the far end.
    pub fn driven_line(r_drv: f64, r_wire: f64, c_wire: f64, c_load: f64, c_end: f64, segments: usize) -> Self {
        let n = segments.max(1);
        let mut l = Self::default();
        l.push(r_drv, 0.0);
        let (r, c) = (r_wire / n as f64, (c_wire + c_load) / n as f64);
        for _ in 0..n {
            l.push(r, c);
        }
        l.stages.last_mut().unwrap().1 += c_end;
        l
    }

    /// Sum over nodes of capacitance times upstream resistance.
    pub fn elmore(&self) -> f64 {
        let mut upstream = 0.0;
        let mut t = 0.0;
        for &(r, c) in &self.stages {
            upstream += r;
            t += upstream * c;
        }
        t
    }

    /// 50% step-response delay estimate.
    pub fn delay(&self) -> f64 {
        LN_2 * self.elmore()
    }

    pub fn total_c(&self) -> f64 {
        self.stages.iter().map(|s| s.1).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_stage_hand_value() {
        let mut l = RcLadder::default();
        l.push(1e3, 2e-15).push(3e3, 5e-15);
        // 1k*2f + (1k+3k)*5f
        let expect = 1e3 * 2e-15 + 4e3 * 5e-15;
        assert!((l.elmore() / expect - 1.0).abs() < 1e-9);
        assert!((l.delay() / (LN_2 * expect) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn distributed_limit() {
        // fine segmentation tends to R C / 2 plus the driver term
        let l = RcLadder::driven_line(100.0, 1e3, 1e-13, 0.0, 0.0, 4000);
        let expect = 100.0 * 1e-13 + 0.5 * 1e3 * 1e-13;
        assert!((l.elmore() / expect - 1.0).abs() < 1e-3);
        assert!((l.total_c() - 1e-13).abs() < 1e-25);
    }
}
