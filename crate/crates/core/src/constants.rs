//! Physical constants (CODATA 2018, SI).

/// Fixed set of physical constants. The only instance is [`PhysicalConstants::CODATA`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    e: f64,
    mu0: f64,
    gamma0: f64,
    mu_b: f64,
    k_b: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        e: 1.602_176_634e-19,
        mu0: 1.256_637_062_12e-6,
        gamma0: 1.760_859_630_23e11,
        mu_b: 9.274_010_078_3e-24,
        k_b: 1.380_649e-23,
    };

    /// Elementary charge (C).
    pub const fn e(&self) -> f64 {
        self.e
    }

    /// Vacuum permeability (T·m/A).
    pub const fn mu0(&self) -> f64 {
        self.mu0
    }

    /// Electron gyromagnetic ratio magnitude (rad·s⁻¹·T⁻¹).
    pub const fn gamma0(&self) -> f64 {
        self.gamma0
    }

    /// Bohr magneton (J/T).
    pub const fn mu_b(&self) -> f64 {
        self.mu_b
    }

    /// Boltzmann constant (J/K).
    pub const fn k_b(&self) -> f64 {
        self.k_b
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA
    }
}

pub const CODATA: PhysicalConstants = PhysicalConstants::CODATA;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_positive() {
        let c = CODATA;
        for v in [c.e(), c.mu0(), c.gamma0(), c.mu_b(), c.k_b()] {
            assert!(v > 0.0);
        }
    }

    #[test]
    fn gyromagnetic_ratio_consistent_with_bohr_magneton() {
        // gamma0 = g mu_B / hbar with g ~ 2.00232
        let hbar = 1.054_571_817e-34;
        let g = CODATA.gamma0() * hbar / CODATA.mu_b();
        assert!((g - 2.002_319).abs() < 1e-5, "g = {g}");
    }
}
