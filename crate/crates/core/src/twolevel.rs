//! Canonical ensemble of a cavity with a unique ground state at `eps0` and a
//! `g`-fold degenerate level a gap `Delta` above it.
//!
//! All quantities are dimensionless: `rho0 = R eps0`, `rho_gap = R Delta`,
//! `y = beta Delta`. The partition function is truncated to the two levels.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bound::{label_number, report_from_bound, BoundReport};
use crate::error::{BoundError, Result};
use crate::optimize::golden_section_max;

/// Illustrative ground-state energy `R eps0`; anything above one keeps the
/// system's Compton length inside it.
pub const DEFAULT_RHO0: f64 = 2.0;

const XI_SEARCH_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelSystem {
    pub rho0: f64,
    pub rho_gap: f64,
    pub degeneracy: f64,
    pub y: f64,
}

impl TwoLevelSystem {
    pub fn new(rho0: f64, rho_gap: f64, degeneracy: u64, y: f64) -> Result<Self> {
        let sys = TwoLevelSystem {
            rho0,
            rho_gap,
            degeneracy: degeneracy as f64,
            y,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho0 > 0.0) || !self.rho0.is_finite() {
            return Err(BoundError::domain(
                "ground-state energy R*eps0 must be positive",
            ));
        }
        if !(self.rho_gap >= 0.0) || !self.rho_gap.is_finite() {
            return Err(BoundError::domain("gap R*Delta must be non-negative"));
        }
        if !(self.degeneracy >= 1.0) {
            return Err(BoundError::domain("degeneracy must be at least one"));
        }
        if !(self.y >= 0.0) {
            return Err(BoundError::domain("beta*Delta must be non-negative"));
        }
        Ok(())
    }

    pub fn with_y(self, y: f64) -> Self {
        TwoLevelSystem { y, ..self }
    }

    /// Occupation probability of the excited level, `g / (e^y + g)`.
    fn excited_fraction(&self) -> f64 {
        let w = self.degeneracy * (-self.y).exp();
        w / (1.0 + w)
    }
}

/// `R E = rho0 + rho_gap g / (e^y + g)`.
pub fn mean_energy_radius(sys: &TwoLevelSystem) -> f64 {
    sys.rho0 + sys.rho_gap * sys.excited_fraction()
}

/// `S = g y / (e^y + g) + ln(1 + g e^-y)`. Depends on `y` and `g` only.
pub fn canonical_entropy(sys: &TwoLevelSystem) -> f64 {
    let p = sys.excited_fraction();
    let thermal = if p == 0.0 { 0.0 } else { sys.y * p };
    thermal + (sys.degeneracy * (-sys.y).exp()).ln_1p()
}

/// The y-dependent part of `Xi`, without the constant `-2 pi rho0`.
fn xi_shape(sys: &TwoLevelSystem, y: f64) -> f64 {
    let s = sys.with_y(y);
    let p = s.excited_fraction();
    let thermal = if p == 0.0 {
        0.0
    } else {
        (y - 2.0 * PI * sys.rho_gap) * p
    };
    thermal + (sys.degeneracy * (-y).exp()).ln_1p()
}

/// [`xi_shape`] minus the constant `ln g - 2 pi rho_gap`, written in the
/// ground fraction `q = e^y / (e^y + g)`. When the excited level dominates
/// the peak is very flat and this form keeps the variation above rounding.
fn xi_shape_mostly_excited(sys: &TwoLevelSystem, y: f64) -> f64 {
    let r = y.exp() / sys.degeneracy;
    let q = r / (1.0 + r);
    r.ln_1p() - (y - 2.0 * PI * sys.rho_gap) * q
}

/// `Xi(y) = S - 2 pi R E`.
pub fn xi(sys: &TwoLevelSystem) -> f64 {
    xi_shape(sys, sys.y) - 2.0 * PI * sys.rho0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XiMaximum {
    /// `2 pi rho_gap`.
    pub y_star: f64,
    /// `ln(1 + g e^{-2 pi rho_gap}) - 2 pi rho0`.
    pub xi_star: f64,
    /// Location found by direct golden-section search.
    pub y_numeric: f64,
}

/// Largest value of `Xi` over all temperatures.
///
/// The peak sits at `y = 2 pi rho_gap`; a golden-section search over
/// `[0, max(10, 4 pi rho_gap)]` is run alongside as a cross-check.
pub fn xi_maximum(sys: &TwoLevelSystem) -> XiMaximum {
    let y_star = 2.0 * PI * sys.rho_gap;
    let xi_star = xi_star(sys.degeneracy, sys.rho_gap, sys.rho0);
    let hi = f64::max(10.0, 4.0 * PI * sys.rho_gap);
    let numeric = if sys.degeneracy * (-y_star).exp() > 1.0 {
        golden_section_max(|y| xi_shape_mostly_excited(sys, y), 0.0, hi, XI_SEARCH_TOL)
    } else {
        golden_section_max(|y| xi_shape(sys, y), 0.0, hi, XI_SEARCH_TOL)
    };
    XiMaximum {
        y_star,
        xi_star,
        y_numeric: numeric.x,
    }
}

fn xi_star(g: f64, rho_gap: f64, rho0: f64) -> f64 {
    (g * (-2.0 * PI * rho_gap).exp()).ln_1p() - 2.0 * PI * rho0
}

/// Degeneracy `e^{2 pi rho_gap} (e^{2 pi rho0} - 1)` at which the peak of
/// `Xi` reaches zero.
pub fn critical_degeneracy(rho_gap: f64, rho0: f64) -> f64 {
    (2.0 * PI * rho_gap).exp() * (2.0 * PI * rho0).exp_m1()
}

/// Bound check at the system's own temperature.
pub fn two_level_report(sys: &TwoLevelSystem) -> Result<BoundReport> {
    sys.validate()?;
    let label = format!("two_level g={} y={}", sys.degeneracy, label_number(sys.y));
    Ok(report_from_bound(
        canonical_entropy(sys),
        2.0 * PI * mean_energy_radius(sys),
        label,
    ))
}

/// How the ground-state energy responds to adding species.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroundEnergyModel {
    /// `rho0` independent of the species count.
    Constant(f64),
    /// `rho0 = c0 * N_species`, each species adding its own wall and
    /// vacuum energy.
    LinearInSpecies(f64),
}

impl GroundEnergyModel {
    pub fn rho0(&self, n_species: u64) -> f64 {
        match *self {
            GroundEnergyModel::Constant(r) => r,
            GroundEnergyModel::LinearInSpecies(c0) => c0 * n_species as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpeciesSweep {
    /// Smallest species count whose peak `Xi` is non-negative.
    pub first_violation: Option<u64>,
    /// Largest peak `Xi` seen over the sweep.
    pub max_xi_star: f64,
    pub species_at_max: u64,
}

/// Scans species counts `1..=max_species` with degeneracy growing as
/// `N * g_per_species`.
pub fn species_sweep(
    g_per_species: u64,
    rho_gap: f64,
    model: GroundEnergyModel,
    max_species: u64,
) -> Result<SpeciesSweep> {
    if g_per_species == 0 || !(rho_gap >= 0.0) {
        return Err(BoundError::domain(
            "species sweep needs g >= 1 and rho_gap >= 0",
        ));
    }
    match model {
        GroundEnergyModel::Constant(r) | GroundEnergyModel::LinearInSpecies(r) if !(r > 0.0) => {
            return Err(BoundError::domain(
                "ground-energy coefficient must be positive",
            ));
        }
        _ => {}
    }
    let mut out = SpeciesSweep {
        first_violation: None,
        max_xi_star: f64::NEG_INFINITY,
        species_at_max: 0,
    };
    for n in 1..=max_species {
        let g = (n * g_per_species) as f64;
        let value = xi_star(g, rho_gap, model.rho0(n));
        if value > out.max_xi_star {
            out.max_xi_star = value;
            out.species_at_max = n;
        }
        if value >= 0.0 && out.first_violation.is_none() {
            out.first_violation = Some(n);
            if matches!(model, GroundEnergyModel::Constant(_)) {
                // peak Xi only grows with N from here on
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_shape_agrees_with_direct_shape() {
        let s = sys(1.0, 0.3, 5000, 0.0);
        for y in [0.0, 0.5, 1.9, 4.0, 9.0] {
            let shifted = xi_shape_mostly_excited(&s, y) + 5000f64.ln() - 2.0 * PI * 0.3;
            assert!((shifted - xi_shape(&s, y)).abs() < 1e-12, "y = {y}");
        }
    }

    #[test]
    fn flat_peak_located_precisely() {
        let s = sys(1.24, 0.009085848781256178, 4_252_373, 1.0);
        let m = xi_maximum(&s);
        assert!((m.y_numeric - m.y_star).abs() < 1e-6, "{m:?}");
    }

    fn sys(rho0: f64, rho_gap: f64, g: u64, y: f64) -> TwoLevelSystem {
        TwoLevelSystem::new(rho0, rho_gap, g, y).unwrap()
    }

    #[test]
    fn energy_limits_and_values() {
        assert_eq!(mean_energy_radius(&sys(2.0, 0.1, 3, 800.0)), 2.0);
        assert!((mean_energy_radius(&sys(2.0, 0.1, 1, 0.0)) - 2.05).abs() < 1e-15);
        let e = 1f64.exp();
        let v = mean_energy_radius(&sys(2.0, 0.1, 3, 1.0));
        assert!((v - (2.0 + 0.3 / (e + 3.0))).abs() < 1e-15);
        assert!((v - 2.05246).abs() < 1e-5);
    }

    #[test]
    fn entropy_limits_and_values() {
        assert_eq!(canonical_entropy(&sys(2.0, 0.1, 3, 1e4)), 0.0);
        assert!((canonical_entropy(&sys(2.0, 0.1, 5, 0.0)) - 6f64.ln()).abs() < 1e-15);
        let e = 1f64.exp();
        let v = canonical_entropy(&sys(2.0, 0.1, 1, 1.0));
        assert!((v - (1.0 / (e + 1.0) + (1.0 / e).ln_1p())).abs() < 1e-15);
        assert!((v - 0.58220).abs() < 1e-5);
    }

    #[test]
    fn entropy_ignores_energy_scales() {
        let a = sys(2.0, 0.1, 7, 1.3);
        let b = sys(9.0, 4.2, 7, 1.3);
        assert_eq!(canonical_entropy(&a), canonical_entropy(&b));
    }

    #[test]
    fn xi_values() {
        let v = xi(&sys(2.0, 0.0, 1, 0.0));
        assert!((v - (2f64.ln() - 4.0 * PI)).abs() < 1e-13);
        assert!((v + 11.873).abs() < 1e-3);
        let s = sys(2.0, 0.3, 4, 2.0 * PI * 0.3);
        let expected = (4.0 * (-2.0 * PI * 0.3f64).exp()).ln_1p() - 4.0 * PI;
        assert!((xi(&s) - expected).abs() < 1e-13);
        assert!((xi(&sys(2.0, 0.3, 4, 1e4)) + 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn xi_maximum_values() {
        let m = xi_maximum(&sys(2.0, 0.0, 3, 1.0));
        assert_eq!(m.y_star, 0.0);
        assert!((m.xi_star - (4f64.ln() - 4.0 * PI)).abs() < 1e-13);
        assert!(m.y_numeric < 1e-4);

        let m = xi_maximum(&sys(2.0, 0.5, 3, 1.0));
        assert!((m.xi_star - ((3.0 * (-PI).exp()).ln_1p() - 4.0 * PI)).abs() < 1e-13);
        assert!((m.xi_star + 12.44447).abs() < 1e-5);
        assert!((m.y_numeric - PI).abs() < 1e-4);
        for eps in [-1e-2, 1e-2] {
            assert!(xi(&sys(2.0, 0.5, 3, PI + eps)) < m.xi_star);
        }
    }

    #[test]
    fn critical_degeneracy_values() {
        let g = critical_degeneracy(0.0, 2.0);
        assert!((g - ((4.0 * PI).exp() - 1.0)).abs() < 1e-6);
        assert!((g / 2.87e5 - 1.0).abs() < 0.01 / 2.87);
        assert!(critical_degeneracy(0.0, 1e-12) < 1e-10);
        for (gap, rho0) in [(0.0, 2.0), (0.4, 1.0), (1.2, 0.7)] {
            let gc = critical_degeneracy(gap, rho0);
            assert!(xi_star(1.01 * gc, gap, rho0) > 0.0);
            assert!(xi_star(0.99 * gc, gap, rho0) < 0.0);
        }
    }

    #[test]
    fn species_sweep_constant_ground_energy() {
        let sweep = species_sweep(1, 0.0, GroundEnergyModel::Constant(2.0), 1_000_000).unwrap();
        let crit = critical_degeneracy(0.0, 2.0);
        assert_eq!(sweep.first_violation, Some(crit.ceil() as u64));
        // e^{4 pi} - 1 = 286750.31
        assert_eq!(sweep.first_violation, Some(286_751));
    }

    #[test]
    fn species_sweep_linear_ground_energy_recovers_bound() {
        let c0 = 1.0001 * 2f64.ln() / (2.0 * PI);
        let sweep = species_sweep(1, 0.0, GroundEnergyModel::LinearInSpecies(c0), 500_000).unwrap();
        assert_eq!(sweep.first_violation, None);
        assert!(sweep.max_xi_star < 0.0);
    }

    #[test]
    fn empty_sweep() {
        let sweep = species_sweep(1, 0.0, GroundEnergyModel::Constant(2.0), 0).unwrap();
        assert_eq!(sweep.first_violation, None);
    }
}
