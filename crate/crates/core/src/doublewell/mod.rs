//! Classical configurations of a self-interacting scalar field held at zero
//! on a sphere, and the energy floor they imply.
//!
//! In the rescaled variables `x = sqrt(lambda) phi_m r`, `Phi = phi / phi_m`
//! the double-well field equation is parameter free, so every profile is a
//! one-parameter family in the central amplitude `a = Phi(0)`. The coupling
//! `lambda` only enters the energy as an overall `1/lambda`.

mod dopri;
mod potential;
mod profile;

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::bound::{label_number, report_from_bound, BoundReport};
use crate::error::{BoundError, Result};

pub use dopri::{dopri_step, step_factor, OdeSystem, Step};
pub use potential::PotentialSpec;
pub use profile::{
    energy_form_residual, shoot, virial_check, ProfileSample, ShootingOptions, WellProfile,
    DEFAULT_ROOT_TOLERANCE, DEFAULT_TOLERANCE, DEFAULT_X_MAX, SERIES_START,
};

/// Exponent of `R` in `eps_c ~ R^n` in the small-amplitude limit, where
/// `eps_c ~ x0^4 / R` at fixed `x0`.
pub const LIMIT_EXPONENT: f64 = 3.0;
/// Amplitude standing in for `a -> 0`.
pub const REFERENCE_AMPLITUDE: f64 = 1e-3;
/// Default amplitude step for centered log-differences.
pub const DEFAULT_EXPONENT_STEP: f64 = 0.005;
/// Below this amplitude the exponent is taken as [`LIMIT_EXPONENT`]; the
/// difference quotient degenerates as `x0'(a) -> 0`.
pub const SMALL_AMPLITUDE: f64 = 0.005;

/// Solves the double-well profile starting at `Phi(0) = amplitude`.
///
/// Amplitudes at or above one never reach a zero: `Phi = 1` is a constant
/// solution and larger starts grow without bound.
pub fn shoot_profile(amplitude: f64, tolerance: f64) -> Result<WellProfile> {
    if !(amplitude > 0.0) {
        return Err(BoundError::domain(format!(
            "amplitude must be positive, got {amplitude}"
        )));
    }
    if amplitude >= 1.0 {
        return Err(BoundError::NoZero {
            amplitude,
            reason: "Phi(0) >= 1 is constant or increasing".into(),
        });
    }
    shoot(
        &PotentialSpec::double_well(),
        amplitude,
        &ShootingOptions::with_tolerance(tolerance),
    )
}

/// `F(a) = x0 int_0^x0 (1 - Phi^4) x^2 dx` at the default tolerance.
pub fn energy_factor(amplitude: f64) -> Result<f64> {
    Ok(shoot_profile(amplitude, DEFAULT_TOLERANCE)?.energy_factor)
}

/// Exponent `n` in `eps_c ~ R^n` along the solution family at fixed
/// `lambda` and `phi_m`, from centered differences of
/// `ln(F / x0)` against `ln x0`.
pub fn scaling_exponent(amplitude: f64, step: f64) -> Result<f64> {
    if !(step > 0.0) || !(amplitude - step > 0.0) || !(amplitude + step < 1.0) {
        return Err(BoundError::domain(format!(
            "amplitude {amplitude} +- {step} leaves (0, 1)"
        )));
    }
    let lo = shoot_profile(amplitude - step, DEFAULT_TOLERANCE)?;
    let hi = shoot_profile(amplitude + step, DEFAULT_TOLERANCE)?;
    let d_energy = (hi.quartic_integral / lo.quartic_integral).ln();
    let d_radius = (hi.first_zero / lo.first_zero).ln();
    Ok(d_energy / d_radius)
}

/// Scaling exponent used for energy floors: the limit value for small
/// amplitudes, the centered estimate otherwise (step shrunk near the ends of
/// `(0, 1)`).
pub fn effective_exponent(amplitude: f64) -> Result<f64> {
    if amplitude < SMALL_AMPLITUDE {
        return Ok(LIMIT_EXPONENT);
    }
    let step = DEFAULT_EXPONENT_STEP
        .min(0.5 * amplitude)
        .min(0.5 * (1.0 - amplitude));
    scaling_exponent(amplitude, step)
}

/// Energy the confining wall must carry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WallFloor {
    /// Suction on the wall in units of `eps_c / R^3`: `n / 4 pi`.
    pub suction_coeff: f64,
    /// Compression per unit length in units of `eps_c / R^2`: `n / 8 pi`.
    pub compression_coeff: f64,
    /// Minimum wall energy, `(n/2) F`, by the dominant energy condition.
    pub wall_energy_factor: f64,
    /// `(1 + n/2) F`.
    pub total_energy_factor: f64,
}

/// Wall requirements for a field whose energy factor is `energy_factor` and
/// whose energy scales as `R^exponent`.
pub fn wall_energy_floor(energy_factor: f64, exponent: f64) -> Result<WallFloor> {
    if !(exponent > 0.0) {
        return Err(BoundError::domain("scaling exponent must be positive"));
    }
    Ok(WallFloor {
        suction_coeff: exponent / (4.0 * PI),
        compression_coeff: exponent / (8.0 * PI),
        wall_energy_factor: 0.5 * exponent * energy_factor,
        total_energy_factor: (1.0 + 0.5 * exponent) * energy_factor,
    })
}

/// `C(a)` with `2 pi E R >= C(a) / lambda`: field plus minimal wall.
pub fn bound_coefficient(amplitude: f64) -> Result<f64> {
    let f = energy_factor(amplitude)?;
    let n = effective_exponent(amplitude)?;
    Ok(2.0 * PI * wall_energy_floor(f, n)?.total_energy_factor / 4.0)
}

/// [`bound_coefficient`] at [`REFERENCE_AMPLITUDE`], computed once.
pub fn reference_bound_coefficient() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| {
        bound_coefficient(REFERENCE_AMPLITUDE).expect("reference amplitude always has a zero")
    })
}

/// Coupling above which the floor `C / lambda` drops below `entropy_nats`.
pub fn critical_coupling(entropy_nats: f64) -> Result<f64> {
    if !(entropy_nats > 0.0) {
        return Err(BoundError::domain("entropy must be positive"));
    }
    Ok(reference_bound_coefficient() / entropy_nats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingRegime {
    Weak,
    /// `lambda` above the critical coupling: the quartic theory is not
    /// trustworthy there, so no verdict is drawn.
    StrongCoupling,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoubleWellReport {
    pub report: BoundReport,
    pub regime: CouplingRegime,
    pub first_zero: f64,
    pub energy_factor: f64,
    pub exponent: f64,
    pub bound_coefficient: f64,
    pub critical_coupling: f64,
    pub virial_residual: f64,
}

/// Mixed state of entropy `entropy_nats` built on the classical profile of
/// amplitude `amplitude`, at coupling `coupling`.
pub fn double_well_report(
    amplitude: f64,
    coupling: f64,
    entropy_nats: f64,
) -> Result<DoubleWellReport> {
    double_well_report_with_tolerance(amplitude, coupling, entropy_nats, DEFAULT_TOLERANCE)
}

/// [`double_well_report`] with the profile solved at `tolerance`.
pub fn double_well_report_with_tolerance(
    amplitude: f64,
    coupling: f64,
    entropy_nats: f64,
    tolerance: f64,
) -> Result<DoubleWellReport> {
    if !(coupling > 0.0) {
        return Err(BoundError::domain("coupling must be positive"));
    }
    let profile = shoot_profile(amplitude, tolerance)?;
    let exponent = effective_exponent(amplitude)?;
    let coefficient =
        2.0 * PI * wall_energy_floor(profile.energy_factor, exponent)?.total_energy_factor / 4.0;
    let critical = critical_coupling(entropy_nats)?;
    let regime = if coupling > critical {
        CouplingRegime::StrongCoupling
    } else {
        CouplingRegime::Weak
    };
    let label = format!(
        "doublewell a={} lambda={}",
        label_number(amplitude),
        label_number(coupling)
    );
    Ok(DoubleWellReport {
        report: report_from_bound(entropy_nats, coefficient / coupling, label),
        regime,
        first_zero: profile.first_zero,
        energy_factor: profile.energy_factor,
        exponent,
        bound_coefficient: coefficient,
        critical_coupling: critical,
        virial_residual: profile.virial_residual,
    })
}

/// Shooting solution for an arbitrary potential.
///
/// The double-well spec reproduces [`shoot_profile`] exactly.
pub fn multiwell_profile(
    potential: &PotentialSpec,
    amplitude: f64,
    tolerance: f64,
) -> Result<WellProfile> {
    shoot(
        potential,
        amplitude,
        &ShootingOptions::with_tolerance(tolerance),
    )
}

/// Energy of the configurations that start in a side well and end at
/// `Phi = 0` on the wall, scanned over starting amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SideWellSearch {
    pub amplitudes_tried: usize,
    /// `eps_c lambda R / hbar c` of the lowest-energy profile found.
    pub classical_energy: Option<f64>,
    pub amplitude: Option<f64>,
    pub last_error: Option<String>,
}

/// Tries every amplitude in `amplitudes` and keeps the cheapest profile.
pub fn side_well_search(
    potential: &PotentialSpec,
    amplitudes: &[f64],
    tolerance: f64,
) -> SideWellSearch {
    let mut out = SideWellSearch {
        amplitudes_tried: amplitudes.len(),
        classical_energy: None,
        amplitude: None,
        last_error: None,
    };
    for &a in amplitudes {
        match multiwell_profile(potential, a, tolerance) {
            Ok(p) => {
                if out.classical_energy.is_none_or(|e| p.classical_energy < e) {
                    out.classical_energy = Some(p.classical_energy);
                    out.amplitude = Some(a);
                }
            }
            Err(e) => out.last_error = Some(e.to_string()),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amplitude_domain() {
        assert!(matches!(
            shoot_profile(1.0, 1e-10),
            Err(BoundError::NoZero { .. })
        ));
        assert!(matches!(
            shoot_profile(1.2, 1e-10),
            Err(BoundError::NoZero { .. })
        ));
        assert!(matches!(
            shoot_profile(0.0, 1e-10),
            Err(BoundError::Domain(_))
        ));
        assert!(matches!(
            shoot_profile(-0.3, 1e-10),
            Err(BoundError::Domain(_))
        ));
    }

    #[test]
    fn wall_floor_values() {
        let w = wall_energy_floor(10.0, 3.0).unwrap();
        assert!((w.total_energy_factor - 25.0).abs() < 1e-14);
        assert!((w.wall_energy_factor - 15.0).abs() < 1e-14);
        assert!((w.suction_coeff - 3.0 / (4.0 * PI)).abs() < 1e-15);
        let w = wall_energy_floor(232.23, 2.86).unwrap();
        assert!((w.total_energy_factor - 2.43 * 232.23).abs() < 1e-9);
        let w = wall_energy_floor(7.0, 1e-12).unwrap();
        assert!((w.total_energy_factor - 7.0).abs() < 1e-10);
        assert!(wall_energy_floor(7.0, 0.0).is_err());
    }

    #[test]
    fn critical_coupling_values() {
        let c = reference_bound_coefficient();
        assert!((critical_coupling(2f64.ln()).unwrap() - 183.95).abs() < 1.0);
        assert!((critical_coupling(3f64.ln()).unwrap() - c / 3f64.ln()).abs() < 1e-12);
        assert!((critical_coupling(3f64.ln()).unwrap() - 116.1).abs() < 0.5);
        assert!(critical_coupling(1e300).unwrap() < 1e-290);
        assert_eq!(critical_coupling(2f64.ln()).unwrap(), c / 2f64.ln());
    }

    #[test]
    fn double_well_spec_is_shoot_profile() {
        let a = shoot_profile(0.5, 1e-10).unwrap();
        let b = multiwell_profile(&PotentialSpec::double_well(), 0.5, 1e-10).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn strong_coupling_is_not_a_verdict() {
        let r = double_well_report(0.01, 200.0, 2f64.ln()).unwrap();
        assert_eq!(r.regime, CouplingRegime::StrongCoupling);
        let r = double_well_report(0.01, 1.0, 2f64.ln()).unwrap();
        assert_eq!(r.regime, CouplingRegime::Weak);
        assert!(r.report.satisfied);
    }
}
