//! Rest-energy floors for conductors that confine photons.
//!
//! A partition or an inner cable conductor only traps the field if its charge
//! carriers screen it out, either through a high plasma frequency or through
//! the Ohmic skin effect. Both set a minimum carrier density, and the rest
//! energy of those carriers alone sets a floor on `2 pi E R`.
//!
//! Natural units throughout: `hbar = c = 1`, so masses are inverse lengths and
//! `e^2` is the fine-structure-like coupling, at most one.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bound::{report_from_bound, BoundReport};
use crate::error::{BoundError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarrierSpec {
    /// Carriers per unit volume.
    pub density: f64,
    /// `e^2` in units of `hbar c`.
    pub charge_sq: f64,
    pub mass: f64,
    /// Drude collision time.
    pub relaxation_time: f64,
}

impl CarrierSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.density > 0.0 && self.density.is_finite()) {
            return Err(BoundError::domain("carrier density must be positive"));
        }
        if !(self.charge_sq > 0.0 && self.charge_sq <= 1.0) {
            return Err(BoundError::domain("e^2 must lie in (0, 1]"));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(BoundError::domain("carrier mass must be positive"));
        }
        if !(self.relaxation_time > 0.0) {
            return Err(BoundError::domain("relaxation time must be positive"));
        }
        Ok(())
    }
}

/// `omega_p = sqrt(4 pi N e^2 / m)`.
pub fn plasma_frequency(carrier: &CarrierSpec) -> f64 {
    (4.0 * PI * carrier.density * carrier.charge_sq / carrier.mass).sqrt()
}

/// Penetration depth of an evanescent wave below the plasma cutoff,
/// `(1/omega) (omega_p^2/omega^2 - 1)^(-1/2)`. Always exceeds `1/omega_p`.
pub fn evanescent_depth(omega: f64, omega_p: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(BoundError::domain("frequency must be positive"));
    }
    if omega >= omega_p {
        return Err(BoundError::Propagation { omega, omega_p });
    }
    // algebraically (omega_p^2 - omega^2)^(-1/2)
    Ok(((omega_p - omega) * (omega_p + omega)).sqrt().recip())
}

/// Drude conductivity `N e^2 / (m/tau - i m omega)`.
pub fn drude_conductivity(carrier: &CarrierSpec, omega: f64) -> Complex64 {
    let denom = Complex64::new(
        carrier.mass / carrier.relaxation_time,
        -carrier.mass * omega,
    );
    Complex64::new(carrier.density * carrier.charge_sq, 0.0) / denom
}

/// Skin depth `(2 pi omega sigma)^(-1/2)` for an Ohmic conductivity.
pub fn skin_depth(omega: f64, sigma_real: f64) -> Result<f64> {
    if !(omega > 0.0 && sigma_real > 0.0) {
        return Err(BoundError::domain(
            "skin depth needs positive omega and conductivity",
        ));
    }
    Ok((2.0 * PI * omega * sigma_real).sqrt().recip())
}

/// Frequency-independent lower limit `(2 pi N e^2 / m)^(-1/2)` on the skin
/// depth when `omega << 1/tau`.
pub fn skin_depth_floor(carrier: &CarrierSpec) -> f64 {
    (2.0 * PI * carrier.density * carrier.charge_sq / carrier.mass)
        .sqrt()
        .recip()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mechanism {
    /// Collisionless plasma: `omega_p * d >= 1`.
    Plasma,
    /// Ohmic skin effect: skin-depth floor `<= d`.
    Skin,
}

impl Mechanism {
    /// Smallest carrier density that screens a layer of thickness `thickness`.
    pub fn minimal_density(self, thickness: f64, carrier: &CarrierSpec) -> f64 {
        let k = match self {
            Mechanism::Plasma => 4.0 * PI,
            Mechanism::Skin => 2.0 * PI,
        };
        carrier.mass / (k * carrier.charge_sq * thickness * thickness)
    }

    /// Coefficient of `n^4` in the analytic floor on `2 pi E R`.
    pub fn floor_coefficient(self) -> f64 {
        match self {
            Mechanism::Plasma => 2.0,
            Mechanism::Skin => 4.0,
        }
    }
}

/// A sphere of radius `R` split into `n` shells by conducting partitions of
/// thickness `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OnionScene {
    pub n_shells: u64,
    pub outer_radius: f64,
    pub partition_thickness: f64,
    pub carrier: CarrierSpec,
}

impl OnionScene {
    pub fn validate(&self) -> Result<()> {
        self.carrier.validate()?;
        if self.n_shells == 0 {
            return Err(BoundError::domain("need at least one shell"));
        }
        if !(self.outer_radius > 0.0 && self.partition_thickness > 0.0) {
            return Err(BoundError::domain("radius and thickness must be positive"));
        }
        let n = self.n_shells as f64;
        if self.partition_thickness * n > self.outer_radius * (1.0 + 1e-12) {
            return Err(BoundError::domain(format!(
                "{} partitions of thickness {} do not fit in radius {}",
                self.n_shells, self.partition_thickness, self.outer_radius
            )));
        }
        if self.carrier.mass * self.partition_thickness < 1.0 - 1e-12 {
            return Err(BoundError::domain(
                "carrier Compton length exceeds the partition thickness",
            ));
        }
        Ok(())
    }

    /// `sum_{i=1}^{n} (i/n)^2`, which tends to `n/3` for many shells.
    pub fn area_sum(&self) -> f64 {
        let n = self.n_shells as f64;
        (n + 1.0) * (2.0 * n + 1.0) / (6.0 * n)
    }

    /// Rest energy of all carriers in the partitions.
    pub fn carrier_rest_energy(&self) -> f64 {
        let outer_volume = 4.0 * PI * self.outer_radius.powi(2) * self.partition_thickness;
        outer_volume * self.area_sum() * self.carrier.density * self.carrier.mass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OnionReport {
    pub report: BoundReport,
    pub mechanism: Mechanism,
    pub minimal_density: f64,
    pub plasma_frequency: f64,
    /// `2 n^4` (plasma) or `4 n^4` (skin).
    pub analytic_floor: f64,
    pub floor_respected: bool,
}

/// Photon entropy `ln(3n)` of the nested shells against the rest energy of
/// the partitions' carriers.
pub fn onion_report(scene: &OnionScene, mechanism: Mechanism) -> Result<OnionReport> {
    scene.validate()?;
    let minimal_density = mechanism.minimal_density(scene.partition_thickness, &scene.carrier);
    if scene.carrier.density < minimal_density {
        return Err(BoundError::Confinement {
            density: scene.carrier.density,
            minimum: minimal_density,
        });
    }
    let n = scene.n_shells as f64;
    let entropy = (3.0 * n).ln();
    let bound = 2.0 * PI * scene.outer_radius * scene.carrier_rest_energy();
    let analytic_floor = mechanism.floor_coefficient() * n.powi(4);
    let label = format!("onion n={} {:?}", scene.n_shells, mechanism).to_lowercase();
    Ok(OnionReport {
        report: report_from_bound(entropy, bound, label),
        mechanism,
        minimal_density,
        plasma_frequency: plasma_frequency(&scene.carrier),
        analytic_floor,
        floor_respected: bound >= analytic_floor,
    })
}

/// A coaxial cable of length `L` coiled into a sphere of radius `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoaxScene {
    pub cable_length: f64,
    pub sphere_radius: f64,
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub carrier: CarrierSpec,
}

/// Cable length must exceed the sphere radius by at least this factor.
pub const COAX_LENGTH_RATIO: f64 = 10.0;
/// In multimode counting the sphere radius must exceed the cable's outer
/// radius by at least this factor.
pub const COAX_THIN_CABLE_RATIO: f64 = 2.0;

impl CoaxScene {
    pub fn validate(&self) -> Result<()> {
        self.carrier.validate()?;
        if !(self.inner_radius > 0.0) {
            return Err(BoundError::domain("inner radius must be positive"));
        }
        if !(self.outer_radius > self.inner_radius) {
            return Err(BoundError::domain("outer radius must exceed inner radius"));
        }
        if !(self.sphere_radius >= self.outer_radius) {
            return Err(BoundError::domain("cable does not fit in the sphere"));
        }
        if !(self.cable_length >= COAX_LENGTH_RATIO * self.sphere_radius) {
            return Err(BoundError::domain(
                "cable must be much longer than the sphere radius",
            ));
        }
        if self.carrier.mass * self.inner_radius < 1.0 - 1e-12 {
            return Err(BoundError::domain(
                "carrier Compton length exceeds the inner conductor radius",
            ));
        }
        Ok(())
    }

    /// Minimum density `m / (4 pi e^2 rho1^2)` for the inner conductor to
    /// block evanescent waves.
    pub fn minimal_density(&self) -> f64 {
        Mechanism::Plasma.minimal_density(self.inner_radius, &self.carrier)
    }

    /// Rest energy `pi rho1^2 L N m` of the inner conductor.
    pub fn carrier_rest_energy(&self) -> f64 {
        PI * self.inner_radius.powi(2)
            * self.cable_length
            * self.carrier.density
            * self.carrier.mass
    }

    /// `(pi / 2 e^2) (L / rho1) (R / rho1)`.
    pub fn analytic_floor(&self) -> f64 {
        PI / (2.0 * self.carrier.charge_sq)
            * (self.cable_length / self.inner_radius)
            * (self.sphere_radius / self.inner_radius)
    }

    /// Number of doubly degenerate low-lying axial modes, `2 L / rho2`.
    pub fn axial_mode_count(&self) -> f64 {
        2.0 * self.cable_length / self.outer_radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoaxMode {
    /// Vacuum plus one photon in either lowest mode: `S = ln 3`.
    ThreeState,
    /// All multiphoton states below the first transverse excitation.
    Multimode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoaxReport {
    pub report: BoundReport,
    pub mode: CoaxMode,
    pub minimal_density: f64,
    pub analytic_floor: f64,
    pub floor_respected: bool,
}

/// Cap `S < N` on the entropy of multiphoton states built from `N` modes
/// (the state counts are bounded by the terms of `e^N`).
pub fn photon_entropy_cap(n_modes: f64) -> Result<f64> {
    if !(n_modes >= 0.0) {
        return Err(BoundError::domain("mode count must be non-negative"));
    }
    Ok(n_modes)
}

pub fn coax_report(scene: &CoaxScene, mode: CoaxMode) -> Result<CoaxReport> {
    scene.validate()?;
    if mode == CoaxMode::Multimode
        && scene.sphere_radius < COAX_THIN_CABLE_RATIO * scene.outer_radius
    {
        return Err(BoundError::domain(
            "multimode counting assumes the cable is thin on the scale of the sphere (R >= 2 rho2)",
        ));
    }
    let minimal_density = scene.minimal_density();
    if scene.carrier.density < minimal_density {
        return Err(BoundError::Confinement {
            density: scene.carrier.density,
            minimum: minimal_density,
        });
    }
    let entropy = match mode {
        CoaxMode::ThreeState => 3f64.ln(),
        CoaxMode::Multimode => photon_entropy_cap(scene.axial_mode_count())?,
    };
    let bound = 2.0 * PI * scene.sphere_radius * scene.carrier_rest_energy();
    let analytic_floor = scene.analytic_floor();
    let label = format!(
        "coax {:?} L/R={:.3}",
        mode,
        scene.cable_length / scene.sphere_radius
    )
    .to_lowercase();
    Ok(CoaxReport {
        report: report_from_bound(entropy, bound, label),
        mode,
        minimal_density,
        analytic_floor,
        // floor is derived from the same inequalities; allow for rounding
        floor_respected: bound >= analytic_floor * (1.0 - 1e-12),
    })
}

fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..=hi.ln())).exp()
}

/// Random carrier with the given density floor; the density is drawn up to
/// three decades above it.
fn random_carrier<R: Rng + ?Sized>(
    rng: &mut R,
    mass: f64,
    charge_sq: f64,
    floor: f64,
) -> CarrierSpec {
    let density = if rng.random_bool(0.1) {
        floor
    } else {
        floor * log_uniform(rng, 1.0, 1e3)
    };
    CarrierSpec {
        density,
        charge_sq,
        mass,
        relaxation_time: log_uniform(rng, 1e-3, 1e3),
    }
}

/// Draws an onion scene that passes validation and confines photons with
/// `mechanism`. Extremal corners (`d = R/n`, `m d = 1`, `e^2 = 1`, minimal
/// density) are hit with elevated probability.
pub fn random_onion_scene<R: Rng + ?Sized>(rng: &mut R, mechanism: Mechanism) -> OnionScene {
    let n_shells = log_uniform(rng, 1.0, 1e4).floor().max(1.0) as u64;
    let thickness = log_uniform(rng, 1e-3, 1e3);
    let slack = if rng.random_bool(0.2) {
        1.0
    } else {
        log_uniform(rng, 1.0, 1e3)
    };
    let outer_radius = thickness * n_shells as f64 * slack;
    let mass = if rng.random_bool(0.2) {
        1.0 / thickness
    } else {
        log_uniform(rng, 1.0, 1e4) / thickness
    };
    let charge_sq = if rng.random_bool(0.2) {
        1.0
    } else {
        log_uniform(rng, 1e-4, 1.0)
    };
    let probe = CarrierSpec {
        density: 1.0,
        charge_sq,
        mass,
        relaxation_time: 1.0,
    };
    let floor = mechanism.minimal_density(thickness, &probe);
    OnionScene {
        n_shells,
        outer_radius,
        partition_thickness: thickness,
        carrier: random_carrier(rng, mass, charge_sq, floor),
    }
}

/// Draws a coax scene that passes validation, including the thin-cable
/// condition needed by [`CoaxMode::Multimode`].
pub fn random_coax_scene<R: Rng + ?Sized>(rng: &mut R) -> CoaxScene {
    let inner_radius = log_uniform(rng, 1e-3, 1e3);
    let outer_radius = inner_radius * log_uniform(rng, 1.0 + 1e-9, 1e2);
    let sphere_radius = if rng.random_bool(0.2) {
        COAX_THIN_CABLE_RATIO * outer_radius
    } else {
        COAX_THIN_CABLE_RATIO * outer_radius * log_uniform(rng, 1.0, 1e3)
    };
    let cable_length = if rng.random_bool(0.2) {
        COAX_LENGTH_RATIO * sphere_radius
    } else {
        COAX_LENGTH_RATIO * sphere_radius * log_uniform(rng, 1.0, 1e4)
    };
    let mass = if rng.random_bool(0.2) {
        1.0 / inner_radius
    } else {
        log_uniform(rng, 1.0, 1e4) / inner_radius
    };
    let charge_sq = if rng.random_bool(0.2) {
        1.0
    } else {
        log_uniform(rng, 1e-4, 1.0)
    };
    let probe = CarrierSpec {
        density: 1.0,
        charge_sq,
        mass,
        relaxation_time: 1.0,
    };
    let floor = Mechanism::Plasma.minimal_density(inner_radius, &probe);
    CoaxScene {
        cable_length,
        sphere_radius,
        inner_radius,
        outer_radius,
        carrier: random_carrier(rng, mass, charge_sq, floor),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn carrier(density: f64, charge_sq: f64, mass: f64, tau: f64) -> CarrierSpec {
        CarrierSpec {
            density,
            charge_sq,
            mass,
            relaxation_time: tau,
        }
    }

    #[test]
    fn plasma_frequency_values() {
        assert!((plasma_frequency(&carrier(1.0, 1.0, 4.0 * PI, 1.0)) - 1.0).abs() < 1e-15);
        let a = plasma_frequency(&carrier(3.0, 0.2, 5.0, 1.0));
        let b = plasma_frequency(&carrier(12.0, 0.2, 5.0, 1.0));
        assert!((b / a - 2.0).abs() < 1e-14);
        // minimal density for omega_p d = 1
        let (m, e2, d) = (3.0, 0.5, 0.7);
        let n = m / (4.0 * PI * e2 * d * d);
        assert!((plasma_frequency(&carrier(n, e2, m, 1.0)) * d - 1.0).abs() < 1e-14);
    }

    #[test]
    fn evanescent_depth_values() {
        let wp = 3.0;
        let d = evanescent_depth(wp / 2f64.sqrt(), wp).unwrap();
        assert!((d - 2f64.sqrt() / wp).abs() < 1e-14);
        let near = evanescent_depth(wp * (1.0 - 1e-12), wp).unwrap();
        assert!(near > 1e5);
        assert!(matches!(
            evanescent_depth(wp, wp),
            Err(BoundError::Propagation { .. })
        ));
        assert!(matches!(
            evanescent_depth(2.0 * wp, wp),
            Err(BoundError::Propagation { .. })
        ));
    }

    #[test]
    fn drude_values() {
        let c = carrier(2.0, 0.3, 1.5, 0.4);
        let dc = drude_conductivity(&c, 0.0);
        assert!((dc.re - 2.0 * 0.3 * 0.4 / 1.5).abs() < 1e-15);
        assert_eq!(dc.im, 0.0);
        let s = drude_conductivity(&c, 1.0 / 0.4);
        assert!((s.re.abs() - s.im.abs()).abs() < 1e-14);
        let unit = drude_conductivity(&carrier(1.0, 1.0, 1.0, 1.0), 0.0);
        assert!((unit.re - 1.0).abs() < 1e-15);
        let mut last = f64::INFINITY;
        for i in 0..200 {
            let m = drude_conductivity(&c, i as f64 * 0.05).norm();
            assert!(m <= last);
            last = m;
        }
    }

    #[test]
    fn skin_depth_values() {
        assert!((skin_depth(1.0 / (2.0 * PI), 1.0).unwrap() - 1.0).abs() < 1e-15);
        let a = skin_depth(0.3, 2.0).unwrap();
        let b = skin_depth(1.2, 2.0).unwrap();
        assert!((a / b - 2.0).abs() < 1e-14);
        assert!((skin_depth_floor(&carrier(1.0, 1.0, 2.0 * PI, 1.0)) - 1.0).abs() < 1e-15);
        assert!(skin_depth(0.0, 1.0).is_err());
    }

    #[test]
    fn skin_needs_twice_the_density() {
        let c = carrier(1.0, 0.3, 2.0, 1.0);
        let plasma = Mechanism::Plasma.minimal_density(0.5, &c);
        let skin = Mechanism::Skin.minimal_density(0.5, &c);
        assert!((skin / plasma - 2.0).abs() < 1e-14);
    }

    fn extremal_onion(n: u64, mechanism: Mechanism) -> OnionScene {
        let d = 0.25;
        let c = carrier(1.0, 1.0, 1.0 / d, 1.0);
        let density = mechanism.minimal_density(d, &c);
        OnionScene {
            n_shells: n,
            outer_radius: n as f64 * d,
            partition_thickness: d,
            carrier: CarrierSpec { density, ..c },
        }
    }

    #[test]
    fn onion_single_shell() {
        let r = onion_report(&extremal_onion(1, Mechanism::Plasma), Mechanism::Plasma).unwrap();
        assert!((r.report.entropy_nats - 3f64.ln()).abs() < 1e-15);
        assert!(r.report.bound_value >= 2.0);
        assert!(r.report.satisfied && r.floor_respected);
        // exact shell sum with n = 1 is 1: bound = 2 pi n^3 = 2 pi
        assert!((r.report.bound_value - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn onion_extremal_tends_to_two_pi_over_three() {
        for n in [1u64, 2, 10, 100, 10_000] {
            let r = onion_report(&extremal_onion(n, Mechanism::Plasma), Mechanism::Plasma).unwrap();
            let nf = n as f64;
            let scale = 2.0 * PI / 3.0 * nf.powi(4);
            assert!(r.report.bound_value >= scale * (1.0 - 1e-12));
            assert!(r.report.bound_value >= 2.0 * nf.powi(4));
            let exact = scale * (nf + 1.0) * (2.0 * nf + 1.0) / (2.0 * nf * nf);
            assert!((r.report.bound_value / exact - 1.0).abs() < 1e-12);
        }
        let r = onion_report(&extremal_onion(10, Mechanism::Plasma), Mechanism::Plasma).unwrap();
        assert_eq!(r.analytic_floor, 2e4);
        assert!((r.report.entropy_nats - 30f64.ln()).abs() < 1e-15);
        let r = onion_report(&extremal_onion(10, Mechanism::Skin), Mechanism::Skin).unwrap();
        assert_eq!(r.analytic_floor, 4e4);
        assert!(r.floor_respected);
    }

    #[test]
    fn leaky_partitions_are_confinement_errors() {
        let mut s = extremal_onion(3, Mechanism::Plasma);
        assert!(matches!(
            onion_report(&s, Mechanism::Skin),
            Err(BoundError::Confinement { .. })
        ));
        s.carrier.density *= 0.999;
        assert!(matches!(
            onion_report(&s, Mechanism::Plasma),
            Err(BoundError::Confinement { .. })
        ));
    }

    #[test]
    fn onion_invariants_are_checked() {
        let mut s = extremal_onion(3, Mechanism::Plasma);
        s.partition_thickness *= 1.5;
        assert!(matches!(
            onion_report(&s, Mechanism::Plasma),
            Err(BoundError::Domain(_))
        ));
        let mut s = extremal_onion(3, Mechanism::Plasma);
        s.carrier.mass *= 0.5;
        assert!(matches!(
            onion_report(&s, Mechanism::Plasma),
            Err(BoundError::Domain(_))
        ));
    }

    fn base_coax() -> CoaxScene {
        let rho1 = 1.0;
        let c = carrier(1.0, 1.0, 1.0 / rho1, 1.0);
        let mut scene = CoaxScene {
            cable_length: 100.0,
            sphere_radius: 10.0,
            inner_radius: rho1,
            outer_radius: 1.5,
            carrier: c,
        };
        scene.carrier.density = scene.minimal_density();
        scene
    }

    #[test]
    fn coax_floor_value() {
        let scene = base_coax();
        let r = coax_report(&scene, CoaxMode::ThreeState).unwrap();
        assert!((r.analytic_floor - 500.0 * PI).abs() < 1e-9);
        assert!((r.analytic_floor - 1570.8).abs() < 0.1);
        assert!(r.report.bound_value >= r.analytic_floor * (1.0 - 1e-12));
        assert!(r.report.satisfied);
        assert!((r.report.entropy_nats - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn coax_multimode_cap() {
        let scene = base_coax();
        let r = coax_report(&scene, CoaxMode::Multimode).unwrap();
        assert!((r.report.entropy_nats - 200.0 / 1.5).abs() < 1e-12);
        assert!(r.report.entropy_nats < r.analytic_floor);
        assert!(r.report.satisfied);
        let mut fat = scene;
        fat.sphere_radius = 2.0;
        fat.cable_length = 20.0;
        assert!(matches!(
            coax_report(&fat, CoaxMode::Multimode),
            Err(BoundError::Domain(_))
        ));
        assert!(coax_report(&fat, CoaxMode::ThreeState).is_ok());
    }

    #[test]
    fn coax_margin_grows_with_length() {
        let mut scene = base_coax();
        let mut last = f64::NEG_INFINITY;
        for k in 0..6 {
            scene.cable_length = 100.0 * 10f64.powi(k);
            let m = coax_report(&scene, CoaxMode::Multimode)
                .unwrap()
                .report
                .margin;
            assert!(m > last);
            last = m;
        }
    }

    #[test]
    fn coax_thin_conductor_leaks() {
        let mut scene = base_coax();
        scene.carrier.density *= 0.5;
        assert!(matches!(
            coax_report(&scene, CoaxMode::ThreeState),
            Err(BoundError::Confinement { .. })
        ));
    }

    #[test]
    fn photon_cap_values() {
        assert_eq!(photon_entropy_cap(0.0).unwrap(), 0.0);
        assert_eq!(photon_entropy_cap(200.0).unwrap(), 200.0);
        // ln of partial sums of e^1 approaches the cap of one mode
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 0..20 {
            if k > 0 {
                term /= k as f64;
            }
            sum += term;
        }
        assert!((sum.ln() - photon_entropy_cap(1.0).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn random_scenes_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            for m in [Mechanism::Plasma, Mechanism::Skin] {
                let s = random_onion_scene(&mut rng, m);
                assert!(onion_report(&s, m).is_ok(), "{s:?}");
            }
            let s = random_coax_scene(&mut rng);
            assert!(coax_report(&s, CoaxMode::Multimode).is_ok(), "{s:?}");
        }
    }
}
