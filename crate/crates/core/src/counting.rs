//! Microcanonical state counting for a gas of `N` identical particles
//! spread over `Omega` one-particle modes, and the rest-mass bound
//! `S < 2 pi N (mu c R / hbar)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::bound::{report_from_bound, BoundReport};
use crate::error::{BoundError, Result};
use crate::optimize::{bracketed_log_max, Maximum};

/// Peak search range for the occupation ratio function.
pub const RATIO_BRACKET: (f64, f64) = (1e-4, 1e3);
/// Absolute tolerance on the location of the peak.
pub const RATIO_TOLERANCE: f64 = 1e-6;

/// Default momentum fraction for [`MassBoundSpec`]. The model only needs it
/// below one; the value itself is a convention.
pub const DEFAULT_MOMENTUM_FRACTION: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Boson,
    Fermion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GasSpec {
    pub n_particles: u64,
    pub n_modes: u64,
    pub statistics: Statistics,
}

impl GasSpec {
    pub fn boson(n_particles: u64, n_modes: u64) -> Self {
        GasSpec {
            n_particles,
            n_modes,
            statistics: Statistics::Boson,
        }
    }

    pub fn fermion(n_particles: u64, n_modes: u64) -> Self {
        GasSpec {
            n_particles,
            n_modes,
            statistics: Statistics::Fermion,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_particles == 0 || self.n_modes == 0 {
            return Err(BoundError::domain(
                "gas needs at least one particle and one mode",
            ));
        }
        if self.statistics == Statistics::Fermion && self.n_particles > self.n_modes {
            return Err(BoundError::domain(format!(
                "{} fermions do not fit in {} modes",
                self.n_particles, self.n_modes
            )));
        }
        Ok(())
    }
}

/// `ln C(n, k)`, stable for `n` up to ~1e15.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    assert!(k <= n, "ln_binomial: k > n");
    let k = k.min(n - k);
    if k == 0 {
        return 0.0;
    }
    if k <= 64 {
        // exact product form avoids cancellation between large log-gammas
        let base = (n - k) as f64;
        (1..=k).map(|i| (1.0 + base / i as f64).ln()).sum()
    } else {
        ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
    }
}

/// `ln W` for the gas: `ln C(N + Omega - 1, N)` for bosons and
/// `ln C(Omega, N)` for fermions.
pub fn exact_log_count(spec: &GasSpec) -> Result<f64> {
    spec.validate()?;
    Ok(match spec.statistics {
        Statistics::Boson => ln_binomial(spec.n_particles + spec.n_modes - 1, spec.n_particles),
        Statistics::Fermion => ln_binomial(spec.n_modes, spec.n_particles),
    })
}

/// Two-term Stirling entropy `Omega ln(1 + N/Omega) + N ln(1 + Omega/N)`.
///
/// Homogeneous of degree one in `(N, Omega)`.
pub fn stirling_entropy(n_particles: f64, n_modes: f64) -> f64 {
    debug_assert!(n_particles >= 1.0 && n_modes >= 1.0);
    n_modes * (n_particles / n_modes).ln_1p() + n_particles * (n_modes / n_particles).ln_1p()
}

/// `[ln(1 + n) + n ln(1 + 1/n)] / n^(2/3)` with `n = N / Omega` the mean
/// occupation per mode.
pub fn ratio_function(nbar: f64) -> Result<f64> {
    if !(nbar > 0.0) || !nbar.is_finite() {
        return Err(BoundError::domain(format!(
            "mean occupation must be positive, got {nbar}"
        )));
    }
    Ok(ratio_unchecked(nbar))
}

fn ratio_unchecked(nbar: f64) -> f64 {
    (nbar.ln_1p() + nbar * nbar.recip().ln_1p()) / nbar.powf(2.0 / 3.0)
}

/// Location and height of the single maximum of [`ratio_function`].
pub fn maximize_ratio() -> Maximum {
    bracketed_log_max(
        ratio_unchecked,
        RATIO_BRACKET.0,
        RATIO_BRACKET.1,
        64,
        RATIO_TOLERANCE,
    )
}

/// Cached height of the ratio function's peak.
pub fn ratio_peak() -> f64 {
    static PEAK: OnceLock<f64> = OnceLock::new();
    *PEAK.get_or_init(|| maximize_ratio().value)
}

/// A nonrelativistic gas of `N` particles of mass `mu` inside radius `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassBoundSpec {
    pub n_particles: u64,
    /// `mu c R / hbar`.
    pub compton_ratio: f64,
    /// Largest momentum as a fraction of `mu c`.
    pub momentum_fraction: f64,
}

impl MassBoundSpec {
    /// Phase-space mode count `floor((kappa mu c R / 2 pi hbar)^3)`.
    pub fn mode_count(&self) -> Result<u64> {
        if self.n_particles == 0 {
            return Err(BoundError::domain("need at least one particle"));
        }
        if !(self.compton_ratio > 0.0) || !self.compton_ratio.is_finite() {
            return Err(BoundError::domain(
                "compton ratio must be positive and finite",
            ));
        }
        if !(self.momentum_fraction > 0.0 && self.momentum_fraction < 1.0) {
            return Err(BoundError::domain("momentum fraction must lie in (0, 1)"));
        }
        let cube = (self.momentum_fraction * self.compton_ratio / (2.0 * PI)).powi(3);
        // guard against 0.999... from rounding when the cell count is integral
        let modes = (cube * (1.0 + 1e-12)).floor();
        if modes < 1.0 {
            return Err(BoundError::domain(format!(
                "system smaller than one phase-space cell (Omega = {cube:.3e})"
            )));
        }
        if modes > u64::MAX as f64 {
            return Err(BoundError::domain("mode count overflows"));
        }
        Ok(modes as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassBoundReport {
    pub report: BoundReport,
    pub n_modes: u64,
    /// `f* N^(2/3) Omega^(1/3)`, the intermediate bound on the Stirling entropy.
    pub chain_bound: f64,
    pub exact_boson_entropy: f64,
    /// `None` when the fermions do not fit in the available modes.
    pub exact_fermion_entropy: Option<f64>,
}

/// Checks the Stirling entropy of the gas against its rest-mass bound.
pub fn mass_bound_report(spec: &MassBoundSpec) -> Result<MassBoundReport> {
    let n_modes = spec.mode_count()?;
    let n = spec.n_particles as f64;
    let omega = n_modes as f64;
    let entropy = stirling_entropy(n, omega);
    let bound = 2.0 * PI * n * spec.compton_ratio;
    let label = format!("mass N={} Omega={}", spec.n_particles, n_modes);
    let exact_boson_entropy = exact_log_count(&GasSpec::boson(spec.n_particles, n_modes))?;
    let exact_fermion_entropy = exact_log_count(&GasSpec::fermion(spec.n_particles, n_modes)).ok();
    Ok(MassBoundReport {
        report: report_from_bound(entropy, bound, label),
        n_modes,
        chain_bound: ratio_peak() * n.powf(2.0 / 3.0) * omega.cbrt(),
        exact_boson_entropy,
        exact_fermion_entropy,
    })
}

/// Draws a valid gas spec: `N` log-uniform in `[1, 1e6]`, at least one
/// phase-space cell, and the corners `N = 1`, `Omega = 1` with elevated
/// probability.
pub fn random_mass_spec<R: Rng + ?Sized>(rng: &mut R) -> MassBoundSpec {
    let n_particles = if rng.random_bool(0.2) {
        1
    } else {
        10f64.powf(rng.random_range(0.0..=6.0)).round() as u64
    };
    let momentum_fraction = rng.random_range(0.05..0.95);
    let side = if rng.random_bool(0.2) {
        1.0
    } else {
        10f64.powf(rng.random_range(0.0..=3.0))
    };
    MassBoundSpec {
        n_particles,
        compton_ratio: 2.0 * PI * side / momentum_fraction,
        momentum_fraction,
    }
}
