//! Regression suite against the reference values in `golden/paper_values.toml`.
//!
//! Each check names a quantity computed by the library and compares it with a
//! stored expectation. Property sweeps enter as worst-case residuals or
//! failure counts with expectation zero.

use std::f64::consts::{LN_2, PI};
use std::fmt::Write as _;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::conductor::{
    coax_report, evanescent_depth, onion_report, plasma_frequency, random_coax_scene,
    random_onion_scene, CarrierSpec, CoaxMode, Mechanism, OnionScene,
};
use crate::counting::{
    exact_log_count, mass_bound_report, maximize_ratio, random_mass_spec, ratio_function,
    ratio_peak, stirling_entropy, GasSpec,
};
use crate::doublewell::{
    critical_coupling, reference_bound_coefficient, scaling_exponent, shoot_profile,
    side_well_search, wall_energy_floor, PotentialSpec, WellProfile, DEFAULT_EXPONENT_STEP,
    DEFAULT_TOLERANCE, LIMIT_EXPONENT, REFERENCE_AMPLITUDE,
};
use crate::twolevel::{
    canonical_entropy, critical_degeneracy, mean_energy_radius, xi, xi_maximum, TwoLevelSystem,
    DEFAULT_RHO0,
};

/// The reference table, compiled into the binary.
pub const PAPER_VALUES: &str = include_str!("../golden/paper_values.toml");

/// Seed for every randomized sweep in the suite.
pub const GOLDEN_SEED: u64 = 0x5eed_b0b5;
/// Draws per randomized property sweep.
pub const PROPERTY_SAMPLES: usize = 100_000;
/// Random two-level systems for the `Xi` checks.
pub const XI_SAMPLES: usize = 1_000;
/// Amplitudes on the profile grid.
pub const GRID_POINTS: usize = 50;
/// Side of the exhaustive `(N, Omega)` counting grid.
pub const COUNTING_GRID: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Absolute,
    Factor,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenCheck {
    pub id: String,
    pub description: String,
    pub expected: f64,
    pub tolerance: f64,
    pub kind: CheckKind,
}

impl GoldenCheck {
    pub fn accepts(&self, computed: f64) -> bool {
        match self.kind {
            CheckKind::Absolute => (computed - self.expected).abs() <= self.tolerance,
            CheckKind::Factor => {
                computed >= self.expected / self.tolerance
                    && computed <= self.expected * self.tolerance
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GoldenFile {
    #[allow(dead_code)]
    version: u32,
    check: Vec<GoldenCheck>,
}

/// Parses the compiled-in reference table.
pub fn load_checks() -> Vec<GoldenCheck> {
    let file: GoldenFile = toml::from_str(PAPER_VALUES).expect("reference table is valid TOML");
    file.check
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenOutcome {
    pub check: GoldenCheck,
    pub computed: Option<f64>,
    pub passed: bool,
    /// Why no value could be computed.
    pub note: Option<String>,
}

/// Amplitudes `0.01, ..., 0.99` evenly spaced.
pub fn amplitude_grid() -> Vec<f64> {
    (0..GRID_POINTS)
        .map(|i| 0.01 + 0.98 * i as f64 / (GRID_POINTS - 1) as f64)
        .collect()
}

fn profile_grid() -> &'static [Result<WellProfile, String>] {
    static GRID: OnceLock<Vec<Result<WellProfile, String>>> = OnceLock::new();
    GRID.get_or_init(|| {
        amplitude_grid()
            .into_par_iter()
            .map(|a| shoot_profile(a, DEFAULT_TOLERANCE).map_err(|e| e.to_string()))
            .collect()
    })
}

/// Starting amplitudes tried for side-well configurations of the
/// three-well potential: both sides of the side well at `Phi = 1`.
pub fn side_well_amplitudes() -> Vec<f64> {
    let mut out: Vec<f64> = (1..30)
        .map(|i| 0.05 * i as f64)
        .filter(|&a| (a - 1.0).abs() > 1e-9)
        .collect();
    out.extend([0.999, 0.999_999, 1.000_001, 1.001]);
    out
}

fn side_well_energy() -> Result<f64, String> {
    let search = side_well_search(
        &PotentialSpec::three_well(),
        &side_well_amplitudes(),
        DEFAULT_TOLERANCE,
    );
    search.classical_energy.ok_or_else(|| {
        format!(
            "no side-well profile reaches Phi = 0 ({} starts tried; last: {})",
            search.amplitudes_tried,
            search.last_error.unwrap_or_default()
        )
    })
}

fn rng_for(index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(GOLDEN_SEED);
    rng.set_stream(index as u64);
    rng
}

/// Counts indices in `0..n` for which `fails` holds, evaluated in parallel.
fn count_failures<F>(n: usize, fails: F) -> f64
where
    F: Fn(usize, &mut ChaCha8Rng) -> bool + Sync,
{
    (0..n)
        .into_par_iter()
        .filter(|&i| fails(i, &mut rng_for(i)))
        .count() as f64
}

fn random_two_level(rng: &mut ChaCha8Rng) -> TwoLevelSystem {
    TwoLevelSystem {
        rho0: rng.random_range(0.05..5.0),
        rho_gap: rng.random_range(0.0..3.0),
        degeneracy: 10f64.powf(rng.random_range(0.0..7.0)).round(),
        y: 10f64.powf(rng.random_range(-3.0..3.0)),
    }
}

fn counting_grid_excess() -> f64 {
    (1..=COUNTING_GRID)
        .into_par_iter()
        .map(|n| {
            let mut worst = 0.0f64;
            for modes in 1..=COUNTING_GRID {
                let (nf, mf) = (n as f64, modes as f64);
                let exact = exact_log_count(&GasSpec::boson(n, modes)).expect("valid grid point");
                let cap = ratio_peak() * nf.powf(2.0 / 3.0) * mf.cbrt() * (1.0 + 1e-3);
                let gap = (stirling_entropy(nf, mf) - exact).abs() - (nf.ln() + mf.ln() + 2.0);
                worst = worst.max(exact - cap).max(gap);
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}

/// The tightest admissible plasma-confined onion of `n` shells.
pub fn tight_onion(n_shells: u64) -> OnionScene {
    let carrier = CarrierSpec {
        density: 0.0,
        charge_sq: 1.0,
        mass: 1.0,
        relaxation_time: 1.0,
    };
    let mut scene = OnionScene {
        n_shells,
        outer_radius: n_shells as f64,
        partition_thickness: 1.0,
        carrier,
    };
    scene.carrier.density = Mechanism::Plasma.minimal_density(1.0, &carrier);
    scene
}

/// Every id [`compute`] knows about.
pub const CHECK_IDS: [&str; 25] = [
    "ratio_peak_position",
    "ratio_peak_value",
    "ratio_at_peak_position",
    "mass_gas_violations",
    "counting_grid_excess",
    "critical_degeneracy",
    "xi_peak_location_error",
    "xi_identity_residual",
    "evanescent_depth_violations",
    "onion_violations",
    "onion_n10_floor",
    "onion_n10_entropy",
    "coax_violations",
    "first_zero_small_amplitude",
    "energy_factor_small_amplitude",
    "first_zero_0_98",
    "energy_factor_0_98",
    "scaling_exponent_0_98",
    "wall_total_factor_n3",
    "bound_coefficient_reference",
    "critical_coupling_ln2",
    "virial_residual_grid",
    "monotonicity_breaks_grid",
    "three_well_side_energy",
    "three_well_mixture_energy",
];

/// Evaluates the quantity behind check `id`.
pub fn compute(id: &str) -> Result<f64, String> {
    let err = |e: crate::BoundError| e.to_string();
    match id {
        "ratio_peak_position" => Ok(maximize_ratio().x),
        "ratio_peak_value" => Ok(maximize_ratio().value),
        "ratio_at_peak_position" => ratio_function(0.191).map_err(err),
        "mass_gas_violations" => Ok(count_failures(PROPERTY_SAMPLES, |_, rng| {
            mass_bound_report(&random_mass_spec(rng)).map_or(true, |r| !r.report.satisfied)
        })),
        "counting_grid_excess" => Ok(counting_grid_excess()),
        "critical_degeneracy" => Ok(critical_degeneracy(0.0, DEFAULT_RHO0)),
        "xi_peak_location_error" => Ok((0..XI_SAMPLES)
            .into_par_iter()
            .map(|i| {
                let m = xi_maximum(&random_two_level(&mut rng_for(i)));
                (m.y_numeric - m.y_star).abs()
            })
            .reduce(|| 0.0, f64::max)),
        "xi_identity_residual" => Ok((0..XI_SAMPLES)
            .into_par_iter()
            .map(|i| {
                let sys = random_two_level(&mut rng_for(i));
                let direct = canonical_entropy(&sys) - 2.0 * PI * mean_energy_radius(&sys);
                (xi(&sys) - direct).abs() / direct.abs().max(1.0)
            })
            .reduce(|| 0.0, f64::max)),
        "evanescent_depth_violations" => Ok(count_failures(PROPERTY_SAMPLES, |i, rng| {
            let mech = if i.is_multiple_of(2) {
                Mechanism::Plasma
            } else {
                Mechanism::Skin
            };
            let wp = plasma_frequency(&random_onion_scene(rng, mech).carrier);
            let omega = wp * rng.random_range(f64::EPSILON..1.0);
            evanescent_depth(omega, wp).map_or(true, |d| d <= 1.0 / wp)
        })),
        "onion_violations" => Ok(count_failures(PROPERTY_SAMPLES, |i, rng| {
            let mech = if i.is_multiple_of(2) {
                Mechanism::Plasma
            } else {
                Mechanism::Skin
            };
            onion_report(&random_onion_scene(rng, mech), mech)
                .map_or(true, |r| !r.report.satisfied || !r.floor_respected)
        })),
        "onion_n10_floor" => onion_report(&tight_onion(10), Mechanism::Plasma)
            .map(|r| r.analytic_floor)
            .map_err(err),
        "onion_n10_entropy" => onion_report(&tight_onion(10), Mechanism::Plasma)
            .map(|r| r.report.entropy_nats)
            .map_err(err),
        "coax_violations" => Ok(count_failures(PROPERTY_SAMPLES, |_, rng| {
            let scene = random_coax_scene(rng);
            [CoaxMode::ThreeState, CoaxMode::Multimode]
                .into_iter()
                .any(|mode| coax_report(&scene, mode).map_or(true, |r| !r.report.satisfied))
        })),
        "first_zero_small_amplitude" => shoot_profile(REFERENCE_AMPLITUDE, DEFAULT_TOLERANCE)
            .map(|p| p.first_zero)
            .map_err(err),
        "energy_factor_small_amplitude" => shoot_profile(REFERENCE_AMPLITUDE, DEFAULT_TOLERANCE)
            .map(|p| p.energy_factor)
            .map_err(err),
        "first_zero_0_98" => shoot_profile(0.98, DEFAULT_TOLERANCE)
            .map(|p| p.first_zero)
            .map_err(err),
        "energy_factor_0_98" => shoot_profile(0.98, DEFAULT_TOLERANCE)
            .map(|p| p.energy_factor)
            .map_err(err),
        "scaling_exponent_0_98" => scaling_exponent(0.98, DEFAULT_EXPONENT_STEP).map_err(err),
        "wall_total_factor_n3" => {
            let f = shoot_profile(REFERENCE_AMPLITUDE, DEFAULT_TOLERANCE)
                .map_err(err)?
                .energy_factor;
            wall_energy_floor(f, 3.0)
                .map(|w| w.total_energy_factor / f)
                .map_err(err)
        }
        "bound_coefficient_reference" => Ok(reference_bound_coefficient()),
        "critical_coupling_ln2" => critical_coupling(LN_2).map_err(err),
        "virial_residual_grid" => {
            let mut worst = 0.0f64;
            for p in profile_grid() {
                worst = worst.max(p.as_ref().map_err(Clone::clone)?.virial_residual);
            }
            Ok(worst)
        }
        "monotonicity_breaks_grid" => {
            let grid: Vec<&WellProfile> = profile_grid()
                .iter()
                .map(|p| p.as_ref())
                .collect::<Result<_, _>>()
                .map_err(Clone::clone)?;
            Ok(grid
                .windows(2)
                .filter(|w| {
                    w[1].energy_factor <= w[0].energy_factor || w[1].first_zero <= w[0].first_zero
                })
                .count() as f64)
        }
        "three_well_side_energy" => side_well_energy(),
        "three_well_mixture_energy" => {
            side_well_energy().map(|e| 2.0 / 3.0 * (1.0 + 0.5 * LIMIT_EXPONENT) * e)
        }
        other => Err(format!("no computation registered for `{other}`")),
    }
}

/// Runs every check in the reference table, in table order.
pub fn run_golden() -> Vec<GoldenOutcome> {
    load_checks()
        .into_iter()
        .map(|check| match compute(&check.id) {
            Ok(v) => GoldenOutcome {
                passed: check.accepts(v),
                computed: Some(v),
                note: None,
                check,
            },
            Err(note) => GoldenOutcome {
                passed: false,
                computed: None,
                note: Some(note),
                check,
            },
        })
        .collect()
}

fn number(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if (1e-3..1e6).contains(&x.abs()) {
        format!("{x:.6}")
    } else {
        format!("{x:.4e}")
    }
}

/// Fixed-width pass/fail table, one line per check, with a summary line.
pub fn format_table(outcomes: &[GoldenOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.check.id.len()).max().unwrap_or(2);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<6} {:<width$} {:>14} {:>14} {:>12}  description",
        "result", "id", "computed", "expected", "tolerance"
    );
    for o in outcomes {
        let tol = match o.check.kind {
            CheckKind::Absolute => format!("+-{}", number(o.check.tolerance)),
            CheckKind::Factor => format!("x/{}", number(o.check.tolerance)),
        };
        let _ = writeln!(
            out,
            "{:<6} {:<width$} {:>14} {:>14} {:>12}  {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.check.id,
            o.computed.map_or_else(|| "n/a".into(), number),
            number(o.check.expected),
            tol,
            o.check.description,
        );
        if let Some(note) = &o.note {
            let _ = writeln!(out, "{:<6} {:<width$} note: {note}", "", "");
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let _ = writeln!(out, "{passed}/{} checks passed", outcomes.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_parses_with_unique_ids() {
        let checks = load_checks();
        assert!(checks.len() >= 20);
        let mut ids: Vec<_> = checks.iter().map(|c| c.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), checks.len());
    }

    #[test]
    fn table_matches_registered_ids() {
        let mut table: Vec<String> = load_checks().into_iter().map(|c| c.id).collect();
        table.sort_unstable();
        let mut known: Vec<String> = CHECK_IDS.iter().map(|s| s.to_string()).collect();
        known.sort_unstable();
        assert_eq!(table, known);
        assert!(compute("unknown")
            .unwrap_err()
            .starts_with("no computation"));
    }

    #[test]
    fn acceptance_rules() {
        let abs = GoldenCheck {
            id: "a".into(),
            description: String::new(),
            expected: 1.0,
            tolerance: 0.1,
            kind: CheckKind::Absolute,
        };
        assert!(abs.accepts(1.05) && abs.accepts(0.95) && !abs.accepts(1.2));
        let factor = GoldenCheck {
            expected: 8.0,
            tolerance: 4.0,
            kind: CheckKind::Factor,
            ..abs
        };
        assert!(
            factor.accepts(2.0)
                && factor.accepts(32.0)
                && !factor.accepts(1.9)
                && !factor.accepts(33.0)
        );
        assert!(!factor.accepts(f64::NAN));
    }

    #[test]
    fn tight_onion_sits_on_every_constraint() {
        let scene = tight_onion(10);
        assert!(scene.validate().is_ok());
        let r = onion_report(&scene, Mechanism::Plasma).unwrap();
        assert_eq!(r.analytic_floor, 2e4);
        // 2 pi n^3 sum (i/n)^2 at the corner
        assert!((r.report.bound_value - 2.0 * PI * 1e3 * 3.85).abs() < 1e-8);
    }

    #[test]
    fn table_formatting() {
        let outcomes = vec![GoldenOutcome {
            check: load_checks().remove(0),
            computed: None,
            passed: false,
            note: Some("why".into()),
        }];
        let text = format_table(&outcomes);
        assert!(
            text.contains("FAIL")
                && text.contains("note: why")
                && text.ends_with("0/1 checks passed\n")
        );
    }
}
