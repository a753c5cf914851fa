//! Configuration-driven runs of every model, with sweeps and CSV/JSON output.

mod config;
mod emit;

use std::collections::BTreeMap;
use std::f64::consts::LN_2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bound::{label_number, report_from_bound, BoundReport};
use crate::conductor::{
    coax_report, onion_report, random_coax_scene, random_onion_scene, CarrierSpec, CoaxMode,
    CoaxScene, Mechanism, OnionScene,
};
use crate::counting::{
    mass_bound_report, random_mass_spec, MassBoundSpec, DEFAULT_MOMENTUM_FRACTION,
};
use crate::doublewell::{
    double_well_report_with_tolerance, multiwell_profile, CouplingRegime, PotentialSpec,
    DEFAULT_TOLERANCE,
};
use crate::error::BoundError;
use crate::twolevel::{
    critical_degeneracy, species_sweep, two_level_report, xi, xi_maximum, GroundEnergyModel,
    TwoLevelSystem, DEFAULT_RHO0,
};

pub use config::{ParamValue, ScenarioConfig, ScenarioKind, SweepScale, SweepSpec, RESERVED_KEYS};
pub use emit::{emit, write_rows, OutputFormat, CSV_COLUMNS};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] BoundError),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

pub const STATUS_OK: &str = "ok";
pub const STATUS_STRONG_COUPLING: &str = "strong_coupling";

/// One evaluated point of a scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub scenario_label: String,
    pub swept_value: Option<f64>,
    pub entropy_nats: f64,
    pub bound_value: f64,
    pub margin: f64,
    pub satisfied: bool,
    /// [`STATUS_OK`], [`STATUS_STRONG_COUPLING`] or an error tag from
    /// [`BoundError::kind`].
    pub status: String,
    pub diagnostics: BTreeMap<String, f64>,
}

impl ReportRow {
    fn from_report(report: BoundReport, diagnostics: BTreeMap<String, f64>) -> Self {
        ReportRow {
            scenario_label: report.scenario_label,
            swept_value: None,
            entropy_nats: report.entropy_nats,
            bound_value: report.bound_value,
            margin: report.margin,
            satisfied: report.satisfied,
            status: STATUS_OK.to_string(),
            diagnostics,
        }
    }

    fn from_error(label: String, err: &BoundError) -> Self {
        ReportRow {
            scenario_label: label,
            swept_value: None,
            entropy_nats: f64::NAN,
            bound_value: f64::NAN,
            margin: f64::NAN,
            satisfied: false,
            status: err.kind().to_string(),
            diagnostics: BTreeMap::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == STATUS_OK
    }

    /// A well-formed evaluation whose entropy exceeds the bound.
    pub fn is_violation(&self) -> bool {
        self.is_ok() && !self.satisfied
    }
}

/// Process exit code for a finished run: 2 if any row violates the bound,
/// 1 if any row carries a non-ok status, 0 otherwise.
pub fn exit_code(rows: &[ReportRow]) -> i32 {
    if rows.iter().any(ReportRow::is_violation) {
        2
    } else if rows.iter().any(|r| !r.is_ok()) {
        1
    } else {
        0
    }
}

/// Runs `config`: one row per sweep point, per random sample, or a single
/// row. Sweep and sample points are evaluated in parallel; rows come back in
/// index order.
///
/// A model error on a single-shot run is returned as `Err`; inside a sweep it
/// becomes the row's status.
pub fn run_scenario(config: &ScenarioConfig) -> Result<Vec<ReportRow>, ScenarioError> {
    config.validate()?;
    if config.samples > 0 {
        return Ok((0..config.samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(i as u64);
                let label = format!("{} sample={i}", config.scenario);
                sample_row(config, i, &mut rng).unwrap_or_else(|e| ReportRow::from_error(label, &e))
            })
            .collect());
    }
    let Some(sweep) = &config.sweep else {
        let params = Params::new(config.scenario, &config.parameters);
        return Ok(vec![evaluate(config.scenario, &params)?]);
    };
    Ok(sweep
        .points()
        .into_par_iter()
        .map(|value| {
            let mut params = Params::new(config.scenario, &config.parameters);
            params
                .values
                .insert(sweep.parameter.clone(), ParamValue::Real(value));
            let mut row = evaluate(config.scenario, &params).unwrap_or_else(|e| {
                let label = format!(
                    "{} {}={}",
                    config.scenario,
                    sweep.parameter,
                    label_number(value)
                );
                ReportRow::from_error(label, &e)
            });
            row.swept_value = Some(value);
            row
        })
        .collect())
}

struct Params {
    kind: ScenarioKind,
    values: BTreeMap<String, ParamValue>,
}

impl Params {
    fn new(kind: ScenarioKind, values: &BTreeMap<String, ParamValue>) -> Self {
        Params {
            kind,
            values: values.clone(),
        }
    }

    fn missing(&self, key: &str) -> BoundError {
        BoundError::Domain(format!("scenario {} needs `{key}`", self.kind))
    }

    fn real(&self, key: &str) -> Result<f64, BoundError> {
        self.values.get(key).map_or(Err(self.missing(key)), |v| {
            v.as_f64()
                .ok_or_else(|| BoundError::Domain(format!("`{key}` must be numeric, got {v}")))
        })
    }

    fn real_or(&self, key: &str, default: f64) -> Result<f64, BoundError> {
        if self.values.contains_key(key) {
            self.real(key)
        } else {
            Ok(default)
        }
    }

    /// Integer parameter; swept reals are rounded to the nearest integer.
    fn count(&self, key: &str) -> Result<u64, BoundError> {
        let x = self.real(key)?.round();
        if !(x >= 0.0) || x > u64::MAX as f64 {
            return Err(BoundError::Domain(format!(
                "`{key}` must be a non-negative integer"
            )));
        }
        Ok(x as u64)
    }

    fn text_or<'s>(&'s self, key: &str, default: &'s str) -> Result<&'s str, BoundError> {
        match self.values.get(key) {
            None => Ok(default),
            Some(ParamValue::Text(s)) => Ok(s),
            Some(v) => Err(BoundError::Domain(format!(
                "`{key}` must be a name, got {v}"
            ))),
        }
    }
}

fn diag<const N: usize>(pairs: [(&str, f64); N]) -> BTreeMap<String, f64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn mechanism(name: &str) -> Result<Mechanism, BoundError> {
    match name {
        "plasma" => Ok(Mechanism::Plasma),
        "skin" => Ok(Mechanism::Skin),
        other => Err(BoundError::Domain(format!(
            "mechanism must be plasma or skin, got {other}"
        ))),
    }
}

fn coax_mode(name: &str) -> Result<CoaxMode, BoundError> {
    match name {
        "three_state" => Ok(CoaxMode::ThreeState),
        "multimode" => Ok(CoaxMode::Multimode),
        other => Err(BoundError::Domain(format!(
            "mode must be three_state or multimode, got {other}"
        ))),
    }
}

fn evaluate(kind: ScenarioKind, p: &Params) -> Result<ReportRow, BoundError> {
    match kind {
        ScenarioKind::Mass => mass_row(&MassBoundSpec {
            n_particles: p.count("n_particles")?,
            compton_ratio: p.real("compton_ratio")?,
            momentum_fraction: p.real_or("momentum_fraction", DEFAULT_MOMENTUM_FRACTION)?,
        }),
        ScenarioKind::TwoLevel => {
            let sys = TwoLevelSystem::new(
                p.real_or("rho0", DEFAULT_RHO0)?,
                p.real("rho_gap")?,
                p.count("g")?,
                p.real("y")?,
            )?;
            let report = two_level_report(&sys)?;
            let max = xi_maximum(&sys);
            Ok(ReportRow::from_report(
                report,
                diag([
                    ("xi", xi(&sys)),
                    ("y_star", max.y_star),
                    ("xi_star", max.xi_star),
                    (
                        "critical_degeneracy",
                        critical_degeneracy(sys.rho_gap, sys.rho0),
                    ),
                ]),
            ))
        }
        ScenarioKind::Onion => {
            let mech = mechanism(p.text_or("mechanism", "plasma")?)?;
            let mut carrier = CarrierSpec {
                density: 0.0,
                charge_sq: p.real("charge_sq")?,
                mass: p.real("mass")?,
                relaxation_time: p.real_or("relaxation_time", 1.0)?,
            };
            let thickness = p.real("partition_thickness")?;
            carrier.density = p.real_or("density", mech.minimal_density(thickness, &carrier))?;
            onion_row(
                &OnionScene {
                    n_shells: p.count("n_shells")?,
                    outer_radius: p.real("outer_radius")?,
                    partition_thickness: thickness,
                    carrier,
                },
                mech,
            )
        }
        ScenarioKind::Coax => {
            let mode = coax_mode(p.text_or("mode", "three_state")?)?;
            let mut scene = CoaxScene {
                cable_length: p.real("cable_length")?,
                sphere_radius: p.real("sphere_radius")?,
                inner_radius: p.real("inner_radius")?,
                outer_radius: p.real("outer_radius")?,
                carrier: CarrierSpec {
                    density: 0.0,
                    charge_sq: p.real("charge_sq")?,
                    mass: p.real("mass")?,
                    relaxation_time: p.real_or("relaxation_time", 1.0)?,
                },
            };
            scene.carrier.density = p.real_or("density", scene.minimal_density())?;
            coax_row(&scene, mode)
        }
        ScenarioKind::Doublewell => {
            let r = double_well_report_with_tolerance(
                p.real("amplitude")?,
                p.real_or("coupling", 1.0)?,
                p.real_or("entropy", LN_2)?,
                p.real_or("tolerance", DEFAULT_TOLERANCE)?,
            )?;
            let mut row = ReportRow::from_report(
                r.report,
                diag([
                    ("x0", r.first_zero),
                    ("F", r.energy_factor),
                    ("exponent", r.exponent),
                    ("bound_coefficient", r.bound_coefficient),
                    ("critical_coupling", r.critical_coupling),
                    ("virial_residual", r.virial_residual),
                ]),
            );
            if r.regime == CouplingRegime::StrongCoupling {
                row.status = STATUS_STRONG_COUPLING.to_string();
            }
            Ok(row)
        }
        ScenarioKind::Multiwell => {
            let amplitude = p.real("amplitude")?;
            let tilt = p.real_or("tilt", 0.0)?;
            let wells = if p.values.contains_key("wells") {
                p.count("wells")?
            } else {
                3
            };
            let potential = match wells {
                2 if tilt == 0.0 => PotentialSpec::double_well(),
                3 if tilt == 0.0 => PotentialSpec::three_well(),
                3 => PotentialSpec::tilted_three_well(tilt),
                _ => {
                    return Err(BoundError::Domain(format!(
                        "wells must be 2 or 3 (tilt only with 3), got {wells}"
                    )))
                }
            };
            let profile = multiwell_profile(
                &potential,
                amplitude,
                p.real_or("tolerance", DEFAULT_TOLERANCE)?,
            )?;
            let label = format!(
                "multiwell {} a={}",
                potential.label,
                label_number(amplitude)
            );
            let entropy = f64::from(potential.well_count).ln();
            Ok(ReportRow::from_report(
                report_from_bound(
                    entropy,
                    2.0 * std::f64::consts::PI * profile.classical_energy,
                    label,
                ),
                diag([
                    ("x0", profile.first_zero),
                    ("F", profile.energy_factor),
                    ("classical_energy", profile.classical_energy),
                    ("virial_residual", profile.virial_residual),
                ]),
            ))
        }
        ScenarioKind::SpeciesSweep => {
            let g_per_species = p.count("g_per_species")?;
            let rho_gap = p.real("rho_gap")?;
            let rho0 = p.real_or("rho0", DEFAULT_RHO0)?;
            let model = match p.text_or("rho0_model", "constant")? {
                "constant" => GroundEnergyModel::Constant(rho0),
                "linear" => GroundEnergyModel::LinearInSpecies(rho0),
                other => {
                    return Err(BoundError::Domain(format!(
                        "rho0_model must be constant or linear, got {other}"
                    )))
                }
            };
            let max_species = p.count("max_species")?;
            let sweep = species_sweep(g_per_species, rho_gap, model, max_species)?;
            let n = sweep.first_violation.unwrap_or(sweep.species_at_max);
            if n == 0 {
                return Err(BoundError::Domain("species sweep is empty".into()));
            }
            let sys = TwoLevelSystem::new(model.rho0(n), rho_gap, n * g_per_species, 0.0)?;
            let sys = sys.with_y(xi_maximum(&sys).y_star);
            let mut report = two_level_report(&sys)?;
            report.scenario_label = format!("species_sweep g/species={g_per_species} N={n}");
            let mut d = diag([
                ("species", n as f64),
                ("max_xi_star", sweep.max_xi_star),
                ("species_at_max", sweep.species_at_max as f64),
            ]);
            if let Some(v) = sweep.first_violation {
                d.insert("first_violation".into(), v as f64);
            }
            Ok(ReportRow::from_report(report, d))
        }
    }
}

fn mass_row(spec: &MassBoundSpec) -> Result<ReportRow, BoundError> {
    let r = mass_bound_report(spec)?;
    let mut d = diag([
        ("n_modes", r.n_modes as f64),
        ("chain_bound", r.chain_bound),
        ("exact_boson_entropy", r.exact_boson_entropy),
    ]);
    if let Some(s) = r.exact_fermion_entropy {
        d.insert("exact_fermion_entropy".into(), s);
    }
    Ok(ReportRow::from_report(r.report, d))
}

fn onion_row(scene: &OnionScene, mech: Mechanism) -> Result<ReportRow, BoundError> {
    let r = onion_report(scene, mech)?;
    Ok(ReportRow::from_report(
        r.report,
        diag([
            ("minimal_density", r.minimal_density),
            ("plasma_frequency", r.plasma_frequency),
            ("analytic_floor", r.analytic_floor),
            ("floor_respected", flag(r.floor_respected)),
        ]),
    ))
}

fn coax_row(scene: &CoaxScene, mode: CoaxMode) -> Result<ReportRow, BoundError> {
    let r = coax_report(scene, mode)?;
    Ok(ReportRow::from_report(
        r.report,
        diag([
            ("minimal_density", r.minimal_density),
            ("analytic_floor", r.analytic_floor),
            ("axial_mode_count", scene.axial_mode_count()),
            ("floor_respected", flag(r.floor_respected)),
        ]),
    ))
}

/// Random scene `index`; the mechanism or mode alternates with the index
/// unless fixed in the parameters.
fn sample_row(
    config: &ScenarioConfig,
    index: usize,
    rng: &mut ChaCha8Rng,
) -> Result<ReportRow, BoundError> {
    let p = Params::new(config.scenario, &config.parameters);
    let label_suffix = format!(" sample={index}");
    let mut row = match config.scenario {
        ScenarioKind::Mass => mass_row(&random_mass_spec(rng))?,
        ScenarioKind::Onion => {
            let default = if index.is_multiple_of(2) {
                "plasma"
            } else {
                "skin"
            };
            let mech = mechanism(p.text_or("mechanism", default)?)?;
            onion_row(&random_onion_scene(rng, mech), mech)?
        }
        ScenarioKind::Coax => {
            let default = if index.is_multiple_of(2) {
                "three_state"
            } else {
                "multimode"
            };
            let mode = coax_mode(p.text_or("mode", default)?)?;
            coax_row(&random_coax_scene(rng), mode)?
        }
        other => {
            return Err(BoundError::Domain(format!(
                "scenario {other} has no random scene generator"
            )))
        }
    };
    row.scenario_label.push_str(&label_suffix);
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doublewell_row_diagnostics() {
        let cfg = ScenarioConfig::new(ScenarioKind::Doublewell).with("amplitude", 0.98);
        let rows = run_scenario(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        let d = &rows[0].diagnostics;
        assert!((d["x0"] - 5.45).abs() < 0.01);
        assert!((d["F"] - 232.23).abs() < 0.5);
        assert!(rows[0].satisfied && rows[0].is_ok());
    }

    #[test]
    fn two_level_log_sweep_all_satisfied() {
        let mut cfg = ScenarioConfig::new(ScenarioKind::TwoLevel)
            .with("g", 3)
            .with("rho0", 2.0)
            .with("rho_gap", 0.1);
        cfg.sweep = Some(SweepSpec {
            parameter: "y".into(),
            start: 1e-3,
            stop: 1e3,
            count: 61,
            scale: SweepScale::Log,
        });
        let rows = run_scenario(&cfg).unwrap();
        assert_eq!(rows.len(), 61);
        assert!(rows.iter().all(|r| r.satisfied && r.is_ok()));
        let swept: Vec<f64> = rows.iter().map(|r| r.swept_value.unwrap()).collect();
        assert!(swept.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(exit_code(&rows), 0);
    }

    #[test]
    fn empty_sweep_gives_no_rows() {
        let mut cfg = ScenarioConfig::new(ScenarioKind::TwoLevel)
            .with("g", 3)
            .with("rho_gap", 0.1);
        cfg.sweep = Some(SweepSpec {
            parameter: "y".into(),
            start: 1.0,
            stop: 2.0,
            count: 0,
            scale: SweepScale::Linear,
        });
        assert!(run_scenario(&cfg).unwrap().is_empty());
    }

    #[test]
    fn errors_in_sweep_become_status() {
        let mut cfg = ScenarioConfig::new(ScenarioKind::Doublewell);
        cfg.sweep = Some(SweepSpec {
            parameter: "amplitude".into(),
            start: 0.5,
            stop: 1.5,
            count: 3,
            scale: SweepScale::Linear,
        });
        let rows = run_scenario(&cfg).unwrap();
        assert_eq!(rows[0].status, "ok");
        assert_eq!(rows[1].status, "no_zero_error");
        assert_eq!(rows[2].status, "no_zero_error");
        assert_eq!(exit_code(&rows), 1);
        let single = ScenarioConfig::new(ScenarioKind::Doublewell).with("amplitude", 1.2);
        assert!(matches!(
            run_scenario(&single),
            Err(ScenarioError::Model(BoundError::NoZero { .. }))
        ));
    }

    #[test]
    fn strong_coupling_flagged() {
        let cfg = ScenarioConfig::new(ScenarioKind::Doublewell)
            .with("amplitude", 0.01)
            .with("coupling", 500.0);
        let rows = run_scenario(&cfg).unwrap();
        assert_eq!(rows[0].status, STATUS_STRONG_COUPLING);
        assert_eq!(exit_code(&rows), 1);
    }

    #[test]
    fn violations_map_to_exit_two() {
        let cfg = ScenarioConfig::new(ScenarioKind::TwoLevel)
            .with("g", 400_000)
            .with("rho_gap", 0.0)
            .with("y", 0.0);
        let rows = run_scenario(&cfg).unwrap();
        assert!(rows[0].is_violation());
        assert_eq!(exit_code(&rows), 2);
    }

    #[test]
    fn random_samples_are_reproducible() {
        let mut cfg = ScenarioConfig::new(ScenarioKind::Onion);
        cfg.samples = 64;
        cfg.seed = 11;
        let a = run_scenario(&cfg).unwrap();
        let b = run_scenario(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.satisfied && r.is_ok()));
        cfg.seed = 12;
        assert_ne!(a, run_scenario(&cfg).unwrap());
    }

    #[test]
    fn every_scenario_runs() {
        let configs = [
            ScenarioConfig::new(ScenarioKind::Mass)
                .with("n_particles", 1000)
                .with("compton_ratio", 100.0),
            ScenarioConfig::new(ScenarioKind::Onion)
                .with("n_shells", 10)
                .with("outer_radius", 10.0)
                .with("partition_thickness", 1.0)
                .with("mass", 1.0)
                .with("charge_sq", 1.0 / 137.0)
                .with("mechanism", "skin"),
            ScenarioConfig::new(ScenarioKind::Coax)
                .with("cable_length", 100.0)
                .with("sphere_radius", 10.0)
                .with("inner_radius", 1.0)
                .with("outer_radius", 2.0)
                .with("mass", 1.0)
                .with("charge_sq", 1.0 / 137.0)
                .with("mode", "multimode"),
            ScenarioConfig::new(ScenarioKind::Multiwell)
                .with("amplitude", 0.5)
                .with("wells", 2),
            ScenarioConfig::new(ScenarioKind::SpeciesSweep)
                .with("g_per_species", 1)
                .with("rho_gap", 0.0)
                .with("max_species", 300_000),
        ];
        for cfg in configs {
            let rows = run_scenario(&cfg).unwrap();
            assert_eq!(rows.len(), 1, "{:?}", cfg.scenario);
            assert!(rows[0].is_ok(), "{:?}", rows[0]);
        }
    }

    #[test]
    fn species_sweep_row_reports_threshold() {
        let cfg = ScenarioConfig::new(ScenarioKind::SpeciesSweep)
            .with("g_per_species", 1)
            .with("rho_gap", 0.0)
            .with("max_species", 300_000);
        let row = &run_scenario(&cfg).unwrap()[0];
        assert_eq!(row.diagnostics["first_violation"], 286_751.0);
        assert!(!row.satisfied);
    }

    #[test]
    fn three_well_has_no_profile() {
        let cfg = ScenarioConfig::new(ScenarioKind::Multiwell).with("amplitude", 0.9);
        assert!(matches!(
            run_scenario(&cfg),
            Err(ScenarioError::Model(BoundError::NoZero { .. }))
        ));
    }
}
