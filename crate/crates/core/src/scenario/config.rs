use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ScenarioError;

/// Keys of the flat file format that are not model parameters.
pub const RESERVED_KEYS: [&str; 8] = [
    "scenario",
    "seed",
    "samples",
    "sweep",
    "sweep_start",
    "sweep_stop",
    "sweep_count",
    "sweep_scale",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Mass,
    TwoLevel,
    Onion,
    Coax,
    Doublewell,
    Multiwell,
    SpeciesSweep,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 7] = [
        ScenarioKind::Mass,
        ScenarioKind::TwoLevel,
        ScenarioKind::Onion,
        ScenarioKind::Coax,
        ScenarioKind::Doublewell,
        ScenarioKind::Multiwell,
        ScenarioKind::SpeciesSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Mass => "mass",
            ScenarioKind::TwoLevel => "two_level",
            ScenarioKind::Onion => "onion",
            ScenarioKind::Coax => "coax",
            ScenarioKind::Doublewell => "doublewell",
            ScenarioKind::Multiwell => "multiwell",
            ScenarioKind::SpeciesSweep => "species_sweep",
        }
    }

    /// Parameters that must be present.
    pub fn required(self) -> &'static [&'static str] {
        match self {
            ScenarioKind::Mass => &["n_particles", "compton_ratio"],
            ScenarioKind::TwoLevel => &["g", "rho_gap", "y"],
            ScenarioKind::Onion => &[
                "n_shells",
                "outer_radius",
                "partition_thickness",
                "mass",
                "charge_sq",
            ],
            ScenarioKind::Coax => &[
                "cable_length",
                "sphere_radius",
                "inner_radius",
                "outer_radius",
                "mass",
                "charge_sq",
            ],
            ScenarioKind::Doublewell => &["amplitude"],
            ScenarioKind::Multiwell => &["amplitude"],
            ScenarioKind::SpeciesSweep => &["g_per_species", "rho_gap", "max_species"],
        }
    }

    /// Parameters that may be present; missing ones take documented defaults.
    pub fn optional(self) -> &'static [&'static str] {
        match self {
            ScenarioKind::Mass => &["momentum_fraction"],
            ScenarioKind::TwoLevel => &["rho0"],
            ScenarioKind::Onion => &["mechanism", "density", "relaxation_time"],
            ScenarioKind::Coax => &["mode", "density", "relaxation_time"],
            ScenarioKind::Doublewell => &["coupling", "entropy", "tolerance"],
            ScenarioKind::Multiwell => &["wells", "tilt", "tolerance"],
            ScenarioKind::SpeciesSweep => &["rho0", "rho0_model"],
        }
    }

    fn accepts(self, key: &str) -> bool {
        self.required().contains(&key) || self.optional().contains(&key)
    }

    /// Whether `samples > 0` draws random scenes for this scenario.
    pub fn supports_sampling(self) -> bool {
        matches!(
            self,
            ScenarioKind::Mass | ScenarioKind::Onion | ScenarioKind::Coax
        )
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| ScenarioError::Config(format!("unknown scenario `{s}`")))
    }
}

/// A parameter value as written in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Integer(i64),
    Real(f64),
    Text(String),
}

impl ParamValue {
    /// Parses a command-line value: integer, then real, then bare text.
    pub fn parse(raw: &str) -> Self {
        let raw = raw.trim();
        if let Ok(i) = raw.parse::<i64>() {
            ParamValue::Integer(i)
        } else if let Ok(x) = raw.parse::<f64>() {
            ParamValue::Real(x)
        } else {
            ParamValue::Text(raw.trim_matches('"').to_string())
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            ParamValue::Integer(i) => Some(i as f64),
            ParamValue::Real(x) => Some(x),
            ParamValue::Text(_) => None,
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Integer(i) => write!(f, "{i}"),
            ParamValue::Real(x) => write!(f, "{x}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SweepScale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub scale: SweepScale,
}

impl SweepSpec {
    /// The sweep points in order; `count = 1` gives `start` alone.
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let t = if n == 1 {
                    0.0
                } else {
                    i as f64 / (n - 1) as f64
                };
                match self.scale {
                    SweepScale::Linear => self.start + t * (self.stop - self.start),
                    SweepScale::Log => {
                        (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                    }
                }
            })
            .collect()
    }
}

/// One scenario run: a model, its parameters, an optional sweep and the seed
/// for randomized draws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    #[serde(default)]
    pub parameters: BTreeMap<String, ParamValue>,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub seed: u64,
    /// Number of random scenes to draw instead of using the fixed parameters.
    #[serde(default)]
    pub samples: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlatFile {
    scenario: BTreeMap<String, toml::Value>,
}

impl ScenarioConfig {
    pub fn new(scenario: ScenarioKind) -> Self {
        ScenarioConfig {
            scenario,
            parameters: BTreeMap::new(),
            sweep: None,
            seed: 0,
            samples: 0,
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    /// Reads a `.json` file as the structured form and anything else as the
    /// flat `[scenario]` form.
    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ScenarioError::Config(format!("cannot read {}: {e}", path.display())))?;
        if path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"))
        {
            Self::from_json(&text)
        } else {
            Self::from_toml(&text)
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let cfg: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| ScenarioError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parses the flat form: key = value lines under one `[scenario]` header.
    pub fn from_toml(text: &str) -> Result<Self, ScenarioError> {
        let file: FlatFile =
            toml::from_str(text).map_err(|e| ScenarioError::Config(e.to_string()))?;
        let mut flat = BTreeMap::new();
        for (key, value) in file.scenario {
            let value = match value {
                toml::Value::Integer(i) => ParamValue::Integer(i),
                toml::Value::Float(x) => ParamValue::Real(x),
                toml::Value::String(s) => ParamValue::Text(s),
                other => {
                    return Err(ScenarioError::Config(format!(
                        "key `{key}` must be a number or a string, got {}",
                        other.type_str()
                    )))
                }
            };
            flat.insert(key, value);
        }
        Self::from_flat(flat)
    }

    /// Builds a config from a flat key map, splitting off the reserved keys.
    pub fn from_flat(mut flat: BTreeMap<String, ParamValue>) -> Result<Self, ScenarioError> {
        let kind = match flat.remove("scenario") {
            Some(ParamValue::Text(s)) => s.parse()?,
            Some(v) => {
                return Err(ScenarioError::Config(format!(
                    "scenario must be a name, got {v}"
                )))
            }
            None => return Err(ScenarioError::Config("missing key `scenario`".into())),
        };
        let mut cfg = ScenarioConfig::new(kind);
        for (key, value) in flat {
            cfg.set(&key, value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies one `key = value` assignment in the flat key space.
    pub fn set(&mut self, key: &str, value: ParamValue) -> Result<(), ScenarioError> {
        let number = |v: &ParamValue| {
            v.as_f64()
                .ok_or_else(|| ScenarioError::Config(format!("`{key}` must be numeric, got {v}")))
        };
        let count = |v: &ParamValue| match *v {
            ParamValue::Integer(i) if i >= 0 => Ok(i as u64),
            _ => Err(ScenarioError::Config(format!(
                "`{key}` must be a non-negative integer, got {v}"
            ))),
        };
        match key {
            "scenario" => {
                let ParamValue::Text(s) = &value else {
                    return Err(ScenarioError::Config(format!(
                        "scenario must be a name, got {value}"
                    )));
                };
                self.scenario = s.parse()?;
            }
            "seed" => self.seed = count(&value)?,
            "samples" => self.samples = count(&value)? as usize,
            "sweep" => match value {
                ParamValue::Text(s) => self.sweep_mut().parameter = s,
                v => {
                    return Err(ScenarioError::Config(format!(
                        "sweep must name a parameter, got {v}"
                    )))
                }
            },
            "sweep_start" => self.sweep_mut().start = number(&value)?,
            "sweep_stop" => self.sweep_mut().stop = number(&value)?,
            "sweep_count" => self.sweep_mut().count = count(&value)? as usize,
            "sweep_scale" => {
                self.sweep_mut().scale = match value {
                    ParamValue::Text(s) if s == "linear" => SweepScale::Linear,
                    ParamValue::Text(s) if s == "log" => SweepScale::Log,
                    v => {
                        return Err(ScenarioError::Config(format!(
                            "sweep_scale must be linear or log, got {v}"
                        )))
                    }
                }
            }
            _ => {
                self.parameters.insert(key.to_string(), value);
            }
        }
        Ok(())
    }

    fn sweep_mut(&mut self) -> &mut SweepSpec {
        self.sweep.get_or_insert_with(|| SweepSpec {
            parameter: String::new(),
            start: f64::NAN,
            stop: f64::NAN,
            count: 0,
            scale: SweepScale::Linear,
        })
    }

    /// Applies a `key=value` override as given on the command line. Call
    /// [`validate`](Self::validate) once all overrides are in.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), ScenarioError> {
        let (key, value) = assignment.split_once('=').ok_or_else(|| {
            ScenarioError::Config(format!("override `{assignment}` is not key=value"))
        })?;
        self.set(key.trim(), ParamValue::parse(value))
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        let kind = self.scenario;
        for key in self.parameters.keys() {
            if RESERVED_KEYS.contains(&key.as_str()) || !kind.accepts(key) {
                return Err(ScenarioError::Config(format!(
                    "unknown key `{key}` for scenario {kind}"
                )));
            }
        }
        for key in kind.required() {
            let swept = self.sweep.as_ref().is_some_and(|s| s.parameter == *key);
            if !self.parameters.contains_key(*key) && !swept && self.samples == 0 {
                return Err(ScenarioError::Config(format!(
                    "missing key `{key}` for scenario {kind}"
                )));
            }
        }
        if self.samples > 0 {
            if !kind.supports_sampling() {
                return Err(ScenarioError::Config(format!(
                    "scenario {kind} has no random scene generator"
                )));
            }
            if self.sweep.is_some() {
                return Err(ScenarioError::Config(
                    "samples and sweep cannot be combined".into(),
                ));
            }
        }
        if let Some(sweep) = &self.sweep {
            if sweep.parameter.is_empty() {
                return Err(ScenarioError::Config("sweep needs a parameter name".into()));
            }
            if !kind.accepts(&sweep.parameter) {
                return Err(ScenarioError::Config(format!(
                    "cannot sweep `{}`: not a parameter of {kind}",
                    sweep.parameter
                )));
            }
            if sweep.count > 0 {
                if !sweep.start.is_finite() || !sweep.stop.is_finite() {
                    return Err(ScenarioError::Config(
                        "sweep needs finite sweep_start and sweep_stop".into(),
                    ));
                }
                if sweep.scale == SweepScale::Log && !(sweep.start > 0.0 && sweep.stop > 0.0) {
                    return Err(ScenarioError::Config(
                        "log sweep needs positive endpoints".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

impl From<f64> for ParamValue {
    fn from(x: f64) -> Self {
        ParamValue::Real(x)
    }
}

impl From<i64> for ParamValue {
    fn from(i: i64) -> Self {
        ParamValue::Integer(i)
    }
}

impl From<&str> for ParamValue {
    fn from(s: &str) -> Self {
        ParamValue::Text(s.to_string())
    }
}
