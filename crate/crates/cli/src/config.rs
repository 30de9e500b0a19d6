//! Run configuration: a single JSON document, every field optional.

use std::collections::BTreeMap;
use std::path::Path;

use covqsc_core::group::{Generator, GeneratorSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::suites::{self, Suite};

/// Largest tensor grid per axis for one-particle suites.
pub const MAX_AXIS_POINTS: usize = 9;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config `{path}`: {reason}")]
    Io { path: String, reason: String },
    #[error("config is not valid JSON: {0}")]
    Parse(String),
    #[error("invalid `{field}`: {reason}")]
    Field { field: String, reason: String },
}

impl ConfigError {
    pub fn field(field: impl Into<String>, reason: impl Into<String>) -> Self {
        ConfigError::Field {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    Tensor,
    Orbit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    /// Grid used by the one-particle suites.
    pub kind: GridKind,
    pub n_per_axis: usize,
    pub extent: f64,
    /// Seeds of the rotation-closed orbit grid (always used at Fock level).
    pub seeds: Vec<[f64; 3]>,
    pub orbit_generators: Vec<Generator>,
    pub max_orbit_points: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            kind: GridKind::Tensor,
            n_per_axis: 7,
            extent: 1.5,
            seeds: vec![[0.0, 0.0, 0.0], [0.0, 0.0, 0.8]],
            orbit_generators: vec![
                Generator::Rotation {
                    axis: 2,
                    angle: std::f64::consts::PI / 7.0,
                },
                Generator::Rotation {
                    axis: 0,
                    angle: std::f64::consts::PI,
                },
            ],
            max_orbit_points: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FockConfig {
    pub cutoff: u32,
    pub guard: u32,
    /// Cap on the one-particle dimension of Fock-level suites.
    pub max_modes: usize,
}

impl Default for FockConfig {
    fn default() -> Self {
        Self {
            cutoff: 4,
            guard: 4,
            max_modes: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    pub rotation_angle: f64,
    pub boost_rapidity: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            rotation_angle: std::f64::consts::PI / 7.0,
            boost_rapidity: 0.3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub mass: f64,
    pub grid: GridConfig,
    pub fock: FockConfig,
    /// Overrides of default tolerances, keyed by check id.
    pub tolerances: BTreeMap<String, f64>,
    pub generators: GeneratorConfig,
    pub seed: u64,
    /// Empty means every suite.
    pub suites: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mass: 1.0,
            grid: GridConfig::default(),
            fock: FockConfig::default(),
            tolerances: BTreeMap::new(),
            generators: GeneratorConfig::default(),
            seed: 20240601,
            suites: Vec::new(),
        }
    }
}

fn positive(field: &str, x: f64) -> Result<(), ConfigError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::field(field, format!("must be a positive finite number, got {x}")))
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        positive("mass", self.mass)?;
        positive("grid.extent", self.grid.extent)?;
        if self.grid.n_per_axis == 0 || self.grid.n_per_axis > MAX_AXIS_POINTS {
            return Err(ConfigError::field(
                "grid.n_per_axis",
                format!("must be in 1..={MAX_AXIS_POINTS}, got {}", self.grid.n_per_axis),
            ));
        }
        if self.grid.seeds.is_empty() {
            return Err(ConfigError::field("grid.seeds", "at least one seed is required"));
        }
        if let Some(q) = self.grid.seeds.iter().find(|q| q.iter().any(|x| !x.is_finite())) {
            return Err(ConfigError::field("grid.seeds", format!("non-finite seed {q:?}")));
        }
        if self.grid.orbit_generators.is_empty() {
            return Err(ConfigError::field("grid.orbit_generators", "at least one rotation is required"));
        }
        for (i, g) in self.grid.orbit_generators.iter().enumerate() {
            match *g {
                Generator::Rotation { axis, angle } if axis < 3 && angle.is_finite() => {}
                Generator::Rotation { .. } => {
                    return Err(ConfigError::field(
                        format!("grid.orbit_generators[{i}]"),
                        "axis must be 0, 1 or 2 and the angle finite",
                    ))
                }
                Generator::Boost { .. } => {
                    return Err(ConfigError::field(
                        format!("grid.orbit_generators[{i}]"),
                        "only rotations keep an orbit grid finite",
                    ))
                }
            }
        }
        if self.grid.max_orbit_points == 0 {
            return Err(ConfigError::field("grid.max_orbit_points", "must be at least 1"));
        }
        if self.fock.cutoff == 0 {
            return Err(ConfigError::field("fock.cutoff", "must be at least 1"));
        }
        if self.fock.guard > self.fock.cutoff {
            return Err(ConfigError::field(
                "fock.guard",
                format!("guard band {} exceeds cutoff {}", self.fock.guard, self.fock.cutoff),
            ));
        }
        if self.fock.max_modes == 0 {
            return Err(ConfigError::field("fock.max_modes", "must be at least 1"));
        }
        if !self.generators.rotation_angle.is_finite() {
            return Err(ConfigError::field("generators.rotation_angle", "must be finite"));
        }
        if !self.generators.boost_rapidity.is_finite() {
            return Err(ConfigError::field("generators.boost_rapidity", "must be finite"));
        }
        let known = suites::default_tolerances();
        for (name, value) in &self.tolerances {
            let field = format!("tolerances.{name}");
            if !known.contains_key(name.as_str()) {
                return Err(ConfigError::field(field, "unknown check id"));
            }
            positive(&field, *value)?;
        }
        for (i, s) in self.suites.iter().enumerate() {
            if Suite::from_name(s).is_none() {
                return Err(ConfigError::field(format!("suites[{i}]"), format!("unknown suite `{s}`")));
            }
        }
        let orbit = suites::orbit_grid(self).map_err(|e| ConfigError::field("grid.seeds", e.to_string()))?;
        if 2 * orbit.len() > self.fock.max_modes {
            return Err(ConfigError::field(
                "fock.max_modes",
                format!("orbit grid has {} points, i.e. {} modes", orbit.len(), 2 * orbit.len()),
            ));
        }
        Ok(())
    }

    pub fn generator_set(&self) -> GeneratorSet {
        GeneratorSet::rotations_and_boosts(self.generators.rotation_angle, self.generators.boost_rapidity)
            .expect("coordinate axes are unit vectors")
    }

    pub fn tolerance(&self, check: &str) -> f64 {
        self.tolerances
            .get(check)
            .copied()
            .or_else(|| suites::default_tolerances().get(check).copied())
            .unwrap_or_else(|| panic!("check `{check}` has no registered tolerance"))
    }

    /// Suites to run, in canonical order.
    pub fn selected_suites(&self) -> Vec<Suite> {
        if self.suites.is_empty() {
            return Suite::ALL.to_vec();
        }
        Suite::ALL
            .iter()
            .copied()
            .filter(|s| self.suites.iter().any(|name| name == s.name()))
            .collect()
    }
}
