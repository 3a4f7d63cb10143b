//! JSON configuration files.
//!
//! ```json
//! {
//!   "atom1": { "position": [0, 0, 1], "alpha": [[1,0,0],[0,1,0],[0,0,1]] },
//!   "atom2": { "position": [1, 0, 1], "alpha_perp": 0, "alpha_z": 1 },
//!   "allow_contact": false,
//!   "sweep": { "axis": "z_over_a", "min": 0, "max": 2, "steps": 201 }
//! }
//! ```
//!
//! `alpha` may also be a single number for an isotropic atom. The `sweep`
//! section is only read by the `sweep` command; the `Gamma` axis also takes
//! `a_over_r` and `r`.

use std::fmt;
use std::path::Path;

use casimir_polder::{AtomSpec, Error as CoreError, PolarizabilityTensor, Sweep, SweepAxis, SystemConfig, Vector3};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub atom1: AtomInput,
    pub atom2: AtomInput,
    #[serde(default)]
    pub allow_contact: bool,
    pub sweep: Option<SweepInput>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomInput {
    pub position: [f64; 3],
    pub alpha: Option<AlphaInput>,
    pub alpha_perp: Option<f64>,
    pub alpha_z: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged, expecting = "a number or a 3x3 array of numbers")]
pub enum AlphaInput {
    Isotropic(f64),
    Tensor([[f64; 3]; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum AxisName {
    #[serde(rename = "z_over_a")]
    HeightOverSeparation,
    #[serde(rename = "Gamma")]
    BigGamma,
    #[serde(rename = "z1")]
    Z1,
    #[serde(rename = "z2")]
    Z2,
    #[serde(rename = "a")]
    Separation,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepInput {
    pub axis: AxisName,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub a_over_r: Option<f64>,
    pub r: Option<f64>,
}

#[derive(Debug)]
pub enum ConfigError {
    Io(std::io::Error),
    /// Malformed or mistyped JSON. `path` is the dotted field path.
    Syntax { path: String, message: String },
    /// Well-formed JSON with a value that is rejected.
    Field { path: String, message: String },
    /// Atoms that do not form a valid configuration.
    Geometry(CoreError),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(e) => write!(f, "cannot read config: {e}"),
            ConfigError::Syntax { path, message } if path.is_empty() || path == "." => {
                write!(f, "invalid config: {message}")
            }
            ConfigError::Syntax { path, message } => write!(f, "invalid config at `{path}`: {message}"),
            ConfigError::Field { path, message } => write!(f, "invalid value for `{path}`: {message}"),
            ConfigError::Geometry(e) => write!(f, "invalid geometry: {e}"),
        }
    }
}

impl std::error::Error for ConfigError {}

fn field(path: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Field { path: path.to_string(), message: message.into() }
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| ConfigError::Syntax {
            path: e.path().to_string(),
            message: e.into_inner().to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(ConfigError::Io)?;
        Self::parse(&text)
    }

    pub fn atoms(&self) -> Result<(AtomSpec, AtomSpec), ConfigError> {
        Ok((self.atom1.to_spec("atom1")?, self.atom2.to_spec("atom2")?))
    }

    pub fn system(&self) -> Result<SystemConfig, ConfigError> {
        let (a1, a2) = self.atoms()?;
        let cfg = if self.allow_contact { SystemConfig::with_contact(a1, a2) } else { SystemConfig::new(a1, a2) };
        cfg.map_err(ConfigError::Geometry)
    }

    pub fn sweep(&self) -> Result<Sweep, ConfigError> {
        let s = self.sweep.as_ref().ok_or_else(|| field("sweep", "missing section, required by the sweep command"))?;
        let axis = match s.axis {
            AxisName::HeightOverSeparation => SweepAxis::HeightOverSeparation,
            AxisName::BigGamma => {
                let a_over_r = s.a_over_r.ok_or_else(|| field("sweep.a_over_r", "required for the Gamma axis"))?;
                let r = s.r.unwrap_or(1.0);
                SweepAxis::BigGamma { a_over_r, r }
            }
            AxisName::Z1 => SweepAxis::Z1,
            AxisName::Z2 => SweepAxis::Z2,
            AxisName::Separation => SweepAxis::Separation,
        };
        if s.axis != AxisName::BigGamma {
            if s.a_over_r.is_some() {
                return Err(field("sweep.a_over_r", "only used by the Gamma axis"));
            }
            if s.r.is_some() {
                return Err(field("sweep.r", "only used by the Gamma axis"));
            }
        }
        let (atom1, atom2) = self.atoms()?;
        let sweep = Sweep { atom1, atom2, axis, min: s.min, max: s.max, steps: s.steps };
        sweep.validate().map_err(|e| field("sweep", e.to_string()))?;
        Ok(sweep)
    }
}

impl AtomInput {
    pub fn tensor(&self, name: &str) -> Result<PolarizabilityTensor, ConfigError> {
        let path = |f: &str| format!("{name}.{f}");
        let shorthand = self.alpha_perp.is_some() || self.alpha_z.is_some();
        match (&self.alpha, shorthand) {
            (Some(_), true) => Err(field(&path("alpha"), "give either `alpha` or `alpha_perp`/`alpha_z`, not both")),
            (None, false) => Err(field(name, "missing polarizability: give `alpha` or `alpha_perp` and `alpha_z`")),
            (None, true) => {
                let perp = self.alpha_perp.ok_or_else(|| field(&path("alpha_perp"), "missing, required with `alpha_z`"))?;
                let z = self.alpha_z.ok_or_else(|| field(&path("alpha_z"), "missing, required with `alpha_perp`"))?;
                if !perp.is_finite() || !z.is_finite() {
                    return Err(field(name, "polarizability must be finite"));
                }
                Ok(PolarizabilityTensor::uniaxial(perp, z))
            }
            (Some(AlphaInput::Isotropic(a)), false) => {
                if !a.is_finite() {
                    return Err(field(&path("alpha"), "must be finite"));
                }
                Ok(PolarizabilityTensor::isotropic(*a))
            }
            (Some(AlphaInput::Tensor(rows)), false) => {
                PolarizabilityTensor::from_rows(*rows).map_err(|e| field(&path("alpha"), e.to_string()))
            }
        }
    }

    pub fn to_spec(&self, name: &str) -> Result<AtomSpec, ConfigError> {
        if self.position.iter().any(|v| !v.is_finite()) {
            return Err(field(&format!("{name}.position"), "must be finite"));
        }
        Ok(AtomSpec::new(Vector3::from_array(self.position), self.tensor(name)?))
    }
}
