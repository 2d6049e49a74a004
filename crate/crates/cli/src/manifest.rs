//! JSON scan manifest.
//!
//! ```json
//! {
//!   "label": "h2-pes",
//!   "unit": "angstrom",
//!   "seed": 7,
//!   "points": [
//!     {"label": "r0.74", "source": {"kind": "hydrogen_chain", "bonds": [0.74]}},
//!     {"label": "eq", "coordinate": 1.336, "source": {"kind": "fcidump", "path": "h2s.fcidump"}}
//!   ],
//!   "active_space": {"frozen": [0, 1], "active": []},
//!   "ansatz": {"kind": "uccsd"},
//!   "optimizer": {"kind": "simplex", "max_iterations": 1000},
//!   "mode": {"kind": "exact"},
//!   "restarts": 5
//! }
//! ```
//!
//! Sources are `hydrogen_chain` (bond lengths in `unit`, along z),
//! `geometry` (a geometry document inline) and `fcidump` (path relative to
//! the manifest). An empty `active` list means every orbital not frozen.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use vqechem::chem::{ActiveSpaceSpec, GeometryInput};
use vqechem::optim::OptimizerConfig;
use vqechem::units::LengthUnit;
use vqechem::vqe::EvaluationMode;

use crate::error::{read_to_string, CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanManifest {
    pub label: String,
    #[serde(default = "default_unit")]
    pub unit: LengthUnit,
    #[serde(default)]
    pub seed: u64,
    pub points: Vec<PointSpec>,
    #[serde(default)]
    pub active_space: Option<ActiveSpaceSpec>,
    #[serde(default)]
    pub ansatz: AnsatzSpec,
    #[serde(default)]
    pub optimizer: OptimizerConfig,
    #[serde(default = "default_mode")]
    pub mode: EvaluationMode,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    /// Directory that relative FCIDUMP paths resolve against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

fn default_unit() -> LengthUnit {
    LengthUnit::Angstrom
}

fn default_mode() -> EvaluationMode {
    EvaluationMode::Exact
}

fn default_restarts() -> usize {
    vqechem::vqe::DEFAULT_RESTARTS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub label: String,
    /// Reported coordinate; defaults to the first bond of a hydrogen chain.
    #[serde(default)]
    pub coordinate: Option<f64>,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    HydrogenChain {
        bonds: Vec<f64>,
        #[serde(default)]
        charge: i32,
    },
    Geometry(GeometryInput),
    Fcidump {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AnsatzKind {
    #[default]
    Uccsd,
    Hardware,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnsatzSpec {
    pub kind: AnsatzKind,
    #[serde(default = "default_reps")]
    pub reps: usize,
}

fn default_reps() -> usize {
    1
}

impl Default for AnsatzSpec {
    fn default() -> Self {
        Self { kind: AnsatzKind::Uccsd, reps: default_reps() }
    }
}

impl PointSpec {
    pub fn coordinate(&self) -> Option<f64> {
        self.coordinate.or(match &self.source {
            Source::HydrogenChain { bonds, .. } => bonds.first().copied(),
            _ => None,
        })
    }
}

impl ScanManifest {
    pub fn from_json(text: &str, base_dir: impl Into<PathBuf>) -> Result<Self> {
        let mut m: ScanManifest =
            serde_json::from_str(text).map_err(|source| CliError::Json { path: PathBuf::from("<manifest>"), source })?;
        m.base_dir = base_dir.into();
        m.validate()?;
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = read_to_string(path)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let mut m: ScanManifest =
            serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })?;
        m.base_dir = base;
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(CliError::Manifest("no points".into()));
        }
        let mut labels: Vec<&str> = self.points.iter().map(|p| p.label.as_str()).collect();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(CliError::Manifest(format!("duplicate point label {}", w[0])));
        }
        if self.restarts == 0 {
            return Err(CliError::Manifest("restarts must be at least 1".into()));
        }
        self.optimizer.validate()?;
        Ok(())
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }
}

/// Deterministic per-point seed (splitmix64 of base and index).
pub fn point_seed(base: u64, index: usize) -> u64 {
    let mut z = base ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Reads a geometry document.
pub fn load_geometry(path: &Path) -> Result<GeometryInput> {
    Ok(GeometryInput::from_json(&read_to_string(path)?)?)
}
