//! Workflows on top of `vqechem`: potential-energy scans driven by a JSON
//! manifest, curve fits for equilibrium geometry, well depth and barrier
//! height, and pointwise comparison of two curves.

pub mod analysis;
pub mod error;
pub mod manifest;
pub mod output;
pub mod pipeline;

pub use analysis::{activation_energy, compare_curves, dissociation_energy, fit_equilibrium, CurvePoint};
pub use error::{CliError, Result};
pub use manifest::ScanManifest;
pub use pipeline::{run_point, run_scan, PesPoint};
