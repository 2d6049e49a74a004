use std::sync::OnceLock;

use serde::Deserialize;

/// A contracted s-type Gaussian: Σ_k d_k N(α_k) exp(−α_k r²).
#[derive(Debug, Clone, PartialEq)]
pub struct ContractedShell {
    pub exponents: Vec<f64>,
    /// Contraction coefficients over normalized primitives.
    pub coefficients: Vec<f64>,
}

#[derive(Deserialize)]
struct BasisFile {
    version: u32,
    element: String,
    exponents: Vec<f64>,
    coefficients: Vec<f64>,
}

const STO3G_H: &str = include_str!("../../data/sto3g_hydrogen.json");

pub fn sto3g_hydrogen() -> &'static ContractedShell {
    static SHELL: OnceLock<ContractedShell> = OnceLock::new();
    SHELL.get_or_init(|| {
        let file: BasisFile = serde_json::from_str(STO3G_H).expect("bundled STO-3G data is valid JSON");
        assert_eq!(file.version, 1);
        assert_eq!(file.element, "H");
        assert_eq!(file.exponents.len(), file.coefficients.len());
        ContractedShell {
            exponents: file.exponents,
            coefficients: file.coefficients,
        }
    })
}
