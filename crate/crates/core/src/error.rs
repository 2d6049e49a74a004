use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported element {symbol} (Z={charge}); only hydrogen has generated integrals")]
    UnsupportedElement { symbol: String, charge: u32 },

    #[error("singular geometry: atoms {0} and {1} coincide")]
    SingularGeometry(usize, usize),

    #[error("invalid molecule: {0}")]
    InvalidMolecule(String),

    #[error("SCF did not converge after {iterations} iterations (last energy {last_energy})")]
    ScfNotConverged { iterations: usize, last_energy: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("FCIDUMP parse error at line {line}: {message}")]
    FcidumpParse { line: usize, message: String },

    #[error("FCIDUMP index out of range at line {line}: {message}")]
    FcidumpIndex { line: usize, message: String },

    #[error("FCIDUMP format error at line {line}: {message}")]
    FcidumpFormat { line: usize, message: String },

    #[error("invalid active space: {0}")]
    ActiveSpace(String),

    #[error("operator is not Hermitian: residual imaginary coefficient {0:e}")]
    NonHermitian(f64),

    #[error("Hamiltonian parse error at line {line}: {message}")]
    HamiltonianParse { line: usize, message: String },

    #[error("invalid circuit: {0}")]
    Circuit(String),

    #[error("too many qubits: {requested} exceeds the limit of {limit}")]
    TooManyQubits { requested: usize, limit: usize },

    #[error("invalid optimizer configuration: {0}")]
    Config(String),

    #[error("optimizer diverged at iteration {iteration}: non-finite objective")]
    Diverged {
        iteration: usize,
        trace: Vec<f64>,
    },

    #[error("Lanczos did not converge after {iterations} steps (best estimate {best_estimate}, residual {residual:e})")]
    LanczosNotConverged {
        iterations: usize,
        best_estimate: f64,
        residual: f64,
    },

    #[error("geometry input: {0}")]
    Geometry(String),
}
