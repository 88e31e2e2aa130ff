use thiserror::Error;

pub type Result<T> = std::result::Result<T, SolverError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole in hypergeometric series: (c)_k vanishes at k = {k} for c = {c}")]
    Pole { k: u32, c: f64 },

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("superpotential branch invalid: A_w = {a_w} must be negative")]
    InvalidBranch { a_w: f64, b_w: f64 },

    #[error("no doublet partner for {0}")]
    NoPartner(String),

    #[error("no eigenvalue with {nodes} nodes in [{lo}, {hi}]")]
    NoEigenvalue { nodes: u32, lo: f64, hi: f64 },

    #[error("outer iteration did not converge after {iters} iterations (last E = {last_energy}, defect = {last_defect})")]
    NotConverged {
        iters: u32,
        last_energy: f64,
        last_defect: f64,
        iterates: Vec<f64>,
    },
}

impl SolverError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        SolverError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        SolverError::Domain(msg.into())
    }
}

pub(crate) fn require_positive_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(SolverError::domain(format!("radius must be positive, got {r}")))
    }
}
