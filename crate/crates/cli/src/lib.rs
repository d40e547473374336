//! Reports on the partial-fraction coefficients `C_{0,1,l}(N)`: exact values,
//! the saddle-point asymptotics and the approximate contour integral, as
//! tables, CSV/JSON files and SVG charts.

pub mod commands;
pub mod config;
pub mod peaks;
pub mod report;
pub mod svg;

pub use commands::{cmd_check, cmd_compare, cmd_constants, cmd_disproof, cmd_figures, Session};
pub use config::{Modes, OutputFormat, RunConfig};
pub use report::ComparisonRow;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rademacher::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("format: {0}")]
    Format(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    /// 2 for bad input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        use rademacher::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::Range { .. } | E::Precondition(_) | E::Precision { .. } | E::EmptyProduct) => 2,
            _ => 1,
        }
    }
}
