//! Configuration, record types and emitters behind the `spectral-tail` binary.

pub mod config;
pub mod emit;
pub mod records;

use std::process::ExitCode;

/// Failures surfaced by the binary, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] spectral_tail::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("output error: {0}")]
    Output(String),
    /// Hypothesis checks failed; the report has already been printed.
    #[error("{0} hypothesis check(s) failed")]
    Hypotheses(usize),
}

impl CliError {
    /// 0 success, 2 config, 3 admissibility, 4 numeric.
    pub fn exit_code(&self) -> u8 {
        use spectral_tail::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Core(E::Config(_) | E::Domain(_) | E::UnsupportedDecoupling) => 2,
            CliError::Core(E::EpsTooLarge { .. } | E::Admissibility { .. } | E::NoNegativeSpectrum { .. }) => 3,
            CliError::Hypotheses(_) => 3,
            CliError::Core(E::Numeric { .. }) => 4,
            CliError::Io(_) | CliError::Output(_) => 4,
        }
    }

    pub fn is_admissibility(&self) -> bool {
        self.exit_code() == 3
    }
}

impl From<CliError> for ExitCode {
    fn from(e: CliError) -> Self {
        ExitCode::from(e.exit_code())
    }
}

/// Applies `SPECTRAL_TAIL_THREADS` to the global rayon pool.
pub fn init_thread_pool() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("SPECTRAL_TAIL_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Config(format!("SPECTRAL_TAIL_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}
