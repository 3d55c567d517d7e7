use thiserror::Error;

/// Errors produced by the analysis pipeline.
///
/// Display strings are single-line so the CLI can print them verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty body")]
    EmptyBody,
    #[error("no tokens")]
    NoTokens,
    #[error("no window sizes given")]
    EmptySizes,
    #[error("window size {size} outside 1..={len}")]
    BadWindowSize { size: usize, len: usize },
    #[error("insufficient points: n={n} with p={p} regressors")]
    InsufficientPoints { n: usize, p: usize },
    #[error("degenerate abscissa")]
    DegenerateAbscissa,
    #[error("no turning point: beta={0} is not negative")]
    NoTurningPoint(f64),
    #[error("sample size {t} exceeds population {total}")]
    SampleTooLarge { t: u64, total: u64 },
    #[error("pseudo-weight denominator is zero")]
    ZeroDenominator,
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
