use thiserror::Error;

/// Errors produced by realization construction and series evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("rank must be at least 3, got {0}")]
    RankTooSmall(usize),

    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("principal degree {degree} outside [-{max}, {max}]")]
    DegreeOutOfRange { degree: i64, max: i64 },

    #[error("grading constraints produced a singular linear system")]
    SingularGradingSystem,

    #[error("invalid eigenvalue tag: {0}")]
    InvalidTag(String),

    #[error("invalid exponent label: {0}")]
    InvalidLabel(String),

    #[error("[sqrt(2) T_{label}, basis element] is not proportional to the target (deviation {deviation:.3e})")]
    ProportionalityFailure { label: String, deviation: f64 },

    #[error("truncation bounds differ: {0} vs {1}")]
    TruncationMismatch(u32, u32),

    #[error("series live in different variable spaces")]
    SpaceMismatch,

    #[error("z-degree {degree} outside the Laurent window [-{window}, {window}]")]
    WindowOverflow { degree: i64, window: i64 },

    #[error("unknown generator: {0}")]
    UnknownGenerator(String),

    #[error("coefficients carry no basis pairing data; build them with HierarchyCoefficients::extracted")]
    MissingPairings,

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
