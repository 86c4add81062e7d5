use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {op} on {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("entry count {got} does not match shape {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, got: usize },
    #[error("non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("momentum is off shell: p^2 - m^2 = {0:e}")]
    OffShell(f64),
    #[error("momentum has a component along the charge axis (p3 = {0:e})")]
    MomentumAlongAxis(f64),
    #[error("invalid spin label {s} for {context}")]
    InvalidSpin { s: i32, context: &'static str },
    #[error("mass must be strictly positive")]
    NonPositiveMass,
    #[error("mass {0} is not the square of a rational")]
    NotPerfectSquare(String),
    #[error("point lies on the line-charge axis")]
    Singularity,
    #[error("path is not closed")]
    OpenPath,
    #[error("path needs at least two vertices")]
    DegeneratePath,
    #[error("segment {0} passes through the charge axis")]
    SegmentCrossesAxis(usize),
    #[error("grid needs at least 3 points per axis, got {0}x{1}")]
    GridTooSmall(usize, usize),
    #[error("grid comes within {distance:e} of the line charge; need at least {required:e}")]
    GridNearSingularity { distance: f64, required: f64 },
    #[error("tolerance and step sizes must be positive and finite")]
    BadTolerance,
    #[error("not an Aharonov-Casher configuration: {0}")]
    NotAcConfiguration(&'static str),
    #[error("unsupported state: {0}")]
    UnsupportedState(&'static str),
    #[error("quadrature did not converge on [{0:e}, {1:e}]")]
    QuadratureDiverged(f64, f64),
    #[error("spin ratio undefined: spin-1/2 phase vanishes")]
    DegenerateRatio,
    #[error("algebra construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
