use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("decimal literal `{0}` rejected; write it as p/q")]
    Decimal(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed rational `{0}`")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("axis {axis} out of range for rank {rank}")]
    AxisOutOfRange { axis: usize, rank: usize },
    #[error("axis {axis} used twice in contraction")]
    RepeatedAxis { axis: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("cannot contract axis {left_axis} with axis {right_axis}: both {variance}")]
    VarianceMismatch {
        left_axis: usize,
        right_axis: usize,
        variance: &'static str,
    },
    #[error("data length {len} does not match dimension {dim} and rank {rank}")]
    BadDataLength { len: usize, dim: usize, rank: usize },
    #[error("expected a fully covariant tensor")]
    NotCovariant,
    #[error("metric is not symmetric")]
    MetricNotSymmetric,
    #[error("g * g_inv is not the identity")]
    MetricInverseMismatch,
    #[error("metric is degenerate")]
    DegenerateMetric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    ParseRational(#[from] ParseRationalError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("invariant violated: {identity} at {indices:?}")]
    Invariant {
        identity: String,
        indices: Vec<usize>,
    },
    #[error("metric is not ad-invariant: g([X{i},X{j}],X{k}) + g([X{i},X{k}],X{j}) != 0", i = .i + 1, j = .j + 1, k = .k + 1)]
    MetricNotInvariant { i: usize, j: usize, k: usize },
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status: 1 for bad input, 3 for a broken internal
    /// invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::ParseRational(_) | Error::Io(_) => 1,
            Error::Invariant { .. } | Error::MetricNotInvariant { .. } | Error::Tensor(_) | Error::Json(_) => 3,
        }
    }
}
