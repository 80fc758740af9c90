use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 2 (got {0})")]
    Dimension(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is not trace-zero (sum = {sum:e})")]
    NotTraceZero { sum: f64 },
    #[error("rank deficient")]
    RankDeficient,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("not a simplex set: {0}")]
    NotSimplexSet(String),
    #[error("non-termination at this precision after {iterations} iterations")]
    NonTermination { iterations: usize },
    #[error("reduction stuck outside the simplex at ceil = {ceil:e}")]
    ReductionStuck { ceil: f64 },
    #[error("covering failure at u = {u:?}: {reason}")]
    CoveringFailure { u: Vec<f64>, reason: String },
    #[error("coset law violated for {tau:?} / {sigma:?}")]
    CosetLawViolated { tau: Vec<usize>, sigma: Vec<usize> },
    #[error("same coset")]
    SameCoset,
    #[error("entries not distinct")]
    EntriesNotDistinct,
    #[error("spectrum too small for this eta: {0}")]
    SpectrumTooSmall(String),
    #[error("not a stabilizer: max rounding residual {residual:e}")]
    NotAStabilizer { residual: f64 },
    #[error("decomposition degenerate: {0}")]
    DecompositionDegenerate(String),
    #[error("basis too skewed; raise reduction effort ({nodes} enumeration nodes)")]
    EnumerationBudget { nodes: usize },
    #[error("parameter constraint violated: {0}")]
    ParameterConstraint(String),
    #[error("raise precision: ambiguous integrality for candidate {candidate:?}")]
    RaisePrecision { candidate: Vec<f64> },
    #[error("distinct visits assertion failed: {components} components < |W''| = {required} ({detail})")]
    DistinctVisits { components: usize, required: usize, detail: String },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid input: {0}")]
    Invalid(String),
}
