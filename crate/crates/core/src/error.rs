use thiserror::Error;

/// Every failure the kit reports. Checked mathematical properties that fail
/// are usually returned as report values instead; these are the cases where
/// an operation cannot produce its result at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("characteristic polynomial does not split over the rationals (minimal polynomial {0})")]
    NonSplitSpectrum(String),
    #[error("{0} is not the square of a rational number")]
    NonSquareScalar(String),
    #[error("not commutative: e{0}·e{1} ≠ e{1}·e{0} at coordinate {2}")]
    NotCommutative(usize, usize, usize),
    #[error("not associative: (e{0}·e{1})·e{2} ≠ e{0}·(e{1}·e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit fails on basis vector e{0}")]
    UnitFails(usize),
    #[error("subspace does not generate the algebra (closure has dimension {closure} of {dim})")]
    NotGenerating { closure: usize, dim: usize },
    #[error("the unit lies in the generating subspace")]
    UnitInSubspace,
    #[error("semisimple part of a subspace element escapes the subspace")]
    SemisimplePartEscapesU,
    #[error("radical cross-check failed: {0}")]
    InconsistentRadical(String),
    #[error("signature mismatch: expected (l, r) = ({expected_l}, {expected_r}), found ({l}, {r})")]
    SignatureMismatch {
        expected_l: usize,
        expected_r: usize,
        l: usize,
        r: usize,
    },
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("representation carries no ambient form")]
    NoAmbientForm,
    #[error("invalid quadric form: {0}")]
    InvalidForm(String),
    #[error("hypotheses not met: (n, l, r) = ({n}, {l}, {r})")]
    HypothesesNotMet { n: usize, l: usize, r: usize },
    #[error("certificate step `{step}` failed: {reason}")]
    StepFailed { step: String, reason: String },
    #[error("wrong signature (l, r) = ({0}, {1}); expected (1, 1)")]
    WrongSignature(usize, usize),
    #[error("unsupported catalog entry: {kind} with n = {n}")]
    Unsupported { kind: String, n: usize },
    #[error("point is not on the quadric")]
    PointOffQuadric,
    #[error("torus parameters must be nonzero")]
    ZeroTorusParameter,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}
