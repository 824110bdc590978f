use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty polyhedron")]
    EmptyPolyhedron,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("cell {0} not found")]
    CellNotFound(usize),
    #[error("cell {face} is not a face of cell {cell}")]
    NotAFace { face: usize, cell: usize },
    #[error("restriction image of cell {from} is not contained in the multitangent of cell {to} (p = {p})")]
    ImageNotContained { from: usize, to: usize, p: usize },
    #[error("not a chain complex: boundary composition nonzero in degree {degree}")]
    NotAComplex { degree: usize },
    #[error("star of cell {cell} has quotient dimension {dim}; supply the filtration explicitly")]
    UnsupportedStarDimension { cell: usize, dim: usize },
    #[error("complement of the open set is not closed: cell {0} has a face inside the open set")]
    ComplementNotClosed(usize),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("invalid perversity: {0}")]
    InvalidPerversity(String),
    #[error("cells with nonempty sedentarity are not supported by this operation (cell {0})")]
    UnsupportedSedentarity(usize),
    #[error("cell {0} is unbounded and the complex is not flagged conical")]
    UnboundedCellWithoutConeStructure(usize),
    #[error("deleted set is not a closed subcomplex: cell {0} has a face outside it")]
    NotClosed(usize),
    #[error("simplex carrier {0} does not lie in any stratum")]
    InconsistentStratification(usize),
    #[error("results disagree between subdivision levels {low} and {high} at (p, q) = ({p}, {q})")]
    StabilizationFailure { low: usize, high: usize, p: usize, q: usize },
    #[error("open model is not a sub-model: {0}")]
    ModelMismatch(String),
    #[error("Borel-Moore and compactly supported groups need a compact or conical input")]
    ConicalStructureRequired,
    #[error("not a fan with a vertex: {0}")]
    NotAFan(String),
    #[error("complex is not one-dimensional")]
    NotOneDimensional,
    #[error("bad pair: {0}")]
    BadPair(String),
    #[error("duality needs field coefficients")]
    FieldRequired,
    #[error("condition (C) has not been asserted for this filtration")]
    ConditionCNotAsserted,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::StabilizationFailure { .. } => 3,
            Error::ConicalStructureRequired
            | Error::UnsupportedStarDimension { .. }
            | Error::UnsupportedSedentarity(_)
            | Error::UnboundedCellWithoutConeStructure(_) => 4,
            Error::ImageNotContained { .. } | Error::NotAComplex { .. } | Error::InconsistentStratification(_) | Error::ModelMismatch(_) => 1,
            _ => 2,
        }
    }
}
