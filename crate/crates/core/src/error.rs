use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {vertex}")]
    Loop { vertex: u32 },
    #[error("edge {start} -> {end} runs right to left")]
    Reversed { start: u32, end: u32 },
    #[error("edge {start} -> {end} has non-positive weight {weight}")]
    NonPositiveWeight { start: u32, end: u32, weight: i64 },
    #[error("edge {start} -> {end} is short (length 1, weight 1)")]
    ShortEdge { start: u32, end: u32 },
    #[error("negative vertex index in edge {start} -> {end}")]
    NegativeVertex { start: i64, end: i64 },
    #[error("value {0} does not fit a vertex index or weight")]
    TooLarge(i64),
    #[error("distribution has {got} gaps but the graph has {expected} edges")]
    DistributionLength { expected: usize, got: usize },
    #[error("gap {gap} is not under edge {start} -> {end}")]
    GapOutsideEdge { start: u32, end: u32, gap: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected 3 fields, found {0}")]
    FieldCount(usize),
    #[error("not an integer: {0:?}")]
    NotAnInteger(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("missing or malformed header, expected `d=<n>`")]
    Header,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("diagram degree must be at least 1")]
    ZeroDegree,
    #[error("edge {from} -> {to} must satisfy 1 <= source < target <= {d}")]
    BadEndpoints { from: u32, to: u32, d: u32 },
    #[error("edge {from} -> {to} has zero weight")]
    ZeroWeight { from: u32, to: u32 },
    #[error("divergence {div} at vertex {vertex} exceeds 1")]
    Divergence { vertex: u32, div: i64 },
    #[error("component containing vertex {vertex} has negative cogenus")]
    NegativeCogenus { vertex: u32 },
    #[error("long-edge graph is not allowable for d = {d}")]
    NotAllowable { d: u32 },
}

/// Errors raised by the counting, enumeration and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{what} = {value} exceeds the guard {limit}")]
    Guard {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("oracle too large: {midpoints} midpoints in span, bound is {bound}")]
    OracleTooLarge { midpoints: usize, bound: usize },
    #[error("duplicate interpolation node x = {0}")]
    DuplicateNode(i64),
    #[error("{what}: polynomial fit disagrees with the computed value at d = {d}")]
    Validation { what: String, d: u32 },
    #[error("expected an integer, got {0}")]
    NotInteger(String),
    #[error("input table is missing cogenus {0}")]
    MissingValue(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
