use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("edge ({u}, {v}) has endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("node {node} outside 0..{n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("weight {value} at node {node} is negative or not finite")]
    InvalidWeight { node: usize, value: f64 },
    #[error("weight vector has length {got}, graph has {expected} nodes")]
    WeightLength { expected: usize, got: usize },
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("eigensolver did not converge (residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error("eigen index {k} outside 1..={max}")]
    IndexOutOfRange { k: usize, max: usize },
    #[error("expansion undefined: w(S) = {weight_s}, w(V \\ S) = {weight_rest}")]
    UndefinedPhi { weight_s: f64, weight_rest: f64 },
    #[error("all node weights are zero")]
    ZeroWeights,
    #[error("threshold c must be positive, got {0}")]
    NonPositiveThreshold(f64),
    #[error("partition count k must be at least 1")]
    ZeroClasses,
    #[error("exact search needs at most {cap} weighted nodes, got {size}")]
    ExactCapExceeded { size: usize, cap: usize },
    #[error("node ordering is not a permutation of the graph nodes")]
    BadOrdering,
    #[error("class {class} is empty or has zero weight")]
    EmptyClass { class: usize },
    #[error("node {node} in class {class} is outside its sign support")]
    OffSupport { class: usize, node: usize },
    #[error("node {0} appears in more than one class")]
    OverlappingClasses(usize),
    #[error("node {0} of the support is not covered by any class")]
    UncoveredNode(usize),
    #[error("class {class} has expansion {phi} >= c = {c}")]
    InvalidCertificate { class: usize, phi: f64, c: f64 },
    #[error("a + b = {got} but k + 1 = {expected}")]
    ClassCountMismatch { got: usize, expected: usize },
    #[error("unknown {kind} '{name}' (known: {known})")]
    UnknownStrategy { kind: &'static str, name: String, known: String },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("generator gave up after {0} attempts")]
    RetriesExhausted(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
