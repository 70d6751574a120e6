use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    EndpointOutOfRange { vertex: usize, order: usize },
    #[error("edge {u}-{v} is not present")]
    MissingEdge { u: usize, v: usize },
    #[error("edge at {vertex} is a loop")]
    LoopEdge { vertex: usize },
    #[error("pattern graph must be loop-free")]
    LoopedPattern,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search node budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("colouring covers {got} vertices, graph has {expected}")]
    PartialColouring { expected: usize, got: usize },
    #[error("instance too large for exhaustive enumeration: {0}")]
    SizeGuard(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("variable {variable} outside 1..={count}")]
    VariableOutOfRange { variable: usize, count: usize },
    #[error("clause {clause} is empty")]
    EmptyClause { clause: usize },
    #[error("clause {clause} repeats a variable")]
    RepeatedVariable { clause: usize },
    #[error("clause {clause} has width {width}; widths 2..=3 keep the gadget subcubic")]
    ClauseWidth { clause: usize, width: usize },
    #[error("formula has {0} variables; exhaustive search is capped at 24")]
    TooManyVariables(usize),
    #[error("colour count must be at least 2")]
    ColourCount,
    #[error("girth parameter must be at least 3")]
    GirthParameter,
    #[error("formula needs at least one variable")]
    NoVariables,
    #[error("assignment does not cover all variables")]
    AssignmentLength,
    #[error("assignment is not not-all-equal satisfying (clause {clause})")]
    NotNaeSatisfying { clause: usize },
    #[error("colouring rejected by the verifier: {0}")]
    InvalidColouring(crate::role::Violation),
    #[error("occurrence class of variable {variable} is not monochromatic")]
    NonMonochromaticClass { variable: usize },
    #[error("gadget map does not match the graph")]
    MapMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GirthGraphError {
    #[error("k must be at least 3, got {0}")]
    BadK(usize),
    #[error("sequence term overflows")]
    Overflow,
    #[error("construction with {0} vertices per side exceeds the 2^20 guard")]
    TooLarge(u128),
    #[error("cycles of length {0} are too short for a simple graph")]
    TooSmall(u128),
    #[error("digit length {digits} cannot hold the matching positions (needs at least {needed})")]
    DigitLength { digits: usize, needed: usize },
    #[error("digit string has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("digit string is not tagged for this side")]
    WrongTag,
    #[error("digit {digit} out of range for base {base}")]
    DigitRange { digit: u8, base: usize },
    #[error("vertex is at distance {0} from its root, which has the wrong parity")]
    Parity(usize),
    #[error("input graph is not {0}-regular")]
    NotRegular(usize),
    #[error("gemel implantation needs the doubled recurrence")]
    WrongRecurrence,
    #[error("invalid string: {0}")]
    Parse(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoRoleError {
    #[error("graph contains an induced 2K2")]
    Not2K2Free,
    #[error("graph has loops")]
    HasLoops,
    #[error("vertices {0} and {1} are adjacent")]
    Adjacent(usize, usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex set is not a maximal independent set of size at least 2")]
    BadIndependentSet,
}
