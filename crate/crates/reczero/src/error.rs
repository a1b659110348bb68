use thiserror::Error;

/// Library-wide error type. Variants are grouped by how the CLI maps them
/// to exit codes: input errors (2), budget/cap errors (3), and internal
/// invariant violations (4).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    // ---- input / usage errors ----
    #[error("division by zero in F_q")]
    DivisionByZero,
    #[error("elements belong to different field contexts")]
    CtxMismatch,
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("modulus is not irreducible over F_p")]
    ReducibleModulus,
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("monomial exponent overflow")]
    ExponentOverflow,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("zero alpha: strip leading terms before normalizing")]
    ZeroAlpha,
    #[error("companion polynomial does not split over F_q[x]: {0}")]
    NonSplit(String),
    #[error("malformed expression at line {line}, column {col}: {msg}")]
    MalformedExpression { line: usize, col: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("negative exponents are not supported by the tensor certificate")]
    NegativeExponent,
    #[error("unsupported intersection: {0}")]
    UnsupportedIntersection(String),

    // ---- budget / cap errors ----
    #[error("field too large: q = {0} exceeds the enumeration cap")]
    FieldTooLarge(u64),
    #[error("evaluation budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("state cap exceeded while building the automaton ({0} states)")]
    StateExplosion(usize),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    // ---- internal invariant violations ----
    #[error("Vandermonde system is singular (internal)")]
    SingularVandermonde,
    #[error("degree closure violated (internal): {0}")]
    DegreeClosureViolated(String),
    #[error("kernel bound violated (internal): {0}")]
    BoundViolated(String),
    #[error("nontrivial strongly connected component is not a simple cycle")]
    NonCycleScc,
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Exit code class used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            DivisionByZero | CtxMismatch | NotPrime(_) | ReducibleModulus | BadModulus(_)
            | NotDivisible | ExponentOverflow | ZeroInput | ZeroAlpha | NonSplit(_)
            | MalformedExpression { .. } | UnknownIdentifier(_) | InvalidInput(_)
            | NegativeExponent | UnsupportedIntersection(_) => 2,
            FieldTooLarge(_) | BudgetExceeded(_) | StateExplosion(_) | CapExceeded(_) => 3,
            SingularVandermonde | DegreeClosureViolated(_) | BoundViolated(_) | NonCycleScc
            | PreconditionUnmet(_) | Internal(_) => 4,
        }
    }

    /// Stable machine-readable kind tag carried in CLI error output.
    pub fn kind(&self) -> &'static str {
        use Error::*;
        match self {
            DivisionByZero => "DivisionByZero",
            CtxMismatch => "CtxMismatch",
            NotPrime(_) => "NotPrime",
            ReducibleModulus => "ReducibleModulus",
            BadModulus(_) => "BadModulus",
            NotDivisible => "NotDivisible",
            ExponentOverflow => "ExponentOverflow",
            ZeroInput => "ZeroInput",
            ZeroAlpha => "ZeroAlpha",
            NonSplit(_) => "NonSplit",
            MalformedExpression { .. } => "MalformedExpression",
            UnknownIdentifier(_) => "UnknownIdentifier",
            InvalidInput(_) => "InvalidInput",
            NegativeExponent => "NegativeExponent",
            UnsupportedIntersection(_) => "UnsupportedIntersection",
            FieldTooLarge(_) => "FieldTooLarge",
            BudgetExceeded(_) => "BudgetExceeded",
            StateExplosion(_) => "StateExplosion",
            CapExceeded(_) => "CapExceeded",
            SingularVandermonde => "SingularVandermonde",
            DegreeClosureViolated(_) => "DegreeClosureViolated",
            BoundViolated(_) => "BoundViolated",
            NonCycleScc => "NonCycleSCC",
            PreconditionUnmet(_) => "PreconditionUnmet",
            Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
