use std::fmt;

use thiserror::Error;

/// Location-tagged failure from the model or expression parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UndeclaredIdentifier(String),
    DuplicateName(String),
    DuplicateEquation(String),
    OutputOnRightHandSide(String),
    DerivativeOnRightHandSide(String),
    MissingEquation(String),
    MissingDeclaration(&'static str),
    DeclarationAfterEquation,
    NonPolynomialDenominator,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UndeclaredIdentifier(id) => write!(f, "undeclared identifier `{id}`"),
            ParseErrorKind::DuplicateName(id) => write!(f, "name `{id}` declared twice"),
            ParseErrorKind::DuplicateEquation(id) => write!(f, "duplicate equation for `{id}`"),
            ParseErrorKind::OutputOnRightHandSide(id) => {
                write!(f, "output `{id}` may not appear on a right-hand side")
            }
            ParseErrorKind::DerivativeOnRightHandSide(id) => {
                write!(f, "derivative of `{id}` may not appear on a right-hand side")
            }
            ParseErrorKind::MissingEquation(id) => write!(f, "no equation given for `{id}`"),
            ParseErrorKind::MissingDeclaration(kw) => write!(f, "missing `{kw}:` declaration"),
            ParseErrorKind::DeclarationAfterEquation => {
                write!(f, "declarations must precede equations")
            }
            ParseErrorKind::NonPolynomialDenominator => {
                write!(f, "denominator must not involve derivative variables")
            }
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.kind)
    }
}

impl std::error::Error for ParseError {}

/// What was found before the prolongation budget ran out.
#[derive(Debug, Clone)]
pub struct DepthExhausted {
    pub max_depth: usize,
    /// Canonical strings of the eliminated (state-free) polynomials at the last depth.
    pub eliminated: Vec<String>,
    pub leaders_found: usize,
    pub leaders_expected: usize,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division error: {0}")]
    Division(String),
    #[error("arity error: {0}")]
    Arity(String),
    #[error("operation undefined on a constant polynomial")]
    ConstantPolynomial,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("set is not autoreduced")]
    NotAutoreduced,
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error(
        "no verified characteristic presentation up to depth {} ({} of {} leaders found)",
        .0.max_depth, .0.leaders_found, .0.leaders_expected
    )]
    DepthExhausted(Box<DepthExhausted>),
    #[error("model denominator vanishes at the sample point")]
    SingularPoint,
    #[error("series truncated at order {have}, need at least {need}")]
    Truncation { have: usize, need: usize },
    #[error("could not draw a regular sample point after {0} attempts")]
    Sampling(usize),
    #[error("unsupported function: {0}")]
    UnsupportedFunction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
