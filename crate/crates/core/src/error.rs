use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid relation `{rel}`: {msg}")]
    InvalidRelation { rel: String, msg: String },
    #[error("rewrite system is not confluent: {0}")]
    RelationNotConfluent(String),
    #[error("rewriting did not terminate within {0} steps")]
    NonTerminating(usize),
    #[error("operation not supported for this ring: {0}")]
    UnsupportedSpec(String),
    #[error("ring spec mismatch: {0}")]
    SpecMismatch(String),
    #[error("coefficient base mismatch: {0}")]
    BaseMismatch(String),
    #[error("not a ring homomorphism: {0}")]
    NotAHom(String),
    #[error("denominator mismatch: {0}")]
    DenominatorMismatch(String),
    #[error("ring is not a declared integral domain")]
    NotADomain,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
    #[error("splitting length {split} does not match word length {word}")]
    SplitLengthMismatch { split: usize, word: usize },
    #[error("elements are not comaximal: {0}")]
    NotComaximal(String),
    #[error("matrix is not congruent to the identity modulo the ideal")]
    NotCongruentToIdentity,
    #[error("diagonal entry is not a unit: {0}")]
    DiagonalNotUnit(String),
    #[error("sum of declared degrees is zero")]
    DegreeZeroSum,
    #[error("not an N-polynomial: {0}")]
    NotNPolynomial(String),
    #[error("reduction of f does not factor as given: {0}")]
    FactorizationMismatch(String),
    #[error("leading coefficient is not a unit modulo the ideal")]
    LeadingCoeffNotUnit,
    #[error("lift failed: {0}")]
    LiftFailure(String),
    #[error("given matrices do not trivialize the patching datum")]
    NotATrivialization,
    #[error("certificate is invalid: {0}")]
    CertInvalid(String),
    #[error("budget of {budget} exceeded (needed {needed})")]
    BudgetExceeded { budget: u64, needed: u64 },
    #[error("no witness found within the search budget")]
    NoWitnessFound,
    #[error("ring is not finite: {0}")]
    NotFinite(String),
    #[error("malformed input: {0}")]
    Input(String),
    #[error("internal self-check failed: {0}")]
    SelfCheck(String),
}

impl Error {
    /// Short machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "SyntaxError",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::InvalidRelation { .. } => "InvalidRelation",
            Error::RelationNotConfluent(_) => "RelationNotConfluent",
            Error::NonTerminating(_) => "NonTerminating",
            Error::UnsupportedSpec(_) => "UnsupportedSpec",
            Error::SpecMismatch(_) => "SpecMismatch",
            Error::BaseMismatch(_) => "BaseMismatch",
            Error::NotAHom(_) => "AssignmentNotAHom",
            Error::DenominatorMismatch(_) => "DenominatorMismatch",
            Error::NotADomain => "NotADomain",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::NotInvertible(_) => "NotInvertible",
            Error::SplitLengthMismatch { .. } => "SplitLengthMismatch",
            Error::NotComaximal(_) => "NotComaximal",
            Error::NotCongruentToIdentity => "NotCongruentToIdentity",
            Error::DiagonalNotUnit(_) => "DiagonalNotUnit",
            Error::DegreeZeroSum => "DegreeZeroSum",
            Error::NotNPolynomial(_) => "NotNPolynomial",
            Error::FactorizationMismatch(_) => "FactorizationMismatch",
            Error::LeadingCoeffNotUnit => "LeadingCoeffNotUnit",
            Error::LiftFailure(_) => "LiftFailure",
            Error::NotATrivialization => "NotATrivialization",
            Error::CertInvalid(_) => "CertInvalid",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NoWitnessFound => "NoWitnessFound",
            Error::NotFinite(_) => "NotFinite",
            Error::Input(_) => "InvalidInput",
            Error::SelfCheck(_) => "SelfCheckFailed",
        }
    }
}
