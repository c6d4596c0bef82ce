use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("associativity violated at ({0},{1},{2})")]
    Associativity(usize, usize, usize),

    #[error("identity law violated: {0}")]
    IdentityLaw(String),

    #[error("inverse law violated at element {0}")]
    InverseLaw(usize),

    #[error("group action law violated: {0}")]
    ActionLaw(String),

    #[error("Jacobi identity violated at (e{0}, e{1}, e{2})")]
    JacobiFailure(usize, usize, usize),

    #[error("antisymmetry violated at (e{0}, e{1})")]
    AntisymmetryFailure(usize, usize),

    #[error("anchor of generator {generator} is not a derivation: {witness}")]
    AnchorNotDerivation { generator: usize, witness: String },

    #[error("Leibniz rule violated: {0}")]
    LeibnizFailure(String),

    #[error("comorphism condition (i) fails: {0}")]
    ConditionIFailure(String),

    #[error("comorphism condition (ii) fails: {0}")]
    ConditionIIFailure(String),

    #[error("monad law violated ({law}) on {object}")]
    MonadLawViolation { law: String, object: String },

    #[error("comonad law violated ({law}) on {object}")]
    ComonadLawViolation { law: String, object: String },

    #[error("cosimplicial identity violated: {0}")]
    CosimplicialIdentity(String),

    #[error("simplicial identity violated: {0}")]
    SimplicialIdentity(String),

    #[error("composite of differentials is nonzero in degree {0}")]
    CompositionNotZero(i64),

    #[error("subspace not closed under the differential in degree {0}")]
    NotClosedUnderDifferential(i64),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),

    #[error("size guard: {0}")]
    SizeGuard(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TruncationInsufficient(_) => 2,
            Error::MonadLawViolation { .. }
            | Error::ComonadLawViolation { .. }
            | Error::CosimplicialIdentity(_)
            | Error::SimplicialIdentity(_)
            | Error::CompositionNotZero(_)
            | Error::NotClosedUnderDifferential(_)
            | Error::VerificationFailed(_) => 3,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
