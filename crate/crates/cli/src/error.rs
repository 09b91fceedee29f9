use std::fmt;

use boolinv::booleanization::BooleanizationError;
use boolinv::completion::CompletionError;
use boolinv::cuntz::CuntzError;
use boolinv::lang::LangError;
use boolinv::ring_rep::RingError;
use boolinv::semigroup::SemigroupError;

/// Failure of a command, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed or invalid input: exit code 1.
    Invalid(String),
    /// Well-formed input the computation refuses (caps, missing joins,
    /// unmet preconditions): exit code 2.
    Refused(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Refused(_) => 2,
        }
    }

    pub fn invalid(msg: impl fmt::Display) -> Self {
        CliError::Invalid(msg.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Refused(m) => write!(f, "refused: {m}"),
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        match e {
            SemigroupError::Malformed(_) | SemigroupError::Invalid(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Refused(e.to_string()),
        }
    }
}

impl From<CompletionError> for CliError {
    fn from(e: CompletionError) -> Self {
        match e {
            CompletionError::Semigroup(inner) => inner.into(),
            CompletionError::NotHomomorphism | CompletionError::IncompatiblePair(..) => {
                CliError::Invalid(e.to_string())
            }
            _ => CliError::Refused(e.to_string()),
        }
    }
}

impl From<BooleanizationError> for CliError {
    fn from(e: BooleanizationError) -> Self {
        match e {
            BooleanizationError::Semigroup(inner) => inner.into(),
            BooleanizationError::Completion(inner) => inner.into(),
            BooleanizationError::NotHomomorphism | BooleanizationError::NotABisection(_) => {
                CliError::Invalid(e.to_string())
            }
            _ => CliError::Refused(e.to_string()),
        }
    }
}

impl From<LangError> for CliError {
    fn from(e: LangError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<CuntzError> for CliError {
    fn from(e: CuntzError) -> Self {
        match e {
            CuntzError::NotCompatible | CuntzError::NotBelow | CuntzError::NotSublanguage => {
                CliError::Refused(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Booleanization(inner) => inner.into(),
            _ => CliError::Refused(e.to_string()),
        }
    }
}
