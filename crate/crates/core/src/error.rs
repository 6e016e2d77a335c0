use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("symbol `{name}` used with arities {first} and {second}")]
    ArityClash {
        name: String,
        first: usize,
        second: usize,
    },
    #[error("fresh symbol `{0}` already occurs in the program")]
    FreshOccurs(String),
    #[error("symbol `{0}` uses the reserved prefix `o_`")]
    ReservedPrefix(String),
    #[error("query atom `{0}` is not ground")]
    NonGroundQuery(String),
    #[error("rule `{0}` is not ground")]
    NonGround(String),
    #[error("rule `{0}` contains negation")]
    NegationPresent(String),
    #[error("atom `{0}` is outside the Herbrand base of the program")]
    OutsideBase(String),
    #[error("enumeration needs {needed} atoms, limit is {limit}")]
    EnumerationLimit { needed: usize, limit: usize },
    #[error("grounding would produce {needed} rules, limit is {limit}")]
    GroundingLimit { needed: u128, limit: u128 },
    #[error("out of scope: {0}")]
    Scope(String),
    #[error("query mentions generated predicate `{0}`")]
    GeneratedPredicate(String),
    #[error("mode `{0}` cannot be evaluated through the translation")]
    UnsupportedMode(String),
    #[error("unfolding requires an empty set of fresh symbols")]
    UnfoldWithFresh,
    #[error("cannot activate fresh constants without open predicates")]
    ActivationWithoutOpen,
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Stable diagnostic code printed by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "E001",
            Error::ArityClash { .. } => "E002",
            Error::FreshOccurs(_) => "E003",
            Error::ReservedPrefix(_) => "E004",
            Error::NonGroundQuery(_) => "E005",
            Error::NonGround(_) => "E006",
            Error::NegationPresent(_) => "E007",
            Error::OutsideBase(_) => "E008",
            Error::EnumerationLimit { .. } => "E009",
            Error::GroundingLimit { .. } => "E010",
            Error::Scope(_) => "E011",
            Error::GeneratedPredicate(_) => "E012",
            Error::UnsupportedMode(_) => "E013",
            Error::UnfoldWithFresh => "E014",
            Error::ActivationWithoutOpen => "E015",
            Error::Io(_) => "E016",
        }
    }
}
