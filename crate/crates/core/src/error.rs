use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("quiver has no vertices")]
    EmptyQuiver,
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows do not compose: {0}")]
    NotComposable(String),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("presentation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("algebra too large: {0}")]
    TooLarge(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("element does not belong to the module")]
    ElementNotInModule,
    #[error("submodules live in different ambient modules")]
    AmbientMismatch,
    #[error("presentation is not standard: basis paths {0} and {1} multiply to a non-monomial")]
    NonStandardPresentation(String, String),
    #[error("ray `{0}` is not a long morphism")]
    NotLong(String),
    #[error("arrow `{0}` is not a loop")]
    NotALoop(String),
    #[error("ill-formed functor: {0}")]
    IllFormedFunctor(String),
    #[error("diagram is not acyclic")]
    CyclicDiagram,
    #[error("chain is not decreasing at position {0}")]
    NotAChain(usize),
    #[error("chain is not alpha-stable at position {index}: {element}")]
    NotAlphaStable { index: usize, element: String },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(usize),
    #[error("no contour through a loop power is available")]
    NoContour,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}
