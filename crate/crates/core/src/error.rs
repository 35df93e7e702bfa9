use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The dart/edge/vertex records do not describe a ribbon graph.
    #[error("malformed ribbon graph: {0}")]
    Structure(String),

    #[error("unknown edge id {0}")]
    UnknownEdge(u32),

    #[error("malformed arrow presentation: {0}")]
    Presentation(String),

    /// Line-oriented file formats (`.rg`, `.ap`); lines are 1-based.
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    /// Polynomial text; `pos` is a byte offset into the input.
    #[error("polynomial syntax error at offset {pos}: {message}")]
    PolySyntax { pos: usize, message: String },

    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },

    #[error("invalid substitution: {0}")]
    Substitution(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// Input outside the domain where an invariant is defined.
    #[error("{0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    Input(String),
}
