use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid letter '{ch}' at column {column}")]
    BadLetter { ch: char, column: usize },

    #[error("word '{word}' is not freely reduced")]
    UnreducedWord { word: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("alphabet mismatch: word uses edges outside the rank-{rank} rose")]
    AlphabetMismatch { rank: usize },

    #[error("rose mismatch: expected rank {expected}, got {got}")]
    RoseMismatch { expected: usize, got: usize },

    #[error("edge image for '{edge}' must be nonempty and reduced")]
    BadImage { edge: char },

    #[error("map is not a self-map of a single rose")]
    NotSelfMap,

    #[error("map is not a train track map")]
    NotTrainTrack,

    #[error("invalid ltt structure: {0}")]
    BadStructure(String),

    #[error("invalid generating triple: {0}")]
    BadTriple(String),

    #[error("construction path not realizable at step {step}: {message}")]
    PathNotRealizable { step: usize, message: String },

    #[error("switch sequence violates (SS{rule}) at indices {i} and {j}")]
    SwitchSequence { rule: u8, i: usize, j: usize },

    #[error("triples do not chain: destination of step {step} differs from the next source")]
    BrokenChain { step: usize },

    #[error("triples do not close up cyclically")]
    NotCyclic,

    #[error("decomposition does not alternate switches and purified construction compositions: {0}")]
    MalformedAlternation(String),

    #[error("no proper full fold decomposition found")]
    NoFoldDecomposition,

    #[error("search bounds must be positive")]
    BadBounds,

    #[error("unknown catalog graph or corpus label '{0}'")]
    UnknownLabel(String),
}
