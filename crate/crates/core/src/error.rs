use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not divisible by x^{k}: offending term {witness}")]
    NotDivisible { k: u32, witness: String },

    #[error("singular linear system")]
    SingularSystem,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("{root} is not a simple root")]
    NotSimpleRoot { root: String },

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("duplicate roots")]
    DuplicateRoots,

    #[error("cannot build a separating function: sigma_i(0) collide at charts {0} and {1}")]
    CannotSeparate(usize, usize),

    #[error("nilpotency not reached within {cap} steps on {generator}")]
    CapExceeded { generator: String, cap: usize },

    #[error("relations are not in a cascade-solvable form: {0}")]
    NotTriangular(String),

    #[error("no ambient polynomial of degree <= {0} restricts to the given chart data")]
    GlobalizationFailed(u32),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// `chart` is a 0-based index; messages show it 1-based like the chart
    /// coordinates `u1, u2, ...`.
    #[error("check `{name}` failed{}: {residue}", chart.map(|c| format!(" on chart {}", c + 1)).unwrap_or_default())]
    CheckFailed {
        name: String,
        chart: Option<usize>,
        residue: String,
    },

    #[error("invalid input: {0}")]
    Input(String),
}
