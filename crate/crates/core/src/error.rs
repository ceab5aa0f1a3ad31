use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("degree parameter d = {0} is below 2; double total domination needs minimum degree 2")]
    UnsupportedMinDegree(usize),

    #[error("vertex position {vertex} out of range for order {order}")]
    Index { vertex: usize, order: usize },

    #[error("infeasible: minimum degree {min_degree} is below k = {k}")]
    Infeasible { min_degree: usize, k: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
