use thiserror::Error;

/// Where a nodal quantity lives in the mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeLocation {
    pub element: usize,
    pub node: usize,
    pub x: [f64; 3],
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-positive {quantity} = {value:e}{}", fmt_loc(.location))]
    Positivity {
        quantity: &'static str,
        value: f64,
        location: Option<NodeLocation>,
    },

    #[error("non-positive Jacobian {value:e} in element {element} at node {node}")]
    Jacobian {
        element: usize,
        node: usize,
        value: f64,
    },

    #[error("degenerate surface element in element {element}, face {face}")]
    DegenerateFace { element: usize, face: usize },

    #[error("config line {line}: {msg}")]
    ConfigLine { line: usize, msg: String },

    #[error("config: missing required key `{0}`")]
    MissingKey(&'static str),

    #[error("config: {0}")]
    Config(String),

    #[error("stage {stage} at t = {time}: {source}")]
    Stage {
        stage: usize,
        time: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt_loc(loc: &Option<NodeLocation>) -> String {
    match loc {
        Some(l) => format!(
            " in element {} node {} at ({}, {}, {})",
            l.element, l.node, l.x[0], l.x[1], l.x[2]
        ),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn positivity(quantity: &'static str, value: f64) -> Self {
        Error::Positivity {
            quantity,
            value,
            location: None,
        }
    }

    /// True for admissibility failures, which the harness reports as a crash.
    pub fn is_positivity(&self) -> bool {
        match self {
            Error::Positivity { .. } => true,
            Error::Stage { source, .. } => source.is_positivity(),
            _ => false,
        }
    }

    /// Stage time of a failure raised inside a Runge-Kutta step.
    pub fn stage_time(&self) -> Option<f64> {
        match self {
            Error::Stage { time, .. } => Some(*time),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
