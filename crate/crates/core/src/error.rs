use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: unsupported MSH version {version} (expected 2.2)")]
    UnsupportedVersion { line: usize, version: String },
    #[error("line {line}: duplicate node id {id}")]
    DuplicateNode { line: usize, id: i64 },
    #[error("line {line}: element references unknown node {id}")]
    UnknownNode { line: usize, id: i64 },
    #[error("mesh contains no triangles")]
    NoTriangles,
    #[error("triangle {cell} references vertex {vertex} but only {n_vertices} vertices exist")]
    BadVertexIndex {
        cell: usize,
        vertex: usize,
        n_vertices: usize,
    },
    #[error("triangle {cell} is degenerate (zero area)")]
    DegenerateCell { cell: usize },
    #[error("non-manifold edge ({a}, {b}) is shared by more than two triangles")]
    NonManifoldEdge { a: usize, b: usize },
    #[error("degenerate diamond on edge {edge}: co-volume area {area:e}")]
    DegenerateDiamond { edge: usize, area: f64 },
    #[error("invalid rectangle: {0}")]
    InvalidRectangle(String),
    #[error("edge {0} is a boundary edge and has no diamond")]
    BoundaryEdge(usize),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("non-positive depth h = {h:e} at {location}")]
    Positivity { h: f64, location: Location },
    #[error("non-finite wave speed {speed} on edge {edge}")]
    NonFiniteSpeed { edge: usize, speed: f64 },
    #[error("all wave speeds vanish; time step is unbounded")]
    ZeroWaveSpeed,
    #[error("non-finite state in cell {cell} at t = {time}")]
    NotANumber { cell: usize, time: f64 },
    #[error("field has {got} cells but mesh has {expected}")]
    FieldSize { expected: usize, got: usize },
    #[error("dam-break problem has no wet-bed solution: h_l = {h_l}, h_r = {h_r}")]
    InvalidDamBreak { h_l: f64, h_r: f64 },
    #[error("relative error undefined: exact solution has zero norm")]
    ZeroDenominator,
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// Where a positivity failure happened.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Location {
    State,
    Cell(usize),
    Edge(usize),
    CellAtTime { cell: usize, time: f64 },
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Location::State => write!(f, "state"),
            Location::Cell(c) => write!(f, "cell {c}"),
            Location::Edge(e) => write!(f, "edge {e}"),
            Location::CellAtTime { cell, time } => write!(f, "cell {cell}, t = {time}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("unknown option `{0}`")]
    UnknownOverride(String),
    #[error("line {line}: cannot parse `{value}` for `{key}`: {msg}")]
    BadValue {
        line: usize,
        key: String,
        value: String,
        msg: String,
    },
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("frame has {got} cells but mesh has {expected}")]
    FrameSize { expected: usize, got: usize },
}

/// Top-level error for a complete simulation run.
#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("step {step} (t = {time}): {source}")]
    Step {
        step: usize,
        time: f64,
        #[source]
        source: SolverError,
    },
    #[error(transparent)]
    Output(#[from] OutputError),
}
