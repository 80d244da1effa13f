use thiserror::Error;

use crate::grid::NotGrid;
use crate::lattice::{Cell, Interval, Point};

#[derive(Debug, Error)]
pub enum Error {
    #[error("interval endpoints {lo} and {hi} are not ordered")]
    InvalidInterval { lo: Point, hi: Point },
    #[error("interval {0} is not proper")]
    NotProper(Interval),
    #[error("a polyomino needs at least one cell")]
    Empty,
    #[error("cells are not edge-connected ({} components)", .0.len())]
    Disconnected(Vec<Vec<Cell>>),
    #[error("coordinates must be positive, got {0}")]
    NonPositiveCoordinate(Point),
    #[error("invalid grid spec: {0}")]
    InvalidGridSpec(String),
    #[error("not a grid polyomino: {0}")]
    NotGrid(NotGrid),
    #[error("point {0} is not a vertex of the polyomino")]
    PointOutsidePolyomino(Point),
    #[error("{0:?} is not a cell of the polyomino")]
    CellNotInPolyomino(Cell),
    #[error("faces of different sizes ({left} vs {right}) cannot be compared")]
    LengthMismatch { left: usize, right: usize },
    #[error("the given point set is not a facet")]
    NotAFacet,
    #[error("facet of size {found} found, expected {expected}")]
    PurityViolation { expected: usize, found: usize },
    #[error("generalized step at corner {corner} violates the shape classification: {detail}")]
    ShapeViolation { corner: Point, detail: String },
    #[error("restriction of facet #{index} does not match its generalized steps: {detail}")]
    IntersectionMismatch { index: usize, detail: String },
    #[error("rooks at {0:?} and {1:?} attack each other")]
    AttackingResult(Cell, Cell),
    #[error("rook placement for the step at {corner} targets {cell:?}, which is not a cell of the polyomino")]
    MissingCell { corner: Point, cell: Cell },
    #[error("step at {corner} is not at a change of direction, but its shape requires one")]
    TurnViolation { corner: Point },
    #[error("regularity {regularity} differs from rook number {rook_number}")]
    RegularityMismatch { regularity: usize, rook_number: usize },
    #[error("palindromic h-vector is {algebraic} but structural Gorenstein criterion is {structural}")]
    GorensteinMismatch { algebraic: bool, structural: bool },
    #[error("size guard exceeded: {0}")]
    SizeGuardExceeded(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
