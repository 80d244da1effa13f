//! Exact combinatorics for grid polyominoes.
//!
//! The crate builds the polyomino ideal's inner 2-minors and their initial
//! monomials, the simplicial complex of the initial ideal, the lexicographic
//! shelling through generalized steps, and rook configurations under the
//! block-attacking rule. The `verify` module cross-checks the resulting
//! identities (Krull dimension, König type, h-polynomial equal to the rook
//! polynomial, regularity, Gorenstein property) by exhaustive enumeration.

pub mod bijection;
pub mod complex;
pub mod error;
pub mod format;
pub mod grid;
pub mod ideal;
pub mod lattice;
pub mod numeric;
pub mod polyomino;
pub mod rook;
pub mod shelling;
pub mod verify;

pub use error::{Error, Result};
pub use grid::{generate_grid, recognize_grid, GridSpec, GridStructure, NotGrid};
pub use lattice::{Cell, Interval, Point};
pub use polyomino::{Block, InnerInterval, Orientation, Polyomino};
