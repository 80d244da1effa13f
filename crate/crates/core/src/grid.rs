//! Grid polyominoes: a rectangle minus an aligned lattice of rectangular
//! holes separated by unit corridors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Cell, Interval, Point};
use crate::polyomino::Polyomino;

/// Hole-column widths and hole-row heights, in cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridSpec {
    pub widths: Vec<u32>,
    pub heights: Vec<u32>,
}

impl GridSpec {
    pub fn new(widths: Vec<u32>, heights: Vec<u32>) -> Result<Self> {
        let spec = GridSpec { widths, heights };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.widths.is_empty() || self.heights.is_empty() {
            return Err(Error::InvalidGridSpec("need at least one hole column and one hole row".into()));
        }
        if self.widths.iter().chain(&self.heights).any(|&w| w == 0) {
            return Err(Error::InvalidGridSpec("widths and heights must be positive".into()));
        }
        if self.widths.len() + self.widths.iter().sum::<u32>() as usize > 10_000
            || self.heights.len() + self.heights.iter().sum::<u32>() as usize > 10_000
        {
            return Err(Error::InvalidGridSpec("grid too large".into()));
        }
        Ok(())
    }

    /// Number of hole columns.
    pub fn r(&self) -> usize {
        self.widths.len()
    }

    /// Number of hole rows.
    pub fn s(&self) -> usize {
        self.heights.len()
    }

    /// Cell count of the generated polyomino.
    pub fn rank(&self) -> usize {
        let (m, n) = self.ambient_cells();
        let holes: u64 =
            self.widths.iter().map(|&w| w as u64).sum::<u64>() * self.heights.iter().map(|&h| h as u64).sum::<u64>();
        (m as u64 * n as u64 - holes) as usize
    }

    /// `|V(P)|` of the generated polyomino: the ambient lattice points minus
    /// the interior points of each hole.
    pub fn vertex_count(&self) -> usize {
        let (m, n) = self.ambient_cells();
        let lost: u64 = self.widths.iter().map(|&w| w as u64 - 1).sum::<u64>()
            * self.heights.iter().map(|&h| h as u64 - 1).sum::<u64>();
        ((m as u64 + 1) * (n as u64 + 1) - lost) as usize
    }

    /// Ambient cell rectangle size `(M, N)`.
    pub fn ambient_cells(&self) -> (i32, i32) {
        let m = self.r() as i32 + 1 + self.widths.iter().sum::<u32>() as i32;
        let n = self.s() as i32 + 1 + self.heights.iter().sum::<u32>() as i32;
        (m, n)
    }

    /// Every spec with `1..=max_rs` hole columns and rows and entries in
    /// `1..=max_size`, in lexicographic order.
    pub fn family(max_rs: usize, max_size: u32) -> Vec<GridSpec> {
        fn lists_of_len(len: usize, max: u32) -> Vec<Vec<u32>> {
            if len == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for prefix in lists_of_len(len - 1, max) {
                for v in 1..=max {
                    let mut l = prefix.clone();
                    l.push(v);
                    out.push(l);
                }
            }
            out
        }
        let lists: Vec<Vec<u32>> = (1..=max_rs).flat_map(|len| lists_of_len(len, max_size)).collect();
        let mut out = Vec::new();
        for w in &lists {
            for h in &lists {
                out.push(GridSpec { widths: w.clone(), heights: h.clone() });
            }
        }
        out
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{}]x[{}]", join(&self.widths), join(&self.heights))
    }
}

/// Parse a comma-separated list of positive integers, e.g. `"1,2,3"`.
pub fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| u32::from_str(t.trim()).map_err(|e| Error::Parse(format!("bad list entry {t:?}: {e}"))))
        .collect()
}

/// The hole lattice of a grid polyomino. `holes[i][j]` is the hole in hole
/// column `i` and hole row `j`, as a vertex interval `[a_ij, b_ij]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridStructure {
    pub ambient: Interval,
    pub holes: Vec<Vec<Interval>>,
}

impl GridStructure {
    pub fn r(&self) -> usize {
        self.holes.len()
    }

    pub fn s(&self) -> usize {
        self.holes.first().map_or(0, |c| c.len())
    }

    pub fn hole(&self, i: usize, j: usize) -> Interval {
        self.holes[i][j]
    }

    pub fn all_holes(&self) -> impl Iterator<Item = Interval> + '_ {
        self.holes.iter().flatten().copied()
    }

    /// Upper-left corner `c_ij` of a hole.
    pub fn c(&self, i: usize, j: usize) -> Point {
        let h = self.hole(i, j);
        Point::new(h.lo().x, h.hi().y)
    }

    /// Lower-right corner `d_ij` of a hole.
    pub fn d(&self, i: usize, j: usize) -> Point {
        let h = self.hole(i, j);
        Point::new(h.hi().x, h.lo().y)
    }

    /// The spec that generates this structure, when the ambient box starts
    /// at `(1,1)`.
    pub fn spec(&self) -> GridSpec {
        GridSpec {
            widths: self.holes.iter().map(|c| c[0].width() as u32).collect(),
            heights: self.holes[0].iter().map(|h| h.height() as u32).collect(),
        }
    }
}

/// Why a polyomino is not a grid polyomino.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotGrid {
    NoHoles,
    /// Some non-cell of the bounding box is reachable from outside.
    NotRectangleMinusHoles,
    NonRectangularHole(Interval),
    /// A hole touches the boundary of the ambient rectangle.
    Margin(Interval),
    ColumnAlignment,
    RowAlignment,
    Adjacency,
    NotThin,
}

impl fmt::Display for NotGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotGrid::NoHoles => write!(f, "the polyomino has no holes"),
            NotGrid::NotRectangleMinusHoles => write!(f, "the polyomino is not its bounding rectangle minus holes"),
            NotGrid::NonRectangularHole(iv) => write!(f, "hole with bounding box {iv} is not a rectangle"),
            NotGrid::Margin(iv) => write!(f, "hole {iv} touches the ambient boundary (condition 1)"),
            NotGrid::ColumnAlignment => write!(f, "holes are not aligned in columns (condition 2)"),
            NotGrid::RowAlignment => write!(f, "holes are not aligned in rows (condition 3)"),
            NotGrid::Adjacency => write!(f, "hole columns or rows are not separated by unit corridors (condition 4)"),
            NotGrid::NotThin => write!(f, "the polyomino contains a square tetromino"),
        }
    }
}

/// Build the grid polyomino of a spec together with its hole lattice.
pub fn generate_grid(spec: &GridSpec) -> Result<(Polyomino, GridStructure)> {
    spec.validate()?;
    let (m, n) = spec.ambient_cells();
    let starts = |sizes: &[u32]| {
        let mut at = 2i32;
        sizes
            .iter()
            .map(|&w| {
                let s = at;
                at += w as i32 + 1;
                (s, w as i32)
            })
            .collect::<Vec<_>>()
    };
    let xs = starts(&spec.widths);
    let ys = starts(&spec.heights);
    let holes: Vec<Vec<Interval>> = xs
        .iter()
        .map(|&(x, w)| {
            ys.iter().map(|&(y, h)| Interval::new(Point::new(x, y), Point::new(x + w, y + h)).unwrap()).collect()
        })
        .collect();
    let in_hole = |c: Cell| {
        xs.iter().any(|&(x, w)| x <= c.x() && c.x() < x + w) && ys.iter().any(|&(y, h)| y <= c.y() && c.y() < y + h)
    };
    let cells = (1..=n).flat_map(|y| (1..=m).map(move |x| Cell::new(x, y))).filter(|&c| !in_hole(c));
    let poly = Polyomino::from_cells(cells)?;
    let ambient = Interval::new(Point::new(1, 1), Point::new(m + 1, n + 1))?;
    Ok((poly, GridStructure { ambient, holes }))
}

/// Recognize a grid polyomino, or report the first violated condition.
pub fn recognize_grid(p: &Polyomino) -> std::result::Result<GridStructure, NotGrid> {
    let holes = p.holes();
    if holes.is_empty() {
        return Err(NotGrid::NoHoles);
    }
    let ambient = p.bounding_box();
    let hole_cells: usize = holes.iter().map(|h| h.rank()).sum();
    let box_cells = (ambient.width() * ambient.height()) as usize;
    if box_cells != p.rank() + hole_cells {
        return Err(NotGrid::NotRectangleMinusHoles);
    }
    let mut boxes = Vec::with_capacity(holes.len());
    for h in &holes {
        let bb = h.bounding_box();
        if (bb.width() * bb.height()) as usize != h.rank() {
            return Err(NotGrid::NonRectangularHole(bb));
        }
        let (lo, hi) = (ambient.lo(), ambient.hi());
        if !(lo.x < bb.lo().x && bb.hi().x < hi.x && lo.y < bb.lo().y && bb.hi().y < hi.y) {
            return Err(NotGrid::Margin(bb));
        }
        boxes.push(bb);
    }
    // group by x-range into hole columns
    boxes.sort_by_key(|b| (b.lo().x, b.lo().y));
    let mut columns: Vec<Vec<Interval>> = Vec::new();
    for b in boxes {
        match columns.last_mut() {
            Some(col) if col[0].lo().x == b.lo().x && col[0].hi().x == b.hi().x => col.push(b),
            Some(col) if b.lo().x < col[0].hi().x => return Err(NotGrid::ColumnAlignment),
            _ => columns.push(vec![b]),
        }
    }
    for col in &columns {
        if col.len() != columns[0].len() {
            return Err(NotGrid::RowAlignment);
        }
        for (h, h0) in col.iter().zip(&columns[0]) {
            if h.lo().y != h0.lo().y || h.hi().y != h0.hi().y {
                return Err(NotGrid::RowAlignment);
            }
        }
    }
    for pair in columns.windows(2) {
        if pair[1][0].lo().x != pair[0][0].hi().x + 1 {
            return Err(NotGrid::Adjacency);
        }
    }
    for pair in columns[0].windows(2) {
        if pair[1].lo().y != pair[0].hi().y + 1 {
            return Err(NotGrid::Adjacency);
        }
    }
    if !p.is_thin() {
        return Err(NotGrid::NotThin);
    }
    Ok(GridStructure { ambient, holes: columns })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyomino::tests::{frame, poly};
    use proptest::prelude::*;

    fn spec(w: &[u32], h: &[u32]) -> GridSpec {
        GridSpec::new(w.to_vec(), h.to_vec()).unwrap()
    }

    fn iv(a: (i32, i32), b: (i32, i32)) -> Interval {
        Interval::new(Point::new(a.0, a.1), Point::new(b.0, b.1)).unwrap()
    }

    #[test]
    fn generate_frame() {
        let (p, g) = generate_grid(&spec(&[1], &[1])).unwrap();
        assert_eq!(p, frame());
        assert_eq!(g.ambient, iv((1, 1), (4, 4)));
        assert_eq!(g.holes, vec![vec![iv((2, 2), (3, 3))]]);
        assert_eq!(g.c(0, 0), Point::new(2, 3));
        assert_eq!(g.d(0, 0), Point::new(3, 2));
    }

    #[test]
    fn generate_examples() {
        let (p, _) = generate_grid(&spec(&[2], &[1])).unwrap();
        let expected: Vec<Cell> = (1..=3)
            .flat_map(|y| (1..=4).map(move |x| Cell::new(x, y)))
            .filter(|c| *c != Cell::new(2, 2) && *c != Cell::new(3, 2))
            .collect();
        assert_eq!(p.cells().collect::<Vec<_>>(), expected);
        assert_eq!(p.rank(), 10);
        assert_eq!(p.vertices().len(), 20);

        let (p, g) = generate_grid(&spec(&[1, 1], &[1])).unwrap();
        assert_eq!(g.ambient.hi(), Point::new(6, 4));
        assert_eq!(g.holes, vec![vec![iv((2, 2), (3, 3))], vec![iv((4, 2), (5, 3))]]);
        assert_eq!(p.holes().len(), 2);

        let (p, _) = generate_grid(&spec(&[1, 1], &[1, 1])).unwrap();
        let holes = p.holes();
        assert_eq!(holes.len(), 4);
        assert!(holes.iter().all(|h| h.rank() == 1));
        assert!(generate_grid(&spec(&[2], &[2])).unwrap().0.is_thin());
    }

    #[test]
    fn invalid_specs() {
        assert!(GridSpec::new(vec![], vec![1]).is_err());
        assert!(GridSpec::new(vec![1, 0], vec![1]).is_err());
        assert_eq!(parse_list("1, 2,3").unwrap(), vec![1, 2, 3]);
        assert!(parse_list("1,x").is_err());
    }

    #[test]
    fn recognize_examples() {
        let g = recognize_grid(&frame()).unwrap();
        assert_eq!((g.r(), g.s()), (1, 1));
        assert_eq!(g.hole(0, 0), iv((2, 2), (3, 3)));
        let square = poly(&[(1, 1), (2, 1), (1, 2), (2, 2)]);
        assert_eq!(recognize_grid(&square), Err(NotGrid::NoHoles));
        assert_eq!(recognize_grid(&poly(&[(1, 1)])), Err(NotGrid::NoHoles));
    }

    #[test]
    fn recognize_rejections() {
        // frame with an extra notch cell on the outside
        let mut cells: Vec<(i32, i32)> = frame().cells().map(|c| (c.x(), c.y())).collect();
        cells.retain(|&c| c != (3, 1));
        cells.push((4, 2));
        cells.push((4, 1));
        let notched = poly(&cells);
        assert_eq!(recognize_grid(&notched), Err(NotGrid::NotRectangleMinusHoles));

        // L-shaped hole
        let mut cells = Vec::new();
        for y in 1..=4 {
            for x in 1..=4 {
                if ![(2, 2), (3, 2), (2, 3)].contains(&(x, y)) {
                    cells.push((x, y));
                }
            }
        }
        assert!(matches!(recognize_grid(&poly(&cells)), Err(NotGrid::NonRectangularHole(_))));

        // two holes separated by a corridor of width 2
        let mut cells = Vec::new();
        for y in 1..=3 {
            for x in 1..=6 {
                if !(y == 2 && (x == 2 || x == 5)) {
                    cells.push((x, y));
                }
            }
        }
        assert_eq!(recognize_grid(&poly(&cells)), Err(NotGrid::Adjacency));

        // holes of unequal heights in one hole row
        let mut cells = Vec::new();
        for y in 1..=4 {
            for x in 1..=5 {
                if !((x == 2 && (y == 2 || y == 3)) || (x == 4 && y == 2)) {
                    cells.push((x, y));
                }
            }
        }
        assert_eq!(recognize_grid(&poly(&cells)), Err(NotGrid::RowAlignment));

        // wide margin: rectangle minus one central hole, margin two cells
        let mut cells = Vec::new();
        for y in 1..=5 {
            for x in 1..=5 {
                if (x, y) != (3, 3) {
                    cells.push((x, y));
                }
            }
        }
        assert_eq!(recognize_grid(&poly(&cells)), Err(NotGrid::NotThin));
    }

    #[test]
    fn family_sizes() {
        assert_eq!(GridSpec::family(1, 1), vec![spec(&[1], &[1])]);
        // lists of length 1 or 2 over {1,2,3}: 3 + 9 = 12, squared
        assert_eq!(GridSpec::family(2, 3).len(), 144);
        assert!(GridSpec::family(0, 3).is_empty());
    }

    #[test]
    fn grid_counts_and_round_trip_over_sweep() {
        for s in GridSpec::family(3, 3).into_iter().step_by(7) {
            let (p, g) = generate_grid(&s).unwrap();
            assert!(p.is_thin());
            assert_eq!(p.holes().len(), s.r() * s.s());
            assert_eq!(p.rank(), s.rank());
            assert_eq!(p.vertices().len(), s.vertex_count());
            let back = recognize_grid(&p).unwrap();
            assert_eq!(back, g);
            assert_eq!(back.spec(), s);
        }
    }

    proptest! {
        #[test]
        fn generate_recognize_round_trip(
            w in proptest::collection::vec(1u32..=3, 1..=3),
            h in proptest::collection::vec(1u32..=3, 1..=3),
        ) {
            let s = GridSpec::new(w, h).unwrap();
            let (p, g) = generate_grid(&s).unwrap();
            prop_assert!(p.is_thin());
            prop_assert_eq!(p.holes().len(), s.r() * s.s());
            prop_assert_eq!(recognize_grid(&p).unwrap(), g);
        }
    }
}
