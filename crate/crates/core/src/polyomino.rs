//! The polyomino data model: validated cell sets, holes, thinness, maximal
//! blocks and inner intervals.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Cell, Corners, Interval, Point};

/// A non-empty, finite, edge-connected set of cells.
#[derive(Debug, Clone)]
pub struct Polyomino {
    cells: BTreeSet<Cell>,
    vertices: BTreeSet<Point>,
    bbox: Interval,
    horizontal: OnceLock<Vec<Block>>,
    vertical: OnceLock<Vec<Block>>,
    inner: OnceLock<Vec<InnerInterval>>,
}

impl PartialEq for Polyomino {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells
    }
}

impl Eq for Polyomino {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// A maximal run of consecutive collinear cells, from `first` to `last`.
/// Singletons are included so that blocks partition the cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub orientation: Orientation,
    pub first: Cell,
    pub last: Cell,
}

impl Block {
    pub fn rank(&self) -> usize {
        match self.orientation {
            Orientation::Horizontal => (self.last.x() - self.first.x() + 1) as usize,
            Orientation::Vertical => (self.last.y() - self.first.y() + 1) as usize,
        }
    }

    pub fn contains(&self, c: Cell) -> bool {
        match self.orientation {
            Orientation::Horizontal => c.y() == self.first.y() && self.first.x() <= c.x() && c.x() <= self.last.x(),
            Orientation::Vertical => c.x() == self.first.x() && self.first.y() <= c.y() && c.y() <= self.last.y(),
        }
    }

    pub fn cells(&self) -> Vec<Cell> {
        match self.orientation {
            Orientation::Horizontal => (self.first.x()..=self.last.x()).map(|x| Cell::new(x, self.first.y())).collect(),
            Orientation::Vertical => (self.first.y()..=self.last.y()).map(|y| Cell::new(self.first.x(), y)).collect(),
        }
    }
}

/// A proper interval whose cells all lie in the polyomino.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InnerInterval {
    interval: Interval,
}

impl InnerInterval {
    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn corners(&self) -> Corners {
        // proper by construction
        self.interval.corners().expect("inner intervals are proper")
    }
}

impl Polyomino {
    /// Validate a set of cells as a polyomino.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::Empty);
        }
        let components = components(&cells);
        if components.len() > 1 {
            return Err(Error::Disconnected(components));
        }
        let vertices: BTreeSet<Point> = cells.iter().flat_map(|c| c.vertices()).collect();
        let (mut lo, mut hi) = (Point::new(i32::MAX, i32::MAX), Point::new(i32::MIN, i32::MIN));
        for v in &vertices {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        Ok(Polyomino {
            cells,
            vertices,
            bbox: Interval::new(lo, hi)?,
            horizontal: OnceLock::new(),
            vertical: OnceLock::new(),
            inner: OnceLock::new(),
        })
    }

    /// Cells in row-major order from the bottom.
    pub fn cells(&self) -> impl ExactSizeIterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn cell_set(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    pub fn rank(&self) -> usize {
        self.cells.len()
    }

    /// `V(P)`, ascending in the vertex order.
    pub fn vertices(&self) -> &BTreeSet<Point> {
        &self.vertices
    }

    pub fn has_vertex(&self, p: Point) -> bool {
        self.vertices.contains(&p)
    }

    /// The edges `E(P)` as unordered point pairs (smaller point first).
    pub fn edges(&self) -> BTreeSet<(Point, Point)> {
        let mut edges = BTreeSet::new();
        for c in &self.cells {
            let [a, b, cc, d] = c.vertices();
            for (u, v) in [(a, cc), (cc, b), (d, b), (a, d)] {
                edges.insert((u.min(v), u.max(v)));
            }
        }
        edges
    }

    /// Bounding box as a vertex interval.
    pub fn bounding_box(&self) -> Interval {
        self.bbox
    }

    /// Holes: the bounded connected components of the complement, each
    /// returned as a polyomino. Empty iff the polyomino is simple.
    pub fn holes(&self) -> Vec<Polyomino> {
        let (lo, hi) = (self.bbox.lo(), self.bbox.hi());
        // cells of the bounding box grown by one cell on each side
        let inside = |c: Cell| lo.x - 1 <= c.x() && c.x() <= hi.x && lo.y - 1 <= c.y() && c.y() <= hi.y;
        let mut outside: HashSet<Cell> = HashSet::new();
        let start = Cell::new(lo.x - 1, lo.y - 1);
        let mut queue = VecDeque::from([start]);
        outside.insert(start);
        while let Some(c) = queue.pop_front() {
            for n in c.neighbors() {
                if inside(n) && !self.cells.contains(&n) && outside.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        let bounded: BTreeSet<Cell> = (lo.y..hi.y)
            .flat_map(|y| (lo.x..hi.x).map(move |x| Cell::new(x, y)))
            .filter(|c| !self.cells.contains(c) && !outside.contains(c))
            .collect();
        components(&bounded)
            .into_iter()
            .map(|comp| Polyomino::from_cells(comp).expect("components are connected"))
            .collect()
    }

    pub fn is_simple(&self) -> bool {
        self.holes().is_empty()
    }

    /// True iff no 2x2 square of cells lies in the polyomino.
    pub fn is_thin(&self) -> bool {
        !self
            .cells
            .iter()
            .any(|c| self.contains(c.shifted(1, 0)) && self.contains(c.shifted(0, 1)) && self.contains(c.shifted(1, 1)))
    }

    /// Maximal blocks of one orientation, singletons included, ordered by
    /// their first cell.
    pub fn maximal_blocks(&self, orientation: Orientation) -> &[Block] {
        let slot = match orientation {
            Orientation::Horizontal => &self.horizontal,
            Orientation::Vertical => &self.vertical,
        };
        slot.get_or_init(|| {
            let (dx, dy) = match orientation {
                Orientation::Horizontal => (1, 0),
                Orientation::Vertical => (0, 1),
            };
            let mut blocks = Vec::new();
            for &c in &self.cells {
                if self.contains(c.shifted(-dx, -dy)) {
                    continue;
                }
                let mut last = c;
                while self.contains(last.shifted(dx, dy)) {
                    last = last.shifted(dx, dy);
                }
                blocks.push(Block { orientation, first: c, last });
            }
            blocks
        })
    }

    /// Maximal blocks of both orientations with at least two cells.
    pub fn proper_blocks(&self) -> Vec<Block> {
        self.maximal_blocks(Orientation::Horizontal)
            .iter()
            .chain(self.maximal_blocks(Orientation::Vertical))
            .filter(|b| b.rank() > 1)
            .copied()
            .collect()
    }

    /// For every cell, the indices of its horizontal and vertical maximal block.
    pub fn block_index(&self) -> HashMap<Cell, (usize, usize)> {
        let mut index: HashMap<Cell, (usize, usize)> = HashMap::with_capacity(self.rank());
        for (i, b) in self.maximal_blocks(Orientation::Horizontal).iter().enumerate() {
            for c in b.cells() {
                index.insert(c, (i, usize::MAX));
            }
        }
        for (j, b) in self.maximal_blocks(Orientation::Vertical).iter().enumerate() {
            for c in b.cells() {
                index.get_mut(&c).expect("block cells lie in P").1 = j;
            }
        }
        index
    }

    /// All inner intervals, ordered by lower-left then upper-right corner
    /// (both in the vertex order).
    pub fn inner_intervals(&self) -> &[InnerInterval] {
        self.inner.get_or_init(|| {
            let run_right = |c: Cell| {
                let mut n = 0i32;
                while self.contains(c.shifted(n, 0)) {
                    n += 1;
                }
                n
            };
            let mut out = Vec::new();
            for &c in &self.cells {
                let mut max_w = run_right(c);
                let mut h = 1;
                while max_w > 0 {
                    for w in 1..=max_w {
                        let hi = c.lower_left().offset(w, h);
                        out.push(InnerInterval { interval: Interval::new(c.lower_left(), hi).unwrap() });
                    }
                    max_w = max_w.min(run_right(c.shifted(0, h)));
                    h += 1;
                }
            }
            out.sort();
            out
        })
    }

    /// Whether `iv` is an inner interval of this polyomino.
    pub fn is_inner(&self, iv: &Interval) -> bool {
        iv.is_proper() && (iv.lo().y..iv.hi().y).all(|y| (iv.lo().x..iv.hi().x).all(|x| self.contains(Cell::new(x, y))))
    }

    /// The same cell set reflected and/or rotated, translated back so that
    /// the bounding box starts at `(1,1)`. `k` in `0..8` indexes the
    /// dihedral group.
    pub fn transformed(&self, k: u8) -> Polyomino {
        let cells = self.cells.iter().map(|c| {
            let (x, y) = (c.x(), c.y());
            let (x, y) = if k & 4 != 0 { (-x, y) } else { (x, y) };
            match k & 3 {
                0 => (x, y),
                1 => (-y, x),
                2 => (-x, -y),
                _ => (y, -x),
            }
        });
        let cells: Vec<(i32, i32)> = cells.collect();
        let min_x = cells.iter().map(|c| c.0).min().unwrap();
        let min_y = cells.iter().map(|c| c.1).min().unwrap();
        Polyomino::from_cells(cells.into_iter().map(|(x, y)| Cell::new(x - min_x + 1, y - min_y + 1)))
            .expect("rigid motions preserve connectivity")
    }
}

/// Edge-connected components of a cell set, each sorted, listed by their
/// smallest cell.
fn components(cells: &BTreeSet<Cell>) -> Vec<Vec<Cell>> {
    let mut seen: HashSet<Cell> = HashSet::with_capacity(cells.len());
    let mut out = Vec::new();
    for &start in cells {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for n in c.neighbors() {
                if cells.contains(&n) && seen.insert(n) {
                    comp.push(n);
                    queue.push_back(n);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}
