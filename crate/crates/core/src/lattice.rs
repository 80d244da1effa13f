//! Lattice points, intervals and cells of `Z^2`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A lattice point. Serializes as `[x, y]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const fn new(x: i32, y: i32) -> Self {
        Point { x, y }
    }

    pub const fn offset(self, dx: i32, dy: i32) -> Self {
        Point::new(self.x + dx, self.y + dy)
    }

    /// Componentwise `self <= other`.
    pub fn le(self, other: Point) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

/// Points are ordered by [`compare_vertices`].
impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_vertices(*self, *other)
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<[i32; 2]> for Point {
    fn from([x, y]: [i32; 2]) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for [i32; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// The total order on vertices: rows from the bottom, and from the left
/// within a row. `u` is greater than `v` iff `u` lies in a higher row, or in
/// the same row further right.
pub fn compare_vertices(u: Point, v: Point) -> Ordering {
    u.y.cmp(&v.y).then(u.x.cmp(&v.x))
}

/// Sort points descending under [`compare_vertices`] (top row first,
/// right to left). This is the canonical serialization order for faces.
pub fn sort_descending(points: &mut [Point]) {
    points.sort_by(|a, b| compare_vertices(*b, *a));
}

/// A lattice interval `[lo, hi]` with `lo <= hi` componentwise.
/// Serializes as `[[x1, y1], [x2, y2]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[Point; 2]", into = "[Point; 2]")]
pub struct Interval {
    lo: Point,
    hi: Point,
}

/// The four corners of a proper interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Corners {
    /// Lower-left diagonal corner.
    pub a: Point,
    /// Upper-right diagonal corner.
    pub b: Point,
    /// Upper-left anti-diagonal corner.
    pub c: Point,
    /// Lower-right anti-diagonal corner.
    pub d: Point,
}

impl Interval {
    pub fn new(lo: Point, hi: Point) -> Result<Self, Error> {
        if !lo.le(hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// Build a proper interval, rejecting degenerate ones.
    pub fn proper(lo: Point, hi: Point) -> Result<Self, Error> {
        let iv = Interval::new(lo, hi)?;
        if !iv.is_proper() {
            return Err(Error::NotProper(iv));
        }
        Ok(iv)
    }

    pub fn lo(&self) -> Point {
        self.lo
    }

    pub fn hi(&self) -> Point {
        self.hi
    }

    pub fn width(&self) -> i32 {
        self.hi.x - self.lo.x
    }

    pub fn height(&self) -> i32 {
        self.hi.y - self.lo.y
    }

    pub fn is_proper(&self) -> bool {
        self.lo.x < self.hi.x && self.lo.y < self.hi.y
    }

    pub fn contains(&self, p: Point) -> bool {
        self.lo.le(p) && p.le(self.hi)
    }

    /// Lattice points of the interval, in row-major order from the bottom.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (self.lo.y..=self.hi.y).flat_map(move |y| (self.lo.x..=self.hi.x).map(move |x| Point::new(x, y)))
    }

    pub fn corners(&self) -> Result<Corners, Error> {
        interval_corners(self)
    }

    pub fn cells(&self) -> Result<Vec<Cell>, Error> {
        cells_of_interval(self)
    }
}

impl TryFrom<[Point; 2]> for Interval {
    type Error = Error;

    fn try_from([lo, hi]: [Point; 2]) -> Result<Self, Error> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for [Point; 2] {
    fn from(iv: Interval) -> Self {
        [iv.lo, iv.hi]
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

pub fn interval_corners(iv: &Interval) -> Result<Corners, Error> {
    if !iv.is_proper() {
        return Err(Error::NotProper(*iv));
    }
    Ok(Corners { a: iv.lo, b: iv.hi, c: Point::new(iv.lo.x, iv.hi.y), d: Point::new(iv.hi.x, iv.lo.y) })
}

/// The cells of a proper interval, row-major from the bottom.
pub fn cells_of_interval(iv: &Interval) -> Result<Vec<Cell>, Error> {
    if !iv.is_proper() {
        return Err(Error::NotProper(*iv));
    }
    let mut cells = Vec::with_capacity((iv.width() * iv.height()) as usize);
    for y in iv.lo.y..iv.hi.y {
        for x in iv.lo.x..iv.hi.x {
            cells.push(Cell::new(x, y));
        }
    }
    Ok(cells)
}

/// A unit cell, identified by its lower-left corner. Ordered row-major from
/// the bottom. Serializes as the `[x, y]` of that corner.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Point", into = "Point")]
pub struct Cell {
    lower_left: Point,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { lower_left: Point::new(x, y) }
    }

    pub const fn at(lower_left: Point) -> Self {
        Cell { lower_left }
    }

    /// The cell whose lower-right corner is `p`.
    pub const fn with_lower_right(p: Point) -> Self {
        Cell::new(p.x - 1, p.y)
    }

    pub fn x(&self) -> i32 {
        self.lower_left.x
    }

    pub fn y(&self) -> i32 {
        self.lower_left.y
    }

    pub fn lower_left(&self) -> Point {
        self.lower_left
    }

    pub fn lower_right(&self) -> Point {
        self.lower_left.offset(1, 0)
    }

    pub fn upper_left(&self) -> Point {
        self.lower_left.offset(0, 1)
    }

    pub fn upper_right(&self) -> Point {
        self.lower_left.offset(1, 1)
    }

    pub fn shifted(&self, dx: i32, dy: i32) -> Cell {
        Cell::at(self.lower_left.offset(dx, dy))
    }

    /// `V(C)`, in the order a, b, c, d.
    pub fn vertices(&self) -> [Point; 4] {
        [self.lower_left(), self.upper_right(), self.upper_left(), self.lower_right()]
    }

    pub fn interval(&self) -> Interval {
        Interval { lo: self.lower_left(), hi: self.upper_right() }
    }

    /// The four edge-adjacent cells: west, east, south, north.
    pub fn neighbors(&self) -> [Cell; 4] {
        [self.shifted(-1, 0), self.shifted(1, 0), self.shifted(0, -1), self.shifted(0, 1)]
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_vertices(self.lower_left, other.lower_left)
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Point> for Cell {
    fn from(p: Point) -> Self {
        Cell::at(p)
    }
}

impl From<Cell> for Point {
    fn from(c: Cell) -> Self {
        c.lower_left
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cell{}", self.lower_left)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i32, y: i32) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn vertex_order_examples() {
        assert_eq!(compare_vertices(p(5, 3), p(3, 4)), Ordering::Less);
        assert_eq!(compare_vertices(p(2, 2), p(2, 2)), Ordering::Equal);
        assert_eq!(compare_vertices(p(4, 2), p(1, 2)), Ordering::Greater);
    }

    #[test]
    fn corners_of_unit_and_rectangle() {
        let c = interval_corners(&Interval::new(p(1, 1), p(2, 2)).unwrap()).unwrap();
        assert_eq!((c.a, c.b, c.c, c.d), (p(1, 1), p(2, 2), p(1, 2), p(2, 1)));

        let c = interval_corners(&Interval::new(p(1, 2), p(3, 4)).unwrap()).unwrap();
        assert_eq!((c.c, c.d), (p(1, 4), p(3, 2)));
    }

    #[test]
    fn degenerate_interval_is_not_proper() {
        let iv = Interval::new(p(2, 2), p(2, 5)).unwrap();
        assert!(matches!(interval_corners(&iv), Err(Error::NotProper(_))));
        assert!(matches!(cells_of_interval(&iv), Err(Error::NotProper(_))));
        assert!(Interval::proper(p(2, 2), p(2, 5)).is_err());
        assert!(Interval::new(p(3, 1), p(2, 5)).is_err());
    }

    #[test]
    fn cells_of_small_intervals() {
        let cells = |a, b| cells_of_interval(&Interval::new(a, b).unwrap()).unwrap();
        assert_eq!(cells(p(1, 1), p(2, 2)), vec![Cell::new(1, 1)]);
        assert_eq!(cells(p(1, 1), p(3, 2)), vec![Cell::new(1, 1), Cell::new(2, 1)]);
        assert_eq!(cells(p(2, 2), p(4, 4)).len(), 4);
    }

    #[test]
    fn serde_shapes() {
        assert_eq!(serde_json::to_string(&p(3, 4)).unwrap(), "[3,4]");
        let iv = Interval::new(p(1, 2), p(3, 4)).unwrap();
        assert_eq!(serde_json::to_string(&iv).unwrap(), "[[1,2],[3,4]]");
        let back: Interval = serde_json::from_str("[[1,2],[3,4]]").unwrap();
        assert_eq!(back, iv);
        assert!(serde_json::from_str::<Interval>("[[3,2],[1,4]]").is_err());
    }

    #[test]
    fn vertex_order_is_total_on_a_box() {
        let pts: Vec<Point> = Interval::new(p(1, 1), p(4, 4)).unwrap().points().collect();
        for &u in &pts {
            for &v in &pts {
                let uv = compare_vertices(u, v);
                assert_eq!(uv, compare_vertices(v, u).reverse());
                assert_eq!(uv == Ordering::Equal, u == v);
                for &w in &pts {
                    if uv == Ordering::Less && compare_vertices(v, w) == Ordering::Less {
                        assert_eq!(compare_vertices(u, w), Ordering::Less);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn proper_interval_invariants(x in 1i32..20, y in 1i32..20, w in 1i32..6, h in 1i32..6) {
            let iv = Interval::new(p(x, y), p(x + w, y + h)).unwrap();
            let c = iv.corners().unwrap();
            let set: std::collections::HashSet<Point> = [c.a, c.b, c.c, c.d].into_iter().collect();
            prop_assert_eq!(set.len(), 4);
            prop_assert_eq!(iv.cells().unwrap().len() as i32, w * h);
            prop_assert_eq!(c.c, p(x, y + h));
            prop_assert_eq!(c.d, p(x + w, y));
        }
    }
}
