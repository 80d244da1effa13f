//! The lexicographic shelling of the facet list, generalized steps and
//! restriction numbers.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::complex::{check_purity, lex_cmp, AntiDiagonalGraph, Face, VertexSet};
use crate::error::{Error, Result};
use crate::grid::{recognize_grid, GridStructure};
use crate::lattice::{compare_vertices, Cell, Interval, Point};
use crate::polyomino::Polyomino;

/// Compare two faces of equal size in the facet order `<_lex`.
pub fn facet_lex_compare(f: &Face, g: &Face) -> Result<Ordering> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch { left: f.len(), right: g.len() });
    }
    Ok(f.points()
        .iter()
        .zip(g.points())
        .map(|(a, b)| compare_vertices(*a, *b))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal))
}

/// The three-point pattern `{left, corner, top}` = `{(a,j), (i,j), (i,b)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneralizedStep {
    pub left: Point,
    pub corner: Point,
    pub top: Point,
}

impl GeneralizedStep {
    /// `[(a,j), (i,b)]`, an inner interval of the polyomino.
    pub fn spanned_interval(&self) -> Interval {
        Interval::new(self.left, self.top).expect("left lies below and left of top")
    }

    /// `(i - a, b - j)`.
    pub fn offset(&self) -> (i32, i32) {
        (self.corner.x - self.left.x, self.top.y - self.corner.y)
    }

    /// The cell whose lower-right corner is the step corner.
    pub fn corner_cell(&self) -> Cell {
        Cell::with_lower_right(self.corner)
    }
}

/// The five step shapes possible in a grid polyomino, named by `(i-a, b-j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeClass {
    /// `(1, 1)`: the spanned interval is one cell.
    Unit,
    /// `(2, 1)`.
    Left2,
    /// `(3, 1)`.
    Left3,
    /// `(1, 2)`.
    Up2,
    /// `(1, 3)`.
    Up3,
}

impl ShapeClass {
    pub fn from_offset(offset: (i32, i32)) -> Option<Self> {
        match offset {
            (1, 1) => Some(ShapeClass::Unit),
            (2, 1) => Some(ShapeClass::Left2),
            (3, 1) => Some(ShapeClass::Left3),
            (1, 2) => Some(ShapeClass::Up2),
            (1, 3) => Some(ShapeClass::Up3),
            _ => None,
        }
    }

    pub const ALL: [ShapeClass; 5] =
        [ShapeClass::Unit, ShapeClass::Left2, ShapeClass::Left3, ShapeClass::Up2, ShapeClass::Up3];
}

/// Dense lookup tables over the bounding box, for scanning rows and
/// columns of a facet.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    lo: Point,
    hi: Point,
    cols: usize,
    vertex: Vec<u8>,
}

const NO_VERTEX: u8 = u8::MAX;

impl Layout {
    fn new(p: &Polyomino, g: &AntiDiagonalGraph) -> Self {
        let bb = p.bounding_box();
        let (lo, hi) = (bb.lo(), bb.hi());
        let cols = (hi.x - lo.x + 1) as usize;
        let rows = (hi.y - lo.y + 1) as usize;
        let mut vertex = vec![NO_VERTEX; cols * rows];
        for i in 0..g.vertex_count() {
            let q = g.point(i);
            vertex[(q.y - lo.y) as usize * cols + (q.x - lo.x) as usize] = i as u8;
        }
        Layout { lo, hi, cols, vertex }
    }

    fn index(&self, x: i32, y: i32) -> Option<usize> {
        if x < self.lo.x || x > self.hi.x || y < self.lo.y || y > self.hi.y {
            return None;
        }
        let v = self.vertex[(y - self.lo.y) as usize * self.cols + (x - self.lo.x) as usize];
        (v != NO_VERTEX).then_some(v as usize)
    }
}

/// Facets of a polyomino's complex in descending `<_lex` order, with the
/// lookup structures used for step detection.
#[derive(Debug, Clone)]
pub struct FacetList<'a> {
    poly: &'a Polyomino,
    graph: AntiDiagonalGraph,
    layout: Layout,
    facets: Vec<VertexSet>,
}

impl<'a> FacetList<'a> {
    pub fn new(poly: &'a Polyomino, cap: usize) -> Result<Self> {
        let graph = AntiDiagonalGraph::new(poly)?;
        let facets = graph.maximal_independent_sets(cap)?;
        Ok(Self::from_parts(poly, graph, facets))
    }

    /// Use a given facet list (assumed sorted descending) instead of
    /// enumerating one.
    pub fn from_parts(poly: &'a Polyomino, graph: AntiDiagonalGraph, facets: Vec<VertexSet>) -> Self {
        let layout = Layout::new(poly, &graph);
        FacetList { poly, graph, layout, facets }
    }

    pub fn polyomino(&self) -> &Polyomino {
        self.poly
    }

    pub fn graph(&self) -> &AntiDiagonalGraph {
        &self.graph
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn face(&self, j: usize) -> Face {
        self.graph.to_face(self.facets[j])
    }

    /// Generalized steps of a facet (given as a bitset), in descending order
    /// of their corners.
    pub fn steps_of(&self, f: VertexSet) -> Vec<GeneralizedStep> {
        let mut out = Vec::new();
        for v in f.iter() {
            let corner = self.graph.point(v);
            let (i, j) = (corner.x, corner.y);
            if !self.poly.contains(Cell::with_lower_right(corner)) {
                continue;
            }
            let in_f = |x: i32, y: i32| self.layout.index(x, y).is_some_and(|k| f.contains(k));
            let Some(a) = (self.layout.lo.x..i).rev().find(|&x| in_f(x, j)) else { continue };
            let Some(b) = (j + 1..=self.layout.hi.y).find(|&y| in_f(i, y)) else { continue };
            let step = GeneralizedStep { left: Point::new(a, j), corner, top: Point::new(i, b) };
            if self.poly.is_inner(&step.spanned_interval()) {
                out.push(step);
            }
        }
        out
    }

    /// Step counts `r_j` for every facet.
    pub fn step_counts(&self) -> Vec<usize> {
        self.facets.iter().map(|&f| self.steps_of(f).len()).collect()
    }

    /// Vertices `v` of `F_j` such that `F_j \ {v}` lies in an earlier facet,
    /// found by exchanging `v` for one outside vertex. Complete for the
    /// codimension-one faces of the restriction when the complex is pure.
    pub fn exchange_restriction(&self, j: usize) -> VertexSet {
        let fj = self.facets[j];
        let mut out = VertexSet::EMPTY;
        for w in self.graph.all().difference(fj).iter() {
            let nb = self.graph.neighbors(w).intersection(fj);
            if nb.len() != 1 {
                continue;
            }
            let v = nb.iter().next().unwrap();
            let g = fj.without(v).with(w);
            if lex_cmp(g, fj) == Ordering::Greater && self.graph.is_maximal_independent(g) {
                out.insert(v);
            }
        }
        out
    }

    /// Maximal elements of `{F_h ∩ F_j : h < j}`, by direct intersection.
    pub fn maximal_intersections(&self, j: usize) -> Vec<VertexSet> {
        let fj = self.facets[j];
        let distinct: HashSet<VertexSet> = self.facets[..j].iter().map(|&fh| fh.intersection(fj)).collect();
        let mut by_size: Vec<VertexSet> = distinct.into_iter().collect();
        by_size.sort_by(|a, b| b.len().cmp(&a.len()).then(lex_cmp(*b, *a)));
        let mut kept: Vec<VertexSet> = Vec::new();
        for s in by_size {
            if !kept.iter().any(|k| s.is_subset(*k)) {
                kept.push(s);
            }
        }
        kept
    }

    /// Number of facets of `<F_0..F_{j-1}> ∩ <F_j>` by brute force,
    /// checking that they are exactly `F_j` minus one step corner each.
    pub fn brute_force_restriction(&self, j: usize) -> Result<usize> {
        let fj = self.facets[j];
        let mut found: Vec<VertexSet> = self.maximal_intersections(j);
        let mut expected: Vec<VertexSet> =
            self.steps_of(fj).iter().map(|s| fj.without(self.graph.index_of(s.corner).unwrap())).collect();
        found.sort_by_key(|s| s.0);
        expected.sort_by_key(|s| s.0);
        if found != expected {
            let describe = |sets: &[VertexSet]| {
                sets.iter()
                    .map(|s| {
                        let missing: Vec<Point> = fj.difference(*s).iter().map(|i| self.graph.point(i)).collect();
                        format!("F minus {missing:?}")
                    })
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            return Err(Error::IntersectionMismatch {
                index: j,
                detail: format!(
                    "maximal intersections [{}], step corners give [{}]",
                    describe(&found),
                    describe(&expected)
                ),
            });
        }
        Ok(found.len())
    }

    /// Shape check of one step against the facet it came from.
    pub fn validate_step_shape(&self, s: &GeneralizedStep, f: VertexSet) -> Result<ShapeClass> {
        let (i, j) = (s.corner.x, s.corner.y);
        let violation = |detail: String| Error::ShapeViolation { corner: s.corner, detail };
        let class = ShapeClass::from_offset(s.offset())
            .ok_or_else(|| violation(format!("offset (i-a, b-j) = {:?} is outside the five shapes", s.offset())))?;
        let p = self.poly;
        let in_f = |x: i32, y: i32| self.layout.index(x, y).is_some_and(|k| f.contains(k));
        let need_cells = |cells: &[(i32, i32)]| -> Result<()> {
            match cells.iter().find(|&&(x, y)| !p.contains(Cell::new(x, y))) {
                Some(&(x, y)) => Err(violation(format!("{class:?} step needs cell ({x},{y})"))),
                None => Ok(()),
            }
        };
        match class {
            ShapeClass::Left3 => {
                need_cells(&[(i - 3, j + 1), (i - 3, j - 1), (i - 1, j - 1), (i - 1, j + 1)])?;
                let below = (self.layout.lo.y..j).any(|q| in_f(i, q));
                let above = (j + 2..=self.layout.hi.y).any(|q| in_f(i - 3, q));
                if !(below && above) {
                    return Err(violation(format!("{class:?} step: V1 meets F = {below}, V2 meets F = {above}")));
                }
            }
            ShapeClass::Up3 => {
                need_cells(&[(i - 2, j), (i, j), (i - 2, j + 2), (i, j + 2)])?;
                let left = (self.layout.lo.x..i - 1).any(|x| in_f(x, j + 3));
                let right = (i + 1..=self.layout.hi.x).any(|x| in_f(x, j));
                if !(left && right) {
                    return Err(violation(format!("{class:?} step: H1 meets F = {left}, H2 meets F = {right}")));
                }
            }
            _ => {}
        }
        Ok(class)
    }

    /// Histogram of restriction numbers: `h_i = |{j : r_j = i}|`.
    pub fn h_from_counts(counts: &[usize]) -> Vec<u64> {
        let top = counts.iter().copied().max().unwrap_or(0);
        let mut h = vec![0u64; top + 1];
        for &r in counts {
            h[r] += 1;
        }
        h
    }
}

/// The facet `F_I ∪ ⋃ B_ij`: the left column and top row of the ambient
/// rectangle, plus for each hole its bottom side without the left corner
/// and its right side without the top corner.
pub fn first_facet_points(g: &GridStructure) -> Vec<Point> {
    let (lo, hi) = (g.ambient.lo(), g.ambient.hi());
    let mut pts: Vec<Point> = (lo.y..=hi.y).map(|y| Point::new(lo.x, y)).collect();
    pts.extend((lo.x + 1..=hi.x).map(|x| Point::new(x, hi.y)));
    for h in g.all_holes() {
        let (a, b) = (h.lo(), h.hi());
        pts.extend((a.x + 1..=b.x).map(|x| Point::new(x, a.y)));
        pts.extend((a.y + 1..b.y).map(|y| Point::new(b.x, y)));
    }
    pts
}

/// `F_0` of a grid polyomino, checked to be a facet of size `|V| - rank`.
pub fn first_facet(p: &Polyomino) -> Result<Face> {
    let structure = recognize_grid(p).map_err(Error::NotGrid)?;
    let g = AntiDiagonalGraph::new(p)?;
    let set = g.to_set(&first_facet_points(&structure))?;
    if !g.is_maximal_independent(set) {
        return Err(Error::NotAFacet);
    }
    let expected = p.vertices().len() - p.rank();
    if set.len() != expected {
        return Err(Error::PurityViolation { expected, found: set.len() });
    }
    Ok(g.to_face(set))
}

/// Generalized steps of a facet given by its points.
pub fn generalized_steps(f: &Face, p: &Polyomino) -> Result<Vec<GeneralizedStep>> {
    let graph = AntiDiagonalGraph::new(p)?;
    let set = graph.to_set(f.points())?;
    if !graph.is_maximal_independent(set) {
        return Err(Error::NotAFacet);
    }
    let list = FacetList::from_parts(p, graph, vec![set]);
    Ok(list.steps_of(set))
}

/// Classify a step of facet `f` of a grid polyomino into one of the five
/// shapes, checking the side conditions of the two long shapes.
pub fn validate_step_shape(s: &GeneralizedStep, f: &Face, p: &Polyomino) -> Result<ShapeClass> {
    recognize_grid(p).map_err(Error::NotGrid)?;
    let graph = AntiDiagonalGraph::new(p)?;
    let set = graph.to_set(f.points())?;
    FacetList::from_parts(p, graph, vec![set]).validate_step_shape(s, set)
}

/// Restriction numbers of the descending lexicographic facet order, one per
/// facet, computed as step counts.
pub fn restriction_numbers(p: &Polyomino, cap: usize) -> Result<Vec<usize>> {
    recognize_grid(p).map_err(Error::NotGrid)?;
    Ok(FacetList::new(p, cap)?.step_counts())
}

/// Restriction number of facet `j` by direct intersection with its
/// predecessors.
pub fn brute_force_restriction(p: &Polyomino, j: usize, cap: usize) -> Result<usize> {
    let list = FacetList::new(p, cap)?;
    if j >= list.len() {
        return Err(Error::Parse(format!("facet index {j} out of range (have {})", list.len())));
    }
    list.brute_force_restriction(j)
}

/// The h-vector as the histogram of restriction numbers.
pub fn h_from_shelling(p: &Polyomino, cap: usize) -> Result<Vec<u64>> {
    Ok(FacetList::h_from_counts(&restriction_numbers(p, cap)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct ShellingReport {
    pub facets: Vec<Face>,
    pub restriction_numbers: Vec<usize>,
    pub h: Vec<u64>,
    pub verified: bool,
    pub violations: Vec<String>,
}

/// Full shelling data for a grid polyomino. `verified` holds when the list
/// is pure, starts at `F_0`, every step has a valid shape, and the
/// restrictions agree with the steps (by brute force for at most
/// `brute_force_cap` facets, by exchange otherwise).
pub fn shelling_report(p: &Polyomino, cap: usize, brute_force_cap: usize) -> Result<ShellingReport> {
    let f0 = first_facet(p)?;
    let list = FacetList::new(p, cap)?;
    let mut violations = Vec::new();
    if let Err(e) = check_purity(list.facets(), f0.len()) {
        violations.push(e.to_string());
    }
    if list.face(0) != f0 {
        violations.push("first facet of the order is not F_0".into());
    }
    let mut counts = Vec::with_capacity(list.len());
    for (j, &f) in list.facets().iter().enumerate() {
        let steps = list.steps_of(f);
        for s in &steps {
            if let Err(e) = list.validate_step_shape(s, f) {
                violations.push(format!("facet #{j}: {e}"));
            }
        }
        let corners: VertexSet =
            steps.iter().fold(VertexSet::EMPTY, |acc, s| acc.with(list.graph().index_of(s.corner).unwrap()));
        if list.len() <= brute_force_cap {
            if let Err(e) = list.brute_force_restriction(j) {
                violations.push(e.to_string());
            }
        } else if list.exchange_restriction(j) != corners {
            violations.push(format!("facet #{j}: exchange restriction differs from step corners"));
        }
        counts.push(steps.len());
    }
    Ok(ShellingReport {
        facets: (0..list.len()).map(|j| list.face(j)).collect(),
        h: FacetList::h_from_counts(&counts),
        restriction_numbers: counts,
        verified: violations.is_empty(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DEFAULT_FACET_CAP;
    use crate::grid::{generate_grid, GridSpec};
    use crate::polyomino::tests::{frame, poly};

    fn p(x: i32, y: i32) -> Point {
        Point::new(x, y)
    }

    fn grid(w: &[u32], h: &[u32]) -> Polyomino {
        generate_grid(&GridSpec::new(w.to_vec(), h.to_vec()).unwrap()).unwrap().0
    }

    fn face(pts: &[(i32, i32)]) -> Face {
        Face::new(pts.iter().map(|&(x, y)| p(x, y)).collect())
    }

    #[test]
    fn lex_compare_reference_facets() {
        let f = face(&[
            (7, 4),
            (5, 4),
            (3, 4),
            (5, 3),
            (3, 3),
            (2, 3),
            (1, 3),
            (7, 2),
            (6, 2),
            (5, 2),
            (4, 2),
            (3, 2),
            (3, 1),
            (1, 1),
        ]);
        let g = face(&[
            (7, 4),
            (5, 4),
            (5, 3),
            (4, 3),
            (3, 3),
            (2, 3),
            (7, 2),
            (4, 2),
            (3, 2),
            (7, 1),
            (6, 1),
            (3, 1),
            (2, 1),
            (1, 1),
        ]);
        // first difference at the third point: (5,3) below (3,4)
        assert_eq!(f.points()[2], p(3, 4));
        assert_eq!(g.points()[2], p(5, 3));
        assert_eq!(facet_lex_compare(&g, &f).unwrap(), Ordering::Less);
        assert_eq!(facet_lex_compare(&f, &g).unwrap(), Ordering::Greater);
        assert_eq!(facet_lex_compare(&f, &f).unwrap(), Ordering::Equal);
        assert!(matches!(facet_lex_compare(&f, &face(&[(1, 1)])), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn first_facet_of_frame() {
        let f0 = first_facet(&frame()).unwrap();
        assert_eq!(f0, face(&[(1, 1), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4), (4, 4), (3, 2)]));
        let fr = frame();
        let list = FacetList::new(&fr, DEFAULT_FACET_CAP).unwrap();
        assert_eq!(list.face(0), f0);
        for j in 1..list.len() {
            assert_eq!(facet_lex_compare(&list.face(j), &f0).unwrap(), Ordering::Less);
        }
        assert!(matches!(first_facet(&poly(&[(1, 1)])), Err(Error::NotGrid(_))));
    }

    #[test]
    fn first_facet_formula_size() {
        let q = grid(&[2], &[1]);
        let f0 = first_facet(&q).unwrap();
        assert_eq!(f0.len(), 10);
        let list = FacetList::new(&q, DEFAULT_FACET_CAP).unwrap();
        assert_eq!(list.face(0), f0);
    }

    #[test]
    fn first_facet_has_no_steps() {
        let f = frame();
        let f0 = first_facet(&f).unwrap();
        assert!(generalized_steps(&f0, &f).unwrap().is_empty());
        // the plain step {(1,2),(3,2),(3,4)} is blocked because cell (2,2) is the hole
        assert!(!f.is_inner(&Interval::new(p(1, 2), p(3, 4)).unwrap()));
        assert!(matches!(generalized_steps(&face(&[(1, 1)]), &f), Err(Error::NotAFacet)));
    }

    #[test]
    fn frame_restrictions() {
        let f = frame();
        let list = FacetList::new(&f, DEFAULT_FACET_CAP).unwrap();
        let counts = list.step_counts();
        assert_eq!(counts[0], 0);
        assert_eq!(FacetList::h_from_counts(&counts), vec![1, 8, 16, 8, 1]);
        for (j, &r) in counts.iter().enumerate() {
            assert_eq!(list.brute_force_restriction(j).unwrap(), r);
            let corners = list
                .steps_of(list.facets()[j])
                .iter()
                .fold(VertexSet::EMPTY, |acc, s| acc.with(list.graph().index_of(s.corner).unwrap()));
            assert_eq!(list.exchange_restriction(j), corners);
            for s in list.steps_of(list.facets()[j]) {
                list.validate_step_shape(&s, list.facets()[j]).unwrap();
                assert!(f.contains(s.corner_cell()));
            }
        }
        assert_eq!(h_from_shelling(&f, DEFAULT_FACET_CAP).unwrap(), vec![1, 8, 16, 8, 1]);
        assert_eq!(brute_force_restriction(&f, 0, DEFAULT_FACET_CAP).unwrap(), 0);
    }

    #[test]
    fn tall_hole_restrictions() {
        let q = grid(&[1], &[2]);
        let list = FacetList::new(&q, DEFAULT_FACET_CAP).unwrap();
        for j in 0..list.len() {
            list.brute_force_restriction(j).unwrap();
        }
    }

    #[test]
    fn shape_classes() {
        let f = frame();
        let list = FacetList::new(&f, DEFAULT_FACET_CAP).unwrap();
        let any = list.facets()[1];
        let unit = GeneralizedStep { left: p(1, 1), corner: p(2, 1), top: p(2, 2) };
        assert_eq!(list.validate_step_shape(&unit, any).unwrap(), ShapeClass::Unit);
        let wide = GeneralizedStep { left: p(0, 5), corner: p(4, 5), top: p(4, 6) };
        assert!(matches!(list.validate_step_shape(&wide, any), Err(Error::ShapeViolation { .. })));
        assert_eq!(ShapeClass::from_offset((2, 2)), None);
    }

    #[test]
    fn non_grid_input_rejected() {
        assert!(matches!(h_from_shelling(&poly(&[(1, 1)]), DEFAULT_FACET_CAP), Err(Error::NotGrid(_))));
    }

    #[test]
    fn report_for_frame() {
        let r = shelling_report(&frame(), DEFAULT_FACET_CAP, 1000).unwrap();
        assert!(r.verified, "{:?}", r.violations);
        assert_eq!(r.facets.len(), 34);
        assert_eq!(r.h, vec![1, 8, 16, 8, 1]);
        let exchange_only = shelling_report(&frame(), DEFAULT_FACET_CAP, 0).unwrap();
        assert!(exchange_only.verified);
    }
}
