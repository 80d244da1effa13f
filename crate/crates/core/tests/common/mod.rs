#![allow(dead_code)]

use std::collections::BTreeSet;

use gridpoly::{generate_grid, Cell, GridSpec, Point, Polyomino};
use proptest::prelude::*;

pub fn grid(widths: &[u32], heights: &[u32]) -> Polyomino {
    generate_grid(&GridSpec::new(widths.to_vec(), heights.to_vec()).unwrap()).unwrap().0
}

pub fn frame() -> Polyomino {
    grid(&[1], &[1])
}

/// Connected cell sets grown one neighbour at a time from the origin.
pub fn polyomino(max_cells: usize) -> impl Strategy<Value = Polyomino> {
    prop::collection::vec((any::<prop::sample::Index>(), 0usize..4), 0..max_cells).prop_map(|steps| {
        let mut cells = vec![Cell::new(1, 1)];
        for (pick, dir) in steps {
            let next = pick.get(&cells).neighbors()[dir];
            if !cells.contains(&next) {
                cells.push(next);
            }
        }
        let min_x = cells.iter().map(|c| c.x()).min().unwrap();
        let min_y = cells.iter().map(|c| c.y()).min().unwrap();
        Polyomino::from_cells(cells.into_iter().map(|c| c.shifted(1 - min_x, 1 - min_y))).unwrap()
    })
}

/// The anti-diagonal pairs `{(x1, y2), (x2, y1)}` of all inner intervals,
/// found by testing every pair of vertices.
pub fn brute_edges(p: &Polyomino) -> Vec<(Point, Point)> {
    let vs: Vec<Point> = p.vertices().iter().copied().collect();
    let mut out = Vec::new();
    for &a in &vs {
        for &b in &vs {
            if a.x < b.x && a.y < b.y {
                let all = (a.x..b.x).all(|x| (a.y..b.y).all(|y| p.contains(Cell::new(x, y))));
                if all {
                    out.push((Point::new(a.x, b.y), Point::new(b.x, a.y)));
                }
            }
        }
    }
    out
}

pub fn independent(s: &BTreeSet<Point>, edges: &[(Point, Point)]) -> bool {
    edges.iter().all(|(c, d)| !(s.contains(c) && s.contains(d)))
}

/// Every independent set, by subset enumeration.
pub fn brute_faces(p: &Polyomino) -> Vec<BTreeSet<Point>> {
    let vs: Vec<Point> = p.vertices().iter().copied().collect();
    assert!(vs.len() <= 22, "too many vertices for subset enumeration");
    let edges = brute_edges(p);
    (0u32..1 << vs.len())
        .map(|m| (0..vs.len()).filter(|&i| m >> i & 1 == 1).map(|i| vs[i]).collect::<BTreeSet<_>>())
        .filter(|s| independent(s, &edges))
        .collect()
}

/// Maximal independent sets among `faces`.
pub fn brute_facets(faces: &[BTreeSet<Point>]) -> Vec<BTreeSet<Point>> {
    faces.iter().filter(|f| !faces.iter().any(|g| g.len() > f.len() && f.is_subset(g))).cloned().collect()
}

/// Points sorted by decreasing vertex order.
pub fn descending(s: &BTreeSet<Point>) -> Vec<Point> {
    s.iter().rev().copied().collect()
}

/// Non-attacking subsets counted from scratch: two cells attack when the
/// cells between them on their row or column all belong to the polyomino,
/// or, with `across_holes`, whenever they share a row or column.
pub fn brute_rooks_with(p: &Polyomino, across_holes: bool) -> Vec<u128> {
    let cells: Vec<Cell> = p.cells().collect();
    let sees = |a: Cell, b: Cell| {
        let open = |c: Cell| across_holes || p.contains(c);
        (a.y() == b.y() && (a.x().min(b.x())..=a.x().max(b.x())).all(|x| open(Cell::new(x, a.y()))))
            || (a.x() == b.x() && (a.y().min(b.y())..=a.y().max(b.y())).all(|y| open(Cell::new(a.x(), y))))
    };
    let mut counts = vec![0u128; cells.len() + 1];
    for m in 0u32..1 << cells.len() {
        let chosen: Vec<Cell> = (0..cells.len()).filter(|&i| m >> i & 1 == 1).map(|i| cells[i]).collect();
        let ok = chosen.iter().enumerate().all(|(i, &a)| chosen[i + 1..].iter().all(|&b| !sees(a, b)));
        if ok {
            counts[chosen.len()] += 1;
        }
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

pub fn brute_rooks(p: &Polyomino) -> Vec<u128> {
    brute_rooks_with(p, false)
}
