//! The simplicial complex of the initial ideal, realized as the independence
//! complex of the anti-diagonal graph on `V(P)`.
//!
//! Vertices are indexed in descending vertex order (index 0 is the top-right
//! vertex), and vertex sets are `u128` bitsets over those indices. With that
//! indexing the sorted point list of a face is its set bits in ascending
//! index order, which makes the facet order a plain bitset comparison.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{sort_descending, Point};
use crate::numeric::binomial;
use crate::polyomino::{InnerInterval, Polyomino};

/// Most vertices a complex may have; one bit per vertex.
pub const MAX_VERTICES: usize = 128;

/// Default cap on the number of facets enumerated for one complex.
pub const DEFAULT_FACET_CAP: usize = 1_000_000;

/// A set of vertex indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(pub u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(i: usize) -> Self {
        VertexSet(1u128 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    pub fn without(self, i: usize) -> Self {
        VertexSet(self.0 & !(1u128 << i))
    }

    pub fn with(self, i: usize) -> Self {
        VertexSet(self.0 | 1u128 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Indices in ascending order, i.e. points in descending vertex order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// Key whose numeric order is the facet order `<_lex` on equal-size sets.
    pub fn lex_key(self) -> u128 {
        self.0.reverse_bits()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The facet order on equal-size vertex sets.
pub fn lex_cmp(f: VertexSet, g: VertexSet) -> Ordering {
    f.lex_key().cmp(&g.lex_key())
}

/// A face given by its points, sorted descending in the vertex order.
/// Serializes as an array of `[x, y]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face {
    points: Vec<Point>,
}

impl Face {
    pub fn new(mut points: Vec<Point>) -> Self {
        sort_descending(&mut points);
        points.dedup();
        Face { points }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.contains(&p)
    }
}

/// The graph on `V(P)` joining the anti-diagonal corners of every inner
/// interval.
#[derive(Debug, Clone)]
pub struct AntiDiagonalGraph {
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    adjacency: Vec<u128>,
    edges: Vec<(usize, usize)>,
}

pub fn antidiagonal_graph(p: &Polyomino) -> Result<AntiDiagonalGraph> {
    AntiDiagonalGraph::new(p)
}

impl AntiDiagonalGraph {
    pub fn new(p: &Polyomino) -> Result<Self> {
        let n = p.vertices().len();
        if n > MAX_VERTICES {
            return Err(Error::SizeGuardExceeded(format!("{n} vertices, at most {MAX_VERTICES} supported")));
        }
        let points: Vec<Point> = p.vertices().iter().rev().copied().collect();
        let index: HashMap<Point, usize> = points.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let mut adjacency = vec![0u128; n];
        let mut edges = Vec::with_capacity(p.inner_intervals().len());
        for iv in p.inner_intervals() {
            let k = iv.corners();
            let (u, v) = (index[&k.c], index[&k.d]);
            adjacency[u] |= 1u128 << v;
            adjacency[v] |= 1u128 << u;
            edges.push((u.min(v), u.max(v)));
        }
        Ok(AntiDiagonalGraph { points, index, adjacency, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    /// The vertex with a given index.
    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn neighbors(&self, i: usize) -> VertexSet {
        VertexSet(self.adjacency[i])
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i] >> j & 1 == 1
    }

    /// Edges as index pairs, one per inner interval, in interval order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_points(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.edges.iter().map(|&(u, v)| (self.points[u], self.points[v]))
    }

    pub fn all(&self) -> VertexSet {
        let n = self.points.len();
        if n == 128 {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn to_set(&self, points: &[Point]) -> Result<VertexSet> {
        let mut s = VertexSet::EMPTY;
        for &q in points {
            s.insert(self.index_of(q).ok_or(Error::PointOutsidePolyomino(q))?);
        }
        Ok(s)
    }

    pub fn to_face(&self, s: VertexSet) -> Face {
        // ascending indices are already descending points
        Face { points: s.iter().map(|i| self.points[i]).collect() }
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|i| self.adjacency[i] & s.0 == 0)
    }

    /// Independent and not extendable by any vertex.
    pub fn is_maximal_independent(&self, s: VertexSet) -> bool {
        self.is_independent(s) && self.all().difference(s).iter().all(|w| self.adjacency[w] & s.0 != 0)
    }

    /// All maximal independent sets, sorted descending in the facet order.
    /// Fails once more than `cap` have been found.
    pub fn maximal_independent_sets(&self, cap: usize) -> Result<Vec<VertexSet>> {
        let mut out = Vec::new();
        self.bron_kerbosch(0, self.all().0, 0, cap, &mut out)?;
        out.sort_unstable_by(|a, b| lex_cmp(*b, *a));
        Ok(out)
    }

    // Bron-Kerbosch with pivoting on the complement graph: `r` is the
    // current independent set, `p` the candidates, `x` the excluded ones.
    fn bron_kerbosch(&self, r: u128, mut p: u128, mut x: u128, cap: usize, out: &mut Vec<VertexSet>) -> Result<()> {
        if p == 0 {
            if x == 0 {
                if out.len() >= cap {
                    return Err(Error::SizeGuardExceeded(format!("more than {cap} facets")));
                }
                out.push(VertexSet(r));
            }
            return Ok(());
        }
        // pivot with the most compatible candidates
        let mut pivot = 0;
        let mut best = -1i32;
        for u in VertexSet(p | x).iter() {
            let score = (p & !self.adjacency[u]).count_ones() as i32;
            if score > best {
                best = score;
                pivot = u;
            }
        }
        let branch = p & (self.adjacency[pivot] | 1u128 << pivot);
        for v in VertexSet(branch).iter() {
            let keep = !(self.adjacency[v] | 1u128 << v);
            self.bron_kerbosch(r | 1u128 << v, p & keep, x & keep, cap, out)?;
            p &= !(1u128 << v);
            x |= 1u128 << v;
        }
        Ok(())
    }

    /// Number of independent sets of each size, from a branching recursion
    /// with component splitting and memoization (faces are never listed).
    pub fn independence_counts(&self) -> Result<Vec<u128>> {
        let mut memo: HashMap<u128, Vec<u128>> = HashMap::new();
        self.independence_poly(self.all().0, &mut memo)
    }

    fn component(&self, start: usize, mask: u128) -> u128 {
        let mut seen = 1u128 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u128;
            for v in VertexSet(frontier).iter() {
                next |= self.adjacency[v];
            }
            next &= mask & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    fn independence_poly(&self, mask: u128, memo: &mut HashMap<u128, Vec<u128>>) -> Result<Vec<u128>> {
        if mask == 0 {
            return Ok(vec![1]);
        }
        if let Some(p) = memo.get(&mask) {
            return Ok(p.clone());
        }
        let first = mask.trailing_zeros() as usize;
        let comp = self.component(first, mask);
        let result = if comp != mask {
            let a = self.independence_poly(comp, memo)?;
            let b = self.independence_poly(mask & !comp, memo)?;
            poly_mul(&a, &b)?
        } else {
            let mut v = first;
            let mut best = 0;
            for u in VertexSet(mask).iter() {
                let d = (self.adjacency[u] & mask).count_ones();
                if d > best {
                    best = d;
                    v = u;
                }
            }
            if best == 0 {
                vec![1, 1]
            } else {
                let without = self.independence_poly(mask & !(1u128 << v), memo)?;
                let with = self.independence_poly(mask & !(self.adjacency[v] | 1u128 << v), memo)?;
                let mut out = without;
                if out.len() < with.len() + 1 {
                    out.resize(with.len() + 1, 0);
                }
                for (k, c) in with.iter().enumerate() {
                    out[k + 1] = out[k + 1].checked_add(*c).ok_or(Error::Overflow("face counts"))?;
                }
                out
            }
        };
        memo.insert(mask, result.clone());
        Ok(result)
    }
}

fn poly_mul(a: &[u128], b: &[u128]) -> Result<Vec<u128>> {
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let t = x.checked_mul(*y).ok_or(Error::Overflow("face counts"))?;
            out[i + j] = out[i + j].checked_add(t).ok_or(Error::Overflow("face counts"))?;
        }
    }
    Ok(out)
}

/// Face counts by cardinality: entry `i` is the number of faces with `i`
/// vertices, so entry 0 is the empty face and entry 1 is `|V(P)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u128>);

impl FVector {
    /// Facet size of a pure complex (the largest face size).
    pub fn top_size(&self) -> usize {
        self.0.len() - 1
    }
}

/// True iff `s` contains no anti-diagonal edge.
pub fn is_face(p: &Polyomino, s: &[Point]) -> Result<bool> {
    let g = AntiDiagonalGraph::new(p)?;
    Ok(g.is_independent(g.to_set(s)?))
}

/// All facets, each sorted descending, the list sorted descending in the
/// facet order.
pub fn facets(p: &Polyomino, cap: usize) -> Result<Vec<Face>> {
    let g = AntiDiagonalGraph::new(p)?;
    Ok(g.maximal_independent_sets(cap)?.into_iter().map(|s| g.to_face(s)).collect())
}

pub fn f_vector(p: &Polyomino) -> Result<FVector> {
    Ok(FVector(AntiDiagonalGraph::new(p)?.independence_counts()?))
}

/// `|V(P)| - rank(P)`, the dimension of the coordinate ring of a grid
/// polyomino.
pub fn krull_dim(p: &Polyomino) -> Result<usize> {
    crate::grid::recognize_grid(p).map_err(Error::NotGrid)?;
    Ok(p.vertices().len() - p.rank())
}

/// Fail with `PurityViolation` unless every facet has `expected` vertices.
pub fn check_purity(facets: &[VertexSet], expected: usize) -> Result<()> {
    match facets.iter().find(|f| f.len() != expected) {
        Some(f) => Err(Error::PurityViolation { expected, found: f.len() }),
        None => Ok(()),
    }
}

/// The h-vector of a complex with facet size `d` from its face counts:
/// `h_k = sum_{i<=k} (-1)^(k-i) C(d-i, k-i) f_{i-1}`, for `k = 0..=d`.
pub fn h_from_f(f: &FVector, d: usize) -> Result<Vec<i128>> {
    let mut h = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut acc: i128 = 0;
        for i in 0..=k {
            let fi = f.0.get(i).copied().unwrap_or(0);
            let term = binomial((d - i) as u64, (k - i) as u64)
                .and_then(|c| c.checked_mul(fi))
                .and_then(|t| i128::try_from(t).ok())
                .ok_or(Error::Overflow("h-vector"))?;
            acc = if (k - i) % 2 == 0 { acc.checked_add(term) } else { acc.checked_sub(term) }
                .ok_or(Error::Overflow("h-vector"))?;
        }
        h.push(acc);
    }
    Ok(h)
}

/// Anti-diagonal corner pair of an inner interval, as an edge.
pub fn edge_of(iv: &InnerInterval) -> (Point, Point) {
    let k = iv.corners();
    (k.c, k.d)
}
