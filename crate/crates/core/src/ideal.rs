//! Inner 2-minors of the polyomino ideal, their initial monomials, the
//! height of the ideal and the König-type decision.
//!
//! The generators `x_a x_b - x_c x_d` are never expanded into polynomials.
//! Under the fixed reverse-lexicographic order their leading terms are the
//! anti-diagonal products `x_c x_d`, and that is all the complex needs.

use petgraph::algo::maximum_matching;
use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};

use crate::complex::{AntiDiagonalGraph, VertexSet};
use crate::error::{Error, Result};
use crate::grid::recognize_grid;
use crate::lattice::{Interval, Point};
use crate::polyomino::{InnerInterval, Polyomino};

/// The inner 2-minor `x_a x_b - x_c x_d` of an inner interval `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InnerMinor {
    interval: InnerInterval,
}

impl InnerMinor {
    pub fn interval(&self) -> Interval {
        self.interval.interval()
    }

    pub fn diagonal_pair(&self) -> (Point, Point) {
        let k = self.interval.corners();
        (k.a, k.b)
    }

    pub fn antidiagonal_pair(&self) -> (Point, Point) {
        let k = self.interval.corners();
        (k.c, k.d)
    }
}

impl Serialize for InnerMinor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.interval().serialize(s)
    }
}

/// One generator per inner interval, in interval order.
pub fn generators(p: &Polyomino) -> Vec<InnerMinor> {
    p.inner_intervals().iter().map(|&interval| InnerMinor { interval }).collect()
}

/// Support `{c, d}` of the initial monomial.
pub fn initial_support(m: &InnerMinor) -> (Point, Point) {
    m.antidiagonal_pair()
}

/// Height of the polyomino ideal of a grid polyomino, `rank(P)`.
pub fn ideal_height(p: &Polyomino) -> Result<usize> {
    recognize_grid(p).map_err(Error::NotGrid)?;
    Ok(p.rank())
}

/// `|V(P)| >= 2 rank(P)`, necessary for König type when the height is the rank.
pub fn koenig_necessary(p: &Polyomino) -> bool {
    p.vertices().len() >= 2 * p.rank()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KoenigReason {
    WitnessFound,
    TooFewVertices,
    NoDisjointFamily,
}

/// A minor of a König witness with the term chosen as its leading term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LeadingMinor {
    pub minor: InnerMinor,
    pub leading: (Point, Point),
}

impl LeadingMinor {
    pub fn trailing(&self) -> (Point, Point) {
        let (d, a) = (self.minor.diagonal_pair(), self.minor.antidiagonal_pair());
        if self.leading == d {
            a
        } else {
            d
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KoenigDecision {
    pub is_koenig: bool,
    /// `rank(P)` minors whose leading terms have pairwise disjoint supports.
    pub witness: Option<Vec<LeadingMinor>>,
    /// Variables from largest to smallest of a lexicographic order that
    /// selects the witness leading terms.
    pub variable_order: Option<Vec<Point>>,
    pub reason: KoenigReason,
}

impl KoenigDecision {
    /// Check the certificate: `rank` distinct inner minors, disjoint leading
    /// supports, and each leading term contains the largest of the four
    /// variables of its minor in `variable_order`.
    pub fn witness_is_valid(&self, p: &Polyomino) -> bool {
        let (Some(w), Some(order)) = (&self.witness, &self.variable_order) else { return false };
        let position = |q: Point| order.iter().position(|&o| o == q);
        let mut pts: Vec<Point> = w.iter().flat_map(|m| [m.leading.0, m.leading.1]).collect();
        pts.sort();
        pts.dedup();
        let mut intervals: Vec<Interval> = w.iter().map(|m| m.minor.interval()).collect();
        intervals.sort();
        intervals.dedup();
        let ordered = w.iter().all(|m| {
            let (l, t) = (m.leading, m.trailing());
            let best_leading = [l.0, l.1].into_iter().filter_map(position).min();
            let best_trailing = [t.0, t.1].into_iter().filter_map(position).min();
            // lower position means larger variable; absent means smaller
            match (best_leading, best_trailing) {
                (Some(a), Some(b)) => a < b,
                (Some(_), None) => true,
                _ => false,
            }
        });
        let rank = p.rank();
        w.len() == rank
            && intervals.len() == rank
            && pts.len() == 2 * rank
            && w.iter().all(|m| p.is_inner(&m.minor.interval()))
            && ordered
    }
}

/// Decide König type for a grid polyomino.
///
/// Monomials form a regular sequence iff their supports are pairwise
/// disjoint. Each minor may take either of its terms as leading term as
/// long as one monomial order selects all of them; the search looks for a
/// lexicographic order, which is then returned as a certificate.
pub fn koenig_type(p: &Polyomino) -> Result<KoenigDecision> {
    koenig_type_with_budget(p, DEFAULT_SEARCH_BUDGET)
}

/// Nodes visited by the witness search before giving up.
pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

pub fn koenig_type_with_budget(p: &Polyomino, budget: u64) -> Result<KoenigDecision> {
    let height = ideal_height(p)?;
    let refuse = |reason| KoenigDecision { is_koenig: false, witness: None, variable_order: None, reason };
    if !koenig_necessary(p) {
        return Ok(refuse(KoenigReason::TooFewVertices));
    }
    let g = AntiDiagonalGraph::new(p)?;
    let minors = generators(p);
    let mut search = WitnessSearch::new(&g, &minors, height, budget);
    if search.matching_bound() < height {
        return Ok(refuse(KoenigReason::NoDisjointFamily));
    }
    let Some(chosen) = search.run() else { return Ok(refuse(KoenigReason::NoDisjointFamily)) };
    let sets: Vec<(VertexSet, VertexSet)> = chosen.iter().map(|&(_, s, o)| (s, o)).collect();
    let order = lex_order_for(&sets).expect("search only accepts realizable selections");
    let witness = chosen
        .iter()
        .map(|&(k, s, _)| {
            let mut it = s.iter().map(|i| g.point(i));
            let (u, v) = (it.next().unwrap(), it.next().unwrap());
            let m = minors[k];
            let d = m.diagonal_pair();
            let leading = if d.0 == u || d.0 == v { d } else { m.antidiagonal_pair() };
            LeadingMinor { minor: m, leading }
        })
        .collect();
    let mut variable_order: Vec<Point> = order.iter().map(|&i| g.point(i)).collect();
    let rest = g.all().difference(order.iter().fold(VertexSet::EMPTY, |acc, &i| acc.with(i)));
    variable_order.extend(rest.iter().map(|i| g.point(i)));
    Ok(KoenigDecision {
        is_koenig: true,
        witness: Some(witness),
        variable_order: Some(variable_order),
        reason: KoenigReason::WitnessFound,
    })
}

/// A lexicographic order (largest first) in which, for every pair
/// `(lead, trail)`, the largest variable of `lead ∪ trail` lies in `lead`.
/// Variables ranked at once never share a constraint they violate, so
/// ranking every eligible variable together is exact.
fn lex_order_for(constraints: &[(VertexSet, VertexSet)]) -> Option<Vec<usize>> {
    let mut alive: Vec<(VertexSet, VertexSet)> = constraints.to_vec();
    let mut order = Vec::new();
    while !alive.is_empty() {
        let vars = alive.iter().fold(VertexSet::EMPTY, |acc, &(s, o)| acc.union(s).union(o));
        let blocked = alive.iter().fold(VertexSet::EMPTY, |acc, &(_, o)| acc.union(o));
        let eligible = vars.difference(blocked);
        if eligible.is_empty() {
            return None;
        }
        order.extend(eligible.iter());
        alive.retain(|&(s, _)| s.intersection(eligible).is_empty());
    }
    Some(order)
}

struct WitnessSearch<'a> {
    graph: &'a AntiDiagonalGraph,
    /// For each vertex, `(minor, leading support, trailing support)` options
    /// whose leading support contains it.
    options: Vec<Vec<(usize, VertexSet, VertexSet)>>,
    minors: usize,
    target: usize,
    budget: u64,
}

impl<'a> WitnessSearch<'a> {
    fn new(graph: &'a AntiDiagonalGraph, minors: &[InnerMinor], target: usize, budget: u64) -> Self {
        let mut options = vec![Vec::new(); graph.vertex_count()];
        let set =
            |(u, v): (Point, Point)| VertexSet::singleton(graph.index_of(u).unwrap()).with(graph.index_of(v).unwrap());
        for (k, m) in minors.iter().enumerate() {
            let (d, a) = (set(m.diagonal_pair()), set(m.antidiagonal_pair()));
            for (s, o) in [(d, a), (a, d)] {
                for v in s.iter() {
                    options[v].push((k, s, o));
                }
            }
        }
        WitnessSearch { graph, options, minors: minors.len(), target, budget }
    }

    /// Size of a maximum family of disjoint pairs, ignoring the order.
    fn matching_bound(&self) -> usize {
        let n = self.graph.vertex_count();
        let mut g: UnGraph<(), ()> = UnGraph::with_capacity(n, 2 * self.minors);
        let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        for (v, opts) in self.options.iter().enumerate() {
            for &(_, s, _) in opts {
                let u = s.without(v).iter().next().unwrap();
                if v < u {
                    g.update_edge(nodes[v], nodes[u], ());
                }
            }
        }
        maximum_matching(&g).edges().count()
    }

    fn run(&mut self) -> Option<Vec<(usize, VertexSet, VertexSet)>> {
        let slack = self.graph.vertex_count() - 2 * self.target;
        let mut chosen = Vec::new();
        let mut used = vec![false; self.minors];
        self.go(VertexSet::EMPTY, slack, &mut chosen, &mut used).then_some(chosen)
    }

    fn go(
        &mut self,
        covered: VertexSet,
        slack: usize,
        chosen: &mut Vec<(usize, VertexSet, VertexSet)>,
        used: &mut [bool],
    ) -> bool {
        if chosen.len() == self.target {
            return true;
        }
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        let free = self.graph.all().difference(covered);
        let viable = |o: &&(usize, VertexSet, VertexSet)| !used[o.0] && o.1.intersection(covered).is_empty();
        // branch on the free vertex with fewest options
        let Some(v) = free.iter().min_by_key(|&v| self.options[v].iter().filter(viable).count()) else {
            return false;
        };
        let opts: Vec<_> = self.options[v].iter().filter(viable).copied().collect();
        for (k, s, o) in opts {
            chosen.push((k, s, o));
            let sets: Vec<_> = chosen.iter().map(|&(_, s, o)| (s, o)).collect();
            if lex_order_for(&sets).is_some() {
                used[k] = true;
                if self.go(covered.union(s), slack, chosen, used) {
                    return true;
                }
                used[k] = false;
            }
            chosen.pop();
        }
        slack > 0 && self.go(covered.with(v), slack - 1, chosen, used)
    }
}
