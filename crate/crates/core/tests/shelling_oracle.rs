mod common;

use std::collections::BTreeSet;

use common::*;
use gridpoly::complex::{VertexSet, DEFAULT_FACET_CAP};
use gridpoly::shelling::{first_facet, generalized_steps, FacetList};
use gridpoly::{Point, Polyomino};

/// Maximal sets among `F_h ∩ F_j` for `h < j`, on point sets.
fn restriction(facets: &[BTreeSet<Point>], j: usize) -> BTreeSet<BTreeSet<Point>> {
    let meets: BTreeSet<BTreeSet<Point>> =
        facets[..j].iter().map(|h| h.intersection(&facets[j]).copied().collect()).collect();
    meets.iter().filter(|m| !meets.iter().any(|n| n.len() > m.len() && m.is_subset(n))).cloned().collect()
}

fn check_against_steps(p: &Polyomino) {
    let list = FacetList::new(p, DEFAULT_FACET_CAP).unwrap();
    let sets: Vec<BTreeSet<Point>> = (0..list.len()).map(|j| list.face(j).points().iter().copied().collect()).collect();
    for j in 0..list.len() {
        let face = list.face(j);
        let steps = generalized_steps(&face, p).unwrap();
        let expected: BTreeSet<BTreeSet<Point>> =
            steps.iter().map(|s| sets[j].iter().copied().filter(|&q| q != s.corner).collect()).collect();
        assert_eq!(restriction(&sets, j), expected, "facet #{j} of {} cells", p.rank());
        assert_eq!(list.brute_force_restriction(j).unwrap(), steps.len());
    }
}

#[test]
fn frame_restrictions_are_step_corners() {
    check_against_steps(&frame());
}

#[test]
fn two_hole_restrictions_are_step_corners() {
    check_against_steps(&grid(&[1, 1], &[1]));
    check_against_steps(&grid(&[1], &[1, 1]));
}

#[test]
fn exchange_agrees_with_intersections() {
    for p in [grid(&[2], &[2]), grid(&[3], &[1]), grid(&[1, 2], &[1])] {
        let list = FacetList::new(&p, DEFAULT_FACET_CAP).unwrap();
        for j in 0..list.len() {
            let f = list.facets()[j];
            let meets = list.maximal_intersections(j);
            let codim_one = meets
                .iter()
                .filter(|m| m.len() + 1 == f.len())
                .fold(VertexSet::EMPTY, |acc, m| acc.union(f.difference(*m)));
            assert_eq!(list.exchange_restriction(j), codim_one);
        }
    }
}

#[test]
fn first_facet_leads_the_order() {
    for p in [frame(), grid(&[2, 1], &[3]), grid(&[1, 1], &[1, 1])] {
        let list = FacetList::new(&p, DEFAULT_FACET_CAP).unwrap();
        assert_eq!(list.face(0), first_facet(&p).unwrap());
    }
}
