//! The rook configuration attached to a facet through its generalized
//! steps, and exhaustive checks that this is a bijection onto rook
//! configurations.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, VertexSet};
use crate::error::{Error, Result};
use crate::grid::recognize_grid;
use crate::lattice::{Cell, Point};
use crate::polyomino::Polyomino;
use crate::rook::{rook_polynomial, RookConfig};
use crate::shelling::{FacetList, GeneralizedStep, ShapeClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TurnClass {
    NotInTurn,
    /// Has a horizontal and a vertical neighbour.
    Middle,
    /// Not middle, but next to a middle cell.
    Extremal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TurnClassification {
    pub cell: Cell,
    pub class: TurnClass,
}

fn is_middle(p: &Polyomino, c: Cell) -> bool {
    let [w, e, s, n] = c.neighbors();
    (p.contains(w) || p.contains(e)) && (p.contains(s) || p.contains(n))
}

pub fn classify_turn(p: &Polyomino, c: Cell) -> Result<TurnClassification> {
    if !p.contains(c) {
        return Err(Error::CellNotInPolyomino(c));
    }
    let class = if is_middle(p, c) {
        TurnClass::Middle
    } else if c.neighbors().into_iter().any(|n| p.contains(n) && is_middle(p, n)) {
        TurnClass::Extremal
    } else {
        TurnClass::NotInTurn
    };
    Ok(TurnClassification { cell: c, class })
}

/// Places one rook per generalized step of a facet.
pub struct Rookifier<'a, 'p> {
    list: &'a FacetList<'p>,
    classes: HashMap<Cell, TurnClass>,
    blocks: HashMap<Cell, (usize, usize)>,
}

impl<'a, 'p> Rookifier<'a, 'p> {
    pub fn new(list: &'a FacetList<'p>) -> Self {
        let p = list.polyomino();
        let classes = p.cells().map(|c| (c, classify_turn(p, c).unwrap().class)).collect();
        Rookifier { list, classes, blocks: p.block_index() }
    }

    /// The cell receiving the rook of one step.
    pub fn rook_cell(&self, s: &GeneralizedStep) -> Result<Cell> {
        let p = self.list.polyomino();
        let corner = s.corner;
        let lr = |dx: i32, dy: i32| Cell::with_lower_right(Point::new(corner.x + dx, corner.y + dy));
        let shape = ShapeClass::from_offset(s.offset()).ok_or_else(|| Error::ShapeViolation {
            corner,
            detail: format!("offset {:?} has no rook rule", s.offset()),
        })?;
        let turn = || match self.classes.get(&s.corner_cell()) {
            Some(TurnClass::Middle) => Ok(true),
            Some(TurnClass::Extremal) => Ok(false),
            _ => Err(Error::TurnViolation { corner }),
        };
        let cell = match shape {
            ShapeClass::Unit => lr(0, 0),
            ShapeClass::Left2 => {
                if turn()? {
                    lr(-1, 0)
                } else {
                    lr(0, 0)
                }
            }
            ShapeClass::Left3 => lr(-1, 0),
            ShapeClass::Up2 => {
                if turn()? {
                    lr(0, 1)
                } else {
                    lr(0, 0)
                }
            }
            ShapeClass::Up3 => lr(0, 1),
        };
        if !p.contains(cell) {
            return Err(Error::MissingCell { corner, cell });
        }
        Ok(cell)
    }

    pub fn rookify_set(&self, f: VertexSet) -> Result<RookConfig> {
        let mut rooks = self.list.steps_of(f).iter().map(|s| self.rook_cell(s)).collect::<Result<Vec<Cell>>>()?;
        rooks.sort();
        for (i, &a) in rooks.iter().enumerate() {
            for &b in &rooks[i + 1..] {
                let (ka, kb) = (self.blocks[&a], self.blocks[&b]);
                if a == b || ka.0 == kb.0 || ka.1 == kb.1 {
                    return Err(Error::AttackingResult(a, b));
                }
            }
        }
        Ok(RookConfig { rooks })
    }
}

/// The rook configuration of a facet of a grid polyomino.
pub fn rookify(p: &Polyomino, f: &Face) -> Result<RookConfig> {
    recognize_grid(p).map_err(Error::NotGrid)?;
    let graph = crate::complex::AntiDiagonalGraph::new(p)?;
    let set = graph.to_set(f.points())?;
    if !graph.is_maximal_independent(set) {
        return Err(Error::NotAFacet);
    }
    let list = FacetList::from_parts(p, graph, vec![set]);
    Rookifier::new(&list).rookify_set(set)
}

#[derive(Debug, Clone, Serialize)]
pub struct BijectionReport {
    /// Facets with `k` generalized steps.
    pub facet_counts: Vec<u128>,
    /// `k`-rook configurations.
    pub rook_counts: Vec<u128>,
    pub injective: bool,
    /// No two facets share the same set of generalized steps.
    pub steps_determine_facet: bool,
    pub counts_agree: bool,
    pub collision: Option<(Face, Face)>,
    pub violations: Vec<String>,
}

impl BijectionReport {
    pub fn is_bijection(&self) -> bool {
        self.injective && self.steps_determine_facet && self.counts_agree && self.violations.is_empty()
    }
}

/// Rookify every facet of the list and compare with the rook polynomial.
pub fn bijection_report_for(list: &FacetList) -> BijectionReport {
    let r = Rookifier::new(list);
    let mut violations = Vec::new();
    let mut seen_rooks: HashMap<RookConfig, usize> = HashMap::new();
    let mut seen_steps: HashMap<Vec<GeneralizedStep>, usize> = HashMap::new();
    let mut collision = None;
    let mut steps_determine_facet = true;
    let mut facet_counts = vec![0u128];
    for (j, &f) in list.facets().iter().enumerate() {
        let steps = list.steps_of(f);
        if facet_counts.len() <= steps.len() {
            facet_counts.resize(steps.len() + 1, 0);
        }
        facet_counts[steps.len()] += 1;
        if seen_steps.insert(steps, j).is_some() {
            steps_determine_facet = false;
        }
        match r.rookify_set(f) {
            Ok(config) => {
                if let Some(&h) = seen_rooks.get(&config) {
                    collision.get_or_insert_with(|| (list.face(h), list.face(j)));
                } else {
                    seen_rooks.insert(config, j);
                }
            }
            Err(e) => violations.push(format!("facet #{j}: {e}")),
        }
    }
    let rook_counts = rook_polynomial(list.polyomino()).0;
    BijectionReport {
        counts_agree: facet_counts == rook_counts,
        facet_counts,
        rook_counts,
        injective: collision.is_none(),
        steps_determine_facet,
        collision,
        violations,
    }
}

pub fn bijection_report(p: &Polyomino, cap: usize) -> Result<BijectionReport> {
    recognize_grid(p).map_err(Error::NotGrid)?;
    Ok(bijection_report_for(&FacetList::new(p, cap)?))
}

/// Whether distinct facets always receive distinct configurations.
pub fn verify_injectivity(p: &Polyomino, cap: usize) -> Result<bool> {
    let r = bijection_report(p, cap)?;
    Ok(r.injective && r.steps_determine_facet && r.violations.is_empty())
}

/// Whether facets with `k` steps and `k`-rook configurations are equinumerous for all `k`.
pub fn verify_surjectivity_by_count(p: &Polyomino, cap: usize) -> Result<bool> {
    Ok(bijection_report(p, cap)?.counts_agree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DEFAULT_FACET_CAP;
    use crate::grid::{generate_grid, GridSpec};
    use crate::polyomino::tests::{frame, poly};
    use crate::rook::rook_configs;
    use crate::shelling::first_facet;

    fn grid(w: &[u32], h: &[u32]) -> Polyomino {
        generate_grid(&GridSpec::new(w.to_vec(), h.to_vec()).unwrap()).unwrap().0
    }

    #[test]
    fn turn_classes() {
        let f = frame();
        assert_eq!(classify_turn(&f, Cell::new(1, 1)).unwrap().class, TurnClass::Middle);
        assert_eq!(classify_turn(&f, Cell::new(2, 1)).unwrap().class, TurnClass::Extremal);
        let bar = poly(&[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]);
        assert_eq!(classify_turn(&bar, Cell::new(3, 1)).unwrap().class, TurnClass::NotInTurn);
        assert!(matches!(classify_turn(&f, Cell::new(2, 2)), Err(Error::CellNotInPolyomino(_))));
    }

    #[test]
    fn frame_rooks() {
        let f = frame();
        assert!(rookify(&f, &first_facet(&f).unwrap()).unwrap().rooks.is_empty());
        let list = FacetList::new(&f, DEFAULT_FACET_CAP).unwrap();
        let r = Rookifier::new(&list);
        let unique_four = rook_configs(&f, 4).pop().unwrap();
        let mut fours = 0;
        for &facet in list.facets() {
            let config = r.rookify_set(facet).unwrap();
            assert_eq!(config.rooks.len(), list.steps_of(facet).len());
            if config.rooks.len() == 4 {
                assert_eq!(config, unique_four);
                fours += 1;
            }
        }
        assert_eq!(fours, 1);
    }

    #[test]
    fn reports() {
        let r = bijection_report(&frame(), DEFAULT_FACET_CAP).unwrap();
        assert_eq!(r.facet_counts, vec![1, 8, 16, 8, 1]);
        assert_eq!(r.rook_counts, r.facet_counts);
        assert!(r.is_bijection(), "{:?}", r.violations);
        assert!(verify_injectivity(&grid(&[2], &[1]), DEFAULT_FACET_CAP).unwrap());
        assert!(verify_surjectivity_by_count(&grid(&[1], &[2]), DEFAULT_FACET_CAP).unwrap());
    }

    #[test]
    fn single_facet_input_is_injective() {
        let p = frame();
        let graph = crate::complex::AntiDiagonalGraph::new(&p).unwrap();
        let f0 = graph.to_set(first_facet(&p).unwrap().points()).unwrap();
        let list = FacetList::from_parts(&p, graph, vec![f0]);
        let r = bijection_report_for(&list);
        assert!(r.injective && r.steps_determine_facet);
    }

    #[test]
    fn collisions_are_reported() {
        let p = frame();
        let full = FacetList::new(&p, DEFAULT_FACET_CAP).unwrap();
        let mut doubled = full.facets().to_vec();
        doubled.push(doubled[3]);
        let list = FacetList::from_parts(&p, full.graph().clone(), doubled);
        let r = bijection_report_for(&list);
        assert!(!r.injective && !r.steps_determine_facet && !r.counts_agree);
        let (a, b) = r.collision.unwrap();
        assert_eq!(a, b);
    }
}
