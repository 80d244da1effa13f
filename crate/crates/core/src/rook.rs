//! Non-attacking rook configurations and the rook polynomial.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Cell;
use crate::polyomino::Polyomino;

/// When two rooks attack each other.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackConvention {
    /// Same maximal horizontal or vertical block: rooks do not see across holes.
    #[default]
    Block,
    /// Same row or column of the plane.
    Ambient,
}

/// Pairwise non-attacking rooks, sorted by cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RookConfig {
    pub rooks: Vec<Cell>,
}

/// Coefficients `r_0, ..., r_{r(P)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RookPolynomial(pub Vec<u128>);

impl RookPolynomial {
    pub fn coefficients(&self) -> &[u128] {
        &self.0
    }

    /// The rook number.
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }
}

/// Row and column keys of every cell, in cell order.
fn keys(p: &Polyomino, convention: AttackConvention) -> Vec<(usize, usize)> {
    match convention {
        AttackConvention::Block => {
            let index = p.block_index();
            p.cells().map(|c| index[&c]).collect()
        }
        AttackConvention::Ambient => {
            let lo = p.bounding_box().lo();
            p.cells().map(|c| ((c.y() - lo.y) as usize, (c.x() - lo.x) as usize)).collect()
        }
    }
}

pub fn attacking(p: &Polyomino, c1: Cell, c2: Cell) -> Result<bool> {
    attacking_with(p, c1, c2, AttackConvention::Block)
}

pub fn attacking_with(p: &Polyomino, c1: Cell, c2: Cell, convention: AttackConvention) -> Result<bool> {
    for c in [c1, c2] {
        if !p.contains(c) {
            return Err(Error::CellNotInPolyomino(c));
        }
    }
    if c1 == c2 {
        return Ok(false);
    }
    Ok(match convention {
        AttackConvention::Block => {
            let index = p.block_index();
            let (a, b) = (index[&c1], index[&c2]);
            a.0 == b.0 || a.1 == b.1
        }
        AttackConvention::Ambient => c1.x() == c2.x() || c1.y() == c2.y(),
    })
}

/// Backtracking over cells in order, with the used row and column keys
/// kept as bitmasks.
struct Rooks {
    keys: Vec<(usize, usize)>,
}

impl Rooks {
    fn new(p: &Polyomino, convention: AttackConvention) -> Self {
        Rooks { keys: keys(p, convention) }
    }

    fn count(&self, from: usize, rows: u128, cols: u128, depth: usize, counts: &mut Vec<u128>) {
        if counts.len() <= depth {
            counts.push(0);
        }
        counts[depth] += 1;
        for i in from..self.keys.len() {
            let (h, v) = self.keys[i];
            if rows >> h & 1 == 0 && cols >> v & 1 == 0 {
                self.count(i + 1, rows | 1 << h, cols | 1 << v, depth + 1, counts);
            }
        }
    }

    fn collect(
        &self,
        from: usize,
        rows: u128,
        cols: u128,
        k: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in from..self.keys.len() {
            let (h, v) = self.keys[i];
            if rows >> h & 1 == 0 && cols >> v & 1 == 0 {
                current.push(i);
                self.collect(i + 1, rows | 1 << h, cols | 1 << v, k, current, out);
                current.pop();
            }
        }
    }
}

pub fn rook_configs(p: &Polyomino, k: usize) -> Vec<RookConfig> {
    rook_configs_with(p, k, AttackConvention::Block)
}

/// All `k`-rook configurations in lexicographic order of their sorted cells.
pub fn rook_configs_with(p: &Polyomino, k: usize, convention: AttackConvention) -> Vec<RookConfig> {
    let cells: Vec<Cell> = p.cells().collect();
    let mut out = Vec::new();
    Rooks::new(p, convention).collect(0, 0, 0, k, &mut Vec::new(), &mut out);
    out.into_iter().map(|idx| RookConfig { rooks: idx.into_iter().map(|i| cells[i]).collect() }).collect()
}

pub fn rook_polynomial(p: &Polyomino) -> RookPolynomial {
    rook_polynomial_with(p, AttackConvention::Block)
}

pub fn rook_polynomial_with(p: &Polyomino, convention: AttackConvention) -> RookPolynomial {
    let mut counts = Vec::new();
    Rooks::new(p, convention).count(0, 0, 0, 0, &mut counts);
    RookPolynomial(counts)
}

pub fn rook_number(p: &Polyomino) -> usize {
    rook_polynomial(p).degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{generate_grid, GridSpec};
    use crate::polyomino::tests::{frame, poly};

    /// Number of `k`-matchings of the bipartite graph joining each cell's
    /// horizontal block to its vertical block, by subset enumeration.
    fn block_matchings(p: &Polyomino) -> Vec<u128> {
        let index = p.block_index();
        let edges: Vec<(usize, usize)> = p.cells().map(|c| index[&c]).collect();
        let mut counts = vec![0u128; edges.len() + 1];
        for mask in 0u64..1 << edges.len() {
            let chosen: Vec<_> = (0..edges.len()).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
            let mut hs: Vec<_> = chosen.iter().map(|e| e.0).collect();
            let mut vs: Vec<_> = chosen.iter().map(|e| e.1).collect();
            hs.sort();
            hs.dedup();
            vs.sort();
            vs.dedup();
            if hs.len() == chosen.len() && vs.len() == chosen.len() {
                counts[chosen.len()] += 1;
            }
        }
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    #[test]
    fn attacking_examples() {
        let f = frame();
        assert!(attacking(&f, Cell::new(1, 1), Cell::new(3, 1)).unwrap());
        assert!(!attacking(&f, Cell::new(1, 2), Cell::new(3, 2)).unwrap());
        assert!(attacking_with(&f, Cell::new(1, 2), Cell::new(3, 2), AttackConvention::Ambient).unwrap());
        assert!(!attacking(&f, Cell::new(1, 1), Cell::new(1, 1)).unwrap());
        assert!(matches!(attacking(&f, Cell::new(2, 2), Cell::new(1, 1)), Err(Error::CellNotInPolyomino(_))));
    }

    #[test]
    fn frame_configurations() {
        let f = frame();
        let four = rook_configs(&f, 4);
        assert_eq!(four.len(), 1);
        assert_eq!(four[0].rooks, [Cell::new(2, 1), Cell::new(1, 2), Cell::new(3, 2), Cell::new(2, 3)]);
        assert_eq!(rook_configs(&f, 1).len(), 8);
        assert!(rook_configs(&f, 5).is_empty());
        assert_eq!(rook_configs(&f, 0), vec![RookConfig { rooks: vec![] }]);
        let two = rook_configs(&f, 2);
        assert!(two.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn polynomials() {
        assert_eq!(rook_polynomial(&poly(&[(1, 1)])).0, vec![1, 1]);
        assert_eq!(rook_polynomial(&poly(&[(1, 1), (2, 1)])).0, vec![1, 2]);
        assert_eq!(rook_polynomial(&frame()).0, vec![1, 8, 16, 8, 1]);
        assert_eq!(rook_number(&frame()), 4);
        assert_eq!(rook_number(&poly(&[(1, 1)])), 1);
        let g = generate_grid(&GridSpec::new(vec![2], vec![1]).unwrap()).unwrap().0;
        assert_eq!(rook_number(&g), 4);
        assert_eq!(rook_polynomial(&g).0, vec![1, 10, 27, 20, 4]);
    }

    #[test]
    fn ambient_convention_on_frame() {
        let r = rook_polynomial_with(&frame(), AttackConvention::Ambient);
        assert_eq!(r.0[2], 14);
        assert_eq!(r.degree(), 3);
    }

    #[test]
    fn counts_match_block_matchings() {
        let shapes = [
            frame(),
            poly(&[(1, 1), (2, 1), (2, 2), (2, 3), (3, 3)]),
            poly(&[(1, 1), (2, 1), (3, 1), (1, 2), (3, 2), (1, 3), (2, 3), (3, 3), (4, 3)]),
            generate_grid(&GridSpec::new(vec![1, 1], vec![1]).unwrap()).unwrap().0,
        ];
        for p in shapes {
            let r = rook_polynomial(&p);
            assert_eq!(r.0, block_matchings(&p));
            assert_eq!(r.0[1] as usize, p.rank());
            for k in 0..=r.degree() {
                assert_eq!(rook_configs(&p, k).len() as u128, r.0[k]);
            }
        }
    }
}
