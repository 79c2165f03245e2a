//! Disjoint sets `X`, `Y` with large one-sided minimum degree.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use super::{ceil, EngineError, Rational};
use crate::digraph::{bitset_from, Colour, Digraph, Vertex};

/// Every `x` in `X` has at least `threshold` out-neighbours in `Y` and every
/// `y` in `Y` has at least `threshold` in-neighbours in `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MindegreePair {
    pub x: Vec<Vertex>,
    pub y: Vec<Vertex>,
    pub threshold: usize,
    /// Colour class the pair was found in; `None` for an uncoloured digraph.
    pub colour: Option<Colour>,
}

impl MindegreePair {
    pub fn x_set(&self, n: usize) -> FixedBitSet {
        bitset_from(n, self.x.iter().copied())
    }

    pub fn y_set(&self, n: usize) -> FixedBitSet {
        bitset_from(n, self.y.iter().copied())
    }

    /// Checks disjointness, non-emptiness and both degree conditions.
    pub fn check(&self, g: &Digraph) -> bool {
        let n = g.order();
        if self.x.is_empty() || self.y.is_empty() {
            return false;
        }
        if self.x.iter().chain(&self.y).any(|&v| v >= n) {
            return false;
        }
        let xs = self.x_set(n);
        let ys = self.y_set(n);
        if xs.count_ones(..) != self.x.len() || ys.count_ones(..) != self.y.len() {
            return false;
        }
        if !xs.is_disjoint(&ys) {
            return false;
        }
        self.x.iter().all(|&x| g.out_row(x).intersection_count(&ys) >= self.threshold)
            && self.y.iter().all(|&y| g.in_row(y).intersection_count(&xs) >= self.threshold)
    }
}

/// For a digraph with at least `eps * n(n-1) / 2` edges, returns a pair with
/// threshold `ceil(eps * n / 8)`.
///
/// A 2-way partition is improved by single-vertex moves (and a side swap when
/// the backward count dominates) until at least a quarter of the edges cross
/// from `A` to `B`; then vertices of low degree in the crossing bipartite
/// graph are peeled, lowest index first.
pub fn find_mindegree_pair(g: &Digraph, eps: Rational) -> Result<MindegreePair, EngineError> {
    let n = g.order();
    let e = g.edge_count();
    if *eps.numer() == 0 {
        return Err(EngineError::Parameter("eps must be positive".into()));
    }
    if n < 2 || e == 0 {
        return Err(EngineError::Parameter("need at least one edge".into()));
    }
    let need = eps * Rational::from_integer((n * (n - 1)) as u64) / Rational::from_integer(2);
    if Rational::from_integer(e as u64) < need {
        return Err(EngineError::Precondition(format!(
            "{e} edges is below eps*n(n-1)/2 = {need}"
        )));
    }
    let threshold = ceil(eps * Rational::from_integer(n as u64) / Rational::from_integer(8)) as usize;

    let mut a = bitset_from(n, 0..n / 2);
    let mut b = bitset_from(n, n / 2..n);
    let crossing = |a: &FixedBitSet, b: &FixedBitSet| -> usize {
        a.ones().map(|v| g.out_row(v).intersection_count(b)).sum()
    };
    let mut steps = 0usize;
    loop {
        let ab = crossing(&a, &b);
        if 4 * ab >= e {
            break;
        }
        let ba = crossing(&b, &a);
        if ba > ab {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let gain = |v: Vertex| -> isize {
            let to_a = g.in_row(v).intersection_count(&a) as isize;
            let out_b = g.out_row(v).intersection_count(&b) as isize;
            if a.contains(v) {
                to_a - out_b
            } else {
                out_b - to_a
            }
        };
        let v = (0..n)
            .find(|&v| gain(v) > 0)
            .ok_or_else(|| EngineError::GuaranteeViolated("no improving move".into()))?;
        if a.contains(v) {
            a.set(v, false);
            b.insert(v);
        } else {
            b.set(v, false);
            a.insert(v);
        }
        steps += 1;
        debug_assert!(steps <= e);
    }

    // Peel the bipartite graph of A -> B edges.
    let mut deg: Vec<usize> = (0..n)
        .map(|v| {
            if a.contains(v) {
                g.out_row(v).intersection_count(&b)
            } else {
                g.in_row(v).intersection_count(&a)
            }
        })
        .collect();
    let mut alive = bitset_from(n, 0..n);
    let mut low: BTreeSet<Vertex> = (0..n).filter(|&v| deg[v] < threshold).collect();
    while let Some(v) = low.pop_first() {
        alive.set(v, false);
        let nbrs: Vec<Vertex> = if a.contains(v) {
            g.out_neighbours(v).filter(|&w| b.contains(w) && alive.contains(w)).collect()
        } else {
            g.in_neighbours(v).filter(|&w| a.contains(w) && alive.contains(w)).collect()
        };
        for w in nbrs {
            deg[w] -= 1;
            if deg[w] < threshold {
                low.insert(w);
            }
        }
    }
    let x: Vec<Vertex> = a.ones().filter(|&v| alive.contains(v)).collect();
    let y: Vec<Vertex> = b.ones().filter(|&v| alive.contains(v)).collect();
    let pair = MindegreePair { x, y, threshold, colour: None };
    if pair.x.is_empty() || pair.y.is_empty() {
        return Err(EngineError::GuaranteeViolated("peeling emptied a side".into()));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::testutil::{random_tournament, rng};
    use rand::Rng;

    #[test]
    fn tournaments_half_density() {
        let mut r = rng(3);
        for n in 2..60 {
            let g = random_tournament(n, &mut r);
            let pair = find_mindegree_pair(&g, Rational::new(1, 1)).unwrap();
            assert!(pair.check(&g));
            assert_eq!(pair.threshold, n.div_ceil(8));
        }
    }

    #[test]
    fn dense_random_digraphs() {
        let mut r = rng(4);
        for n in 2..50 {
            let mut g = Digraph::empty(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && r.gen_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            let e = g.edge_count() as u64;
            if e == 0 {
                continue;
            }
            let eps = Rational::new(2 * e, (n * (n - 1)) as u64);
            let pair = find_mindegree_pair(&g, eps).unwrap();
            assert!(pair.check(&g), "n={n}");
        }
    }

    #[test]
    fn precondition_gate() {
        let g = Digraph::from_edges(4, [(0, 1)]);
        assert!(matches!(find_mindegree_pair(&g, Rational::new(1, 2)), Err(EngineError::Precondition(_))));
        let pair = find_mindegree_pair(&g, Rational::new(1, 6)).unwrap();
        assert_eq!((pair.x.clone(), pair.y.clone(), pair.threshold), (vec![0], vec![1], 1));
        assert!(find_mindegree_pair(&Digraph::empty(3), Rational::new(1, 2)).is_err());
    }

    #[test]
    fn complete_digraph_eps_two() {
        let g = Digraph::complete(8);
        let pair = find_mindegree_pair(&g, Rational::new(2, 1)).unwrap();
        assert_eq!(pair.threshold, 2);
        assert!(pair.check(&g));
    }

    #[test]
    fn random_tournament_on_forty() {
        let g = random_tournament(40, &mut rng(30));
        let pair = find_mindegree_pair(&g, Rational::new(1, 1)).unwrap();
        assert_eq!(pair.threshold, 5);
        assert!(pair.check(&g));
    }

    #[test]
    fn transitive_tournament_example() {
        let g = Digraph::transitive_tournament(16);
        let pair = find_mindegree_pair(&g, Rational::new(1, 1)).unwrap();
        assert_eq!(pair.threshold, 2);
        assert!(pair.check(&g));
    }
}
