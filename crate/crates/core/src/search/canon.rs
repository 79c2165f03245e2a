//! Canonical labelling of small digraphs by individualisation and refinement.
//!
//! The search tree is explored in full (no automorphism pruning), so the
//! minimum code over its leaves is a labelling invariant and the leaves that
//! attain it differ exactly by the automorphisms of the input.

use std::collections::BTreeMap;

use crate::digraph::{Digraph, Vertex};

/// Adjacency matrix of a relabelled digraph, row-major, packed
/// most-significant bit first so that `Vec` ordering is bitwise lexicographic.
pub type Code = Vec<u64>;

#[derive(Clone, Debug)]
pub struct Canon {
    pub code: Code,
    /// `order[i]` is the input vertex that receives canonical label `i`.
    pub order: Vec<Vertex>,
    /// Every automorphism as a vertex map, identity included.
    pub automorphisms: Vec<Vec<Vertex>>,
}

impl Canon {
    pub fn graph(&self, g: &Digraph) -> Digraph {
        g.induced(&self.order)
    }
}

pub fn code_of(g: &Digraph, order: &[Vertex]) -> Code {
    let n = order.len();
    let mut code = vec![0u64; (n * n).div_ceil(64).max(1)];
    for (i, &u) in order.iter().enumerate() {
        for (j, &v) in order.iter().enumerate() {
            if g.has_edge(u, v) {
                let b = i * n + j;
                code[b / 64] |= 1 << (63 - b % 64);
            }
        }
    }
    code
}

/// Splits cells by (out-count, in-count) into every cell until stable.
/// Groups inside a cell are ordered by signature, so the result does not
/// depend on the vertex labels.
fn refine(g: &Digraph, mut cells: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    let n = g.order();
    loop {
        let mut cell_of = vec![0usize; n];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let signature = |v: Vertex| -> Vec<(usize, usize)> {
            let mut s = vec![(0, 0); cells.len()];
            for w in g.out_neighbours(v) {
                s[cell_of[w]].0 += 1;
            }
            for w in g.in_neighbours(v) {
                s[cell_of[w]].1 += 1;
            }
            s
        };
        let mut next = Vec::with_capacity(cells.len());
        for c in &cells {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut groups: BTreeMap<Vec<(usize, usize)>, Vec<Vertex>> = BTreeMap::new();
            for &v in c {
                groups.entry(signature(v)).or_default().push(v);
            }
            next.extend(groups.into_values());
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

struct Explorer<'a> {
    g: &'a Digraph,
    best: Option<Code>,
    leaves: Vec<Vec<Vertex>>,
}

impl Explorer<'_> {
    fn explore(&mut self, cells: Vec<Vec<Vertex>>) {
        let cells = refine(self.g, cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<Vertex> = cells.into_iter().flatten().collect();
            let code = code_of(self.g, &order);
            match &self.best {
                Some(b) if code > *b => {}
                Some(b) if code == *b => self.leaves.push(order),
                _ => {
                    self.best = Some(code);
                    self.leaves = vec![order];
                }
            }
            return;
        };
        for &v in &cells[target] {
            let mut next = cells[..target].to_vec();
            next.push(vec![v]);
            next.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            self.explore(next);
        }
    }
}

pub fn canonical_form(g: &Digraph) -> Canon {
    let n = g.order();
    if n == 0 {
        return Canon { code: vec![0], order: Vec::new(), automorphisms: vec![Vec::new()] };
    }
    let mut ex = Explorer { g, best: None, leaves: Vec::new() };
    ex.explore(vec![(0..n).collect()]);
    let first = ex.leaves[0].clone();
    let automorphisms = ex
        .leaves
        .iter()
        .map(|b| {
            let mut sigma = vec![0; n];
            for (i, &a) in first.iter().enumerate() {
                sigma[a] = b[i];
            }
            sigma
        })
        .collect();
    Canon { code: ex.best.expect("at least one leaf"), order: first, automorphisms }
}
