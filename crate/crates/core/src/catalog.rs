//! Small-tree catalogues: isomorphism-free enumeration of rooted out-trees,
//! oriented trees and oriented paths, plus built-in named targets.

use std::collections::BTreeMap;

use crate::decompose::longest_directed_subpath;
use crate::digraph::{OrientedTree, Vertex};

/// Canonical string of the subtree hanging below `v` (entered from `parent`).
fn encode(tree: &OrientedTree, v: Vertex, parent: Option<Vertex>) -> String {
    let mut parts: Vec<String> = tree
        .neighbours(v)
        .filter(|&(w, _)| Some(w) != parent)
        .map(|(w, forward)| {
            let tag = if forward { 'o' } else { 'i' };
            format!("{tag}{}", encode(tree, w, Some(v)))
        })
        .collect();
    parts.sort_unstable();
    format!("({})", parts.concat())
}

/// Isomorphism-invariant code of a rooted oriented tree.
pub fn rooted_code(tree: &OrientedTree, root: Vertex) -> String {
    encode(tree, root, None)
}

/// Centre(s) of the underlying tree.
pub fn centres(tree: &OrientedTree) -> Vec<Vertex> {
    let n = tree.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut layer: Vec<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for (w, _) in tree.neighbours(v) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Isomorphism-invariant code of an unrooted oriented tree.
pub fn canonical_code(tree: &OrientedTree) -> String {
    centres(tree).into_iter().map(|c| rooted_code(tree, c)).min().expect("non-empty tree")
}

/// Relabels so that vertices appear in BFS order from `root`, children
/// sorted by code; gives one fixed representative per class.
fn normalise(tree: &OrientedTree, root: Vertex, keep_root: bool) -> OrientedTree {
    let mut order = vec![root];
    let mut i = 0;
    let parent = tree.parents(root);
    while i < order.len() {
        let v = order[i];
        let mut kids: Vec<(String, Vertex)> = tree
            .neighbours(v)
            .filter(|&(w, _)| Some(w) != parent[v])
            .map(|(w, forward)| {
                let tag = if forward { 'o' } else { 'i' };
                (format!("{tag}{}", encode(tree, w, Some(v))), w)
            })
            .collect();
        kids.sort();
        order.extend(kids.into_iter().map(|(_, w)| w));
        i += 1;
    }
    let mut pos = vec![0; tree.order()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut edges: Vec<_> = tree.edges().iter().map(|&(u, v)| (pos[u], pos[v])).collect();
    edges.sort_unstable_by_key(|&(u, v)| (u.max(v), u.min(v)));
    OrientedTree::new(tree.order(), edges, keep_root.then_some(0)).expect("relabelling keeps a tree")
}

/// Rooted out-directed trees of the given order up to isomorphism, root 0.
pub fn rooted_out_trees(order: usize) -> Vec<OrientedTree> {
    assert!(order >= 1);
    let mut current = vec![OrientedTree::single_vertex()];
    for n in 2..=order {
        let mut next = BTreeMap::new();
        for t in &current {
            for v in 0..t.order() {
                let mut edges = t.edges().to_vec();
                edges.push((v, n - 1));
                let grown = OrientedTree::new(n, edges, Some(0)).expect("leaf added");
                next.entry(rooted_code(&grown, 0)).or_insert_with(|| normalise(&grown, 0, true));
            }
        }
        current = next.into_values().collect();
    }
    current
}

/// Oriented trees of the given order up to isomorphism (unrooted).
pub fn oriented_trees(order: usize) -> Vec<OrientedTree> {
    assert!(order >= 1);
    let mut current = vec![OrientedTree::new(1, vec![], None).expect("single vertex")];
    for n in 2..=order {
        let mut next = BTreeMap::new();
        for t in &current {
            for v in 0..t.order() {
                for forward in [true, false] {
                    let mut edges = t.edges().to_vec();
                    edges.push(if forward { (v, n - 1) } else { (n - 1, v) });
                    let grown = OrientedTree::new(n, edges, None).expect("leaf added");
                    let code = canonical_code(&grown);
                    next.entry(code).or_insert_with(|| {
                        let c = centres(&grown)
                            .into_iter()
                            .min_by_key(|&c| rooted_code(&grown, c))
                            .expect("centre");
                        normalise(&grown, c, false)
                    });
                }
            }
        }
        current = next.into_values().collect();
    }
    current
}

/// Oriented paths with `length` edges, one per isomorphism class (a path and
/// its reversed walk are the same graph). Vertices are numbered along the walk.
pub fn oriented_paths(length: usize) -> Vec<OrientedTree> {
    if length == 0 {
        return vec![OrientedTree::single_vertex()];
    }
    let mut out = Vec::new();
    for mask in 0u64..(1 << length) {
        let dirs: Vec<bool> = (0..length).map(|i| mask >> i & 1 == 1).collect();
        let reversed: Vec<bool> = dirs.iter().rev().map(|d| !d).collect();
        if reversed < dirs {
            continue;
        }
        out.push(OrientedTree::oriented_path(&dirs));
    }
    out
}

/// Oriented paths with `length` edges whose longest directed subpath is `l`.
pub fn oriented_paths_with_l(length: usize, l: usize) -> Vec<OrientedTree> {
    oriented_paths(length)
        .into_iter()
        .filter(|p| longest_directed_subpath(p).expect("paths decompose") == l)
        .collect()
}

/// Built-in targets: `p<n>` directed path of order n, `outstar<n>`,
/// `instar<n>`, `alt<n>` alternating path of order n.
pub fn named_target(name: &str) -> Option<OrientedTree> {
    let split = name.find(|c: char| c.is_ascii_digit())?;
    let (kind, num) = name.split_at(split);
    let n: usize = num.parse().ok()?;
    if n == 0 || n > 64 {
        return None;
    }
    match kind {
        "p" => Some(OrientedTree::directed_path(n)),
        "outstar" => Some(OrientedTree::out_star(n)),
        "instar" => Some(OrientedTree::in_star(n)),
        "alt" => {
            let dirs: Vec<bool> = (0..n - 1).map(|i| i % 2 == 0).collect();
            Some(OrientedTree::oriented_path(&dirs))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_tree_counts() {
        // rooted unlabelled trees: 1, 1, 2, 4, 9, 20, 48, 115
        let counts: Vec<usize> = (1..=8).map(|n| rooted_out_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48, 115]);
        for t in rooted_out_trees(6) {
            assert_eq!(t.out_directed_root(), Some(0));
        }
    }

    #[test]
    fn oriented_tree_counts() {
        // oriented trees on n nodes: 1, 1, 3, 8, 27, 91, 350
        let counts: Vec<usize> = (1..=7).map(|n| oriented_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 8, 27, 91, 350]);
    }

    #[test]
    fn path_classes() {
        // 2^n orientations, palindromic ones counted once
        assert_eq!(oriented_paths(1).len(), 1);
        assert_eq!(oriented_paths(2).len(), 3);
        assert_eq!(oriented_paths(3).len(), 4);
        assert_eq!(oriented_paths(4).len(), 10);
        assert_eq!(oriented_paths_with_l(3, 3).len(), 1);
        assert_eq!(oriented_paths_with_l(2, 1).len(), 2);
    }

    #[test]
    fn named() {
        assert_eq!(named_target("p3"), Some(OrientedTree::directed_path(3)));
        assert_eq!(named_target("outstar3"), Some(OrientedTree::out_star(3)));
        assert!(named_target("q3").is_none());
        assert!(named_target("p0").is_none());
        assert_eq!(named_target("alt4").unwrap().order(), 4);
    }
}
