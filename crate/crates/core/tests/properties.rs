use dirramsey::catalog::canonical_code;
use dirramsey::constructions::{build_layered, build_lexicographic, Stage};
use dirramsey::decompose::{check_degree_leaf_bound, is_symmetric, k_core, out_leaves, symmetric_closure};
use dirramsey::digraph::io::{parse_colouring, write_colouring};
use dirramsey::digraph::{Digraph, Embedding, OrientedTree};
use dirramsey::engine::{
    dfs_partition, find_mindegree_pair, ghrv_dichotomy, ramsey_path_embed_tournament, DfsOutcome, GhrvOutcome,
    Rational,
};
use dirramsey::random::{
    random_coloured_tournament, random_digraph, random_oriented_tree, random_out_tree, random_tournament, seeded,
};
use dirramsey::search::canonical_form;
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn embeds(tree: &OrientedTree, map: &[usize], g: &Digraph) -> bool {
    Embedding::new(tree.clone(), map.to_vec(), 1).verify_in(g).is_ok()
}

fn as_digraph(t: &OrientedTree) -> Digraph {
    Digraph::from_edges(t.order(), t.edges().iter().copied())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_code_ignores_labels(seed: u64, n in 1usize..9) {
        let mut r = seeded(seed);
        let g = random_tournament(n, &mut r);
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut r);
        prop_assert_eq!(canonical_form(&g).code, canonical_form(&g.induced(&p)).code);
    }

    #[test]
    fn core_has_few_leaves(seed: u64, n in 1usize..30, k in 1usize..8) {
        let mut r = seeded(seed);
        let t = random_oriented_tree(n, &mut r).with_root(0).unwrap();
        if let Ok(core) = k_core(&t, k) {
            prop_assert!(core.tree.leaf_count() <= k);
            prop_assert_eq!(core.vertices[0], 0);
            prop_assert!(embeds(&core.tree, &core.vertices, &as_digraph(&t)));
        }
    }

    #[test]
    fn closure_bounds(seed: u64, n in 1usize..14) {
        let t = random_out_tree(n, &mut seeded(seed));
        let c = symmetric_closure(&t).unwrap();
        let l = out_leaves(&t);
        let ll = l.pow(l as u32);
        prop_assert!(c.tree.order() <= ll * t.order());
        prop_assert!(out_leaves(&c.tree) <= ll);
        prop_assert!(is_symmetric(&c.tree));
        prop_assert!(embeds(&t, &c.input_map, &as_digraph(&c.tree)));
    }

    #[test]
    fn degree_leaf_inequality(seed: u64, n in 1usize..25, mask: u32) {
        let t = random_out_tree(n, &mut seeded(seed));
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> (v % 32) & 1 == 1).collect();
        prop_assert_eq!(check_degree_leaf_bound(&t, &vs), Ok(true));
    }

    #[test]
    fn dfs_partition_certificates(seed: u64, n in 1usize..40, p in 0.0f64..0.5, m in 1usize..9) {
        let mut r = seeded(seed);
        let g = random_digraph(n, p, &mut r);
        let t = random_out_tree(m, &mut r);
        let run = dfs_partition(&g, &t).unwrap();
        prop_assert!(run.steps <= (n / 2 + 1) * m);
        match run.outcome {
            DfsOutcome::Embedded(map) => prop_assert!(embeds(&t, &map, &g)),
            DfsOutcome::Partition(part) => prop_assert!(part.check(&g, &t)),
        }
    }

    #[test]
    fn mindegree_pairs_hold(seed: u64, n in 2usize..50, p in 0.05f64..0.9) {
        let g = random_digraph(n, p, &mut seeded(seed));
        let e = g.edge_count() as u64;
        prop_assume!(e > 0);
        let pair = find_mindegree_pair(&g, Rational::new(2 * e, (n * (n - 1)) as u64)).unwrap();
        prop_assert!(pair.check(&g));
    }

    #[test]
    fn path_or_colouring(seed: u64, n in 1usize..40, p in 0.0f64..0.6, len in 1usize..6) {
        let g = random_digraph(n, p, &mut seeded(seed));
        match ghrv_dichotomy(&g, len) {
            GhrvOutcome::Path(path) => prop_assert!(path.len() > len && g.is_directed_path(&path)),
            GhrvOutcome::Independent(s) => prop_assert!(g.is_independent(&s) && s.len() * len >= n),
        }
    }

    #[test]
    fn colouring_files_round_trip(seed: u64, n in 0usize..12, k in 1usize..4) {
        let h = random_coloured_tournament(n.max(1), k, &mut seeded(seed));
        prop_assert_eq!(parse_colouring(&write_colouring(&h)).unwrap(), h);
    }

    #[test]
    fn tree_codes_ignore_labels(seed: u64, n in 1usize..12) {
        let mut r = seeded(seed);
        let t = random_oriented_tree(n, &mut r);
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut r);
        let edges = t.edges().iter().map(|&(u, v)| (p[u], p[v])).collect();
        let u = OrientedTree::new(n, edges, None).unwrap();
        prop_assert_eq!(canonical_code(&t), canonical_code(&u));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn path_ramsey_certificates(seed: u64, n in 60usize..200, len in 1usize..4) {
        let mut r = seeded(seed);
        let host = random_coloured_tournament(n, 2, &mut r);
        let path = random_path(len, &mut r);
        let out = ramsey_path_embed_tournament(&host, &path, false).unwrap();
        if let Some(e) = out.embedding {
            prop_assert!(e.verify(&host).is_ok());
        }
    }

    #[test]
    fn constructions_verify(n in 1usize..4, l in 1usize..4, k in 1usize..4) {
        let c = build_lexicographic(n, l, k).unwrap();
        prop_assert!(c.self_verify().passed());
        for i in 1..k {
            prop_assert!(c.host.class(i as u8).is_acyclic());
        }
        if k >= 2 {
            let s = if k >= 3 { Stage::BlownUp } else { Stage::Doubled };
            prop_assert!(build_layered(n, k, s).unwrap().self_verify().passed());
        }
    }
}

fn random_path(len: usize, r: &mut impl rand::Rng) -> OrientedTree {
    let dirs: Vec<bool> = (0..len).map(|_| r.gen_bool(0.5)).collect();
    OrientedTree::oriented_path(&dirs)
}
