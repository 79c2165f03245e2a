//! End-to-end acceptance checks, one runner per criterion.

use std::fmt;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{oriented_paths, oriented_paths_with_l, oriented_trees, rooted_out_trees};
use crate::constructions::{build_layered, build_lexicographic, verify_construction, Forbidden, Stage};
use crate::decompose::{check_degree_leaf_bound, is_symmetric, k_core, out_leaves, symmetric_closure};
use crate::digraph::embedding::check_map;
use crate::digraph::{has_copy, ColouredDigraph, Digraph, HostKind, OrientedTree};
use crate::engine::constants::{path_threshold, tree_vs_independent};
use crate::engine::{
    bidirected_greedy_embed, dfs_partition, embed_path_or_independent, find_mindegree_pair, ghrv_dichotomy,
    layered_embed, low_outdegree_embed, ramsey_path_embed_tournament, ramsey_tree_embed_tournament,
    tree_or_independent, DfsOutcome, ExactEmbedder, GhrvOutcome, MindegreePair, OneColourEmbedder,
    PathOrIndependent, Rational, TreeOrIndependent,
};
use crate::random::{
    random_coloured_tournament, random_digraph, random_oriented_tree, random_out_tree, random_tournament,
    random_two_coloured_complete, seeded,
};
use crate::search::{
    directed_ramsey_exact, enumerate_tournaments, oriented_ramsey_exact, SearchCaps, SearchOptions,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    /// Cannot be run at desk scale; the part reports what was run instead.
    Infeasible,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Infeasible => "INFEASIBLE",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Part {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Part {
    fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Part {
        Part { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub parts: Vec<Part>,
    pub elapsed_ms: u128,
}

impl CriterionReport {
    /// Fail if any part fails, else Infeasible if any part is, else Pass.
    pub fn status(&self) -> Status {
        if self.parts.iter().any(|p| p.status == Status::Fail) {
            Status::Fail
        } else if self.parts.iter().any(|p| p.status == Status::Infeasible) {
            Status::Infeasible
        } else {
            Status::Pass
        }
    }

    pub fn line(&self) -> String {
        let parts: Vec<String> =
            self.parts.iter().map(|p| format!("{}: {} ({})", p.name, p.status, p.detail)).collect();
        format!(
            "criterion {} {} [{}] {} ms :: {}",
            self.id,
            self.status(),
            self.title,
            self.elapsed_ms,
            parts.join("; ")
        )
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Randomized runs of criterion 4, split over the operations.
    pub randomized_runs: usize,
    pub jobs: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 2024, randomized_runs: 10_000, jobs: None }
    }
}

fn timed(id: u8, title: &'static str, f: impl FnOnce() -> Vec<Part>) -> CriterionReport {
    let start = Instant::now();
    let parts = f();
    CriterionReport { id, title, parts, elapsed_ms: start.elapsed().as_millis() }
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<CriterionReport> {
    vec![
        criterion_1(cfg),
        criterion_2(cfg),
        criterion_3(cfg),
        criterion_4(cfg),
        criterion_5(cfg),
        criterion_6(cfg),
    ]
}

fn p(n: usize) -> OrientedTree {
    OrientedTree::directed_path(n)
}

fn exact_part(name: &str, expected: usize, r: Result<crate::search::SearchResult, crate::search::SearchError>) -> Part {
    match r {
        Ok(r) => Part::check(
            name,
            r.value == Some(expected) && r.witness_verified && r.recheck_witness(),
            format!("value {:?}, expected {expected}, witness verified {}", r.value, r.witness_verified),
        ),
        Err(e) => Part::check(name, false, e.to_string()),
    }
}

fn opts(cfg: &SuiteConfig, k: usize) -> SearchOptions {
    SearchOptions { max_n: 7, caps: SearchCaps::from_env(k), jobs: cfg.jobs }
}

/// Exact oriented path values in 2-coloured tournaments.
pub fn criterion_1(cfg: &SuiteConfig) -> CriterionReport {
    timed(1, "exact RT of directed paths", || {
        vec![
            exact_part("RT(P2,2)", 2, oriented_ramsey_exact(&[p(2), p(2)], &opts(cfg, 2))),
            exact_part("RT(P3,2)", 5, oriented_ramsey_exact(&[p(3), p(3)], &opts(cfg, 2))),
        ]
    })
}

/// Exact directed path values in 2-coloured complete digraphs.
pub fn criterion_2(cfg: &SuiteConfig) -> CriterionReport {
    timed(2, "exact R of directed paths", || {
        vec![
            exact_part("R(P3,P3)", 3, directed_ramsey_exact(&[p(3), p(3)], &opts(cfg, 2))),
            exact_part("R(P3,P4)", 4, directed_ramsey_exact(&[p(3), p(4)], &opts(cfg, 2))),
            exact_part("R(P4,P4)", 5, directed_ramsey_exact(&[p(4), p(4)], &opts(cfg, 2))),
        ]
    })
}

/// Lexicographic and layered lower-bound constructions.
pub fn criterion_3(_cfg: &SuiteConfig) -> CriterionReport {
    timed(3, "lower-bound constructions", || {
        let mut cases = Vec::new();
        for n in 1..=4 {
            for l in 1..=3 {
                for k in 1..=3 {
                    cases.push((n, l, k));
                }
            }
        }
        let lex: Vec<(usize, usize, usize, bool, usize)> = cases
            .par_iter()
            .map(|&(n, l, k)| {
                let c = match build_lexicographic(n, l, k) {
                    Ok(c) => c,
                    Err(_) => return (n, l, k, false, 0),
                };
                let paths = oriented_paths_with_l(n, l);
                let bounds: Vec<Forbidden> =
                    paths.iter().map(|t| Forbidden::Tree { colour: None, tree: t.clone() }).collect();
                let ok = c.host.order() == n * l.pow(k as u32 - 1)
                    && c.self_verify().passed()
                    && verify_construction(&c.host, &bounds).passed()
                    && (1..k).all(|i| c.host.class(i as u8).is_acyclic());
                (n, l, k, ok, paths.len())
            })
            .collect();
        let failed: Vec<String> =
            lex.iter().filter(|c| !c.3).map(|c| format!("({},{},{})", c.0, c.1, c.2)).collect();
        let checked: usize = lex.iter().map(|c| c.4).sum();
        let vacuous = lex.iter().filter(|c| c.4 == 0).count();
        let mut parts = vec![Part::check(
            "lexicographic n<=4 l<=3 k<=3",
            failed.is_empty(),
            format!(
                "{} triples, {checked} path checks, {vacuous} triples with no path of that l, failures {:?}",
                lex.len(),
                failed
            ),
        )];

        let mut layered = Vec::new();
        for n in 1..=3 {
            for k in 2..=3 {
                let stages: &[Stage] =
                    if k >= 3 { &[Stage::Base, Stage::Doubled, Stage::BlownUp] } else { &[Stage::Base, Stage::Doubled] };
                for &s in stages {
                    let ok = build_layered(n, k, s).map(|c| c.self_verify().passed()).unwrap_or(false);
                    layered.push((n, k, s, ok));
                }
            }
        }
        let bad: Vec<String> =
            layered.iter().filter(|c| !c.3).map(|c| format!("({},{},{:?})", c.0, c.1, c.2)).collect();
        parts.push(Part::check(
            "layered n<=3 k<=3 no monochromatic path of length 2n",
            bad.is_empty(),
            format!("{} stage builds, failures {:?}", layered.len(), bad),
        ));
        parts
    })
}

/// What one randomized run produced.
#[derive(Clone, Copy, Debug, Default)]
struct RunTally {
    runs: usize,
    invalid: usize,
    misses: usize,
}

impl RunTally {
    fn merge(self, o: RunTally) -> RunTally {
        RunTally { runs: self.runs + o.runs, invalid: self.invalid + o.invalid, misses: self.misses + o.misses }
    }
}

type Op = fn(&mut rand_chacha::ChaCha8Rng) -> Result<bool, String>;

/// Operations run at or above their guarantee, with their share of the runs
/// (per ten thousand). `Ok(false)` marks a flagged miss.
const OPS: &[(&str, u32, Op)] = &[
    ("find_mindegree_pair", 2500, op_mindegree),
    ("ghrv_dichotomy", 1500, op_ghrv),
    ("embed_path_or_independent", 1500, op_path_indep),
    ("dfs_partition", 1000, op_dfs),
    ("bidirected_greedy_embed", 1000, op_bidirected),
    ("low_outdegree_embed", 700, op_low_outdegree),
    ("layered_embed", 500, op_layered),
    ("tree_or_independent", 1100, op_tree_indep),
    ("ramsey_path_embed_tournament", 200, op_path_ramsey),
];

fn op_mindegree(r: &mut rand_chacha::ChaCha8Rng) -> Result<bool, String> {
    loop {
        let n = r.gen_range(2..=60);
        let g = random_digraph(n, r.gen_range(0.05..0.9), r);
        let e = g.edge_count();
        if e == 0 {
            continue;
        }
        let eps = Rational::new(2 * e as u64, (n * (n - 1)) as u64);
        let pair = find_mindegree_pair(&g, eps).map_err(|e| e.to_string())?;
        let expected = (2 * e * n).div_ceil(8 * n * (n - 1));
        if !pair.check(&g) || pair.threshold != expected {
            return Err(format!("bad pair on n={n}"));
        }
        return Ok(true);
    }
}

fn op_ghrv(r: &mut rand_chacha::ChaCha8Rng) -> Result<bool, String> {
    let n = r.gen_range(1..=50);
    let g = random_digraph(n, r.gen_range(0.0..0.6), r);
    let length = r.gen_range(0..=6);
    match ghrv_dichotomy(&g, length) {
        GhrvOutcome::Path(p) if p.len() > length && g.is_directed_path(&p) => Ok(true),
        GhrvOutcome::Independent(s) if length >= 1 && g.is_independent(&s) && s.len() * length >= n => Ok(true),
        other => Err(format!("bad dichotomy {other:?}")),
    }
}

fn density_pair(r: &mut rand_chacha::ChaCha8Rng, min_threshold: usize) -> (Digraph, MindegreePair) {
    loop {
        let n = r.gen_range(40..=80);
        let g = random_digraph(n, r.gen_range(0.3..0.7), r);
        let eps = Rational::new(2 * g.edge_count() as u64, (n * (n - 1)) as u64);
        if let Ok(pair) = find_mindegree_pair(&g, eps) {
            if pair.threshold >= min_threshold {
                return (g, pair);
            }
        }
    }
}

fn op_path_indep(r: &mut rand_chacha::ChaCha8Rng) -> Result<bool, String> {
    let (g, pair) = density_pair(r, 2);
    let len = r.gen_range(1..pair.threshold.min(7));
    let paths = oriented_paths(len);
    let mut path = paths.choose(r).expect("paths exist").clone();
    if r.gen_bool(0.5) {
        path = path.reversed();
    }
    let l = crate::decompose::longest_directed_subpath(&path).map_err(|e| e.to_string())?;
    match embed_path_or_independent(&g, &pair, &path).map_err(|e| e.to_string())? {
        PathOrIndependent::Embedded(map) => check_map(&path, &map, &g).map(|_| true).map_err(|e| e.to_string()),
        PathOrIndependent::Independent(s) => {
            let bound = (pair.threshold - len).div_ceil(l.max(1));
            if g.is_independent(&s) && s.len() >= bound {
                Ok(true)
            } else {
                Err(format!("independent set of size {} below {bound}", s.len()))
            }
        }
    }
}

fn op_dfs(r: &mut rand_chacha::ChaCha8Rng) -> Result<bool, String> {
    let n = r.gen_range(1..=40);
    let g = random_digraph(n, r.gen_range(0.0..0.5), r);
    let tree = random_out_tree(r.gen_range(1..=8), r);
    let run = dfs_partition(&g, &tree).map_err(|e| e.to_string())?;
    if run.steps > (n / 2 + 1) * tree.order() {
        return Err(format!("{} steps", run.steps));
    }
    match run.outcome {
        DfsOutcome::Embedded(map) => check_map(&tree, &map, &g).map(|_| true).map_err(|e| e.to_string()),
        DfsOutcome::Partition(part) if part.check(&g, &tree) => Ok(true),
        DfsOutcome::Partition(part) => Err(format!("bad partition {part:?}")),
    }
}

fn op_bidirected(r: &mut rand_chacha::ChaCha8Rng) -> Result<bool, String> {
    loop {
        let n = r.gen_range(4..=40);
        let host = random_two_coloured_complete(n, r.gen_range(0.6..1.0), r);
        let pairs = (n * (n - 1) / 2) as u64;
        let e = host.class(1).edge_count() as u64;
        if e <= pairs {
            continue;
        }
        let eps = Rational::new(e - pairs, pairs);
        let t = (eps * Rational::from_integer(n as u64) / Rational::from_integer(2)).ceil().to_integer() as usize;
        let tree = random_oriented_tree(r.gen_range(1..=t.clamp(1, 8)), r);
        let emb = bidirected_greedy_embed(&host, 1, eps, &tree).map_err(|e| e.to_string())?;
        return emb.verify(&host).map(|_| true).map_err(|e| e.to_string());
    }
}

fn op_low_outdegree(r: &mut rand_chacha::ChaCha8Rng) -> Result<bool, String> {
    let k = r.gen_range(0..=3);
    let l = r.gen_range(1..=4);
    let size = 2 * k + 2 * l;
    let n = size + r.gen_range(0..=20);
    let mut red = vec![false; n * n];
    for u in 0..n {
        if u < size {
            let mut others: Vec<usize> = (0..n).filter(|&v| v != u).collect();
            others.shuffle(r);
            for &v in others.iter().take(r.gen_range(0..=k)) {
                red[u * n + v] = true;
            }
        } else {
            for v in 0..n {
                red[u * n + v] = u != v && r.gen_bool(0.5);
            }
        }
    }
    let host = ColouredDigraph::complete_from_fn(n, 2, |u, v| if red[u * n + v] { 1 } else { 2 })
        .map_err(|e| e.to_string())?;
    let tree = random_oriented_tree(r.gen_range(1..=l), r);
    let emb = low_outdegree_embed(&host, 1, k, l, &tree).map_err(|e| e.to_string())?;
    emb.verify(&host).map(|_| true).map_err(|e| e.to_string())
}

fn op_layered(r: &mut rand_chacha::ChaCha8Rng) -> Result<bool, String> {
    let n = r.gen_range(100..=140);
    let g = random_tournament(n, r);
    let host = ColouredDigraph::monochromatic(&g, HostKind::Tournament);
    let pair = find_mindegree_pair(&g, Rational::from_integer(1)).map_err(|e| e.to_string())?;
    let pair = MindegreePair { colour: Some(1), ..pair };
    let tree = random_oriented_tree(r.gen_range(1..=4), r);
    let root = r.gen_range(0..tree.order());
    let out = layered_embed(&host, 1, &pair, &tree, root, &ExactEmbedder::for_tournaments())
        .map_err(|e| e.to_string())?;
    match out.embedding {
        Some(e) if out.guaranteed => e.verify(&host).map(|_| true).map_err(|e| e.to_string()),
        Some(_) => Err("threshold below the guarantee".into()),
        None => Err("no embedding".into()),
    }
}

fn op_tree_indep(r: &mut rand_chacha::ChaCha8Rng) -> Result<bool, String> {
    loop {
        let n = r.gen_range(20..=200);
        let tree = random_out_tree(r.gen_range(1..=6), r);
        let closure = symmetric_closure(&tree).map_err(|e| e.to_string())?;
        let per = tree_vs_independent(out_leaves(&closure.tree)) * closure.tree.order();
        let m = n / per;
        if m == 0 {
            continue;
        }
        let g = random_digraph(n, r.gen_range(0.0..0.1), r);
        return match tree_or_independent(&g, &tree, m).map_err(|e| e.to_string())? {
            TreeOrIndependent::Embedded(map) => check_map(&tree, &map, &g).map(|_| true).map_err(|e| e.to_string()),
            TreeOrIndependent::Independent(s) if s.len() == m && g.is_independent(&s) => Ok(true),
            TreeOrIndependent::Independent(s) => Err(format!("bad independent set {s:?}")),
        };
    }
}

fn op_path_ramsey(r: &mut rand_chacha::ChaCha8Rng) -> Result<bool, String> {
    let n = r.gen_range(1..=3);
    let l = r.gen_range(1..=n.min(2));
    let path = oriented_paths_with_l(n, l).choose(r).expect("paths exist").clone();
    let order = path_threshold(2, n, l) as usize;
    let host = if r.gen_bool(0.5) {
        random_coloured_tournament(order, 2, r)
    } else {
        // a skewed colouring: one colour dominates
        let bias = r.gen_range(0.8..0.98);
        let g = random_tournament(order, r);
        let edges: Vec<_> = g.edges().map(|(u, v)| (u, v, if r.gen_bool(bias) { 1 } else { 2 })).collect();
        ColouredDigraph::from_edges(order, 2, HostKind::Tournament, edges).map_err(|e| e.to_string())?
    };
    let out = ramsey_path_embed_tournament(&host, &path, false).map_err(|e| e.to_string())?;
    if !out.guaranteed {
        return Err(format!("order {order} below threshold {:?}", out.threshold));
    }
    match &out.embedding {
        Some(e) => e.verify(&host).map_err(|e| e.to_string())?,
        None => return Err("no copy at threshold".into()),
    }
    Ok(out.guarantee_held())
}

fn op_tree_ramsey(r: &mut rand_chacha::ChaCha8Rng) -> Result<bool, String> {
    let n = r.gen_range(20..=50);
    let host = random_coloured_tournament(n, 2, r);
    let trees = vec![random_oriented_tree(r.gen_range(2..=4), r), random_oriented_tree(r.gen_range(2..=4), r)];
    let l = r.gen_range(0..=2);
    let out = ramsey_tree_embed_tournament(&host, &trees, l, false).map_err(|e| e.to_string())?;
    match &out.embedding {
        Some(e) => e.verify(&host).map(|_| true).map_err(|e| e.to_string()),
        None => Ok(true),
    }
}

fn run_op(seed: u64, op_index: usize, runs: usize, op: Op) -> (RunTally, Vec<String>) {
    let results: Vec<Result<bool, String>> = (0..runs)
        .into_par_iter()
        .map(|i| {
            let mut r = seeded(seed ^ ((op_index as u64) << 40) ^ i as u64);
            op(&mut r)
        })
        .collect();
    let mut tally = RunTally { runs, ..RunTally::default() };
    let mut errors = Vec::new();
    for res in results {
        match res {
            Ok(true) => {}
            Ok(false) => tally.misses += 1,
            Err(e) => {
                tally.invalid += 1;
                if errors.len() < 3 {
                    errors.push(e);
                }
            }
        }
    }
    (tally, errors)
}

/// Embedder soundness at or above the guarantee thresholds.
pub fn criterion_4(cfg: &SuiteConfig) -> CriterionReport {
    timed(4, "embedder soundness", || {
        let mut total = RunTally::default();
        let mut details = Vec::new();
        let mut errors = Vec::new();
        for (i, &(name, share, op)) in OPS.iter().enumerate() {
            let runs = (cfg.randomized_runs * share as usize).div_ceil(10_000);
            let (t, e) = run_op(cfg.seed, i, runs, op);
            details.push(format!("{name} {}/{}/{}", t.runs, t.invalid, t.misses));
            errors.extend(e.into_iter().map(|e| format!("{name}: {e}")));
            total = total.merge(t);
        }
        let mut parts = vec![Part::check(
            "randomized at threshold",
            total.invalid == 0 && total.misses == 0 && total.runs >= cfg.randomized_runs,
            format!(
                "{} runs, {} invalid certificates, {} flagged misses [runs/invalid/misses: {}]{}",
                total.runs,
                total.invalid,
                total.misses,
                details.join(", "),
                if errors.is_empty() { String::new() } else { format!(" first errors: {}", errors.join(" | ")) }
            ),
        )];
        let best_effort = (cfg.randomized_runs / 30).max(10);
        let (t, e) = run_op(cfg.seed, OPS.len(), best_effort, op_tree_ramsey);
        parts.push(Part::check(
            "ramsey_tree_embed_tournament best-effort",
            t.invalid == 0,
            format!("{} runs below the (unreachable) threshold, {} invalid certificates {:?}", t.runs, t.invalid, e),
        ));
        let min_order = path_threshold(2, 1, 1);
        parts.push(Part {
            name: "exhaustive path Ramsey k=2 n<=3 l<=2 at threshold".into(),
            status: Status::Infeasible,
            detail: format!(
                "threshold orders are {min_order}..{}; all tournaments on {min_order} vertices cannot be enumerated",
                path_threshold(2, 3, 2)
            ),
        });
        parts
    })
}

fn rooted_oriented_trees(max_order: usize) -> Vec<OrientedTree> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        for t in oriented_trees(n) {
            for r in 0..n {
                out.push(t.clone().with_root(r).expect("root in range"));
            }
        }
    }
    out
}

fn tree_digraph(t: &OrientedTree) -> Digraph {
    Digraph::from_edges(t.order(), t.edges().iter().copied())
}

/// Structural lemmas over every small tree and random partitions.
pub fn criterion_5(cfg: &SuiteConfig) -> CriterionReport {
    timed(5, "structural property suites", || {
        let rooted = rooted_oriented_trees(8);
        let core_bad: usize = rooted
            .par_iter()
            .map(|t| {
                (1..=t.order() + 1)
                    .filter(|&k| match k_core(t, k) {
                        Ok(core) => {
                            core.tree.leaf_count() > k
                                || core.vertices[0] != t.root().expect("rooted")
                                || check_map(&core.tree, &core.vertices, &tree_digraph(t)).is_err()
                        }
                        Err(_) => false,
                    })
                    .count()
            })
            .sum();
        let mut parts = vec![Part::check(
            "k_core leaf bound",
            core_bad == 0,
            format!("{} rooted trees of order <= 8, all k, {core_bad} violations", rooted.len()),
        )];

        let out_trees: Vec<OrientedTree> = (1..=8).flat_map(rooted_out_trees).collect();
        let closure_bad = out_trees
            .iter()
            .filter(|t| {
                let Ok(c) = symmetric_closure(t) else { return true };
                let l = out_leaves(t);
                let ll = l.pow(l as u32);
                c.tree.order() > ll * t.order()
                    || out_leaves(&c.tree) > ll
                    || !is_symmetric(&c.tree)
                    || check_map(t, &c.input_map, &tree_digraph(&c.tree)).is_err()
            })
            .count();
        parts.push(Part::check(
            "symmetric_closure bounds and containment",
            closure_bad == 0,
            format!("{} out-trees of order <= 8, {closure_bad} violations", out_trees.len()),
        ));

        let mut subsets = 0usize;
        let mut leaf_bad = 0usize;
        for t in &out_trees {
            for mask in 0u32..1 << t.order() {
                let vs: Vec<usize> = (0..t.order()).filter(|&v| mask >> v & 1 == 1).collect();
                subsets += 1;
                if check_degree_leaf_bound(t, &vs) != Ok(true) {
                    leaf_bad += 1;
                }
            }
        }
        parts.push(Part::check(
            "degree-leaf inequality",
            leaf_bad == 0,
            format!("{subsets} vertex subsets, {leaf_bad} violations"),
        ));

        let (t, e) = run_op(cfg.seed ^ 0xd15, 0, 1000, op_dfs);
        parts.push(Part::check(
            "dfs_partition invariants",
            t.invalid == 0,
            format!("{} random instances, {} violations {:?}", t.runs, t.invalid, e),
        ));
        parts
    })
}

/// Small-scale Sumner (2n-2) and El Sahili (3n-3) checks.
pub fn criterion_6(cfg: &SuiteConfig) -> CriterionReport {
    timed(6, "Sumner and El Sahili at small scale", || {
        let mut parts = Vec::new();
        for n in 2..=5 {
            let order = 2 * n - 2;
            let hosts = enumerate_tournaments(order, 8).expect("order <= 8");
            let trees = oriented_trees(n);
            let misses: usize =
                hosts.par_iter().map(|g| trees.iter().filter(|t| !has_copy(g, t)).count()).sum();
            parts.push(Part::check(
                format!("Sumner n={n}"),
                misses == 0,
                format!("{} tournaments on {order} x {} trees, {misses} misses", hosts.len(), trees.len()),
            ));
        }

        let embedder = ExactEmbedder::for_tournaments();
        let el_sahili = |g: &Digraph, trees: &[OrientedTree]| -> usize {
            let mut all = FixedBitSet::with_capacity(g.order());
            all.insert_range(..);
            trees
                .iter()
                .filter(|t| {
                    let guaranteed = embedder.required_host_order(t).is_some_and(|req| g.order() >= req);
                    let found = embedder.embed(g, &all, t);
                    !guaranteed || found.map_or(true, |m| check_map(t, &m, g).is_err())
                })
                .count()
        };
        for n in 2..=4 {
            let order = 3 * n - 3;
            let hosts = enumerate_tournaments(order, 9).expect("order <= 9");
            let trees = oriented_trees(n);
            let misses: usize = hosts.par_iter().map(|g| el_sahili(g, &trees)).sum();
            parts.push(Part::check(
                format!("El Sahili n={n}"),
                misses == 0,
                format!("{} tournaments on {order} x {} trees, {misses} failures", hosts.len(), trees.len()),
            ));
        }
        let trees = oriented_trees(5);
        let samples = 2000;
        let misses: usize = (0..samples)
            .into_par_iter()
            .map(|i| el_sahili(&random_tournament(12, &mut seeded(cfg.seed ^ 0xe1 ^ (i << 20))), &trees))
            .sum();
        parts.push(Part {
            name: "El Sahili n=5".into(),
            status: if misses == 0 { Status::Infeasible } else { Status::Fail },
            detail: format!(
                "12-vertex tournaments cannot be enumerated; the exact embedder finds a copy whenever one \
                 exists and every 12-vertex tournament contains an 8-vertex one (Sumner n=5 above); \
                 {samples} random samples x {} trees, {misses} failures",
                trees.len()
            ),
        });
        parts
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_suite_runs() {
        let cfg = SuiteConfig { seed: 7, randomized_runs: 300, jobs: None };
        let r = criterion_4(&cfg);
        assert_ne!(r.status(), Status::Fail, "{}", r.line());
        let r = criterion_3(&cfg);
        assert_eq!(r.status(), Status::Pass, "{}", r.line());
    }

    #[test]
    fn status_precedence() {
        let mk = |s| Part { name: "x".into(), status: s, detail: String::new() };
        let r = CriterionReport { id: 9, title: "t", parts: vec![mk(Status::Pass), mk(Status::Infeasible)], elapsed_ms: 0 };
        assert_eq!(r.status(), Status::Infeasible);
        let r = CriterionReport { parts: vec![mk(Status::Infeasible), mk(Status::Fail)], ..r };
        assert_eq!(r.status(), Status::Fail);
        assert!(r.line().starts_with("criterion 9 FAIL"));
    }
}
