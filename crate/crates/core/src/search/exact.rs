//! Branch-and-bound over edge colourings, host by host and order by order.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::canon::canonical_form;
use super::{extend_tournaments, SearchError, MAX_TOURNAMENT_LIMIT};
use crate::catalog::canonical_code;
use crate::constructions::{verify_construction, Forbidden};
use crate::digraph::{has_copy, ColouredDigraph, Colour, Digraph, HostKind, OrientedTree, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HostFamily {
    /// Every tournament on `n` vertices.
    Tournaments,
    /// The complete digraph on `n` vertices, both orientations coloured
    /// independently.
    CompleteDigraphs,
}

/// Largest host order searched before giving up as inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchCaps {
    pub max_tournament: usize,
    pub max_digraph: usize,
}

impl SearchCaps {
    pub const TOURNAMENT_ENV: &'static str = "DIRRAMSEY_MAX_TOURNAMENT";
    pub const DIGRAPH_ENV: &'static str = "DIRRAMSEY_MAX_DIGRAPH";

    pub fn default_for(k: usize) -> Self {
        match k {
            0 | 1 => SearchCaps { max_tournament: 8, max_digraph: 8 },
            2 => SearchCaps { max_tournament: 7, max_digraph: 6 },
            3 => SearchCaps { max_tournament: 5, max_digraph: 4 },
            _ => SearchCaps { max_tournament: 4, max_digraph: 3 },
        }
    }

    /// Defaults overridden by the environment, tournaments clamped to the
    /// enumeration ceiling.
    pub fn from_env(k: usize) -> Self {
        let mut caps = Self::default_for(k);
        let read = |name: &str| std::env::var(name).ok().and_then(|v| v.trim().parse::<usize>().ok());
        if let Some(t) = read(Self::TOURNAMENT_ENV) {
            caps.max_tournament = t;
        }
        if let Some(d) = read(Self::DIGRAPH_ENV) {
            caps.max_digraph = d;
        }
        caps.max_tournament = caps.max_tournament.min(MAX_TOURNAMENT_LIMIT);
        caps
    }

    fn for_family(&self, family: HostFamily) -> usize {
        match family {
            HostFamily::Tournaments => self.max_tournament,
            HostFamily::CompleteDigraphs => self.max_digraph,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub max_n: usize,
    pub caps: SearchCaps,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl SearchOptions {
    pub fn new(max_n: usize, k: usize) -> Self {
        SearchOptions { max_n, caps: SearchCaps::from_env(k), jobs: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrderStats {
    pub n: usize,
    pub hosts: usize,
    /// A colouring avoiding every target was found.
    pub avoided: bool,
}

/// Work counters. Totals depend on scheduling when several workers race to
/// an avoiding colouring; with one job they are reproducible.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub hosts_enumerated: u64,
    pub colourings_tested: u64,
    pub nodes: u64,
    pub copy_prunes: u64,
    pub symmetry_prunes: u64,
    pub per_order: Vec<OrderStats>,
}

impl SearchStats {
    fn add(&mut self, o: &Counters) {
        self.colourings_tested += o.leaves;
        self.nodes += o.nodes;
        self.copy_prunes += o.copy_prunes;
        self.symmetry_prunes += o.symmetry_prunes;
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub family: HostFamily,
    pub targets: Vec<OrientedTree>,
    pub k: usize,
    /// Least order forcing some colour-`i` copy of `T_i`, if reached.
    pub value: Option<usize>,
    /// The value is at least this.
    pub lower_bound: usize,
    /// Colouring of order `lower_bound - 1` avoiding every target.
    pub witness: Option<ColouredDigraph>,
    /// The witness passed the per-colour containment oracle.
    pub witness_verified: bool,
    pub stats: SearchStats,
    pub inconclusive: Option<String>,
}

impl SearchResult {
    pub fn is_conclusive(&self) -> bool {
        self.value.is_some()
    }

    /// Re-runs the containment oracle on the witness.
    pub fn recheck_witness(&self) -> bool {
        match &self.witness {
            None => self.lower_bound <= 1,
            Some(w) => witness_avoids(w, &self.targets),
        }
    }

    pub fn to_json(&self, target_labels: &[String], witness_file: Option<&str>) -> Value {
        json!({
            "family": self.family,
            "targets": target_labels,
            "k": self.k,
            "value": self.value,
            "lower_bound": self.lower_bound,
            "witness_file": witness_file,
            "witness_verified": self.witness_verified,
            "inconclusive": self.inconclusive,
            "stats": self.stats,
        })
    }
}

fn witness_avoids(w: &ColouredDigraph, targets: &[OrientedTree]) -> bool {
    let bounds: Vec<Forbidden> = targets
        .iter()
        .enumerate()
        .map(|(i, t)| Forbidden::Tree { colour: Some(i as Colour + 1), tree: t.clone() })
        .collect();
    verify_construction(w, &bounds).passed()
}

/// `RT(T_1, ..., T_k)`: least `n` such that every `k`-coloured tournament on
/// `n` vertices has a colour-`i` copy of `T_i` for some `i`.
pub fn oriented_ramsey_exact(targets: &[OrientedTree], opts: &SearchOptions) -> Result<SearchResult, SearchError> {
    search(HostFamily::Tournaments, targets, opts)
}

/// `R(T_1, ..., T_k)` over `k`-colourings of complete digraphs.
pub fn directed_ramsey_exact(targets: &[OrientedTree], opts: &SearchOptions) -> Result<SearchResult, SearchError> {
    search(HostFamily::CompleteDigraphs, targets, opts)
}

fn search(family: HostFamily, targets: &[OrientedTree], opts: &SearchOptions) -> Result<SearchResult, SearchError> {
    let k = targets.len();
    if k == 0 || k > Colour::MAX as usize {
        return Err(SearchError::Parameter(format!("{k} targets")));
    }
    if opts.max_n == 0 {
        return Err(SearchError::Parameter("max-n must be positive".into()));
    }
    let pool = match opts.jobs {
        Some(j) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| SearchError::Parameter(e.to_string()))?,
        ),
        None => None,
    };
    let colour_perms = colour_symmetries(targets);
    let cap = opts.caps.for_family(family);

    let mut stats = SearchStats::default();
    let mut lower_bound = 1;
    let mut witness = None;
    let mut value = None;
    let mut inconclusive = None;
    let mut tournaments: Vec<Digraph> = vec![Digraph::empty(1)];
    for n in 1..=opts.max_n {
        if n > cap {
            inconclusive = Some(format!("order {n} exceeds the resource cap {cap}"));
            break;
        }
        let hosts = match family {
            HostFamily::Tournaments => {
                if n >= 2 {
                    tournaments = extend_tournaments(&tournaments, n);
                }
                tournaments.clone()
            }
            HostFamily::CompleteDigraphs => vec![Digraph::complete(n)],
        };
        stats.hosts_enumerated += hosts.len() as u64;
        let mut run = || search_order(&hosts, targets, &colour_perms, &mut stats);
        let found = match &pool {
            Some(p) => p.install(run),
            None => run(),
        };
        stats.per_order.push(OrderStats { n, hosts: hosts.len(), avoided: found.is_some() });
        match found {
            Some((h, colours)) => {
                let kind = match family {
                    HostFamily::Tournaments => HostKind::Tournament,
                    HostFamily::CompleteDigraphs => HostKind::CompleteDigraph,
                };
                let edges = hosts[h].edges().zip(colours).map(|((u, v), c)| (u, v, c));
                witness = Some(ColouredDigraph::from_edges(n, k, kind, edges).expect("edges of a host"));
                lower_bound = n + 1;
            }
            None => {
                value = Some(n);
                break;
            }
        }
    }
    if value.is_none() && inconclusive.is_none() {
        inconclusive = Some(format!("no forcing order up to max-n {}", opts.max_n));
    }
    let witness_verified = match &witness {
        Some(w) => witness_avoids(w, targets),
        None => lower_bound <= 1,
    };
    Ok(SearchResult {
        family,
        targets: targets.to_vec(),
        k,
        value,
        lower_bound,
        witness,
        witness_verified,
        stats,
        inconclusive,
    })
}

/// Colour permutations (`tau[c]`, index 0 unused) that map each target to an
/// isomorphic one.
fn colour_symmetries(targets: &[OrientedTree]) -> Vec<Vec<Colour>> {
    let k = targets.len();
    let codes: Vec<String> = targets.iter().map(canonical_code).collect();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    permute(&mut perm, 0, &mut |p| {
        if (0..k).all(|i| codes[i] == codes[p[i]]) {
            let mut tau = vec![0 as Colour; k + 1];
            for i in 0..k {
                tau[i + 1] = p[i] as Colour + 1;
            }
            out.push(tau);
        }
    });
    out
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

#[derive(Clone, Debug, Default)]
struct Counters {
    leaves: u64,
    nodes: u64,
    copy_prunes: u64,
    symmetry_prunes: u64,
}

/// A host with its edge list and the symmetry group acting on colourings.
struct Prepared {
    g: Digraph,
    edges: Vec<(Vertex, Vertex)>,
    /// `(pinv, tau)`: the image colouring is `tau[c[pinv[f]]]` at edge `f`.
    group: Vec<(Vec<usize>, Vec<Colour>)>,
}

fn prepare(g: &Digraph, colour_perms: &[Vec<Colour>]) -> Prepared {
    let n = g.order();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut index = vec![usize::MAX; n * n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        index[u * n + v] = i;
    }
    let canon = canonical_form(g);
    let mut group = Vec::new();
    for sigma in &canon.automorphisms {
        let identity = sigma.iter().enumerate().all(|(i, &s)| i == s);
        let mut pinv = vec![0; edges.len()];
        for (e, &(u, v)) in edges.iter().enumerate() {
            pinv[index[sigma[u] * n + sigma[v]]] = e;
        }
        for tau in colour_perms {
            let tau_identity = tau.iter().enumerate().skip(1).all(|(i, &t)| i == t as usize);
            if identity && tau_identity {
                continue;
            }
            group.push((pinv.clone(), tau.clone()));
        }
    }
    Prepared { g: g.clone(), edges, group }
}

/// Splits each host into tasks by a fixed-length colour prefix and searches
/// them in parallel. Returns the first avoiding colouring in (host, colour
/// vector) order, independent of scheduling.
fn search_order(
    hosts: &[Digraph],
    targets: &[OrientedTree],
    colour_perms: &[Vec<Colour>],
    stats: &mut SearchStats,
) -> Option<(usize, Vec<Colour>)> {
    let k = targets.len();
    let n = hosts.first().map_or(0, Digraph::order);
    // A target that fits with no edges at all is present in every colouring.
    if targets.iter().any(|t| has_copy(&Digraph::empty(n), t)) {
        return None;
    }
    let prepared: Vec<Prepared> = hosts.par_iter().map(|g| prepare(g, colour_perms)).collect();
    let mut tasks: Vec<(usize, Vec<Colour>)> = Vec::new();
    for (h, p) in prepared.iter().enumerate() {
        let mut len = 0;
        while len < p.edges.len() && k.pow(len as u32) < 64 {
            len += 1;
        }
        for idx in 0..k.pow(len as u32) {
            let mut prefix = vec![0 as Colour; len];
            let mut x = idx;
            for d in (0..len).rev() {
                prefix[d] = (x % k) as Colour + 1;
                x /= k;
            }
            tasks.push((h, prefix));
        }
    }
    let first = AtomicUsize::new(usize::MAX);
    let results: Vec<(Option<Vec<Colour>>, Counters)> = tasks
        .par_iter()
        .enumerate()
        .map(|(i, (h, prefix))| {
            let mut run = Dfs::new(&prepared[*h], targets, prefix, &first, i);
            let found = run.dfs(0);
            if found {
                first.fetch_min(i, Ordering::SeqCst);
            }
            (found.then(|| run.colour.clone()), run.counters)
        })
        .collect();
    let mut best = None;
    for (i, (found, c)) in results.into_iter().enumerate() {
        stats.add(&c);
        if best.is_none() {
            if let Some(col) = found {
                best = Some((tasks[i].0, col));
            }
        }
    }
    best
}

struct Dfs<'a> {
    host: &'a Prepared,
    targets: &'a [OrientedTree],
    prefix: &'a [Colour],
    first: &'a AtomicUsize,
    task: usize,
    classes: Vec<Digraph>,
    colour: Vec<Colour>,
    counters: Counters,
}

impl<'a> Dfs<'a> {
    fn new(
        host: &'a Prepared,
        targets: &'a [OrientedTree],
        prefix: &'a [Colour],
        first: &'a AtomicUsize,
        task: usize,
    ) -> Self {
        let n = host.g.order();
        Dfs {
            host,
            targets,
            prefix,
            first,
            task,
            classes: vec![Digraph::empty(n); targets.len()],
            colour: vec![0; host.edges.len()],
            counters: Counters::default(),
        }
    }

    /// Some image of the partial colouring on `0..=d` is already smaller.
    fn dominated(&self, d: usize) -> bool {
        'group: for (pinv, tau) in &self.host.group {
            for f in 0..=d {
                let src = pinv[f];
                if src > d {
                    continue 'group;
                }
                let img = tau[self.colour[src] as usize];
                if img < self.colour[f] {
                    return true;
                }
                if img > self.colour[f] {
                    continue 'group;
                }
            }
        }
        false
    }

    fn dfs(&mut self, d: usize) -> bool {
        if d == self.colour.len() {
            self.counters.leaves += 1;
            return true;
        }
        if self.first.load(Ordering::Relaxed) < self.task {
            return false;
        }
        let (u, v) = self.host.edges[d];
        let choices: Vec<Colour> = match self.prefix.get(d) {
            Some(&c) => vec![c],
            None => (1..=self.targets.len() as Colour).collect(),
        };
        for c in choices {
            self.counters.nodes += 1;
            self.colour[d] = c;
            if self.dominated(d) {
                self.counters.symmetry_prunes += 1;
                continue;
            }
            let ci = c as usize - 1;
            self.classes[ci].add_edge(u, v);
            if has_copy(&self.classes[ci], &self.targets[ci]) {
                self.counters.copy_prunes += 1;
            } else if self.dfs(d + 1) {
                return true;
            }
            self.classes[ci].remove_edge(u, v);
        }
        self.colour[d] = 0;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named_target;

    fn p(n: usize) -> OrientedTree {
        OrientedTree::directed_path(n)
    }

    fn opts(max_n: usize, k: usize) -> SearchOptions {
        SearchOptions { max_n, caps: SearchCaps::default_for(k), jobs: None }
    }

    fn rt(targets: &[OrientedTree], max_n: usize) -> SearchResult {
        let r = oriented_ramsey_exact(targets, &opts(max_n, targets.len())).unwrap();
        assert!(r.witness_verified);
        assert!(r.recheck_witness());
        r
    }

    fn r(targets: &[OrientedTree], max_n: usize) -> SearchResult {
        let r = directed_ramsey_exact(targets, &opts(max_n, targets.len())).unwrap();
        assert!(r.witness_verified);
        r
    }

    /// Exhaustive check over every labelled colouring of every labelled
    /// host, no symmetry, no pruning.
    fn brute_avoidable(family: HostFamily, targets: &[OrientedTree], n: usize) -> bool {
        let k = targets.len() as u64;
        let hosts: Vec<Digraph> = match family {
            HostFamily::Tournaments => {
                let m = n * (n - 1) / 2;
                (0..1u64 << m).map(|mask| crate::search::canon::tests::labelled_tournament(n, mask)).collect()
            }
            HostFamily::CompleteDigraphs => vec![Digraph::complete(n)],
        };
        for g in hosts {
            let edges: Vec<_> = g.edges().collect();
            let total = k.pow(edges.len() as u32);
            for mut x in 0..total {
                let mut classes = vec![Digraph::empty(n); targets.len()];
                for &(u, v) in &edges {
                    classes[(x % k) as usize].add_edge(u, v);
                    x /= k;
                }
                if classes.iter().zip(targets).all(|(c, t)| !has_copy(c, t)) {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn oriented_path_values() {
        assert_eq!(rt(&[p(2), p(2)], 6).value, Some(2));
        assert_eq!(rt(&[p(3), p(3)], 6).value, Some(5));
        assert_eq!(rt(&[p(2)], 4).value, Some(2));
        assert_eq!(rt(&[named_target("outstar3").unwrap()], 6).value, Some(4));
        // (n-1)^k + 1 for one colour
        assert_eq!(rt(&[p(4)], 6).value, Some(4));
    }

    #[test]
    fn directed_path_values() {
        assert_eq!(r(&[p(2), p(2)], 6).value, Some(2));
        assert_eq!(r(&[p(3), p(3)], 6).value, Some(3));
        assert_eq!(r(&[p(3), p(4)], 6).value, Some(4));
        assert_eq!(r(&[p(4), p(4)], 6).value, Some(5));
    }

    #[test]
    fn agrees_with_unpruned_enumeration() {
        let cases: Vec<(HostFamily, Vec<OrientedTree>)> = vec![
            (HostFamily::Tournaments, vec![p(3), p(3)]),
            (HostFamily::Tournaments, vec![named_target("outstar3").unwrap(), p(2)]),
            (HostFamily::Tournaments, vec![p(2), named_target("instar3").unwrap()]),
            (HostFamily::CompleteDigraphs, vec![p(3), p(4)]),
            (HostFamily::CompleteDigraphs, vec![named_target("instar3").unwrap(), p(3)]),
        ];
        for (family, targets) in cases {
            let res = search(family, &targets, &opts(6, 2)).unwrap();
            let v = res.value.unwrap();
            assert!(v <= 5, "{family:?} {v} {}", targets.len());
            assert!(!brute_avoidable(family, &targets, v), "{family:?} at {v}");
            assert!(brute_avoidable(family, &targets, v - 1), "{family:?} at {}", v - 1);
        }
    }

    #[test]
    fn inconclusive_when_capped() {
        let res = rt(&[p(4), p(4)], 6);
        assert_eq!(res.value, None);
        assert!(res.inconclusive.is_some());
        assert!(res.lower_bound >= 7 || res.stats.per_order.iter().all(|o| o.avoided));
        let capped = oriented_ramsey_exact(
            &[p(3), p(3)],
            &SearchOptions { max_n: 9, caps: SearchCaps { max_tournament: 4, max_digraph: 4 }, jobs: Some(1) },
        )
        .unwrap();
        assert_eq!(capped.value, None);
        assert_eq!(capped.lower_bound, 5);
        assert!(capped.inconclusive.unwrap().contains("cap"));
    }

    #[test]
    fn deterministic_across_job_counts() {
        let a = oriented_ramsey_exact(&[p(3), p(3)], &SearchOptions { jobs: Some(1), ..opts(6, 2) }).unwrap();
        let b = oriented_ramsey_exact(&[p(3), p(3)], &SearchOptions { jobs: Some(4), ..opts(6, 2) }).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn adding_a_colour_never_decreases() {
        let one = rt(&[p(3)], 6).value.unwrap();
        let two = rt(&[p(3), p(3)], 6).value.unwrap();
        assert!(two >= one);
        // a subtree never needs more vertices
        assert!(rt(&[p(2), p(3)], 6).value.unwrap() <= two);
    }

    #[test]
    fn json_shape() {
        let res = r(&[p(3), p(3)], 6);
        let j = res.to_json(&["p3".into(), "p3".into()], Some("w.col"));
        assert_eq!(j["value"], 3);
        assert_eq!(j["k"], 2);
        assert_eq!(j["witness_file"], "w.col");
        assert!(j["stats"]["nodes"].as_u64().unwrap() > 0);
    }

    #[test]
    fn single_vertex_target_is_immediate() {
        let res = rt(&[OrientedTree::single_vertex(), p(3)], 4);
        assert_eq!(res.value, Some(1));
        assert!(res.witness.is_none());
    }
}
