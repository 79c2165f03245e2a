//! Explicit colourings without monochromatic copies of given paths, with a
//! per-colour checker.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::digraph::{
    contains_monochromatic_copy, longest_monochromatic_directed_path, ColouredDigraph, Colour, HostError,
    OrientedTree, Vertex,
};

/// Largest host a generator will build.
pub const MAX_CONSTRUCTION_ORDER: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("order {0} exceeds the limit of {MAX_CONSTRUCTION_ORDER} vertices")]
    TooLarge(String),
    #[error(transparent)]
    Host(#[from] HostError),
}

fn checked_order(base: usize, exp: usize, factor: usize) -> Result<usize, ConstructionError> {
    let order = u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .and_then(|p| p.checked_mul(factor));
    match order {
        Some(o) if o <= MAX_CONSTRUCTION_ORDER => Ok(o),
        Some(o) => Err(ConstructionError::TooLarge(o.to_string())),
        None => Err(ConstructionError::TooLarge(format!("{base}^{exp}*{factor}"))),
    }
}

/// Mixed-radix digits of `i` over `radices`, most significant first.
fn digits(mut i: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (d, &r) in out.iter_mut().zip(radices).rev() {
        *d = i % r;
        i /= r;
    }
    out
}

/// Tournament on `[l]^{k-1} x [n]` oriented by the lexicographic order, the
/// colour of an edge being the first coordinate where its ends differ.
#[derive(Clone, Debug)]
pub struct LexiConstruction {
    pub n: usize,
    pub l: usize,
    pub k: usize,
    pub host: ColouredDigraph,
    /// Coordinate tuple of each vertex, 0-based.
    pub coordinates: Vec<Vec<usize>>,
}

pub fn build_lexicographic(n: usize, l: usize, k: usize) -> Result<LexiConstruction, ConstructionError> {
    if n == 0 || l == 0 || k == 0 {
        return Err(ConstructionError::Parameter("n, l and k must be positive".into()));
    }
    if k > Colour::MAX as usize {
        return Err(ConstructionError::Parameter(format!("{k} colours")));
    }
    let order = checked_order(l, k - 1, n)?;
    let mut radices = vec![l; k - 1];
    radices.push(n);
    let coordinates: Vec<Vec<usize>> = (0..order).map(|i| digits(i, &radices)).collect();
    // Vertex order is lexicographic, so u < v is the orientation.
    let host = ColouredDigraph::tournament_from_fn(
        order,
        k,
        |_, _| true,
        |u, v| {
            let i = (0..k).find(|&i| coordinates[u][i] != coordinates[v][i]).expect("distinct tuples");
            (i + 1) as Colour
        },
    )?;
    Ok(LexiConstruction { n, l, k, host, coordinates })
}

impl LexiConstruction {
    /// No colour-`i` directed path of length `l` for `i < k`, and colour `k`
    /// split into tournaments of order `n`.
    pub fn bounds(&self) -> Vec<Forbidden> {
        let mut out: Vec<Forbidden> =
            (1..self.k).map(|i| Forbidden::PathLength { colour: Some(i as Colour), length: self.l }).collect();
        out.push(Forbidden::ComponentOrder { colour: self.k as Colour, order: self.n + 1 });
        out
    }

    pub fn self_verify(&self) -> ConstructionReport {
        verify_construction(&self.host, &self.bounds())
    }

    pub fn parameters(&self) -> Value {
        json!({ "construction": "lexicographic", "n": self.n, "l": self.l, "k": self.k })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stage {
    Base,
    Doubled,
    BlownUp,
}

impl Stage {
    pub fn parse(s: &str) -> Option<Stage> {
        match s.to_ascii_lowercase().as_str() {
            "base" => Some(Stage::Base),
            "doubled" => Some(Stage::Doubled),
            "blownup" | "blown-up" => Some(Stage::BlownUp),
            _ => None,
        }
    }

    /// Last stage defined for `k` colours.
    pub fn last_for(k: usize) -> Stage {
        if k >= 3 {
            Stage::BlownUp
        } else {
            Stage::Doubled
        }
    }
}

/// Complete digraph in `k` colours without a monochromatic directed path of
/// length `2n`.
#[derive(Clone, Debug)]
pub struct LayeredConstruction {
    pub n: usize,
    pub k: usize,
    pub stage: Stage,
    pub host: ColouredDigraph,
    /// Base: the `(k-1)`-tuple. Doubled: copy index, then the tuple.
    /// BlownUp: the Doubled coordinates of the blown-up vertex, then the index
    /// inside its set.
    pub coordinates: Vec<Vec<usize>>,
}

fn base_colour(a: &[usize], b: &[usize], k: usize) -> Colour {
    if a[0] > b[0] {
        return 1;
    }
    for i in 1..k - 1 {
        if a[i] > b[i] || (a[i] == b[i] && a[i - 1] < b[i - 1]) {
            return (i + 1) as Colour;
        }
    }
    k as Colour
}

fn layered_coords(n: usize, k: usize, stage: Stage) -> Result<(Vec<Vec<usize>>, Vec<Vec<Colour>>), ConstructionError> {
    match stage {
        Stage::Base => {
            let order = checked_order(n, k - 1, 1)?;
            let coords: Vec<Vec<usize>> = (0..order).map(|i| digits(i, &vec![n; k - 1])).collect();
            let colour = (0..order)
                .map(|u| (0..order).map(|v| if u == v { 0 } else { base_colour(&coords[u], &coords[v], k) }).collect())
                .collect();
            Ok((coords, colour))
        }
        Stage::Doubled => {
            let (base, bc) = layered_coords(n, k, Stage::Base)?;
            let m = base.len();
            checked_order(2, 1, m)?;
            let coords = (0..2 * m).map(|i| [vec![i / m], base[i % m].clone()].concat()).collect();
            let colour = (0..2 * m)
                .map(|u| {
                    (0..2 * m)
                        .map(|v| match (u / m, v / m) {
                            _ if u == v => 0,
                            (0, 1) => 1,
                            (1, 0) => k as Colour,
                            _ => bc[u % m][v % m],
                        })
                        .collect()
                })
                .collect();
            Ok((coords, colour))
        }
        Stage::BlownUp => {
            let (inner, ic) = layered_coords(n, k - 1, Stage::Doubled)?;
            let s = 2 * n;
            let order = checked_order(inner.len(), 1, s)?;
            let coords = (0..order).map(|i| [inner[i / s].clone(), vec![i % s]].concat()).collect();
            let colour = (0..order)
                .map(|u| {
                    (0..order)
                        .map(|v| match (u / s, v / s) {
                            _ if u == v => 0,
                            (a, b) if a == b => k as Colour,
                            (a, b) => ic[a][b],
                        })
                        .collect()
                })
                .collect();
            Ok((coords, colour))
        }
    }
}

pub fn build_layered(n: usize, k: usize, stage: Stage) -> Result<LayeredConstruction, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::Parameter("n must be positive".into()));
    }
    if k < 2 || k > Colour::MAX as usize {
        return Err(ConstructionError::Parameter(format!("layered colourings need k >= 2, got {k}")));
    }
    if stage == Stage::BlownUp && k < 3 {
        return Err(ConstructionError::Parameter("the BlownUp stage needs k >= 3".into()));
    }
    let (coordinates, colour) = layered_coords(n, k, stage)?;
    let host = ColouredDigraph::complete_from_fn(coordinates.len(), k, |u, v| colour[u][v])?;
    Ok(LayeredConstruction { n, k, stage, host, coordinates })
}

impl LayeredConstruction {
    pub fn bounds(&self) -> Vec<Forbidden> {
        vec![Forbidden::PathLength { colour: None, length: 2 * self.n }]
    }

    pub fn self_verify(&self) -> ConstructionReport {
        verify_construction(&self.host, &self.bounds())
    }

    pub fn parameters(&self) -> Value {
        json!({ "construction": "layered", "n": self.n, "k": self.k, "stage": self.stage })
    }
}

/// A forbidden monochromatic structure. `colour: None` means every colour.
#[derive(Clone, Debug)]
pub enum Forbidden {
    /// No directed path with `length` edges.
    PathLength { colour: Option<Colour>, length: usize },
    /// No weakly connected component with `order` or more vertices.
    ComponentOrder { colour: Colour, order: usize },
    /// No copy of the tree.
    Tree { colour: Option<Colour>, tree: OrientedTree },
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub bound: String,
    pub colour: Colour,
    pub passed: bool,
    /// Offending vertices when the bound fails.
    pub witness: Option<Vec<Vertex>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConstructionReport {
    pub checks: Vec<BoundCheck>,
}

impl ConstructionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn colours_of(host: &ColouredDigraph, c: Option<Colour>) -> Vec<Colour> {
    match c {
        Some(c) => vec![c],
        None => (1..=host.colours() as Colour).collect(),
    }
}

fn largest_component(host: &ColouredDigraph, c: Colour) -> Vec<Vertex> {
    let g = host.class(c);
    let n = host.order();
    let mut seen = vec![false; n];
    let mut best = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for w in g.out_neighbours(v).chain(g.in_neighbours(v)) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        if comp.len() > best.len() {
            comp.sort_unstable();
            best = comp;
        }
    }
    best
}

/// Runs the exhaustive oracles for every bound and colour. A colour outside
/// `1..=k` has no edges and passes.
pub fn verify_construction(host: &ColouredDigraph, forbidden: &[Forbidden]) -> ConstructionReport {
    let mut checks = Vec::new();
    for f in forbidden {
        match f {
            Forbidden::PathLength { colour, length } => {
                for c in colours_of(host, *colour) {
                    let valid = (1..=host.colours()).contains(&(c as usize));
                    let path = if valid { longest_monochromatic_directed_path(host, c) } else { Vec::new() };
                    let passed = path.len() <= *length;
                    checks.push(BoundCheck {
                        bound: format!("no colour-{c} directed path of length {length}"),
                        colour: c,
                        passed,
                        witness: (!passed).then(|| path[..=*length].to_vec()),
                    });
                }
            }
            Forbidden::ComponentOrder { colour, order } => {
                let comp = if (1..=host.colours()).contains(&(*colour as usize)) {
                    largest_component(host, *colour)
                } else {
                    Vec::new()
                };
                let passed = comp.len() < *order;
                checks.push(BoundCheck {
                    bound: format!("no colour-{colour} component on {order} vertices"),
                    colour: *colour,
                    passed,
                    witness: (!passed).then_some(comp),
                });
            }
            Forbidden::Tree { colour, tree } => {
                for c in colours_of(host, *colour) {
                    let found = contains_monochromatic_copy(host, c, tree).embedding();
                    checks.push(BoundCheck {
                        bound: format!("no colour-{c} copy of a {}-vertex tree", tree.order()),
                        colour: c,
                        passed: found.is_none(),
                        witness: found.map(|e| e.host_vertices),
                    });
                }
            }
        }
    }
    ConstructionReport { checks }
}

/// Sidecar written next to a generated colouring file.
pub fn sidecar(parameters: Value, coordinates: &[Vec<usize>], report: &ConstructionReport) -> Value {
    json!({
        "parameters": parameters,
        "order": coordinates.len(),
        "coordinates": coordinates,
        "verification": {
            "passed": report.passed(),
            "checks": report.checks,
        },
    })
}
