//! Breadth-first crystal graphs from any realization, the axiom checker and
//! rooted colored comparison.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::binf::{BInfWall, LimitCrystal};
use crate::cartan::{build_datum, AffineDatum, ClassicalWeight, Family};
use crate::coords::CrystalVector;
use crate::error::{Error, Result};
use crate::wall::{PathCrystal, VertexStats, WallCrystal, YoungWall};

/// Which model produced a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RealizationTag {
    Wall,
    Path,
    Binf,
}

impl fmt::Display for RealizationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealizationTag::Wall => "wall",
            RealizationTag::Path => "path",
            RealizationTag::Binf => "binf",
        })
    }
}

impl FromStr for RealizationTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wall" => Ok(RealizationTag::Wall),
            "path" => Ok(RealizationTag::Path),
            "binf" => Ok(RealizationTag::Binf),
            _ => Err(Error::Parse {
                what: "realization",
                input: s.to_string(),
            }),
        }
    }
}

/// A crystal model the generator can walk.
pub trait Realization {
    type State: Clone + Eq + Hash;

    fn tag(&self) -> RealizationTag;
    fn datum(&self) -> &AffineDatum;
    fn level(&self) -> i64;
    fn highest_weight(&self) -> ClassicalWeight;
    fn root(&self) -> Self::State;
    fn ftilde(&self, i: usize, s: &Self::State) -> Result<Option<Self::State>>;
    fn etilde(&self, i: usize, s: &Self::State) -> Result<Option<Self::State>>;
    fn stats(&self, s: &Self::State) -> VertexStats;
    /// Canonical state string.
    fn key(&self, s: &Self::State) -> String;
}

impl Realization for WallCrystal {
    type State = YoungWall;

    fn tag(&self) -> RealizationTag {
        RealizationTag::Wall
    }
    fn datum(&self) -> &AffineDatum {
        &self.crystal.datum
    }
    fn level(&self) -> i64 {
        self.crystal.level
    }
    fn highest_weight(&self) -> ClassicalWeight {
        self.ground.lambda.clone()
    }
    fn root(&self) -> YoungWall {
        self.highest()
    }
    fn ftilde(&self, i: usize, s: &YoungWall) -> Result<Option<YoungWall>> {
        WallCrystal::ftilde(self, i, s)
    }
    fn etilde(&self, i: usize, s: &YoungWall) -> Result<Option<YoungWall>> {
        WallCrystal::etilde(self, i, s)
    }
    fn stats(&self, s: &YoungWall) -> VertexStats {
        WallCrystal::stats(self, s)
    }
    fn key(&self, s: &YoungWall) -> String {
        self.text(s)
    }
}

impl Realization for PathCrystal {
    type State = Vec<CrystalVector>;

    fn tag(&self) -> RealizationTag {
        RealizationTag::Path
    }
    fn datum(&self) -> &AffineDatum {
        self.walls.datum()
    }
    fn level(&self) -> i64 {
        self.walls.crystal.level
    }
    fn highest_weight(&self) -> ClassicalWeight {
        self.walls.ground.lambda.clone()
    }
    fn root(&self) -> Vec<CrystalVector> {
        self.highest()
    }
    fn ftilde(&self, i: usize, s: &Vec<CrystalVector>) -> Result<Option<Vec<CrystalVector>>> {
        PathCrystal::ftilde(self, i, s)
    }
    fn etilde(&self, i: usize, s: &Vec<CrystalVector>) -> Result<Option<Vec<CrystalVector>>> {
        PathCrystal::etilde(self, i, s)
    }
    fn stats(&self, s: &Vec<CrystalVector>) -> VertexStats {
        PathCrystal::stats(self, s)
    }
    fn key(&self, s: &Vec<CrystalVector>) -> String {
        self.text(s)
    }
}

impl Realization for LimitCrystal {
    type State = BInfWall;

    fn tag(&self) -> RealizationTag {
        RealizationTag::Binf
    }
    fn datum(&self) -> &AffineDatum {
        &self.datum
    }
    fn level(&self) -> i64 {
        0
    }
    fn highest_weight(&self) -> ClassicalWeight {
        ClassicalWeight::zero(self.rank())
    }
    fn root(&self) -> BInfWall {
        self.empty_wall()
    }
    fn ftilde(&self, i: usize, s: &BInfWall) -> Result<Option<BInfWall>> {
        self.wall_ftilde(i, s).map(Some)
    }
    fn etilde(&self, i: usize, s: &BInfWall) -> Result<Option<BInfWall>> {
        self.wall_etilde(i, s)
    }
    fn stats(&self, s: &BInfWall) -> VertexStats {
        self.wall_stats(s)
    }
    fn key(&self, s: &BInfWall) -> String {
        self.wall_text(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub state: String,
    pub depth: usize,
    pub weight: ClassicalWeight,
    /// `(ε, φ)` per node; absent for loaded documents.
    pub stats: Option<(Vec<i64>, Vec<i64>)>,
    /// Target of `ẽ_i` per node, as a vertex id.
    pub raise: Option<Vec<Option<usize>>>,
    /// False on the frontier of a depth-limited graph.
    pub expanded: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub color: usize,
    pub to: usize,
}

/// Rooted colored digraph; vertex 0 is the root, ids in BFS order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalGraph {
    pub family: Family,
    pub rank: usize,
    pub level: i64,
    pub highest_weight: ClassicalWeight,
    pub realization: RealizationTag,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub depth_limit: Option<usize>,
    /// `ẽ` images that fell outside the generated vertex set.
    pub stray_raises: Vec<String>,
}

impl CrystalGraph {
    pub fn datum(&self) -> Result<AffineDatum> {
        build_datum(self.family, self.rank)
    }

    pub fn depth_counts(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for v in &self.vertices {
            if out.len() <= v.depth {
                out.resize(v.depth + 1, 0);
            }
            out[v.depth] += 1;
        }
        out
    }

    pub fn max_depth(&self) -> usize {
        self.vertices.iter().map(|v| v.depth).max().unwrap_or(0)
    }

    /// Out-edges per vertex, sorted by color.
    pub fn children(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            out[e.from].push((e.color, e.to));
        }
        for c in &mut out {
            c.sort();
        }
        out
    }

    pub fn find(&self, state: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.state == state)
    }

    /// The part of depth at most `depth`, ids kept in order.
    pub fn truncate(&self, depth: usize) -> CrystalGraph {
        let keep: Vec<bool> = self.vertices.iter().map(|v| v.depth <= depth).collect();
        let mut new_id = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (k, v) in self.vertices.iter().enumerate() {
            if keep[k] {
                new_id[k] = vertices.len();
                vertices.push(v.clone());
            }
        }
        let remap = |x: usize| (x != usize::MAX && keep[x]).then(|| new_id[x]);
        for v in &mut vertices {
            if v.depth == depth {
                v.expanded = false;
            }
            if let Some(r) = &mut v.raise {
                for t in r.iter_mut() {
                    *t = t.and_then(remap);
                }
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.from] && keep[e.to])
            .map(|e| Edge {
                from: new_id[e.from],
                color: e.color,
                to: new_id[e.to],
            })
            .collect();
        CrystalGraph {
            vertices,
            edges,
            depth_limit: Some(self.depth_limit.map_or(depth, |d| d.min(depth))),
            stray_raises: Vec::new(),
            ..self.clone()
        }
    }
}

/// Breadth-first closure of the root under every `f̃_i`, children in node
/// order. Exceeding `node_limit` is an error; the depth limit truncates.
pub fn generate<R: Realization>(real: &R, depth_limit: usize, node_limit: usize) -> Result<CrystalGraph> {
    let d = real.datum();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut states: Vec<R::State> = Vec::new();
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut edges = Vec::new();

    let mut push = |s: R::State,
                    depth: usize,
                    vertices: &mut Vec<Vertex>,
                    states: &mut Vec<R::State>|
     -> Result<usize> {
        let key = real.key(&s);
        if let Some(&id) = index.get(&key) {
            return Ok(id);
        }
        if vertices.len() >= node_limit {
            return Err(Error::NodeLimit(node_limit));
        }
        let st = real.stats(&s);
        let id = vertices.len();
        index.insert(key.clone(), id);
        vertices.push(Vertex {
            state: key,
            depth,
            weight: st.weight,
            stats: Some((st.eps, st.phi)),
            raise: None,
            expanded: false,
        });
        states.push(s);
        Ok(id)
    };

    push(real.root(), 0, &mut vertices, &mut states)?;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        if vertices[u].depth >= depth_limit {
            continue;
        }
        vertices[u].expanded = true;
        for i in d.nodes() {
            let s = states[u].clone();
            if let Some(t) = real.ftilde(i, &s)? {
                let before = vertices.len();
                let v = push(t, vertices[u].depth + 1, &mut vertices, &mut states)?;
                if v == before {
                    queue.push_back(v);
                }
                edges.push(Edge {
                    from: u,
                    color: i,
                    to: v,
                });
            }
        }
    }

    let mut stray = Vec::new();
    let lookup: HashMap<&str, usize> = vertices
        .iter()
        .enumerate()
        .map(|(k, v)| (v.state.as_str(), k))
        .collect();
    let mut raises = Vec::with_capacity(vertices.len());
    for (k, s) in states.iter().enumerate() {
        let mut r = Vec::new();
        for i in d.nodes() {
            match real.etilde(i, s)? {
                None => r.push(None),
                Some(t) => {
                    let key = real.key(&t);
                    match lookup.get(key.as_str()) {
                        Some(&id) => r.push(Some(id)),
                        None => {
                            stray.push(format!("e{i} of vertex {k} gives unknown state {key}"));
                            r.push(None);
                        }
                    }
                }
            }
        }
        raises.push(r);
    }
    for (v, r) in vertices.iter_mut().zip(raises) {
        v.raise = Some(r);
    }

    Ok(CrystalGraph {
        family: d.family,
        rank: d.rank,
        level: real.level(),
        highest_weight: real.highest_weight(),
        realization: real.tag(),
        vertices,
        edges,
        depth_limit: Some(depth_limit),
        stray_raises: stray,
    })
}

/// Failures found by [`verify_axioms`], each naming a vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub vertices: usize,
    pub edges: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the crystal axioms on a generated graph. Frontier vertices are
/// not required to have their out-edges.
pub fn verify_axioms(g: &CrystalGraph) -> AxiomReport {
    let mut fail = Vec::new();
    let d = match g.datum() {
        Ok(d) => d,
        Err(e) => {
            return AxiomReport {
                failures: vec![e.to_string()],
                ..Default::default()
            }
        }
    };
    let n_nodes = d.rank + 1;
    let seminormal = g.realization != RealizationTag::Binf;
    fail.extend(g.stray_raises.iter().cloned());

    if g.vertices.first().map(|v| &v.weight) != Some(&g.highest_weight) {
        fail.push("vertex 0: root weight differs from the highest weight".into());
    }
    let mut out_seen = BTreeSet::new();
    let mut in_seen = BTreeSet::new();
    let mut has_in = vec![false; g.vertices.len()];
    let mut in_colors = vec![BTreeSet::new(); g.vertices.len()];
    let mut out_colors = vec![BTreeSet::new(); g.vertices.len()];
    let edge_set: BTreeSet<Edge> = g.edges.iter().copied().collect();

    for e in &g.edges {
        if e.color >= n_nodes || e.from >= g.vertices.len() || e.to >= g.vertices.len() {
            fail.push(format!("edge {e:?} is out of range"));
            continue;
        }
        if !out_seen.insert((e.from, e.color)) {
            fail.push(format!("vertex {}: two out-edges of color {}", e.from, e.color));
        }
        if !in_seen.insert((e.to, e.color)) {
            fail.push(format!("vertex {}: two in-edges of color {}", e.to, e.color));
        }
        has_in[e.to] = true;
        in_colors[e.to].insert(e.color);
        out_colors[e.from].insert(e.color);
        let (u, v) = (&g.vertices[e.from], &g.vertices[e.to]);
        if v.weight != &u.weight - &d.alpha(e.color) {
            fail.push(format!(
                "vertex {}: weight is not wt({}) - alpha_{}",
                e.to, e.from, e.color
            ));
        }
        if v.depth > u.depth + 1 {
            fail.push(format!(
                "vertex {}: depth exceeds its parent's by more than one",
                e.to
            ));
        }
        if let (Some((eu, pu)), Some((ev, pv))) = (&u.stats, &v.stats) {
            let i = e.color;
            if ev[i] != eu[i] + 1 || pv[i] != pu[i] - 1 {
                fail.push(format!(
                    "vertex {}: eps/phi of color {i} do not step along the edge from {}",
                    e.to, e.from
                ));
            }
        }
        if let Some(r) = &v.raise {
            if r.get(e.color).copied().flatten() != Some(e.from) {
                fail.push(format!(
                    "vertex {}: e{} does not return to {}",
                    e.to, e.color, e.from
                ));
            }
        }
    }

    for (k, v) in g.vertices.iter().enumerate() {
        if k > 0 && !has_in[k] {
            fail.push(format!("vertex {k}: no incoming edge"));
        }
        if let Some(r) = &v.raise {
            for (i, t) in r.iter().enumerate() {
                if let Some(u) = t {
                    if !edge_set.contains(&Edge {
                        from: *u,
                        color: i,
                        to: k,
                    }) {
                        fail.push(format!("vertex {k}: e{i} gives {u} but there is no edge"));
                    }
                }
            }
        }
        let Some((eps, phi)) = &v.stats else { continue };
        for i in 0..n_nodes {
            if phi[i] - eps[i] != v.weight.0[i] {
                fail.push(format!("vertex {k}: phi_{i} - eps_{i} differs from <h_{i}, wt>"));
            }
            if eps[i] < 0 || (seminormal && phi[i] < 0) {
                fail.push(format!("vertex {k}: negative eps/phi at color {i}"));
            }
            if (eps[i] > 0) != in_colors[k].contains(&i) {
                fail.push(format!(
                    "vertex {k}: eps_{i} = {} disagrees with the in-edges",
                    eps[i]
                ));
            }
            if v.expanded {
                let want = !seminormal || phi[i] > 0;
                if want != out_colors[k].contains(&i) {
                    fail.push(format!(
                        "vertex {k}: phi_{i} = {} disagrees with the out-edges",
                        phi[i]
                    ));
                }
            }
        }
    }
    AxiomReport {
        vertices: g.vertices.len(),
        edges: g.edges.len(),
        failures: fail,
    }
}

pub fn weight_multiplicities(g: &CrystalGraph) -> BTreeMap<ClassicalWeight, usize> {
    let mut out = BTreeMap::new();
    for v in &g.vertices {
        *out.entry(v.weight.clone()).or_insert(0) += 1;
    }
    out
}

/// Simultaneous breadth-first walk from both roots, pairing children by
/// color. `Err` names the first divergence.
pub fn compare_graphs(a: &CrystalGraph, b: &CrystalGraph) -> std::result::Result<(), String> {
    if a.vertices.is_empty() || b.vertices.is_empty() {
        return if a.vertices.len() == b.vertices.len() {
            Ok(())
        } else {
            Err("one graph is empty".into())
        };
    }
    if a.vertices.len() != b.vertices.len() || a.edges.len() != b.edges.len() {
        return Err(format!(
            "sizes differ: {} vertices/{} edges against {}/{}",
            a.vertices.len(),
            a.edges.len(),
            b.vertices.len(),
            b.edges.len()
        ));
    }
    let (ca, cb) = (a.children(), b.children());
    let mut fwd = vec![usize::MAX; a.vertices.len()];
    let mut back = vec![usize::MAX; b.vertices.len()];
    fwd[0] = 0;
    back[0] = 0;
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((u, v)) = queue.pop_front() {
        if a.vertices[u].weight != b.vertices[v].weight {
            return Err(format!("weights differ at vertex {u} / {v}"));
        }
        let colors_a: Vec<usize> = ca[u].iter().map(|c| c.0).collect();
        let colors_b: Vec<usize> = cb[v].iter().map(|c| c.0).collect();
        if colors_a != colors_b {
            return Err(format!(
                "out-colors differ at vertex {u} / {v}: {colors_a:?} against {colors_b:?}"
            ));
        }
        for (&(_, x), &(_, y)) in ca[u].iter().zip(&cb[v]) {
            match (fwd[x], back[y]) {
                (usize::MAX, usize::MAX) => {
                    fwd[x] = y;
                    back[y] = x;
                    queue.push_back((x, y));
                }
                (fx, by) if fx == y && by == x => {}
                _ => return Err(format!("children {x} / {y} are paired inconsistently")),
            }
        }
    }
    if fwd.contains(&usize::MAX) {
        return Err("some vertices are unreachable from the root".into());
    }
    Ok(())
}

pub fn graphs_equal(a: &CrystalGraph, b: &CrystalGraph) -> bool {
    compare_graphs(a, b).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perfect::PerfectCrystal;

    fn walls(f: Family, n: usize, lam: &[i64]) -> WallCrystal {
        let d = build_datum(f, n).unwrap();
        let w = ClassicalWeight(lam.to_vec());
        let l = d.level(&w);
        WallCrystal::new(PerfectCrystal::new(d, l), &w).unwrap()
    }

    #[test]
    fn depth_zero_is_one_vertex() {
        let g = generate(&walls(Family::A2even, 1, &[2, 0]), 0, 100).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 0));
        assert!(verify_axioms(&g).passed());
    }

    #[test]
    fn b3_first_depths() {
        let g = generate(&walls(Family::B1, 3, &[2, 0, 0, 0]), 2, 1000).unwrap();
        assert_eq!(g.depth_counts(), vec![1, 1, 2]);
    }

    #[test]
    fn binf_first_depths() {
        let c = LimitCrystal::new(build_datum(Family::Dtwist, 2).unwrap());
        let g = generate(&c, 2, 1000).unwrap();
        assert_eq!(g.depth_counts(), vec![1, 3, 8]);
        assert!(verify_axioms(&g).passed(), "{:?}", verify_axioms(&g).failures);
    }

    #[test]
    fn node_limit_is_an_error() {
        let r = generate(&walls(Family::B1, 3, &[2, 0, 0, 0]), 8, 5);
        assert_eq!(r.unwrap_err(), Error::NodeLimit(5));
    }

    #[test]
    fn recolored_edge_is_caught() {
        let mut g = generate(&walls(Family::B1, 3, &[2, 0, 0, 0]), 4, 1000).unwrap();
        assert!(verify_axioms(&g).passed());
        let k = g.edges.len() - 1;
        g.edges[k].color = (g.edges[k].color + 1) % 4;
        let rep = verify_axioms(&g);
        assert!(!rep.passed());
        assert!(rep.failures.iter().any(|f| f.starts_with("vertex ")));
    }

    #[test]
    fn comparison() {
        let g = generate(&walls(Family::A2even, 2, &[2, 0, 0]), 5, 10_000).unwrap();
        assert!(graphs_equal(&g, &g));
        let h = generate(&walls(Family::A2even, 2, &[0, 1, 0]), 5, 10_000).unwrap();
        assert!(!graphs_equal(&g, &h));
    }

    #[test]
    fn wall_and_path_agree_on_b3() {
        let w = walls(Family::B1, 3, &[2, 0, 0, 0]);
        let g = generate(&w, 6, 100_000).unwrap();
        let p = generate(&PathCrystal::new(w, 8), 6, 100_000).unwrap();
        assert_eq!(compare_graphs(&g, &p), Ok(()));
        assert_eq!(weight_multiplicities(&g), weight_multiplicities(&p));
        assert!(verify_axioms(&p).passed());
    }

    #[test]
    fn eps_is_raising_depth() {
        let w = walls(Family::B1, 3, &[2, 0, 0, 0]);
        let g = generate(&w, 5, 100_000).unwrap();
        for v in &g.vertices {
            let (eps, _) = v.stats.as_ref().unwrap();
            let raise = v.raise.as_ref().unwrap();
            for i in 0..4 {
                let mut steps = 0;
                let mut cur = raise[i];
                while let Some(u) = cur {
                    steps += 1;
                    cur = g.vertices[u].raise.as_ref().unwrap()[i];
                }
                assert_eq!(steps, eps[i]);
            }
        }
    }

    #[test]
    fn truncation_keeps_a_prefix() {
        let w = walls(Family::B1, 3, &[2, 0, 0, 0]);
        let g6 = generate(&w, 6, 100_000).unwrap();
        let g4 = generate(&w, 4, 100_000).unwrap();
        assert_eq!(g6.truncate(4), g4);
    }
}
