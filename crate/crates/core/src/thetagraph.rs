//! Kakimizu complexes of special alternating knots from their θ-graphs.
//!
//! Starting from the Seifert graph with unit weights, parallel edges bounding
//! bigons are merged, weight-0 edges are added between already adjacent vertices,
//! and the edges in parallel families form the θ-graph. A surface is a weight
//! vector on θ-edges and applying a region shifts its boundary weights by their
//! signs.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::planar::{Dart, PlanarEdge, PlanarMultigraph};

pub const DEFAULT_MAX_VERTICES: usize = 100_000;

/// Cycle enumeration memoizes on subsets of regions.
pub const MAX_REGIONS: usize = 24;

/// Merges the two edges of every bigon face until none is left.
///
/// The surviving edge keeps the smaller id and carries the summed weight.
pub fn reduce_bigons(g: &PlanarMultigraph) -> PlanarMultigraph {
    let mut g = g.clone();
    loop {
        let bigon = g
            .faces()
            .into_iter()
            .find(|f| f.len() == 2 && f[0].edge != f[1].edge);
        let Some(face) = bigon else {
            return g;
        };
        let (keep, drop) = (face[0].edge.min(face[1].edge), face[0].edge.max(face[1].edge));
        let total = g.weight(keep).unwrap_or(0) + g.weight(drop).unwrap_or(0);
        g.set_weight(keep, total);
        g.remove_edge(drop);
        debug_assert_eq!(g.euler_characteristic(), 2);
    }
}

// First chord (i, j) of a face walk that joins distinct, already adjacent
// vertices and leaves both halves with at least three sides.
fn find_chord(g: &PlanarMultigraph, face: &[Dart]) -> Option<(usize, usize)> {
    let len = face.len();
    let at: Vec<u32> = face.iter().map(|d| g.origin(*d)).collect();
    for i in 0..len {
        for j in i + 2..len {
            if len - (j - i) < 2 {
                continue;
            }
            if at[i] != at[j] && g.adjacent(at[i], at[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Inserts weight-0 edges across faces between vertices that are already joined,
/// as long as no bigon is created.
///
/// Faces are scanned in [`PlanarMultigraph::faces`] order and the first valid
/// chord is inserted, until no face admits one. A new edge takes the next free
/// id, copies the orientation of an existing edge between the same vertices,
/// and sits in each rotation right after the edge-end the face walk arrives on.
pub fn add_zero_edges(g: &PlanarMultigraph) -> PlanarMultigraph {
    let mut g = g.clone();
    loop {
        let found = g
            .faces()
            .into_iter()
            .find_map(|f| find_chord(&g, &f).map(|c| (f, c)));
        let Some((face, (i, j))) = found else {
            return g;
        };
        let len = face.len();
        let (u, v) = (g.origin(face[i]), g.origin(face[j]));
        let source = g
            .edges()
            .values()
            .find(|e| (e.ends == [u, v]) || (e.ends == [v, u]))
            .map(PlanarEdge::source)
            .expect("chord endpoints are adjacent");
        let id = g.edges().keys().next_back().map_or(0, |m| m + 1);
        let after_u = face[(i + len - 1) % len].reversed();
        let after_v = face[j - 1].reversed();
        g.insert_edge(id, PlanarEdge::new(u, v, 0, source == u), after_u, after_v);
        debug_assert_eq!(g.euler_characteristic(), 2);
    }
}

/// A face of the θ-graph with the signed θ-edges on its boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub face: usize,
    pub boundary: Vec<(u32, i8)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaGraph {
    graph: PlanarMultigraph,
    regions: Vec<Region>,
}

impl ThetaGraph {
    /// A graph that is its own θ-graph: every edge has a parallel partner.
    pub fn from_planar(g: &PlanarMultigraph) -> Result<Self> {
        g.validate()?;
        let all: BTreeSet<u32> = g.edges().keys().copied().collect();
        let tg = build_theta(g, &all)?;
        if tg.edge_ids().len() != all.len() {
            return Err(Error::Precondition(
                "every edge of a θ-graph needs a parallel partner".into(),
            ));
        }
        Ok(tg)
    }

    pub fn graph(&self) -> &PlanarMultigraph {
        &self.graph
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn edge_ids(&self) -> Vec<u32> {
        self.graph.edges().keys().copied().collect()
    }

    /// Weights carried by the construction.
    pub fn weights(&self) -> WeightVector {
        WeightVector {
            weights: self.graph.edges().iter().map(|(id, e)| (*id, e.weight)).collect(),
        }
    }

    /// Weight vector over the θ-edges in increasing id order.
    pub fn weight_vector(&self, values: &[u64]) -> Result<WeightVector> {
        let ids = self.edge_ids();
        if ids.len() != values.len() {
            return Err(Error::Precondition(format!(
                "θ-graph has {} edges, got {} weights",
                ids.len(),
                values.len()
            )));
        }
        Ok(WeightVector {
            weights: ids.into_iter().zip(values.iter().copied()).collect(),
        })
    }
}

// Regions are faces of the host graph glued across every non-θ edge, which
// also handles θ-graphs that are not connected.
fn build_theta(host: &PlanarMultigraph, keep: &BTreeSet<u32>) -> Result<ThetaGraph> {
    if keep.is_empty() {
        return Err(Error::EmptyTheta);
    }
    let faces = host.faces();
    let mut face_of: HashMap<Dart, usize> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for d in f {
            face_of.insert(*d, i);
        }
    }
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &id in host.edges().keys().filter(|id| !keep.contains(id)) {
        let a = find(&mut parent, face_of[&Dart::new(id, 0)]);
        let b = find(&mut parent, face_of[&Dart::new(id, 1)]);
        parent[a.max(b)] = a.min(b);
    }
    let mut grouped: BTreeMap<usize, Vec<(u32, i8)>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        let root = find(&mut parent, i);
        let entry = grouped.entry(root).or_default();
        entry.extend(
            f.iter()
                .filter(|d| keep.contains(&d.edge))
                .map(|d| (d.edge, host.sign(*d))),
        );
    }
    let regions: Vec<Region> = grouped
        .into_iter()
        .filter(|(_, b)| !b.is_empty())
        .map(|(face, mut boundary)| {
            boundary.sort_unstable();
            Region { face, boundary }
        })
        .collect();

    let mut signs: BTreeMap<u32, Vec<i8>> = BTreeMap::new();
    for r in &regions {
        for (e, s) in &r.boundary {
            signs.entry(*e).or_default().push(*s);
        }
    }
    for (e, s) in &signs {
        if s.len() != 2 || s[0] + s[1] != 0 {
            return Err(Error::Invariant(format!(
                "θ-edge {e} has region signs {s:?}, expected one +1 and one -1"
            )));
        }
    }

    let mut graph = host.restrict(keep);
    let used: BTreeSet<u32> = graph.edges().values().flat_map(|e| e.ends).collect();
    graph = graph.restrict_vertices(&used);
    Ok(ThetaGraph { graph, regions })
}

/// Edges whose endpoints are joined by at least two edges, with their regions.
pub fn theta_subgraph(g: &PlanarMultigraph) -> Result<ThetaGraph> {
    let mult = g.multiplicities();
    let keep: BTreeSet<u32> = g
        .edges()
        .iter()
        .filter(|(_, e)| !e.is_loop())
        .filter(|(_, e)| {
            let [a, b] = e.ends;
            mult[&(a.min(b), a.max(b))] >= 2
        })
        .map(|(id, _)| *id)
        .collect();
    build_theta(g, &keep)
}

/// Bigon reduction, weight-0 edges and θ-subgraph, in that order.
pub fn theta_from_seifert(g: &PlanarMultigraph) -> Result<ThetaGraph> {
    theta_subgraph(&add_zero_edges(&reduce_bigons(g)))
}

pub fn region_signatures(tg: &ThetaGraph) -> Vec<Region> {
    tg.regions.clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    weights: BTreeMap<u32, u64>,
}

impl WeightVector {
    pub fn new(weights: BTreeMap<u32, u64>) -> Self {
        Self { weights }
    }

    pub fn get(&self, edge: u32) -> Option<u64> {
        self.weights.get(&edge).copied()
    }

    pub fn as_map(&self) -> &BTreeMap<u32, u64> {
        &self.weights
    }

    pub fn values(&self) -> Vec<u64> {
        self.weights.values().copied().collect()
    }

    pub fn total(&self) -> u64 {
        self.weights.values().sum()
    }
}

/// Prints the weights in increasing edge-id order, e.g. `(0,1,0)`.
impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.values().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `0,1,0` or `(0,1,0)` as bare values; pair them with edges via
/// [`ThetaGraph::weight_vector`].
pub fn parse_weights(s: &str) -> Result<Vec<u64>> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|t| {
            u64::from_str(t.trim())
                .map_err(|_| Error::Parse(format!("weight {t:?} is not a non-negative integer")))
        })
        .collect()
}

pub fn apply_region(w: &WeightVector, r: &Region) -> Result<WeightVector> {
    let mut out = w.clone();
    for (e, s) in &r.boundary {
        let slot = out
            .weights
            .get_mut(e)
            .ok_or_else(|| Error::Precondition(format!("weight vector has no entry for θ-edge {e}")))?;
        *slot = slot
            .checked_add_signed(i64::from(*s))
            .ok_or(Error::NegativeWeight {
                region: r.face,
                edge: *e,
            })?;
    }
    Ok(out)
}

// Region boundaries as (position in the weight vector, sign).
fn indexed_regions(tg: &ThetaGraph) -> Vec<Vec<(usize, i64)>> {
    let pos: HashMap<u32, usize> = tg
        .edge_ids()
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    tg.regions
        .iter()
        .map(|r| r.boundary.iter().map(|(e, s)| (pos[e], i64::from(*s))).collect())
        .collect()
}

fn shifted(w: &[u64], region: &[(usize, i64)]) -> Option<Vec<u64>> {
    let mut out = w.to_vec();
    for &(i, s) in region {
        out[i] = out[i].checked_add_signed(s)?;
    }
    Some(out)
}

fn label(w: &[u64]) -> String {
    let parts: Vec<String> = w.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

type VertexSet = BTreeSet<usize>;

fn cycle_sets(
    start: usize,
    states: &[Vec<u64>],
    index: &HashMap<Vec<u64>, usize>,
    regions: &[Vec<(usize, i64)>],
) -> Vec<VertexSet> {
    let full = (1u32 << regions.len()) - 1;
    let mut memo: HashMap<u32, Vec<VertexSet>> = HashMap::new();

    fn suffix(
        current: &[u64],
        mask: u32,
        full: u32,
        index: &HashMap<Vec<u64>, usize>,
        regions: &[Vec<(usize, i64)>],
        memo: &mut HashMap<u32, Vec<VertexSet>>,
    ) -> Vec<VertexSet> {
        if mask == full {
            return vec![VertexSet::new()];
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let mut acc: BTreeSet<VertexSet> = BTreeSet::new();
        for (r, region) in regions.iter().enumerate() {
            if mask & (1 << r) != 0 {
                continue;
            }
            let Some(next) = shifted(current, region) else {
                continue;
            };
            let v = index[&next];
            for mut s in suffix(&next, mask | (1 << r), full, index, regions, memo) {
                s.insert(v);
                acc.insert(s);
            }
        }
        let maximal: Vec<VertexSet> = acc
            .iter()
            .filter(|s| !acc.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
            .cloned()
            .collect();
        memo.insert(mask, maximal.clone());
        maximal
    }

    suffix(&states[start], 0, full, index, regions, &mut memo)
        .into_iter()
        .map(|mut s| {
            s.insert(start);
            s
        })
        .collect()
}

/// Kakimizu complex spanned by the surfaces reachable from `w0`.
///
/// Vertices are labelled by their weight vectors.
pub fn build_complex(tg: &ThetaGraph, w0: &WeightVector, max_vertices: usize) -> Result<SimplicialComplex> {
    let ids = tg.edge_ids();
    if w0.weights.keys().copied().collect::<Vec<_>>() != ids {
        return Err(Error::Precondition(format!(
            "weight vector {w0} is not supported on the θ-edges {ids:?}"
        )));
    }
    if tg.regions.len() > MAX_REGIONS {
        return Err(Error::SizeBound {
            what: "region count",
            actual: tg.regions.len(),
            bound: MAX_REGIONS,
        });
    }
    let regions = indexed_regions(tg);

    let mut states: Vec<Vec<u64>> = vec![w0.values()];
    let mut index: HashMap<Vec<u64>, usize> = HashMap::from([(w0.values(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for region in &regions {
            let Some(next) = shifted(&states[i], region) else {
                continue;
            };
            if index.contains_key(&next) {
                continue;
            }
            if states.len() >= max_vertices {
                return Err(Error::SizeBound {
                    what: "reachable surfaces",
                    actual: states.len() + 1,
                    bound: max_vertices,
                });
            }
            index.insert(next.clone(), states.len());
            queue.push_back(states.len());
            states.push(next);
        }
    }

    let simplices: BTreeSet<VertexSet> = (0..states.len())
        .into_par_iter()
        .map(|v| cycle_sets(v, &states, &index, &regions))
        .reduce(Vec::new, |mut a, b| {
            a.extend(b);
            a
        })
        .into_iter()
        .collect();
    let vertices: BTreeSet<String> = states.iter().map(|w| label(w)).collect();
    let complex = SimplicialComplex::from_simplices(
        vertices,
        simplices
            .into_iter()
            .map(|s| s.into_iter().map(|v| label(&states[v])).collect::<Simplex>()),
    )?;
    if !complex.is_connected() || !complex.is_flag() {
        return Err(Error::Invariant(format!(
            "complex from {w0} is not a connected flag complex"
        )));
    }
    Ok(complex)
}
