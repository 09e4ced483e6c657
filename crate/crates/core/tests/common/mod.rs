//! Data and independent oracles shared by the integration tests.
//!
//! Nothing here calls into the library's algorithms: the oracles work on plain
//! vectors and only use the public constructors to hand results back.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use itertools::Itertools;
use kakimizu::planar::{Dart, PlanarEdge, PlanarMultigraph};
use rand::seq::SliceRandom;
use rand::Rng;

/// One printed row of the 2-bridge tables.
pub struct TableRow {
    pub name: &'static str,
    /// Fraction as printed, before normalization.
    pub index: &'static str,
    /// Normalized fraction when the row prints one.
    pub normalized: Option<&'static str>,
    pub cfe: &'static [i64],
    /// Drawn complex; `None` for rows whose drawing is not asserted.
    pub shape: Option<&'static str>,
}

const fn row(
    name: &'static str,
    index: &'static str,
    normalized: Option<&'static str>,
    cfe: &'static [i64],
    shape: Option<&'static str>,
) -> TableRow {
    TableRow {
        name,
        index,
        normalized,
        cfe,
        shape,
    }
}

pub const TABLE: &[TableRow] = &[
    row("11_95", "33/73", Some("-40/73"), &[-2, -6, -4, -2], Some("edge")),
    row("11_98", "18/47", None, &[4, -4, -2, 2], Some("edge")),
    row("11_119", "64/109", None, &[2, -4, -4, 2], Some("edge")),
    row("11_145", "22/83", None, &[4, 4, -2, 2], Some("edge")),
    row("11_154", "37/67", Some("-30/67"), &[-2, 4, -4, -2], Some("edge")),
    row("11_166", "45/59", Some("-14/59"), &[-4, 4, -2, -2], None),
    row(
        "11_186",
        "39/95",
        Some("-56/95"),
        &[-2, -4, -2, -2, -4, -2],
        Some("path(4)"),
    ),
    row(
        "11_191",
        "19/83",
        Some("-64/83"),
        &[-2, -2, -2, -4, -4, -2],
        Some("edge"),
    ),
    row("11_192", "45/59", Some("-14/59"), &[-4, 4, -2, -2], None),
    row("11_210", "16/73", None, &[4, -2, -4, -2], Some("path(3)")),
    row("11_226", "20/71", None, &[4, 2, -4, 2], Some("path(3)")),
    row(
        "11_229",
        "55/71",
        Some("-16/71"),
        &[-4, 2, -4, -2],
        Some("path(3)"),
    ),
    row(
        "11_235",
        "49/71",
        Some("-22/71"),
        &[-4, -2, -2, -2, -4, -2],
        Some("path(5)"),
    ),
    row(
        "11_236",
        "29/99",
        Some("-70/99"),
        &[-2, -2, -4, -2, -4, -2],
        Some("path(3)"),
    ),
    row(
        "11_238",
        "53/65",
        Some("-12/65"),
        &[-6, -2, -4, -2],
        Some("path(3)"),
    ),
    row(
        "11_243",
        "49/69",
        Some("-20/69"),
        &[-4, -2, -6, -2],
        Some("path(3)"),
    ),
    row(
        "11_311",
        "61/79",
        Some("-18/79"),
        &[-4, 2, -2, -4],
        Some("path(4)"),
    ),
    row("11_333", "14/65", None, &[4, -2, -2, 4], Some("path(4)")),
    row(
        "11_335",
        "17/75",
        Some("-58/75"),
        &[-2, -2, -2, -4, -2, -4],
        Some("path(3)"),
    ),
    row(
        "11_336",
        "11/59",
        Some("-48/59"),
        &[-2, -2, -2, -2, -4, -4],
        Some("edge"),
    ),
    row(
        "11_337",
        "63/89",
        Some("-16/89"),
        &[-6, -2, 4, 2],
        Some("path(3)"),
    ),
    row("11_343", "27/31", Some("-4/31"), &[-8, -4], Some("edge")),
    row(
        "11_356",
        "55/79",
        Some("-24/79"),
        &[-4, -2, -2, -4, -2, -2],
        Some("path(4)"),
    ),
    row(
        "11_357",
        "27/91",
        Some("-64/91"),
        &[-2, -2, -4, -4, -2, -2],
        Some("edge"),
    ),
    row(
        "11_359",
        "43/53",
        Some("-10/79"),
        &[-6, -2, -2, -4],
        Some("path(4)"),
    ),
    row("11_360", "47/57", Some("-10/59"), &[-6, -4, -2, -2], Some("edge")),
    row("11_363", "29/35", Some("-6/35"), &[-6, -6], Some("edge")),
    row(
        "11_365",
        "35/51",
        Some("-16/51"),
        &[-4, -2, -2, -2, -2, -4],
        Some("path(6)"),
    ),
];

/// Rows whose printed fraction disagrees with their own expansion, with the
/// fraction recomputed from the expansion by an independent script.
pub const TYPO_ROWS: &[(&str, &str)] = &[
    ("11_98", "18/77"),
    ("11_119", "34/77"),
    ("11_210", "12/55"),
    ("11_337", "-16/89"),
    ("11_359", "-10/53"),
    ("11_360", "-10/57"),
];

/// 2-bridge knots with a unique minimal genus surface.
pub const UNIQUE_TWO_BRIDGE: &[(&str, &str)] = &[
    ("11_13", "28/61"),
    ("11_59", "15/43"),
    ("11_65", "24/59"),
    ("11_75", "30/83"),
    ("11_77", "50/131"),
    ("11_84", "39/101"),
    ("11_85", "41/107"),
    ("11_89", "44/119"),
    ("11_90", "34/87"),
    ("11_91", "50/129"),
    ("11_93", "34/93"),
    ("11_110", "35/97"),
    ("11_111", "37/103"),
    ("11_117", "43/117"),
    ("11_120", "46/109"),
    ("11_140", "17/65"),
    ("11_144", "30/73"),
    ("11_178", "47/123"),
    ("11_183", "34/115"),
    ("11_185", "30/109"),
    ("11_188", "14/67"),
    ("11_190", "33/85"),
    ("11_193", "36/95"),
    ("11_195", "8/53"),
    ("11_204", "37/101"),
    ("11_205", "40/91"),
    ("11_207", "26/85"),
    ("11_208", "44/105"),
    ("11_211", "12/67"),
    ("11_220", "23/85"),
    ("11_224", "27/89"),
    ("11_225", "24/53"),
    ("11_230", "19/51"),
    ("11_234", "5/37"),
    ("11_242", "9/47"),
    ("11_246", "13/41"),
    ("11_247", "9/19"),
    ("11_307", "18/83"),
    ("11_309", "25/93"),
    ("11_334", "9/49"),
    ("11_339", "13/55"),
    ("11_342", "7/29"),
    ("11_355", "7/45"),
    ("11_358", "5/31"),
    ("11_364", "3/25"),
];

/// Special alternating fixtures under `fixtures/theta`.
pub const THETA_FIXTURES: &[&str] = &[
    "11_237", "11_94", "11_340", "11_43", "11_123", "11_124", "11_200", "11_227", "11_240", "11_241",
    "11_244", "11_245", "11_263", "11_291", "11_292", "11_298", "11_299", "11_318", "11_319", "11_320",
    "11_329", "11_338", "11_354", "11_361",
];

pub fn fixture_path(rel: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(rel)
}

pub fn load_theta_fixture(name: &str) -> PlanarMultigraph {
    let text = std::fs::read_to_string(fixture_path(&format!("theta/{name}.theta"))).unwrap();
    text.parse().unwrap()
}

// ---------------------------------------------------------------------------
// 2-bridge oracles on raw bit vectors.

fn hopf_move(bands: &[i64], tuple: &[u8], k: usize) -> Option<Vec<u8>> {
    let n = bands.len();
    let mut out = tuple.to_vec();
    if n == 1 {
        return Some(out);
    }
    if k == 1 {
        out[0] ^= 1;
    } else if k == n {
        out[n - 2] ^= 1;
    } else {
        if tuple[k - 2] != tuple[k - 1] {
            return None;
        }
        out[k - 2] ^= 1;
        out[k - 1] ^= 1;
    }
    Some(out)
}

fn all_tuples(len: usize) -> Vec<Vec<u8>> {
    (0..1u32 << len)
        .map(|code| (0..len).map(|i| ((code >> i) & 1) as u8).collect())
        .collect()
}

fn tuple_label(t: &[u8]) -> String {
    format!("({})", t.iter().map(|b| b.to_string()).join(","))
}

/// Connected components of the tuples under conditional moves on bands of
/// absolute value 2, found by breadth-first search.
pub fn bfs_orbits(bands: &[i64]) -> Vec<Vec<Vec<u8>>> {
    let hopf: Vec<usize> = (1..=bands.len()).filter(|&k| bands[k - 1].abs() == 2).collect();
    let mut seen = HashSet::new();
    let mut orbits = Vec::new();
    for start in all_tuples(bands.len() - 1) {
        if !seen.insert(start.clone()) {
            continue;
        }
        let mut orbit = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for &k in &hopf {
                if let Some(next) = hopf_move(bands, &t, k) {
                    if seen.insert(next.clone()) {
                        orbit.push(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        orbit.sort();
        orbits.push(orbit);
    }
    orbits
}

/// Complex obtained by running every band in every order from every tuple,
/// as (vertex labels, maximal simplices). Exponential; chains of at most 7 bands.
pub fn brute_force_two_bridge(bands: &[i64]) -> (BTreeSet<String>, BTreeSet<BTreeSet<String>>) {
    let orbits = bfs_orbits(bands);
    let mut label_of = BTreeMap::new();
    for orbit in &orbits {
        let label = tuple_label(&orbit[0]);
        for t in orbit {
            label_of.insert(t.clone(), label.clone());
        }
    }
    let n = bands.len();
    let mut cycles = BTreeSet::new();
    for start in all_tuples(n - 1) {
        for order in (1..=n).permutations(n) {
            let mut t = start.clone();
            let mut visited = BTreeSet::from([label_of[&t].clone()]);
            let mut ok = true;
            for &k in &order {
                match hopf_move(bands, &t, k) {
                    Some(next) => t = next,
                    None => {
                        ok = false;
                        break;
                    }
                }
                visited.insert(label_of[&t].clone());
            }
            if ok && t == start {
                cycles.insert(visited);
            }
        }
    }
    let maximal = cycles
        .iter()
        .filter(|c| !cycles.iter().any(|d| d != *c && c.is_subset(d)))
        .cloned()
        .collect();
    let vertices = label_of.values().cloned().collect();
    (vertices, maximal)
}

// ---------------------------------------------------------------------------
// Random sphere-embedded multigraphs.

/// Grows a connected plane multigraph by pendant edges and chords drawn inside
/// existing faces. Every intermediate stage goes through `PlanarMultigraph::new`.
pub fn random_planar<R: Rng>(rng: &mut R, steps: usize, chord_bias: f64) -> PlanarMultigraph {
    let mut vertices = BTreeSet::from([0u32]);
    let mut edges: BTreeMap<u32, PlanarEdge> = BTreeMap::new();
    let mut rotation: BTreeMap<u32, Vec<Dart>> = BTreeMap::from([(0, Vec::new())]);
    let mut g = PlanarMultigraph::new(vertices.clone(), edges.clone(), rotation.clone()).unwrap();
    for _ in 0..steps {
        let id = edges.len() as u32 + 1;
        let forward = rng.gen_bool(0.5);
        let weight = rng.gen_range(1..3);
        if edges.is_empty() || !rng.gen_bool(chord_bias) {
            let &u = vertices.iter().nth(rng.gen_range(0..vertices.len())).unwrap();
            let w = vertices.len() as u32;
            let spot = rng.gen_range(0..=rotation[&u].len());
            rotation.get_mut(&u).unwrap().insert(spot, Dart::new(id, 0));
            rotation.insert(w, vec![Dart::new(id, 1)]);
            vertices.insert(w);
            edges.insert(id, PlanarEdge::new(u, w, weight, forward));
        } else {
            let faces = g.faces();
            let face = &faces[rng.gen_range(0..faces.len())];
            let len = face.len();
            let (a, b) = (rng.gen_range(0..len), rng.gen_range(0..len));
            let (i, j) = (a.min(b), a.max(b));
            let u = g.origin(face[i]);
            let v = g.origin(face[j]);
            let after_u = face[(i + len - 1) % len].reversed();
            let after_v = face[(j + len - 1) % len].reversed();
            insert_after(rotation.get_mut(&u).unwrap(), after_u, Dart::new(id, 0));
            insert_after(rotation.get_mut(&v).unwrap(), after_v, Dart::new(id, 1));
            edges.insert(id, PlanarEdge::new(u, v, weight, forward));
        }
        g = PlanarMultigraph::new(vertices.clone(), edges.clone(), rotation.clone()).unwrap();
    }
    g
}

fn insert_after(ring: &mut Vec<Dart>, after: Dart, dart: Dart) {
    let pos = ring.iter().position(|&d| d == after).unwrap();
    ring.insert(pos + 1, dart);
}

/// Merges bigon faces one at a time in a random order, keeping a random edge
/// of each pair. Returns (sorted endpoint pair, weight) per surviving edge and
/// the face count.
pub fn shuffled_bigon_reduction<R: Rng>(
    g: &PlanarMultigraph,
    rng: &mut R,
) -> (Vec<((u32, u32), u64)>, usize) {
    let mut g = g.clone();
    loop {
        let mut bigons: Vec<(u32, u32)> = g
            .faces()
            .iter()
            .filter(|f| f.len() == 2 && f[0].edge != f[1].edge)
            .map(|f| (f[0].edge, f[1].edge))
            .collect();
        if bigons.is_empty() {
            break;
        }
        bigons.shuffle(rng);
        let (mut keep, mut drop) = bigons[0];
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut keep, &mut drop);
        }
        let mut edges = g.edges().clone();
        let dropped = edges.remove(&drop).unwrap();
        edges.get_mut(&keep).unwrap().weight += dropped.weight;
        let rotation = g
            .vertices()
            .iter()
            .map(|&v| {
                (
                    v,
                    g.rotation(v).iter().copied().filter(|d| d.edge != drop).collect(),
                )
            })
            .collect();
        g = PlanarMultigraph::new(g.vertices().clone(), edges, rotation).unwrap();
    }
    let mut summary: Vec<_> = g
        .edges()
        .values()
        .map(|e| ((e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1])), e.weight))
        .collect();
    summary.sort();
    (summary, g.faces().len())
}

// ---------------------------------------------------------------------------
// Fibredness by greedy reduction.

/// Random connected multigraph with at most `max_edges` edges, loops allowed.
pub fn random_reduction_graph<R: Rng>(rng: &mut R, max_edges: usize) -> (usize, Vec<(usize, usize)>) {
    let vertex_count = rng.gen_range(1..=max_edges.clamp(1, 5));
    let mut edges: Vec<(usize, usize)> = (1..vertex_count).map(|v| (rng.gen_range(0..v), v)).collect();
    let extra = rng.gen_range(0..=max_edges - edges.len());
    for _ in 0..extra {
        edges.push((rng.gen_range(0..vertex_count), rng.gen_range(0..vertex_count)));
    }
    edges.shuffle(rng);
    (vertex_count, edges)
}

/// One random run of loop deletions and valence-2 contractions; true when it
/// ends at a single vertex with no edges.
pub fn greedy_reduces<R: Rng>(vertex_count: usize, edges: &[(usize, usize)], rng: &mut R) -> bool {
    let mut alive = vec![true; vertex_count];
    let mut edges = edges.to_vec();
    loop {
        if edges.is_empty() {
            return alive.iter().filter(|&&a| a).count() == 1;
        }
        let valence = |v: usize, edges: &[(usize, usize)]| {
            edges
                .iter()
                .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
                .sum::<usize>()
        };
        let mut options: Vec<(usize, Option<usize>)> = Vec::new();
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a == b {
                options.push((i, None));
            } else {
                for v in [a, b] {
                    if valence(v, &edges) == 2 {
                        options.push((i, Some(v)));
                    }
                }
            }
        }
        let Some(&(i, contract)) = options.choose(rng) else {
            return false;
        };
        let (a, b) = edges.remove(i);
        if let Some(v) = contract {
            let other = if v == a { b } else { a };
            for e in edges.iter_mut() {
                if e.0 == v {
                    e.0 = other;
                }
                if e.1 == v {
                    e.1 = other;
                }
            }
            alive[v] = false;
        }
    }
}

/// True when any of `tries` greedy runs succeeds.
pub fn greedy_fibred<R: Rng>(
    vertex_count: usize,
    edges: &[(usize, usize)],
    tries: usize,
    rng: &mut R,
) -> bool {
    (0..tries).any(|_| greedy_reduces(vertex_count, edges, rng))
}
