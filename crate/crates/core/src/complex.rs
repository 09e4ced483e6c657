//! Flag simplicial complexes stored by their maximal simplices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest complex accepted by [`isomorphic`].
pub const MAX_ISOMORPHISM_VERTICES: usize = 64;

/// Largest search space (product of invariant-cell factorials) for [`SimplicialComplex::canonical_form`].
pub const MAX_CANONICAL_LABELINGS: usize = 40_320;

pub type Simplex = BTreeSet<String>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertices: BTreeSet<String>,
    maximal: BTreeSet<Simplex>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<String>,
    maximal_simplices: Vec<Vec<String>>,
}

impl SimplicialComplex {
    /// Checks the stored simplices are nonempty, inclusion-maximal and cover `vertices`.
    pub fn new(vertices: BTreeSet<String>, maximal: BTreeSet<Simplex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Invariant("complex has no vertices".into()));
        }
        for s in &maximal {
            if s.is_empty() {
                return Err(Error::Invariant("empty simplex".into()));
            }
            if let Some(v) = s.iter().find(|v| !vertices.contains(*v)) {
                return Err(Error::Invariant(format!("simplex vertex {v} is not a vertex")));
            }
            if maximal.iter().any(|t| t != s && s.is_subset(t)) {
                return Err(Error::Invariant(format!("simplex {s:?} is not maximal")));
            }
        }
        let covered: BTreeSet<&String> = maximal.iter().flatten().collect();
        if let Some(v) = vertices.iter().find(|v| !covered.contains(v)) {
            return Err(Error::Invariant(format!("vertex {v} lies in no simplex")));
        }
        Ok(Self { vertices, maximal })
    }

    /// Keeps only the inclusion-maximal members of `simplices`; uncovered vertices become 0-simplices.
    pub fn from_simplices<I>(vertices: BTreeSet<String>, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut all: BTreeSet<Simplex> = simplices.into_iter().filter(|s| !s.is_empty()).collect();
        let covered: BTreeSet<String> = all.iter().flatten().cloned().collect();
        for v in vertices.difference(&covered) {
            all.insert(BTreeSet::from([v.clone()]));
        }
        let maximal = all
            .iter()
            .filter(|s| !all.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
            .cloned()
            .collect();
        Self::new(vertices, maximal)
    }

    pub fn point(label: impl Into<String>) -> Self {
        let v = label.into();
        Self {
            vertices: BTreeSet::from([v.clone()]),
            maximal: BTreeSet::from([BTreeSet::from([v])]),
        }
    }

    pub fn vertices(&self) -> &BTreeSet<String> {
        &self.vertices
    }

    pub fn maximal_simplices(&self) -> &BTreeSet<Simplex> {
        &self.maximal
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn dimension(&self) -> usize {
        self.maximal.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    /// Edges of the 1-skeleton, each as an ordered pair `(a, b)` with `a < b`.
    pub fn edges(&self) -> BTreeSet<(String, String)> {
        let mut edges = BTreeSet::new();
        for s in &self.maximal {
            let vs: Vec<&String> = s.iter().collect();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    edges.insert((vs[i].clone(), vs[j].clone()));
                }
            }
        }
        edges
    }

    pub fn is_flag(&self) -> bool {
        flag_closure(&self.edges(), &self.vertices)
            .map(|c| c == *self)
            .unwrap_or(false)
    }

    pub fn is_connected(&self) -> bool {
        let index: BTreeMap<&String, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for s in &self.maximal {
            let mut it = s.iter().map(|v| index[v]);
            if let Some(first) = it.next() {
                for other in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, other));
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, 0);
        (0..self.vertices.len()).all(|i| find(&mut parent, i) == root)
    }

    /// Names the complex when it is a point, a path or a single simplex.
    pub fn recognize(&self) -> ComplexShape {
        let n = self.vertex_count();
        if n == 1 {
            return ComplexShape::Point;
        }
        if self.maximal.len() == 1 {
            return ComplexShape::Simplex(n - 1).canonical();
        }
        if self.maximal.iter().all(|s| s.len() == 2) && self.is_connected() {
            let edges = self.edges();
            let mut degree: BTreeMap<&String, usize> = BTreeMap::new();
            for (a, b) in &edges {
                *degree.entry(a).or_default() += 1;
                *degree.entry(b).or_default() += 1;
            }
            if edges.len() == n - 1 && degree.values().all(|&d| d <= 2) {
                return ComplexShape::Path(n);
            }
        }
        ComplexShape::Explicit(self.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("complex serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let j = ComplexJson {
            vertices: self.vertices.iter().cloned().collect(),
            maximal_simplices: self.maximal.iter().map(|s| s.iter().cloned().collect()).collect(),
        };
        serde_json::to_value(j).expect("complex serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: ComplexJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("complex JSON: {e}")))?;
        Self::new(
            j.vertices.into_iter().collect(),
            j.maximal_simplices
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        )
    }

    /// Graphviz rendering of the 1-skeleton; simplices of dimension ≥ 2 are listed as comments.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph kakimizu {\n");
        for v in &self.vertices {
            out.push_str(&format!("  {v:?};\n"));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("  {a:?} -- {b:?};\n"));
        }
        for s in self.maximal.iter().filter(|s| s.len() >= 3) {
            let members: Vec<String> = s.iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&format!("  // {}-simplex: {}\n", s.len() - 1, members.join(" ")));
        }
        out.push_str("}\n");
        out
    }

    pub fn relabel<F: Fn(&str) -> String>(&self, f: F) -> Result<Self> {
        let vertices: BTreeSet<String> = self.vertices.iter().map(|v| f(v)).collect();
        if vertices.len() != self.vertices.len() {
            return Err(Error::Invariant("relabeling is not injective".into()));
        }
        let maximal = self
            .maximal
            .iter()
            .map(|s| s.iter().map(|v| f(v)).collect())
            .collect();
        Self::new(vertices, maximal)
    }

    /// Relabels vertices `v0, v1, ...` so that isomorphic complexes get identical values.
    pub fn canonical_form(&self) -> Result<Self> {
        let inv = Invariants::of(self);
        let mut order: Vec<usize> = (0..inv.n).collect();
        order.sort_by(|&a, &b| inv.key[a].cmp(&inv.key[b]));
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match cells.last_mut() {
                Some(c) if inv.key[c[0]] == inv.key[v] => c.push(v),
                _ => cells.push(vec![v]),
            }
        }
        let mut space: usize = 1;
        for c in &cells {
            for k in 1..=c.len() {
                space = space.saturating_mul(k);
            }
        }
        if space > MAX_CANONICAL_LABELINGS {
            return Err(Error::SizeBound {
                what: "canonical labelings",
                actual: space,
                bound: MAX_CANONICAL_LABELINGS,
            });
        }
        let mut best: Option<Vec<Vec<usize>>> = None;
        let mut label = vec![usize::MAX; inv.n];
        permute_cells(&cells, 0, 0, &mut label, &mut |label| {
            let mut enc: Vec<Vec<usize>> = inv
                .simplices
                .iter()
                .map(|s| {
                    let mut t: Vec<usize> = s.iter().map(|&v| label[v]).collect();
                    t.sort_unstable();
                    t
                })
                .collect();
            enc.sort();
            if best.as_ref().map_or(true, |b| enc < *b) {
                best = Some(enc);
            }
        });
        let best = best.unwrap_or_default();
        let name = |i: usize| format!("v{i:03}");
        Self::new(
            (0..inv.n).map(name).collect(),
            best.into_iter()
                .map(|s| s.into_iter().map(name).collect())
                .collect(),
        )
    }
}

fn permute_cells(
    cells: &[Vec<usize>],
    cell: usize,
    next: usize,
    label: &mut [usize],
    visit: &mut dyn FnMut(&[usize]),
) {
    if cell == cells.len() {
        visit(label);
        return;
    }
    let members = &cells[cell];
    fn rec(
        members: &[usize],
        used: &mut Vec<bool>,
        slot: usize,
        base: usize,
        label: &mut [usize],
        done: &mut dyn FnMut(&mut [usize]),
    ) {
        if slot == members.len() {
            done(label);
            return;
        }
        for i in 0..members.len() {
            if !used[i] {
                used[i] = true;
                label[members[i]] = base + slot;
                rec(members, used, slot + 1, base, label, done);
                used[i] = false;
            }
        }
    }
    let mut used = vec![false; members.len()];
    rec(members, &mut used, 0, next, label, &mut |label| {
        permute_cells(cells, cell + 1, next + members.len(), label, visit)
    });
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.vertex_count();
        write!(f, "{n} {};", if n == 1 { "vertex" } else { "vertices" })?;
        for s in &self.maximal {
            let members: Vec<&str> = s.iter().map(String::as_str).collect();
            write!(f, " {{{}}}", members.join(", "))?;
        }
        Ok(())
    }
}

/// Flag complex of the graph `(vertices, edges)`: its maximal simplices are the maximal cliques.
pub fn flag_closure(
    edges: &BTreeSet<(String, String)>,
    vertices: &BTreeSet<String>,
) -> Result<SimplicialComplex> {
    let labels: Vec<&String> = vertices.iter().collect();
    let index: BTreeMap<&String, usize> = labels.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut adj = vec![BTreeSet::new(); labels.len()];
    for (a, b) in edges {
        let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) else {
            return Err(Error::Invariant(format!("edge {a}-{b} leaves the vertex set")));
        };
        if i != j {
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }
    let mut cliques = Vec::new();
    bron_kerbosch(
        &adj,
        BTreeSet::new(),
        (0..labels.len()).collect(),
        BTreeSet::new(),
        &mut cliques,
    );
    let maximal = cliques
        .into_iter()
        .map(|c| c.into_iter().map(|i| labels[i].clone()).collect())
        .collect();
    SimplicialComplex::new(vertices.clone(), maximal)
}

// Pivot: the vertex of P ∪ X with most neighbours in P, smallest index on ties.
fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: BTreeSet<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<BTreeSet<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by(|&a, &b| {
            let ca = adj[a].intersection(&p).count();
            let cb = adj[b].intersection(&p).count();
            ca.cmp(&cb).then(b.cmp(&a))
        })
        .expect("P is nonempty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.insert(v);
        let p2 = p.intersection(&adj[v]).copied().collect();
        let x2 = x.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.remove(&v);
        x.insert(v);
    }
}

struct Invariants {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
    key: Vec<(usize, Vec<usize>)>,
    simplices: Vec<Vec<usize>>,
}

impl Invariants {
    fn of(c: &SimplicialComplex) -> Self {
        let index: BTreeMap<&String, usize> = c.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let n = c.vertices.len();
        let simplices: Vec<Vec<usize>> = c
            .maximal
            .iter()
            .map(|s| s.iter().map(|v| index[v]).collect())
            .collect();
        let mut adj = vec![BTreeSet::new(); n];
        let mut sizes = vec![Vec::new(); n];
        for s in &simplices {
            for &a in s {
                sizes[a].push(s.len());
                for &b in s {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
        }
        let key = (0..n)
            .map(|v| {
                sizes[v].sort_unstable();
                (adj[v].len(), sizes[v].clone())
            })
            .collect();
        Self {
            n,
            adj,
            key,
            simplices,
        }
    }
}

/// Whether some vertex bijection carries the maximal simplices of `a` onto those of `b`.
pub fn isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<bool> {
    for c in [a, b] {
        if c.vertex_count() > MAX_ISOMORPHISM_VERTICES {
            return Err(Error::SizeBound {
                what: "complex vertices",
                actual: c.vertex_count(),
                bound: MAX_ISOMORPHISM_VERTICES,
            });
        }
    }
    if a.vertex_count() != b.vertex_count() || a.maximal.len() != b.maximal.len() {
        return Ok(false);
    }
    let (ia, ib) = (Invariants::of(a), Invariants::of(b));
    let mut ka = ia.key.clone();
    let mut kb = ib.key.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return Ok(false);
    }
    let target: BTreeSet<Vec<usize>> = ib
        .simplices
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s
        })
        .collect();
    let candidates: Vec<Vec<usize>> = (0..ia.n)
        .map(|v| (0..ib.n).filter(|&w| ia.key[v] == ib.key[w]).collect())
        .collect();
    let mut order: Vec<usize> = (0..ia.n).collect();
    order.sort_by_key(|&v| (candidates[v].len(), v));
    let mut map = vec![usize::MAX; ia.n];
    let mut used = vec![false; ib.n];
    Ok(extend(
        &ia,
        &ib,
        &target,
        &candidates,
        &order,
        0,
        &mut map,
        &mut used,
    ))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    ia: &Invariants,
    ib: &Invariants,
    target: &BTreeSet<Vec<usize>>,
    candidates: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return ia.simplices.iter().all(|s| {
            let mut img: Vec<usize> = s.iter().map(|&v| map[v]).collect();
            img.sort_unstable();
            target.contains(&img)
        });
    }
    let v = order[depth];
    for &w in &candidates[v] {
        if used[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| ia.adj[v].contains(&u) == ib.adj[w].contains(&map[u]));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(ia, ib, target, candidates, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Named shape of a small complex.
#[derive(Clone, Debug)]
pub enum ComplexShape {
    Point,
    /// Path on `n` vertices.
    Path(usize),
    /// Full simplex of dimension `d`.
    Simplex(usize),
    Explicit(SimplicialComplex),
}

impl ComplexShape {
    /// `path(1)` and `simplex(0)` are `point`; `simplex(1)` is `path(2)`.
    pub fn canonical(self) -> Self {
        match self {
            ComplexShape::Path(1) | ComplexShape::Simplex(0) => ComplexShape::Point,
            ComplexShape::Simplex(1) => ComplexShape::Path(2),
            other => other,
        }
    }

    /// A representative complex with vertices `T1, T2, ...` (or `T` for a point).
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let name = |i: usize| format!("T{i}");
        match self.clone().canonical() {
            ComplexShape::Point => Ok(SimplicialComplex::point("T")),
            ComplexShape::Path(0) => Err(Error::Parse("path(0) has no vertices".into())),
            ComplexShape::Path(n) => {
                let vertices = (1..=n).map(name).collect();
                let edges = (1..n).map(|i| BTreeSet::from([name(i), name(i + 1)]));
                SimplicialComplex::new(vertices, edges.collect())
            }
            ComplexShape::Simplex(d) => {
                let vertices: BTreeSet<String> = (1..=d + 1).map(name).collect();
                SimplicialComplex::new(vertices.clone(), BTreeSet::from([vertices]))
            }
            ComplexShape::Explicit(c) => Ok(c),
        }
    }

    pub fn matches(&self, c: &SimplicialComplex) -> Result<bool> {
        isomorphic(&self.to_complex()?, c)
    }
}

impl PartialEq for ComplexShape {
    fn eq(&self, other: &Self) -> bool {
        match (self.clone().canonical(), other.clone().canonical()) {
            (ComplexShape::Point, ComplexShape::Point) => true,
            (ComplexShape::Path(a), ComplexShape::Path(b)) => a == b,
            (ComplexShape::Simplex(a), ComplexShape::Simplex(b)) => a == b,
            (a, b) => match (a.to_complex(), b.to_complex()) {
                (Ok(x), Ok(y)) => isomorphic(&x, &y).unwrap_or(false),
                _ => false,
            },
        }
    }
}

impl fmt::Display for ComplexShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexShape::Point => f.write_str("point"),
            ComplexShape::Path(n) => write!(f, "path({n})"),
            ComplexShape::Simplex(d) => write!(f, "simplex({d})"),
            ComplexShape::Explicit(c) => write!(f, "explicit({c})"),
        }
    }
}

impl FromStr for ComplexShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "point" {
            return Ok(ComplexShape::Point);
        }
        if s == "edge" {
            return Ok(ComplexShape::Path(2));
        }
        let arg = |prefix: &str| -> Option<Result<usize>> {
            s.strip_prefix(prefix)?.strip_suffix(')').map(|n| {
                n.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad shape size in {s:?}")))
            })
        };
        if let Some(n) = arg("path(") {
            let n = n?;
            if n == 0 {
                return Err(Error::Parse("path(0) has no vertices".into()));
            }
            return Ok(ComplexShape::Path(n));
        }
        if let Some(d) = arg("simplex(") {
            return Ok(ComplexShape::Simplex(d?));
        }
        Err(Error::Parse(format!(
            "expected point, edge, path(n) or simplex(d), got {s:?}"
        )))
    }
}
