//! Planar multigraphs given by a rotation system, and their text format.
//!
//! ```text
//! # two vertices, three parallel edges
//! vertex 1
//! vertex 2
//! edge 1 1 2 weight=0 dir=+
//! edge 2 1 2 weight=1 dir=+
//! edge 3 1 2 weight=0 dir=+
//! rot 1 1 2 3
//! rot 2 3 2 1
//! ```
//!
//! `dir=+` orients the edge from its first endpoint to its second. A rotation
//! lists the edge-ends at a vertex in counterclockwise order; both ends of a
//! loop sit at the same vertex and are written `id:t` (first end) and `id:h`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One end of an edge, seen as leaving the vertex at that end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: u32,
    /// 0 for the end at the first endpoint, 1 for the second.
    pub side: u8,
}

impl Dart {
    pub fn new(edge: u32, side: u8) -> Self {
        Self { edge, side }
    }

    pub fn reversed(self) -> Self {
        Self {
            edge: self.edge,
            side: 1 - self.side,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEdge {
    pub ends: [u32; 2],
    pub weight: u64,
    /// Oriented from `ends[0]` to `ends[1]`.
    pub forward: bool,
}

impl PlanarEdge {
    pub fn new(u: u32, v: u32, weight: u64, forward: bool) -> Self {
        Self {
            ends: [u, v],
            weight,
            forward,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    /// Vertex the edge's orientation points away from.
    pub fn source(&self) -> u32 {
        if self.forward {
            self.ends[0]
        } else {
            self.ends[1]
        }
    }

    fn pair(&self) -> (u32, u32) {
        let [a, b] = self.ends;
        (a.min(b), a.max(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarMultigraph {
    vertices: BTreeSet<u32>,
    edges: BTreeMap<u32, PlanarEdge>,
    rotation: BTreeMap<u32, Vec<Dart>>,
}

impl PlanarMultigraph {
    /// Validates the rotation system, connectivity and the sphere Euler count.
    pub fn new(
        vertices: BTreeSet<u32>,
        edges: BTreeMap<u32, PlanarEdge>,
        mut rotation: BTreeMap<u32, Vec<Dart>>,
    ) -> Result<Self> {
        rotation.retain(|_, rot| !rot.is_empty());
        let g = Self {
            vertices,
            edges,
            rotation,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn vertices(&self) -> &BTreeSet<u32> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<u32, PlanarEdge> {
        &self.edges
    }

    pub fn edge(&self, id: u32) -> Option<&PlanarEdge> {
        self.edges.get(&id)
    }

    pub fn rotation(&self, vertex: u32) -> &[Dart] {
        self.rotation.get(&vertex).map_or(&[], Vec::as_slice)
    }

    pub fn weight(&self, id: u32) -> Option<u64> {
        self.edges.get(&id).map(|e| e.weight)
    }

    /// Vertex a dart leaves from.
    pub fn origin(&self, d: Dart) -> u32 {
        self.edges[&d.edge].ends[d.side as usize]
    }

    /// Orientation sign of a dart: +1 when it runs along its edge's direction.
    pub fn sign(&self, d: Dart) -> i8 {
        let e = &self.edges[&d.edge];
        if (d.side == 0) == e.forward {
            1
        } else {
            -1
        }
    }

    fn next_around(&self, d: Dart) -> Dart {
        let rot = &self.rotation[&self.origin(d)];
        let i = rot
            .iter()
            .position(|x| *x == d)
            .expect("dart missing from rotation");
        rot[(i + 1) % rot.len()]
    }

    /// Dart following `d` along its face boundary.
    pub fn face_successor(&self, d: Dart) -> Dart {
        self.next_around(d.reversed())
    }

    /// Boundary walks, each starting at its smallest dart, in order of that dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = HashSet::new();
        let mut faces = Vec::new();
        for &id in self.edges.keys() {
            for side in 0..2 {
                let start = Dart::new(id, side);
                if seen.contains(&start) {
                    continue;
                }
                let mut walk = Vec::new();
                let mut d = start;
                while seen.insert(d) {
                    walk.push(d);
                    d = self.face_successor(d);
                }
                faces.push(walk);
            }
        }
        faces
    }

    fn face_count(&self) -> usize {
        if self.edges.is_empty() {
            self.vertices.len()
        } else {
            self.faces().len()
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.face_count() as i64
    }

    pub fn is_connected(&self) -> bool {
        let Some(&first) = self.vertices.iter().next() else {
            return false;
        };
        let mut adj: HashMap<u32, Vec<u32>> = HashMap::new();
        for e in self.edges.values() {
            adj.entry(e.ends[0]).or_default().push(e.ends[1]);
            adj.entry(e.ends[1]).or_default().push(e.ends[0]);
        }
        let mut seen = HashSet::from([first]);
        let mut stack = vec![first];
        while let Some(v) = stack.pop() {
            for &w in adj.get(&v).map_or(&[][..], Vec::as_slice) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::Embedding("graph has no vertices".into()));
        }
        for (id, e) in &self.edges {
            for v in e.ends {
                if !self.vertices.contains(&v) {
                    return Err(Error::Embedding(format!("edge {id} uses unknown vertex {v}")));
                }
            }
        }
        let mut listed = HashSet::new();
        for (v, rot) in &self.rotation {
            if !self.vertices.contains(v) {
                return Err(Error::Embedding(format!("rotation at unknown vertex {v}")));
            }
            for d in rot {
                let Some(e) = self.edges.get(&d.edge) else {
                    return Err(Error::Embedding(format!(
                        "rotation at {v} uses unknown edge {}",
                        d.edge
                    )));
                };
                if d.side > 1 || e.ends[d.side as usize] != *v {
                    return Err(Error::Embedding(format!(
                        "edge {} has no end at vertex {v}",
                        d.edge
                    )));
                }
                if !listed.insert(*d) {
                    return Err(Error::Embedding(format!(
                        "edge-end {}:{} listed twice",
                        d.edge, d.side
                    )));
                }
            }
        }
        if listed.len() != 2 * self.edges.len() {
            return Err(Error::Embedding("rotation system misses some edge-ends".into()));
        }
        if !self.is_connected() {
            return Err(Error::Embedding("graph is disconnected".into()));
        }
        let chi = self.euler_characteristic();
        if chi != 2 {
            return Err(Error::Embedding(format!(
                "V - E + F = {chi}, the embedding is not spherical"
            )));
        }
        Ok(())
    }

    /// Number of edges joining each unordered pair of distinct vertices.
    pub fn multiplicities(&self) -> HashMap<(u32, u32), usize> {
        let mut m = HashMap::new();
        for e in self.edges.values().filter(|e| !e.is_loop()) {
            *m.entry(e.pair()).or_insert(0) += 1;
        }
        m
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.edges.values().any(|e| e.pair() == (u.min(v), u.max(v)))
    }

    pub(crate) fn remove_edge(&mut self, id: u32) {
        self.edges.remove(&id);
        for rot in self.rotation.values_mut() {
            rot.retain(|d| d.edge != id);
        }
        self.rotation.retain(|_, rot| !rot.is_empty());
    }

    pub(crate) fn set_weight(&mut self, id: u32, weight: u64) {
        if let Some(e) = self.edges.get_mut(&id) {
            e.weight = weight;
        }
    }

    /// Adds an edge whose end `side` is placed right after `after_u` / `after_v`.
    pub(crate) fn insert_edge(&mut self, id: u32, edge: PlanarEdge, after_u: Dart, after_v: Dart) {
        let [u, v] = edge.ends;
        self.edges.insert(id, edge);
        for (vertex, after, side) in [(u, after_u, 0), (v, after_v, 1)] {
            let rot = self.rotation.entry(vertex).or_default();
            let at = rot.iter().position(|d| *d == after).map_or(rot.len(), |i| i + 1);
            rot.insert(at, Dart::new(id, side));
        }
    }

    /// Same vertices with only the listed edges; rotations restricted by deletion.
    pub fn restrict(&self, keep: &BTreeSet<u32>) -> Self {
        Self {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .filter(|(id, _)| keep.contains(id))
                .map(|(id, e)| (*id, e.clone()))
                .collect(),
            rotation: self
                .rotation
                .iter()
                .map(|(v, rot)| {
                    (
                        *v,
                        rot.iter()
                            .filter(|d| keep.contains(&d.edge))
                            .copied()
                            .collect::<Vec<_>>(),
                    )
                })
                .filter(|(_, rot)| !rot.is_empty())
                .collect(),
        }
    }

    /// Drops vertices outside `keep` together with their rotations; edges must not use them.
    pub(crate) fn restrict_vertices(mut self, keep: &BTreeSet<u32>) -> Self {
        self.vertices.retain(|v| keep.contains(v));
        self.rotation.retain(|v, _| keep.contains(v));
        self
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PlanarMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for (id, e) in &self.edges {
            let dir = if e.forward { '+' } else { '-' };
            writeln!(
                f,
                "edge {id} {} {} weight={} dir={dir}",
                e.ends[0], e.ends[1], e.weight
            )?;
        }
        for (v, rot) in &self.rotation {
            if rot.is_empty() {
                continue;
            }
            write!(f, "rot {v}")?;
            for d in rot {
                if self.edges[&d.edge].is_loop() {
                    write!(f, " {}:{}", d.edge, if d.side == 0 { 't' } else { 'h' })?;
                } else {
                    write!(f, " {}", d.edge)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn table_err(line: usize, message: impl Into<String>) -> Error {
    Error::Table {
        line: line as u64,
        message: message.into(),
    }
}

fn parse_id(token: &str, line: usize) -> Result<u32> {
    token
        .parse()
        .map_err(|_| table_err(line, format!("expected a non-negative id, got {token:?}")))
}

impl FromStr for PlanarMultigraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeMap::new();
        let mut raw_rot: Vec<(usize, u32, Vec<String>)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            let mut tokens = content.split_whitespace();
            let Some(keyword) = tokens.next() else {
                continue;
            };
            let rest: Vec<&str> = tokens.collect();
            match keyword {
                "vertex" => {
                    let [id] = rest[..] else {
                        return Err(table_err(line, "expected `vertex <id>`"));
                    };
                    if !vertices.insert(parse_id(id, line)?) {
                        return Err(table_err(line, format!("duplicate vertex {id}")));
                    }
                }
                "edge" => {
                    let [id, u, v, weight, dir] = rest[..] else {
                        return Err(table_err(
                            line,
                            "expected `edge <id> <u> <v> weight=<w> dir=<+|->`",
                        ));
                    };
                    let weight = weight
                        .strip_prefix("weight=")
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| table_err(line, format!("bad weight field {weight:?}")))?;
                    let forward = match dir {
                        "dir=+" => true,
                        "dir=-" => false,
                        _ => return Err(table_err(line, format!("bad dir field {dir:?}"))),
                    };
                    let id = parse_id(id, line)?;
                    let edge = PlanarEdge::new(parse_id(u, line)?, parse_id(v, line)?, weight, forward);
                    if edges.insert(id, edge).is_some() {
                        return Err(table_err(line, format!("duplicate edge {id}")));
                    }
                }
                "rot" => {
                    let Some((v, ends)) = rest.split_first() else {
                        return Err(table_err(line, "expected `rot <vertex> <edge-ends>`"));
                    };
                    raw_rot.push((
                        line,
                        parse_id(v, line)?,
                        ends.iter().map(|s| s.to_string()).collect(),
                    ));
                }
                other => return Err(table_err(line, format!("unknown keyword {other:?}"))),
            }
        }

        let mut rotation: BTreeMap<u32, Vec<Dart>> = BTreeMap::new();
        for (line, v, ends) in raw_rot {
            if rotation.contains_key(&v) {
                return Err(table_err(line, format!("second rotation for vertex {v}")));
            }
            let mut rot = Vec::with_capacity(ends.len());
            for token in ends {
                let (id, tag) = match token.split_once(':') {
                    Some((id, tag)) => (id, Some(tag)),
                    None => (token.as_str(), None),
                };
                let id = parse_id(id, line)?;
                let edge: &PlanarEdge = edges
                    .get(&id)
                    .ok_or_else(|| table_err(line, format!("unknown edge {id}")))?;
                let side = match tag {
                    Some("t") => 0,
                    Some("h") => 1,
                    Some(other) => return Err(table_err(line, format!("bad end tag {other:?}"))),
                    None if edge.is_loop() => {
                        return Err(table_err(line, format!("loop {id} needs an end tag :t or :h")))
                    }
                    None if edge.ends[0] == v => 0,
                    None if edge.ends[1] == v => 1,
                    None => return Err(table_err(line, format!("edge {id} does not meet vertex {v}"))),
                };
                rot.push(Dart::new(id, side));
            }
            rotation.insert(v, rot);
        }
        Self::new(vertices, edges, rotation)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const THETA_SHAPE: &str = "\
vertex 1
vertex 2
edge 1 1 2 weight=0 dir=+
edge 2 1 2 weight=1 dir=+
edge 3 1 2 weight=0 dir=+
rot 1 1 2 3
rot 2 3 2 1
";

    #[test]
    fn theta_faces() {
        let g: PlanarMultigraph = THETA_SHAPE.parse().unwrap();
        let faces = g.faces();
        assert_eq!(faces.len(), 3);
        assert!(faces.iter().all(|f| f.len() == 2));
        assert_eq!(g.euler_characteristic(), 2);
    }

    #[test]
    fn loop_faces() {
        let g: PlanarMultigraph = "vertex 0\nedge 0 0 0 weight=1 dir=+\nrot 0 0:t 0:h\n"
            .parse()
            .unwrap();
        assert_eq!(g.faces().len(), 2);
    }

    #[test]
    fn path_faces() {
        let g: PlanarMultigraph =
            "vertex 0\nvertex 1\nvertex 2\nedge 0 0 1 weight=1 dir=+\nedge 1 1 2 weight=1 dir=-\nrot 0 0\nrot 1 0 1\nrot 2 1\n"
                .parse()
                .unwrap();
        let faces = g.faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 4);
    }

    #[test]
    fn single_vertex() {
        let g: PlanarMultigraph = "vertex 7\n".parse().unwrap();
        assert_eq!(g.euler_characteristic(), 2);
    }

    #[test]
    fn text_round_trip() {
        let g: PlanarMultigraph = THETA_SHAPE.parse().unwrap();
        let again: PlanarMultigraph = g.to_text().parse().unwrap();
        assert_eq!(g, again);
        let looped: PlanarMultigraph = "vertex 0\nedge 4 0 0 weight=2 dir=-\nrot 0 4:h 4:t\n"
            .parse()
            .unwrap();
        assert_eq!(looped.to_text().parse::<PlanarMultigraph>().unwrap(), looped);
    }

    #[test]
    fn rejects_bad_input() {
        let twisted = "\
vertex 1
vertex 2
edge 1 1 2 weight=1 dir=+
edge 2 1 2 weight=1 dir=+
edge 3 1 2 weight=1 dir=+
edge 4 1 2 weight=1 dir=+
rot 1 1 2 3 4
rot 2 1 2 3 4
";
        assert!(matches!(
            twisted.parse::<PlanarMultigraph>(),
            Err(Error::Embedding(_))
        ));
        assert!(matches!(
            "vertex 1\nvertex 2\n".parse::<PlanarMultigraph>(),
            Err(Error::Embedding(_))
        ));
        assert!(matches!(
            "vertex 1\nedge 1 1 1 weight=1 dir=+\nrot 1 1 1\n".parse::<PlanarMultigraph>(),
            Err(Error::Table { line: 3, .. })
        ));
        assert!(matches!(
            "vertex 1\nedge 1 1 2 weight=x dir=+\n".parse::<PlanarMultigraph>(),
            Err(Error::Table { line: 2, .. })
        ));
        assert!("banana 3\n".parse::<PlanarMultigraph>().is_err());
        assert!("vertex 1\nvertex 2\nedge 1 1 2 weight=1 dir=+\nrot 1 1\n"
            .parse::<PlanarMultigraph>()
            .is_err());
    }

    #[test]
    fn signs_follow_direction() {
        let g: PlanarMultigraph = THETA_SHAPE.parse().unwrap();
        assert_eq!(g.sign(Dart::new(1, 0)), 1);
        assert_eq!(g.sign(Dart::new(1, 1)), -1);
    }
}
