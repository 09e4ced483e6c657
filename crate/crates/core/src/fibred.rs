//! Fibredness of special alternating pieces by graph reduction.
//!
//! The two moves are deleting a loop and contracting a non-loop edge at a
//! vertex of valence 2. A graph is fibred when some sequence of moves reaches a
//! single vertex with no edges. Since nothing guarantees that the order of
//! moves is irrelevant, the search backtracks over all of them.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Cap on labelings tried when canonicalizing a graph for the memo table.
const MAX_CANONICAL_PERMUTATIONS: usize = 5040;

/// Connected multigraph with loops; vertices are `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReductionGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionMove {
    /// Remove the loop at this position of the edge list.
    DeleteLoop { edge: usize },
    /// Contract the edge at this position into the valence-2 `vertex`'s neighbour.
    Contract { edge: usize, vertex: usize },
}

impl fmt::Display for ReductionMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionMove::DeleteLoop { edge } => write!(f, "delete loop #{edge}"),
            ReductionMove::Contract { edge, vertex } => {
                write!(f, "contract edge #{edge} at vertex {vertex}")
            }
        }
    }
}

impl ReductionGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Precondition("graph needs at least one vertex".into()));
        }
        if let Some(&(a, b)) = edges
            .iter()
            .find(|(a, b)| *a >= vertex_count || *b >= vertex_count)
        {
            return Err(Error::Precondition(format!(
                "edge ({a},{b}) leaves the vertex range 0..{vertex_count}"
            )));
        }
        let g = Self { vertex_count, edges };
        if !g.is_connected() {
            return Err(Error::Precondition("graph is disconnected".into()));
        }
        Ok(g)
    }

    /// One vertex carrying `loops` loops.
    pub fn bouquet(loops: usize) -> Self {
        Self {
            vertex_count: 1,
            edges: vec![(0, 0); loops],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge-ends at `v`; a loop counts twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.vertex_count == 1 && self.edges.is_empty()
    }

    fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.vertex_count];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn moves(&self) -> Vec<ReductionMove> {
        let mut out = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a == b {
                out.push(ReductionMove::DeleteLoop { edge: i });
                continue;
            }
            for v in [a, b] {
                if self.valence(v) == 2 {
                    out.push(ReductionMove::Contract { edge: i, vertex: v });
                }
            }
        }
        out
    }

    pub fn apply(&self, m: ReductionMove) -> Result<ReductionGraph> {
        match m {
            ReductionMove::DeleteLoop { edge } => {
                let Some(&(a, b)) = self.edges.get(edge) else {
                    return Err(Error::Precondition(format!("no edge #{edge}")));
                };
                if a != b {
                    return Err(Error::Precondition(format!("edge #{edge} is not a loop")));
                }
                let mut edges = self.edges.clone();
                edges.remove(edge);
                Ok(Self {
                    vertex_count: self.vertex_count,
                    edges,
                })
            }
            ReductionMove::Contract { edge, vertex } => {
                let Some(&(a, b)) = self.edges.get(edge) else {
                    return Err(Error::Precondition(format!("no edge #{edge}")));
                };
                if a == b || (vertex != a && vertex != b) {
                    return Err(Error::Precondition(format!(
                        "edge #{edge} is a loop or misses vertex {vertex}"
                    )));
                }
                if self.valence(vertex) != 2 {
                    return Err(Error::Precondition(format!(
                        "vertex {vertex} does not have valence 2"
                    )));
                }
                let keep = if vertex == a { b } else { a };
                let relabel = |x: usize| {
                    let x = if x == vertex { keep } else { x };
                    if x > vertex {
                        x - 1
                    } else {
                        x
                    }
                };
                let edges = self
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != edge)
                    .map(|(_, &(x, y))| (relabel(x), relabel(y)))
                    .collect();
                Ok(Self {
                    vertex_count: self.vertex_count - 1,
                    edges,
                })
            }
        }
    }

    // Colour refinement on (valence, loops), then the least edge list over all
    // labelings that respect the colour classes when there are few enough.
    fn canonical_key(&self) -> (usize, Vec<(usize, usize)>) {
        let n = self.vertex_count;
        let mut adj = vec![Vec::new(); n];
        let mut loops = vec![0usize; n];
        for &(a, b) in &self.edges {
            if a == b {
                loops[a] += 1;
            } else {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut colour: Vec<usize> = {
            let sig: Vec<(usize, usize)> = (0..n).map(|v| (adj[v].len(), loops[v])).collect();
            rank(&sig)
        };
        loop {
            let sig: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|v| {
                    let mut around: Vec<usize> = adj[v].iter().map(|w| colour[*w]).collect();
                    around.sort_unstable();
                    (colour[v], around)
                })
                .collect();
            let next = rank(&sig);
            let classes = |c: &[usize]| c.iter().collect::<HashSet<_>>().len();
            if classes(&next) == classes(&colour) {
                colour = next;
                break;
            }
            colour = next;
        }

        let class_count = colour.iter().max().map_or(0, |m| m + 1);
        let mut cells: Vec<Vec<usize>> = vec![Vec::new(); class_count];
        for v in 0..n {
            cells[colour[v]].push(v);
        }
        let labelings = cells.iter().try_fold(1usize, |acc, c| {
            let f = (1..=c.len()).try_fold(1usize, |f, k| f.checked_mul(k))?;
            acc.checked_mul(f)
        });

        let key_for = |order: &[usize]| {
            let mut position = vec![0; n];
            for (i, v) in order.iter().enumerate() {
                position[*v] = i;
            }
            let mut edges: Vec<(usize, usize)> = self
                .edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (position[a], position[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            edges.sort_unstable();
            edges
        };

        match labelings {
            Some(count) if count <= MAX_CANONICAL_PERMUTATIONS => {
                let mut best: Option<Vec<(usize, usize)>> = None;
                let mut order: Vec<usize> = Vec::with_capacity(n);
                for_each_cell_order(&mut cells, 0, &mut order, &mut |o| {
                    let key = key_for(o);
                    if best.as_ref().map_or(true, |b| key < *b) {
                        best = Some(key);
                    }
                });
                (n, best.unwrap_or_default())
            }
            _ => {
                let order: Vec<usize> = cells.concat();
                (n, key_for(&order))
            }
        }
    }
}

fn rank<T: Ord + Clone>(sig: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = sig.to_vec();
    distinct.sort();
    distinct.dedup();
    sig.iter()
        .map(|s| distinct.binary_search(s).expect("present"))
        .collect()
}

// Calls `visit` on every concatenation of permutations of the cells.
fn for_each_cell_order(
    cells: &mut [Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if cell == cells.len() {
        visit(order);
        return;
    }
    let len = cells[cell].len();
    permute(cells, cell, 0, len, order, visit);
}

fn permute(
    cells: &mut [Vec<usize>],
    cell: usize,
    at: usize,
    len: usize,
    order: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if at == len {
        let base = order.len();
        order.extend_from_slice(&cells[cell]);
        for_each_cell_order(cells, cell + 1, order, visit);
        order.truncate(base);
        return;
    }
    for i in at..len {
        cells[cell].swap(at, i);
        permute(cells, cell, at + 1, len, order, visit);
        cells[cell].swap(at, i);
    }
}

/// Parses `v=<n>; edges=(a,b)(c,d)...` with 0-based vertices.
///
/// Text after `#` on a line is ignored, and the literal may span lines.
impl FromStr for ReductionGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s: String = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join(" ");
        let bad = |msg: &str| Error::Parse(format!("{msg} in graph literal {:?}", s.trim()));
        let (head, tail) = s.trim().split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let vertex_count: usize = head
            .trim()
            .strip_prefix("v=")
            .and_then(|n| n.trim().parse().ok())
            .ok_or_else(|| bad("expected `v=<n>`"))?;
        let list = tail
            .trim()
            .strip_prefix("edges=")
            .ok_or_else(|| bad("expected `edges=`"))?;
        let mut edges = Vec::new();
        let mut rest = list.trim();
        while !rest.is_empty() {
            let close = rest.find(')').ok_or_else(|| bad("unclosed edge"))?;
            let inner = rest[..close]
                .strip_prefix('(')
                .ok_or_else(|| bad("edge must start with `(`"))?;
            let (a, b) = inner.split_once(',').ok_or_else(|| bad("edge needs two ends"))?;
            let a = a.trim().parse().map_err(|_| bad("bad vertex"))?;
            let b = b.trim().parse().map_err(|_| bad("bad vertex"))?;
            edges.push((a, b));
            rest = rest[close + 1..].trim_start();
        }
        Self::new(vertex_count, edges)
    }
}

impl fmt::Display for ReductionGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={}; edges=", self.vertex_count)?;
        for (a, b) in &self.edges {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

fn search(
    g: &ReductionGraph,
    failed: &mut HashSet<(usize, Vec<(usize, usize)>)>,
    path: &mut Vec<ReductionMove>,
) -> bool {
    if g.is_reduced() {
        return true;
    }
    let key = g.canonical_key();
    if failed.contains(&key) {
        return false;
    }
    for m in g.moves() {
        let next = g.apply(m).expect("generated moves are valid");
        path.push(m);
        if search(&next, failed, path) {
            return true;
        }
        path.pop();
    }
    failed.insert(key);
    false
}

/// A move sequence reducing `g` to a single vertex, if one exists.
pub fn fibred_certificate(g: &ReductionGraph) -> Option<Vec<ReductionMove>> {
    let mut path = Vec::new();
    search(g, &mut HashSet::new(), &mut path).then_some(path)
}

pub fn is_fibred_special(g: &ReductionGraph) -> bool {
    fibred_certificate(g).is_some()
}

/// Replays a certificate, failing on any inapplicable move.
pub fn verify_certificate(g: &ReductionGraph, moves: &[ReductionMove]) -> Result<bool> {
    let mut current = g.clone();
    for m in moves {
        current = current.apply(*m)?;
    }
    Ok(current.is_reduced())
}

/// A Murasugi sum of special alternating pieces is fibred exactly when every piece is.
pub fn is_fibred_homogeneous(pieces: &[ReductionGraph]) -> Result<bool> {
    if pieces.is_empty() {
        return Err(Error::Precondition("decomposition has no pieces".into()));
    }
    Ok(pieces.iter().all(is_fibred_special))
}
