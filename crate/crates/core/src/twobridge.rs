//! Kakimizu complexes of 2-bridge knots from their band chains.
//!
//! A minimal genus surface is a plumbing `B_{e_1} ∪ B_{e_2} ∪ ... ∪ B_{e_n}` of
//! twisted bands along `n - 1` disks, each plumbed inner (`0`) or outer (`1`).
//! Applying a component band flips the disks flanking it. Hopf bands (`|e| = 2`)
//! identify tuples, and a full round of band moves traces a maximal simplex.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::rational::EvenCfe;
use crate::scalar::ExactInt;

pub const DEFAULT_MAX_BANDS: usize = 12;

/// Hard limit from the bit encoding of tuples.
const MAX_ENCODABLE_BANDS: usize = 31;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BandChain {
    bands: Vec<i64>,
}

impl BandChain {
    pub fn new(bands: Vec<i64>) -> Result<Self> {
        if bands.is_empty() {
            return Err(Error::Precondition("band chain is empty".into()));
        }
        if let Some(b) = bands.iter().find(|b| **b % 2 != 0 || b.abs() < 2) {
            return Err(Error::Precondition(format!(
                "band {b} must be even with |b| >= 2"
            )));
        }
        Ok(Self { bands })
    }

    pub fn bands(&self) -> &[i64] {
        &self.bands
    }

    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    pub fn disk_count(&self) -> usize {
        self.bands.len() - 1
    }

    /// Band `k` (1-indexed) is a Hopf band.
    pub fn is_hopf(&self, k: usize) -> bool {
        self.bands[k - 1].abs() == 2
    }

    fn check_band(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.len() {
            return Err(Error::BandIndex {
                index: k,
                len: self.len(),
            });
        }
        Ok(())
    }

    fn check_tuple(&self, t: &SurfaceTuple) -> Result<()> {
        if t.len() != self.disk_count() {
            return Err(Error::Precondition(format!(
                "tuple {t} has {} entries, chain has {} disks",
                t.len(),
                self.disk_count()
            )));
        }
        Ok(())
    }

    // Disk bits flipped by band k.
    fn flip_mask(&self, k: usize) -> u32 {
        let n = self.len();
        match k {
            _ if n == 1 => 0,
            1 => 1,
            _ if k == n => 1 << (n - 2),
            _ => (1 << (k - 2)) | (1 << (k - 1)),
        }
    }

    fn applicable_code(&self, code: u32, k: usize) -> bool {
        let n = self.len();
        k == 1 || k == n || ((code >> (k - 2)) & 1) == ((code >> (k - 1)) & 1)
    }
}

impl fmt::Display for BandChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bands.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Wraps an even continued fraction as a chain of twisted bands.
pub fn band_chain<T: ExactInt>(cfe: &EvenCfe<T>) -> Result<BandChain> {
    let bands = cfe
        .entries()
        .iter()
        .map(|e| {
            e.to_i64()
                .ok_or_else(|| Error::Precondition(format!("band {e} does not fit in i64")))
        })
        .collect::<Result<Vec<_>>>()?;
    BandChain::new(bands)
}

/// Inner (`0`) / outer (`1`) choice for every plumbing disk.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceTuple {
    bits: Vec<u8>,
}

impl SurfaceTuple {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|b| *b > 1) {
            return Err(Error::Precondition("tuple entries must be 0 or 1".into()));
        }
        Ok(Self { bits })
    }

    pub fn zeros(len: usize) -> Self {
        Self { bits: vec![0; len] }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    fn code(&self) -> u32 {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (i, b)| acc | (u32::from(*b) << i))
    }

    fn from_code(code: u32, len: usize) -> Self {
        Self {
            bits: (0..len).map(|i| ((code >> i) & 1) as u8).collect(),
        }
    }
}

impl fmt::Display for SurfaceTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bits.iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for SurfaceTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected a tuple like (0,1), got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Self::zeros(0));
        }
        let bits = inner
            .split(',')
            .map(|t| match t.trim() {
                "0" => Ok(0),
                "1" => Ok(1),
                other => Err(Error::Parse(format!("tuple entry {other:?} is not 0 or 1"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self { bits })
    }
}

/// Band `k` (1-indexed) can be applied to `t`.
///
/// End bands always apply. An interior band sits between disks `k - 1` and `k`
/// and applies only when those two disks carry the same plumbing.
pub fn is_applicable(chain: &BandChain, t: &SurfaceTuple, k: usize) -> Result<bool> {
    chain.check_band(k)?;
    chain.check_tuple(t)?;
    Ok(chain.applicable_code(t.code(), k))
}

pub fn apply_band(chain: &BandChain, t: &SurfaceTuple, k: usize) -> Result<SurfaceTuple> {
    if !is_applicable(chain, t, k)? {
        return Err(Error::NotApplicable(k));
    }
    Ok(SurfaceTuple::from_code(t.code() ^ chain.flip_mask(k), t.len()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotopyOrbit {
    /// Lexicographically smallest member.
    pub label: SurfaceTuple,
    pub members: BTreeSet<SurfaceTuple>,
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }
}

/// Orbit table over all tuple codes.
struct Orbits {
    of_code: Vec<usize>,
    labels: Vec<SurfaceTuple>,
}

impl Orbits {
    fn compute(chain: &BandChain) -> Self {
        let disks = chain.disk_count();
        let size = 1usize << disks;
        let mut uf = UnionFind::new(size);
        for code in 0..size as u32 {
            for k in (1..=chain.len()).filter(|&k| chain.is_hopf(k)) {
                if chain.applicable_code(code, k) {
                    uf.union(code as usize, (code ^ chain.flip_mask(k)) as usize);
                }
            }
        }
        let mut min_label: BTreeMap<usize, SurfaceTuple> = BTreeMap::new();
        for code in 0..size {
            let root = uf.find(code);
            let t = SurfaceTuple::from_code(code as u32, disks);
            min_label
                .entry(root)
                .and_modify(|m| {
                    if t < *m {
                        *m = t.clone()
                    }
                })
                .or_insert(t);
        }
        let mut roots: Vec<(SurfaceTuple, usize)> = min_label.into_iter().map(|(r, l)| (l, r)).collect();
        roots.sort();
        let index: HashMap<usize, usize> = roots.iter().enumerate().map(|(i, (_, r))| (*r, i)).collect();
        let of_code = (0..size).map(|c| index[&uf.find(c)]).collect();
        Self {
            of_code,
            labels: roots.into_iter().map(|(l, _)| l).collect(),
        }
    }
}

fn check_size(chain: &BandChain, max_bands: usize) -> Result<()> {
    let bound = max_bands.min(MAX_ENCODABLE_BANDS);
    if chain.len() > bound {
        return Err(Error::SizeBound {
            what: "band chain length",
            actual: chain.len(),
            bound,
        });
    }
    Ok(())
}

/// Partition of `{0,1}^{n-1}` into classes identified by Hopf-band moves.
pub fn hopf_orbits(chain: &BandChain) -> Result<Vec<IsotopyOrbit>> {
    check_size(chain, MAX_ENCODABLE_BANDS)?;
    let orbits = Orbits::compute(chain);
    let mut out: Vec<IsotopyOrbit> = orbits
        .labels
        .iter()
        .map(|l| IsotopyOrbit {
            label: l.clone(),
            members: BTreeSet::new(),
        })
        .collect();
    for (code, &o) in orbits.of_code.iter().enumerate() {
        out[o]
            .members
            .insert(SurfaceTuple::from_code(code as u32, chain.disk_count()));
    }
    Ok(out)
}

type OrbitSet = BTreeSet<usize>;

/// Orbit sets visited by full rounds of band moves starting at `start`.
///
/// Memoized over the set of bands already used: the current tuple is
/// determined by `start` and that set.
fn cycle_sets(chain: &BandChain, orbits: &Orbits, start: u32, maximal_only: bool) -> BTreeSet<OrbitSet> {
    let n = chain.len();
    let full = (1u32 << n) - 1;
    let mut memo: HashMap<u32, Vec<OrbitSet>> = HashMap::new();

    fn suffix(
        chain: &BandChain,
        orbits: &Orbits,
        start: u32,
        mask: u32,
        full: u32,
        maximal_only: bool,
        memo: &mut HashMap<u32, Vec<OrbitSet>>,
    ) -> Vec<OrbitSet> {
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let n = chain.len();
        let current = (1..=n)
            .filter(|k| mask & (1 << (k - 1)) != 0)
            .fold(start, |c, k| c ^ chain.flip_mask(k));
        let result = if mask == full {
            assert_eq!(
                current, start,
                "a full round of band moves must return to its start"
            );
            vec![OrbitSet::new()]
        } else {
            let mut acc: BTreeSet<OrbitSet> = BTreeSet::new();
            for k in 1..=n {
                if mask & (1 << (k - 1)) != 0 || !chain.applicable_code(current, k) {
                    continue;
                }
                let next = current ^ chain.flip_mask(k);
                let o = orbits.of_code[next as usize];
                for mut s in suffix(
                    chain,
                    orbits,
                    start,
                    mask | (1 << (k - 1)),
                    full,
                    maximal_only,
                    memo,
                ) {
                    s.insert(o);
                    acc.insert(s);
                }
            }
            if maximal_only {
                keep_maximal(acc)
            } else {
                acc.into_iter().collect()
            }
        };
        memo.insert(mask, result.clone());
        result
    }

    let start_orbit = orbits.of_code[start as usize];
    suffix(chain, orbits, start, 0, full, maximal_only, &mut memo)
        .into_iter()
        .map(|mut s| {
            s.insert(start_orbit);
            s
        })
        .collect()
}

fn keep_maximal(sets: BTreeSet<OrbitSet>) -> Vec<OrbitSet> {
    sets.iter()
        .filter(|s| !sets.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
        .cloned()
        .collect()
}

/// Every distinct set of orbits (named by their labels) visited by an
/// ordering of all `n` band moves that is applicable step by step from `start`.
pub fn maximal_cycles(chain: &BandChain, start: &SurfaceTuple) -> Result<BTreeSet<BTreeSet<SurfaceTuple>>> {
    check_size(chain, MAX_ENCODABLE_BANDS)?;
    chain.check_tuple(start)?;
    let orbits = Orbits::compute(chain);
    Ok(cycle_sets(chain, &orbits, start.code(), false)
        .into_iter()
        .map(|s| s.into_iter().map(|o| orbits.labels[o].clone()).collect())
        .collect())
}

/// Kakimizu complex of the 2-bridge knot with this band chain.
pub fn build_complex(chain: &BandChain, max_bands: usize) -> Result<SimplicialComplex> {
    check_size(chain, max_bands)?;
    let orbits = Orbits::compute(chain);
    let starts: Vec<u32> = (0..1u32 << chain.disk_count()).collect();
    let simplices: BTreeSet<OrbitSet> = starts
        .par_iter()
        .map(|&s| cycle_sets(chain, &orbits, s, true))
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let label = |o: usize| orbits.labels[o].to_string();
    let vertices: BTreeSet<String> = (0..orbits.labels.len()).map(label).collect();
    let complex = SimplicialComplex::from_simplices(
        vertices,
        simplices
            .into_iter()
            .map(|s| s.into_iter().map(label).collect::<Simplex>()),
    )?;
    if !complex.is_connected() {
        return Err(Error::Invariant(format!("complex of {chain} is disconnected")));
    }
    if !complex.is_flag() {
        return Err(Error::Invariant(format!("complex of {chain} is not flag")));
    }
    Ok(complex)
}

/// Orbit pairs joined by one applicable non-Hopf band move, against the 1-skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyDiagnostic {
    pub move_edges: BTreeSet<(String, String)>,
    pub complex_edges: BTreeSet<(String, String)>,
}

impl AdjacencyDiagnostic {
    pub fn agrees(&self) -> bool {
        self.move_edges == self.complex_edges
    }
}

pub fn adjacency_diagnostic(chain: &BandChain, max_bands: usize) -> Result<AdjacencyDiagnostic> {
    let complex = build_complex(chain, max_bands)?;
    let orbits = Orbits::compute(chain);
    let mut move_edges = BTreeSet::new();
    for code in 0..1u32 << chain.disk_count() {
        for k in (1..=chain.len()).filter(|&k| !chain.is_hopf(k)) {
            if !chain.applicable_code(code, k) {
                continue;
            }
            let a = orbits.of_code[code as usize];
            let b = orbits.of_code[(code ^ chain.flip_mask(k)) as usize];
            if a != b {
                let (a, b) = (orbits.labels[a].to_string(), orbits.labels[b].to_string());
                move_edges.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
    }
    Ok(AdjacencyDiagnostic {
        move_edges,
        complex_edges: complex.edges(),
    })
}
