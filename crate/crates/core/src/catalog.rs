//! Known cages and Moore graphs, and the two-copy edge-swap construction.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Girth, Graph, VertexSet};
use crate::moore::moore_cage_bound;

const MODULE: &str = "catalog";

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("simple")
}

/// Complete bipartite graph `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("simple")
}

/// Cycle `C_n`.
pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("simple")
}

/// Kneser graph `K(5,2)`: 2-subsets of `Z_5`, adjacent when disjoint.
/// Outer vertex `p` is `{2p, 2p+1}` and inner vertex `5+p` is `{2p+2, 2p+4}`,
/// which gives the outer pentagon `0..5`, spokes `i ~ i+5` and an inner
/// pentagram.
pub fn petersen() -> Graph {
    let pair = |a: usize, b: usize| (1u8 << (a % 5)) | (1u8 << (b % 5));
    let labels: Vec<u8> = (0..5)
        .map(|p| pair(2 * p, 2 * p + 1))
        .chain((0..5).map(|p| pair(2 * p + 2, 2 * p + 4)))
        .collect();
    let edges = (0..10).flat_map(|u| (u + 1..10).map(move |v| (u, v)));
    Graph::from_edges(10, edges.filter(|&(u, v)| labels[u] & labels[v] == 0).collect::<Vec<_>>())
        .expect("simple")
}

/// Hamiltonian cubic graph from LCF notation `[shifts]^repeats`.
pub fn lcf(shifts: &[isize], repeats: usize) -> Result<Graph> {
    let n = shifts.len() * repeats;
    if n < 3 {
        return Err(Error::invalid(MODULE, "LCF notation needs at least three vertices"));
    }
    let mut edges = BTreeSet::new();
    for i in 0..n {
        edges.insert(ordered(i, (i + 1) % n));
        let j = (i as isize + shifts[i % shifts.len()]).rem_euclid(n as isize) as usize;
        if j == i {
            return Err(Error::invalid(MODULE, format!("LCF shift at {i} is a loop")));
        }
        edges.insert(ordered(i, j));
    }
    let g = Graph::from_edges(n, edges)?;
    if g.is_regular() != Some(3) {
        return Err(Error::invalid(MODULE, "LCF shifts are not consistent"));
    }
    Ok(g)
}

fn ordered(u: usize, v: usize) -> Edge {
    (u.min(v), u.max(v))
}

pub fn heawood() -> Graph {
    lcf(&[5, -5], 7).expect("valid LCF")
}

pub fn mcgee() -> Graph {
    lcf(&[12, 7, -7], 8).expect("valid LCF")
}

pub fn tutte_coxeter() -> Graph {
    lcf(&[-13, -9, 7, -7, 9, 13], 5).expect("valid LCF")
}

/// Pentagons `P_h` and pentagrams `Q_i` for `h, i` in `0..5`, with
/// `P_h[j] ~ Q_i[h*i + j mod 5]`.
pub fn hoffman_singleton() -> Graph {
    let p = |h: usize, j: usize| 5 * h + j % 5;
    let q = |i: usize, j: usize| 25 + 5 * i + j % 5;
    let mut edges = Vec::with_capacity(175);
    for h in 0..5 {
        for j in 0..5 {
            edges.push((p(h, j), p(h, j + 1)));
            edges.push((q(h, j), q(h, j + 2)));
            for i in 0..5 {
                edges.push((p(h, j), q(i, h * i + j)));
            }
        }
    }
    Graph::from_edges(50, edges).expect("simple")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    Complete,
    CompleteBipartite,
    Kneser,
    Lcf,
    PentagonPentagram,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub k: usize,
    pub girth: usize,
    pub order: usize,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub moore_bound: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub excess: BigInt,
    pub generator: Generator,
    #[serde(skip)]
    build: fn(usize) -> Graph,
}

impl CatalogEntry {
    pub fn graph(&self) -> Graph {
        (self.build)(self.k)
    }

    /// Checks the generator's output against the recorded degree, girth and
    /// order, and the recorded excess against the Moore bound.
    pub fn validate(&self) -> Result<Graph> {
        let g = self.graph();
        let bad = |what: String| Error::Internal(format!("catalog entry {}: {what}", self.name));
        if g.order() != self.order {
            return Err(bad(format!("order {} != {}", g.order(), self.order)));
        }
        if g.is_regular() != Some(self.k) {
            return Err(bad(format!("not {}-regular", self.k)));
        }
        if g.girth() != Girth::Finite(self.girth) {
            return Err(bad(format!("girth {} != {}", g.girth(), self.girth)));
        }
        let m = moore_cage_bound(self.k as u64, self.girth as u64)?;
        if m != self.moore_bound || BigInt::from(self.order) - &m != self.excess {
            return Err(bad("excess does not match the Moore bound".into()));
        }
        Ok(g)
    }
}

fn entry(name: &str, k: usize, girth: usize, order: usize, generator: Generator, build: fn(usize) -> Graph) -> CatalogEntry {
    let moore_bound = moore_cage_bound(k as u64, girth as u64).expect("k, g >= 3");
    CatalogEntry {
        name: name.to_string(),
        k,
        girth,
        order,
        excess: BigInt::from(order) - &moore_bound,
        moore_bound,
        generator,
        build,
    }
}

/// Largest degree for which `K_{k+1}` and `K_{k,k}` are listed.
pub const CATALOG_MAX_K: usize = 7;

/// All catalog entries, each validated before it is returned.
pub fn catalog() -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for k in 3..=CATALOG_MAX_K {
        out.push(entry(&format!("K{}", k + 1), k, 3, k + 1, Generator::Complete, |k| complete(k + 1)));
    }
    for k in 3..=CATALOG_MAX_K {
        out.push(entry(&format!("K{k},{k}"), k, 4, 2 * k, Generator::CompleteBipartite, |k| complete_bipartite(k, k)));
    }
    out.push(entry("petersen", 3, 5, 10, Generator::Kneser, |_| petersen()));
    out.push(entry("heawood", 3, 6, 14, Generator::Lcf, |_| heawood()));
    out.push(entry("mcgee", 3, 7, 24, Generator::Lcf, |_| mcgee()));
    out.push(entry("tutte-coxeter", 3, 8, 30, Generator::Lcf, |_| tutte_coxeter()));
    out.push(entry("hoffman-singleton", 7, 5, 50, Generator::PentagonPentagram, |_| hoffman_singleton()));
    for e in &out {
        e.validate()?;
    }
    Ok(out)
}

/// Entry for a `(k, g)` pair. Complete and complete bipartite graphs are
/// produced for every `k >= 3`, not only the listed ones.
pub fn lookup(k: usize, girth: usize) -> Result<CatalogEntry> {
    let e = match (k, girth) {
        (k, 3) if k >= 3 => entry(&format!("K{}", k + 1), k, 3, k + 1, Generator::Complete, |k| complete(k + 1)),
        (k, 4) if k >= 3 => entry(&format!("K{k},{k}"), k, 4, 2 * k, Generator::CompleteBipartite, |k| {
            complete_bipartite(k, k)
        }),
        _ => catalog()?
            .into_iter()
            .find(|e| e.k == k && e.girth == girth)
            .ok_or_else(|| Error::invalid(MODULE, format!("no catalog entry for (k, g) = ({k}, {girth})")))?,
    };
    e.validate()?;
    Ok(e)
}

/// Entry by name, case-insensitive: `K4`, `K3,3`, `petersen`, `heawood`,
/// `mcgee`, `tutte-coxeter`, `hoffman-singleton`.
pub fn by_name(name: &str) -> Result<CatalogEntry> {
    let key = name.trim().to_ascii_lowercase().replace(['_', ' '], "-");
    let key = match key.as_str() {
        "tutte-8-cage" | "levi" | "tutte" => "tutte-coxeter".to_string(),
        _ => key,
    };
    if let Some(rest) = key.strip_prefix('k') {
        let parse = |s: &str| s.parse::<usize>().ok().filter(|&v| v >= 3);
        if let Some((a, b)) = rest.split_once(',') {
            if let (Some(a), Some(b)) = (parse(a), parse(b)) {
                if a == b {
                    return lookup(a, 4);
                }
            }
        } else if let Some(m) = rest.parse::<usize>().ok().filter(|&m| m >= 4) {
            return lookup(m - 1, 3);
        }
    }
    catalog()?
        .into_iter()
        .find(|e| e.name == key)
        .ok_or_else(|| Error::invalid(MODULE, format!("unknown catalog graph '{name}'")))
}

/// Two copies of `g` (ids `0..n` and `n..2n`) with `{u¹,v¹}` and `{u²,v²}`
/// replaced by `{u¹,v²}` and `{u²,v¹}`.
pub fn double_graph(g: &Graph, e: Edge) -> Result<Graph> {
    let k = g
        .is_regular()
        .ok_or_else(|| Error::hypothesis(MODULE, "doubling needs a regular graph"))?;
    if k < 3 {
        return Err(Error::hypothesis(MODULE, format!("doubling needs degree at least 3, got {k}")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected { module: MODULE });
    }
    let (u, v) = e;
    if u >= g.order() || v >= g.order() || !g.has_edge(u, v) {
        return Err(Error::invalid(MODULE, format!("{{{u},{v}}} is not an edge")));
    }
    let n = g.order();
    let swapped = ordered(u, v);
    let kept: Vec<Edge> = g.edges().filter(|&e| e != swapped).collect();
    let edges = kept
        .iter()
        .copied()
        .chain(kept.iter().map(|&(a, b)| (a + n, b + n)))
        .chain([(u, v + n), (u + n, v)]);
    Graph::from_edges(2 * n, edges)
}

/// One round of iterated doubling.
#[derive(Debug, Clone, Serialize)]
pub struct DoublingStep {
    pub order: usize,
    /// Edge of the previous graph that was swapped.
    pub swapped_edge: Edge,
    pub girth: Girth,
    /// First copy; its edge boundary is the witness for the upper bound.
    pub witness: VertexSet,
    pub witness_boundary: usize,
    /// `witness_boundary / |witness|`, an upper bound on the Cheeger constant.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub upper_bound: BigRational,
    #[serde(skip)]
    pub graph: Graph,
}

/// Doubles `t` times. Each round swaps the lexicographically smallest edge
/// with no endpoint at an earlier swap site.
pub fn iterate_doubling(g: &Graph, t: usize) -> Result<Vec<DoublingStep>> {
    if t == 0 {
        return Err(Error::invalid(MODULE, "iterations must be at least 1"));
    }
    let mut current = g.clone();
    let mut sites: BTreeSet<usize> = BTreeSet::new();
    let mut steps = Vec::with_capacity(t);
    for round in 0..t {
        let e = current
            .edges()
            .find(|(u, v)| !sites.contains(u) && !sites.contains(v))
            .ok_or_else(|| Error::hypothesis(MODULE, format!("no edge clear of swap sites in round {}", round + 1)))?;
        steps.push(double_step(&current, e)?);
        let n = current.order();
        sites = sites.iter().flat_map(|&s| [s, s + n]).chain([e.0, e.1, e.0 + n, e.1 + n]).collect();
        current = steps.last().expect("pushed").graph.clone();
    }
    Ok(steps)
}

/// A single doubling with its first-copy witness.
pub fn double_step(g: &Graph, e: Edge) -> Result<DoublingStep> {
    let n = g.order();
    let doubled = double_graph(g, e)?;
    let witness = VertexSet::from_vertices(2 * n, 0..n).expect("in range");
    let witness_boundary = doubled.boundary_size(&witness);
    Ok(DoublingStep {
        order: 2 * n,
        swapped_edge: ordered(e.0, e.1),
        girth: doubled.girth(),
        upper_bound: BigRational::new(BigInt::from(witness_boundary), BigInt::from(n)),
        witness_boundary,
        witness,
        graph: doubled,
    })
}
