//! Moore bounds, excess, coverage ratios and Moore trees inside host graphs.
//!
//! Every bound is an exact integer or rational; floats only appear when a
//! value is rendered for display.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};

const MODULE: &str = "moore-bounds";

/// Degree, girth and additive slack `c` driving the closed-form evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BoundParams {
    pub k: u64,
    pub g: u64,
    pub c: u64,
}

impl BoundParams {
    pub fn new(k: u64, g: u64, c: u64) -> Result<Self> {
        if k < 3 {
            return Err(Error::invalid(MODULE, format!("degree k = {k} must be at least 3")));
        }
        if g < 3 {
            return Err(Error::invalid(MODULE, format!("girth g = {g} must be at least 3")));
        }
        Ok(BoundParams { k, g, c })
    }

    /// `M(k, g) + c`.
    pub fn order_ceiling(&self) -> BigInt {
        moore_unchecked(self.k, self.g) + BigInt::from(self.c)
    }
}

/// Summation form of the Moore bound, valid for every `g >= 0` and `k >= 1`:
/// `1 + sum_{i=0}^{(g-3)/2} k(k-1)^i` for odd `g`, `2 sum_{i=0}^{(g-2)/2} (k-1)^i`
/// for even `g`.
pub fn moore_summation(k: u64, g: u64) -> BigInt {
    let k_big = BigInt::from(k);
    let base = BigInt::from(k.saturating_sub(1));
    let mut power = BigInt::one();
    let mut sum = BigInt::zero();
    if g % 2 == 1 {
        for _ in 0..(g - 1) / 2 {
            sum += &k_big * &power;
            power *= &base;
        }
        sum + 1
    } else {
        for _ in 0..g / 2 {
            sum += &power;
            power *= &base;
        }
        sum * 2
    }
}

/// Closed form of the Moore bound; needs `k >= 3` so that `k - 2` divides.
pub fn moore_closed_form(k: u64, g: u64) -> BigInt {
    assert!(k >= 3, "closed form needs k >= 3");
    let base = BigInt::from(k - 1);
    let denom = BigInt::from(k - 2);
    let numer: BigInt = if g % 2 == 1 {
        BigInt::from(k) * base.pow(((g - 1) / 2) as u32) - 2
    } else {
        BigInt::from(2) * base.pow((g / 2) as u32) - 2
    };
    debug_assert!((&numer % &denom).is_zero());
    numer / denom
}

/// `M(k, g)` without range checks; `g` may be 0, 1 or 2 for tree sizes.
pub(crate) fn moore_unchecked(k: u64, g: u64) -> BigInt {
    if k >= 3 {
        moore_closed_form(k, g)
    } else {
        moore_summation(k, g)
    }
}

pub(crate) fn moore_usize(k: u64, g: u64) -> Option<usize> {
    moore_unchecked(k, g).to_usize()
}

/// The Moore bound `M(k, g)` for cages. Closed form and summation form are
/// evaluated independently and must agree.
pub fn moore_cage_bound(k: u64, g: u64) -> Result<BigInt> {
    BoundParams::new(k, g, 0)?;
    let closed = moore_closed_form(k, g);
    let summed = moore_summation(k, g);
    if closed != summed {
        return Err(Error::Internal(format!(
            "Moore bound forms disagree at k={k}, g={g}: {closed} vs {summed}"
        )));
    }
    Ok(closed)
}

/// Degree/diameter Moore bound `1 + D + D(D-1) + ... + D(D-1)^{d-1}`.
pub fn moore_dd_bound(delta: u64, d: u64) -> Result<BigInt> {
    if delta < 3 {
        return Err(Error::invalid(MODULE, format!("degree {delta} must be at least 3")));
    }
    if d < 1 {
        return Err(Error::invalid(MODULE, "diameter must be at least 1"));
    }
    let delta_big = BigInt::from(delta);
    let base = BigInt::from(delta - 1);
    let mut term = delta_big.clone();
    let mut total = BigInt::one();
    for _ in 0..d {
        total += &term;
        term *= &base;
    }
    Ok(total)
}

/// `|V(g)| - M(k, girth)` after checking regularity and girth.
pub fn excess(g: &Graph, k: u64, girth: u64) -> Result<BigInt> {
    let bound = moore_cage_bound(k, girth)?;
    match g.is_regular() {
        Some(d) if d as u64 == k => {}
        other => {
            return Err(Error::hypothesis(
                MODULE,
                format!("graph is not {k}-regular (common degree: {other:?})"),
            ))
        }
    }
    let actual = g.girth();
    if actual.finite() != Some(girth as usize) {
        return Err(Error::hypothesis(
            MODULE,
            format!("graph has girth {actual}, expected {girth}"),
        ));
    }
    let diff = BigInt::from(g.order()) - bound;
    if diff < BigInt::zero() {
        return Err(Error::hypothesis(
            MODULE,
            format!("order {} is below the Moore bound; the graph cannot have the stated parameters", g.order()),
        ));
    }
    Ok(diff)
}

/// `M(k, g-2) / n` for odd `g >= 5`.
pub fn beta_odd(params: BoundParams, n: u64) -> Result<BigRational> {
    if params.g.is_multiple_of(2) || params.g < 5 {
        return Err(Error::invalid(
            MODULE,
            format!("beta_odd needs odd girth >= 5, got {}", params.g),
        ));
    }
    check_order(params, n)?;
    Ok(BigRational::new(moore_unchecked(params.k, params.g - 2), BigInt::from(n)))
}

/// `(M(k, g-1) - 1) / |E|` for even `g >= 4` on a `k`-regular host with `n`
/// vertices. Both the edge-count form and `2(M - 1) / (k n)` are evaluated.
pub fn beta_even(params: BoundParams, n: u64) -> Result<BigRational> {
    let (per_edge, per_vertex) = beta_even_forms(params, n)?;
    if per_edge != per_vertex {
        return Err(Error::Internal(format!(
            "beta_even forms disagree: {per_edge} vs {per_vertex}"
        )));
    }
    Ok(per_edge)
}

/// The two printed forms of the even-girth ratio, unreduced against each other.
pub fn beta_even_forms(params: BoundParams, n: u64) -> Result<(BigRational, BigRational)> {
    if params.g % 2 == 1 || params.g < 4 {
        return Err(Error::invalid(
            MODULE,
            format!("beta_even needs even girth >= 4, got {}", params.g),
        ));
    }
    check_order(params, n)?;
    let tree_edges = moore_unchecked(params.k, params.g - 1) - BigInt::one();
    let k = BigInt::from(params.k);
    let n = BigInt::from(n);
    let per_edge = BigRational::new(tree_edges.clone(), BigInt::one())
        / BigRational::new(&k * &n, BigInt::from(2));
    let per_vertex = BigRational::new(tree_edges * 2, k * n);
    Ok((per_edge, per_vertex))
}

fn check_order(params: BoundParams, n: u64) -> Result<()> {
    let bound = moore_unchecked(params.k, params.g);
    if BigInt::from(n) < bound {
        return Err(Error::invalid(
            MODULE,
            format!("order {n} is below M({}, {}) = {bound}", params.k, params.g),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeRoot {
    Vertex(usize),
    Edge(usize, usize),
}

/// A Moore tree embedded in a host graph: the ball of the given depth
/// around a root vertex, or around both ends of a root edge.
#[derive(Debug, Clone)]
pub struct MooreTree {
    pub root: TreeRoot,
    pub depth: usize,
    pub vertex_set: VertexSet,
    /// Parent of each tree vertex in the host's id space; roots have none.
    pub parent: Vec<Option<usize>>,
}

impl MooreTree {
    /// Parent links plus the root edge, if any.
    pub fn tree_edges(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self
            .vertex_set
            .iter()
            .filter_map(|v| self.parent[v].map(|p| (p.min(v), p.max(v))))
            .collect();
        if let TreeRoot::Edge(u, v) = self.root {
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges
    }
}

fn require_regular(g: &Graph) -> Result<u64> {
    g.is_regular()
        .map(|k| k as u64)
        .ok_or_else(|| Error::hypothesis(MODULE, "host graph is not regular"))
}

/// BFS from `roots` out to `radius`, recording parents.
pub(crate) fn grow_tree(g: &Graph, roots: &[usize], radius: usize) -> (VertexSet, Vec<Option<usize>>) {
    let mut set = VertexSet::new(g.order());
    let mut parent = vec![None; g.order()];
    let mut frontier: Vec<usize> = roots.to_vec();
    for &r in roots {
        set.insert(r);
    }
    for _ in 0..radius {
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in g.neighbors(u) {
                if set.insert(w) {
                    parent[w] = Some(u);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    (set, parent)
}

/// Vertex-rooted Moore tree of depth `depth`. Needs a regular host of girth
/// at least `2 depth + 1`; depth 0 is accepted on any host.
pub fn moore_tree_vertex(g: &Graph, root: usize, depth: usize) -> Result<MooreTree> {
    if root >= g.order() {
        return Err(Error::invalid(MODULE, format!("root {root} outside 0..{}", g.order())));
    }
    if depth == 0 {
        let (vertex_set, parent) = grow_tree(g, &[root], 0);
        return Ok(MooreTree {
            root: TreeRoot::Vertex(root),
            depth,
            vertex_set,
            parent,
        });
    }
    let k = require_regular(g)?;
    let needed = 2 * depth + 1;
    if !g.girth().at_least(needed) {
        return Err(Error::hypothesis(
            MODULE,
            format!("girth {} is below {needed}; a depth-{depth} ball would contain a cycle", g.girth()),
        ));
    }
    let (vertex_set, parent) = grow_tree(g, &[root], depth);
    let tree = MooreTree {
        root: TreeRoot::Vertex(root),
        depth,
        vertex_set,
        parent,
    };
    check_size(&tree, moore_usize(k, needed as u64))?;
    Ok(tree)
}

/// Edge-rooted Moore tree of depth `depth`: all vertices within `depth - 1`
/// of either endpoint. Needs girth at least `2 depth`; depth 1 and 0 are
/// accepted on any host.
pub fn moore_tree_edge(g: &Graph, root_edge: Edge, depth: usize) -> Result<MooreTree> {
    let (u, v) = root_edge;
    if !g.has_edge(u, v) {
        return Err(Error::invalid(MODULE, format!("({u}, {v}) is not an edge")));
    }
    let root = TreeRoot::Edge(u, v);
    if depth <= 1 {
        let roots: &[usize] = if depth == 0 { &[] } else { &[u, v] };
        let (vertex_set, parent) = grow_tree(g, roots, 0);
        return Ok(MooreTree {
            root,
            depth,
            vertex_set,
            parent,
        });
    }
    let k = require_regular(g)?;
    let needed = 2 * depth;
    if !g.girth().at_least(needed) {
        return Err(Error::hypothesis(
            MODULE,
            format!("girth {} is below {needed}; the edge-rooted ball would contain a cycle", g.girth()),
        ));
    }
    let (vertex_set, parent) = grow_tree(g, &[u, v], depth - 1);
    let tree = MooreTree {
        root,
        depth,
        vertex_set,
        parent,
    };
    check_size(&tree, moore_usize(k, needed as u64))?;
    Ok(tree)
}

fn check_size(tree: &MooreTree, expected: Option<usize>) -> Result<()> {
    if Some(tree.vertex_set.len()) != expected {
        return Err(Error::Internal(format!(
            "Moore tree at {:?} has {} vertices, expected {expected:?}",
            tree.root,
            tree.vertex_set.len()
        )));
    }
    Ok(())
}
