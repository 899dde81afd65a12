//! Machine checks of the Moore-tree counting lemmas and the edge-boundary
//! lower bound `|σ(S)| >= |S|(βk - 1) + 1` on concrete graphs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};
use crate::moore::{beta_even, beta_odd, grow_tree, moore_unchecked, BoundParams, TreeRoot};
use crate::subsets::{par_walk, MAX_WALK_ORDER};

const MODULE: &str = "coverage-lemmas";

/// Which Moore trees a coverage index ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rooting {
    Vertex,
    Edge,
}

/// The best Moore tree for a set `S`, together with the lemma's threshold.
#[derive(Debug, Clone, Serialize)]
pub struct CoverageWitness {
    pub root: TreeRoot,
    pub covered: VertexSet,
    pub covered_count: usize,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub beta: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub threshold: BigRational,
}

impl CoverageWitness {
    pub fn meets_threshold(&self) -> bool {
        BigRational::from_integer(BigInt::from(self.covered_count)) >= self.threshold
    }
}

/// All Moore trees of one depth in a host graph, precomputed once so that
/// many sets can be scored against them.
#[derive(Debug, Clone)]
pub struct CoverageIndex {
    rooting: Rooting,
    depth: usize,
    k: u64,
    order: usize,
    roots: Vec<TreeRoot>,
    trees: Vec<VertexSet>,
}

fn regular_degree(g: &Graph) -> Result<u64> {
    match g.is_regular() {
        Some(k) if k >= 2 => Ok(k as u64),
        Some(k) => Err(Error::hypothesis(MODULE, format!("host is {k}-regular; need k >= 2"))),
        None => Err(Error::hypothesis(MODULE, "host graph is not regular")),
    }
}

impl CoverageIndex {
    /// Vertex-rooted trees of depth `depth`; needs girth `>= 2 depth + 1`.
    pub fn vertex_rooted(g: &Graph, depth: usize) -> Result<Self> {
        let k = regular_degree(g)?;
        let needed = 2 * depth + 1;
        if !g.girth().at_least(needed) {
            return Err(Error::hypothesis(
                MODULE,
                format!("girth {} is below {needed} required for depth {depth}", g.girth()),
            ));
        }
        let roots: Vec<TreeRoot> = (0..g.order()).map(TreeRoot::Vertex).collect();
        let trees = (0..g.order()).map(|u| grow_tree(g, &[u], depth).0).collect();
        Ok(CoverageIndex {
            rooting: Rooting::Vertex,
            depth,
            k,
            order: g.order(),
            roots,
            trees,
        })
    }

    /// Edge-rooted trees of depth `depth`, i.e. the vertices within
    /// `depth - 1` of either end of the root edge; needs girth
    /// `>= 2 depth + 2`.
    pub fn edge_rooted(g: &Graph, depth: usize) -> Result<Self> {
        let k = regular_degree(g)?;
        let needed = 2 * depth + 2;
        if !g.girth().at_least(needed) {
            return Err(Error::hypothesis(
                MODULE,
                format!("girth {} is below {needed} required for edge-rooted depth {depth}", g.girth()),
            ));
        }
        let edges: Vec<Edge> = g.edges().collect();
        let trees = edges
            .iter()
            .map(|&(u, v)| match depth {
                0 => VertexSet::new(g.order()),
                d => grow_tree(g, &[u, v], d - 1).0,
            })
            .collect();
        Ok(CoverageIndex {
            rooting: Rooting::Edge,
            depth,
            k,
            order: g.order(),
            roots: edges.into_iter().map(|(u, v)| TreeRoot::Edge(u, v)).collect(),
            trees,
        })
    }

    pub fn rooting(&self) -> Rooting {
        self.rooting
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Number of trees containing `v`.
    pub fn trees_containing(&self, v: usize) -> usize {
        self.trees.iter().filter(|t| t.contains(v)).count()
    }

    /// The lemma's prediction for [`Self::trees_containing`]:
    /// `M(k, 2d+1)` vertex-rooted, `M(k, 2d+1) - 1` edge-rooted.
    pub fn expected_trees_containing(&self) -> BigInt {
        let m = moore_unchecked(self.k, 2 * self.depth as u64 + 1);
        match self.rooting {
            Rooting::Vertex => m,
            Rooting::Edge => m - 1,
        }
    }

    /// The coverage ratio: expected tree count over the number of roots.
    pub fn beta(&self) -> BigRational {
        BigRational::new(self.expected_trees_containing(), BigInt::from(self.roots.len()))
    }

    /// Sum over all trees of `|T ∩ S|`.
    pub fn total_coverage(&self, s: &VertexSet) -> usize {
        self.trees.iter().map(|t| t.intersection_len(s)).sum()
    }

    /// The tree covering the most of `s`; ties go to the first root in
    /// vertex-id or lexicographic edge order.
    pub fn best(&self, s: &VertexSet) -> Result<CoverageWitness> {
        if s.is_empty() {
            return Err(Error::invalid(MODULE, "set S is empty"));
        }
        if s.universe() != self.order {
            return Err(Error::invalid(MODULE, "set S does not match the host order"));
        }
        let mut best = 0;
        let mut best_count = 0;
        for (i, t) in self.trees.iter().enumerate() {
            let c = t.intersection_len(s);
            if c > best_count {
                best = i;
                best_count = c;
            }
        }
        let beta = self.beta();
        let threshold = &beta * BigRational::from_integer(BigInt::from(s.len()));
        let root = *self
            .roots
            .get(best)
            .ok_or_else(|| Error::hypothesis(MODULE, "host has no roots"))?;
        Ok(CoverageWitness {
            root,
            covered: self.trees[best].intersection(s),
            covered_count: best_count,
            beta,
            threshold,
        })
    }
}

/// Number of roots `u` whose depth-`s_prime` Moore tree contains `v`.
pub fn count_covering_vertices(g: &Graph, v: usize, s_prime: usize) -> Result<usize> {
    check_vertex(g, v)?;
    Ok(CoverageIndex::vertex_rooted(g, s_prime)?.trees_containing(v))
}

/// Number of edges `e` whose depth-`s_prime` edge-rooted Moore tree contains `v`.
pub fn count_covering_edges(g: &Graph, v: usize, s_prime: usize) -> Result<usize> {
    check_vertex(g, v)?;
    Ok(CoverageIndex::edge_rooted(g, s_prime)?.trees_containing(v))
}

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v >= g.order() {
        return Err(Error::invalid(MODULE, format!("vertex {v} outside 0..{}", g.order())));
    }
    Ok(())
}

pub fn best_covering_vertex(g: &Graph, s: &VertexSet, depth: usize) -> Result<CoverageWitness> {
    CoverageIndex::vertex_rooted(g, depth)?.best(s)
}

pub fn best_covering_edge(g: &Graph, s: &VertexSet, depth: usize) -> Result<CoverageWitness> {
    CoverageIndex::edge_rooted(g, depth)?.best(s)
}

/// `|S|(βk - 1) + 1`.
pub fn sigma_lower_bound(s_size: u64, beta: &BigRational, k: u64) -> Result<BigRational> {
    if s_size < 1 {
        return Err(Error::invalid(MODULE, "|S| must be at least 1"));
    }
    if !beta.is_positive() || *beta > BigRational::one() {
        return Err(Error::invalid(MODULE, format!("beta = {beta} outside (0, 1]")));
    }
    if k < 3 {
        return Err(Error::invalid(MODULE, format!("degree {k} below 3")));
    }
    let size = BigRational::from_integer(BigInt::from(s_size));
    let k = BigRational::from_integer(BigInt::from(k));
    Ok(size * (beta * k - BigRational::one()) + BigRational::one())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum VerifyMode {
    Exhaustive { cap: usize },
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaViolation {
    pub set: VertexSet,
    pub boundary: usize,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub bound: BigRational,
}

/// Outcome of checking `|σ(S)| >= |S|(βk - 1) + 1` over many sets.
#[derive(Debug, Clone, Serialize)]
pub struct SigmaReport {
    pub k: u64,
    pub girth: u64,
    pub order: usize,
    pub rooting: Rooting,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub beta: BigRational,
    #[serde(flatten)]
    pub mode: VerifyMode,
    /// Sets with `0 < |S| <= n/2` that were checked.
    pub sets_checked: u64,
    pub violation_count: u64,
    /// The first few violating sets, in enumeration order.
    pub violations: Vec<SigmaViolation>,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

const MAX_REPORTED_VIOLATIONS: usize = 16;

/// Parameters the bound is evaluated with: `(k, girth, β, rooting)`.
fn sigma_setup(g: &Graph) -> Result<(u64, u64, BigRational, Rooting)> {
    let k = g
        .is_regular()
        .ok_or_else(|| Error::hypothesis(MODULE, "host graph is not regular"))? as u64;
    let girth = g
        .girth()
        .finite()
        .ok_or_else(|| Error::hypothesis(MODULE, "host graph is acyclic"))? as u64;
    let params = BoundParams::new(k, girth, 0)?;
    let n = g.order() as u64;
    if girth % 2 == 1 {
        Ok((k, girth, beta_odd(params, n)?, Rooting::Vertex))
    } else {
        Ok((k, girth, beta_even(params, n)?, Rooting::Edge))
    }
}

/// Smallest integer boundary meeting the bound, for each `|S|` in `0..=max`.
fn required_boundaries(beta: &BigRational, k: u64, max: usize) -> Result<Vec<i64>> {
    let mut req = vec![i64::MIN; max + 1];
    for (size, slot) in req.iter_mut().enumerate().skip(1) {
        let bound = sigma_lower_bound(size as u64, beta, k)?;
        let ceil = bound.numer().div_ceil(bound.denom());
        *slot = ceil
            .to_i64()
            .ok_or_else(|| Error::Internal("bound does not fit in i64".into()))?;
    }
    Ok(req)
}

/// Checks the edge-boundary bound on every admissible set (exhaustive) or
/// on seeded random sets. Odd girth uses the vertex-rooted ratio, even girth
/// the edge-rooted one.
pub fn verify_sigma_bound(g: &Graph, mode: VerifyMode) -> Result<SigmaReport> {
    let (k, girth, beta, rooting) = sigma_setup(g)?;
    let n = g.order();
    let half = n / 2;
    let required = required_boundaries(&beta, k, half.max(1))?;
    let bound_at = |size: usize| sigma_lower_bound(size as u64, &beta, k);

    let (checked, count, found) = match mode {
        VerifyMode::Exhaustive { cap } => {
            if n > cap.min(MAX_WALK_ORDER) {
                return Err(Error::CapExceeded {
                    module: MODULE,
                    n,
                    cap: cap.min(MAX_WALK_ORDER),
                });
            }
            let masks = g.neighbor_masks().expect("order checked against walk limit");
            type Acc = (u64, u64, Vec<(u64, usize, usize)>);
            let (checked, count, found) = par_walk(
                &masks,
                || -> Acc { (0, 0, Vec::new()) },
                |acc, set, size, b| {
                    let size = size as usize;
                    if size == 0 || size > half {
                        return;
                    }
                    acc.0 += 1;
                    if (b as i64) < required[size] {
                        acc.1 += 1;
                        if acc.2.len() < MAX_REPORTED_VIOLATIONS {
                            acc.2.push((set, size, b as usize));
                        }
                    }
                },
                |mut a, b| {
                    a.0 += b.0;
                    a.1 += b.1;
                    let room = MAX_REPORTED_VIOLATIONS.saturating_sub(a.2.len());
                    a.2.extend(b.2.into_iter().take(room));
                    a
                },
            );
            let found = found
                .into_iter()
                .map(|(set, size, b)| {
                    Ok(SigmaViolation {
                        set: VertexSet::from_mask(n, set),
                        boundary: b,
                        bound: bound_at(size)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (checked, count, found)
        }
        VerifyMode::Sampled { samples, seed } => {
            if half == 0 {
                return Err(Error::invalid(MODULE, "graph too small to sample proper sets"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut count = 0;
            let mut found = Vec::new();
            for _ in 0..samples {
                let size = rng.gen_range(1..=half);
                let members = sample(&mut rng, n, size);
                let set = VertexSet::from_vertices(n, members.iter()).expect("sampled ids in range");
                let b = g.boundary_size(&set);
                if (b as i64) < required[size] {
                    count += 1;
                    if found.len() < MAX_REPORTED_VIOLATIONS {
                        found.push(SigmaViolation {
                            set,
                            boundary: b,
                            bound: bound_at(size)?,
                        });
                    }
                }
            }
            (samples as u64, count, found)
        }
    };
    Ok(SigmaReport {
        k,
        girth,
        order: n,
        rooting,
        beta,
        mode,
        sets_checked: checked,
        violation_count: count,
        violations: found,
    })
}

/// Lemma checks over a whole host graph, as emitted by `verify-lemmas`.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub k: u64,
    pub girth: u64,
    pub order: usize,
    pub counting: Vec<CountingCheck>,
    pub coverage: Vec<CoverageCheck>,
    pub sigma: SigmaReport,
}

/// Per-depth tree counting: every vertex lies in the predicted number of trees.
#[derive(Debug, Clone, Serialize)]
pub struct CountingCheck {
    pub rooting: Rooting,
    pub depth: usize,
    pub expected: String,
    pub vertices_checked: usize,
    pub mismatches: Vec<usize>,
}

/// Coverage existence and double counting on a family of sets.
#[derive(Debug, Clone, Serialize)]
pub struct CoverageCheck {
    pub rooting: Rooting,
    pub depth: usize,
    pub sets_checked: usize,
    pub threshold_failures: usize,
    pub double_count_failures: usize,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.counting.iter().all(|c| c.mismatches.is_empty())
            && self
                .coverage
                .iter()
                .all(|c| c.threshold_failures == 0 && c.double_count_failures == 0)
            && self.sigma.passed()
    }
}

/// Runs the counting lemmas at every admissible depth, the coverage lemma
/// and its double-counting identity on a family of sets, and the boundary
/// bound. Sets come from exhaustive enumeration (small graphs) or the seeded
/// sampler.
pub fn verify_lemmas(g: &Graph, mode: VerifyMode) -> Result<LemmaReport> {
    let (k, girth, _, rooting) = sigma_setup(g)?;
    let n = g.order();
    let max_depth = match rooting {
        Rooting::Vertex => (girth as usize - 1) / 2,
        Rooting::Edge => girth as usize / 2 - 1,
    };
    let mut counting = Vec::new();
    for depth in 0..=max_depth {
        let index = match rooting {
            Rooting::Vertex => CoverageIndex::vertex_rooted(g, depth)?,
            Rooting::Edge => CoverageIndex::edge_rooted(g, depth)?,
        };
        let expected = index.expected_trees_containing();
        let mismatches = (0..n)
            .filter(|&v| BigInt::from(index.trees_containing(v)) != expected)
            .collect();
        counting.push(CountingCheck {
            rooting,
            depth,
            expected: expected.to_string(),
            vertices_checked: n,
            mismatches,
        });
    }

    // Odd girth 2s+1 covers with vertex trees of depth s-1; even girth 2s
    // with edge trees of depth s-1.
    let cover_depth = match rooting {
        Rooting::Vertex => max_depth - 1,
        Rooting::Edge => max_depth,
    };
    let index = match rooting {
        Rooting::Vertex => CoverageIndex::vertex_rooted(g, cover_depth)?,
        Rooting::Edge => CoverageIndex::edge_rooted(g, cover_depth)?,
    };
    let sets = coverage_sets(n, mode);
    let expected = index.expected_trees_containing();
    let mut threshold_failures = 0;
    let mut double_count_failures = 0;
    for s in &sets {
        if !index.best(s)?.meets_threshold() {
            threshold_failures += 1;
        }
        if BigInt::from(index.total_coverage(s)) != &expected * BigInt::from(s.len()) {
            double_count_failures += 1;
        }
    }
    let coverage = vec![CoverageCheck {
        rooting,
        depth: cover_depth,
        sets_checked: sets.len(),
        threshold_failures,
        double_count_failures,
    }];

    Ok(LemmaReport {
        k,
        girth,
        order: n,
        counting,
        coverage,
        sigma: verify_sigma_bound(g, mode)?,
    })
}

/// All non-empty subsets for exhaustive mode on graphs of at most 16
/// vertices; otherwise seeded random non-empty subsets.
fn coverage_sets(n: usize, mode: VerifyMode) -> Vec<VertexSet> {
    match mode {
        VerifyMode::Exhaustive { .. } if n <= 16 => {
            (1..1u64 << n).map(|m| VertexSet::from_mask(n, m)).collect()
        }
        VerifyMode::Exhaustive { .. } => random_sets(n, 10_000, 0),
        VerifyMode::Sampled { samples, seed } => random_sets(n, samples, seed),
    }
}

fn random_sets(n: usize, count: usize, seed: u64) -> Vec<VertexSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .filter(|_| n > 0)
        .map(|_| {
            let size = rng.gen_range(1..=n);
            let members = sample(&mut rng, n, size);
            VertexSet::from_vertices(n, members.iter()).expect("sampled ids in range")
        })
        .collect()
}
