//! Cheeger constants: exact enumeration, sampled upper bounds, and the
//! closed-form lower bounds for graphs close to the Moore bound.

mod bounds;
mod sampled;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::subsets::{par_walk, MAX_WALK_ORDER};

pub use bounds::{
    certify_expansion, certify_with, epsilon_threshold, epsilon_thresholds, theorem_bound, theorem_bound_even,
    theorem_bound_odd, Certificate, EpsilonThresholds, Parity, TheoremBound, Verdict,
};
pub use sampled::cheeger_upper_sample;

pub(crate) const MODULE: &str = "cheeger";

/// Default largest order handled by exhaustive enumeration.
pub const DEFAULT_EXACT_CAP: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheegerMethod {
    Exhaustive,
    SampledUpperBound,
}

/// A Cheeger value with the set attaining it. For the sampled method the
/// value is only an upper bound on the true constant.
#[derive(Debug, Clone, Serialize)]
pub struct CheegerResult {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub h: BigRational,
    pub argmin_set: VertexSet,
    pub boundary: usize,
    pub method: CheegerMethod,
    pub subsets_scanned: u64,
}

impl CheegerResult {
    pub fn is_exact(&self) -> bool {
        self.method == CheegerMethod::Exhaustive
    }
}

pub(crate) fn check_connected(g: &Graph) -> Result<()> {
    if g.order() < 2 {
        return Err(Error::invalid(MODULE, "Cheeger constant needs at least two vertices"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected { module: MODULE });
    }
    Ok(())
}

/// Candidate minimum during enumeration: boundary, size, bitset.
#[derive(Debug, Clone, Copy)]
struct Best {
    boundary: u32,
    size: u32,
    set: u64,
}

impl Best {
    fn cmp_key(&self, other: &Best) -> Ordering {
        let lhs = self.boundary as u64 * other.size as u64;
        let rhs = other.boundary as u64 * self.size as u64;
        lhs.cmp(&rhs).then(self.set.cmp(&other.set))
    }

    fn min(a: Option<Best>, b: Option<Best>) -> Option<Best> {
        match (a, b) {
            (Some(x), Some(y)) => Some(if y.cmp_key(&x) == Ordering::Less { y } else { x }),
            (x, None) => x,
            (None, y) => y,
        }
    }
}

/// Exact `h(G) = min |σ(S)| / |S|` over `0 < |S| <= n/2`, by a Gray-code walk
/// over all subsets. At `|S| = n/2` only sets containing vertex 0 are kept,
/// so complementary halves are scored once. Ties go to the smallest bitset.
pub fn cheeger_exact(g: &Graph, n_cap: usize) -> Result<CheegerResult> {
    check_connected(g)?;
    let n = g.order();
    let cap = n_cap.min(MAX_WALK_ORDER);
    if n > cap {
        return Err(Error::CapExceeded { module: MODULE, n, cap });
    }
    let masks = g.neighbor_masks().expect("order within walk limit");
    let half = (n / 2) as u32;
    let even = n.is_multiple_of(2);
    let best = par_walk(
        &masks,
        || None,
        |acc: &mut Option<Best>, set, size, boundary| {
            if size == 0 || size > half || (even && size == half && set & 1 == 0) {
                return;
            }
            let cand = Best { boundary, size, set };
            *acc = Best::min(*acc, Some(cand));
        },
        Best::min,
    )
    .ok_or_else(|| Error::Internal("no admissible subset".into()))?;
    Ok(CheegerResult {
        h: BigRational::new(BigInt::from(best.boundary), BigInt::from(best.size)),
        argmin_set: VertexSet::from_mask(n, best.set),
        boundary: best.boundary as usize,
        method: CheegerMethod::Exhaustive,
        subsets_scanned: 1u64 << n,
    })
}

/// Exact value when the order is within `n_cap`, otherwise the sampled
/// upper bound.
pub fn cheeger_auto(g: &Graph, n_cap: usize, samples: usize, seed: u64) -> Result<CheegerResult> {
    if g.order() <= n_cap.min(MAX_WALK_ORDER) {
        cheeger_exact(g, n_cap)
    } else {
        cheeger_upper_sample(g, samples, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, cycle, petersen};

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    /// Direct enumeration without the Gray-code walk or deduplication.
    fn brute_force(g: &Graph) -> BigRational {
        let n = g.order();
        (1u64..1 << n)
            .map(|m| VertexSet::from_mask(n, m))
            .filter(|s| 2 * s.len() <= n)
            .map(|s| rat(g.boundary_size(&s) as i64, s.len() as i64))
            .min()
            .unwrap()
    }

    #[test]
    fn exact_values() {
        let k4 = cheeger_exact(&complete(4), 26).unwrap();
        assert_eq!(k4.h, rat(2, 1));
        assert_eq!(k4.argmin_set.to_vec(), vec![0, 1]);

        let c6 = cheeger_exact(&cycle(6), 26).unwrap();
        assert_eq!(c6.h, rat(2, 3));
        assert_eq!(c6.argmin_set.to_vec(), vec![0, 1, 2]);

        let p = cheeger_exact(&petersen(), 26).unwrap();
        assert_eq!(p.h, rat(1, 1));
        assert_eq!(p.argmin_set.len(), 5);
        assert_eq!(p.subsets_scanned, 1024);
        for r in [&k4, &c6, &p] {
            assert!(r.argmin_set.contains(0) || 2 * r.argmin_set.len() < r.argmin_set.universe());
        }
        assert_eq!(brute_force(&petersen()), rat(1, 1));
    }

    #[test]
    fn odd_order_and_witness_ratio() {
        for n in 3..12 {
            let c = cycle(n);
            let r = cheeger_exact(&c, 26).unwrap();
            assert_eq!(r.h, brute_force(&c));
            assert_eq!(rat(c.boundary_size(&r.argmin_set) as i64, r.argmin_set.len() as i64), r.h);
        }
    }

    #[test]
    fn errors() {
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(cheeger_exact(&two, 26), Err(Error::Disconnected { .. })));
        assert!(matches!(cheeger_exact(&cycle(30), 26), Err(Error::CapExceeded { .. })));
        assert!(cheeger_exact(&Graph::empty(1), 26).is_err());
    }
}
