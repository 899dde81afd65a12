use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_connected, CheegerMethod, CheegerResult, MODULE};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Local-search state: the set, its boundary, and for every vertex the
/// number of its neighbours inside the set.
struct Descent<'a> {
    g: &'a Graph,
    set: VertexSet,
    boundary: usize,
    inside: Vec<usize>,
    half: usize,
}

/// `a/b < c/d` for non-negative integers with positive denominators.
fn ratio_less(a: usize, b: usize, c: usize, d: usize) -> bool {
    (a as u128) * (d as u128) < (c as u128) * (b as u128)
}

#[derive(Clone, Copy)]
enum Move {
    Add(usize),
    Remove(usize),
    Swap(usize, usize),
}

impl<'a> Descent<'a> {
    fn new(g: &'a Graph, set: VertexSet) -> Self {
        let n = g.order();
        let inside = (0..n)
            .map(|v| g.neighbors(v).iter().filter(|&&w| set.contains(w)).count())
            .collect();
        Descent {
            g,
            boundary: g.boundary_size(&set),
            set,
            inside,
            half: n / 2,
        }
    }

    /// Boundary change from toggling `v` in.
    fn add_gain(&self, v: usize) -> isize {
        self.g.degree(v) as isize - 2 * self.inside[v] as isize
    }

    fn best_move(&self) -> Option<(Move, usize, usize)> {
        let n = self.g.order();
        let size = self.set.len();
        let b = self.boundary as isize;
        let mut best: Option<(Move, usize, usize)> = None;
        let consider = |mv: Move, nb: isize, ns: usize, best: &mut Option<(Move, usize, usize)>| {
            let nb = nb as usize;
            let (cb, cs) = best.map_or((self.boundary, size), |(_, cb, cs)| (cb, cs));
            if ratio_less(nb, ns, cb, cs) {
                *best = Some((mv, nb, ns));
            }
        };
        let (members, others): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| self.set.contains(v));
        if size < self.half {
            for &v in &others {
                consider(Move::Add(v), b + self.add_gain(v), size + 1, &mut best);
            }
        }
        if size > 1 {
            for &v in &members {
                consider(Move::Remove(v), b - self.add_gain(v), size - 1, &mut best);
            }
        }
        for &a in &members {
            let out = b - self.add_gain(a);
            for &c in &others {
                let adj = self.g.has_edge(a, c) as isize;
                let gain = self.g.degree(c) as isize - 2 * (self.inside[c] as isize - adj);
                consider(Move::Swap(a, c), out + gain, size, &mut best);
            }
        }
        best
    }

    fn toggle(&mut self, v: usize, entering: bool) {
        if entering {
            self.boundary = (self.boundary as isize + self.add_gain(v)) as usize;
            self.set.insert(v);
            for &w in self.g.neighbors(v) {
                self.inside[w] += 1;
            }
        } else {
            self.set.remove(v);
            for &w in self.g.neighbors(v) {
                self.inside[w] -= 1;
            }
            self.boundary = (self.boundary as isize - self.add_gain(v)) as usize;
        }
    }

    /// Steepest descent over add, remove and swap moves until no move
    /// lowers the ratio.
    fn run(mut self) -> (VertexSet, usize) {
        while let Some((mv, _, _)) = self.best_move() {
            match mv {
                Move::Add(v) => self.toggle(v, true),
                Move::Remove(v) => self.toggle(v, false),
                Move::Swap(a, c) => {
                    self.toggle(a, false);
                    self.toggle(c, true);
                }
            }
        }
        debug_assert_eq!(self.boundary, self.g.boundary_size(&self.set));
        (self.set, self.boundary)
    }
}

/// Upper bound on `h(G)`: random sets of random admissible size, each
/// refined by steepest single-vertex descent. Seeded and deterministic.
pub fn cheeger_upper_sample(g: &Graph, samples: usize, seed: u64) -> Result<CheegerResult> {
    check_connected(g)?;
    if samples == 0 {
        return Err(Error::invalid(MODULE, "samples must be at least 1"));
    }
    let n = g.order();
    let half = n / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(VertexSet, usize)> = None;
    for _ in 0..samples {
        let size = rng.gen_range(1..=half);
        let start = VertexSet::from_vertices(n, sample(&mut rng, n, size).iter()).expect("ids in range");
        let (set, boundary) = Descent::new(g, start).run();
        let better = match &best {
            None => true,
            Some((bs, bb)) => {
                ratio_less(boundary, set.len(), *bb, bs.len())
                    || (!ratio_less(*bb, bs.len(), boundary, set.len())
                        && set.cmp_value(bs) == std::cmp::Ordering::Less)
            }
        };
        if better {
            best = Some((set, boundary));
        }
    }
    let (set, boundary) = best.expect("at least one sample");
    Ok(CheegerResult {
        h: BigRational::new(BigInt::from(boundary), BigInt::from(set.len())),
        argmin_set: set,
        boundary,
        method: CheegerMethod::SampledUpperBound,
        subsets_scanned: samples as u64,
    })
}
