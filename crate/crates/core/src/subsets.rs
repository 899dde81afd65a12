//! Gray-code walks over all vertex subsets of a small graph, keeping the
//! edge-boundary size current with one popcount per step.

use rayon::prelude::*;

/// Largest graph the single-word walker accepts.
pub const MAX_WALK_ORDER: usize = 63;

const SEGMENT_BITS: u32 = 16;

#[inline]
pub(crate) fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Boundary size of `set` computed from scratch.
#[inline]
pub(crate) fn boundary_of(masks: &[u64], set: u64) -> u32 {
    let mut rest = set;
    let mut total = 0;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        total += (masks[v] & !set).count_ones();
    }
    total
}

/// Visits `gray(i)` for every `i` in `start..end`, calling
/// `visit(set, size, boundary)`. Consecutive sets differ in one vertex.
pub(crate) fn walk_segment<F>(masks: &[u64], start: u64, end: u64, mut visit: F)
where
    F: FnMut(u64, u32, u32),
{
    if start >= end {
        return;
    }
    let mut set = gray(start);
    let mut boundary = boundary_of(masks, set);
    visit(set, set.count_ones(), boundary);
    for i in start + 1..end {
        let v = i.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let degree = masks[v].count_ones();
        let inside = (masks[v] & set & !bit).count_ones();
        set ^= bit;
        if set & bit != 0 {
            boundary = boundary + degree - 2 * inside;
        } else {
            boundary = boundary + 2 * inside - degree;
        }
        visit(set, set.count_ones(), boundary);
    }
}

/// Splits the walk over all `2^n` subsets into contiguous segments, folds
/// each with `fold` starting from `init()`, and merges the per-segment
/// results in segment order with `merge`. The result does not depend on how
/// rayon schedules the segments.
pub(crate) fn par_walk<T, I, F, M>(masks: &[u64], init: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, u64, u32, u32) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let n = masks.len() as u32;
    assert!(n as usize <= MAX_WALK_ORDER, "subset walk limited to {MAX_WALK_ORDER} vertices");
    let total = 1u64 << n;
    let seg_bits = SEGMENT_BITS.min(n);
    let seg_len = 1u64 << seg_bits;
    let segments = total / seg_len;
    let results: Vec<T> = (0..segments)
        .into_par_iter()
        .map(|seg| {
            let mut acc = init();
            walk_segment(masks, seg * seg_len, (seg + 1) * seg_len, |set, size, b| {
                fold(&mut acc, set, size, b)
            });
            acc
        })
        .collect();
    results.into_iter().reduce(merge).unwrap_or_else(init)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walk_visits_every_subset_with_correct_boundary() {
        // C_6 plus a chord.
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)];
        let mut masks = vec![0u64; 6];
        for (u, v) in edges {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
        let mut seen = [false; 64];
        walk_segment(&masks, 0, 64, |set, size, b| {
            assert!(!seen[set as usize]);
            seen[set as usize] = true;
            assert_eq!(size, set.count_ones());
            assert_eq!(b, boundary_of(&masks, set));
        });
        assert!(seen.iter().all(|&s| s));

        // Segments starting mid-walk agree with the from-scratch boundary too.
        walk_segment(&masks, 37, 50, |set, _, b| assert_eq!(b, boundary_of(&masks, set)));
    }

    #[test]
    fn parallel_walk_counts_all_sets() {
        let masks = vec![0u64; 18];
        let count = par_walk(&masks, || 0u64, |c, _, _, _| *c += 1, |a, b| a + b);
        assert_eq!(count, 1 << 18);
    }
}
