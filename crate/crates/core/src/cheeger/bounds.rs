use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{cheeger_auto, CheegerResult, MODULE};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moore::{moore_unchecked, BoundParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of_girth(g: u64) -> Parity {
        if g % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Girth `2s + 1` (odd) or `2s` (even).
    pub fn girth(self, s: u64) -> u64 {
        match self {
            Parity::Odd => 2 * s + 1,
            Parity::Even => 2 * s,
        }
    }

    /// Depth `s` with `g = 2s + 1` or `g = 2s`.
    pub fn depth(self, g: u64) -> u64 {
        g / 2
    }
}

/// The lower bound on `h` for a `k`-regular graph of girth `2s+1` or `2s`
/// and order at most `M(k, g) + c`, and its limit `1/(k-1)`.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremBound {
    pub params: BoundParams,
    pub parity: Parity,
    pub s: u64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub bound_value: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub limit_value: BigRational,
    /// `limit_value - bound_value`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub epsilon_gap: BigRational,
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn check_range(k: u64, s: u64) -> Result<()> {
    if k < 3 {
        return Err(Error::invalid(MODULE, format!("degree k = {k} must be at least 3")));
    }
    if s < 2 {
        return Err(Error::invalid(MODULE, format!("depth s = {s} must be at least 2")));
    }
    Ok(())
}

/// Closed form, odd girth `2s+1`, with `D = k(k-1)^s - 2 + c(k-2)`:
/// `(k^2 (k-1)^{s-1} - 2 + c(k-2)) / D - (k (k-1)^s + 2c(k-2)) / D`.
fn closed_form_odd(k: u64, s: u64, c: u64) -> BigRational {
    let kb = BigInt::from(k);
    let base = BigInt::from(k - 1);
    let slack = BigInt::from(c) * BigInt::from(k - 2);
    let denom: BigInt = &kb * base.pow(s as u32) - 2 + &slack;
    let first: BigInt = &kb * &kb * base.pow((s - 1) as u32) - 2 + &slack;
    let second: BigInt = &kb * base.pow(s as u32) + 2 * &slack;
    BigRational::new(first, denom.clone()) - BigRational::new(second, denom)
}

/// Closed form, even girth `2s`, with `D = 2(k-1)^s - 2 + c(k-2)`:
/// `(2k (k-1)^{s-1} - 2 + c(k-2)) / D - (2 (k-1)^s + 2c(k-2)) / D`.
fn closed_form_even(k: u64, s: u64, c: u64) -> BigRational {
    let kb = BigInt::from(k);
    let base = BigInt::from(k - 1);
    let slack = BigInt::from(c) * BigInt::from(k - 2);
    let denom: BigInt = 2 * base.pow(s as u32) - 2 + &slack;
    let first: BigInt = 2 * &kb * base.pow((s - 1) as u32) - 2 + &slack;
    let second: BigInt = 2 * base.pow(s as u32) + 2 * &slack;
    BigRational::new(first, denom.clone()) - BigRational::new(second, denom)
}

/// `βk - 1 + 2/n` at `n = M(k, g) + c`, with `β` the coverage ratio of the
/// matching parity evaluated at that order.
fn chain_form(parity: Parity, k: u64, s: u64, c: u64) -> BigRational {
    let g = parity.girth(s);
    let n = moore_unchecked(k, g) + BigInt::from(c);
    let tree = moore_unchecked(k, 2 * s - 1);
    let beta = match parity {
        Parity::Odd => BigRational::new(tree, n.clone()),
        Parity::Even => BigRational::new(2 * (tree - 1), BigInt::from(k) * &n),
    };
    beta * int(k) - BigRational::one() + BigRational::new(BigInt::from(2), n)
}

pub fn theorem_bound(parity: Parity, k: u64, s: u64, c: u64) -> Result<TheoremBound> {
    check_range(k, s)?;
    let closed = match parity {
        Parity::Odd => closed_form_odd(k, s, c),
        Parity::Even => closed_form_even(k, s, c),
    };
    let chain = chain_form(parity, k, s, c);
    if closed != chain {
        return Err(Error::Internal(format!(
            "bound routes disagree at k={k}, s={s}, c={c}: {closed} vs {chain}"
        )));
    }
    let limit = BigRational::new(BigInt::one(), BigInt::from(k - 1));
    Ok(TheoremBound {
        params: BoundParams::new(k, parity.girth(s), c)?,
        parity,
        s,
        epsilon_gap: &limit - &closed,
        bound_value: closed,
        limit_value: limit,
    })
}

/// Lower bound for odd girth `2s + 1`.
pub fn theorem_bound_odd(k: u64, s: u64, c: u64) -> Result<TheoremBound> {
    theorem_bound(Parity::Odd, k, s, c)
}

/// Lower bound for even girth `2s`.
pub fn theorem_bound_even(k: u64, s: u64, c: u64) -> Result<TheoremBound> {
    theorem_bound(Parity::Even, k, s, c)
}

/// Smallest `s >= 2` whose bound reaches `1/(k-1) - epsilon`. Requires
/// `0 < epsilon < 1/(k-1)`; the scan terminates because the bound tends to
/// the limit.
pub fn epsilon_threshold(parity: Parity, k: u64, c: u64, epsilon: &BigRational) -> Result<u64> {
    check_range(k, 2)?;
    let limit = BigRational::new(BigInt::one(), BigInt::from(k - 1));
    if !epsilon.is_positive() || *epsilon >= limit {
        return Err(Error::invalid(
            MODULE,
            format!("epsilon = {epsilon} must lie strictly between 0 and {limit}"),
        ));
    }
    let target = &limit - epsilon;
    let mut s = 2;
    loop {
        if theorem_bound(parity, k, s, c)?.bound_value >= target {
            return Ok(s);
        }
        s += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EpsilonThresholds {
    pub odd: u64,
    pub even: u64,
}

pub fn epsilon_thresholds(k: u64, c: u64, epsilon: &BigRational) -> Result<EpsilonThresholds> {
    Ok(EpsilonThresholds {
        odd: epsilon_threshold(Parity::Odd, k, c, epsilon)?,
        even: epsilon_threshold(Parity::Even, k, c, epsilon)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Exact `h` meets the bound.
    Holds,
    /// `h` (exact, or an upper bound on it) is below the bound.
    Violated,
    /// Only an upper bound on `h` is known and it sits above the bound.
    Inconclusive,
}

/// Measured Cheeger value against the bound at the graph's own `(k, s, c)`.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub order: usize,
    pub order_ceiling: String,
    pub bound: TheoremBound,
    pub cheeger: CheegerResult,
    pub verdict: Verdict,
}

/// Checks `h(G) >= bound` for a `k`-regular graph of girth `params.g` with
/// at most `M(k, g) + c` vertices. Order above the ceiling is an error.
pub fn certify_expansion(
    g: &Graph,
    params: BoundParams,
    n_cap: usize,
    samples: usize,
    seed: u64,
) -> Result<Certificate> {
    check_hypotheses(g, params)?;
    let cheeger = cheeger_auto(g, n_cap, samples, seed)?;
    certify_with(g, params, cheeger)
}

fn check_hypotheses(g: &Graph, params: BoundParams) -> Result<()> {
    match g.is_regular() {
        Some(k) if k as u64 == params.k => {}
        _ => {
            return Err(Error::hypothesis(
                MODULE,
                format!("graph is not {}-regular", params.k),
            ))
        }
    }
    let girth = g.girth();
    if girth.finite() != Some(params.g as usize) {
        return Err(Error::hypothesis(
            MODULE,
            format!("graph has girth {girth}, parameters say {}", params.g),
        ));
    }
    let ceiling = params.order_ceiling();
    if BigInt::from(g.order()) > ceiling {
        return Err(Error::hypothesis(
            MODULE,
            format!(
                "order {} exceeds M({}, {}) + {} = {ceiling}",
                g.order(),
                params.k,
                params.g,
                params.c
            ),
        ));
    }
    Ok(())
}

/// As [`certify_expansion`], with a Cheeger value computed elsewhere.
pub fn certify_with(g: &Graph, params: BoundParams, cheeger: CheegerResult) -> Result<Certificate> {
    check_hypotheses(g, params)?;
    let ceiling = params.order_ceiling();
    let parity = Parity::of_girth(params.g);
    let bound = theorem_bound(parity, params.k, parity.depth(params.g), params.c)?;
    let verdict = match (cheeger.h >= bound.bound_value, cheeger.is_exact()) {
        (true, true) => Verdict::Holds,
        (false, _) => Verdict::Violated,
        (true, false) => Verdict::Inconclusive,
    };
    Ok(Certificate {
        order: g.order(),
        order_ceiling: ceiling.to_string(),
        bound,
        cheeger,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::petersen;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn odd_examples() {
        let b = theorem_bound_odd(3, 2, 0).unwrap();
        assert_eq!(b.bound_value, rat(2, 5));
        assert_eq!(closed_form_odd(3, 2, 0), rat(16, 10) - rat(12, 10));
        assert_eq!(b.limit_value, rat(1, 2));
        assert_eq!(b.epsilon_gap, rat(1, 10));
        // Chain route by hand: (4/10)*3 - 1 + 2/10.
        assert_eq!(rat(4, 10) * int(3u32) - int(1u32) + rat(2, 10), rat(2, 5));
        assert!(theorem_bound_odd(4, 2, 0).is_ok());
        assert!(theorem_bound_odd(3, 1, 0).is_err());
        assert!(theorem_bound_odd(2, 2, 0).is_err());
    }

    #[test]
    fn even_examples() {
        let b = theorem_bound_even(3, 3, 0).unwrap();
        assert_eq!(b.bound_value, rat(9, 21) * int(3u32) - int(1u32) + rat(2, 14));
        assert_eq!(b.bound_value, rat(3, 7));
        let slack = theorem_bound_even(3, 3, 5).unwrap();
        assert!(slack.bound_value < b.bound_value);
    }

    #[test]
    fn bounds_stay_below_limit_and_approach_it() {
        let tol = rat(1, 1_000_000);
        for k in 3..=8 {
            for c in [0, 1, 10] {
                for parity in [Parity::Odd, Parity::Even] {
                    for s in 2..12 {
                        let b = theorem_bound(parity, k, s, c).unwrap();
                        assert!(b.bound_value < b.limit_value);
                    }
                    let far = theorem_bound(parity, k, 40, c).unwrap();
                    assert!(far.epsilon_gap.abs() < tol);
                }
            }
        }
    }

    #[test]
    fn epsilon_scan() {
        assert_eq!(epsilon_threshold(Parity::Odd, 3, 0, &rat(1, 10)).unwrap(), 2);
        assert_eq!(epsilon_threshold(Parity::Odd, 3, 0, &rat(49, 100)).unwrap(), 2);
        assert_eq!(epsilon_threshold(Parity::Even, 3, 0, &rat(1, 10)).unwrap(), 3);
        let s = epsilon_threshold(Parity::Odd, 4, 10, &rat(1, 100)).unwrap();
        assert!(theorem_bound_odd(4, s, 10).unwrap().epsilon_gap <= rat(1, 100));
        assert!(theorem_bound_odd(4, s - 1, 10).map_or(true, |b| b.epsilon_gap > rat(1, 100)));
        assert!(epsilon_threshold(Parity::Odd, 3, 0, &rat(0, 1)).is_err());
        assert!(epsilon_threshold(Parity::Odd, 3, 0, &rat(1, 2)).is_err());
    }

    #[test]
    fn petersen_certificate() {
        let cert = certify_expansion(&petersen(), BoundParams::new(3, 5, 0).unwrap(), 26, 10, 0).unwrap();
        assert_eq!(cert.bound.bound_value, rat(2, 5));
        assert_eq!(cert.cheeger.h, rat(1, 1));
        assert_eq!(cert.verdict, Verdict::Holds);
        assert!(certify_expansion(&petersen(), BoundParams::new(3, 7, 0).unwrap(), 26, 10, 0).is_err());
    }
}
