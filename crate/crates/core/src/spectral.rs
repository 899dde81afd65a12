//! Adjacency spectra by cyclic Jacobi rotation, the Ramanujan test and the
//! Cheeger inequality check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

const MODULE: &str = "spectral";

pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a dense symmetric matrix (row-major, `n x n`), unsorted.
///
/// Cyclic Jacobi with threshold sweeps: during the first three sweeps only
/// entries above `0.2 * sum|a_pq| / n^2` are rotated away. Stops once the
/// off-diagonal Frobenius norm drops below `tol`. Returns the eigenvalues
/// and the number of sweeps used.
pub fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize, tol: f64) -> Result<(Vec<f64>, usize)> {
    if a.len() != n * n {
        return Err(Error::invalid(MODULE, "matrix storage does not match its order"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid(MODULE, format!("tolerance {tol} must be positive")));
    }
    let off_norm = |a: &[f64]| -> f64 {
        let mut sum = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                sum += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * sum).sqrt()
    };
    for sweep in 0..MAX_SWEEPS {
        if off_norm(&a) < tol {
            return Ok(((0..n).map(|i| a[i * n + i]).collect(), sweep));
        }
        let threshold = if sweep < 3 {
            let abs_sum: f64 = (0..n)
                .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
                .map(|(p, q)| a[p * n + q].abs())
                .sum();
            0.2 * abs_sum / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= threshold || apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
            }
        }
    }
    Err(Error::Internal(format!(
        "Jacobi did not converge in {MAX_SWEEPS} sweeps (off-diagonal norm {})",
        off_norm(&a)
    )))
}

/// Dense adjacency matrix, row-major.
pub fn adjacency_matrix(g: &Graph) -> Vec<f64> {
    let n = g.order();
    let mut a = vec![0.0; n * n];
    for (u, v) in g.edges() {
        a[u * n + v] = 1.0;
        a[v * n + u] = 1.0;
    }
    a
}

#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    /// Sorted in descending order.
    pub eigenvalues: Vec<f64>,
    /// `max(|λ_1|, |λ_{n-1}|)`, absent for a single vertex.
    pub lambda: Option<f64>,
    /// Common degree when the graph is regular.
    pub k: Option<usize>,
    pub tolerance: f64,
    pub sweeps: usize,
}

impl Spectrum {
    /// Eigenvalues grouped within `1000 * tol`, as `(mean value, multiplicity)`.
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        let width = 1e3 * self.tolerance;
        let mut groups: Vec<(f64, f64, usize)> = Vec::new();
        for &x in &self.eigenvalues {
            match groups.last_mut() {
                Some((first, sum, count)) if (*first - x).abs() <= width => {
                    *sum += x;
                    *count += 1;
                }
                _ => groups.push((x, x, 1)),
            }
        }
        groups.into_iter().map(|(_, sum, c)| (sum / c as f64, c)).collect()
    }
}

pub fn spectrum(g: &Graph, tol: f64) -> Result<Spectrum> {
    let n = g.order();
    if n == 0 {
        return Err(Error::invalid(MODULE, "graph has no vertices"));
    }
    let (mut eigenvalues, sweeps) = jacobi_eigenvalues(adjacency_matrix(g), n, tol)?;
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let lambda = (n >= 2).then(|| eigenvalues[1].abs().max(eigenvalues[n - 1].abs()));
    Ok(Spectrum {
        eigenvalues,
        lambda,
        k: g.is_regular(),
        tolerance: tol,
        sweeps,
    })
}

/// `max(|λ_1|, |λ_{n-1}|)`.
pub fn second_eigenvalue(spec: &Spectrum) -> Result<f64> {
    spec.lambda
        .ok_or_else(|| Error::invalid(MODULE, "second eigenvalue needs at least two vertices"))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RamanujanVerdict {
    pub is_ramanujan: bool,
    pub lambda: f64,
    /// `2 sqrt(k - 1)`.
    pub threshold: f64,
    /// `threshold - lambda`.
    pub margin: f64,
}

/// `λ <= 2 sqrt(k-1)`, compared with the spectrum's tolerance.
pub fn is_ramanujan(spec: &Spectrum) -> Result<RamanujanVerdict> {
    let k = spec
        .k
        .ok_or_else(|| Error::hypothesis(MODULE, "Ramanujan test needs a regular graph"))?;
    if k == 0 {
        return Err(Error::hypothesis(MODULE, "Ramanujan test needs degree at least 1"));
    }
    let lambda = second_eigenvalue(spec)?;
    let threshold = 2.0 * ((k - 1) as f64).sqrt();
    Ok(RamanujanVerdict {
        is_ramanujan: lambda <= threshold + spec.tolerance,
        lambda,
        threshold,
        margin: threshold - lambda,
    })
}

/// One reading of the Cheeger inequality at a given second eigenvalue.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityBounds {
    pub lambda: f64,
    /// `(k - λ) / 2`.
    pub lower: f64,
    /// `sqrt(2k(k - λ))`.
    pub upper: f64,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl InequalityBounds {
    fn evaluate(k: f64, lambda: f64, h: f64, slack: f64) -> Self {
        let lower = (k - lambda) / 2.0;
        let upper = (2.0 * k * (k - lambda).max(0.0)).sqrt();
        InequalityBounds {
            lambda,
            lower,
            upper,
            lower_holds: lower <= h + slack,
            upper_holds: h <= upper + slack,
        }
    }

    pub fn passed(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// `(k - λ)/2 <= h <= sqrt(2k(k - λ))`, evaluated with `λ = max(|λ_1|, |λ_{n-1}|)`
/// and with the signed `λ_1`.
#[derive(Debug, Clone, Serialize)]
pub struct CheegerInequalityReport {
    pub h: f64,
    pub absolute: InequalityBounds,
    pub signed: InequalityBounds,
}

impl CheegerInequalityReport {
    /// The signed form is the inequality proper. With the absolute value the
    /// lower end only gets weaker, but the upper end fails on bipartite
    /// graphs (`λ = k` there), so only its lower end is required.
    pub fn passed(&self) -> bool {
        self.signed.passed() && self.absolute.lower_holds
    }
}

/// Checks the Cheeger inequality within ten times the spectrum tolerance.
pub fn cheeger_inequality_check(g: &Graph, spec: &Spectrum, h: &BigRational) -> Result<CheegerInequalityReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected { module: MODULE });
    }
    let k = g
        .is_regular()
        .ok_or_else(|| Error::hypothesis(MODULE, "Cheeger inequality needs a regular graph"))? as f64;
    let lambda = second_eigenvalue(spec)?;
    let lambda_1 = spec.eigenvalues[1];
    let h = h
        .to_f64()
        .ok_or_else(|| Error::Internal("Cheeger value not representable".into()))?;
    let slack = spec.tolerance * 10.0;
    Ok(CheegerInequalityReport {
        h,
        absolute: InequalityBounds::evaluate(k, lambda, h, slack),
        signed: InequalityBounds::evaluate(k, lambda_1, h, slack),
    })
}

/// The bracket on `λ` obtained by inserting a Cheeger constant into the
/// Cheeger inequality: `k - 2h <= λ <= k - h^2/(2k)`.
#[derive(Debug, Clone, Serialize)]
pub struct LambdaBracket {
    pub k: u64,
    /// With `h = 1/k`: `k - 2/k`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lower: BigRational,
    /// With `h = 1/k`: `k - 1/(2k^3)`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub upper: BigRational,
    /// With `h = 1/(k-1)`: `k - 2/(k-1)`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lower_with_limit_constant: BigRational,
    /// With `h = 1/(k-1)`: `k - 1/(2k(k-1)^2)`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub upper_with_limit_constant: BigRational,
    pub ramanujan_threshold: f64,
    /// True when the bracket's upper end already lies at or below
    /// `2 sqrt(k-1)`, i.e. the bracket alone would imply Ramanujan.
    pub implies_ramanujan: bool,
    /// `lower - 2 sqrt(k-1)`; positive means the bracket excludes Ramanujan.
    pub lower_minus_threshold: f64,
}

pub fn lambda_bracket(k: u64) -> Result<LambdaBracket> {
    if k < 3 {
        return Err(Error::invalid(MODULE, format!("degree {k} below 3")));
    }
    let kb = BigInt::from(k);
    let kr = BigRational::from_integer(kb.clone());
    let frac = |p: BigInt, q: BigInt| BigRational::new(p, q);
    let lower = &kr - frac(2.into(), kb.clone());
    let upper = &kr - frac(1.into(), 2 * kb.pow(3));
    let km1 = BigInt::from(k - 1);
    let lower_alt = &kr - frac(2.into(), km1.clone());
    let upper_alt = &kr - frac(1.into(), 2 * &kb * km1.pow(2));
    let threshold = 2.0 * ((k - 1) as f64).sqrt();
    let upper_f = upper.to_f64().unwrap_or(f64::INFINITY);
    let lower_f = lower.to_f64().unwrap_or(f64::NEG_INFINITY);
    Ok(LambdaBracket {
        k,
        lower,
        upper,
        lower_with_limit_constant: lower_alt,
        upper_with_limit_constant: upper_alt,
        ramanujan_threshold: threshold,
        implies_ramanujan: upper_f <= threshold,
        lower_minus_threshold: lower_f - threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, cycle, petersen};

    fn assert_spectrum(g: &Graph, expected: &[f64]) {
        let s = spectrum(g, DEFAULT_TOL).unwrap();
        assert_eq!(s.eigenvalues.len(), expected.len());
        for (a, b) in s.eigenvalues.iter().zip(expected) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn known_spectra() {
        assert_spectrum(&complete(4), &[3.0, -1.0, -1.0, -1.0]);
        assert_spectrum(&cycle(6), &[2.0, 1.0, 1.0, -1.0, -1.0, -2.0]);
        let mut pet = vec![3.0];
        pet.extend([1.0; 5]);
        pet.extend([-2.0; 4]);
        assert_spectrum(&petersen(), &pet);
    }

    #[test]
    fn cycle_spectrum_matches_cosines() {
        let n = 6;
        let mut expected: Vec<f64> = (0..n)
            .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos())
            .collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        assert_spectrum(&cycle(n), &expected);
    }

    #[test]
    fn multiplicities_group_degenerate_values() {
        let s = spectrum(&petersen(), DEFAULT_TOL).unwrap();
        let m = s.multiplicities();
        assert_eq!(m.len(), 3);
        assert_eq!(m.iter().map(|x| x.1).collect::<Vec<_>>(), vec![1, 5, 4]);
    }

    #[test]
    fn second_eigenvalues() {
        let k4 = spectrum(&complete(4), DEFAULT_TOL).unwrap();
        assert!((second_eigenvalue(&k4).unwrap() - 1.0).abs() < 1e-9);
        let p = spectrum(&petersen(), DEFAULT_TOL).unwrap();
        assert!((second_eigenvalue(&p).unwrap() - 2.0).abs() < 1e-9);
        let k33 = Graph::from_edges(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).unwrap();
        let s = spectrum(&k33, DEFAULT_TOL).unwrap();
        assert!((second_eigenvalue(&s).unwrap() - 3.0).abs() < 1e-9);
        let single = spectrum(&Graph::empty(1), DEFAULT_TOL).unwrap();
        assert!(second_eigenvalue(&single).is_err());
    }

    #[test]
    fn ramanujan_examples() {
        for k in 3..8 {
            let s = spectrum(&complete(k + 1), DEFAULT_TOL).unwrap();
            assert!(is_ramanujan(&s).unwrap().is_ramanujan);
        }
        let p = is_ramanujan(&spectrum(&petersen(), DEFAULT_TOL).unwrap()).unwrap();
        assert!(p.is_ramanujan);
        assert!((p.margin - (2.0 * 2f64.sqrt() - 2.0)).abs() < 1e-8);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(is_ramanujan(&spectrum(&path, DEFAULT_TOL).unwrap()).is_err());
    }

    #[test]
    fn cheeger_inequality_examples() {
        let cases = [
            (petersen(), BigRational::from_integer(1.into()), 0.5, 6f64.sqrt()),
            (complete(4), BigRational::from_integer(2.into()), 1.0, 12f64.sqrt()),
            (cycle(6), BigRational::new(2.into(), 3.into()), 0.5, 2.0),
        ];
        for (g, h, lower, upper) in cases {
            let s = spectrum(&g, DEFAULT_TOL).unwrap();
            let r = cheeger_inequality_check(&g, &s, &h).unwrap();
            assert!(r.passed());
            // C6 is bipartite, so its values come from the signed form.
            let form = if g.is_bipartite() { &r.signed } else { &r.absolute };
            assert!(form.passed());
            assert!((form.lower - lower).abs() < 1e-8);
            assert!((form.upper - upper).abs() < 1e-8);
        }
        // Bipartite: λ = k makes the absolute upper end zero.
        let k33 = Graph::from_edges(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).unwrap();
        let s = spectrum(&k33, DEFAULT_TOL).unwrap();
        let r = cheeger_inequality_check(&k33, &s, &BigRational::new(5.into(), 3.into())).unwrap();
        assert!(!r.absolute.upper_holds);
        assert!(r.passed());
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let s = spectrum(&two, DEFAULT_TOL).unwrap();
        assert!(cheeger_inequality_check(&two, &s, &BigRational::from_integer(1.into())).is_err());
    }

    #[test]
    fn bracket_values() {
        let b = lambda_bracket(3).unwrap();
        assert_eq!(b.lower, BigRational::new(7.into(), 3.into()));
        assert_eq!(b.upper, BigRational::new(161.into(), 54.into()));
        assert!(!b.implies_ramanujan);
        // 2 sqrt 2 exceeds 7/3, so the lower end does not exclude Ramanujan at k = 3.
        assert!(b.lower_minus_threshold < 0.0);
        let b10 = lambda_bracket(10).unwrap();
        assert_eq!(b10.lower, BigRational::new(49.into(), 5.into()));
        assert_eq!(b10.upper, BigRational::new(19999.into(), 2000.into()));
        assert_eq!(b.lower_with_limit_constant, BigRational::from_integer(2.into()));
        assert_eq!(b.upper_with_limit_constant, BigRational::new(71.into(), 24.into()));
        assert!(lambda_bracket(2).is_err());
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(spectrum(&petersen(), 0.0).is_err());
        assert!(spectrum(&petersen(), -1.0).is_err());
        assert!(spectrum(&Graph::empty(0), 1e-10).is_err());
    }
}
