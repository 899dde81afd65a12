//! The full per-graph analysis and its JSON form.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cheeger::{
    certify_with, cheeger_auto, Certificate, CheegerResult, TheoremBound, DEFAULT_EXACT_CAP,
};
use crate::error::{Error, Result};
use crate::graph::{Girth, Graph};
use crate::lemmas::{verify_lemmas, LemmaReport, VerifyMode};
use crate::moore::{moore_cage_bound, BoundParams};
use crate::spectral::{
    cheeger_inequality_check, is_ramanujan, spectrum, CheegerInequalityReport, RamanujanVerdict, DEFAULT_TOL,
};

const MODULE: &str = "report";

/// JSON schema for [`ExpansionReport`].
pub const REPORT_SCHEMA: &str = include_str!("../schema/expansion_report.schema.json");

/// `{"exact": "p/q", "approx": <f64>}`.
pub fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Rational", 2)?;
    st.serialize_field("exact", &format_rational(r))?;
    st.serialize_field("approx", &r.to_f64().unwrap_or(f64::NAN))?;
    st.end()
}

/// `p/q` in lowest terms, `p/1` for integers.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A JSON integer when it fits in `i64`, otherwise a decimal string.
pub fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub name: String,
    pub exact_cap: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Order slack `c` for the lower bound; defaults to the graph's excess.
    pub c: Option<u64>,
    pub lemmas: bool,
    pub timings: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            name: "graph".into(),
            exact_cap: DEFAULT_EXACT_CAP,
            samples: 200,
            seed: 0,
            tol: DEFAULT_TOL,
            c: None,
            lemmas: true,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub girth: Girth,
    pub bipartite: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumSummary {
    pub lambda_0: f64,
    /// `max(|λ_1|, |λ_{n-1}|)`.
    pub lambda: f64,
    pub lambda_1: f64,
    pub lambda_min: f64,
    pub ramanujan: RamanujanVerdict,
    pub cheeger_inequality: CheegerInequalityReport,
    pub tolerance: f64,
    pub sweeps: usize,
    pub eigenvalues: Vec<f64>,
}

/// The lower bound at the graph's own parameters and the verdict against `h`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundSection {
    pub c: u64,
    pub bound: TheoremBound,
    pub verdict: crate::cheeger::Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaSummary {
    pub passed: bool,
    pub report: LemmaReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub seed: u64,
    pub exact_cap: usize,
    pub samples: usize,
    pub tol: f64,
}

/// Wall-clock seconds per stage. Only present when requested, since it
/// breaks reproducibility of the output.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub girth: f64,
    pub cheeger: f64,
    pub spectrum: f64,
    pub lemmas: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionReport {
    pub graph: GraphSummary,
    #[serde(serialize_with = "ser_bigint")]
    pub moore_bound: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub excess: BigInt,
    pub cheeger: CheegerResult,
    pub spectrum: SpectrumSummary,
    /// Absent for girth 3, where the bound has no admissible depth.
    pub theorem_bound: Option<BoundSection>,
    /// Absent for girth 3 or when disabled.
    pub lemmas: Option<LemmaSummary>,
    pub settings: Settings,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl ExpansionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

/// Runs every analysis on a connected `k`-regular graph with `k >= 3`.
pub fn analyze(g: &Graph, opts: &AnalyzeOptions) -> Result<ExpansionReport> {
    let start = Instant::now();
    let mut timings = Timings::default();
    if !g.is_connected() {
        return Err(Error::Disconnected { module: MODULE });
    }
    let k = g
        .is_regular()
        .ok_or_else(|| Error::hypothesis(MODULE, "graph is not regular"))?;
    if k < 3 {
        return Err(Error::hypothesis(MODULE, format!("degree {k} is below 3")));
    }
    let t = Instant::now();
    let girth = g.girth();
    timings.girth = secs(t);
    let gv = girth
        .finite()
        .ok_or_else(|| Error::Internal("regular graph of degree >= 3 without a cycle".into()))?;
    let moore_bound = moore_cage_bound(k as u64, gv as u64)?;
    let excess = BigInt::from(g.order()) - &moore_bound;

    let t = Instant::now();
    let cheeger = cheeger_auto(g, opts.exact_cap, opts.samples, opts.seed)?;
    timings.cheeger = secs(t);

    let t = Instant::now();
    let spec = spectrum(g, opts.tol)?;
    let n = g.order();
    let spectrum = SpectrumSummary {
        lambda_0: spec.eigenvalues[0],
        lambda: spec.lambda.expect("n >= 4"),
        lambda_1: spec.eigenvalues[1],
        lambda_min: spec.eigenvalues[n - 1],
        ramanujan: is_ramanujan(&spec)?,
        cheeger_inequality: cheeger_inequality_check(g, &spec, &cheeger.h)?,
        tolerance: spec.tolerance,
        sweeps: spec.sweeps,
        eigenvalues: spec.eigenvalues.clone(),
    };
    timings.spectrum = secs(t);

    let theorem_bound = if gv >= 4 {
        let min_c = if excess.is_negative() { 0 } else { excess.to_u64().unwrap_or(u64::MAX) };
        let c = opts.c.unwrap_or(min_c);
        if c < min_c {
            return Err(Error::hypothesis(
                MODULE,
                format!("c = {c} is below the graph's excess {excess}"),
            ));
        }
        let params = BoundParams::new(k as u64, gv as u64, c)?;
        let Certificate { bound, verdict, .. } = certify_with(g, params, cheeger.clone())?;
        Some(BoundSection { c, bound, verdict })
    } else {
        None
    };

    let t = Instant::now();
    let lemmas = if opts.lemmas && gv >= 4 {
        let mode = if n <= opts.exact_cap.min(crate::subsets::MAX_WALK_ORDER) {
            VerifyMode::Exhaustive { cap: opts.exact_cap }
        } else {
            VerifyMode::Sampled {
                samples: opts.samples,
                seed: opts.seed,
            }
        };
        let report = verify_lemmas(g, mode)?;
        Some(LemmaSummary {
            passed: report.passed(),
            report,
        })
    } else {
        None
    };
    timings.lemmas = secs(t);
    timings.total = secs(start);

    Ok(ExpansionReport {
        graph: GraphSummary {
            name: opts.name.clone(),
            n,
            m: g.edge_count(),
            k,
            girth,
            bipartite: g.is_bipartite(),
        },
        moore_bound,
        excess,
        cheeger,
        spectrum,
        theorem_bound,
        lemmas,
        settings: Settings {
            seed: opts.seed,
            exact_cap: opts.exact_cap,
            samples: opts.samples,
            tol: opts.tol,
        },
        timings: opts.timings.then_some(timings),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn rational_serialization() {
        #[derive(Serialize)]
        struct W {
            #[serde(serialize_with = "ser_rational")]
            r: BigRational,
        }
        let w = W {
            r: BigRational::new(BigInt::from(4), BigInt::from(10)),
        };
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"r":{"exact":"2/5","approx":0.4}}"#);
    }

    #[test]
    fn petersen_report() {
        let r = analyze(&catalog::petersen(), &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.excess, BigInt::from(0));
        assert_eq!(format_rational(&r.cheeger.h), "1/1");
        assert!((r.spectrum.lambda - 2.0).abs() < 1e-8);
        assert!(r.spectrum.ramanujan.is_ramanujan);
        let tb = r.theorem_bound.as_ref().unwrap();
        assert_eq!(format_rational(&tb.bound.bound_value), "2/5");
        assert_eq!(tb.verdict, crate::cheeger::Verdict::Holds);
        assert!(r.lemmas.as_ref().unwrap().passed);
        assert!(r.timings.is_none());
        let again = analyze(&catalog::petersen(), &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.to_json(), again.to_json());
    }

    #[test]
    fn rejects_bad_inputs() {
        let two = Graph::from_edges(8, catalog::complete(4).edges().chain(catalog::complete(4).edges().map(|(u, v)| (u + 4, v + 4)))).unwrap();
        assert!(matches!(analyze(&two, &AnalyzeOptions::default()), Err(Error::Disconnected { .. })));
        let c6 = catalog::cycle(6);
        assert_eq!(analyze(&c6, &AnalyzeOptions::default()).unwrap_err().exit_code(), 3);
        let opts = AnalyzeOptions {
            c: Some(0),
            ..Default::default()
        };
        assert!(analyze(&catalog::mcgee(), &opts).is_err());
    }
}
