use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cage_expander::catalog::{self, double_step, iterate_doubling};
use cage_expander::cheeger::{
    cheeger_auto, cheeger_exact, cheeger_upper_sample, epsilon_thresholds, theorem_bound, Parity, DEFAULT_EXACT_CAP,
};
use cage_expander::formats::{load_graph, write_graph, Format};
use cage_expander::lemmas::{verify_lemmas, VerifyMode};
use cage_expander::moore::{moore_cage_bound, moore_closed_form, moore_dd_bound, moore_summation};
use cage_expander::report::{analyze, format_rational, AnalyzeOptions};
use cage_expander::spectral::{cheeger_inequality_check, is_ramanujan, lambda_bracket, spectrum, DEFAULT_TOL};
use cage_expander::{Error, Graph, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cage-expander", version, about = "Moore bounds, Cheeger constants and spectra of regular graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print only the JSON document.
    #[arg(long, global = true)]
    json_only: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest order for exhaustive subset enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_CAP)]
    exact_cap: usize,
    /// Eigensolver tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Input format; detected from extension and content by default.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    input_format: InputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Auto,
    Graph6,
    Adj,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Graph6,
    Adj,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Graph6 => Format::Graph6,
            OutputFormat::Adj => Format::Adjacency,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

#[derive(Subcommand)]
enum Command {
    /// Moore bound for cages or for degree/diameter.
    MooreBound {
        k: Option<u64>,
        g: Option<u64>,
        /// Degree/diameter bound M(k, D) instead of the girth bound.
        #[arg(long)]
        diameter: Option<u64>,
        /// CSV table for 3 <= k <= KMAX and 3 <= g <= GMAX.
        #[arg(long, num_args = 2, value_names = ["KMAX", "GMAX"])]
        table: Option<Vec<u64>>,
    },
    /// Full report for one graph.
    Analyze {
        /// Graph file, or catalog:NAME.
        graph: String,
        /// Order slack c for the lower bound (default: the excess).
        #[arg(long)]
        c: Option<u64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        no_lemmas: bool,
        /// Include wall-clock timings (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Exact Cheeger constant, or a sampled upper bound with --sampled.
    Cheeger {
        graph: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Always use the sampled upper bound.
        #[arg(long)]
        sampled: bool,
    },
    /// Adjacency spectrum, Ramanujan test and Cheeger inequality.
    Spectral {
        graph: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Tree counting, coverage and edge-boundary checks.
    VerifyLemmas {
        graph: String,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Closed-form lower bound on the Cheeger constant.
    Bound {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 0)]
        c: u64,
        /// Both parities when omitted.
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        /// Smallest s with bound >= 1/(k-1) - epsilon; "p/q" or decimal.
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Built-in graphs.
    Catalog {
        #[arg(long, conflicts_with = "emit")]
        list: bool,
        #[arg(long)]
        emit: Option<String>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Graph6)]
        format: OutputFormat,
    },
    /// Two-copy edge-swap construction.
    Double {
        graph: String,
        /// Edge to swap, as u,v (only with a single iteration).
        #[arg(long, value_parser = parse_edge)]
        edge: Option<(usize, usize)>,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        /// Write the last graph here.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Graph6)]
        format: OutputFormat,
    },
}

fn parse_edge(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected u,v")?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("'{x}': {e}"));
    Ok((num(a)?, num(b)?))
}

/// `p/q`, an integer, or a plain decimal such as `0.001`.
fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::invalid("cli", format!("'{s}' is not a rational number"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    Ok(BigRational::new(numer, BigInt::from(10).pow(frac.len() as u32)))
}

fn read_graph(spec: &str, global: &Global) -> Result<Graph> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return catalog::by_name(name)
            .map(|e| e.graph())
            .map_err(|e| Error::InvalidGraph(e.to_string()));
    }
    let format = match global.input_format {
        InputFormat::Auto => None,
        InputFormat::Graph6 => Some(Format::Graph6),
        InputFormat::Adj => Some(Format::Adjacency),
    };
    load_graph(Path::new(spec), format)
}

fn graph_name(spec: &str) -> String {
    match spec.strip_prefix("catalog:") {
        Some(name) => name.to_string(),
        None => Path::new(spec)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| spec.to_string()),
    }
}

/// What a subcommand prints: a human table and a JSON document, or raw text.
enum Output {
    Report { table: String, json: Value },
    Raw(String),
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn rat(r: &BigRational) -> String {
    format_rational(r)
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn run(cli: Cli) -> Result<Output> {
    let global = &cli.global;
    match cli.command {
        Command::MooreBound { k, g, diameter, table: grid } => moore_bound_cmd(k, g, diameter, grid),
        Command::Analyze {
            graph,
            c,
            samples,
            no_lemmas,
            timings,
        } => {
            let g = read_graph(&graph, global)?;
            let opts = AnalyzeOptions {
                name: graph_name(&graph),
                exact_cap: global.exact_cap,
                samples,
                seed: global.seed,
                tol: global.tol,
                c,
                lemmas: !no_lemmas,
                timings,
            };
            let r = analyze(&g, &opts)?;
            let mut rows = vec![
                ("graph", r.graph.name.clone()),
                ("order / edges", format!("{} / {}", r.graph.n, r.graph.m)),
                ("degree", r.graph.k.to_string()),
                ("girth", r.graph.girth.to_string()),
                ("Moore bound", r.moore_bound.to_string()),
                ("excess", r.excess.to_string()),
                (
                    "Cheeger h",
                    format!("{} ({})", rat(&r.cheeger.h), method_label(r.cheeger.is_exact())),
                ),
                ("witness", format!("{:?}", r.cheeger.argmin_set)),
                ("lambda", format!("{:.10}", r.spectrum.lambda)),
                (
                    "Ramanujan",
                    format!("{} (margin {:.10})", r.spectrum.ramanujan.is_ramanujan, r.spectrum.ramanujan.margin),
                ),
                ("Cheeger inequality", r.spectrum.cheeger_inequality.passed().to_string()),
            ];
            if let Some(tb) = &r.theorem_bound {
                rows.push(("lower bound", format!("{} (c = {})", rat(&tb.bound.bound_value), tb.c)));
                rows.push(("certificate", format!("{:?}", tb.verdict).to_lowercase()));
            }
            if let Some(l) = &r.lemmas {
                rows.push(("lemmas", if l.passed { "pass" } else { "FAIL" }.to_string()));
            }
            Ok(Output::Report {
                table: table(&rows),
                json: to_value(&r),
            })
        }
        Command::Cheeger { graph, samples, sampled } => {
            let g = read_graph(&graph, global)?;
            let r = if sampled {
                cheeger_upper_sample(&g, samples, global.seed)?
            } else {
                cheeger_exact(&g, global.exact_cap)?
            };
            let rows = [
                ("h", rat(&r.h)),
                ("method", method_label(r.is_exact()).to_string()),
                ("witness", format!("{:?}", r.argmin_set)),
                ("boundary", r.boundary.to_string()),
            ];
            let mut json = to_value(&r);
            json["seed"] = json!(global.seed);
            Ok(Output::Report {
                table: table(&rows),
                json,
            })
        }
        Command::Spectral { graph, samples } => {
            let g = read_graph(&graph, global)?;
            let spec = spectrum(&g, global.tol)?;
            let ram = is_ramanujan(&spec)?;
            let h = cheeger_auto(&g, global.exact_cap, samples, global.seed)?;
            let ineq = cheeger_inequality_check(&g, &spec, &h.h)?;
            let mults: Vec<String> = spec
                .multiplicities()
                .iter()
                .map(|(v, m)| format!("{v:.6}^{m}"))
                .collect();
            let rows = [
                ("spectrum", mults.join(" ")),
                ("lambda", format!("{:.10}", ram.lambda)),
                ("Ramanujan", format!("{} (margin {:.10})", ram.is_ramanujan, ram.margin)),
                ("h", format!("{} ({})", rat(&h.h), method_label(h.is_exact()))),
                (
                    "Cheeger inequality",
                    format!(
                        "{:.6} <= {:.6} <= {:.6}: {}",
                        ineq.absolute.lower,
                        ineq.h,
                        ineq.absolute.upper,
                        ineq.passed()
                    ),
                ),
            ];
            let json = json!({
                "spectrum": to_value(&spec),
                "multiplicities": spec.multiplicities().iter().map(|(v, m)| json!({"value": v, "multiplicity": m})).collect::<Vec<_>>(),
                "ramanujan": to_value(&ram),
                "cheeger": to_value(&h),
                "cheeger_inequality": to_value(&ineq),
                "seed": global.seed,
            });
            Ok(Output::Report {
                table: table(&rows),
                json,
            })
        }
        Command::VerifyLemmas {
            graph,
            exhaustive,
            samples,
        } => {
            let g = read_graph(&graph, global)?;
            let mode = match (exhaustive, samples) {
                (true, _) => VerifyMode::Exhaustive { cap: global.exact_cap },
                (false, Some(samples)) => VerifyMode::Sampled {
                    samples,
                    seed: global.seed,
                },
                (false, None) if g.order() <= global.exact_cap => VerifyMode::Exhaustive { cap: global.exact_cap },
                (false, None) => VerifyMode::Sampled {
                    samples: 10_000,
                    seed: global.seed,
                },
            };
            let r = verify_lemmas(&g, mode)?;
            let mut rows: Vec<(&str, String)> = r
                .counting
                .iter()
                .map(|c| {
                    (
                        "tree counting",
                        format!(
                            "depth {}: expected {}, mismatches {}",
                            c.depth,
                            c.expected,
                            c.mismatches.len()
                        ),
                    )
                })
                .collect();
            for c in &r.coverage {
                rows.push((
                    "coverage",
                    format!(
                        "depth {}: {} sets, {} below threshold",
                        c.depth, c.sets_checked, c.threshold_failures
                    ),
                ));
            }
            rows.push((
                "boundary bound",
                format!(
                    "{} sets, {} violations",
                    r.sigma.sets_checked, r.sigma.violation_count
                ),
            ));
            rows.push(("result", if r.passed() { "pass" } else { "FAIL" }.to_string()));
            let mut json = to_value(&r);
            json["passed"] = json!(r.passed());
            Ok(Output::Report {
                table: table(&rows),
                json,
            })
        }
        Command::Bound {
            k,
            s,
            c,
            parity,
            epsilon,
        } => {
            let parities = match parity {
                Some(ParityArg::Odd) => vec![Parity::Odd],
                Some(ParityArg::Even) => vec![Parity::Even],
                None => vec![Parity::Odd, Parity::Even],
            };
            let mut rows = Vec::new();
            let mut bounds = Vec::new();
            for p in parities {
                let b = theorem_bound(p, k, s, c)?;
                let label = match p {
                    Parity::Odd => "odd girth",
                    Parity::Even => "even girth",
                };
                rows.push((
                    label,
                    format!(
                        "g = {}: bound {} ~ {:.10}, limit {}",
                        p.girth(s),
                        rat(&b.bound_value),
                        f(&b.bound_value),
                        rat(&b.limit_value)
                    ),
                ));
                bounds.push(b);
            }
            let mut json = json!({ "k": k, "s": s, "c": c, "bounds": to_value(&bounds) });
            if let Some(e) = epsilon {
                let eps = parse_rational(&e)?;
                let t = epsilon_thresholds(k, c, &eps)?;
                rows.push(("epsilon", rat(&eps)));
                rows.push(("threshold s", format!("odd {}, even {}", t.odd, t.even)));
                json["epsilon"] = json!(rat(&eps));
                json["thresholds"] = to_value(&t);
            }
            let bracket = lambda_bracket(k)?;
            rows.push((
                "lambda bracket",
                format!("[{}, {}]", rat(&bracket.lower), rat(&bracket.upper)),
            ));
            json["lambda_bracket"] = to_value(&bracket);
            Ok(Output::Report {
                table: table(&rows),
                json,
            })
        }
        Command::Catalog { list: _, emit, format } => match emit {
            Some(name) => {
                let entry = catalog::by_name(&name)?;
                Ok(Output::Raw(write_graph(&entry.graph(), format.into())))
            }
            None => {
                let entries = catalog::catalog()?;
                let mut t = format!("{:<18} {:>2} {:>3} {:>5} {:>5} {:>6}\n", "name", "k", "g", "n", "M", "excess");
                for e in &entries {
                    let _ = writeln!(
                        t,
                        "{:<18} {:>2} {:>3} {:>5} {:>5} {:>6}",
                        e.name, e.k, e.girth, e.order, e.moore_bound, e.excess
                    );
                }
                Ok(Output::Report {
                    table: t,
                    json: to_value(&entries),
                })
            }
        },
        Command::Double {
            graph,
            edge,
            iterations,
            output,
            format,
        } => {
            let g = read_graph(&graph, global)?;
            let steps = match edge {
                Some(e) if iterations == 1 => vec![double_step(&g, e)?],
                Some(_) => {
                    return Err(Error::invalid("cli", "--edge only applies to a single iteration"));
                }
                None => iterate_doubling(&g, iterations)?,
            };
            let mut rows = Vec::new();
            let mut json_steps = Vec::new();
            for s in &steps {
                rows.push((
                    "step",
                    format!(
                        "n = {}, swapped {:?}, girth {}, degree {}, cut {}, h <= {}",
                        s.order,
                        s.swapped_edge,
                        s.girth,
                        s.graph.is_regular().map_or("irregular".into(), |k| k.to_string()),
                        s.witness_boundary,
                        rat(&s.upper_bound)
                    ),
                ));
                let mut v = to_value(s);
                v["k"] = json!(s.graph.is_regular());
                json_steps.push(v);
            }
            if let Some(path) = output {
                let last = &steps.last().expect("at least one step").graph;
                std::fs::write(&path, write_graph(last, format.into()))?;
            }
            Ok(Output::Report {
                table: table(&rows),
                json: json!({ "input_order": g.order(), "steps": json_steps }),
            })
        }
    }
}

fn f(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn method_label(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "sampled upper bound"
    }
}

fn moore_bound_cmd(k: Option<u64>, g: Option<u64>, diameter: Option<u64>, grid: Option<Vec<u64>>) -> Result<Output> {
    if let Some(grid) = grid {
        let (kmax, gmax) = (grid[0], grid[1]);
        let mut csv = String::from("k,g,moore_bound\n");
        let mut rows = Vec::new();
        for k in 3..=kmax {
            for g in 3..=gmax {
                let m = moore_cage_bound(k, g)?;
                let _ = writeln!(csv, "{k},{g},{m}");
                rows.push(json!({"k": k, "g": g, "moore_bound": m.to_string()}));
            }
        }
        return Ok(Output::Report {
            table: csv,
            json: Value::Array(rows),
        });
    }
    let k = k.ok_or_else(|| Error::invalid("cli", "degree K is required"))?;
    if let Some(d) = diameter {
        let m = moore_dd_bound(k, d)?;
        return Ok(Output::Report {
            table: table(&[("M(delta, D)", m.to_string())]),
            json: json!({"delta": k, "diameter": d, "moore_bound": m.to_string()}),
        });
    }
    let g = g.ok_or_else(|| Error::invalid("cli", "girth G or --diameter is required"))?;
    let m = moore_cage_bound(k, g)?;
    Ok(Output::Report {
        table: table(&[
            ("M(k, g)", m.to_string()),
            ("summation form", moore_summation(k, g).to_string()),
            ("closed form", moore_closed_form(k, g).to_string()),
        ]),
        json: json!({"k": k, "g": g, "moore_bound": m.to_string()}),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_only = cli.global.json_only;
    let text = match run(cli) {
        Ok(Output::Raw(text)) => text,
        Ok(Output::Report { table, json }) => {
            let json = serde_json::to_string_pretty(&json).expect("serializable");
            if json_only {
                format!("{json}\n")
            } else {
                format!("{table}\n{json}\n")
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    // A closed pipe downstream is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::SUCCESS
}
