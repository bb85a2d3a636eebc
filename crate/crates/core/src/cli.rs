//! Command-line front end. Every subcommand prints one JSON report on
//! standard output; the exit code is 0 when the report passes, 1 when a
//! check fails and 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::autgrp::{
    automorphisms, distinguishing_number, is_distinguishing, is_distinguishing_by_search, motion,
    orbits, DistinguishingNumber, PermGroup, VertexColouring, DEFAULT_ORDER_CAP,
    DEFAULT_SEARCH_CAP,
};
use crate::colouring::ColouringSpec;
use crate::exactq::Rational;
use crate::halfgraph::{
    arc_witness, check_structure, lift_maps_truncation, refute_graph_colouring, truncation,
    ArcKind, FiniteGraph, GraphFile, Vertex,
};

#[derive(Parser, Debug)]
#[command(
    name = "distq",
    version,
    about = "Distinguishing colourings of the rational half-graph"
)]
struct Cli {
    /// Print a wall-clock timestamp to standard error (never into the report)
    #[arg(long, global = true)]
    stamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Half-graph truncations
    #[command(subcommand)]
    Halfgraph(HalfgraphCmd),
    /// Automorphism groups
    #[command(subcommand)]
    Aut(AutCmd),
    /// Motion of a graph's automorphism group
    Motion {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: usize,
    },
    /// Distinguishing number by exhaustive search
    Distnum {
        graph: PathBuf,
        #[arg(long)]
        max_colours: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        search_cap: u64,
    },
    /// Check whether a vertex colouring is distinguishing
    VerifyColouring {
        graph: PathBuf,
        /// Comma-separated colour per vertex
        #[arg(long, value_delimiter = ',', required = true)]
        colours: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: usize,
    },
    /// Structural lemmas on a truncation
    #[command(subcommand)]
    Check(CheckCmd),
    /// Lift mapping the base arc (0+, 1-) onto a target arc
    ArcWitness {
        /// q,r,kind with kind one of plus-to-minus or minus-to-plus
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[command(flatten)]
        support: OptionalSupport,
    },
    /// Synthesize a colour-preserving automorphism of the half-graph
    Refute {
        #[arg(long)]
        cplus: PathBuf,
        #[arg(long)]
        cminus: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Also write the full witness transcript here
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum HalfgraphCmd {
    /// Generate the truncation on a finite support
    Gen {
        #[command(flatten)]
        support: SupportArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum AutCmd {
    /// Enumerate the full automorphism group
    Enumerate {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Bipartiteness, order/neighbourhood, minus-intersection and group checks
    Lemmas {
        #[command(flatten)]
        support: SupportArgs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SupportArgs {
    /// Comma-separated rationals such as 0,1/2,1
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    support: Option<Vec<String>>,
    /// A B N: N evenly spaced rationals from A to B inclusive
    #[arg(long, num_args = 3, value_names = ["A", "B", "N"], allow_hyphen_values = true)]
    support_grid: Option<Vec<String>>,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct OptionalSupport {
    /// Support of a truncation on which to check the lift
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    support: Option<Vec<String>>,
    #[arg(long, num_args = 3, value_names = ["A", "B", "N"], allow_hyphen_values = true)]
    support_grid: Option<Vec<String>>,
}

#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Value,
    results: Value,
    pass: bool,
}

fn parse_support(
    list: Option<&[String]>,
    grid: Option<&[String]>,
) -> Result<Option<Vec<Rational>>, UsageError> {
    if let Some(list) = list {
        let support = list
            .iter()
            .map(|t| t.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Some(support));
    }
    if let Some(grid) = grid {
        let a: Rational = grid[0].parse()?;
        let b: Rational = grid[1].parse()?;
        let n: usize = grid[2].parse()?;
        return Ok(Some(support_grid(&a, &b, n)?));
    }
    Ok(None)
}

/// `n` evenly spaced rationals from `a` to `b` inclusive.
pub fn support_grid(a: &Rational, b: &Rational, n: usize) -> Result<Vec<Rational>, String> {
    match n {
        0 => Err("grid needs at least one point".into()),
        1 => Ok(vec![a.clone()]),
        _ => {
            let step = (b - a) / Rational::from((n - 1) as i64);
            Ok((0..n)
                .map(|i| a + &step * Rational::from(i as i64))
                .collect())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, UsageError> {
    let text =
        fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<FiniteGraph, UsageError> {
    let file: GraphFile = read_json(path)?;
    FiniteGraph::try_from(file).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn group_checks(g: &FiniteGraph, group: &PermGroup) -> Value {
    let identity_first = group.elements().first().is_some_and(|p| p.is_identity());
    let inverses = group
        .elements()
        .iter()
        .all(|p| group.contains(&p.inverse()));
    let generators_close = group
        .generators()
        .iter()
        .all(|a| group.elements().iter().all(|b| group.contains(&b.then(a))));
    let automorphisms = group.elements().iter().all(|p| g.is_automorphism(p));
    json!({
        "identity_first": identity_first,
        "inverse_closed": inverses,
        "closed_under_generators": generators_close,
        "all_automorphisms": automorphisms,
    })
}

fn all_true(v: &Value) -> bool {
    v.as_object()
        .is_some_and(|m| m.values().all(|x| x.as_bool() == Some(true)))
}

fn parse_arc(spec: &str) -> Result<(Rational, Rational, ArcKind), UsageError> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [q, r, kind] = parts.as_slice() else {
        return Err(UsageError(format!("expected q,r,kind, got {spec:?}")));
    };
    let kind = match *kind {
        "plus-to-minus" => ArcKind::PlusToMinus,
        "minus-to-plus" => ArcKind::MinusToPlus,
        other => return Err(UsageError(format!("unknown arc kind {other:?}"))),
    };
    Ok((q.parse()?, r.parse()?, kind))
}

fn execute(command: Command) -> Result<RunReport, UsageError> {
    let report = match command {
        Command::Halfgraph(HalfgraphCmd::Gen { support, output }) => {
            let s = parse_support(support.support.as_deref(), support.support_grid.as_deref())?
                .expect("clap requires a support");
            let g = truncation(&s)?;
            let expected = s.len() * (s.len() - 1) / 2;
            let file = g.to_file();
            if let Some(path) = &output {
                fs::write(path, serde_json::to_string_pretty(&file)? + "\n")?;
            }
            RunReport {
                command: "halfgraph gen".into(),
                inputs: json!({ "support": s, "output": output }),
                results: json!({
                    "vertices": g.n(),
                    "edges": g.edge_count(),
                    "expected_edges": expected,
                    "graph": if output.is_none() { serde_json::to_value(&file)? } else { Value::Null },
                }),
                pass: g.edge_count() == expected,
            }
        }
        Command::Aut(AutCmd::Enumerate { graph, order_cap }) => {
            let g = read_graph(&graph)?;
            let group = automorphisms(&g, order_cap)?;
            let checks = group_checks(&g, &group);
            RunReport {
                command: "aut enumerate".into(),
                inputs: json!({ "graph": graph, "order_cap": order_cap }),
                pass: all_true(&checks),
                results: json!({
                    "n": g.n(),
                    "order": group.order(),
                    "elements": group.elements(),
                    "generators": group.generators(),
                    "orbits": orbits(&group),
                    "checks": checks,
                }),
            }
        }
        Command::Motion { graph, order_cap } => {
            let g = read_graph(&graph)?;
            let group = automorphisms(&g, order_cap)?;
            let m = motion(&group);
            let witness = group
                .elements()
                .iter()
                .filter(|p| !p.is_identity())
                .find(|p| Some(p.motion()) == m);
            RunReport {
                command: "motion".into(),
                inputs: json!({ "graph": graph, "order_cap": order_cap }),
                pass: m.is_none() == (group.order() == 1),
                results: json!({ "order": group.order(), "motion": m, "witness": witness }),
            }
        }
        Command::Distnum {
            graph,
            max_colours,
            order_cap,
            search_cap,
        } => {
            let g = read_graph(&graph)?;
            let group = automorphisms(&g, order_cap)?;
            let result = distinguishing_number(&group, max_colours, search_cap)?;
            let verified = match &result {
                DistinguishingNumber::Exactly { colouring, .. } => {
                    is_distinguishing(&group, colouring)?
                        && is_distinguishing_by_search(&g, colouring)?
                }
                DistinguishingNumber::Exceeded { .. } => false,
            };
            RunReport {
                command: "distnum".into(),
                inputs: json!({ "graph": graph, "max_colours": max_colours, "search_cap": search_cap }),
                pass: verified,
                results: json!({
                    "order": group.order(),
                    "distinguishing_number": result.value(),
                    "result": result,
                    "colouring_verified": verified,
                }),
            }
        }
        Command::VerifyColouring {
            graph,
            colours,
            order_cap,
        } => {
            let g = read_graph(&graph)?;
            let group = automorphisms(&g, order_cap)?;
            let c = VertexColouring(colours);
            let by_group = is_distinguishing(&group, &c)?;
            let by_search = is_distinguishing_by_search(&g, &c)?;
            let preserving = group
                .elements()
                .iter()
                .find(|p| !p.is_identity() && c.preserved_by(p));
            RunReport {
                command: "verify-colouring".into(),
                inputs: json!({ "graph": graph, "colours": c }),
                pass: by_group && by_search,
                results: json!({
                    "distinguishing": by_group,
                    "distinguishing_by_search": by_search,
                    "agree": by_group == by_search,
                    "preserving_automorphism": preserving,
                }),
            }
        }
        Command::Check(CheckCmd::Lemmas { support }) => {
            let s = parse_support(support.support.as_deref(), support.support_grid.as_deref())?
                .expect("clap requires a support");
            let report = check_structure(&s)?;
            RunReport {
                command: "check lemmas".into(),
                inputs: json!({ "support": s }),
                pass: report.passes(),
                results: serde_json::to_value(&report)?,
            }
        }
        Command::ArcWitness { to, support } => {
            let (q, r, kind) = parse_arc(&to)?;
            let mut w = arc_witness(&q, &r, kind)?;
            let base = [
                Vertex::plus(Rational::zero()),
                Vertex::minus(Rational::one()),
            ];
            let images = base
                .iter()
                .map(|v| w.apply(v))
                .collect::<Result<Vec<_>, _>>()?;
            let target = match kind {
                ArcKind::PlusToMinus => [Vertex::plus(q.clone()), Vertex::minus(r.clone())],
                ArcKind::MinusToPlus => [Vertex::minus(q.clone()), Vertex::plus(r.clone())],
            };
            let onto = images.as_slice() == target.as_slice();
            let s = parse_support(support.support.as_deref(), support.support_grid.as_deref())?;
            let lift = match &s {
                Some(s) => Some(lift_maps_truncation(&mut w, s)?),
                None => None,
            };
            RunReport {
                command: "arc-witness".into(),
                inputs: json!({ "q": q, "r": r, "kind": kind, "support": s }),
                pass: onto && lift != Some(false),
                results: json!({
                    "flavour": w.flavour,
                    "gamma": w.order_map(),
                    "base_arc": base,
                    "base_arc_images": images,
                    "maps_onto_target": onto,
                    "lift_edge_bijective": lift,
                }),
            }
        }
        Command::Refute {
            cplus,
            cminus,
            budget,
            samples,
            transcript,
        } => {
            let plus: ColouringSpec = read_json(&cplus)?;
            let minus: ColouringSpec = read_json(&cminus)?;
            let inputs = json!({
                "cplus": plus,
                "cminus": minus,
                "budget": budget,
                "samples": samples,
            });
            match refute_graph_colouring(&plus, &minus, budget, samples) {
                Ok(refutation) => {
                    let record = refutation.transcript();
                    if let (Some(path), Some(record)) = (&transcript, &record) {
                        fs::write(path, serde_json::to_string_pretty(record)? + "\n")?;
                    }
                    let seed = record.as_ref().map(|t| &t.seed);
                    RunReport {
                        command: "refute".into(),
                        inputs,
                        pass: refutation.passes(),
                        results: json!({
                            "flavour": refutation.witness.flavour,
                            "region": record.as_ref().map(|t| &t.region),
                            "seed": seed,
                            "anchors": record.as_ref().map(|t| &t.anchors),
                            "order_report": refutation.order_report,
                            "graph_report": refutation.graph_report,
                        }),
                    }
                }
                Err(e) => RunReport {
                    command: "refute".into(),
                    inputs,
                    pass: false,
                    results: json!({ "error": e.to_string() }),
                },
            }
        }
    };
    Ok(report)
}

/// Runs the CLI on `argv` (including the program name), writing the report
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run_with<O: Write, E: Write>(argv: &[String], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    if cli.stamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let _ = writeln!(err, "stamp: {secs}");
    }
    match execute(cli.command) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            let _ = writeln!(out, "{text}");
            if report.pass {
                0
            } else {
                1
            }
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
