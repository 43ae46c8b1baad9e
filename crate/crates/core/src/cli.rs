//! Command-line front end. All results go to stdout as JSON; errors go to
//! stderr as `{"error": ...}`. Exit codes: 0 success, 1 verification failure,
//! 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::exactla::{parse_rat, Rat, SymMat};
use crate::graphs::{parse_graph, Graph, GraphFormat, DEFAULT_GATE};
use crate::normalcone::is_vertex;
use crate::spectra::json::{matrix_to_json, point_from_json_str};
use crate::spectra::{build, rank_one_point, Candidate, FamilyKind, FamilySpec, Spectrahedron};
use crate::strictcompl::{maxcut_objective, relint_membership, RelintStatus};
use crate::vertices::{enumerate_vertices_gated, verify_suite, SuiteOptions, Split};

pub const GATE_ENV: &str = "SPECTRAVERT_GATE";

#[derive(Parser, Debug)]
#[command(name = "spectravert", version, about = "Vertices and normal cones of graph spectrahedra, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Family name (see `families`).
    #[arg(long)]
    family: String,
    /// Graph file: edge list, or DIMACS for `.col`/`.dimacs`.
    #[arg(long, conflicts_with = "n")]
    graph: Option<PathBuf>,
    /// Edgeless graph on labels 1..=n (vertex-set families).
    #[arg(long)]
    n: Option<usize>,
    /// Sign split for lifted-th-general and theta3.
    #[arg(long, value_parser = ["minus", "plus", "complement-plus"])]
    split: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the supported families.
    Families,
    /// Print the spectrahedron of a family as JSON.
    Build(FamilyArgs),
    /// Enumerate vertices and compare with the theorem's prediction.
    Vertices(FamilyArgs),
    /// Normal-cone report at one rank-one point of a family.
    CheckVertex {
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated vertex labels.
        #[arg(long, group = "point")]
        set: Option<String>,
        /// Sign string such as "+-+".
        #[arg(long, group = "point")]
        signs: Option<String>,
        /// Vertex label k, for e_k e_k^T.
        #[arg(long, group = "point")]
        index: Option<String>,
    },
    /// Both normal-cone dimension routes for a spectrahedron and a point.
    NconeDim {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Strict complementarity certificate for an objective.
    StrictCompl {
        #[command(flatten)]
        family: FamilyArgs,
        /// `maxcut`, or a point JSON file holding the objective matrix.
        #[arg(long, default_value = "maxcut")]
        objective: String,
        /// Comma-separated edge weights in edge order (maxcut only).
        #[arg(long)]
        weights: Option<String>,
        /// Point JSON; defaults to the best catalogued vertex that certifies.
        #[arg(long)]
        point: Option<PathBuf>,
    },
    /// Exhaustive vertex-theorem sweep.
    VerifySuite {
        #[arg(long)]
        nmax: usize,
        /// Comma-separated family names; default all.
        #[arg(long)]
        families: Option<String>,
        /// Worker threads; default the logical core count.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, default_value_t = SuiteOptions::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SuiteOptions::default().sample_count)]
        samples: usize,
        /// Skip the midpoint and Slater non-vertex checks.
        #[arg(long)]
        no_negatives: bool,
    },
}

enum Failure {
    Usage(String),
    Input(Error),
    Verify(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Loop { .. }
            | Error::InvalidSpec(_)
            | Error::RootClash(_)
            | Error::MalformedCandidate(_)
            | Error::Json(_)
            | Error::DuplicateLabel(_)
            | Error::GateExceeded { .. }
            | Error::NegativeWeight(_) => Failure::Input(e),
            other => Failure::Verify(other),
        }
    }
}

struct Outcome {
    value: serde_json::Value,
    ok: bool,
}

fn gate() -> Result<usize, Failure> {
    match std::env::var(GATE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{GATE_ENV} must be a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_GATE),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path, err: &mut dyn Write) -> Result<Graph, Failure> {
    let text = read(path)?;
    let format = match path.extension().and_then(|e| e.to_str()) {
        Some("col") | Some("dimacs") => GraphFormat::Dimacs,
        _ => GraphFormat::EdgeList,
    };
    let (g, warnings) = parse_graph(&text, format)?;
    for w in warnings {
        let _ = writeln!(err, "{}", serde_json::json!({ "warning": w.msg, "line": w.line }));
    }
    Ok(g)
}

fn input_graph(a: &FamilyArgs, err: &mut dyn Write) -> Result<Graph, Failure> {
    match (&a.graph, a.n) {
        (Some(p), _) => load_graph(p, err),
        (None, Some(n)) => Ok(Graph::empty_n(n)),
        (None, None) => Err(Failure::Usage("one of --graph or --n is required".into())),
    }
}

fn family_spec(a: &FamilyArgs, err: &mut dyn Write) -> Result<FamilySpec, Failure> {
    let graph = input_graph(a, err)?;
    spec_on(a, &graph)
}

fn spec_on(a: &FamilyArgs, graph: &Graph) -> Result<FamilySpec, Failure> {
    let kind: FamilyKind = a.family.parse()?;
    if kind.takes_split() {
        let split = match &a.split {
            Some(s) => Split::parse(s)?,
            None if kind == FamilyKind::Theta3 => Split::Minus,
            None => return Err(Failure::Usage(format!("{kind} needs --split"))),
        };
        Ok(split.spec(kind, graph)?)
    } else {
        if a.split.is_some() {
            return Err(Failure::Usage(format!("{kind} takes no --split")));
        }
        Ok(FamilySpec::on_graph(kind, graph)?)
    }
}

fn label_index(spec: &FamilySpec, label: &str) -> Result<usize, Failure> {
    spec.graph
        .index_of(label)
        .ok_or_else(|| Failure::Usage(format!("unknown vertex label {label:?}")))
}

fn families_json() -> serde_json::Value {
    serde_json::Value::Array(
        FamilyKind::ALL
            .iter()
            .map(|k| {
                serde_json::json!({
                    "name": k.name(),
                    "root_label": k.is_lifted(),
                    "uses_edges": k.uses_edges(),
                    "takes_split": k.takes_split(),
                })
            })
            .collect(),
    )
}

fn parse_weights(text: &str) -> Result<Vec<Rat>, Failure> {
    text.split(',')
        .map(|s| parse_rat(s.trim()).map_err(Failure::from))
        .collect()
}

fn strict_compl(
    spec: &FamilySpec,
    graph: &Graph,
    objective: &str,
    weights: Option<&str>,
    point: Option<&Path>,
    gate: usize,
) -> Result<Outcome, Failure> {
    let c = build(spec)?;
    let obj: SymMat = if objective == "maxcut" {
        if spec.kind != FamilyKind::Elliptope {
            return Err(Failure::Usage("--objective maxcut needs --family elliptope".into()));
        }
        let w = match weights {
            Some(t) => parse_weights(t)?,
            None => vec![Rat::from_integer(1.into()); graph.edges().len()],
        };
        maxcut_objective(graph, &w)?
    } else {
        point_from_json_str(&read(Path::new(objective))?)?
    };
    c.check_point_space(&obj)?;
    let points: Vec<SymMat> = match point {
        Some(p) => vec![point_from_json_str(&read(p)?)?],
        None => {
            let cat = enumerate_vertices_gated(spec, gate)?;
            let mut v: Vec<(Rat, SymMat)> = cat
                .vertices
                .into_iter()
                .map(|e| Ok((obj.frobenius(&e.matrix)?, e.matrix)))
                .collect::<Result<_, Error>>()?;
            // stable sort keeps catalog order among ties
            v.sort_by(|a, b| b.0.cmp(&a.0));
            v.into_iter().map(|(_, x)| x).collect()
        }
    };
    let mut tried = 0;
    let mut last = None;
    for x in &points {
        tried += 1;
        let verdict = relint_membership(&c, x, &obj)?;
        let certified = matches!(verdict.status, RelintStatus::CertifiedYes(_));
        let mut value = verdict.to_json();
        value["objective"] = serde_json::json!(matrix_to_json(&obj));
        value["points_tried"] = serde_json::json!(tried);
        if certified {
            return Ok(Outcome { value, ok: true });
        }
        last = Some(value);
    }
    let value = last.unwrap_or_else(|| serde_json::json!({ "status": "no_certificate_found", "points_tried": 0 }));
    Ok(Outcome { value, ok: false })
}

fn dispatch(cli: Cli, err: &mut dyn Write) -> Result<Outcome, Failure> {
    let gate = gate()?;
    match cli.command {
        Command::Families => Ok(Outcome {
            value: families_json(),
            ok: true,
        }),
        Command::Build(a) => {
            let spec = family_spec(&a, err)?;
            Ok(Outcome {
                value: build(&spec)?.to_json(),
                ok: true,
            })
        }
        Command::Vertices(a) => {
            let spec = family_spec(&a, err)?;
            let cat = enumerate_vertices_gated(&spec, gate)?;
            Ok(Outcome {
                ok: cat.matches,
                value: cat.to_json(),
            })
        }
        Command::CheckVertex {
            family,
            set,
            signs,
            index,
        } => {
            let spec = family_spec(&family, err)?;
            let cand = match (set, signs, index) {
                (Some(s), _, _) => {
                    let mut idx = s
                        .split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(|t| label_index(&spec, t))
                        .collect::<Result<Vec<_>, _>>()?;
                    idx.sort_unstable();
                    idx.dedup();
                    Candidate::Subset(idx)
                }
                (_, Some(s), _) => Candidate::Signs(
                    s.chars()
                        .map(|ch| match ch {
                            '+' => Ok(1),
                            '-' => Ok(-1),
                            other => Err(Failure::Usage(format!("bad sign {other:?}"))),
                        })
                        .collect::<Result<_, _>>()?,
                ),
                (_, _, Some(k)) => Candidate::Index(label_index(&spec, &k)?),
                _ => return Err(Failure::Usage("one of --set, --signs, --index is required".into())),
            };
            let c = build(&spec)?;
            let x = rank_one_point(&spec, &cand)?;
            let report = is_vertex(&c, &x)?;
            let mut value = serde_json::to_value(&report).expect("serializable");
            value["X"] = serde_json::json!(matrix_to_json(&x));
            Ok(Outcome { value, ok: true })
        }
        Command::NconeDim { spec, point } => {
            let c = Spectrahedron::from_json_str(&read(&spec)?)?;
            let x = point_from_json_str(&read(&point)?)?;
            let report = is_vertex(&c, &x)?;
            Ok(Outcome {
                value: serde_json::to_value(&report).expect("serializable"),
                ok: true,
            })
        }
        Command::StrictCompl {
            family,
            objective,
            weights,
            point,
        } => {
            let graph = input_graph(&family, err)?;
            let spec = spec_on(&family, &graph)?;
            strict_compl(&spec, &graph, &objective, weights.as_deref(), point.as_deref(), gate)
        }
        Command::VerifySuite {
            nmax,
            families,
            threads,
            seed,
            samples,
            no_negatives,
        } => {
            let fams: Vec<FamilyKind> = match families {
                Some(s) => s
                    .split(',')
                    .map(|t| t.trim().parse::<FamilyKind>())
                    .collect::<Result<_, _>>()?,
                None => FamilyKind::ALL.to_vec(),
            };
            if threads == Some(0) {
                return Err(Failure::Usage("--threads must be positive".into()));
            }
            let opts = SuiteOptions {
                threads,
                seed,
                sample_count: samples,
                gate,
                check_negatives: !no_negatives,
                ..SuiteOptions::default()
            };
            let report = verify_suite(nmax, &fams, &opts)?;
            Ok(Outcome {
                ok: report.summary.failures == 0,
                value: serde_json::json!({
                    "cells": report.summary.cells,
                    "failures": report.summary.failures,
                    "results": report.cells,
                }),
            })
        }
    }
}

/// Run the CLI on `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "{}", serde_json::json!({ "error": e.to_string().trim_end(), "kind": "usage" }));
            return 2;
        }
    };
    match dispatch(cli, err) {
        Ok(o) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&o.value).expect("serializable"));
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let (kind, msg, code) = match f {
                Failure::Usage(m) => ("usage", m, 2),
                Failure::Input(e) => ("input", e.to_string(), 2),
                Failure::Verify(e) => ("verification", e.to_string(), 1),
            };
            let _ = writeln!(err, "{}", serde_json::json!({ "error": msg, "kind": kind }));
            code
        }
    }
}
