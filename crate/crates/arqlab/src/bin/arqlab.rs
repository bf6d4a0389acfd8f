//! Command line front end: construct algebras in the text format, analyze
//! their module categories, and export DOT or certificate JSON.
//!
//! Exit codes: 0 = success / short-cycle-free; 2 = parameter or parse
//! error; 3 = a short cycle exists (short-cycles and theorem-check); 4 =
//! search budget exceeded; 5 = internal inconsistency (always a bug).

use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use arqlab::algebra::Algebra;
use arqlab::analysis::{self, SliceMode, Verdict};
use arqlab::artheory::{knit, ARQuiver, Budgets};
use arqlab::export::{ar_quiver_dot, certificate_json, node_name, witness_text};
use arqlab::field::FieldSpec;
use arqlab::module::Module;
use arqlab::textfmt;
use arqlab::zoo;
use arqlab::{Error, Result};

#[derive(Parser)]
#[command(
    name = "arqlab",
    version,
    about = "Bound quiver algebras, Auslander-Reiten quivers, and short-cycle certificates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Coefficient field for `make`: q, or gf:p for a prime p.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Node budget for knitting the Auslander-Reiten quiver.
    #[arg(long, global = true, default_value_t = 512)]
    budget_nodes: usize,
    /// Dimension budget for knitted modules.
    #[arg(long, global = true, default_value_t = 64)]
    budget_dim: usize,
    /// Output format: text, json or dot. Defaults to text, except for
    /// theorem-check whose report defaults to the certificate JSON.
    #[arg(long, global = true)]
    format: Option<String>,
    /// List every short-cycle witness pair instead of the first one.
    #[arg(long, global = true)]
    all_witnesses: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct an algebra and print it in the text format.
    ///
    /// Families: nakayama M ELL; linear N; trivext FILE R;
    /// brauer star EDGES MULT; brauer line EDGES POS MULT;
    /// reflect FILE V...; opext FILE V.
    Make {
        family: String,
        args: Vec<String>,
    },
    /// One line per indecomposable module.
    Indec { input: String },
    /// The Auslander-Reiten quiver as text or DOT.
    ArQuiver { input: String },
    /// Search the module category for short cycles (exit 3 when one exists).
    ShortCycles { input: String },
    /// Enumerate stable slices and their properties.
    Slices { input: String },
    /// Certified short-cycle verdict (exit 3 when a cycle exists).
    TheoremCheck { input: String },
    /// Export the AR quiver (dot) or the theorem certificate (json).
    Export { what: String, input: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded(_) => 4,
        Error::InternalInconsistency(_)
        | Error::CheckFailed(_)
        | Error::DecompositionStalled(_)
        | Error::IsoSearchInconclusive(_)
        | Error::UndefinedTranslate(_)
        | Error::SocleNotUnique(_) => 5,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<u8> {
    if cli.budget_nodes == 0 || cli.budget_dim == 0 {
        return Err(Error::InvalidParameter("budgets must be positive".into()));
    }
    let budgets = Budgets {
        max_nodes: cli.budget_nodes,
        max_dim: cli.budget_dim,
    };
    let default_format = match cli.cmd {
        Cmd::TheoremCheck { .. } => "json",
        _ => "text",
    };
    let format = cli.format.as_deref().unwrap_or(default_format);
    let mut out = String::new();
    let mut code = 0u8;
    match &cli.cmd {
        Cmd::Make { family, args } => {
            let field = FieldSpec::parse(&cli.field)?;
            let alg = cmd_make(family, args, field)?;
            guard_field(&alg)?;
            out.push_str(&textfmt::render(&alg)?);
        }
        Cmd::Indec { input } => {
            let a = load(input)?;
            let ar = knit(&a, &budgets)?;
            match format {
                "text" => {
                    for i in 0..ar.nodes.len() {
                        out.push_str(&node_line(&ar, i));
                        out.push('\n');
                    }
                }
                "json" => {
                    let nodes: Vec<serde_json::Value> = (0..ar.nodes.len())
                        .map(|i| {
                            serde_json::json!({
                                "name": node_name(&ar, i),
                                "dims": ar.nodes[i].module.dims,
                                "projective": ar.nodes[i].projective,
                                "injective": ar.nodes[i].injective,
                            })
                        })
                        .collect();
                    out.push_str(&pretty(&serde_json::Value::Array(nodes)));
                }
                other => return Err(bad_format("indec", other, "text or json")),
            }
        }
        Cmd::ArQuiver { input } => {
            let a = load(input)?;
            let ar = knit(&a, &budgets)?;
            match format {
                "text" => {
                    for i in 0..ar.nodes.len() {
                        out.push_str(&node_line(&ar, i));
                        out.push('\n');
                    }
                    for arr in &ar.arrows {
                        if arr.mult > 1 {
                            out.push_str(&format!(
                                "arrow {} -> {} x{}\n",
                                node_name(&ar, arr.src),
                                node_name(&ar, arr.tgt),
                                arr.mult
                            ));
                        } else {
                            out.push_str(&format!(
                                "arrow {} -> {}\n",
                                node_name(&ar, arr.src),
                                node_name(&ar, arr.tgt)
                            ));
                        }
                    }
                    for (x, t) in ar.tau.iter().enumerate() {
                        if let Some(t) = t {
                            out.push_str(&format!(
                                "tau {} = {}\n",
                                node_name(&ar, x),
                                node_name(&ar, *t)
                            ));
                        }
                    }
                }
                "dot" => out.push_str(&ar_quiver_dot(&ar)),
                other => return Err(bad_format("ar-quiver", other, "text or dot")),
            }
        }
        Cmd::ShortCycles { input } => {
            let a = load(input)?;
            let cert = analysis::short_cycles(&a, &budgets, cli.all_witnesses)?;
            let ar = knit(&a, &budgets)?;
            match format {
                "text" => {
                    out.push_str(&format!("verdict: {}\n", verdict_text(cert.verdict)));
                    for w in &cert.witnesses {
                        out.push_str(&format!("witness: {}\n", witness_text(&ar, w)));
                    }
                }
                "json" => out.push_str(&pretty(&certificate_json(&cert, Some(&ar)))),
                other => return Err(bad_format("short-cycles", other, "text or json")),
            }
            if cert.verdict == Verdict::HasShortCycle {
                code = 3;
            }
        }
        Cmd::Slices { input } => {
            let a = load(input)?;
            let ar = knit(&a, &budgets)?;
            let slices = analysis::stable_slices(&ar, SliceMode::All)?;
            match format {
                "text" => {
                    for s in &slices {
                        let props = analysis::slice_props(&ar, s)?;
                        let names: Vec<String> =
                            s.nodes.iter().map(|&x| node_name(&ar, x)).collect();
                        out.push_str(&format!(
                            "slice {} semiregular={} double-rigid={}\n",
                            names.join(" "),
                            props.semiregular,
                            props.double_rigid
                        ));
                    }
                }
                "json" => {
                    let mut items = Vec::new();
                    for s in &slices {
                        let props = analysis::slice_props(&ar, s)?;
                        let names: Vec<String> =
                            s.nodes.iter().map(|&x| node_name(&ar, x)).collect();
                        items.push(serde_json::json!({
                            "nodes": names,
                            "semiregular": props.semiregular,
                            "double_rigid": props.double_rigid,
                        }));
                    }
                    out.push_str(&pretty(&serde_json::Value::Array(items)));
                }
                other => return Err(bad_format("slices", other, "text or json")),
            }
        }
        Cmd::TheoremCheck { input } => {
            let a = load(input)?;
            let cert = analysis::theorem_check(&a, &budgets)?;
            let ar = knit(&a, &budgets)?;
            match format {
                "text" => {
                    out.push_str(&format!("verdict: {}\n", verdict_text(cert.verdict)));
                    for w in &cert.witnesses {
                        out.push_str(&format!("witness: {}\n", witness_text(&ar, w)));
                    }
                    for (name, ok) in &cert.checks {
                        out.push_str(&format!("check {}: {name}\n", ok_text(*ok)));
                    }
                    if let Some(rec) = &cert.pipeline {
                        let names: Vec<String> =
                            rec.slice.iter().map(|&x| node_name(&ar, x)).collect();
                        out.push_str(&format!("slice: {}\n", names.join(" ")));
                        out.push_str(&format!("ideal dimension: {}\n", rec.ideal_dim));
                        let verts: Vec<String> = rec
                            .residual_idempotents
                            .iter()
                            .map(|&v| (v + 1).to_string())
                            .collect();
                        out.push_str(&format!("residual idempotents: {}\n", verts.join(" ")));
                        out.push_str(&format!("hereditary type: {}\n", rec.hereditary_type));
                        for (name, ok) in &rec.checks {
                            out.push_str(&format!("check {}: {name}\n", ok_text(*ok)));
                        }
                    }
                }
                "json" => out.push_str(&pretty(&certificate_json(&cert, Some(&ar)))),
                other => return Err(bad_format("theorem-check", other, "text or json")),
            }
            if cert.verdict == Verdict::HasShortCycle {
                code = 3;
            }
        }
        Cmd::Export { what, input } => {
            let a = load(input)?;
            match what.as_str() {
                "dot" => {
                    let ar = knit(&a, &budgets)?;
                    out.push_str(&ar_quiver_dot(&ar));
                }
                "json" => {
                    let cert = analysis::theorem_check(&a, &budgets)?;
                    let ar = knit(&a, &budgets)?;
                    out.push_str(&pretty(&certificate_json(&cert, Some(&ar))));
                }
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown export target {other:?}, expected dot or json"
                    )))
                }
            }
        }
    }
    print!("{out}");
    Ok(code)
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::ShortCycleFree => "short-cycle-free",
        Verdict::HasShortCycle => "has-short-cycle",
    }
}

fn ok_text(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn node_line(ar: &ARQuiver, i: usize) -> String {
    let node = &ar.nodes[i];
    let dims = node
        .module
        .dims
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut line = format!("{} [{dims}]", node_name(ar, i));
    if node.projective {
        line.push_str(" projective");
    }
    if node.injective {
        line.push_str(" injective");
    }
    line
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON rendering cannot fail");
    s.push('\n');
    s
}

fn bad_format(task: &str, got: &str, expected: &str) -> Error {
    Error::InvalidParameter(format!(
        "{task} does not support --format {got}, expected {expected}"
    ))
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

/// Prime fields are only usable when p exceeds the dimension, so that
/// trace-form computations (radical, endomorphism rings) stay valid.
fn guard_field(a: &Algebra) -> Result<()> {
    if let FieldSpec::Prime(p) = a.field {
        if p as usize <= a.dim {
            return Err(Error::CharacteristicTooSmall(format!(
                "field GF({p}) needs p > dim = {}",
                a.dim
            )));
        }
    }
    Ok(())
}

fn load(path: &str) -> Result<Arc<Algebra>> {
    let a = textfmt::parse(&read_input(path)?)?;
    guard_field(&a)?;
    Ok(Arc::new(a))
}

fn need(args: &[String], n: usize, usage: &str) -> Result<()> {
    if args.len() != n {
        return Err(Error::InvalidParameter(format!(
            "expected {usage}, got {} arguments",
            args.len()
        )));
    }
    Ok(())
}

fn num(s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidParameter(format!("{what}: expected a number, got {s:?}")))
}

fn vertex(s: &str, what: &str) -> Result<usize> {
    let v = num(s, what)?;
    if v == 0 {
        return Err(Error::InvalidParameter(format!(
            "{what}: vertices are numbered from 1"
        )));
    }
    Ok(v - 1)
}

fn cmd_make(family: &str, args: &[String], field: FieldSpec) -> Result<Algebra> {
    match family {
        "nakayama" => {
            need(args, 2, "make nakayama M ELL")?;
            zoo::nakayama_selfinjective(num(&args[0], "M")?, num(&args[1], "ELL")?, field)
        }
        "linear" => {
            need(args, 1, "make linear N")?;
            zoo::hereditary_nakayama(num(&args[0], "N")?, field)
        }
        "trivext" => {
            need(args, 2, "make trivext FILE R")?;
            let b = load(&args[0])?;
            zoo::trivial_extension_r(&b, num(&args[1], "R")?, None)
        }
        "brauer" => match args.first().map(String::as_str) {
            Some("star") => {
                need(&args[1..], 2, "make brauer star EDGES MULT")?;
                let tree = zoo::BrauerTree::star(num(&args[1], "EDGES")?, num(&args[2], "MULT")?);
                zoo::brauer_tree_algebra(&tree, field)
            }
            Some("line") => {
                need(&args[1..], 3, "make brauer line EDGES POS MULT")?;
                let tree = zoo::BrauerTree::line(
                    num(&args[1], "EDGES")?,
                    num(&args[2], "POS")?,
                    num(&args[3], "MULT")?,
                );
                zoo::brauer_tree_algebra(&tree, field)
            }
            _ => Err(Error::InvalidParameter(
                "expected: make brauer {star|line} ...".into(),
            )),
        },
        "reflect" => {
            if args.len() < 2 {
                return Err(Error::InvalidParameter(
                    "expected: make reflect FILE V...".into(),
                ));
            }
            let b = load(&args[0])?;
            let seq: Vec<usize> = args[1..]
                .iter()
                .map(|s| vertex(s, "V"))
                .collect::<Result<_>>()?;
            let reflected = zoo::reflect_sequence(&b, &seq)?;
            Arc::try_unwrap(reflected).map_err(|_| {
                Error::InternalInconsistency("the reflected algebra is still shared".into())
            })
        }
        "opext" => {
            need(args, 2, "make opext FILE V")?;
            let b = load(&args[0])?;
            let v = vertex(&args[1], "V")?;
            if v >= b.n_vertices {
                return Err(Error::InvalidParameter(format!(
                    "vertex {} out of range 1..{}",
                    v + 1,
                    b.n_vertices
                )));
            }
            zoo::one_point_extension(&b, &Module::injective(&b, v))
        }
        other => Err(Error::InvalidParameter(format!(
            "unknown family {other:?}, expected nakayama, linear, trivext, brauer, reflect or opext"
        ))),
    }
}
