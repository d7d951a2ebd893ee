//! Command-line front end: compute, construct, verify, export.
//!
//! Human-readable results go to standard output (JSON with `--emit json`);
//! diagnostics and timing go to standard error. Exit codes: 0 success, 1
//! usage or input errors, 2 verification failure.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fk_turan::admissible::{AdmissibleTriple, Overlay};
use fk_turan::construct::{
    build_extremal, build_hn, edge_extremal, erdos_gallai_bound, ex_count, g_value, mixed_ex_count,
    zhu_chen_formula, ConstructionReport, FormulaParams,
};
use fk_turan::families::enumerate_family;
use fk_turan::graph::Graph;
use fk_turan::graph6;
use fk_turan::search::{cstar_search, CStarResult, Certificate, SearchOptions};
use fk_turan::verify::{is_fk_free, max_disjoint_fk, verify_certificate, Verdict};
use fk_turan::{Error, Result};

/// Exact computations around triangle maxima in graphs without disjoint
/// friendship subgraphs.
#[derive(Parser)]
#[command(name = "fk-turan", version, about)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Output selector shared by most subcommands.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    /// Plain text for people.
    Text,
    /// Machine-readable JSON.
    Json,
    /// graph6 lines, where the result is a graph or a list of graphs.
    Graph6,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the bounded-degree bounded-matching edge maximum f(nu, delta).
    Fval {
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        delta: usize,
        /// Recompute by exhaustive enumeration as well (small parameters only).
        #[arg(long)]
        brute_force: bool,
    },
    /// Enumerate the internal-graph family for a given k.
    Pk {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
        /// Write graph6 lines to this path (manifest goes to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact search for the optimum over all admissible triples.
    Cstar {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: i64,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
        /// Write the certificate JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Disable symmetry pruning (audit mode; slower, same results).
        #[arg(long)]
        no_symmetry_pruning: bool,
    },
    /// Build the friendship-free construction (or the clique join over it).
    Construct {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: i64,
        #[arg(long)]
        n: usize,
        /// Read the triple from a certificate instead of searching.
        #[arg(long = "in", value_name = "CERT")]
        input: Option<PathBuf>,
        /// Join a clique of size t on top (the extremal candidate).
        #[arg(long)]
        extremal: bool,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Evaluate a closed-form expression.
    Formula {
        #[command(subcommand)]
        which: FormulaCommand,
    },
    /// Verify graphs or certificates.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Exhaustive small-n maximum of t*edges + triangles over free graphs.
    Explore {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: i64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
}

#[derive(Subcommand)]
enum FormulaCommand {
    /// Triangle maximum for graphs without t+1 disjoint copies.
    Ex(FormulaArgs),
    /// Weighted maximum t*edges + triangles for free graphs.
    G(FormulaArgs),
    /// Triangle maximum for graphs without a single copy.
    ZhuChen {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: i64,
    },
    /// Edge bound under a matching-number constraint.
    ErdosGallai {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: i64,
    },
    /// Edge maximum for graphs without a single copy.
    EdgeExtremal {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: i64,
    },
    /// Mixed disjoint union of friendship graphs of different sizes.
    Mixed {
        #[arg(long)]
        t: i64,
        #[arg(long)]
        n: i64,
        /// Comma-separated nonincreasing sizes, t+1 of them.
        #[arg(long, value_delimiter = ',')]
        ell: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        cstar: Option<i64>,
        /// Certificate supplying the constant (must match the smallest size).
        #[arg(long = "in", value_name = "CERT")]
        input: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FormulaArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: i64,
    #[arg(long)]
    n: i64,
    /// The constant, given directly...
    #[arg(long, allow_hyphen_values = true)]
    cstar: Option<i64>,
    /// ...or replayed from a certificate file.
    #[arg(long = "in", value_name = "CERT")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check friendship-freeness of graphs (graph6, one per line).
    Free {
        #[arg(long)]
        k: usize,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Replay a search certificate from scratch.
    Certificate {
        #[arg(long = "in", value_name = "CERT")]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Exact maximum number of disjoint friendship copies.
    Pack {
        #[arg(long)]
        k: usize,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
}

/// Runs the parsed command; the returned code is the process exit status.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Fval { nu, delta, brute_force } => {
            let value = fk_turan::families::chvatal_hanson(nu, delta)?;
            println!("{value}");
            if brute_force {
                let (bf, witness) = fk_turan::families::chvatal_hanson_bruteforce(nu, delta)?;
                eprintln!("brute force: {bf} (witness {})", witness.to_graph6());
                if bf != value {
                    eprintln!("MISMATCH between closed form and brute force");
                    return Ok(2);
                }
            }
            Ok(0)
        }
        Command::Pk { k, emit, out } => {
            let family = enumerate_family(k)?;
            let manifest = family.manifest();
            let lines: Vec<String> = family.members.iter().map(|m| m.graph.to_graph6()).collect();
            if let Some(path) = out {
                write_file(&path, &(lines.join("\n") + "\n"))?;
            }
            match emit {
                Emit::Json => println!("{}", serde_json::to_string_pretty(&manifest)?),
                Emit::Graph6 => {
                    for line in &lines {
                        println!("{line}");
                    }
                }
                Emit::Text => {
                    println!(
                        "family k={k}: {} member(s), {} edges each, exhaustive={}",
                        manifest.count, manifest.f_value, manifest.exhaustive
                    );
                    for m in &manifest.members {
                        println!("  {} (n={}, nu={}, max_deg={})", m.graph6, m.n, m.nu, m.max_deg);
                    }
                }
            }
            Ok(0)
        }
        Command::Cstar {
            k,
            t,
            emit,
            out,
            threads,
            no_symmetry_pruning,
        } => {
            let family = enumerate_family(k)?;
            if !family.exhaustive {
                eprintln!(
                    "family for k={k} is not exhaustive; the result is a lower bound only"
                );
            }
            let options = SearchOptions {
                symmetry_pruning: !no_symmetry_pruning,
                threads: threads.max(1),
            };
            let result = cstar_search(k, t, &family, &options)?;
            eprintln!(
                "search: {} nodes, {} prunes, {} ms",
                result.stats.nodes, result.stats.prunes, result.stats.wall_ms
            );
            let cert = result.certificate();
            if let Some(path) = out {
                write_file(&path, &(cert.to_json() + "\n"))?;
            }
            match emit {
                Emit::Json => println!("{}", cert.to_json()),
                _ => print_cstar_text(&result),
            }
            Ok(0)
        }
        Command::Construct {
            k,
            t,
            n,
            input,
            extremal,
            emit,
        } => {
            let triple = triple_from(input.as_deref(), k, t)?;
            if extremal {
                let g = build_extremal(&triple, t, n)?;
                match emit {
                    Emit::Graph6 | Emit::Text => println!("{}", g.to_graph6()),
                    Emit::Json => println!("{}", graph6::to_adjacency_json(&g)),
                }
                eprintln!(
                    "extremal candidate: n={n}, e={}, triangles={}",
                    g.edge_count(),
                    g.triangle_count()
                );
            } else {
                let rep = build_hn(&triple, n)?;
                match emit {
                    Emit::Graph6 => println!("{}", rep.graph.to_graph6()),
                    Emit::Json => println!("{}", construction_json(&rep)?),
                    Emit::Text => {
                        println!("{}", rep.graph.to_graph6());
                        println!(
                            "e = {} (closed form {}), triangles = {} (closed form {})",
                            rep.e_direct, rep.e_closed, rep.tri_direct, rep.tri_closed
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Formula { which } => run_formula(which),
        Command::Verify { what } => run_verify(what),
        Command::Explore { k, t, n, emit } => {
            let (value, maximizers) = fk_turan::verify::explore_small_g(k, t, n)?;
            match emit {
                Emit::Json => {
                    let doc = serde_json::json!({
                        "k": k, "t": t, "n": n, "value": value, "maximizers": maximizers,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
                _ => {
                    println!("{value}");
                    for m in &maximizers {
                        println!("  {m}");
                    }
                    eprintln!(
                        "exhaustive over isomorphism classes on {n} vertices; the closed form \
                         is asymptotic, so small-n disagreement with it is expected"
                    );
                }
            }
            Ok(0)
        }
    }
}

fn print_cstar_text(result: &CStarResult) {
    println!("c*({}, t={}) = {}", result.k, result.t, result.value);
    println!(
        "exhaustive: {}; optimizers: {}",
        result.exhaustive,
        result.optimizers.len()
    );
    for tr in &result.optimizers {
        println!(
            "  P={} Q={} R={:?}",
            tr.p().to_graph6(),
            tr.q().to_graph6(),
            tr.overlay().edges()
        );
    }
}

fn construction_json(rep: &ConstructionReport) -> Result<String> {
    let doc = serde_json::json!({
        "graph6": rep.graph.to_graph6(),
        "n": rep.graph.n(),
        "e_direct": rep.e_direct,
        "e_closed": rep.e_closed,
        "tri_direct": rep.tri_direct,
        "tri_closed": rep.tri_closed,
        "x": rep.x, "y": rep.y, "a": rep.a, "b": rep.b,
    });
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Loads the first optimizer of a certificate, or runs the search.
fn triple_from(path: Option<&std::path::Path>, k: usize, t: i64) -> Result<AdmissibleTriple> {
    match path {
        Some(p) => {
            let cert = Certificate::from_json(&read_file(p)?)?;
            if cert.k != k {
                return Err(Error::InvalidArgument(format!(
                    "certificate is for k={}, requested k={k}",
                    cert.k
                )));
            }
            let opt = cert
                .optimizers
                .first()
                .ok_or_else(|| Error::InvalidArgument("certificate lists no optimizers".into()))?;
            let p_graph = Graph::from_graph6(&opt.p)?;
            let q_graph = Graph::from_graph6(&opt.q)?;
            let overlay = Overlay::new(p_graph.n(), q_graph.n(), &opt.r)?;
            AdmissibleTriple::new(p_graph, q_graph, overlay, k)
        }
        None => {
            let family = enumerate_family(k)?;
            let result = cstar_search(k, t, &family, &SearchOptions::default())?;
            Ok(result.optimizers.into_iter().next().expect("search reports an optimizer"))
        }
    }
}

fn run_formula(which: FormulaCommand) -> Result<i32> {
    let (value, warning) = match which {
        FormulaCommand::Ex(args) => {
            let cstar = resolve_cstar(args.cstar, args.input.as_deref(), args.k, args.t)?;
            let eval = ex_count(&FormulaParams {
                k: args.k,
                t: args.t,
                n: args.n,
                ell: None,
                cstar: Some(cstar),
            })?;
            (eval.value, eval.range_warning)
        }
        FormulaCommand::G(args) => {
            let cstar = resolve_cstar(args.cstar, args.input.as_deref(), args.k, args.t)?;
            let eval = g_value(&FormulaParams {
                k: args.k,
                t: args.t,
                n: args.n,
                ell: None,
                cstar: Some(cstar),
            })?;
            (eval.value, eval.range_warning)
        }
        FormulaCommand::ZhuChen { k, n } => {
            let eval = zhu_chen_formula(k, n)?;
            (eval.value, eval.range_warning)
        }
        FormulaCommand::ErdosGallai { k, n } => (erdos_gallai_bound(k, n)?, false),
        FormulaCommand::EdgeExtremal { k, n } => {
            let eval = edge_extremal(k, n)?;
            (eval.value, eval.range_warning)
        }
        FormulaCommand::Mixed { t, n, ell, cstar, input } => {
            let k_min = *ell
                .last()
                .ok_or_else(|| Error::InvalidArgument("empty ell list".into()))?;
            if k_min < 3 {
                return Err(Error::InvalidArgument("ell values must be at least 3".into()));
            }
            let cstar = resolve_cstar(cstar, input.as_deref(), k_min as usize, t)?;
            let eval = mixed_ex_count(&FormulaParams {
                k: k_min as usize,
                t,
                n,
                ell: Some(ell),
                cstar: Some(cstar),
            })?;
            (eval.value, eval.range_warning)
        }
    };
    println!("{value}");
    if warning {
        eprintln!("note: n is below the asymptotic range of this statement");
    }
    Ok(0)
}

/// A constant from the flag, the certificate, or a fresh search (in that
/// order of preference).
fn resolve_cstar(flag: Option<i64>, cert: Option<&std::path::Path>, k: usize, t: i64) -> Result<i64> {
    if let Some(v) = flag {
        return Ok(v);
    }
    if let Some(p) = cert {
        let cert = Certificate::from_json(&read_file(p)?)?;
        if cert.k != k || cert.t != t {
            return Err(Error::InvalidArgument(format!(
                "certificate is for (k={}, t={}), requested (k={k}, t={t})",
                cert.k, cert.t
            )));
        }
        return Ok(cert.value);
    }
    let family = enumerate_family(k)?;
    if !family.exhaustive {
        return Err(Error::FeasibilityCap(format!(
            "no exhaustive family for k={k}; pass --cstar or a certificate"
        )));
    }
    Ok(cstar_search(k, t, &family, &SearchOptions::default())?.value)
}

fn run_verify(what: VerifyCommand) -> Result<i32> {
    match what {
        VerifyCommand::Free { k, input, emit } => {
            let text = read_file(&input)?;
            let mut all_free = true;
            let mut rows = Vec::new();
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let g = Graph::from_graph6(line)?;
                let cert = is_fk_free(&g, k);
                all_free &= cert.is_free();
                match &cert.verdict {
                    Verdict::Free => rows.push(serde_json::json!({
                        "line": i + 1, "check": "freeness", "pass": true,
                        "details": format!("no center with {k} disjoint neighborhood edges"),
                    })),
                    Verdict::WitnessCenter(c) => rows.push(serde_json::json!({
                        "line": i + 1, "check": "freeness", "pass": false,
                        "details": format!("center {} with spokes {:?}", c.center, c.spokes),
                    })),
                }
            }
            match emit {
                Emit::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
                _ => {
                    for row in &rows {
                        let pass = row["pass"].as_bool().unwrap();
                        println!(
                            "line {}: {} ({})",
                            row["line"],
                            if pass { "free" } else { "not free" },
                            row["details"].as_str().unwrap()
                        );
                    }
                }
            }
            Ok(if all_free { 0 } else { 2 })
        }
        VerifyCommand::Certificate { input, n, emit } => {
            let cert = Certificate::from_json(&read_file(&input)?)?;
            let report = verify_certificate(&cert, n);
            match emit {
                Emit::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                _ => {
                    for c in &report.checks {
                        println!("{} {}: {}", if c.pass { "pass" } else { "FAIL" }, c.check, c.details);
                    }
                    println!("overall: {}", if report.pass { "pass" } else { "FAIL" });
                }
            }
            Ok(if report.pass { 0 } else { 2 })
        }
        VerifyCommand::Pack { k, input, budget, emit } => {
            let text = read_file(&input)?;
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| Error::InvalidArgument("input file has no graph".into()))?;
            let g = Graph::from_graph6(line)?;
            let res = max_disjoint_fk(&g, k, budget);
            match emit {
                Emit::Json => {
                    let doc = serde_json::json!({
                        "count": res.count, "exact": res.exact,
                        "copies": res.witness.copies,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
                _ => println!(
                    "{} disjoint copies ({})",
                    res.count,
                    if res.exact { "exact" } else { "lower bound: budget exhausted" }
                ),
            }
            Ok(0)
        }
    }
}

fn read_file(path: &std::path::Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn write_file(path: &std::path::Path, content: &str) -> Result<()> {
    let mut f = fs::File::create(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    f.write_all(content.as_bytes())
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}
