//! `atk33`: decompose K3,3-minor-free graphs, build bounded out-degree
//! Alon-Tarsi certificates, and check them independently.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use atk33::certify::{apply_mutation, mutations, verify, Certificate, Verdict, VerificationReport, VerifyOptions};
use atk33::construct::{construct, Level};
use atk33::decompose::{decompose, Decomposition, Family};
use atk33::graph::{named, parse_arc_list, parse_edge_list, parse_graph6, write_graph6, Graph};
use atk33::oracle::{at_number, coeff_diff_capped, eulerian_diff_capped, DEFAULT_DIFF_CAP};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXIT_REJECT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "atk33", version, about = "Alon-Tarsi certificates for K3,3-minor-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file; `-` reads standard input.
    #[arg(long, default_value = "-")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "graph6")]
    format: Format,
    /// Which graph6 line to use (1-based).
    #[arg(long, default_value_t = 1)]
    line: usize,
}

#[derive(Args)]
struct DiffCap {
    /// Largest arc count for exhaustive Eulerian subdigraph enumeration.
    #[arg(long, env = "ATK33_DIFF_CAP", default_value_t = DEFAULT_DIFF_CAP)]
    diff_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Split a graph into planar, K5 and K3,3 pieces along small clique-sums.
    Decompose {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value = "k33")]
        family: Family,
    },
    /// Build a certificate at level 5, 4 or 3.
    Construct {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value = "5", value_parser = parse_level)]
        level: Level,
        #[arg(long, default_value = "k33")]
        family: Family,
        /// Pinned edge `u,v`.
        #[arg(long, value_parser = parse_edge)]
        edge: Option<(usize, usize)>,
        /// Output path; standard output when absent.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check a certificate without trusting its producer.
    Verify {
        /// Certificate path; `-` reads standard input.
        #[arg(long, default_value = "-")]
        cert: PathBuf,
        #[command(flatten)]
        cap: DiffCap,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Brute-force Alon-Tarsi number of a small graph.
    AtNumber {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Eulerian subdigraph counts and graph-polynomial coefficient of a
    /// digraph given as an arc list (`n m` then `tail head` lines).
    OracleDiff {
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[command(flatten)]
        cap: DiffCap,
    },
    /// Build and verify built-in examples, then check that random single-field
    /// corruptions are never accepted.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        mutations: usize,
    },
}

fn parse_level(s: &str) -> std::result::Result<Level, String> {
    let v: u8 = s.parse().map_err(|_| format!("{s:?} is not a level"))?;
    Level::try_from(v)
}

fn parse_edge(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected u,v")?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

fn read_text(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_graph(input: &GraphInput) -> Result<Graph> {
    let text = read_text(&input.input)?;
    match input.format {
        Format::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .nth(input.line.checked_sub(1).ok_or_else(|| anyhow!("--line is 1-based"))?)
                .ok_or_else(|| anyhow!("no graph on line {}", input.line))?;
            Ok(parse_graph6(line)?)
        }
        Format::Edgelist => Ok(parse_edge_list(&text)?),
    }
}

fn print_report(report: &VerificationReport, json: bool) -> Result<()> {
    let mut out = io::stdout().lock();
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(report)?)?;
    } else {
        for c in &report.checks {
            writeln!(out, "{:<15} {:?}: {}", c.name, c.outcome, c.detail)?;
        }
        writeln!(out, "verdict: {}", report.verdict)?;
    }
    if let Some(d) = &report.failure_detail {
        eprintln!("{d}");
    }
    Ok(())
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Accept => 0,
        Verdict::Reject => EXIT_REJECT,
        Verdict::Inconclusive => EXIT_LIMIT,
    }
}

fn selftest(seed: u64, count: usize) -> Result<u8> {
    let cases = [
        ("K5", named::complete(5), Family::K33),
        ("two K5 on an edge", named::two_k5_sharing_edge(), Family::K33),
        ("K3,3", named::complete_bipartite(3, 3), Family::K33e),
        ("octahedron", named::octahedron(), Family::K33),
        ("cube", named::cube(), Family::K33),
        ("W5", named::wheel(5), Family::K33),
    ];
    let opts = VerifyOptions::default();
    let mut certs = Vec::new();
    for (name, g, family) in &cases {
        for level in [Level::Five, Level::Four, Level::Three] {
            let c = construct(g, level, None, *family)?;
            let back = Certificate::from_json(&c.to_json())?;
            let report = verify(&back, &opts);
            println!("{name} level {level}: {}", report.verdict);
            if !report.accepted() {
                return Ok(EXIT_REJECT);
            }
            certs.push(c);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut caught = 0;
    for _ in 0..count {
        let c = certs.choose(&mut rng).expect("non-empty");
        let Some(&m) = mutations(c).choose(&mut rng) else {
            continue;
        };
        let report = verify(&apply_mutation(c, m), &opts);
        if report.accepted() {
            eprintln!("mutation {m:?} of {} was accepted", c.graph);
            return Ok(EXIT_REJECT);
        }
        caught += 1;
    }
    println!("{caught} single-field mutations, none accepted (seed {seed})");
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Decompose { input, family } => {
            let g = read_graph(&input)?;
            match decompose(&g, family) {
                Decomposition::Tree(t) => {
                    println!("{}", serde_json::to_string_pretty(&t.to_json()?)?);
                    Ok(0)
                }
                Decomposition::Rejected(w) => {
                    let doc = serde_json::json!({
                        "rejected": family.to_string(),
                        "witness": { "graph": write_graph6(&w.graph)?, "vertex_map": w.vertex_map },
                    });
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                    eprintln!("graph is outside the {family} family");
                    Ok(EXIT_REJECT)
                }
            }
        }
        Command::Construct {
            input,
            level,
            family,
            edge,
            cert,
        } => {
            let g = read_graph(&input)?;
            let c = construct(&g, level, edge, family)?;
            let text = c.to_json() + "\n";
            match cert {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => io::stdout().write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Command::Verify { cert, cap, json } => {
            let c = Certificate::from_json(&read_text(&cert)?)?;
            let report = verify(&c, &VerifyOptions { diff_cap: cap.diff_cap });
            print_report(&report, json)?;
            Ok(verdict_code(report.verdict))
        }
        Command::AtNumber { input } => {
            let g = read_graph(&input)?;
            println!("{}", at_number(&g)?);
            Ok(0)
        }
        Command::OracleDiff { input, cap } => {
            let d = parse_arc_list(&read_text(&input)?)?;
            let r = eulerian_diff_capped(&d, cap.diff_cap)?;
            let coeff = coeff_diff_capped(&d, cap.diff_cap)?;
            println!("even {}\nodd {}\ndiff {}\ncoefficient {coeff}", r.even_count, r.odd_count, r.diff);
            Ok(0)
        }
        Command::Selftest { seed, mutations } => selftest(seed, mutations),
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    use atk33::Error as E;
    match e.downcast_ref::<E>() {
        Some(E::ResourceLimit { .. } | E::UnsupportedSize { .. }) => EXIT_LIMIT,
        Some(E::NotInFamily { .. } | E::Inconsistency(_)) => EXIT_REJECT,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
