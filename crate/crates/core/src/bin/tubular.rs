use std::fmt::Display;
use std::io::{ErrorKind, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tubular::analyze::{
    cat0_report, equitable_report, fbc_report, gpq_compact_report, parallelism_report, vspecial_report, walls_report,
};
use tubular::corpus::{builtin, corpus};
use tubular::cubulate::wall_graph;
use tubular::fbc::amalgam_fbc_sufficient;
use tubular::special::cocompact_cubulation_decide;
use tubular::vrc::vrc_report;
use tubular::{analyze, parse, AnalyzeOptions, DecisionReport, Input, IntVec2, TubularPresentation, Verdict};

#[derive(Parser)]
#[command(name = "tubular", version, about = "Decision procedures for tubular groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Presentation file, `-` for stdin, or `builtin:NAME`.
    input: String,
    /// Print reports as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct CubeArgs {
    #[arg(long, default_value_t = 3)]
    coord_bound: i64,
    #[arg(long, default_value_t = 3)]
    size_bound: usize,
    /// Also try every arc matching, up to this many wall graphs.
    #[arg(long, value_name = "BUDGET", num_args = 0..=1, default_missing_value = "10000")]
    all_matchings: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every decider.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        cube: CubeArgs,
    },
    /// Decide whether the group is CAT(0).
    Cat0(InputArgs),
    /// Decide whether the group is free-by-cyclic.
    Fbc(InputArgs),
    /// Virtual specialness and cocompact cubulation.
    Special(InputArgs),
    /// Equitable-set search and wall dilation.
    Cubulate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        cube: CubeArgs,
        /// Print the wall graph in DOT format instead of reports.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        /// Print the wall graph as an edge list after the reports.
        #[arg(long)]
        edge_list: bool,
    },
    /// Virtual-retract obstruction (gpq inputs only).
    Vrc(InputArgs),
    /// List the built-in examples and check their known verdicts.
    Corpus {
        #[arg(long)]
        json: bool,
    },
    /// Amalgamate two presentations over `a = b` and decide free-by-cyclicity.
    Amalgam {
        first: String,
        first_vertex: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        second: String,
        second_vertex: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        json: bool,
    },
}

fn load(source: &str) -> Result<Input, String> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin(name).map_err(|e| e.to_string());
    }
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))?
    };
    parse(&text).map_err(|e| format!("{source}:{e}"))
}

fn named(input: &Input) -> TubularPresentation {
    let mut g = input.to_tubular();
    g.name = input.name();
    g
}

fn parse_vector(s: &str) -> Result<IntVec2, String> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    match parts[..] {
        [x, y] => match (x.parse::<i64>(), y.parse::<i64>()) {
            (Ok(x), Ok(y)) => Ok(IntVec2::new(x, y)),
            _ => Err(format!("invalid vector `{s}`")),
        },
        _ => Err(format!("invalid vector `{s}`, expected X,Y")),
    }
}

/// Writes to stdout, exiting quietly if the reader has gone away.
fn out(text: impl Display) {
    if let Err(e) = write!(std::io::stdout().lock(), "{text}") {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: stdout: {e}");
        std::process::exit(1);
    }
}

fn emit(reports: &[DecisionReport], json: bool) {
    if json {
        out(format_args!("{}\n", serde_json::to_string_pretty(reports).expect("reports serialize")));
        return;
    }
    let mut group = None;
    for r in reports {
        if group != Some(&r.group) {
            out(format_args!("== {}\n", r.group));
            group = Some(&r.group);
        }
        out(format_args!("{r}\n"));
    }
}

fn cube_options(c: &CubeArgs) -> AnalyzeOptions {
    AnalyzeOptions { coord_bound: c.coord_bound, size_bound: c.size_bound, all_matchings: c.all_matchings }
}

fn run(cli: Cli) -> Result<(), String> {
    let err = |e: tubular::Error| e.to_string();
    match cli.command {
        Command::Analyze { input, cube } => {
            let i = load(&input.input)?;
            emit(&analyze(&i, &cube_options(&cube)).map_err(err)?, input.json);
        }
        Command::Cat0(a) => {
            let i = load(&a.input)?;
            emit(&[cat0_report(&named(&i)).map_err(err)?], a.json);
        }
        Command::Fbc(a) => {
            let i = load(&a.input)?;
            emit(&[fbc_report(&named(&i)).map_err(err)?.0], a.json);
        }
        Command::Special(a) => {
            let i = load(&a.input)?;
            let g = named(&i);
            let (_, fbc) = fbc_report(&g).map_err(err)?;
            let cat0 = cat0_report(&g).map_err(err)?;
            let mut out = vec![vspecial_report(&i, &g, &fbc).map_err(err)?, parallelism_report(&g)];
            out.push(cocompact_cubulation_decide(&g, cat0.verdict == Verdict::Yes));
            if let Input::Gpq(p) = &i {
                out.push(gpq_compact_report(p, &g).map_err(err)?);
            }
            emit(&out, a.json);
        }
        Command::Cubulate { input, cube, dot, edge_list } => {
            let i = load(&input.input)?;
            let g = named(&i);
            let opts = cube_options(&cube);
            let (eq, set) = equitable_report(&g, &opts).map_err(err)?;
            let graph = set.as_ref().map(|s| wall_graph(&g, s)).transpose().map_err(err)?;
            if dot {
                match graph {
                    Some(w) => out(w.to_dot()),
                    None => return Err("no equitable set found; nothing to draw".into()),
                }
                return Ok(());
            }
            let walls = walls_report(&g, set.as_ref(), &opts).map_err(err)?;
            emit(&[eq, walls], input.json);
            if let (true, Some(w)) = (edge_list, graph) {
                out(w.to_edge_list());
            }
        }
        Command::Vrc(a) => {
            let Input::Gpq(p) = load(&a.input)? else {
                return Err("vrc needs a gpq input".into());
            };
            emit(&[vrc_report(&p)], a.json);
        }
        Command::Corpus { json } => {
            let mut all = Vec::new();
            let mut mismatches = 0;
            for entry in corpus() {
                let reports = analyze(&entry.input, &AnalyzeOptions::default()).map_err(err)?;
                if !json {
                    out(format_args!("{}\n", entry.name));
                }
                for (prop, expected) in &entry.expected {
                    let got = reports.iter().find(|r| r.property == *prop).map(|r| r.verdict);
                    let ok = got == Some(*expected);
                    mismatches += usize::from(!ok);
                    if !json {
                        let got = got.map_or("missing".to_string(), |v| v.to_string());
                        out(format_args!("  {prop:<24} expected {expected:<8} got {got:<8} {}\n", if ok { "ok" } else { "MISMATCH" }));
                    }
                }
                all.extend(reports);
            }
            if json {
                emit(&all, true);
            }
            if mismatches > 0 {
                return Err(format!("{mismatches} corpus expectations failed"));
            }
        }
        Command::Amalgam { first, first_vertex, a, second, second_vertex, b, json } => {
            let (g1, g2) = (named(&load(&first)?), named(&load(&second)?));
            let va = g1.vertex_by_name(&first_vertex).ok_or(format!("unknown vertex `{first_vertex}` in {first}"))?;
            let vb = g2.vertex_by_name(&second_vertex).ok_or(format!("unknown vertex `{second_vertex}` in {second}"))?;
            let (a, b) = (parse_vector(&a)?, parse_vector(&b)?);
            emit(&amalgam_fbc_sufficient(&g1, (va, &a), &g2, (vb, &b)).map_err(err)?, json);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
