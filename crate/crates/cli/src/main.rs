use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use linkpres::corpus::{goeritz_family, make_example31, make_goeritz, make_thistlethwaite, make_trivial};
use linkpres::io::{format_trace, parse, parse_trace, render_svg, serialize, SvgOptions};
use linkpres::pass::{build_adjacent_graph, classify_replacement, find_maximal_passes, find_virtual_maximal_passes, shortest_route};
use linkpres::reduce::{reduce, replay, ReduceConfig};
use linkpres::{canonical_code, code8, is_isomorphic, trace_faces, validate, LinkPresentation};

/// Like `println!`, but a closed pipe ends output quietly.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "linkpres", version, about = "Embedding presentations of links: check, compare, reduce, draw")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a presentation file.
    Validate { file: PathBuf },
    /// List the faces as cycles of edge ids.
    Faces { file: PathBuf },
    /// Decide whether two presentations are the same up to relabeling.
    Isomorphic { a: PathBuf, b: PathBuf },
    /// List maximal passes with their shortest reroute.
    Passes { file: PathBuf },
    /// Run the crossing-reduction search.
    Reduce {
        file: PathBuf,
        /// Equal replacements allowed (default: ten times n squared).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the move trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the final presentation here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a move trace, checking every step.
    Replay { file: PathBuf, trace: PathBuf },
    /// Write a fixture presentation to standard output.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        components: usize,
        /// Which of the two six-crossing knots for `example31`.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
    },
    /// Draw a presentation as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        no_labels: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Trivial,
    Example31,
    Thistlethwaite,
    Goeritz,
}

/// A failed command: the message and the exit status it maps to.
struct Failure(u8, String);

fn usage(msg: String) -> Failure {
    Failure(2, msg)
}

fn negative(msg: String) -> Failure {
    Failure(1, msg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("linkpres: {msg}");
            ExitCode::from(code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<LinkPresentation, Failure> {
    parse(&read(path)?).map_err(|e| negative(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { file } => {
            let p = load(&file)?;
            let report = validate(&p);
            if let Some(e) = report.violation {
                say!("invalid: {e}");
                return Err(negative(format!("{} is invalid", file.display())));
            }
            let faces = trace_faces(&p).len();
            say!(
                "valid: {} crossings, {} edges, {} faces, {} components",
                p.crossing_count(),
                p.edge_count(),
                faces,
                p.components().len()
            );
        }
        Command::Faces { file } => {
            let p = load(&file)?;
            for f in trace_faces(&p) {
                let ids: Vec<String> = f.edges(&p).iter().map(|e| e.to_string()).collect();
                say!("({})", ids.join(" "));
            }
        }
        Command::Isomorphic { a, b } => {
            let (p, q) = (load(&a)?, load(&b)?);
            if is_isomorphic(&p, &q) {
                say!("isomorphic");
            } else {
                say!("not isomorphic");
                return Err(negative("presentations differ".into()));
            }
        }
        Command::Passes { file } => {
            let p = load(&file)?;
            let passes = if p.is_classical() {
                find_maximal_passes(&p)
            } else {
                find_virtual_maximal_passes(&p)
            };
            for pass in passes {
                let k = pass.len();
                let route = build_adjacent_graph(&p, &pass).and_then(|g| shortest_route(&g));
                match route {
                    Ok(r) => say!(
                        "{}  k={} m={} {:?}",
                        pass.label(&p),
                        k,
                        r.len(),
                        classify_replacement(k, r.len())
                    ),
                    Err(e) => say!("{}  k={} ({e})", pass.label(&p), k),
                }
            }
        }
        Command::Reduce {
            file,
            budget,
            seed,
            trace,
            out,
        } => {
            let p = load(&file)?;
            let config = ReduceConfig {
                budget,
                seed,
                ..Default::default()
            };
            let report = reduce(&p, &config);
            let s = &report.stats;
            say!("outcome {}", report.outcome.as_str());
            say!("crossings {} -> {}", s.initial_crossings, report.presentation.crossing_count());
            say!(
                "moves {} (short {}, equal {}/{}, omega1 {}, omega2 {}, flips {})",
                report.trace.len(),
                s.short,
                s.equal,
                s.budget,
                s.omega1,
                s.omega2,
                s.flips
            );
            say!("code {}", code8(&canonical_code(&report.presentation)));
            say!("elapsed {:.3} ms", report.elapsed.as_secs_f64() * 1e3);
            if let Some(path) = trace {
                write(&path, &format_trace(&report.trace))?;
            }
            if let Some(path) = out {
                write(&path, &serialize(&report.presentation))?;
            }
        }
        Command::Replay { file, trace } => {
            let p = load(&file)?;
            let records = parse_trace(&read(&trace)?).map_err(|e| usage(format!("{}: {e}", trace.display())))?;
            let q = replay(&p, &records).map_err(|e| negative(e.to_string()))?;
            say!("replayed {} moves", records.len());
            say!("crossings {}", q.crossing_count());
            say!("code {}", code8(&canonical_code(&q)));
        }
        Command::Gen {
            family,
            k,
            l,
            components,
            which,
        } => {
            let p = match family {
                Family::Trivial => {
                    if components == 0 {
                        return Err(usage("--components must be at least 1".into()));
                    }
                    make_trivial(components)
                }
                Family::Example31 => {
                    let (l1, l2) = make_example31();
                    if which == 1 {
                        l1
                    } else {
                        l2
                    }
                }
                Family::Thistlethwaite => make_thistlethwaite(),
                Family::Goeritz if k == 0 && l == 0 => make_goeritz(0, 0),
                Family::Goeritz => goeritz_family(k, l),
            };
            say!("{}", serialize(&p).trim_end());
        }
        Command::Render { file, out, no_labels } => {
            let p = load(&file)?;
            let options = SvgOptions {
                labels: !no_labels,
                ..Default::default()
            };
            write(&out, &render_svg(&p, &options))?;
        }
    }
    Ok(())
}
