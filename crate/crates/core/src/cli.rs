//! Command-line front end. `run` takes its output streams explicitly so the
//! binary and the tests drive the same code.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::blocks::{block_tree, Node};
use crate::classrec::{classify, GraphClass};
use crate::engine::{qut_with, shadow_check, Options, ShadowVerdict};
use crate::error::Error;
use crate::gen::{free_trees, random_block_structure, BlockKind};
use crate::graph::{parse_graph, ColoredGraph, Format};
use crate::qexpr::{classical_shadow_order, contains_inhom, is_tree_class, render, Fmt};
use crate::wl::{render_csv, stable_coloring};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_ORBIT_GAP: i32 = 4;
pub const EXIT_SHADOW_MISMATCH: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "qblock", version, about = "Quantum automorphism groups of tree-like graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputFormat {
    Edgelist,
    Graph6,
}

#[derive(Debug, clap::Args)]
struct Input {
    /// Graph file: edge list, or graph6 when the name ends in `.g6`.
    file: PathBuf,
    /// Override the input format.
    #[arg(long, value_enum)]
    format: Option<InputFormat>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the quantum automorphism group.
    Qut {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "latex")]
        json: bool,
        #[arg(long)]
        latex: bool,
        /// Run on graphs outside the supported classes.
        #[arg(long)]
        force: bool,
        /// Compare the classical shadow with a brute-force automorphism count.
        #[arg(long)]
        check_aut: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write a JSON run report to stderr.
        #[arg(long)]
        report: bool,
    },
    /// Print the graph class.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Print the block tree.
    Blocktree {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dot: bool,
    },
    /// Print the stable 2-WL coloring.
    Wl {
        #[command(flatten)]
        input: Input,
    },
    /// Check the engine against brute-force automorphism counts.
    Selftest {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Random outerplanar and block graphs to sample in addition to trees.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Serialize)]
struct RunReport {
    input: String,
    vertices: usize,
    edges: usize,
    class: GraphClass,
    assumptions: Vec<String>,
    text: String,
    latex: String,
    expr: serde_json::Value,
    shadow_order: String,
    shadow_check: Option<ShadowVerdict>,
    elapsed_ms: f64,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::DuplicateEdge(..) | Error::SelfLoop(_) | Error::UnknownVertex(_) => EXIT_PARSE,
        Error::ClassRefused(_) | Error::UnsupportedBlock(_) | Error::Unsupported => EXIT_UNSUPPORTED,
        Error::OrbitGap { .. } => EXIT_ORBIT_GAP,
        _ => EXIT_FAILURE,
    }
}

fn load(input: &Input) -> Result<ColoredGraph, (i32, String)> {
    let text = std::fs::read_to_string(&input.file)
        .map_err(|e| (EXIT_FAILURE, format!("{}: {e}", input.file.display())))?;
    let format = match input.format {
        Some(InputFormat::Edgelist) => Format::EdgeList,
        Some(InputFormat::Graph6) => Format::Graph6,
        None if has_g6_extension(&input.file) => Format::Graph6,
        None => Format::EdgeList,
    };
    parse_graph(&text, format).map_err(|e| (EXIT_PARSE, format!("{}: {e}", input.file.display())))
}

fn has_g6_extension(p: &Path) -> bool {
    p.extension().is_some_and(|e| e.eq_ignore_ascii_case("g6"))
}

/// Parses `args` (including the program name), executes the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

type Outcome = Result<i32, (i32, String)>;

fn io_err(e: std::io::Error) -> (i32, String) {
    (EXIT_FAILURE, e.to_string())
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Qut {
            input,
            json,
            latex,
            force,
            check_aut,
            jobs,
            report,
        } => {
            let g = load(&input)?;
            let start = Instant::now();
            let res = qut_with(&g, Options { force, jobs: jobs.max(1) }).map_err(|e| (exit_code(&e), e.to_string()))?;
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let fmt = if json {
                Fmt::Json
            } else if latex {
                Fmt::Latex
            } else {
                Fmt::Text
            };
            writeln!(out, "{}", render(&res.expr, fmt)).map_err(io_err)?;
            for a in &res.assumptions {
                writeln!(err, "note: {a}").map_err(io_err)?;
            }
            let verdict = if check_aut {
                Some(shadow_check(&g, &res.expr).map_err(|e| (exit_code(&e), e.to_string()))?)
            } else {
                None
            };
            if report {
                let rep = RunReport {
                    input: input.file.display().to_string(),
                    vertices: g.n(),
                    edges: g.edge_count(),
                    class: res.class,
                    assumptions: res.assumptions.clone(),
                    text: render(&res.expr, Fmt::Text),
                    latex: render(&res.expr, Fmt::Latex),
                    expr: crate::qexpr::to_json(&res.expr),
                    shadow_order: classical_shadow_order(&res.expr).to_string(),
                    shadow_check: verdict.clone(),
                    elapsed_ms,
                };
                let text = serde_json::to_string(&rep).map_err(|e| (EXIT_FAILURE, e.to_string()))?;
                writeln!(err, "{text}").map_err(io_err)?;
            }
            match verdict {
                Some(v) if !v.agree => Err((
                    EXIT_SHADOW_MISMATCH,
                    format!("classical shadow has order {} but |Aut| = {}", v.shadow_order, v.aut_order),
                )),
                _ => Ok(EXIT_OK),
            }
        }
        Command::Classify { input } => {
            let g = load(&input)?;
            let class = classify(&g);
            writeln!(out, "{class}").map_err(io_err)?;
            Ok(if class == GraphClass::Unsupported {
                EXIT_UNSUPPORTED
            } else {
                EXIT_OK
            })
        }
        Command::Blocktree { input, dot } => {
            let g = load(&input)?;
            let t = block_tree(&g).map_err(|e| (exit_code(&e), e.to_string()))?;
            if dot {
                write!(out, "{}", t.to_dot()).map_err(io_err)?;
            } else {
                for node in t.nodes() {
                    let level = t.level(node).expect("node of the tree");
                    let parent = match t.parent(node).expect("node of the tree") {
                        None => "center".to_string(),
                        Some(p) => format!("parent {}", node_name(&t, p)),
                    };
                    writeln!(out, "{} level {level} {parent}", node_name(&t, node)).map_err(io_err)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Wl { input } => {
            let g = load(&input)?;
            write!(out, "{}", render_csv(&stable_coloring(&g))).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Selftest { max_n, samples, seed } => selftest(max_n, samples, seed, out),
    }
}

fn node_name(t: &crate::blocks::BlockTree, node: Node) -> String {
    match node {
        Node::Block(b) => {
            let vs: Vec<String> = t.blocks[b].iter().map(|v| v.to_string()).collect();
            format!("block {{{}}}", vs.join(","))
        }
        Node::Cut(v) => format!("cut {v}"),
    }
}

fn selftest(max_n: usize, samples: usize, seed: u64, out: &mut dyn Write) -> Outcome {
    let mut failures = 0usize;
    let mut checked = 0usize;
    let mut mismatch = false;
    let mut check = |g: &ColoredGraph, tree: bool, out: &mut dyn Write| -> std::io::Result<()> {
        checked += 1;
        let problem = match qut_with(g, Options::default()) {
            Err(e) => Some(e.to_string()),
            Ok(res) => match shadow_check(g, &res.expr) {
                Err(e) => Some(e.to_string()),
                Ok(v) if !v.agree => {
                    mismatch = true;
                    Some(format!("shadow {} vs |Aut| {}", v.shadow_order, v.aut_order))
                }
                Ok(_) if tree && (contains_inhom(&res.expr) || !is_tree_class(&res.expr)) => {
                    Some("tree result outside the tree class".to_string())
                }
                Ok(_) => None,
            },
        };
        if let Some(p) = problem {
            failures += 1;
            writeln!(out, "FAIL {}: {p}", crate::graph::render_graph6(g).trim_end())?;
        }
        Ok(())
    };
    for n in 1..=max_n {
        for t in free_trees(n) {
            check(&t, true, out).map_err(io_err)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let n = rng.gen_range(1..=max_n.clamp(1, 12));
        let kind = if i % 2 == 0 { BlockKind::Outerplanar } else { BlockKind::Complete };
        let g = random_block_structure(&mut rng, n, kind, 1);
        check(&g, false, out).map_err(io_err)?;
    }
    writeln!(out, "checked {checked} graphs, {failures} failures").map_err(io_err)?;
    Ok(match (failures, mismatch) {
        (0, _) => EXIT_OK,
        (_, true) => EXIT_SHADOW_MISMATCH,
        _ => EXIT_FAILURE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["qblock"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn temp_file(name: &str, contents: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("qblock-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }

    #[test]
    fn qut_text_json_latex() {
        let p = temp_file("c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
        let p = p.to_str().unwrap();
        let (code, out, _) = call(&["qut", p]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), "S^+(2) wr* S^+(2)");
        let (_, out, _) = call(&["qut", "--json", p]);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["t"], "freewreath");
        let (_, out, _) = call(&["qut", "--latex", p]);
        assert!(out.contains("\\wr_\\ast"));
        let (code, _, err) = call(&["qut", "--check-aut", "--report", p]);
        assert_eq!(code, EXIT_OK);
        let rep: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(rep["shadow_order"], "8");
        assert_eq!(rep["shadow_check"]["agree"], true);
    }

    #[test]
    fn exit_codes() {
        let bad = temp_file("bad.txt", "3 2\n0 1\n0 1\n");
        assert_eq!(call(&["qut", bad.to_str().unwrap()]).0, EXIT_PARSE);
        // W5 with a pendant vertex is outside every supported class.
        let w5 = temp_file(
            "w5.txt",
            "7 11\n0 1\n0 2\n0 3\n0 4\n0 5\n1 2\n2 3\n3 4\n4 5\n5 1\n1 6\n",
        );
        let w5 = w5.to_str().unwrap();
        assert_eq!(call(&["qut", w5]).0, EXIT_UNSUPPORTED);
        assert_eq!(call(&["qut", "--force", w5]).0, EXIT_UNSUPPORTED);
        let (code, out, _) = call(&["classify", w5]);
        assert_eq!((code, out.trim()), (EXIT_UNSUPPORTED, "Unsupported"));
        assert_eq!(call(&["qut", "/nonexistent/graph.txt"]).0, EXIT_FAILURE);
        assert_eq!(call(&["bogus"]).0, EXIT_PARSE);
    }

    #[test]
    fn graph6_by_extension() {
        // P3 in graph6.
        let p = temp_file("p3.g6", "Bg\n");
        let (code, out, _) = call(&["qut", p.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), "S^+(2)");
    }

    #[test]
    fn blocktree_and_wl() {
        let p = temp_file("p3.txt", "3 2\n0 1\n1 2\n");
        let p = p.to_str().unwrap();
        let (code, out, _) = call(&["blocktree", p]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("cut 1 level 1 center"));
        let (_, out, _) = call(&["blocktree", "--dot", p]);
        assert!(out.starts_with("graph"));
        let (code, out, _) = call(&["wl", p]);
        assert_eq!(code, EXIT_OK);
        assert!(!out.is_empty());
        let (_, out, _) = call(&["classify", p]);
        assert_eq!(out.trim(), "Forest");
    }

    #[test]
    fn selftest_small() {
        let (code, out, _) = call(&["selftest", "--max-n", "6", "--samples", "20"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("0 failures"));
    }
}
