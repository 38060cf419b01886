mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;
use vmcalc::equivalence::{
    classify_index, local_orbit, non_essential_vertices, non_pivotal_vertices, pivot_orbit,
};
use vmcalc::harness::{verify, HarnessError, Theorem, VerifyConfig};
use vmcalc::theta::{
    build_theta, good_theta_for_theorem, recognize_theta, theta_is_prime, theta_non_essential_count,
};
use vmcalc::words::{
    chord_diagram, contract_chords, id_letter, interlacement_graph, word_local_complement,
};
use vmcalc::{DoubleOccurrenceWord, Graph, IsotropicSystem, ThetaSpec, VertexId};

use crate::input::{parse_graph, InputError};

#[derive(Parser)]
#[command(
    name = "vmcalc",
    version,
    about = "Vertex-minor calculus and exhaustive theorem checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Primality, with a split when there is one.
    Prime { graph: String },
    /// Reduction primality per vertex and the non-essential and non-pivotal sets.
    Noness { graph: String },
    /// Size and contents of the local (or pivot) orbit.
    Orbit {
        graph: String,
        #[arg(long)]
        pivot: bool,
        /// Print every member in graph6.
        #[arg(long)]
        list: bool,
    },
    /// Closed forms for a theta graph, next to the direct computation.
    Theta { spec: String },
    /// The system of (G, α, β): basis, a fundamental graph and triangles.
    Isotropic {
        graph: String,
        /// Read the input as system text instead of a graph.
        #[arg(long)]
        system: bool,
    },
    /// Interlacement graph and contracted chord diagram of a word.
    Word {
        word: String,
        /// Apply word local complementation at these letters, in order.
        #[arg(long = "lc")]
        letters: Vec<char>,
    },
    /// Exhaustively check a theorem over all labeled graphs in a size range.
    Verify {
        theorem: String,
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        dedup_orbits: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error("cannot write report: {0}")]
    Report(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Harness(HarnessError::Bounds { .. }) => 3,
            CliError::Harness(HarnessError::EmptyRange(..)) => 3,
            CliError::Report(_) | CliError::Harness(HarnessError::Pool(_)) => 1,
            _ => 2,
        }
    }
}

/// Appends a line to the output buffer.
macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().write_all(out.as_bytes());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn set(ids: &[VertexId]) -> String {
    let parts: Vec<String> = ids.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn edges(g: &Graph) -> String {
    let parts: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    parts.join(" ")
}

/// Returns whether the command's check passed.
fn run(command: Command, out: &mut String) -> Result<bool, CliError> {
    match command {
        Command::Prime { graph } => {
            let g = parse_graph(&graph)?;
            match g.find_split() {
                None => emit!(out, "prime: true"),
                Some(split) => {
                    emit!(out, "prime: false");
                    emit!(out, "split: {} | {}", set(&split.a), set(&split.b));
                }
            }
        }
        Command::Noness { graph } => {
            let g = parse_graph(&graph)?;
            for (i, &v) in g.ground().ids().iter().enumerate() {
                let c = classify_index(&g, i);
                emit!(out,
                    "vertex {v}: delete={} star_delete={} contract={} non_essential={} non_pivotal={}",
                    c.prime_delete,
                    c.prime_star_delete,
                    c.prime_contract,
                    c.is_non_essential(),
                    c.is_non_pivotal()
                );
            }
            emit!(out, "non_essential: {}", set(&non_essential_vertices(&g)));
            emit!(out, "non_pivotal: {}", set(&non_pivotal_vertices(&g)));
        }
        Command::Orbit { graph, pivot, list } => {
            let g = parse_graph(&graph)?;
            let orbit = if pivot {
                pivot_orbit(&g)
            } else {
                local_orbit(&g)
            };
            emit!(out, "generator: {}", if pivot { "pivot" } else { "local" });
            emit!(out, "size: {}", orbit.len());
            emit!(
                out,
                "contains_cycle: {}",
                orbit.members().any(Graph::is_cycle_graph)
            );
            emit!(
                out,
                "bipartite_members: {}",
                orbit.members().filter(|h| h.is_bipartite()).count()
            );
            if list {
                for h in orbit.members() {
                    emit!(out, "member: {}", h.to_graph6());
                }
            }
        }
        Command::Theta { spec } => {
            let spec: ThetaSpec = spec.parse().map_err(|e| CliError::Parse(format!("{e}")))?;
            let g = build_theta(&spec);
            emit!(out, "spec: {spec}");
            emit!(out, "vertices: {}", g.n());
            emit!(out, "edges: {}", edges(&g));
            emit!(out, "prime: {}", g.is_prime());
            if let Ok(p) = theta_is_prime(&spec) {
                emit!(out, "prime_closed_form: {p}");
            }
            let count = non_essential_vertices(&g).len();
            emit!(out, "non_essential_count: {count}");
            if let Ok((c, case)) = theta_non_essential_count(&spec) {
                emit!(out, "non_essential_closed_form: {c} ({case:?})");
            }
            if let Some(found) = recognize_theta(&g) {
                emit!(out, "recognized: {found}");
            }
            emit!(out, "good_theta_in_orbit: {}", good_theta_for_theorem(&g));
        }
        Command::Isotropic { graph, system } => {
            let s = if system {
                let text = std::fs::read_to_string(&graph)
                    .map_err(|e| CliError::Parse(format!("cannot read {graph}: {e}")))?;
                IsotropicSystem::from_text(&text).map_err(|e| CliError::Parse(format!("{e}")))?
            } else {
                IsotropicSystem::from_graph(&parse_graph(&graph)?)
            };
            out.push_str(&s.to_text());
            let a = s.some_eulerian_vector();
            let p = s
                .fundamental_graph(&a)
                .expect("constructed vector is Eulerian");
            emit!(out, "eulerian: {}", a.to_digits());
            emit!(out, "fundamental_graph: {}", edges(&p.graph));
            emit!(out, "fundamental_b: {}", p.b.to_digits());
            emit!(out, "three_connected: {}", s.is_three_connected());
            emit!(out, "cyclic: {}", s.is_cyclic());
            emit!(out, "non_essential: {}", set(&s.non_essential_vertices()));
            let triangles = s.triangles().map_err(|e| CliError::Parse(format!("{e}")))?;
            emit!(out, "triangles: {}", triangles.len());
            for t in triangles {
                emit!(
                    out,
                    "triangle: {} on {}",
                    t.vector.to_digits(),
                    set(&t.support())
                );
            }
        }
        Command::Word { word, letters } => {
            let mut m: DoubleOccurrenceWord =
                word.parse().map_err(|e| CliError::Parse(format!("{e}")))?;
            for c in letters {
                m = word_local_complement(&m, c).map_err(|e| CliError::Parse(format!("{e}")))?;
            }
            let a = interlacement_graph(&m);
            let letter_edges: Vec<String> = a
                .edges()
                .iter()
                .map(|&(u, v)| format!("{}{}", id_letter(u), id_letter(v)))
                .collect();
            emit!(out, "word: {m}");
            emit!(out, "interlacement: {}", letter_edges.join(" "));
            let alphabet = m.alphabet();
            let t = contract_chords(&chord_diagram(&m));
            let t_edges: Vec<String> = t
                .edges()
                .iter()
                .map(|&(u, v)| format!("{}{}", alphabet[u], alphabet[v]))
                .collect();
            emit!(out, "contracted: {}", t_edges.join(" "));
        }
        Command::Verify {
            theorem,
            n_min,
            n_max,
            workers,
            dedup_orbits,
            report,
        } => {
            let theorem: Theorem = theorem.parse()?;
            let config = VerifyConfig {
                n_min,
                n_max,
                workers,
                dedup_orbits,
            };
            let r = verify(theorem, &config)?;
            let text = r.to_text();
            out.push_str(&text);
            if let Some(path) = report {
                std::fs::write(path, &text).map_err(CliError::Report)?;
            }
            return Ok(r.pass());
        }
    }
    Ok(true)
}
