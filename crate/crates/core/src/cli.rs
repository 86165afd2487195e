//! Instance file format and the command entry points behind the binary.
//!
//! Instance files are plain text: a header line `n m`, then `m` lines
//! `u v` with 1-based vertex labels. Blank lines and lines starting with
//! `#` are ignored anywhere. Parse errors carry the offending line number.
//!
//! Exit code convention, enforced by `main`: 0 for a positive answer, 1
//! for a proven negative answer, 2 for any input or usage error.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::audit::{verify_audit, AuditLog};
use crate::branch::{minimum_fvs, solve, SearchStats, Solution};
use crate::graph::{Graph, GraphError, VertexId};
use crate::oracle::{brute_force_min_fvs, gen_planted, gen_random_graph};
use crate::reduce::ExtendedInstance;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
}

/// A parse failure with the 1-based line it happened on.
#[derive(Debug, PartialEq, Eq)]
pub struct InstanceParseError {
    pub line: usize,
    pub message: String,
}

/// Parses the `n m` / `u v` instance format.
pub fn parse_instance(text: &str) -> Result<Graph, InstanceParseError> {
    let err = |line: usize, message: String| InstanceParseError { line, message };
    let mut data_lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let total_lines = text.lines().count();

    let (header_line, header) = data_lines
        .next()
        .ok_or_else(|| err(total_lines.max(1), "missing 'n m' header line".into()))?;
    let mut tokens = header.split_whitespace();
    let n: u32 = tokens
        .next()
        .expect("a non-blank line has a first token")
        .parse()
        .map_err(|_| err(header_line, format!("header must be 'n m', found '{header}'")))?;
    let m: usize = tokens
        .next()
        .ok_or_else(|| err(header_line, format!("header must be 'n m', found '{header}'")))?
        .parse()
        .map_err(|_| err(header_line, format!("header must be 'n m', found '{header}'")))?;
    if tokens.next().is_some() {
        return Err(err(
            header_line,
            format!("header must be 'n m', found '{header}'"),
        ));
    }

    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(m);
    let mut edge_lines: Vec<usize> = Vec::with_capacity(m);
    for (line, content) in &mut data_lines {
        if edges.len() == m {
            return Err(err(
                line,
                format!("unexpected content after {m} edges: '{content}'"),
            ));
        }
        let mut tokens = content.split_whitespace();
        let parse_endpoint = |tok: Option<&str>| -> Result<VertexId, InstanceParseError> {
            tok.ok_or_else(|| err(line, format!("edge line must be 'u v', found '{content}'")))?
                .parse()
                .map_err(|_| err(line, format!("edge line must be 'u v', found '{content}'")))
        };
        let u = parse_endpoint(tokens.next())?;
        let v = parse_endpoint(tokens.next())?;
        if tokens.next().is_some() {
            return Err(err(
                line,
                format!("edge line must be 'u v', found '{content}'"),
            ));
        }
        edges.push((u, v));
        edge_lines.push(line);
    }
    if edges.len() < m {
        return Err(err(
            total_lines.max(1),
            format!("header promised {m} edges, found {}", edges.len()),
        ));
    }

    Graph::build(n, &edges).map_err(|e| {
        let (index, message) = match e {
            GraphError::SelfLoop { index, vertex } => {
                (index, format!("self-loop at vertex {vertex}"))
            }
            GraphError::EndpointOutOfRange { index, vertex, max } => {
                (index, format!("endpoint {vertex} outside 1..={max}"))
            }
            GraphError::DuplicateEdge { index, u, v } => {
                (index, format!("duplicate edge {u} {v}"))
            }
            GraphError::NotATree => unreachable!("build never reports tree-shape errors"),
        };
        err(edge_lines[index], message)
    })
}

/// Renders a graph in the instance format: sorted header, sorted edges.
/// Expects the labels to be exactly `1..=n`, as in any freshly built graph.
pub fn write_instance(g: &Graph) -> String {
    let n = g.vertex_count();
    debug_assert!(
        g.vertices().eq(1..=n as u32),
        "instance files require contiguous labels"
    );
    let mut out = format!("{} {}\n", n, g.edge_count());
    for u in g.vertices() {
        for v in g.neighbors(u).filter(|&v| v > u) {
            writeln!(out, "{u} {v}").expect("writing to a string cannot fail");
        }
    }
    out
}

fn read_instance(path: &str) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    parse_instance(&text).map_err(|e| CliError::Parse {
        path: path.to_string(),
        line: e.line,
        message: e.message,
    })
}

/// What a command wants printed and which exit code it earned.
#[derive(Debug, PartialEq, Eq)]
pub struct CmdOutput {
    pub text: String,
    pub exit_code: u8,
}

/// Options for [`cmd_solve`].
#[derive(Debug, Default)]
pub struct SolveFlags {
    pub stats: bool,
    pub audit: bool,
    pub no_cutoff: bool,
    pub forbid: Vec<VertexId>,
}

/// `solve` command: decide one instance at one budget.
pub fn cmd_solve(path: &str, budget: i64, flags: &SolveFlags) -> Result<CmdOutput, CliError> {
    if budget < 0 {
        return Err(CliError::Usage(format!(
            "budget must be nonnegative, got {budget}"
        )));
    }
    let graph = read_instance(path)?;
    let forbid: BTreeSet<VertexId> = flags.forbid.iter().copied().collect();
    for &v in &forbid {
        if !graph.is_live(v) {
            return Err(CliError::Usage(format!(
                "forbidden vertex {v} is not in the graph"
            )));
        }
    }
    if !graph.induced_is_forest(&forbid) {
        return Err(CliError::Usage(
            "forbidden vertices already contain a cycle; no solution can avoid them".into(),
        ));
    }

    let mut inst = ExtendedInstance::new(graph, budget, forbid);
    let mut stats = SearchStats::default();
    let mut audit = AuditLog::default();
    let solution = solve(
        &mut inst,
        !flags.no_cutoff,
        &mut stats,
        flags.audit.then_some(&mut audit),
    );

    let mut text = String::new();
    let exit_code = match &solution {
        Solution::Found(vertices) => {
            text.push_str("YES\n");
            for v in vertices {
                writeln!(text, "{v}").expect("writing to a string cannot fail");
            }
            0
        }
        Solution::No => {
            text.push_str("NO\n");
            1
        }
    };
    if flags.stats {
        writeln!(text, "nodes_visited={}", stats.nodes_visited).unwrap();
        writeln!(text, "max_path_length={}", stats.max_path_length).unwrap();
        writeln!(text, "cutoff_hits={}", stats.cutoff_hits).unwrap();
        writeln!(text, "f_prime={}", stats.f_prime_on_success.unwrap_or(0)).unwrap();
    }
    if flags.audit {
        let violations = verify_audit(&audit);
        if violations.is_empty() {
            text.push_str("AUDIT OK\n");
        } else {
            for v in violations {
                writeln!(text, "AUDIT VIOLATION: {v}").unwrap();
            }
        }
    }
    Ok(CmdOutput { text, exit_code })
}

/// `minimum` command: smallest solution size, then its vertices.
pub fn cmd_minimum(path: &str) -> Result<CmdOutput, CliError> {
    let graph = read_instance(path)?;
    let solution = minimum_fvs(&graph);
    let mut text = format!("{}\n", solution.len());
    for v in solution {
        writeln!(text, "{v}").expect("writing to a string cannot fail");
    }
    Ok(CmdOutput { text, exit_code: 0 })
}

/// `oracle` command: brute-force minimum, same output shape as `minimum`.
pub fn cmd_oracle(path: &str) -> Result<CmdOutput, CliError> {
    let graph = read_instance(path)?;
    let solution = brute_force_min_fvs(&graph, &BTreeSet::new())
        .map_err(|e| CliError::Usage(e.to_string()))?
        .expect("with nothing forbidden, deleting every vertex always works");
    let mut text = format!("{}\n", solution.len());
    for v in solution {
        writeln!(text, "{v}").expect("writing to a string cannot fail");
    }
    Ok(CmdOutput { text, exit_code: 0 })
}

/// Which generator `cmd_gen` should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    /// `param` is the edge count.
    Random,
    /// `param` is the number of planted vertices.
    Planted,
}

/// `gen` command: write a seeded instance file. Same seed, same bytes.
pub fn cmd_gen(
    kind: GenKind,
    n: u32,
    param: u64,
    seed: u64,
    out_path: &str,
) -> Result<CmdOutput, CliError> {
    let graph = match kind {
        GenKind::Random => gen_random_graph(n, param as usize, seed),
        GenKind::Planted => {
            let k = u32::try_from(param).map_err(|_| {
                CliError::Usage(format!("planted count {param} does not fit in u32"))
            })?;
            gen_planted(n, k, seed).map(|p| p.graph)
        }
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let text = write_instance(&graph);
    std::fs::write(Path::new(out_path), text).map_err(|source| CliError::Io {
        path: out_path.to_string(),
        source,
    })?;
    Ok(CmdOutput {
        text: String::new(),
        exit_code: 0,
    })
}
