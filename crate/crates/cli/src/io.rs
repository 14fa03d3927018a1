//! Edge-list files: `#` comment lines, a header line `n m`, then one `u v`
//! pair per line with 0-based labels.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use spanbip::{Digraph, Graph};

/// A parsed file together with non-fatal problems found while reading it.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn two_numbers(lineno: usize, line: &str, what: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        bail!("line {lineno}: expected {what}, found {line:?}");
    }
    let parse = |s: &str| s.parse::<usize>().with_context(|| format!("line {lineno}: {s:?} is not a vertex label or count"));
    Ok((parse(fields[0])?, parse(fields[1])?))
}

type Pairs = (usize, Vec<(usize, usize)>, Vec<String>);

/// Reads the header and the pair lines, checking labels and self-loops.
fn parse_pairs(text: &str, noun: &str) -> Result<Pairs> {
    let mut lines = data_lines(text);
    let (lineno, header) = lines.next().context("missing header line \"n m\"")?;
    let (n, m) = two_numbers(lineno, header, "header \"n m\"")?;
    let mut pairs = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let (u, v) = two_numbers(lineno, line, &format!("{noun} \"u v\""))?;
        if u >= n || v >= n {
            bail!("line {lineno}: {noun} ({u}, {v}) references a vertex outside 0..{n}");
        }
        if u == v {
            bail!("line {lineno}: self-loop on vertex {u}");
        }
        pairs.push((u, v));
    }
    let mut warnings = Vec::new();
    if pairs.len() != m {
        warnings.push(format!("header declares {m} {noun}s but the file lists {}", pairs.len()));
    }
    Ok((n, pairs, warnings))
}

pub fn parse_graph_str(text: &str) -> Result<Parsed<Graph>> {
    let (n, pairs, warnings) = parse_pairs(text, "edge")?;
    Ok(Parsed { value: Graph::new(n, &pairs)?, warnings })
}

pub fn parse_graph_file(path: &Path) -> Result<Parsed<Graph>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Same format with one arc `u -> v` per line.
pub fn parse_digraph_str(text: &str) -> Result<Parsed<Digraph>> {
    let (n, pairs, warnings) = parse_pairs(text, "arc")?;
    Ok(Parsed { value: Digraph::new(n, &pairs)?, warnings })
}

pub fn parse_digraph_file(path: &Path) -> Result<Parsed<Digraph>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_digraph_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes `n m` and the edges in lexicographic order.
pub fn write_edge_list(n: usize, edges: &[(usize, usize)]) -> String {
    let mut sorted: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = format!("{n} {}\n", sorted.len());
    for (u, v) in sorted {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_graph(g: &Graph) -> String {
    write_edge_list(g.n(), &g.edge_list())
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut arcs: Vec<(usize, usize)> = d.arcs().collect();
    arcs.sort_unstable();
    let mut out = format!("{} {}\n", d.n(), arcs.len());
    for (u, v) in arcs {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
