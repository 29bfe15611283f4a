//! Text formats for subgroups: generator files and Graphviz DOT.

use std::fmt::Write as _;

use super::StallingsAutomaton;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::words::{Letter, Word};

/// Parses a subgroup file: one generator word per line, `#` starts a
/// comment, blank lines are skipped.
pub fn parse_subgroup_file(text: &str, rank: usize) -> Result<Vec<Word>> {
    let mut gens = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let w = Word::parse(body, rank).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos,
                msg: format!("line {}: {msg}", lineno + 1),
            },
            other => other,
        })?;
        gens.push(w);
    }
    Ok(gens)
}

impl StallingsAutomaton {
    /// Graphviz rendering: the origin is double-circled and only positive
    /// edges are drawn.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph stallings {\n");
        let _ = writeln!(out, "  comment=\"rank={}\";", self.rank());
        out.push_str("  rankdir=LR;\n  node [shape=circle];\n");
        for v in 0..self.state_count() {
            if v == 0 {
                let _ = writeln!(out, "  {v} [shape=doublecircle];");
            } else {
                let _ = writeln!(out, "  {v};");
            }
        }
        for (p, x, q) in self.edges() {
            let label = Letter::positive(x);
            let _ = writeln!(out, "  {p} -> {q} [label=\"{label}\"];");
        }
        out.push_str("}\n");
        out
    }

    /// Reads back the output of [`StallingsAutomaton::to_dot`].
    pub fn from_dot(text: &str) -> Result<StallingsAutomaton> {
        let mut rank = None;
        let mut origin = None;
        let mut nodes: Vec<usize> = Vec::new();
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        let bad = |line: &str| Error::invalid(format!("unrecognised DOT line: {line}"));
        for raw in text.lines() {
            let line = raw.trim().trim_end_matches(';').trim();
            if line.is_empty()
                || line.starts_with("digraph")
                || line == "}"
                || line.starts_with("rankdir")
                || line.starts_with("node ")
            {
                continue;
            }
            if let Some(rest) = line.strip_prefix("comment=\"rank=") {
                let n = rest.trim_end_matches('"');
                rank = Some(n.parse::<usize>().map_err(|_| bad(raw))?);
                continue;
            }
            if let Some((lhs, rhs)) = line.split_once("->") {
                let from: usize = lhs.trim().parse().map_err(|_| bad(raw))?;
                let (to, attrs) = rhs.split_once('[').ok_or_else(|| bad(raw))?;
                let to: usize = to.trim().parse().map_err(|_| bad(raw))?;
                let label = attrs
                    .split_once("label=\"")
                    .and_then(|(_, l)| l.split_once('"'))
                    .map(|(l, _)| l)
                    .ok_or_else(|| bad(raw))?;
                let mut chars = label.chars();
                let letter = match (chars.next().and_then(Letter::from_char), chars.next()) {
                    (Some(l), None) if l.is_positive() => l,
                    _ => return Err(bad(raw)),
                };
                edges.push((from, letter.generator() as usize, to));
                continue;
            }
            let (id, attrs) = match line.split_once('[') {
                Some((id, attrs)) => (id.trim(), attrs),
                None => (line, ""),
            };
            let id: usize = id.parse().map_err(|_| bad(raw))?;
            if attrs.contains("doublecircle") && origin.replace(id).is_some() {
                return Err(Error::invalid("DOT graph has two origins"));
            }
            nodes.push(id);
        }
        let rank = rank.ok_or_else(|| Error::invalid("DOT graph lacks its rank comment"))?;
        let origin = origin.ok_or_else(|| Error::invalid("DOT graph has no origin"))?;
        let n = nodes
            .iter()
            .copied()
            .chain(edges.iter().flat_map(|&(p, _, q)| [p, q]))
            .max()
            .map_or(0, |m| m + 1);
        let mut g = Graph::new(rank, n);
        g.origin = origin;
        for (p, x, q) in edges {
            if x >= rank {
                return Err(Error::invalid(format!("edge label outside rank {rank}")));
            }
            if !g.link(p, x, q) {
                return Err(Error::invalid("DOT graph is not folded"));
            }
        }
        let canon = g.canonical();
        if canon.len() != n || canon.trim().len() != n {
            return Err(Error::invalid(
                "DOT graph is not a connected core automaton",
            ));
        }
        Ok(StallingsAutomaton { graph: canon })
    }
}
