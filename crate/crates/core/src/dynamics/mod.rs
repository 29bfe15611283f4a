//! The action of Σ on Stallings automata and its finite truncated model.

mod closure;

pub use crate::endo2::SigmaLetter;
pub use closure::{closure_system, Alphabet, Limits, TransitionSystem};

use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::stallings::metrics::{is_singular, is_sink, marked, metrics_of};
use crate::stallings::StallingsAutomaton;
use crate::words::{Letter, Word};

const A: usize = 0;
const B: usize = 1;
const A_INV: usize = 2;

/// Direction permutations: `new[d] = old[perm[d]]`.
const SWAP: [usize; 4] = [1, 0, 3, 2];
const REVERSE_SWAP: [usize; 4] = [3, 2, 1, 0];

fn relabel(g: &Graph, perm: &[usize; 4]) -> Graph {
    let mut out = Graph::new(2, g.len());
    out.origin = g.origin;
    for v in 0..g.len() {
        for (d, &from) in perm.iter().enumerate() {
            if let Some(w) = g.target(v, from) {
                let ok = out.link(v, d, w);
                debug_assert!(ok);
            }
        }
    }
    out
}

/// One Σ-letter applied to a (possibly disconnected) folded rank-2 graph.
/// For `S` every `b`-edge `p → q` becomes `p --b--> m --a--> q`, or
/// `p --b--> q·a⁻¹` when `q` is a sink; then hanging vertices are trimmed.
pub(crate) fn step_graph(g: &Graph, letter: SigmaLetter) -> Graph {
    match letter {
        SigmaLetter::X => relabel(g, &SWAP),
        SigmaLetter::I => relabel(g, &REVERSE_SWAP),
        SigmaLetter::S => {
            let mut out = Graph::new(2, g.len());
            out.origin = g.origin;
            for v in 0..g.len() {
                if let Some(w) = g.target(v, A) {
                    out.link(v, A, w);
                }
            }
            for p in 0..g.len() {
                let Some(q) = g.target(p, B) else { continue };
                if is_sink(g, q) {
                    let r = g.target(q, A_INV).expect("sinks have an incoming a");
                    let ok = out.link(p, B, r);
                    debug_assert!(ok, "redirected b-edges stay deterministic");
                } else {
                    let m = out.add_vertex();
                    out.link(p, B, m);
                    let ok = out.link(m, A, q);
                    debug_assert!(ok, "a non-sink with an incoming b has no incoming a");
                }
            }
            out.trim()
        }
    }
}

/// `A(g(H))` computed by rewriting `A(H)` directly.
pub fn sigma_apply_direct(
    h: &StallingsAutomaton,
    letter: SigmaLetter,
) -> Result<StallingsAutomaton> {
    h.require_rank2()?;
    Ok(StallingsAutomaton::from_graph(step_graph(&h.graph, letter)))
}

/// Applies a Σ-word letter by letter, leftmost first.
pub fn sigma_apply_word(
    h: &StallingsAutomaton,
    word: &[SigmaLetter],
) -> Result<StallingsAutomaton> {
    h.require_rank2()?;
    let mut cur = h.clone();
    for &l in word {
        cur = StallingsAutomaton::from_graph(step_graph(&cur.graph, l));
    }
    Ok(cur)
}

fn truncate_graph(g: &Graph, t: usize) -> Graph {
    let dist = g.distances(&marked(g));
    let keep: Vec<bool> = dist.iter().map(|&d| d <= t).collect();
    g.retain(&keep)
}

/// The `t`-truncation of an automaton: every state farther than `t` from
/// the singularities and the origin is removed, with its edges.
///
/// States are stored in canonical order: the origin's component breadth-first
/// from the origin, then the other components sorted by their codes.
#[derive(Clone, Debug)]
pub struct TruncatedAutomaton {
    graph: Graph,
    t: usize,
    zeta_bound: usize,
    key: Vec<u8>,
}

impl PartialEq for TruncatedAutomaton {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for TruncatedAutomaton {}

impl Hash for TruncatedAutomaton {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

fn push_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_le_bytes());
}

impl TruncatedAutomaton {
    fn build(g: &Graph, t: usize, zeta_bound: usize) -> Self {
        let (comp, count) = g.components();
        let home = comp[g.origin];
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for v in 0..g.len() {
            members[comp[v]].push(v);
        }
        let origin_order = g.bfs_order(g.origin);
        let origin_code = g.code(&origin_order);
        let mut others: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
        for (c, vs) in members.iter().enumerate() {
            if c == home {
                continue;
            }
            let singular: Vec<usize> = vs.iter().copied().filter(|&v| is_singular(g, v)).collect();
            let roots = if singular.is_empty() { vs } else { &singular };
            let best = roots
                .iter()
                .map(|&r| {
                    let order = g.bfs_order(r);
                    (g.code(&order), order)
                })
                .min()
                .expect("components are nonempty");
            others.push(best);
        }
        others.sort();
        let mut key = Vec::new();
        push_u32(&mut key, t as u32);
        push_u32(&mut key, count as u32);
        let mut order = origin_order;
        for x in &origin_code {
            push_u32(&mut key, *x);
        }
        for (code, o) in others {
            for x in code {
                push_u32(&mut key, x);
            }
            order.extend(o);
        }
        TruncatedAutomaton {
            graph: g.renumber(&order),
            t,
            zeta_bound,
            key,
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `ζ` of the subgroup this truncation descends from.
    pub fn zeta_bound(&self) -> usize {
        self.zeta_bound
    }

    /// Byte string equal for two truncations exactly when they are
    /// isomorphic as rooted labeled graphs with the same radius.
    pub fn canonical_key(&self) -> &[u8] {
        &self.key
    }

    /// First eight bytes of the SHA-256 of the key, in hex.
    pub fn key_hash(&self) -> String {
        Sha256::digest(&self.key)
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn state_count(&self) -> usize {
        self.graph.len()
    }

    pub fn component_count(&self) -> usize {
        self.graph.components().1
    }

    pub fn origin(&self) -> usize {
        0
    }

    /// Positive edges `(from, generator, to)` in state order.
    pub fn edges(&self) -> Vec<(usize, u32, usize)> {
        let mut out = Vec::new();
        for v in 0..self.graph.len() {
            for d in 0..2 {
                if let Some(w) = self.graph.target(v, d) {
                    out.push((v, d as u32, w));
                }
            }
        }
        out
    }

    pub fn singular_states(&self) -> Vec<usize> {
        (0..self.graph.len())
            .filter(|&v| is_singular(&self.graph, v))
            .collect()
    }

    /// Non-origin states of degree one: where a long bridge was cut.
    pub fn cut_ends(&self) -> Vec<usize> {
        (0..self.graph.len())
            .filter(|&v| v != 0 && self.graph.degree(v) == 1)
            .collect()
    }

    /// True when nothing was cut, i.e. the truncation is the whole automaton.
    pub fn is_whole(&self) -> bool {
        self.cut_ends().is_empty()
    }

    pub fn read(&self, state: usize, u: &Word) -> Option<usize> {
        self.graph.read(state, u.letters())
    }

    pub fn loops_at_origin(&self, u: &Word) -> bool {
        self.read(0, u) == Some(0)
    }

    /// States at which `u` labels a closed path.
    pub fn loop_states(&self, u: &Word) -> Vec<usize> {
        (0..self.graph.len())
            .filter(|&p| self.read(p, u) == Some(p))
            .collect()
    }

    /// True when the connected automaton `core` maps injectively into this
    /// one with its origin sent to `root`.
    pub fn embeds_at(&self, core: &StallingsAutomaton, root: usize) -> bool {
        self.graph.embeds(root, &core.graph, 0)
    }

    /// Graphviz rendering of the truncated automaton itself.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph truncation {\n  node [shape=circle];\n");
        for v in 0..self.graph.len() {
            let shape = if v == 0 {
                "doublecircle"
            } else if is_singular(&self.graph, v) {
                "box"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  {v} [shape={shape}];");
        }
        for (p, x, q) in self.edges() {
            let _ = writeln!(out, "  {p} -> {q} [label=\"{}\"];", Letter::positive(x));
        }
        out.push_str("}\n");
        out
    }

    /// Joins every cut end to a partner through a long synthetic path, giving
    /// a graph whose truncation is this one and which has the same
    /// singularities.
    fn model(&self) -> Result<Graph> {
        let mut g = self.graph.clone();
        let mut outs = Vec::new();
        let mut ins = Vec::new();
        for v in self.cut_ends() {
            if (0..2).any(|d| g.target(v, d).is_some()) {
                ins.push(v);
            } else {
                outs.push(v);
            }
        }
        if outs.len() != ins.len() {
            return Err(Error::invalid("truncated automaton has unmatched cut ends"));
        }
        let length = 2 * self.t + 4;
        for (&u, &v) in outs.iter().zip(&ins) {
            let mut x = u;
            for i in 0..length {
                let y = if i + 1 == length { v } else { g.add_vertex() };
                let ok = g.link(x, i % 2, y);
                debug_assert!(ok);
                x = y;
            }
        }
        Ok(g)
    }
}

/// The `t`-truncation of `h`.
pub fn truncate(h: &StallingsAutomaton, t: usize) -> Result<TruncatedAutomaton> {
    h.require_rank2()?;
    if t < 1 {
        return Err(Error::invalid("truncation radius must be at least 1"));
    }
    let zeta = metrics_of(&h.graph).zeta;
    Ok(TruncatedAutomaton::build(
        &truncate_graph(&h.graph, t),
        t,
        zeta,
    ))
}

/// Image of a truncation under one Σ-letter, computed without the full
/// automaton. Requires `2t > ζ` for the subgroup the truncation came from.
pub fn truncated_step(ta: &TruncatedAutomaton, letter: SigmaLetter) -> Result<TruncatedAutomaton> {
    let g = match letter {
        SigmaLetter::X | SigmaLetter::I => step_graph(&ta.graph, letter),
        SigmaLetter::S => {
            if 2 * ta.t <= ta.zeta_bound {
                return Err(Error::invalid(format!(
                    "radius {} is too small for zeta {}",
                    ta.t, ta.zeta_bound
                )));
            }
            truncate_graph(&step_graph(&ta.model()?, letter), ta.t)
        }
    };
    Ok(TruncatedAutomaton::build(&g, ta.t, ta.zeta_bound))
}

/// Least radius exceeding half of `ζ(H)` and half of every word length.
pub fn choose_t(h: &StallingsAutomaton, words: &[Word]) -> Result<usize> {
    h.require_rank2()?;
    let zeta = metrics_of(&h.graph).zeta;
    let longest = words.iter().map(|w| w.len()).max().unwrap_or(0);
    Ok(zeta.max(longest) / 2 + 1)
}
