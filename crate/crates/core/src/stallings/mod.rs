//! Stallings automata of finitely generated subgroups.

mod basis;
mod dot;
pub(crate) mod metrics;

pub use basis::{basis_completion, BasisCompletion};
pub use dot::parse_subgroup_file;
pub use metrics::{Bridge, MetricBundle, SingularityProfile};

use crate::error::{Error, Result};
use crate::graph::{Folder, Graph};
use crate::words::{Letter, Word};

/// The folded core automaton of a subgroup, with states numbered
/// breadth-first from the origin (state 0).
///
/// Two automata compare equal exactly when they recognise the same subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StallingsAutomaton {
    pub(crate) graph: Graph,
}

fn check_ranks(rank: usize, gens: &[Word]) -> Result<()> {
    if rank == 0 {
        return Err(Error::invalid("rank must be at least 1"));
    }
    if let Some(g) = gens.iter().find(|g| g.rank() != rank) {
        return Err(Error::invalid(format!(
            "generator {g} has rank {}, expected {rank}",
            g.rank()
        )));
    }
    Ok(())
}

/// Folds the bouquet of `gens` into the Stallings automaton of the subgroup
/// they generate.
pub fn fold_generators(rank: usize, gens: &[Word]) -> Result<StallingsAutomaton> {
    check_ranks(rank, gens)?;
    let mut f = Folder::new(rank);
    for g in gens {
        f.add_loop(0, g.letters());
    }
    Ok(StallingsAutomaton::from_graph(f.finish()))
}

/// Folds the same bouquet as [`fold_generators`], inserting its edges in the
/// order given by `order` (a permutation of the edge indices, or any list of
/// indices; indices beyond the edge count are ignored and missing ones are
/// appended). Exposed for confluence testing.
#[doc(hidden)]
pub fn fold_generators_in_order(
    rank: usize,
    gens: &[Word],
    order: &[usize],
) -> Result<StallingsAutomaton> {
    check_ranks(rank, gens)?;
    let mut f = Folder::new(rank);
    let mut edges = Vec::new();
    for g in gens {
        let n = g.len();
        let mut v = 0;
        for (i, l) in g.letters().iter().enumerate() {
            let w = if i + 1 == n { 0 } else { f.add_vertex() };
            edges.push((v, l.index(rank), w));
            v = w;
        }
    }
    let mut used = vec![false; edges.len()];
    let mut sequence = Vec::with_capacity(edges.len());
    for &i in order {
        if i < edges.len() && !used[i] {
            used[i] = true;
            sequence.push(i);
        }
    }
    sequence.extend((0..edges.len()).filter(|&i| !used[i]));
    for i in sequence {
        let (u, d, v) = edges[i];
        f.add_edge(u, d, v);
    }
    Ok(StallingsAutomaton::from_graph(f.finish()))
}

impl StallingsAutomaton {
    /// Trims and canonicalises a folded graph.
    pub(crate) fn from_graph(g: Graph) -> Self {
        StallingsAutomaton {
            graph: g.trim().canonical(),
        }
    }

    /// The automaton of the trivial subgroup.
    pub fn trivial(rank: usize) -> Self {
        StallingsAutomaton {
            graph: Graph::new(rank, 1),
        }
    }

    /// The one-state automaton of the whole group.
    pub fn bouquet(rank: usize) -> Self {
        let mut g = Graph::new(rank, 1);
        for d in 0..rank {
            g.link(0, d, 0);
        }
        StallingsAutomaton { graph: g }
    }

    pub fn rank(&self) -> usize {
        self.graph.rank
    }

    pub fn state_count(&self) -> usize {
        self.graph.len()
    }

    pub fn origin(&self) -> usize {
        0
    }

    /// Number of positive edges.
    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Rank of the subgroup (edges minus states plus one).
    pub fn subgroup_rank(&self) -> usize {
        self.edge_count() + 1 - self.state_count()
    }

    pub fn target(&self, state: usize, letter: Letter) -> Option<usize> {
        if letter.generator() as usize >= self.rank() || state >= self.state_count() {
            return None;
        }
        self.graph.target(state, letter.index(self.rank()))
    }

    /// All positive edges `(from, generator, to)` in state order.
    pub fn edges(&self) -> Vec<(usize, u32, usize)> {
        let mut out = Vec::new();
        for v in 0..self.state_count() {
            for d in 0..self.rank() {
                if let Some(w) = self.graph.target(v, d) {
                    out.push((v, d as u32, w));
                }
            }
        }
        out
    }

    /// End state of the path from `state` labeled `u`, if it exists.
    pub fn read(&self, state: usize, u: &Word) -> Option<usize> {
        if u.rank() != self.rank() {
            return None;
        }
        self.graph.read(state, u.letters())
    }

    /// Membership: `u` labels a closed path at the origin.
    pub fn contains(&self, u: &Word) -> bool {
        self.read(0, u) == Some(0)
    }

    /// True when `u` labels a closed path at `state`.
    pub fn loops_at(&self, state: usize, u: &Word) -> bool {
        self.read(state, u) == Some(state)
    }

    /// States at which `u` labels a closed path.
    pub fn loop_states(&self, u: &Word) -> Vec<usize> {
        (0..self.state_count())
            .filter(|&p| self.loops_at(p, u))
            .collect()
    }

    /// True when some conjugate of `u` lies in the subgroup.
    pub fn contains_conjugate(&self, u: &Word) -> bool {
        let (core, _) = u.cyclic_core();
        !self.loop_states(&core).is_empty()
    }

    /// True for the one-state automaton with a loop for every generator.
    pub fn is_bouquet(&self) -> bool {
        *self == StallingsAutomaton::bouquet(self.rank())
    }

    /// Label of a shortest path from the origin to each state.
    pub fn geodesics(&self) -> Vec<Word> {
        self.graph
            .geodesics(0)
            .into_iter()
            .map(|w| w.expect("automaton is connected"))
            .collect()
    }

    /// A free basis read off a breadth-first spanning tree: one generator
    /// `u_p x u_q⁻¹` per non-tree edge `p --x--> q`.
    pub fn generators(&self) -> Vec<Word> {
        let geo = self.geodesics();
        let rank = self.rank();
        let mut out = Vec::new();
        for (p, x, q) in self.edges() {
            let step = Word::reduce_unchecked([Letter::positive(x)], rank);
            let via = geo[p].mul_unchecked(&step);
            if via != geo[q] {
                out.push(via.mul_unchecked(&geo[q].invert()));
            }
        }
        out
    }

    /// Structural equality of canonical forms, which decides equality of
    /// the recognised subgroups.
    pub fn equal_subgroups(&self, other: &StallingsAutomaton) -> bool {
        self == other
    }

    /// True when `pattern` maps injectively into this automaton with its
    /// origin sent to `state`.
    pub fn embeds_at(&self, state: usize, pattern: &StallingsAutomaton) -> bool {
        self.graph.embeds(state, &pattern.graph, 0)
    }

    /// Same subgroup with the origin moved to `state`, i.e. the conjugate
    /// `g⁻¹ H g` where `g` labels a path from the origin to `state`.
    pub fn rerooted(&self, state: usize) -> StallingsAutomaton {
        let mut g = self.graph.clone();
        g.origin = state;
        StallingsAutomaton::from_graph(g)
    }

    /// The cyclically reduced core: the origin is moved along its stem to the
    /// first state of degree at least two. Returns the core automaton and the
    /// stem label `s`, so that the subgroup equals `s K' s⁻¹`.
    pub fn core(&self) -> (StallingsAutomaton, Word) {
        let g = &self.graph;
        let mut v = 0;
        let mut letters = Vec::new();
        let mut back: Option<usize> = None;
        loop {
            let stem_degree = if back.is_none() { 1 } else { 2 };
            if g.degree(v) != stem_degree {
                break;
            }
            let d = (0..g.dirs())
                .find(|&d| g.target(v, d).is_some() && Some(d) != back)
                .expect("a stem vertex has a forward edge");
            letters.push(Letter::from_index(d, g.rank));
            back = Some(g.inv_dir(d));
            v = g.target(v, d).expect("checked");
        }
        let stem = Word::reduce_unchecked(letters, g.rank);
        (self.rerooted(v), stem)
    }

    /// Rank-2 guard shared by the singularity-based queries.
    pub(crate) fn require_rank2(&self) -> Result<()> {
        if self.rank() != 2 {
            return Err(Error::UnsupportedRank(self.rank()));
        }
        Ok(())
    }
}
