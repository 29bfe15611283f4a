//! The finite transition system of truncations reachable under Σ or Σ₀.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use super::{truncate, truncated_step, SigmaLetter, TruncatedAutomaton};
use crate::error::{Error, Result};
use crate::stallings::StallingsAutomaton;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `{S, I, X}`.
    Sigma,
    /// `{S, I}`, the Σ-words without `X`.
    Sigma0,
}

impl Alphabet {
    pub fn letters(self) -> &'static [SigmaLetter] {
        match self {
            Alphabet::Sigma => &[SigmaLetter::S, SigmaLetter::I, SigmaLetter::X],
            Alphabet::Sigma0 => &[SigmaLetter::S, SigmaLetter::I],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
    pub max_aut_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 1_000_000,
            max_aut_size: 10_000,
        }
    }
}

/// Reachable truncations with their Σ-transitions. State 0 is the
/// truncation of the starting automaton; states are numbered breadth-first.
#[derive(Clone, Debug)]
pub struct TransitionSystem {
    alphabet: Alphabet,
    t: usize,
    states: Vec<TruncatedAutomaton>,
    transitions: Vec<Vec<usize>>,
    parents: Vec<Option<(usize, SigmaLetter)>>,
}

impl TransitionSystem {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[TruncatedAutomaton] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &TruncatedAutomaton {
        &self.states[i]
    }

    pub fn target(&self, state: usize, letter: SigmaLetter) -> Option<usize> {
        let i = self.alphabet.letters().iter().position(|&l| l == letter)?;
        Some(self.transitions[state][i])
    }

    /// Successors in alphabet order.
    pub fn successors(&self, state: usize) -> impl Iterator<Item = (SigmaLetter, usize)> + '_ {
        self.alphabet
            .letters()
            .iter()
            .copied()
            .zip(self.transitions[state].iter().copied())
    }

    /// A shortest Σ-word leading from the initial state to `state`.
    pub fn path_to(&self, mut state: usize) -> Vec<SigmaLetter> {
        let mut out = Vec::new();
        while let Some((prev, l)) = self.parents[state] {
            out.push(l);
            state = prev;
        }
        out.reverse();
        out
    }

    /// States are labeled by a hash of their key; `expanded` also lists
    /// each truncation's edges.
    pub fn to_dot(&self, expanded: bool) -> String {
        let mut out = String::from("digraph closure {\n  node [shape=box];\n");
        for (i, s) in self.states.iter().enumerate() {
            let mut label = s.key_hash();
            if expanded {
                label.push_str(&format!("\\n{} states", s.state_count()));
                for (p, x, q) in s.edges() {
                    let c = if x == 0 { 'a' } else { 'b' };
                    label.push_str(&format!("\\n{p} -{c}-> {q}"));
                }
            }
            let peripheries = if i == 0 { 2 } else { 1 };
            let _ = writeln!(out, "  {i} [label=\"{label}\", peripheries={peripheries}];");
        }
        for i in 0..self.states.len() {
            for (l, j) in self.successors(i) {
                let _ = writeln!(out, "  {i} -> {j} [label=\"{}\"];", l.to_char());
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Explores every truncation reachable from `h`'s `t`-truncation.
pub fn closure_system(
    h: &StallingsAutomaton,
    t: usize,
    alphabet: Alphabet,
    limits: Limits,
) -> Result<TransitionSystem> {
    let init = truncate(h, t)?;
    if 2 * t <= init.zeta_bound() {
        return Err(Error::invalid(format!(
            "radius {t} is too small for zeta {}",
            init.zeta_bound()
        )));
    }
    let letters = alphabet.letters();
    let check_size = |ta: &TruncatedAutomaton| {
        if ta.state_count() > limits.max_aut_size {
            Err(Error::ResourceLimit {
                what: "truncated automaton size",
                cap: limits.max_aut_size,
            })
        } else {
            Ok(())
        }
    };
    check_size(&init)?;
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    index.insert(init.canonical_key().to_vec(), 0);
    let mut states = vec![init];
    let mut transitions: Vec<Vec<usize>> = vec![Vec::new()];
    let mut parents = vec![None];
    let mut frontier = vec![0usize];

    while !frontier.is_empty() {
        let layer: Vec<Result<Vec<TruncatedAutomaton>>> = frontier
            .par_iter()
            .map(|&s| {
                letters
                    .iter()
                    .map(|&l| truncated_step(&states[s], l))
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&s, succ) in frontier.iter().zip(layer) {
            for (&l, ta) in letters.iter().zip(succ?) {
                check_size(&ta)?;
                let id = match index.get(ta.canonical_key()) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= limits.max_states {
                            return Err(Error::ResourceLimit {
                                what: "transition system states",
                                cap: limits.max_states,
                            });
                        }
                        let id = states.len();
                        index.insert(ta.canonical_key().to_vec(), id);
                        states.push(ta);
                        transitions.push(Vec::new());
                        parents.push(Some((s, l)));
                        next.push(id);
                        id
                    }
                };
                transitions[s].push(id);
            }
        }
        frontier = next;
    }

    Ok(TransitionSystem {
        alphabet,
        t,
        states,
        transitions,
        parents,
    })
}
