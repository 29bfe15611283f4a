//! Singularities, bridges and homogeneous-path metrics of rank-2 automata.

use serde::{Deserialize, Serialize};

use super::StallingsAutomaton;
use crate::error::Result;
use crate::graph::Graph;
use crate::words::{Letter, Word};

const A: usize = 0;
const B: usize = 1;
const A_INV: usize = 2;
const B_INV: usize = 3;

/// Sources (outgoing `a` and `b`) and sinks (incoming `a` and `b`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityProfile {
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub sigma: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricBundle {
    pub hc: usize,
    pub hcfp: usize,
    pub shcfp: usize,
    pub delta0: usize,
    pub delta: usize,
    pub zeta: usize,
}

/// A maximal positive path between marked states with unmarked interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bridge {
    pub start: usize,
    pub end: usize,
    pub label: Word,
}

pub(crate) fn is_source(g: &Graph, v: usize) -> bool {
    g.target(v, A).is_some() && g.target(v, B).is_some()
}

pub(crate) fn is_sink(g: &Graph, v: usize) -> bool {
    g.target(v, A_INV).is_some() && g.target(v, B_INV).is_some()
}

pub(crate) fn is_singular(g: &Graph, v: usize) -> bool {
    is_source(g, v) || is_sink(g, v)
}

/// Singular states together with the origin, in increasing order.
pub(crate) fn marked(g: &Graph) -> Vec<usize> {
    (0..g.len())
        .filter(|&v| v == g.origin || is_singular(g, v))
        .collect()
}

pub(crate) fn sigma(g: &Graph) -> usize {
    let count: usize = (0..g.len())
        .map(|v| is_source(g, v) as usize + is_sink(g, v) as usize)
        .sum();
    count.max(1)
}

/// Orbits of the partial injection of one positive letter: chains as vertex
/// lists from tail to head, cycles as vertex lists in traversal order.
fn letter_orbits(g: &Graph, d: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let inv = g.inv_dir(d);
    let mut seen = vec![false; g.len()];
    let mut chains = Vec::new();
    for v in 0..g.len() {
        if g.target(v, inv).is_none() && g.target(v, d).is_some() {
            let mut chain = vec![v];
            seen[v] = true;
            let mut w = v;
            while let Some(x) = g.target(w, d) {
                chain.push(x);
                seen[x] = true;
                w = x;
            }
            chains.push(chain);
        }
    }
    let mut cycles = Vec::new();
    for v in 0..g.len() {
        if seen[v] || g.target(v, d).is_none() {
            continue;
        }
        let mut cycle = vec![v];
        seen[v] = true;
        let mut w = g.target(v, d).expect("checked");
        while w != v {
            cycle.push(w);
            seen[w] = true;
            w = g.target(w, d).expect("a non-chain orbit is a cycle");
        }
        cycles.push(cycle);
    }
    (chains, cycles)
}

pub(crate) fn metrics_of(g: &Graph) -> MetricBundle {
    let mut hc = 0;
    let mut hcfp = 0;
    let mut shcfp = 0;
    let starts = |v: usize| v == g.origin || is_source(g, v);
    let ends = |v: usize| v == g.origin || is_sink(g, v);
    for d in [A, B] {
        let (chains, cycles) = letter_orbits(g, d);
        for chain in &chains {
            hcfp = hcfp.max(chain.len() - 1);
            for (i, &s) in chain.iter().enumerate() {
                if !starts(s) {
                    continue;
                }
                for (j, &e) in chain.iter().enumerate().skip(i + 1) {
                    if ends(e) {
                        shcfp = shcfp.max(j - i);
                    }
                }
            }
        }
        for cycle in &cycles {
            let c = cycle.len();
            hc = hc.max(c);
            hcfp = hcfp.max(c - 1);
            for i in 0..c {
                if !starts(cycle[i]) {
                    continue;
                }
                for k in 1..c {
                    if ends(cycle[(i + k) % c]) {
                        shcfp = shcfp.max(k);
                    }
                }
            }
        }
    }
    let delta0 = sigma(g).max(hc);
    MetricBundle {
        hc,
        hcfp,
        shcfp,
        delta0,
        delta: delta0.max(hcfp),
        zeta: delta0.max(shcfp),
    }
}

impl StallingsAutomaton {
    pub fn singularity_profile(&self) -> Result<SingularityProfile> {
        self.require_rank2()?;
        let g = &self.graph;
        Ok(SingularityProfile {
            sources: (0..g.len()).filter(|&v| is_source(g, v)).collect(),
            sinks: (0..g.len()).filter(|&v| is_sink(g, v)).collect(),
            sigma: sigma(g),
        })
    }

    pub fn metrics(&self) -> Result<MetricBundle> {
        self.require_rank2()?;
        Ok(metrics_of(&self.graph))
    }

    /// Decomposes the positive edges into bridges, ordered by start state and
    /// first letter.
    pub fn bridge_decomposition(&self) -> Result<Vec<Bridge>> {
        self.require_rank2()?;
        let g = &self.graph;
        let mark: Vec<bool> = (0..g.len())
            .map(|v| v == g.origin || is_singular(g, v))
            .collect();
        let mut out = Vec::new();
        for s in (0..g.len()).filter(|&v| mark[v]) {
            for d in [A, B] {
                let Some(mut v) = g.target(s, d) else {
                    continue;
                };
                let mut letters = vec![Letter::positive(d as u32)];
                while !mark[v] {
                    let d = if g.target(v, A).is_some() { A } else { B };
                    letters.push(Letter::positive(d as u32));
                    v = g.target(v, d).expect("interior states have an out-edge");
                }
                out.push(Bridge {
                    start: s,
                    end: v,
                    label: Word::reduce_unchecked(letters, 2),
                });
            }
        }
        Ok(out)
    }
}
