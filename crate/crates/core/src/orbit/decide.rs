//! Problems (1)–(4) and their conjugacy variants over a rational set of
//! Σ-words.

use std::collections::VecDeque;

use rayon::prelude::*;

use super::rational::{SigmaRational, SIGMA_ALPHABET};
use super::{Decision, Stats, Witness};
use crate::dynamics::{
    choose_t, closure_system, sigma_apply_word, truncate, Alphabet, Limits, SigmaLetter,
    TransitionSystem, TruncatedAutomaton,
};
use crate::error::{Error, Result};
use crate::stallings::metrics::marked;
use crate::stallings::StallingsAutomaton;
use crate::words::Word;

/// A question about `μ(H)` for `μ` ranging over a rational set.
#[derive(Clone, Debug)]
pub enum Problem {
    /// (1) `u ∈ μ(H)`.
    Element(Word),
    /// (1') some conjugate of `u` lies in `μ(H)`.
    ElementConjugate(Word),
    /// (2) `K ⊆ μ(H)`.
    Subgroup(StallingsAutomaton),
    /// (2') some conjugate of `K` lies in `μ(H)`.
    SubgroupConjugate(StallingsAutomaton),
    /// (3) `K = μ(H)`.
    Equal(StallingsAutomaton),
    /// (3') some conjugate of `K` equals `μ(H)`.
    EqualConjugate(StallingsAutomaton),
    /// (4) every `uᵢ` has a conjugate in `μ(H)`, with independent conjugators.
    Conjugates(Vec<Word>),
}

impl Problem {
    pub fn kind(&self) -> &'static str {
        match self {
            Problem::Element(_) => "1",
            Problem::ElementConjugate(_) => "1'",
            Problem::Subgroup(_) => "2",
            Problem::SubgroupConjugate(_) => "2'",
            Problem::Equal(_) => "3",
            Problem::EqualConjugate(_) => "3'",
            Problem::Conjugates(_) => "4",
        }
    }

    fn check_rank(&self) -> Result<()> {
        let bad = match self {
            Problem::Element(u) | Problem::ElementConjugate(u) => u.rank(),
            Problem::Conjugates(us) => us.iter().map(|u| u.rank()).find(|&r| r != 2).unwrap_or(2),
            Problem::Subgroup(k)
            | Problem::SubgroupConjugate(k)
            | Problem::Equal(k)
            | Problem::EqualConjugate(k) => k.rank(),
        };
        if bad != 2 {
            return Err(Error::UnsupportedRank(bad));
        }
        Ok(())
    }
}

/// How a word must sit in the automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopMode {
    /// A loop at the origin: membership.
    AtOrigin,
    /// A loop at any state: some conjugate is a member.
    Conjugate,
}

/// The terminal condition on truncations, and how to confirm it on the
/// full automaton.
enum Check {
    AtOrigin(Vec<Word>),
    /// Cyclic cores, each with the conjugator `c` such that `u = c⁻¹·core·c`.
    Anywhere(Vec<(Word, Word)>),
    /// Generators of the core of `K`, with the stem `s` of `K = s K' s⁻¹`.
    Common(Vec<Word>, Word),
    Key(Vec<u8>, StallingsAutomaton),
    Embeds(StallingsAutomaton, Word, StallingsAutomaton),
    Never,
}

impl Check {
    fn on_truncation(&self, ta: &TruncatedAutomaton) -> bool {
        match self {
            Check::AtOrigin(ws) => ws.iter().all(|w| ta.loops_at_origin(w)),
            Check::Anywhere(ws) => ws.iter().all(|(c, _)| !ta.loop_states(c).is_empty()),
            Check::Common(ws, _) => {
                (0..ta.state_count()).any(|p| ws.iter().all(|w| ta.read(p, w) == Some(p)))
            }
            Check::Key(key, _) => ta.canonical_key() == key.as_slice(),
            Check::Embeds(core, _, _) => (0..ta.state_count()).any(|p| ta.embeds_at(core, p)),
            Check::Never => false,
        }
    }

    /// Confirms the condition on `f = A(μ(H))` and returns the conjugators.
    fn confirm(&self, f: &StallingsAutomaton) -> Vec<Word> {
        let geo = f.geodesics();
        match self {
            Check::AtOrigin(ws) => {
                assert!(
                    ws.iter().all(|w| f.contains(w)),
                    "membership witness failed"
                );
                Vec::new()
            }
            Check::Anywhere(ws) => ws
                .iter()
                .map(|(core, conj)| {
                    let p = *f
                        .loop_states(core)
                        .first()
                        .expect("conjugacy witness failed");
                    let w = conj.invert().mul_unchecked(&geo[p].invert());
                    let u = conj.invert().mul_unchecked(core).mul_unchecked(conj);
                    assert!(f.contains(&w.invert().mul_unchecked(&u).mul_unchecked(&w)));
                    w
                })
                .collect(),
            Check::Common(ws, stem) => {
                let p = (0..f.state_count())
                    .find(|&p| ws.iter().all(|w| f.loops_at(p, w)))
                    .expect("common loop witness failed");
                vec![stem.mul_unchecked(&geo[p].invert())]
            }
            Check::Key(_, k) => {
                assert_eq!(f, k, "equality witness failed");
                Vec::new()
            }
            Check::Embeds(core, stem, k) => {
                let p = (0..f.state_count())
                    .find(|&p| f.embeds_at(p, core))
                    .expect("conjugate equality witness failed");
                let w = stem.mul_unchecked(&geo[p].invert());
                let conj = crate::endo2::Endo2::inner(&w);
                assert_eq!(&conj.image_subgroup(k).expect("rank 2"), f);
                vec![w]
            }
            Check::Never => unreachable!(),
        }
    }
}

fn plan(problem: &Problem, h: &StallingsAutomaton) -> Result<(usize, Check)> {
    Ok(match problem {
        Problem::Element(u) => (
            choose_t(h, std::slice::from_ref(u))?,
            Check::AtOrigin(vec![u.clone()]),
        ),
        Problem::ElementConjugate(u) => {
            let (core, conj) = u.cyclic_core();
            (
                choose_t(h, std::slice::from_ref(&core))?,
                Check::Anywhere(vec![(core, conj)]),
            )
        }
        Problem::Conjugates(us) => {
            let cores: Vec<(Word, Word)> = us.iter().map(|u| u.cyclic_core()).collect();
            let words: Vec<Word> = cores.iter().map(|(c, _)| c.clone()).collect();
            (choose_t(h, &words)?, Check::Anywhere(cores))
        }
        Problem::Subgroup(k) => {
            let gens = k.generators();
            (choose_t(h, &gens)?, Check::AtOrigin(gens))
        }
        Problem::SubgroupConjugate(k) => {
            let (core, stem) = k.core();
            let gens = core.generators();
            (choose_t(h, &gens)?, Check::Common(gens, stem))
        }
        Problem::Equal(k) => {
            let dist = k.graph.distances(&marked(&k.graph));
            let ecc = dist.into_iter().max().unwrap_or(0);
            let t = choose_t(h, &[])?.max(ecc + 1);
            let key = truncate(k, t)?.canonical_key().to_vec();
            (t, Check::Key(key, k.clone()))
        }
        Problem::EqualConjugate(k) => {
            let (core, stem) = k.core();
            let t = choose_t(h, &core.generators())?;
            if k.subgroup_rank() != h.subgroup_rank() {
                (t, Check::Never)
            } else {
                (t, Check::Embeds(core, stem, k.clone()))
            }
        }
    })
}

fn alphabet_for(r: &SigmaRational) -> Alphabet {
    let uses_x = (0..r.state_count()).any(|p| r.transitions_from(p).any(|(c, _)| c == 'X'));
    if uses_x {
        Alphabet::Sigma
    } else {
        Alphabet::Sigma0
    }
}

/// Shortest word accepted by both the closure (with `terminal` states) and `r`.
fn product_search(
    ts: &TransitionSystem,
    terminal: &[bool],
    r: &SigmaRational,
) -> Option<Vec<SigmaLetter>> {
    let width = r.state_count();
    let idx = |s: usize, q: usize| s * width + q;
    let mut parent: Vec<Option<(usize, SigmaLetter)>> = vec![None; ts.state_count() * width];
    let mut seen = vec![false; ts.state_count() * width];
    let start = idx(0, r.initial());
    seen[start] = true;
    let mut queue = VecDeque::from([(0usize, r.initial())]);
    while let Some((s, q)) = queue.pop_front() {
        if terminal[s] && r.is_accepting(q) {
            let mut out = Vec::new();
            let mut at = idx(s, q);
            while let Some((prev, l)) = parent[at] {
                out.push(l);
                at = prev;
            }
            out.reverse();
            return Some(out);
        }
        for (l, s2) in ts.successors(s) {
            let mut targets: Vec<usize> = r
                .transitions_from(q)
                .filter(|&(c, _)| c == l.to_char())
                .map(|(_, q2)| q2)
                .collect();
            targets.sort_unstable();
            for q2 in targets {
                let i = idx(s2, q2);
                if !seen[i] {
                    seen[i] = true;
                    parent[i] = Some((idx(s, q), l));
                    queue.push_back((s2, q2));
                }
            }
        }
    }
    None
}

/// Decides whether some `μ` accepted by `r` satisfies the problem's
/// condition on `μ(H)`; a yes answer carries a shortest such `μ`.
pub fn decide_rational(
    problem: &Problem,
    h: &StallingsAutomaton,
    r: &SigmaRational,
    limits: Limits,
) -> Result<Decision> {
    h.require_rank2()?;
    problem.check_rank()?;
    if r.alphabet() != SIGMA_ALPHABET {
        return Err(Error::invalid("the rational set must be over S, I, X"));
    }
    let (t, check) = plan(problem, h)?;
    if matches!(check, Check::Never) || r.is_empty() {
        return Ok(Decision {
            answer: false,
            witness: None,
            stats: Stats { states: 0, t },
        });
    }
    let ts = closure_system(h, t, alphabet_for(r), limits)?;
    let terminal: Vec<bool> = ts
        .states()
        .par_iter()
        .map(|s| check.on_truncation(s))
        .collect();
    let stats = Stats {
        states: ts.state_count(),
        t,
    };
    let Some(sigma) = product_search(&ts, &terminal, r) else {
        return Ok(Decision {
            answer: false,
            witness: None,
            stats,
        });
    };
    let full = sigma_apply_word(h, &sigma)?;
    let conjugators = check.confirm(&full);
    Ok(Decision {
        answer: true,
        witness: Some(Witness::rational(sigma, conjugators)),
        stats,
    })
}

/// The Σ-words `μ` with `u ∈ μ(H)`, or with a conjugate of `u` in `μ(H)`.
pub fn witness_language(
    u: &Word,
    h: &StallingsAutomaton,
    mode: LoopMode,
    limits: Limits,
) -> Result<SigmaRational> {
    h.require_rank2()?;
    if u.rank() != 2 {
        return Err(Error::UnsupportedRank(u.rank()));
    }
    let problem = match mode {
        LoopMode::AtOrigin => Problem::Element(u.clone()),
        LoopMode::Conjugate => Problem::ElementConjugate(u.clone()),
    };
    let (t, check) = plan(&problem, h)?;
    let ts = closure_system(h, t, Alphabet::Sigma, limits)?;
    let mut out = SigmaRational::new(&SIGMA_ALPHABET, ts.state_count(), 0);
    for s in 0..ts.state_count() {
        out.set_accepting(s, check.on_truncation(ts.state(s)));
        for (l, s2) in ts.successors(s) {
            out.add_transition(s, l.to_char(), s2)?;
        }
    }
    Ok(out)
}
