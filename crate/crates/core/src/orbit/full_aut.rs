//! Does some automorphism of `F₂` map `u` into `H`?

use std::sync::Mutex;

use rayon::prelude::*;

use super::{Decision, Stats, Witness};
use crate::dynamics::{choose_t, closure_system, sigma_apply_word, Alphabet, Limits, SigmaLetter};
use crate::endo2::{prefix_automorphisms, Endo2, PhiGen, Psi};
use crate::error::{Error, Result};
use crate::stallings::StallingsAutomaton;
use crate::words::{Letter, Word};

const LCM_CAP: usize = 1_000_000;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `lcm(1, …, k)`, or `None` past the cap.
fn lcm_upto(k: usize) -> Option<usize> {
    let mut m = 1usize;
    for i in 2..=k {
        m = m / gcd(m, i) * i;
        if m > LCM_CAP {
            return None;
        }
    }
    Some(m)
}

/// Least rotation starting with `b` or ending with `b⁻¹`.
fn normalize(core: &Word) -> Word {
    let b = Letter::positive(1);
    (0..core.len())
        .map(|k| core.rotate(k))
        .find(|r| r.letters().first() == Some(&b) || r.letters().last() == Some(&b.inv()))
        .unwrap_or_else(|| core.clone())
}

struct Found {
    n: u64,
    sigma: Vec<SigmaLetter>,
    stats: Stats,
}

/// One `(p, ψ)` branch: searches `n` and a Σ₀-word.
fn branch(
    u: &Word,
    h: &StallingsAutomaton,
    prefix: &Endo2,
    psi: Psi,
    limits: Limits,
) -> Result<(Option<Found>, Stats)> {
    let h2 = psi.endo().image_subgroup(h)?;
    let u2 = prefix.apply(u);
    let (core, _) = u2.cyclic_core();
    let phi = PhiGen::AppendAToB.endo();
    let count = if core.uses_only(&[0]) {
        1
    } else {
        let m = h2.metrics()?;
        let lcm = lcm_upto(m.delta0).ok_or(Error::ResourceLimit {
            what: "lcm bound",
            cap: LCM_CAP,
        })?;
        u2.len() + lcm.max(m.delta)
    };
    let mut words = Vec::with_capacity(count);
    let mut x = normalize(&core);
    for _ in 0..count {
        let v = x.cyclic_core().0;
        if v.len() > limits.max_aut_size {
            return Err(Error::ResourceLimit {
                what: "orbit word length",
                cap: limits.max_aut_size,
            });
        }
        words.push(v);
        x = phi.apply(&x);
    }
    let t = choose_t(&h2, &words)?;
    let ts = closure_system(&h2, t, Alphabet::Sigma0, limits)?;
    let stats = Stats {
        states: ts.state_count(),
        t,
    };
    for (n, v) in words.iter().enumerate() {
        if let Some(s) = (0..ts.state_count()).find(|&s| !ts.state(s).loop_states(v).is_empty()) {
            let found = Found {
                n: n as u64,
                sigma: ts.path_to(s),
                stats,
            };
            return Ok((Some(found), stats));
        }
    }
    Ok((None, stats))
}

/// Builds and checks `θ = ψ⁻¹ ∘ μ⁻¹ ∘ λ_w ∘ φ_{a,ba}ⁿ ∘ p` with `θ(u) ∈ H`.
fn assemble(
    u: &Word,
    h: &StallingsAutomaton,
    prefix: &Endo2,
    psi: Psi,
    found: &Found,
) -> Result<Witness> {
    let h2 = psi.endo().image_subgroup(h)?;
    let full = sigma_apply_word(&h2, &found.sigma)?;
    let phi_n = (0..found.n).fold(Endo2::identity(), |acc, _| {
        PhiGen::AppendAToB.endo().compose(&acc)
    });
    let x = phi_n.apply(&prefix.apply(u));
    let (core, conj) = x.cyclic_core();
    let p = *full
        .loop_states(&core)
        .first()
        .expect("loop found on the truncation");
    let g = full.geodesics()[p].clone();
    let w = conj.invert().mul_unchecked(&g.invert());
    let mu_inv = SigmaLetter::word_endo(&found.sigma).invert()?;
    let theta = psi
        .inverse()
        .endo()
        .compose(&mu_inv)
        .compose(&Endo2::inner(&w))
        .compose(&phi_n)
        .compose(prefix);
    assert!(h.contains(&theta.apply(u)), "orbit witness failed");
    Ok(Witness {
        sigma: found.sigma.clone(),
        psi,
        prefix: prefix.clone(),
        n: found.n,
        conjugators: vec![w],
        automorphism: theta,
    })
}

/// Decides whether `φ(u) ∈ H` for some `φ ∈ Aut F₂`.
pub fn decide_full_aut(u: &Word, h: &StallingsAutomaton, limits: Limits) -> Result<Decision> {
    h.require_rank2()?;
    if u.rank() != 2 {
        return Err(Error::UnsupportedRank(u.rank()));
    }
    if u.is_identity() {
        return Ok(Decision {
            answer: true,
            witness: Some(Witness::rational(Vec::new(), Vec::new())),
            stats: Stats::default(),
        });
    }
    let branches: Vec<(Endo2, Psi)> = prefix_automorphisms()
        .into_iter()
        .flat_map(|p| Psi::all().into_iter().map(move |psi| (p.clone(), psi)))
        .collect();
    let explored: Mutex<Vec<Stats>> = Mutex::new(Vec::new());
    let first = branches
        .par_iter()
        .enumerate()
        .map(|(i, (p, psi))| branch(u, h, p, *psi, limits).map(|r| (i, r)))
        .find_map_first(|r| match r {
            Ok((i, (Some(found), _))) => Some(Ok((i, found))),
            Ok((_, (None, stats))) => {
                explored.lock().expect("poisoned").push(stats);
                None
            }
            Err(e) => Some(Err(e)),
        });
    match first {
        Some(Ok((i, found))) => {
            let (p, psi) = &branches[i];
            Ok(Decision {
                answer: true,
                witness: Some(assemble(u, h, p, *psi, &found)?),
                stats: found.stats,
            })
        }
        Some(Err(e)) => Err(e),
        None => {
            let all = explored.into_inner().expect("poisoned");
            Ok(Decision {
                answer: false,
                witness: None,
                stats: Stats {
                    states: all.iter().map(|s| s.states).sum(),
                    t: all.iter().map(|s| s.t).max().unwrap_or(0),
                },
            })
        }
    }
}

/// Does `H` contain a primitive element?
pub fn contains_primitive(h: &StallingsAutomaton, limits: Limits) -> Result<Decision> {
    decide_full_aut(&crate::words::w2("a"), h, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::fold_generators;
    use crate::words::w2;

    fn fold(gens: &[&str]) -> StallingsAutomaton {
        let gens: Vec<Word> = gens.iter().map(|g| w2(g)).collect();
        fold_generators(2, &gens).unwrap()
    }

    fn full(u: &str, h: &[&str]) -> Decision {
        decide_full_aut(&w2(u), &fold(h), Limits::default()).unwrap()
    }

    #[test]
    fn lcm_values() {
        assert_eq!(lcm_upto(1), Some(1));
        assert_eq!(lcm_upto(4), Some(12));
        assert_eq!(lcm_upto(16), Some(720_720));
        assert_eq!(lcm_upto(17), None);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize(&w2("aab")), w2("baa"));
        assert_eq!(normalize(&w2("aBa")), w2("aaB"));
    }

    #[test]
    fn examples() {
        assert!(full("a", &["aa", "b"]).answer);
        assert!(!full("a", &["abAB"]).answer);
        assert!(full("a", &["bab"]).answer);
        assert!(full("1", &["abAB"]).answer);
    }

    #[test]
    fn witness_maps_into_the_subgroup() {
        for (u, h) in [("a", &["bab"][..]), ("ab", &["aab", "bb"]), ("aB", &["Ba"])] {
            let d = full(u, h);
            assert!(d.answer, "{u}");
            let theta = d.witness.unwrap().automorphism;
            assert!(theta.is_automorphism());
            assert!(fold(h).contains(&theta.apply(&w2(u))));
        }
    }

    #[test]
    fn contains_primitive_examples() {
        let lim = Limits::default();
        assert!(contains_primitive(&fold(&["aa", "b"]), lim).unwrap().answer);
        assert!(!contains_primitive(&fold(&["aabb"]), lim).unwrap().answer);
        assert!(contains_primitive(&fold(&["a", "b"]), lim).unwrap().answer);
    }
}
