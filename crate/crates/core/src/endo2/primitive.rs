//! Primitive elements of F₂.

use super::{Endo2, PhiGen, Psi};
use crate::error::{Error, Result};
use crate::words::Word;

/// Outcome of [`is_positive_primitive`] for a primitive word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositivePrimitive {
    /// The word is the letter `b`.
    B,
    /// `φ₁ ∘ … ∘ φₖ (a)` equals the word.
    Phi(Vec<PhiGen>),
}

/// `u = λ_w ψ (φ₁ ∘ … ∘ φₖ)(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveWitness {
    pub w: Word,
    pub psi: Psi,
    pub phi: Vec<PhiGen>,
}

impl PrimitiveWitness {
    /// The automorphism `λ_w ∘ ψ ∘ φ₁ ∘ … ∘ φₖ`, which maps `a` to the word.
    pub fn endo(&self) -> Endo2 {
        Endo2::inner(&self.w)
            .compose(&self.psi.endo())
            .compose(&PhiGen::product(&self.phi))
    }

    /// Inverse of [`PrimitiveWitness::endo`].
    pub fn inverse_endo(&self) -> Endo2 {
        PhiGen::inverse_product(&self.phi)
            .compose(&self.psi.inverse().endo())
            .compose(&Endo2::inner(&self.w.invert()))
    }
}

const LA: u8 = 0;
const LB: u8 = 1;

/// Cyclic run lengths of `x` between occurrences of the other letter.
fn cyclic_runs(w: &[u8], x: u8) -> Vec<usize> {
    let Some(start) = w.iter().position(|&c| c != x) else {
        return vec![w.len()];
    };
    let mut runs = Vec::new();
    let mut run = 0;
    for i in 1..=w.len() {
        let c = w[(start + i) % w.len()];
        if c == x {
            run += 1;
        } else {
            runs.push(run);
            run = 0;
        }
    }
    runs
}

/// Necessary condition: one letter is cyclically isolated and the runs of
/// the other take at most two consecutive values.
fn balanced_pattern(w: &[u8]) -> bool {
    let isolated = |x: u8| cyclic_runs(w, x).iter().all(|&r| r <= 1);
    let two_values = |x: u8| {
        let runs = cyclic_runs(w, x);
        let lo = runs.iter().min().copied().unwrap_or(0);
        runs.iter().all(|&r| r == lo || r == lo + 1)
    };
    (isolated(LB) && two_values(LA)) || (isolated(LA) && two_values(LB))
}

fn has_pair(w: &[u8], x: u8) -> bool {
    w.windows(2).any(|p| p[0] == x && p[1] == x)
}

/// One descent step: the preimage of `w` under some Φ generator, if any.
fn peel(w: &[u8]) -> Option<(PhiGen, Vec<u8>)> {
    let first = w[0];
    let last = w[w.len() - 1];
    let drop_after = |lead: u8, gone: u8| {
        let mut out = Vec::with_capacity(w.len());
        let mut skip = false;
        for &c in w {
            if skip {
                skip = false;
                debug_assert_eq!(c, gone);
                continue;
            }
            out.push(c);
            skip = c == lead;
        }
        out
    };
    let drop_before = |lead: u8, gone: u8| {
        let mut out: Vec<u8> = Vec::with_capacity(w.len());
        for &c in w {
            if c == lead {
                let popped = out.pop();
                debug_assert_eq!(popped, Some(gone));
            }
            out.push(c);
        }
        out
    };
    if !has_pair(w, LB) && last != LB {
        return Some((PhiGen::AppendAToB, drop_after(LB, LA)));
    }
    if !has_pair(w, LB) && first != LB {
        return Some((PhiGen::PrependAToB, drop_before(LB, LA)));
    }
    if !has_pair(w, LA) && last != LA {
        return Some((PhiGen::AppendBToA, drop_after(LA, LB)));
    }
    if !has_pair(w, LA) && first != LA {
        return Some((PhiGen::PrependBToA, drop_before(LA, LB)));
    }
    None
}

/// Decides whether a nonempty positive word is primitive by peeling Φ
/// generators until a letter remains.
pub fn is_positive_primitive(u: &Word) -> Result<Option<PositivePrimitive>> {
    if u.rank() != 2 {
        return Err(Error::UnsupportedRank(u.rank()));
    }
    if u.is_empty() || !u.is_positive() {
        return Err(Error::invalid(format!(
            "expected a nonempty positive word, got {u}"
        )));
    }
    let mut w: Vec<u8> = u.letters().iter().map(|l| l.generator() as u8).collect();
    if w.len() > 1 && !balanced_pattern(&w) {
        return Ok(None);
    }
    let mut seq = Vec::new();
    loop {
        if w == [LA] {
            return Ok(Some(PositivePrimitive::Phi(seq)));
        }
        if w == [LB] {
            let Some(last) = seq.pop() else {
                return Ok(Some(PositivePrimitive::B));
            };
            // The last peel mapped b to ba or ab; reach that word from a instead.
            seq.push(match last {
                PhiGen::AppendAToB => PhiGen::PrependBToA,
                PhiGen::PrependAToB => PhiGen::AppendBToA,
                _ => unreachable!("a peel that fixes b cannot produce b"),
            });
            return Ok(Some(PositivePrimitive::Phi(seq)));
        }
        if w.iter().all(|&c| c == w[0]) {
            return Ok(None);
        }
        let Some((gen, next)) = peel(&w) else {
            return Ok(None);
        };
        debug_assert!(next.len() < w.len());
        seq.push(gen);
        w = next;
    }
}

/// Decides primitivity of any word and, when primitive, returns a witness
/// `u = λ_w ψ (φ₁ ∘ … ∘ φₖ)(a)`.
pub fn is_primitive(u: &Word) -> Option<PrimitiveWitness> {
    if u.rank() != 2 {
        return None;
    }
    let (core, conj) = u.cyclic_core();
    if core.is_identity() {
        return None;
    }
    for psi in Psi::all() {
        let v = psi.inverse().apply(&core);
        if !v.is_positive() {
            continue;
        }
        for k in 0..v.len() {
            let s = v.rotate(k);
            let Ok(Some(found)) = is_positive_primitive(&s) else {
                continue;
            };
            // v = x s x⁻¹ with x the first k letters.
            let x = Word::reduce_unchecked(v.letters()[..k].iter().copied(), 2);
            let w = psi.apply(&x).invert().mul_unchecked(&conj);
            let (psi, phi) = match found {
                PositivePrimitive::B => (psi.after_swap(), Vec::new()),
                PositivePrimitive::Phi(seq) => (psi, seq),
            };
            return Some(PrimitiveWitness { w, psi, phi });
        }
    }
    None
}
