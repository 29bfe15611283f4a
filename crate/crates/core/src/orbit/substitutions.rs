//! Rational sets of invertible substitutions and of their inverses,
//! rewritten over Σ.

use super::rational::{parse_regex, SigmaRational, SIGMA_ALPHABET};
use crate::endo2::Endo2;
use crate::error::{Error, Result};
use crate::stallings::StallingsAutomaton;
use crate::words::Word;

/// `P = φ_{b,a}`, `S = φ_{a,ba}`, `T = φ_{a,ab}`.
pub const IS_ALPHABET: [char; 3] = ['P', 'S', 'T'];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubstitutionKind {
    /// The automorphisms denoted by the words themselves.
    Is,
    /// Their inverses.
    IsInverse,
}

/// A Σ-automaton plus, for inverses, the conjugation `J = φ_{a,b⁻¹}` that
/// must be applied to the instance first: `θ⁻¹ = J ∘ μ ∘ J`.
#[derive(Clone, Debug)]
pub struct IsEncoding {
    pub rational: SigmaRational,
    pub conjugation: Option<Endo2>,
}

impl IsEncoding {
    pub fn transform_word(&self, u: &Word) -> Word {
        match &self.conjugation {
            Some(j) => j.apply(u),
            None => u.clone(),
        }
    }

    pub fn transform_subgroup(&self, h: &StallingsAutomaton) -> Result<StallingsAutomaton> {
        match &self.conjugation {
            Some(j) => j.image_subgroup(h),
            None => Ok(h.clone()),
        }
    }
}

/// [`parse_regex`] over `P S T`.
pub fn parse_substitution_regex(text: &str) -> Result<SigmaRational> {
    parse_regex(text, &IS_ALPHABET)
}

pub fn encode_invertible_substitutions(
    kind: SubstitutionKind,
    r: &SigmaRational,
) -> Result<IsEncoding> {
    if r.alphabet() != IS_ALPHABET {
        return Err(Error::invalid("substitution sets must be over P, S, T"));
    }
    Ok(match kind {
        SubstitutionKind::Is => IsEncoding {
            rational: r.substitute(&SIGMA_ALPHABET, &[('P', "X"), ('S', "S"), ('T', "XISIX")])?,
            conjugation: None,
        },
        // J P⁻¹ J = I, J S⁻¹ J = T, J T⁻¹ J = S, read in reverse.
        SubstitutionKind::IsInverse => IsEncoding {
            rational: r
                .reversed()
                .substitute(&SIGMA_ALPHABET, &[('P', "I"), ('S', "XISIX"), ('T', "S")])?,
            conjugation: Some(Endo2::of("a", "B")),
        },
    })
}
