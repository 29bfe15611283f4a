//! Orbit decision procedures: rational families of automorphisms given by
//! Σ-automata, invertible substitutions, and the whole of `Aut F₂`.

mod decide;
mod full_aut;
mod rational;
mod substitutions;

pub use decide::{decide_rational, witness_language, LoopMode, Problem};
pub use full_aut::{contains_primitive, decide_full_aut};
pub use rational::{parse_regex, parse_sigma_regex, SigmaRational, SIGMA_ALPHABET};
pub use substitutions::{
    encode_invertible_substitutions, parse_substitution_regex, IsEncoding, SubstitutionKind,
    IS_ALPHABET,
};

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::dynamics::SigmaLetter;
use crate::endo2::{Endo2, Psi};
use crate::words::Word;

/// Outcome of a decision procedure.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Decision {
    pub answer: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub stats: Stats,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Stats {
    /// Truncated automata explored.
    pub states: usize,
    /// Truncation radius (the largest one, when several were used).
    pub t: usize,
}

/// Evidence for a yes answer.
///
/// For the rational problems `automorphism` is the one denoted by `sigma`;
/// `psi`, `prefix` and `n` stay trivial. For the full orbit problem it is
/// `ψ⁻¹ ∘ μ⁻¹ ∘ λ_w ∘ φ_{a,ba}ⁿ ∘ p`, which maps the word into the subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub sigma: Vec<SigmaLetter>,
    pub psi: Psi,
    pub prefix: Endo2,
    pub n: u64,
    /// One conjugator per conjugacy condition; empty when none applies.
    pub conjugators: Vec<Word>,
    pub automorphism: Endo2,
}

impl Witness {
    pub(crate) fn rational(sigma: Vec<SigmaLetter>, conjugators: Vec<Word>) -> Self {
        let automorphism = SigmaLetter::word_endo(&sigma);
        Witness {
            sigma,
            psi: Psi::IDENTITY,
            prefix: Endo2::identity(),
            n: 0,
            conjugators,
            automorphism,
        }
    }

    pub fn sigma_word(&self) -> String {
        SigmaLetter::word_to_string(&self.sigma)
    }

    /// Conjugators joined by commas, `1` when there are none.
    pub fn conjugator_text(&self) -> String {
        if self.conjugators.is_empty() {
            return "1".to_string();
        }
        self.conjugators
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Witness", 5)?;
        st.serialize_field("sigma_word", &self.sigma_word())?;
        st.serialize_field("psi", &self.psi.to_string())?;
        st.serialize_field("prefix", &self.prefix.to_string())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("conjugator", &self.conjugator_text())?;
        st.end()
    }
}
