//! Endomorphisms of the free group of rank two.
//!
//! Composition follows `(f∘g)(x) = f(g(x))`: [`Endo2::compose`] applies its
//! argument first.

mod deco;
mod grammar;
mod primitive;

pub use deco::DecoFactorization;
pub use grammar::{bounded_language, emit_closure_grammar, Grammar, Rule, Symbol, MARKER};
pub use primitive::{is_positive_primitive, is_primitive, PositivePrimitive, PrimitiveWitness};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::stallings::{fold_generators, StallingsAutomaton};
use crate::words::{Letter, Word};

/// An endomorphism given by the images of `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endo2 {
    a: Word,
    b: Word,
}

impl Endo2 {
    pub fn new(a: Word, b: Word) -> Result<Self> {
        if a.rank() != 2 || b.rank() != 2 {
            return Err(Error::invalid("endomorphism images must be rank-2 words"));
        }
        Ok(Endo2 { a, b })
    }

    /// Builds `φ_{x,y}` from two words in text form. Panics on bad input,
    /// so it is meant for literals.
    pub fn of(a: &str, b: &str) -> Self {
        Endo2 {
            a: crate::words::w2(a),
            b: crate::words::w2(b),
        }
    }

    pub fn identity() -> Self {
        Endo2::of("a", "b")
    }

    pub fn image_a(&self) -> &Word {
        &self.a
    }

    pub fn image_b(&self) -> &Word {
        &self.b
    }

    /// Image of a generator or inverse letter.
    pub fn image_of(&self, l: Letter) -> Word {
        let w = if l.generator() == 0 { &self.a } else { &self.b };
        if l.is_inverse() {
            w.invert()
        } else {
            w.clone()
        }
    }

    /// Substitutes and reduces.
    ///
    /// # Panics
    /// If `u` is not a rank-2 word.
    pub fn apply(&self, u: &Word) -> Word {
        assert_eq!(u.rank(), 2, "endomorphisms act on rank-2 words");
        let mut raw = Vec::new();
        for &l in u.letters() {
            let img = if l.generator() == 0 { &self.a } else { &self.b };
            if l.is_inverse() {
                raw.extend(img.letters().iter().rev().map(|x| x.inv()));
            } else {
                raw.extend_from_slice(img.letters());
            }
        }
        Word::reduce_unchecked(raw, 2)
    }

    /// `self ∘ g`: apply `g` first, then `self`.
    pub fn compose(&self, g: &Endo2) -> Endo2 {
        Endo2 {
            a: self.apply(&g.a),
            b: self.apply(&g.b),
        }
    }

    /// `f₁ ∘ f₂ ∘ … ∘ fₖ`; the identity for an empty list.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Endo2>) -> Endo2 {
        factors
            .into_iter()
            .fold(Endo2::identity(), |acc, f| acc.compose(f))
    }

    /// True when the images form a basis, i.e. they fold to the bouquet.
    pub fn is_automorphism(&self) -> bool {
        fold_generators(2, &[self.a.clone(), self.b.clone()])
            .map(|h| h.is_bouquet())
            .unwrap_or(false)
    }

    /// Automaton of the image subgroup `φ(H)`.
    pub fn image_subgroup(&self, h: &StallingsAutomaton) -> Result<StallingsAutomaton> {
        h.require_rank2()?;
        let images: Vec<Word> = h.generators().iter().map(|g| self.apply(g)).collect();
        fold_generators(2, &images)
    }

    /// True when both images are nonempty positive words.
    pub fn is_positive_nonerasing(&self) -> bool {
        [&self.a, &self.b]
            .iter()
            .all(|w| !w.is_empty() && w.is_positive())
    }

    /// Inner automorphism `λ_w : u ↦ w⁻¹ u w`.
    pub fn inner(w: &Word) -> Endo2 {
        let wi = w.invert();
        let conj = |x: &str| wi.mul_unchecked(&crate::words::w2(x)).mul_unchecked(w);
        Endo2 {
            a: conj("a"),
            b: conj("b"),
        }
    }

    /// `φ_{a, aᵐ b^ε aⁿ}`.
    pub fn delta(m: i64, n: i64, eps: i8) -> Endo2 {
        let a = crate::words::w2("a");
        let b = if eps < 0 {
            crate::words::w2("B")
        } else {
            crate::words::w2("b")
        };
        Endo2 {
            a: a.clone(),
            b: a.pow(m).mul_unchecked(&b).mul_unchecked(&a.pow(n)),
        }
    }
}

impl fmt::Display for Endo2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.a, self.b)
    }
}

/// Parses the `"x ; y"` text form.
impl FromStr for Endo2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (x, y) = s.split_once(';').ok_or_else(|| Error::Parse {
            pos: s.len(),
            msg: "expected \"x ; y\"".into(),
        })?;
        let a = Word::parse(x, 2)?;
        let b = Word::parse(y, 2).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos: pos + x.len() + 1,
                msg,
            },
            other => other,
        })?;
        Endo2::new(a, b)
    }
}

/// A letter of the generating set Σ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SigmaLetter {
    /// `φ_{a,ba}`
    S,
    /// `φ_{b⁻¹,a⁻¹}`
    I,
    /// `φ_{b,a}`
    X,
}

impl SigmaLetter {
    pub const ALL: [SigmaLetter; 3] = [SigmaLetter::S, SigmaLetter::I, SigmaLetter::X];

    pub fn endo(self) -> Endo2 {
        match self {
            SigmaLetter::S => Endo2::of("a", "ba"),
            SigmaLetter::I => Endo2::of("B", "A"),
            SigmaLetter::X => Endo2::of("b", "a"),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            SigmaLetter::S => 'S',
            SigmaLetter::I => 'I',
            SigmaLetter::X => 'X',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'S' => Some(SigmaLetter::S),
            'I' => Some(SigmaLetter::I),
            'X' => Some(SigmaLetter::X),
            _ => None,
        }
    }

    /// Automorphism denoted by a Σ-word, leftmost letter applied first.
    pub fn word_endo(word: &[SigmaLetter]) -> Endo2 {
        word.iter()
            .fold(Endo2::identity(), |acc, l| l.endo().compose(&acc))
    }

    pub fn word_to_string(word: &[SigmaLetter]) -> String {
        word.iter().map(|l| l.to_char()).collect()
    }

    pub fn parse_word(text: &str) -> Result<Vec<SigmaLetter>> {
        text.chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(pos, c)| {
                SigmaLetter::from_char(c).ok_or_else(|| Error::Parse {
                    pos,
                    msg: format!("{c:?} is not one of S, I, X"),
                })
            })
            .collect()
    }
}

impl fmt::Display for SigmaLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// The four positive elementary automorphisms generating `Φ*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhiGen {
    /// `φ_{a,ba}`
    AppendAToB,
    /// `φ_{a,ab}`
    PrependAToB,
    /// `φ_{ab,b}`
    AppendBToA,
    /// `φ_{ba,b}`
    PrependBToA,
}

impl PhiGen {
    pub const ALL: [PhiGen; 4] = [
        PhiGen::AppendAToB,
        PhiGen::PrependAToB,
        PhiGen::AppendBToA,
        PhiGen::PrependBToA,
    ];

    pub fn endo(self) -> Endo2 {
        match self {
            PhiGen::AppendAToB => Endo2::of("a", "ba"),
            PhiGen::PrependAToB => Endo2::of("a", "ab"),
            PhiGen::AppendBToA => Endo2::of("ab", "b"),
            PhiGen::PrependBToA => Endo2::of("ba", "b"),
        }
    }

    pub fn inverse_endo(self) -> Endo2 {
        match self {
            PhiGen::AppendAToB => Endo2::of("a", "bA"),
            PhiGen::PrependAToB => Endo2::of("a", "Ab"),
            PhiGen::AppendBToA => Endo2::of("aB", "b"),
            PhiGen::PrependBToA => Endo2::of("Ba", "b"),
        }
    }

    /// `φ₁ ∘ … ∘ φₖ`.
    pub fn product(word: &[PhiGen]) -> Endo2 {
        word.iter()
            .fold(Endo2::identity(), |acc, p| acc.compose(&p.endo()))
    }

    /// Inverse of [`PhiGen::product`].
    pub fn inverse_product(word: &[PhiGen]) -> Endo2 {
        word.iter()
            .fold(Endo2::identity(), |acc, p| p.inverse_endo().compose(&acc))
    }
}

impl fmt::Display for PhiGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.endo();
        write!(f, "phi[{},{}]", e.image_a(), e.image_b())
    }
}

/// A letter permutation with signs: `a ↦ x^{±1}`, `b ↦ y^{±1}`, `{x,y} = {a,b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Psi {
    a: Letter,
    b: Letter,
}

impl Psi {
    pub const IDENTITY: Psi = Psi {
        a: Letter::positive(0),
        b: Letter::positive(1),
    };

    /// All eight elements, the identity first.
    pub fn all() -> [Psi; 8] {
        let mut out = [Psi::IDENTITY; 8];
        let mut i = 0;
        for swap in [false, true] {
            for na in [false, true] {
                for nb in [false, true] {
                    let (x, y) = if swap { (1, 0) } else { (0, 1) };
                    out[i] = Psi {
                        a: Letter::new(x, na),
                        b: Letter::new(y, nb),
                    };
                    i += 1;
                }
            }
        }
        out
    }

    pub fn endo(self) -> Endo2 {
        Endo2 {
            a: Word::reduce_unchecked([self.a], 2),
            b: Word::reduce_unchecked([self.b], 2),
        }
    }

    pub fn inverse(self) -> Psi {
        let mut inv = Psi::IDENTITY;
        for (src, img) in [(Letter::positive(0), self.a), (Letter::positive(1), self.b)] {
            let back = Letter::new(src.generator(), img.is_inverse());
            if img.generator() == 0 {
                inv.a = back;
            } else {
                inv.b = back;
            }
        }
        inv
    }

    /// `self ∘ X`, i.e. the images of `a` and `b` exchanged.
    pub fn after_swap(self) -> Psi {
        Psi {
            a: self.b,
            b: self.a,
        }
    }

    pub fn apply(self, u: &Word) -> Word {
        self.endo().apply(u)
    }

    /// Recognises an endomorphism that lies in the set.
    pub fn from_endo(e: &Endo2) -> Option<Psi> {
        Psi::all().into_iter().find(|p| p.endo() == *e)
    }
}

impl fmt::Display for Psi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.endo())
    }
}

/// The two prefix automorphisms `φ_{a⁻¹,b}` and `φ_{a⁻¹,b⁻¹}`.
pub fn prefix_automorphisms() -> [Endo2; 2] {
    [Endo2::of("A", "b"), Endo2::of("A", "B")]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w2;

    #[test]
    fn apply_examples() {
        let s = SigmaLetter::S.endo();
        assert_eq!(s.apply(&w2("b")), w2("ba"));
        assert_eq!(s.apply(&w2("abA")), w2("ab"));
        assert_eq!(SigmaLetter::I.endo().apply(&w2("ab")), w2("BA"));
    }

    #[test]
    fn compose_examples() {
        let (s, x) = (SigmaLetter::S.endo(), SigmaLetter::X.endo());
        assert_eq!(x.compose(&s.compose(&x)), Endo2::of("ab", "b"));
        assert_eq!(Endo2::identity().compose(&s), s);
        let i = SigmaLetter::I.endo();
        let five = Endo2::product([&x, &i, &s, &i, &x]);
        assert_eq!(five, Endo2::of("a", "ab"));
    }

    #[test]
    fn automorphism_examples() {
        assert!(Endo2::of("a", "ba").is_automorphism());
        assert!(!Endo2::of("a", "a").is_automorphism());
        assert!(Endo2::of("ab", "b").is_automorphism());
        assert!(!Endo2::of("aa", "b").is_automorphism());
    }

    #[test]
    fn text_round_trip() {
        let e: Endo2 = "ab ; Ba".parse().unwrap();
        assert_eq!(e, Endo2::of("ab", "Ba"));
        assert_eq!(e.to_string().parse::<Endo2>().unwrap(), e);
        assert!("ab".parse::<Endo2>().is_err());
        assert!(matches!(
            "a ; bc".parse::<Endo2>(),
            Err(Error::Parse { pos: 5, .. })
        ));
    }

    #[test]
    fn psi_group_structure() {
        let all = Psi::all();
        assert_eq!(all[0], Psi::IDENTITY);
        for p in all {
            assert!(p.endo().is_automorphism());
            assert_eq!(p.endo().compose(&p.inverse().endo()), Endo2::identity());
            assert_eq!(
                p.after_swap().endo(),
                p.endo().compose(&SigmaLetter::X.endo())
            );
        }
        let distinct: std::collections::HashSet<_> = all.iter().map(|p| p.endo()).collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn phi_inverses() {
        for p in PhiGen::ALL {
            assert_eq!(p.endo().compose(&p.inverse_endo()), Endo2::identity());
        }
        let word = [PhiGen::AppendAToB, PhiGen::AppendBToA, PhiGen::PrependBToA];
        let e = PhiGen::product(&word);
        assert_eq!(
            e.compose(&PhiGen::inverse_product(&word)),
            Endo2::identity()
        );
    }

    #[test]
    fn sigma_words_apply_left_to_right() {
        use SigmaLetter::*;
        // S then X: a ↦ a ↦ b, b ↦ ba ↦ ab.
        assert_eq!(SigmaLetter::word_endo(&[S, X]), Endo2::of("b", "ab"));
        assert_eq!(SigmaLetter::parse_word("S X").unwrap(), vec![S, X]);
        assert!(SigmaLetter::parse_word("SQ").is_err());
    }

    #[test]
    fn inner_and_delta() {
        assert_eq!(Endo2::inner(&w2("a")).apply(&w2("b")), w2("Aba"));
        assert_eq!(Endo2::delta(2, -1, -1), Endo2::of("a", "aaBA"));
    }
}
