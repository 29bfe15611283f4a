//! Factorisation of automorphisms as `λ_w ψ φ₁…φₖ δ` and inversion.

use super::{is_primitive, Endo2, PhiGen, Psi};
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// `θ = λ_w ∘ ψ ∘ φ₁ ∘ … ∘ φₖ ∘ φ_{a, aᵐ b^ε aⁿ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoFactorization {
    pub w: Word,
    pub psi: Psi,
    pub phi_word: Vec<PhiGen>,
    pub m: i64,
    pub n: i64,
    pub eps: i8,
}

impl DecoFactorization {
    pub fn recompose(&self) -> Endo2 {
        Endo2::inner(&self.w)
            .compose(&self.psi.endo())
            .compose(&PhiGen::product(&self.phi_word))
            .compose(&Endo2::delta(self.m, self.n, self.eps))
    }

    /// The inverse automorphism, assembled from inverted factors in reverse.
    pub fn inverse(&self) -> Endo2 {
        let delta_inv = if self.eps > 0 {
            Endo2::delta(-self.m, -self.n, 1)
        } else {
            Endo2::delta(self.n, self.m, -1)
        };
        delta_inv
            .compose(&PhiGen::inverse_product(&self.phi_word))
            .compose(&self.psi.inverse().endo())
            .compose(&Endo2::inner(&self.w.invert()))
    }
}

/// Reads `aᵐ b^ε aⁿ`.
fn parse_delta_image(w: &Word) -> Option<(i64, i64, i8)> {
    let letters = w.letters();
    let pivot = letters.iter().position(|l| l.generator() == 1)?;
    if letters[pivot + 1..].iter().any(|l| l.generator() == 1) {
        return None;
    }
    let exponent = |part: &[Letter]| part.iter().map(|l| l.sign() as i64).sum::<i64>();
    let eps = letters[pivot].sign() as i8;
    Some((
        exponent(&letters[..pivot]),
        exponent(&letters[pivot + 1..]),
        eps,
    ))
}

impl Endo2 {
    pub fn factorize(&self) -> Result<DecoFactorization> {
        if !self.is_automorphism() {
            return Err(Error::invalid(format!("{self} is not an automorphism")));
        }
        let wit = is_primitive(self.image_a())
            .expect("the image of a under an automorphism is primitive");
        let delta = wit.inverse_endo().compose(self);
        debug_assert_eq!(delta.image_a(), &crate::words::w2("a"));
        let (m, n, eps) =
            parse_delta_image(delta.image_b()).expect("a basis containing a has this shape");
        Ok(DecoFactorization {
            w: wit.w,
            psi: wit.psi,
            phi_word: wit.phi,
            m,
            n,
            eps,
        })
    }

    pub fn invert(&self) -> Result<Endo2> {
        Ok(self.factorize()?.inverse())
    }
}
