#![allow(dead_code)]

use fg_orbits::{fold_generators, Letter, StallingsAutomaton, Word};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn letter() -> impl Strategy<Value = Letter> {
    (0u32..2, any::<bool>()).prop_map(|(g, inv)| {
        if inv {
            Letter::negative(g)
        } else {
            Letter::positive(g)
        }
    })
}

pub fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max_len).prop_map(|ls| Word::reduce(ls, 2).unwrap())
}

pub fn nontrivial_word(max_len: usize) -> impl Strategy<Value = Word> {
    word(max_len).prop_filter("nontrivial", |w| !w.is_identity())
}

pub fn positive_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u32..2, 1..=max_len)
        .prop_map(|gs| Word::reduce(gs.into_iter().map(Letter::positive), 2).unwrap())
}

pub fn generators(max_count: usize, max_len: usize) -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(nontrivial_word(max_len), 1..=max_count)
}

pub fn subgroup(max_count: usize, max_len: usize) -> impl Strategy<Value = StallingsAutomaton> {
    generators(max_count, max_len).prop_map(|g| fold_generators(2, &g).unwrap())
}

pub fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    let ls: Vec<Letter> = (0..len)
        .map(|_| {
            let g = rng.gen_range(0..2);
            if rng.gen_bool(0.5) {
                Letter::negative(g)
            } else {
                Letter::positive(g)
            }
        })
        .collect();
    Word::reduce(ls, 2).unwrap()
}

/// Every reduced word of length at most `n`.
pub fn all_words(n: usize) -> Vec<Word> {
    let mut out = vec![Word::identity(2)];
    let mut layer = vec![Word::identity(2)];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..4 {
                let l = Letter::from_index(i, 2);
                if w.letters().last() == Some(&l.inv()) {
                    continue;
                }
                next.push(w.multiply(&Word::letter(l, 2).unwrap()).unwrap());
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
