//! Fixed inputs shared by the benchmarks.

use fg_orbits::{fold_generators, w2, StallingsAutomaton, Word};

/// Generator lists of increasing size.
pub const SUBGROUPS: [(&str, &[&str]); 4] = [
    ("small", &["aab", "bAb"]),
    ("medium", &["aabAb", "bbaBa", "abab"]),
    ("large", &["aabAbaB", "bbaBaab", "abABaab", "baaBBab"]),
    ("positive", &["aabb", "abab", "bbba"]),
];

pub fn words(gens: &[&str]) -> Vec<Word> {
    gens.iter().map(|g| w2(g)).collect()
}

pub fn subgroup(gens: &[&str]) -> StallingsAutomaton {
    fold_generators(2, &words(gens)).expect("fixtures are rank 2")
}

/// `(ab^m)` repeated with growing exponents: primitive for the consecutive
/// patterns, not for the others.
pub fn primitivity_words() -> Vec<Word> {
    let mut out = Vec::new();
    for n in [4i64, 16, 64] {
        let b = w2("b");
        let mut w = Word::identity(2);
        for k in 0..n {
            w = w
                .multiply(&w2("a"))
                .unwrap()
                .multiply(&b.pow(3 + k % 2))
                .unwrap();
        }
        out.push(w);
    }
    out
}
