mod common;

use common::{letter, word};
use fg_orbits::{Letter, Word};
use proptest::prelude::*;

/// Free reduction by a stack, independent of the library.
fn stack_reduce(raw: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for &l in raw {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reduce_matches_stack(raw in prop::collection::vec(letter(), 0..24)) {
        let w = Word::reduce(raw.clone(), 2).unwrap();
        prop_assert_eq!(w.letters(), &stack_reduce(&raw)[..]);
        prop_assert_eq!(Word::reduce(w.letters().to_vec(), 2).unwrap(), w);
    }

    #[test]
    fn group_laws(u in word(10), v in word(10), w in word(10)) {
        let uv_w = u.multiply(&v).unwrap().multiply(&w).unwrap();
        let u_vw = u.multiply(&v.multiply(&w).unwrap()).unwrap();
        prop_assert_eq!(uv_w, u_vw);
        prop_assert!(u.multiply(&u.invert()).unwrap().is_identity());
        prop_assert_eq!(u.invert().invert(), u.clone());
        prop_assert_eq!(u.multiply(&v).unwrap().invert(), v.invert().multiply(&u.invert()).unwrap());
    }

    #[test]
    fn text_round_trip(u in word(16)) {
        prop_assert_eq!(Word::parse(&u.to_string(), 2).unwrap(), u);
    }

    #[test]
    fn cyclic_core_reconstructs(u in word(16)) {
        let (c, v) = u.cyclic_core();
        prop_assert!(c.is_cyclically_reduced());
        let cc = c.multiply(&c).unwrap();
        prop_assert_eq!(cc.len(), 2 * c.len());
        let back = v.invert().multiply(&c).unwrap().multiply(&v).unwrap();
        prop_assert_eq!(back, u.clone());
        prop_assert_eq!(c.len() + 2 * v.len(), u.len());
    }

    #[test]
    fn exponent_sums_are_additive(u in word(10), v in word(10)) {
        let uv = u.multiply(&v).unwrap().exponent_sums();
        let sum: Vec<i64> = u.exponent_sums().iter().zip(v.exponent_sums()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(uv, sum);
    }

    #[test]
    fn powers(u in word(6), n in -4i64..5, m in -4i64..5) {
        prop_assert_eq!(u.pow(n).multiply(&u.pow(m)).unwrap(), u.pow(n + m));
    }

    #[test]
    fn rotation_preserves_length_of_cyclic_words(u in word(12), k in 0usize..12) {
        let (c, _) = u.cyclic_core();
        if !c.is_empty() {
            let r = c.rotate(k % c.len());
            prop_assert_eq!(r.len(), c.len());
            prop_assert!(r.is_cyclically_reduced());
        }
    }
}

#[test]
fn rejects_letters_outside_the_rank() {
    assert_eq!(Word::parse("abc", 2).unwrap_err().kind(), "parse-error");
    assert_eq!(Word::parse("abcC", 3).unwrap().len(), 2);
}
