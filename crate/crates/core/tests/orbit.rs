mod common;

use common::{all_words, generators, nontrivial_word, subgroup};
use fg_orbits::{
    contains_primitive, decide_full_aut, decide_rational, encode_invertible_substitutions,
    fold_generators, is_primitive, parse_sigma_regex, parse_substitution_regex, w2,
    witness_language, Endo2, Limits, LoopMode, Problem, SigmaLetter, SigmaRational,
    StallingsAutomaton, SubstitutionKind, Word,
};
use proptest::prelude::*;

const REGEXES: [&str; 6] = ["(S|I|X)*", "S*X", "(S|I)*", "(SI|X)*", "I(S|X)*", "SS*"];

fn refold(e: &Endo2, h: &StallingsAutomaton) -> StallingsAutomaton {
    let images: Vec<Word> = h.generators().iter().map(|g| e.apply(g)).collect();
    fold_generators(2, &images).unwrap()
}

fn sigma_words(n: usize) -> Vec<Vec<SigmaLetter>> {
    let mut out: Vec<Vec<SigmaLetter>> = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..n {
        let end = out.len();
        for i in start..end {
            for l in [SigmaLetter::S, SigmaLetter::I, SigmaLetter::X] {
                let mut w = out[i].clone();
                w.push(l);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

fn brute_member(
    u: &Word,
    h: &StallingsAutomaton,
    r: &SigmaRational,
    len: usize,
) -> Option<Vec<SigmaLetter>> {
    sigma_words(len)
        .into_iter()
        .filter(|m| r.accepts_sigma(m))
        .find(|m| refold(&SigmaLetter::word_endo(m), h).contains(u))
}

fn pt_letters(n: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!['P', 'S', 'T']), 1..=n)
        .prop_map(|cs| cs.into_iter().collect())
}

fn substitution_endo(word: &str) -> Endo2 {
    word.chars().fold(Endo2::identity(), |acc, c| {
        let e = match c {
            'P' => Endo2::of("b", "a"),
            'S' => Endo2::of("a", "ba"),
            _ => Endo2::of("a", "ab"),
        };
        e.compose(&acc)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_membership_is_sound_and_complete(
        gens in generators(2, 4),
        u in nontrivial_word(5),
        ri in 0usize..REGEXES.len(),
    ) {
        let h = fold_generators(2, &gens).unwrap();
        let r = parse_sigma_regex(REGEXES[ri]).unwrap();
        let d = decide_rational(&Problem::Element(u.clone()), &h, &r, Limits::default()).unwrap();
        if let Some(w) = &d.witness {
            prop_assert!(d.answer);
            prop_assert!(r.accepts_sigma(&w.sigma));
            prop_assert!(refold(&w.automorphism, &h).contains(&u));
        } else {
            prop_assert!(!d.answer);
            let found = brute_member(&u, &h, &r, 5);
            prop_assert!(found.is_none(), "missed {:?}", found.map(|m| SigmaLetter::word_to_string(&m)));
        }
    }

    #[test]
    fn shortest_witness_is_shortest(gens in generators(2, 3), u in nontrivial_word(4)) {
        let h = fold_generators(2, &gens).unwrap();
        let r = SigmaRational::universal(&['S', 'I', 'X']);
        let d = decide_rational(&Problem::Element(u.clone()), &h, &r, Limits::default()).unwrap();
        let brute = brute_member(&u, &h, &r, 4);
        match (&d.witness, brute) {
            (Some(w), Some(b)) => prop_assert!(w.sigma.len() <= b.len()),
            (None, Some(b)) => prop_assert!(false, "missed {}", SigmaLetter::word_to_string(&b)),
            _ => {}
        }
    }

    #[test]
    fn decisions_are_deterministic(gens in generators(2, 4), u in nontrivial_word(4)) {
        let h = fold_generators(2, &gens).unwrap();
        let r = parse_sigma_regex("(S|I|X)*").unwrap();
        let p = Problem::ElementConjugate(u);
        let a = decide_rational(&p, &h, &r, Limits::default()).unwrap();
        let b = decide_rational(&p, &h, &r, Limits::default()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn substitution_encoding(word in pt_letters(4)) {
        let r = parse_substitution_regex(&word).unwrap();
        let theta = substitution_endo(&word);
        let enc = encode_invertible_substitutions(SubstitutionKind::Is, &r).unwrap();
        let sigma = enc.rational.shortest_word().unwrap();
        let mu = SigmaLetter::word_endo(&SigmaLetter::parse_word(&sigma).unwrap());
        prop_assert_eq!(mu, theta.clone());

        let enc = encode_invertible_substitutions(SubstitutionKind::IsInverse, &r).unwrap();
        let sigma = enc.rational.shortest_word().unwrap();
        let mu = SigmaLetter::word_endo(&SigmaLetter::parse_word(&sigma).unwrap());
        let j = enc.conjugation.unwrap();
        prop_assert_eq!(j.compose(&mu).compose(&j).compose(&theta), Endo2::identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn origin_loops_imply_conjugate_loops(h in subgroup(2, 4), u in nontrivial_word(4)) {
        let at = witness_language(&u, &h, LoopMode::AtOrigin, Limits::default()).unwrap();
        let anywhere = witness_language(&u, &h, LoopMode::Conjugate, Limits::default()).unwrap();
        prop_assert!(at.is_subset_of(&anywhere).unwrap());
        if let Some(m) = at.shortest_word() {
            let mu = SigmaLetter::word_endo(&SigmaLetter::parse_word(&m).unwrap());
            prop_assert!(refold(&mu, &h).contains(&u));
        }
    }

    #[test]
    fn the_whole_group_meets_every_orbit(u in nontrivial_word(6)) {
        let h = StallingsAutomaton::bouquet(2);
        let d = decide_full_aut(&u, &h, Limits::default()).unwrap();
        prop_assert!(d.answer);
    }

    #[test]
    fn full_orbit_witnesses_verify(gens in generators(2, 4), u in nontrivial_word(4)) {
        let h = fold_generators(2, &gens).unwrap();
        let d = decide_full_aut(&u, &h, Limits::default()).unwrap();
        if let Some(w) = &d.witness {
            prop_assert!(w.automorphism.is_automorphism());
            prop_assert!(h.contains(&w.automorphism.apply(&u)));
        }
        // Any automorphic image found by brute force must be matched by a yes.
        let images = fg_orbits::Psi::all().map(|p| p.apply(&u));
        if images.iter().any(|v| h.contains(v)) {
            prop_assert!(d.answer);
        }
    }
}

#[test]
fn contains_primitive_against_enumeration() {
    let words = all_words(8);
    let primitives: Vec<&Word> = words.iter().filter(|w| is_primitive(w).is_some()).collect();
    let cases: [&[&str]; 8] = [
        &["aabb"],
        &["bab"],
        &["aab", "abb"],
        &["abAB"],
        &["aa", "bb"],
        &["aaa", "bab"],
        &["ab", "ba"],
        &["aabAB"],
    ];
    for gens in cases {
        let gens: Vec<Word> = gens.iter().map(|g| w2(g)).collect();
        let h = fold_generators(2, &gens).unwrap();
        let d = contains_primitive(&h, Limits::default()).unwrap();
        let brute = primitives.iter().find(|p| h.contains(p));
        if let Some(w) = &d.witness {
            let p = w.automorphism.apply(&w2("a"));
            assert!(h.contains(&p) && is_primitive(&p).is_some(), "{gens:?}");
        }
        if let Some(p) = brute {
            assert!(d.answer, "{gens:?} contains the primitive {p}");
        }
    }
}

#[test]
fn conjugate_problems_carry_conjugators() {
    let h = fold_generators(2, &[w2("a")]).unwrap();
    let r = parse_sigma_regex("e").unwrap();
    let d = decide_rational(
        &Problem::Conjugates(vec![w2("Bab"), w2("baaB")]),
        &h,
        &r,
        Limits::default(),
    )
    .unwrap();
    let w = d.witness.unwrap();
    for (u, c) in [w2("Bab"), w2("baaB")].iter().zip(&w.conjugators) {
        assert!(h.contains(&c.invert().multiply(u).unwrap().multiply(c).unwrap()));
    }
}

#[test]
fn caps_raise_resource_limits() {
    let h = fold_generators(2, &[w2("aab"), w2("bAb")]).unwrap();
    let r = parse_sigma_regex("(S|I|X)*").unwrap();
    let tight = Limits {
        max_states: 2,
        max_aut_size: 10_000,
    };
    let err = decide_rational(&Problem::Element(w2("abab")), &h, &r, tight).unwrap_err();
    assert_eq!(err.kind(), "resource-limit");
}
