//! ε-free finite automata over small letter alphabets and a regex syntax
//! for them.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::dynamics::SigmaLetter;
use crate::error::{Error, Result};

/// Nondeterministic automaton without ε-transitions.
///
/// Over the default alphabet `S I X`, an accepted word `c₁…cₙ` stands for the
/// automorphism `cₙ ∘ … ∘ c₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaRational {
    alphabet: Vec<char>,
    initial: usize,
    accepting: Vec<bool>,
    /// Per state, `(letter index, target)` pairs.
    transitions: Vec<Vec<(usize, usize)>>,
}

pub const SIGMA_ALPHABET: [char; 3] = ['S', 'I', 'X'];

impl SigmaRational {
    /// Automaton with `states` states and no transitions.
    pub fn new(alphabet: &[char], states: usize, initial: usize) -> Self {
        SigmaRational {
            alphabet: alphabet.to_vec(),
            initial,
            accepting: vec![false; states],
            transitions: vec![Vec::new(); states],
        }
    }

    /// Every word over the alphabet.
    pub fn universal(alphabet: &[char]) -> Self {
        let mut r = SigmaRational::new(alphabet, 1, 0);
        r.accepting[0] = true;
        for i in 0..alphabet.len() {
            r.transitions[0].push((i, 0));
        }
        r
    }

    pub fn add_transition(&mut self, from: usize, letter: char, to: usize) -> Result<()> {
        let i = self.letter_index(letter)?;
        if !self.transitions[from].contains(&(i, to)) {
            self.transitions[from].push((i, to));
        }
        Ok(())
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        self.accepting[state] = accepting;
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    /// `(letter, target)` pairs leaving `state`.
    pub fn transitions_from(&self, state: usize) -> impl Iterator<Item = (char, usize)> + '_ {
        self.transitions[state]
            .iter()
            .map(|&(i, q)| (self.alphabet[i], q))
    }

    fn letter_index(&self, c: char) -> Result<usize> {
        self.alphabet.iter().position(|&x| x == c).ok_or_else(|| {
            Error::invalid(format!(
                "letter {c:?} is not in the alphabet {}",
                self.alphabet.iter().collect::<String>()
            ))
        })
    }

    fn step(&self, set: &BTreeSet<usize>, i: usize) -> BTreeSet<usize> {
        set.iter()
            .flat_map(|&p| self.transitions[p].iter())
            .filter(|&&(j, _)| j == i)
            .map(|&(_, q)| q)
            .collect()
    }

    pub fn accepts(&self, word: &str) -> bool {
        let mut cur = BTreeSet::from([self.initial]);
        for c in word.chars() {
            let Ok(i) = self.letter_index(c) else {
                return false;
            };
            cur = self.step(&cur, i);
        }
        cur.iter().any(|&q| self.accepting[q])
    }

    pub fn accepts_sigma(&self, word: &[SigmaLetter]) -> bool {
        self.accepts(&SigmaLetter::word_to_string(word))
    }

    /// A shortest accepted word, ties broken by alphabet order.
    pub fn shortest_word(&self) -> Option<String> {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.state_count()];
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(p) = queue.pop_front() {
            if self.accepting[p] {
                let mut out = Vec::new();
                let mut v = p;
                while let Some((prev, i)) = parent[v] {
                    out.push(self.alphabet[i]);
                    v = prev;
                }
                return Some(out.into_iter().rev().collect());
            }
            let mut edges = self.transitions[p].clone();
            edges.sort();
            for (i, q) in edges {
                if !seen[q] {
                    seen[q] = true;
                    parent[q] = Some((p, i));
                    queue.push_back(q);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// Product automaton accepting the intersection.
    pub fn intersect(&self, other: &SigmaRational) -> Result<SigmaRational> {
        self.same_alphabet(other)?;
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut out = SigmaRational::new(&self.alphabet, 0, 0);
        let mut k = 0;
        while k < pairs.len() {
            let (p, q) = pairs[k];
            out.accepting.push(self.accepting[p] && other.accepting[q]);
            out.transitions.push(Vec::new());
            for &(i, p2) in &self.transitions[p] {
                for &(j, q2) in &other.transitions[q] {
                    if i != j {
                        continue;
                    }
                    let id = *index.entry((p2, q2)).or_insert_with(|| {
                        pairs.push((p2, q2));
                        pairs.len() - 1
                    });
                    out.transitions[k].push((i, id));
                }
            }
            k += 1;
        }
        Ok(out)
    }

    /// Language inclusion, by a subset construction on `other`.
    pub fn is_subset_of(&self, other: &SigmaRational) -> Result<bool> {
        self.same_alphabet(other)?;
        let start = (self.initial, BTreeSet::from([other.initial]));
        let mut seen = std::collections::HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some((p, set)) = queue.pop_front() {
            if self.accepting[p] && !set.iter().any(|&q| other.accepting[q]) {
                return Ok(false);
            }
            for &(i, p2) in &self.transitions[p] {
                let next = (p2, other.step(&set, i));
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(true)
    }

    /// Image under the letter-to-word substitution `images`, landing in
    /// `alphabet`. Letters without an image are dropped with their edges.
    pub fn substitute(&self, alphabet: &[char], images: &[(char, &str)]) -> Result<SigmaRational> {
        let mut out = SigmaRational::new(alphabet, self.state_count(), self.initial);
        out.accepting = self.accepting.clone();
        let mut table: Vec<Option<&str>> = vec![None; self.alphabet.len()];
        for &(c, img) in images {
            table[self.letter_index(c)?] = Some(img);
        }
        for p in 0..self.state_count() {
            for &(i, q) in &self.transitions[p] {
                let Some(img) = table[i] else { continue };
                let img: Vec<char> = img.chars().collect();
                if img.is_empty() {
                    return Err(Error::invalid("substitution images must be nonempty"));
                }
                let mut from = p;
                for (k, &c) in img.iter().enumerate() {
                    let to = if k + 1 == img.len() {
                        q
                    } else {
                        out.accepting.push(false);
                        out.transitions.push(Vec::new());
                        out.state_count() - 1
                    };
                    out.add_transition(from, c, to)?;
                    from = to;
                }
            }
        }
        Ok(out)
    }

    /// Accepts the mirror images of the accepted words.
    pub fn reversed(&self) -> SigmaRational {
        let n = self.state_count();
        let mut out = SigmaRational::new(&self.alphabet, n + 1, n);
        out.accepting[self.initial] = true;
        for p in 0..n {
            for &(i, q) in &self.transitions[p] {
                out.transitions[q].push((i, p));
                if self.accepting[q] {
                    out.transitions[n].push((i, p));
                }
            }
        }
        if self.accepting[self.initial] {
            out.accepting[n] = true;
        }
        out
    }

    fn same_alphabet(&self, other: &SigmaRational) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::invalid("automata over different alphabets"));
        }
        Ok(())
    }
}

/// Thompson fragment under construction: ε-edges kept separately.
struct Builder {
    eps: Vec<Vec<usize>>,
    edges: Vec<Vec<(usize, usize)>>,
}

impl Builder {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.edges.push(Vec::new());
        self.eps.len() - 1
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    alphabet: &'a [char],
    b: Builder,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or_else(
            || self.chars.last().map_or(0, |&(p, c)| p + c.len_utf8()),
            |&(p, _)| p,
        )
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<(usize, usize)> {
        let first = self.term()?;
        if self.peek() != Some('|') {
            return Ok(first);
        }
        let (s, f) = (self.b.state(), self.b.state());
        self.b.eps[s].push(first.0);
        self.b.eps[first.1].push(f);
        while self.peek() == Some('|') {
            self.at += 1;
            let alt = self.term()?;
            self.b.eps[s].push(alt.0);
            self.b.eps[alt.1].push(f);
        }
        Ok((s, f))
    }

    fn term(&mut self) -> Result<(usize, usize)> {
        let s = self.b.state();
        let mut end = s;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let (fs, ff) = self.factor()?;
            self.b.eps[end].push(fs);
            end = ff;
        }
        Ok((s, end))
    }

    fn factor(&mut self) -> Result<(usize, usize)> {
        let mut frag = self.atom()?;
        while self.peek() == Some('*') {
            self.at += 1;
            let (s, f) = (self.b.state(), self.b.state());
            self.b.eps[s].extend([frag.0, f]);
            self.b.eps[frag.1].extend([frag.0, f]);
            frag = (s, f);
        }
        Ok(frag)
    }

    fn atom(&mut self) -> Result<(usize, usize)> {
        match self.peek() {
            Some('(') => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.at += 1;
                Ok(inner)
            }
            Some('e') => {
                self.at += 1;
                let s = self.b.state();
                Ok((s, s))
            }
            Some(c) => match self.alphabet.iter().position(|&x| x == c) {
                Some(i) => {
                    self.at += 1;
                    let (s, f) = (self.b.state(), self.b.state());
                    self.b.edges[s].push((i, f));
                    Ok((s, f))
                }
                None => self.err(format!("unexpected character {c:?}")),
            },
            None => self.err("unexpected end of expression"),
        }
    }
}

fn eps_closure(eps: &[Vec<usize>], p: usize) -> Vec<usize> {
    let mut seen = vec![false; eps.len()];
    let mut stack = vec![p];
    let mut out = Vec::new();
    seen[p] = true;
    while let Some(v) = stack.pop() {
        out.push(v);
        for &w in &eps[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    out
}

/// Parses a regular expression over `alphabet`: letters, juxtaposition,
/// `|`, `*`, parentheses, `e` for the empty word. Whitespace is ignored.
pub fn parse_regex(text: &str, alphabet: &[char]) -> Result<SigmaRational> {
    let chars = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser {
        chars,
        at: 0,
        alphabet,
        b: Builder {
            eps: Vec::new(),
            edges: Vec::new(),
        },
    };
    let (start, end) = p.expr()?;
    if p.at < p.chars.len() {
        return p.err("unbalanced ')'");
    }

    // ε-removal restricted to the states reachable from the start.
    let b = p.b;
    let mut index: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut out = SigmaRational::new(alphabet, 0, 0);
    let mut k = 0;
    while k < order.len() {
        let v = order[k];
        let closure = eps_closure(&b.eps, v);
        out.accepting.push(closure.contains(&end));
        out.transitions.push(Vec::new());
        for u in closure {
            for &(i, w) in &b.edges[u] {
                let id = *index.entry(w).or_insert_with(|| {
                    order.push(w);
                    order.len() - 1
                });
                if !out.transitions[k].contains(&(i, id)) {
                    out.transitions[k].push((i, id));
                }
            }
        }
        k += 1;
    }
    Ok(out)
}

/// [`parse_regex`] over the alphabet `S I X`.
pub fn parse_sigma_regex(text: &str) -> Result<SigmaRational> {
    parse_regex(text, &SIGMA_ALPHABET)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_word_only() {
        let r = parse_sigma_regex("e").unwrap();
        assert!(r.accepts(""));
        assert!(!r.accepts("S"));
        assert_eq!(r.shortest_word().as_deref(), Some(""));
    }

    #[test]
    fn everything() {
        let r = parse_sigma_regex("(S|I|X)*").unwrap();
        for w in ["", "S", "XIS", "SSSSIX"] {
            assert!(r.accepts(w), "{w}");
        }
        assert!(r
            .is_subset_of(&SigmaRational::universal(&SIGMA_ALPHABET))
            .unwrap());
        assert!(SigmaRational::universal(&SIGMA_ALPHABET)
            .is_subset_of(&r)
            .unwrap());
    }

    #[test]
    fn singleton_and_star() {
        let r = parse_sigma_regex("X S X").unwrap();
        assert!(r.accepts("XSX"));
        assert!(!r.accepts("XS"));
        let s = parse_sigma_regex("S*").unwrap();
        assert!(s.accepts("") && s.accepts("SSS") && !s.accepts("SI"));
        assert!(parse_sigma_regex("(S|)X").unwrap().accepts("X"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_sigma_regex("S(I|X") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match parse_sigma_regex("SQ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("{other:?}"),
        }
        assert!(parse_sigma_regex("S)").is_err());
        assert!(parse_sigma_regex("*").is_err());
    }

    #[test]
    fn boolean_operations() {
        let a = parse_sigma_regex("S*I").unwrap();
        let b = parse_sigma_regex("(S|I)*").unwrap();
        assert!(a.is_subset_of(&b).unwrap());
        assert!(!b.is_subset_of(&a).unwrap());
        let both = a.intersect(&parse_sigma_regex("SSI|X").unwrap()).unwrap();
        assert_eq!(both.shortest_word().as_deref(), Some("SSI"));
        assert!(parse_sigma_regex("S")
            .unwrap()
            .intersect(&parse_sigma_regex("I").unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn substitution_and_reversal() {
        let r = parse_regex("(PT)*", &['P', 'S', 'T']).unwrap();
        let img = r
            .substitute(&SIGMA_ALPHABET, &[('P', "X"), ('S', "S"), ('T', "XISIX")])
            .unwrap();
        assert!(img.accepts("XXISIX"));
        assert!(img.accepts(""));
        assert!(!img.accepts("XX"));
        let rev = parse_sigma_regex("SI*X").unwrap().reversed();
        assert!(rev.accepts("XIIS") && rev.accepts("XS") && !rev.accepts("SX"));
    }
}
