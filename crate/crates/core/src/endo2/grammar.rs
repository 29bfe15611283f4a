//! Context-sensitive grammar for the closure `Γ*(u)` of a positive word
//! under a finite set of positive non-erasing endomorphisms.
//!
//! The generated language is `# Γ*(u) # #`, with `#` a marker terminal
//! outside the alphabet `{a, b}`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use super::Endo2;
use crate::error::{Error, Result};
use crate::words::Word;

/// Marker terminal framing every generated word.
pub const MARKER: char = '#';

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(char),
    Nonterminal(String),
}

impl Symbol {
    fn t(c: char) -> Symbol {
        Symbol::Terminal(c)
    }

    fn n(name: &str) -> Symbol {
        Symbol::Nonterminal(name.to_string())
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, Symbol::Terminal(_))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Terminal(c) => write!(f, "{c}"),
            Symbol::Nonterminal(name) => write!(f, "[{name}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Vec<Symbol>,
    pub rhs: Vec<Symbol>,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.lhs {
            write!(f, "{s}")?;
        }
        write!(f, " -> ")?;
        for s in &self.rhs {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    pub nonterminals: Vec<String>,
    pub terminals: Vec<char>,
    pub start: String,
    pub rules: Vec<Rule>,
}

impl Grammar {
    /// Every rule is non-contracting and rewrites at least one nonterminal.
    pub fn is_context_sensitive(&self) -> bool {
        self.rules
            .iter()
            .all(|r| r.lhs.len() <= r.rhs.len() && r.lhs.iter().any(|s| !s.is_terminal()))
    }

    /// One `ℓ -> r` rule per line, nonterminals bracketed.
    pub fn export(&self) -> String {
        self.rules.iter().map(|r| format!("{r}\n")).collect()
    }
}

fn word_symbols(w: &Word) -> Vec<Symbol> {
    w.to_string().chars().map(Symbol::t).collect()
}

/// Emits the grammar whose language is `# Γ*(u) # #`.
pub fn emit_closure_grammar(endos: &[Endo2], u: &Word) -> Result<Grammar> {
    if u.rank() != 2 || u.is_empty() || !u.is_positive() {
        return Err(Error::invalid(format!(
            "the seed word must be positive and nonempty, got {u}"
        )));
    }
    if let Some(e) = endos.iter().find(|e| !e.is_positive_nonerasing()) {
        return Err(Error::invalid(format!(
            "{e} does not map each letter to a nonempty positive word"
        )));
    }
    let hash = Symbol::t(MARKER);
    let (s, r, t) = (Symbol::n("S"), Symbol::n("R"), Symbol::n("T"));
    let names: Vec<String> = (1..=endos.len()).map(|i| format!("F{i}")).collect();
    let mut rules = Vec::new();
    let mut push = |lhs: Vec<Symbol>, rhs: Vec<Symbol>| rules.push(Rule { lhs, rhs });

    for name in &names {
        let mut rhs = vec![hash.clone(), Symbol::n(name)];
        rhs.extend(word_symbols(u));
        rhs.push(r.clone());
        push(vec![s.clone()], rhs);
    }
    let mut rhs = vec![hash.clone()];
    rhs.extend(word_symbols(u));
    rhs.extend([hash.clone(), hash.clone()]);
    push(vec![s.clone()], rhs);
    for (name, e) in names.iter().zip(endos) {
        let f = Symbol::n(name);
        for (x, img) in [('a', e.image_a()), ('b', e.image_b())] {
            let mut rhs = word_symbols(img);
            rhs.push(f.clone());
            push(vec![f.clone(), Symbol::t(x)], rhs);
        }
        push(vec![f.clone(), r.clone()], vec![t.clone(), r.clone()]);
        push(vec![f.clone(), r.clone()], vec![hash.clone(), hash.clone()]);
    }
    for x in ['a', 'b'] {
        push(vec![Symbol::t(x), t.clone()], vec![t.clone(), Symbol::t(x)]);
    }
    for name in &names {
        push(
            vec![hash.clone(), t.clone()],
            vec![hash.clone(), Symbol::n(name)],
        );
    }

    let mut nonterminals = vec!["S".to_string(), "R".to_string(), "T".to_string()];
    nonterminals.extend(names);
    Ok(Grammar {
        nonterminals,
        terminals: vec!['a', 'b', MARKER],
        start: "S".to_string(),
        rules,
    })
}

/// All terminal words of length at most `max_len` derivable from the start
/// symbol. Sentential forms longer than `max_len` are discarded, which is
/// exact for non-contracting grammars.
pub fn bounded_language(g: &Grammar, max_len: usize) -> BTreeSet<String> {
    let mut ids: HashMap<Symbol, u16> = HashMap::new();
    let mut symbols: Vec<Symbol> = Vec::new();
    let mut intern = |s: &Symbol| -> u16 {
        *ids.entry(s.clone()).or_insert_with(|| {
            symbols.push(s.clone());
            (symbols.len() - 1) as u16
        })
    };
    let start = intern(&Symbol::Nonterminal(g.start.clone()));
    let rules: Vec<(Vec<u16>, Vec<u16>)> = g
        .rules
        .iter()
        .map(|r| {
            (
                r.lhs.iter().map(&mut intern).collect(),
                r.rhs.iter().map(&mut intern).collect(),
            )
        })
        .collect();
    let terminal: Vec<Option<char>> = symbols
        .iter()
        .map(|s| match s {
            Symbol::Terminal(c) => Some(*c),
            Symbol::Nonterminal(_) => None,
        })
        .collect();

    let mut out = BTreeSet::new();
    if max_len == 0 {
        return out;
    }
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(vec![start]);
    queue.push_back(vec![start]);
    while let Some(form) = queue.pop_front() {
        if form.iter().all(|&s| terminal[s as usize].is_some()) {
            out.insert(form.iter().filter_map(|&s| terminal[s as usize]).collect());
            continue;
        }
        for (lhs, rhs) in &rules {
            if lhs.len() > form.len() || form.len() - lhs.len() + rhs.len() > max_len {
                continue;
            }
            for i in 0..=form.len() - lhs.len() {
                if form[i..i + lhs.len()] != lhs[..] {
                    continue;
                }
                let mut next = Vec::with_capacity(form.len() + rhs.len());
                next.extend_from_slice(&form[..i]);
                next.extend_from_slice(rhs);
                next.extend_from_slice(&form[i + lhs.len()..]);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    out
}
