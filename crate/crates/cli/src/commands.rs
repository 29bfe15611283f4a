use std::fmt::Write as _;

use fg_orbits::{
    basis_completion, bounded_language, choose_t, closure_system, contains_primitive,
    decide_full_aut, decide_rational, emit_closure_grammar, encode_invertible_substitutions,
    fold_generators, is_primitive, parse_sigma_regex, parse_substitution_regex, Alphabet, Decision,
    Endo2, Error, Problem, Result, SigmaRational, StallingsAutomaton, SubstitutionKind, Word,
};
use serde_json::{json, Value};

use crate::input::Inputs;
use crate::{AlphabetArg, Command, Substitutions};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn to_json(v: &Value) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("json values serialize")
    )
}

fn words_text(ws: &[Word]) -> String {
    ws.iter()
        .map(|w| w.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// `-` prints to stdout, anything else is a path.
fn emit_dot(path: &str, dot: &str, out: &mut String) -> Result<()> {
    if path == "-" {
        out.push_str(dot);
        Ok(())
    } else {
        std::fs::write(path, dot).map_err(|e| Error::InvalidInput(format!("writing {path}: {e}")))
    }
}

fn decision_text(d: &Decision) -> String {
    let mut s = format!("{}\n", yes_no(d.answer));
    if let Some(w) = &d.witness {
        let sigma = w.sigma_word();
        let _ = writeln!(
            s,
            "witness: {}",
            if sigma.is_empty() { "e" } else { &sigma }
        );
        let _ = writeln!(s, "psi: {}", w.psi);
        let _ = writeln!(s, "prefix: {}", w.prefix);
        let _ = writeln!(s, "n: {}", w.n);
        let _ = writeln!(s, "conjugator: {}", w.conjugator_text());
        let _ = writeln!(s, "automorphism: {}", w.automorphism);
    }
    let _ = writeln!(s, "states: {}", d.stats.states);
    let _ = writeln!(s, "t: {}", d.stats.t);
    s
}

fn decision_out(d: &Decision, json: bool) -> String {
    if json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(d).expect("decisions serialize")
        )
    } else {
        decision_text(d)
    }
}

/// The rational set, rewritten over Σ when it describes substitutions, and
/// the conjugation to apply to the instance.
fn rational(text: &str, subst: &Substitutions) -> Result<(SigmaRational, Option<Endo2>)> {
    let kind = match (subst.is, subst.is_inverse) {
        (false, false) => return Ok((parse_sigma_regex(text)?, None)),
        (true, _) => SubstitutionKind::Is,
        (false, true) => SubstitutionKind::IsInverse,
    };
    let enc = encode_invertible_substitutions(kind, &parse_substitution_regex(text)?)?;
    Ok((enc.rational, enc.conjugation))
}

fn conjugate_subgroup(h: StallingsAutomaton, j: &Option<Endo2>) -> Result<StallingsAutomaton> {
    match j {
        Some(j) => j.image_subgroup(&h),
        None => Ok(h),
    }
}

fn conjugate_word(u: Word, j: &Option<Endo2>) -> Word {
    match j {
        Some(j) => j.apply(&u),
        None => u,
    }
}

pub fn run(cmd: Command) -> Result<String> {
    let inputs = Inputs::new();
    let mut out = String::new();
    match cmd {
        Command::Fold {
            gens,
            rank,
            dot,
            out: o,
        } => {
            let h = fold_generators(rank, &inputs.words(&gens, rank)?)?;
            if let Some(path) = dot {
                emit_dot(&path, &h.to_dot(), &mut out)?;
                if path == "-" {
                    return Ok(out);
                }
            }
            let basis = h.generators();
            if o.json {
                let edges: Vec<Value> = h
                    .edges()
                    .iter()
                    .map(|&(p, x, q)| json!([p, fg_orbits::Letter::positive(x).to_string(), q]))
                    .collect();
                out.push_str(&to_json(&json!({
                    "states": h.state_count(),
                    "edges": edges,
                    "subgroup_rank": h.subgroup_rank(),
                    "generators": basis.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                })));
            } else {
                let _ = writeln!(out, "states: {}", h.state_count());
                let _ = writeln!(out, "edges: {}", h.edge_count());
                let _ = writeln!(out, "subgroup rank: {}", h.subgroup_rank());
                let _ = writeln!(out, "basis: {}", words_text(&basis));
            }
        }
        Command::Member {
            gens,
            word,
            rank,
            conjugate,
            out: o,
        } => {
            let h = fold_generators(rank, &inputs.words(&gens, rank)?)?;
            let u = inputs.word(&word, rank)?;
            let answer = if conjugate {
                h.contains_conjugate(&u)
            } else {
                h.contains(&u)
            };
            if o.json {
                out.push_str(&to_json(&json!({ "answer": answer })));
            } else {
                let _ = writeln!(out, "{}", yes_no(answer));
            }
        }
        Command::Metrics { gens, out: o } => {
            let h = fold_generators(2, &inputs.words(&gens, 2)?)?;
            let profile = h.singularity_profile()?;
            let m = h.metrics()?;
            let bridges = h.bridge_decomposition()?;
            if o.json {
                let bridges: Vec<Value> = bridges
                    .iter()
                    .map(|b| json!({"start": b.start, "end": b.end, "label": b.label.to_string()}))
                    .collect();
                out.push_str(&to_json(&json!({
                    "profile": profile,
                    "metrics": m,
                    "bridges": bridges,
                })));
            } else {
                let list = |v: &[usize]| {
                    v.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                let _ = writeln!(out, "sources: {}", list(&profile.sources));
                let _ = writeln!(out, "sinks: {}", list(&profile.sinks));
                let _ = writeln!(out, "sigma: {}", profile.sigma);
                let _ = writeln!(out, "hc: {}", m.hc);
                let _ = writeln!(out, "hcfp: {}", m.hcfp);
                let _ = writeln!(out, "shcfp: {}", m.shcfp);
                let _ = writeln!(out, "delta0: {}", m.delta0);
                let _ = writeln!(out, "delta: {}", m.delta);
                let _ = writeln!(out, "zeta: {}", m.zeta);
                for b in bridges {
                    let _ = writeln!(out, "bridge: {} -> {} {}", b.start, b.end, b.label);
                }
            }
        }
        Command::Primitive { word, out: o } => {
            let u = inputs.word(&word, 2)?;
            let wit = is_primitive(&u);
            if o.json {
                let v = match &wit {
                    Some(w) => json!({
                        "answer": true,
                        "w": w.w.to_string(),
                        "psi": w.psi.to_string(),
                        "phi": w.phi.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    }),
                    None => json!({ "answer": false }),
                };
                out.push_str(&to_json(&v));
            } else {
                let _ = writeln!(out, "{}", yes_no(wit.is_some()));
                if let Some(w) = wit {
                    let phi: Vec<String> = w.phi.iter().map(|g| g.to_string()).collect();
                    let _ = writeln!(out, "w: {}", w.w);
                    let _ = writeln!(out, "psi: {}", w.psi);
                    let _ = writeln!(
                        out,
                        "phi: {}",
                        if phi.is_empty() {
                            "id".into()
                        } else {
                            phi.join(" ")
                        }
                    );
                    let _ = writeln!(out, "automorphism: {}", w.endo());
                }
            }
        }
        Command::OrbitElem {
            word,
            gens,
            rational: text,
            kind,
            subst,
            caps,
            out: o,
        } => {
            let (r, j) = rational(&text, &subst)?;
            let h = conjugate_subgroup(fold_generators(2, &inputs.words(&gens, 2)?)?, &j)?;
            let words: Vec<Word> = inputs
                .words(&word, 2)?
                .into_iter()
                .map(|u| conjugate_word(u, &j))
                .collect();
            let single = || -> Result<Word> {
                match words.as_slice() {
                    [u] => Ok(u.clone()),
                    _ => Err(Error::InvalidInput(format!("kind {kind} takes one word"))),
                }
            };
            let problem = match kind.as_str() {
                "1" => Problem::Element(single()?),
                "1'" => Problem::ElementConjugate(single()?),
                "4" => Problem::Conjugates(words.clone()),
                other => {
                    return Err(Error::InvalidInput(format!(
                        "orbit-elem kinds are 1, 1' and 4, got {other}"
                    )))
                }
            };
            let d = decide_rational(&problem, &h, &r, caps.limits()?)?;
            out.push_str(&decision_out(&d, o.json));
        }
        Command::OrbitSubgroup {
            subgroup,
            gens,
            rational: text,
            kind,
            subst,
            caps,
            out: o,
        } => {
            let (r, j) = rational(&text, &subst)?;
            let h = conjugate_subgroup(fold_generators(2, &inputs.words(&gens, 2)?)?, &j)?;
            let k = conjugate_subgroup(fold_generators(2, &inputs.words(&subgroup, 2)?)?, &j)?;
            let problem = match kind.as_str() {
                "2" => Problem::Subgroup(k),
                "2'" => Problem::SubgroupConjugate(k),
                "3" => Problem::Equal(k),
                "3'" => Problem::EqualConjugate(k),
                other => {
                    return Err(Error::InvalidInput(format!(
                        "orbit-subgroup kinds are 2, 2', 3 and 3', got {other}"
                    )))
                }
            };
            let d = decide_rational(&problem, &h, &r, caps.limits()?)?;
            out.push_str(&decision_out(&d, o.json));
        }
        Command::OrbitAut {
            word,
            gens,
            caps,
            out: o,
        } => {
            let h = fold_generators(2, &inputs.words(&gens, 2)?)?;
            let u = inputs.word(&word, 2)?;
            let d = decide_full_aut(&u, &h, caps.limits()?)?;
            out.push_str(&decision_out(&d, o.json));
        }
        Command::ContainsPrimitive { gens, caps, out: o } => {
            let h = fold_generators(2, &inputs.words(&gens, 2)?)?;
            let d = contains_primitive(&h, caps.limits()?)?;
            out.push_str(&decision_out(&d, o.json));
        }
        Command::TransitionSystem {
            gens,
            t,
            alphabet,
            dot,
            expanded,
            caps,
            out: o,
        } => {
            let h = fold_generators(2, &inputs.words(&gens, 2)?)?;
            let t = match t {
                Some(t) => t,
                None => choose_t(&h, &[])?,
            };
            let alphabet = match alphabet {
                AlphabetArg::Sigma => Alphabet::Sigma,
                AlphabetArg::Sigma0 => Alphabet::Sigma0,
            };
            let ts = closure_system(&h, t, alphabet, caps.limits()?)?;
            if let Some(path) = dot {
                emit_dot(&path, &ts.to_dot(expanded), &mut out)?;
                if path == "-" {
                    return Ok(out);
                }
            }
            if o.json {
                let states: Vec<Value> = (0..ts.state_count())
                    .map(|i| {
                        let succ: serde_json::Map<String, Value> = ts
                            .successors(i)
                            .map(|(l, j)| (l.to_string(), json!(j)))
                            .collect();
                        json!({
                            "hash": ts.state(i).key_hash(),
                            "size": ts.state(i).state_count(),
                            "path": fg_orbits::SigmaLetter::word_to_string(&ts.path_to(i)),
                            "next": succ,
                        })
                    })
                    .collect();
                out.push_str(&to_json(&json!({ "t": t, "states": states })));
            } else {
                let _ = writeln!(out, "t: {t}");
                let _ = writeln!(out, "states: {}", ts.state_count());
                for i in 0..ts.state_count() {
                    let succ: Vec<String> =
                        ts.successors(i).map(|(l, j)| format!("{l}->{j}")).collect();
                    let _ = writeln!(
                        out,
                        "{i} {} size={} {}",
                        ts.state(i).key_hash(),
                        ts.state(i).state_count(),
                        succ.join(" ")
                    );
                }
            }
        }
        Command::BasisCompletion { gens, rank, out: o } => {
            let gens = inputs.words(&gens, rank)?;
            let found = basis_completion(&gens, rank)?;
            if o.json {
                let v = match &found {
                    Some(c) => json!({
                        "found": true,
                        "z": c.z.to_string(),
                        "expression": c.expression(),
                    }),
                    None => json!({ "found": false }),
                };
                out.push_str(&to_json(&v));
            } else {
                match found {
                    Some(c) => {
                        let _ = writeln!(out, "z: {}", c.z);
                        let _ = writeln!(out, "completions: {}", c.expression());
                    }
                    None => out.push_str("none\n"),
                }
            }
        }
        Command::Grammar {
            endos,
            word,
            max_len,
            out: o,
        } => {
            let endos: Vec<Endo2> = endos.iter().map(|e| e.parse()).collect::<Result<_>>()?;
            let u = inputs.word(&word, 2)?;
            let g = emit_closure_grammar(&endos, &u)?;
            let rules: Vec<String> = g.rules.iter().map(|r| r.to_string()).collect();
            let language = max_len.map(|n| bounded_language(&g, n));
            if o.json {
                let mut v = json!({ "start": g.start, "rules": rules });
                if let Some(lang) = &language {
                    v["language"] = json!(lang);
                }
                out.push_str(&to_json(&v));
            } else if let Some(lang) = language {
                for w in lang {
                    let _ = writeln!(out, "{w}");
                }
            } else {
                out.push_str(&g.export());
            }
        }
    }
    Ok(out)
}
