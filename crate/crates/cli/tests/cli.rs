use std::io::Write;
use std::process::{Command, Output, Stdio};

use fg_orbits::{fold_generators, w2, StallingsAutomaton};
use serde_json::Value;

fn run_with(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fg-orbits"));
    cmd.args(args)
        .env_remove("FGORBITS_MAX_STATES")
        .env_remove("FGORBITS_MAX_AUT_SIZE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    {
        let mut pipe = child.stdin.take().expect("stdin");
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).expect("write stdin");
        }
    }
    child.wait_with_output().expect("binary finishes")
}

fn run(args: &[&str]) -> Output {
    run_with(args, None, &[])
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

/// Checks the decision schema and returns the parsed value.
fn decision(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "{}", stderr(o));
    let v = json(o);
    assert!(v["answer"].is_boolean());
    assert!(v["stats"]["states"].is_u64());
    assert!(v["stats"]["t"].is_u64());
    if let Some(w) = v.get("witness") {
        for key in ["sigma_word", "psi", "prefix", "conjugator"] {
            assert!(w[key].is_string(), "{key}");
        }
        assert!(w["n"].is_u64());
    }
    v
}

#[test]
fn primitive_abb() {
    let o = run(&["primitive", "-w", "abb"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("yes"));
    assert!(text.contains("phi: "));
    assert!(text.contains("automorphism: abb ; b"));
}

#[test]
fn member_from_stdin() {
    let o = run_with(&["member", "-g", "-", "-w", "a"], Some("aa\nb\n"), &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "no\n");
    let o = run_with(
        &["member", "-g", "-", "-w", "aab"],
        Some("# comment\naa\nb\n"),
        &[],
    );
    assert_eq!(stdout(&o), "yes\n");
}

#[test]
fn member_conjugate() {
    assert_eq!(stdout(&run(&["member", "-g", "a", "-w", "baB"])), "no\n");
    assert_eq!(
        stdout(&run(&["member", "-g", "a", "-w", "baB", "--conjugate"])),
        "yes\n"
    );
}

#[test]
fn orbit_elem_b_into_a() {
    let o = run(&["orbit-elem", "-w", "b", "-g", "a", "-R", "(S|I|X)*"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("yes"));

    let v = decision(&run(&[
        "orbit-elem",
        "-w",
        "b",
        "-g",
        "a",
        "-R",
        "(S|I|X)*",
        "--json",
    ]));
    assert_eq!(v["answer"], true);
    let sigma = v["witness"]["sigma_word"].as_str().unwrap();
    assert_eq!(sigma.len(), 1);
    let mu = fg_orbits::SigmaLetter::word_endo(&fg_orbits::SigmaLetter::parse_word(sigma).unwrap());
    let image = mu
        .image_subgroup(&fold_generators(2, &[w2("a")]).unwrap())
        .unwrap();
    assert!(image.contains(&w2("b")));
    // X alone is also a witness.
    let v = decision(&run(&[
        "orbit-elem",
        "-w",
        "b",
        "-g",
        "a",
        "-R",
        "X",
        "--json",
    ]));
    assert_eq!(v["witness"]["sigma_word"], "X");
}

#[test]
fn orbit_elem_kinds() {
    let v = decision(&run(&[
        "orbit-elem",
        "-w",
        "b",
        "-g",
        "a",
        "-R",
        "S*",
        "--json",
    ]));
    assert_eq!(v["answer"], false);
    assert!(v.get("witness").is_none());
    let v = decision(&run(&[
        "orbit-elem",
        "-w",
        "Bab",
        "-g",
        "a",
        "-R",
        "e",
        "--kind",
        "1'",
        "--json",
    ]));
    assert_eq!(v["answer"], true);
    let v = decision(&run(&[
        "orbit-elem",
        "-w",
        "Bab,aa",
        "-g",
        "a",
        "-R",
        "e",
        "--kind",
        "4",
        "--json",
    ]));
    assert_eq!(v["answer"], true);
    assert_eq!(
        v["witness"]["conjugator"]
            .as_str()
            .unwrap()
            .split(',')
            .count(),
        2
    );
    let o = run(&["orbit-elem", "-w", "a", "-g", "a", "-R", "e", "--kind", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn orbit_subgroup_kinds() {
    let v = decision(&run(&[
        "orbit-subgroup",
        "-K",
        "b",
        "-g",
        "a",
        "-R",
        "(S|I|X)*",
        "--kind",
        "3",
        "--json",
    ]));
    assert_eq!(v["answer"], true);
    let v = decision(&run(&[
        "orbit-subgroup",
        "-K",
        "abab",
        "-g",
        "ab",
        "-R",
        "e",
        "--kind",
        "2'",
        "--json",
    ]));
    assert_eq!(v["answer"], true);
    let v = decision(&run(&[
        "orbit-subgroup",
        "-K",
        "a",
        "-g",
        "a,b",
        "-R",
        "(S|I|X)*",
        "--kind",
        "3'",
        "--json",
    ]));
    assert_eq!(v["answer"], false);
}

#[test]
fn substitution_sets() {
    // T sends b to ab.
    let v = decision(&run(&[
        "orbit-elem",
        "-w",
        "ab",
        "-g",
        "b",
        "-R",
        "T",
        "--is",
        "--json",
    ]));
    assert_eq!(v["answer"], true);
    let v = decision(&run(&[
        "orbit-elem",
        "-w",
        "a",
        "-g",
        "ab",
        "-R",
        "T",
        "--is",
        "--json",
    ]));
    assert_eq!(v["answer"], false);
    // The inverse of T sends ab to b.
    let v = decision(&run(&[
        "orbit-elem",
        "-w",
        "b",
        "-g",
        "ab",
        "-R",
        "T",
        "--is-inverse",
        "--json",
    ]));
    assert_eq!(v["answer"], true);
    let o = run(&[
        "orbit-elem",
        "-w",
        "b",
        "-g",
        "ab",
        "-R",
        "T",
        "--is",
        "--is-inverse",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn orbit_aut_and_primitive_containment() {
    let v = decision(&run(&["orbit-aut", "-w", "a", "-g", "aa,b", "--json"]));
    assert_eq!(v["answer"], true);
    let v = decision(&run(&["orbit-aut", "-w", "a", "-g", "abAB", "--json"]));
    assert_eq!(v["answer"], false);
    let v = decision(&run(&["contains-primitive", "-g", "bab", "--json"]));
    assert_eq!(v["answer"], true);
    let v = decision(&run(&["contains-primitive", "-g", "aabb", "--json"]));
    assert_eq!(v["answer"], false);
}

#[test]
fn exit_codes() {
    let o = run(&["member", "-g", "a", "-w", "q"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.starts_with("error: parse-error: "), "{err}");
    assert_eq!(err.lines().count(), 1);

    let o = run(&["member", "-g", "a", "-w", "a", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: invalid-input: "));

    let o = run(&["metrics", "-g", "a,b,c"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["orbit-elem", "-w", "b", "-g", "a", "-R", "(S|I"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: parse-error: "));

    let o = run(&["transition-system", "-g", "aab,bAb", "--max-states", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: resource-limit: "));
}

#[test]
fn caps_from_environment_and_flags() {
    let args = ["transition-system", "-g", "aab,bAb"];
    let o = run_with(&args, None, &[("FGORBITS_MAX_STATES", "2")]);
    assert_eq!(o.status.code(), Some(2));
    let mut with_flag = args.to_vec();
    with_flag.extend(["--max-states", "100000"]);
    let o = run_with(&with_flag, None, &[("FGORBITS_MAX_STATES", "2")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run_with(&args, None, &[("FGORBITS_MAX_AUT_SIZE", "1")]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_with(&args, None, &[("FGORBITS_MAX_STATES", "lots")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fold_dot_round_trip() {
    let o = run(&["fold", "-g", "aab,bAb,abAB", "--dot", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let parsed = StallingsAutomaton::from_dot(&stdout(&o)).unwrap();
    let direct = fold_generators(2, &[w2("aab"), w2("bAb"), w2("abAB")]).unwrap();
    assert_eq!(parsed, direct);

    let dir = std::env::temp_dir().join(format!("fg-orbits-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.dot");
    let o = run(&["fold", "-g", "aab,bAb", "--dot", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("states: "));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(StallingsAutomaton::from_dot(&text).is_ok());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fold_from_file_and_json() {
    let dir = std::env::temp_dir().join(format!("fg-orbits-gens-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.txt");
    std::fs::write(&path, "# H\naa\n\nb  # second\n").unwrap();
    let arg = format!("@{}", path.display());
    let v = json(&run(&["fold", "-g", &arg, "--json"]));
    assert_eq!(v["states"], 2);
    assert_eq!(v["subgroup_rank"], 2);
    std::fs::remove_dir_all(&dir).ok();

    let v = json(&run(&["fold", "-g", "ab,ca", "--rank", "3", "--json"]));
    assert_eq!(v["subgroup_rank"], 2);
}

#[test]
fn metrics_output() {
    let v = json(&run(&["metrics", "-g", "aa,b", "--json"]));
    assert_eq!(v["profile"]["sigma"], 2);
    assert_eq!(v["metrics"]["hc"], 2);
    let text = stdout(&run(&["metrics", "-g", "a"]));
    assert!(text.contains("sigma: 1"));
}

#[test]
fn transition_system_outputs() {
    let o = run(&[
        "transition-system",
        "-g",
        "a",
        "--alphabet",
        "sigma0",
        "--json",
    ]);
    let v = json(&o);
    let states = v["states"].as_array().unwrap();
    assert!(!states.is_empty());
    assert_eq!(states[0]["path"], "");
    assert!(states[0]["next"]["X"].is_null());
    let dot = stdout(&run(&[
        "transition-system",
        "-g",
        "a",
        "--dot",
        "-",
        "--expanded",
    ]));
    assert!(dot.starts_with("digraph closure {"));
    assert!(dot.contains("label=\"S\""));
}

#[test]
fn basis_completion_output() {
    let text = stdout(&run(&["basis-completion", "-g", "a"]));
    let z = text.lines().next().unwrap().strip_prefix("z: ").unwrap();
    let h = fold_generators(2, &[w2("a"), w2(z)]).unwrap();
    assert!(h.is_bouquet());
    assert_eq!(stdout(&run(&["basis-completion", "-g", "aa"])), "none\n");
    let o = run(&["basis-completion", "-g", "a,b"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn grammar_output() {
    let rules = stdout(&run(&["grammar", "--endo", "a ; ab", "-w", "b"]));
    assert!(rules.lines().all(|l| l.contains(" -> ")));
    assert!(rules.lines().any(|l| l == "[S] -> #b##"));
    let words = stdout(&run(&[
        "grammar",
        "--endo",
        "a ; ab",
        "-w",
        "b",
        "--max-len",
        "6",
    ]));
    assert_eq!(words, "#aab##\n#ab##\n#b##\n");
    let o = run(&["grammar", "--endo", "a ; B", "-w", "b"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["orbit-aut", "-w", "ab", "-g", "aab,bb", "--json"][..],
        &["transition-system", "-g", "aab,bAb", "--dot", "-"],
        &["contains-primitive", "-g", "aabb"],
    ] {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn stdin_only_once() {
    let o = run_with(&["member", "-g", "-", "-w", "-"], Some("a\n"), &[]);
    assert_eq!(o.status.code(), Some(1));
}
