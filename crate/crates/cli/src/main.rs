//! `fg-orbits`: folding, metrics, primitivity and orbit decisions in F₂.
//!
//! Exit status: 0 when a result was computed (the answer may be "no"),
//! 1 on invalid input, 2 when a resource cap was hit.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fg_orbits::{Error, Limits};

#[derive(Parser, Debug)]
#[command(
    name = "fg-orbits",
    version,
    about = "Orbit problems in the free group of rank two"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Print the result as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Caps {
    /// Cap on explored truncated automata (env FGORBITS_MAX_STATES).
    #[arg(long)]
    pub max_states: Option<usize>,
    /// Cap on the size of one truncated automaton (env FGORBITS_MAX_AUT_SIZE).
    #[arg(long)]
    pub max_aut_size: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AlphabetArg {
    Sigma,
    Sigma0,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fold generators into a Stallings automaton.
    Fold {
        /// Generators: comma-separated, `-` for stdin, `@file`.
        #[arg(short = 'g', long = "gens")]
        gens: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Write the automaton in DOT to this path (`-` for stdout).
        #[arg(long)]
        dot: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Subgroup membership of a word.
    Member {
        #[arg(short = 'g', long = "gens")]
        gens: String,
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Ask whether some conjugate of the word is a member.
        #[arg(long)]
        conjugate: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Singularities, bridges and homogeneous-path metrics.
    Metrics {
        #[arg(short = 'g', long = "gens")]
        gens: String,
        #[command(flatten)]
        out: Output,
    },
    /// Primitivity test with a factorization witness.
    Primitive {
        #[arg(short = 'w', long = "word")]
        word: String,
        #[command(flatten)]
        out: Output,
    },
    /// Problems 1, 1' and 4: words against μ(H) for μ in a rational set.
    OrbitElem {
        /// The word (several, comma-separated, for kind 4).
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(short = 'g', long = "gens")]
        gens: String,
        /// Regular expression over S, I, X (or P, S, T with --is/--is-inverse).
        #[arg(short = 'R', long = "rational")]
        rational: String,
        #[arg(long, default_value = "1")]
        kind: String,
        #[command(flatten)]
        subst: Substitutions,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Problems 2, 2', 3 and 3': a subgroup K against μ(H).
    OrbitSubgroup {
        #[arg(short = 'K', long = "subgroup")]
        subgroup: String,
        #[arg(short = 'g', long = "gens")]
        gens: String,
        #[arg(short = 'R', long = "rational")]
        rational: String,
        #[arg(long, default_value = "2")]
        kind: String,
        #[command(flatten)]
        subst: Substitutions,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Is φ(u) in H for some automorphism φ?
    OrbitAut {
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(short = 'g', long = "gens")]
        gens: String,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Does H contain a primitive element?
    ContainsPrimitive {
        #[arg(short = 'g', long = "gens")]
        gens: String,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// The closure of truncated automata under Σ or Σ₀.
    TransitionSystem {
        #[arg(short = 'g', long = "gens")]
        gens: String,
        /// Truncation radius; defaults to the least admissible one.
        #[arg(short = 't')]
        t: Option<usize>,
        #[arg(long, value_enum, default_value_t = AlphabetArg::Sigma)]
        alphabet: AlphabetArg,
        /// Write the system in DOT to this path (`-` for stdout).
        #[arg(long)]
        dot: Option<String>,
        /// List each truncation's edges in the DOT labels.
        #[arg(long)]
        expanded: bool,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Complete m−1 words to a basis of the free group of rank m.
    BasisCompletion {
        #[arg(short = 'g', long = "gens")]
        gens: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Context-sensitive grammar for the closure of u under endomorphisms.
    Grammar {
        /// An endomorphism `x ; y` (repeatable).
        #[arg(long = "endo")]
        endos: Vec<String>,
        #[arg(short = 'w', long = "word")]
        word: String,
        /// Print the generated words up to this length instead of the rules.
        #[arg(long)]
        max_len: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Substitutions {
    /// Read -R over P, S, T as a set of invertible substitutions.
    #[arg(long = "is", conflicts_with = "is_inverse")]
    pub is: bool,
    /// Read -R over P, S, T as the inverses of invertible substitutions.
    #[arg(long = "is-inverse")]
    pub is_inverse: bool,
}

fn env_cap(name: &str) -> Result<Option<usize>, Error> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidInput(format!("{name} must be a nonnegative integer"))),
        Err(_) => Ok(None),
    }
}

impl Caps {
    /// Flags first, then the environment, then the defaults.
    pub fn limits(&self) -> Result<Limits, Error> {
        let d = Limits::default();
        Ok(Limits {
            max_states: match self.max_states {
                Some(v) => v,
                None => env_cap("FGORBITS_MAX_STATES")?.unwrap_or(d.max_states),
            },
            max_aut_size: match self.max_aut_size {
                Some(v) => v,
                None => env_cap("FGORBITS_MAX_AUT_SIZE")?.unwrap_or(d.max_aut_size),
            },
        })
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("bad arguments");
            let first = first.strip_prefix("error: ").unwrap_or(first);
            eprintln!("error: invalid-input: {}", one_line(first));
            return ExitCode::from(1);
        }
    };
    match commands::run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", one_line(&e.to_string()));
            match e {
                Error::ResourceLimit { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
