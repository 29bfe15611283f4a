//! Word and subgroup arguments: inline text, `-` for stdin, `@path` for a file.

use std::cell::Cell;
use std::io::Read;

use fg_orbits::{parse_subgroup_file, Error, Result, Word};

pub struct Inputs {
    stdin_used: Cell<bool>,
}

impl Inputs {
    pub fn new() -> Self {
        Inputs {
            stdin_used: Cell::new(false),
        }
    }

    fn read_source(&self, arg: &str) -> Result<Option<String>> {
        if arg == "-" {
            if self.stdin_used.replace(true) {
                return Err(Error::InvalidInput(
                    "stdin can feed only one argument".into(),
                ));
            }
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::InvalidInput(format!("reading stdin: {e}")))?;
            return Ok(Some(text));
        }
        if let Some(path) = arg.strip_prefix('@') {
            return std::fs::read_to_string(path)
                .map(Some)
                .map_err(|e| Error::InvalidInput(format!("reading {path}: {e}")));
        }
        Ok(None)
    }

    /// A generator list: comma-separated inline, or one word per line.
    pub fn words(&self, arg: &str, rank: usize) -> Result<Vec<Word>> {
        match self.read_source(arg)? {
            Some(text) => parse_subgroup_file(&text, rank),
            None => arg
                .split(',')
                .map(|w| Word::parse(w.trim(), rank))
                .collect(),
        }
    }

    pub fn word(&self, arg: &str, rank: usize) -> Result<Word> {
        let mut words = self.words(arg, rank)?;
        if words.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "expected one word, got {}",
                words.len()
            )));
        }
        Ok(words.pop().expect("one word"))
    }
}
