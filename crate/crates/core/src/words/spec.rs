//! Declarative word specifications.
//!
//! A spec is plain `key = value` text, one entry per line, `#` starting a
//! comment.  The `kind` key selects the generator and the remaining keys
//! supply its parameters:
//!
//! | kind             | keys                                              |
//! |------------------|---------------------------------------------------|
//! | `builtin`        | `word` (any name accepted by [`InfiniteWord::builtin`]) |
//! | `characteristic` | `set` (`triangular`, `squares`, `polygonal:s`, `powers-mersenne`, `v-system`, …) |
//! | `morphic`        | `morphism`, optional `seed` (default 0) and `coding` |
//! | `automatic`      | `ans` (built-in system name), `dfao` (path of a JSON automaton) |
//! | `periodic`       | optional `prefix`, `cycle` (digit strings)        |
//!
//! An optional `name` key names the word; it defaults to the spec's kind.
//!
//! ```text
//! # characteristic word of the triangular numbers
//! name = w1
//! kind = characteristic
//! set = triangular
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;

use super::{InfiniteWord, Letter, Morphism, SetGenerator};
use crate::automata::AutomatonJson;
use crate::error::{Error, Result};
use crate::numeration::Ans;

/// Output name given to the sink of a loaded DFAO whose transition table is
/// partial.
const SINK_OUTPUT: &str = "_";

/// The generator a spec describes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WordKind {
    /// A built-in word by name.
    Builtin {
        /// Registry name.
        word: String,
    },
    /// The characteristic word of a built-in set.
    Characteristic {
        /// Set generator name.
        set: String,
    },
    /// `coding(morphism^ω(seed))`.
    Morphic {
        /// Morphism in `0->01, 1->0` syntax.
        morphism: String,
        /// Seed letter.
        seed: Letter,
        /// Optional coding in the same syntax.
        coding: Option<String>,
    },
    /// A DFAO read over a numeration system.
    Automatic {
        /// Built-in numeration system name.
        ans: String,
        /// Path of the DFAO in JSON form.
        dfao: PathBuf,
    },
    /// `prefix · cycle^ω`.
    Periodic {
        /// Preperiod letters.
        prefix: Vec<Letter>,
        /// Period letters (nonempty).
        cycle: Vec<Letter>,
    },
}

/// A parsed word specification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordSpec {
    /// Name of the word.
    pub name: String,
    /// Generator and parameters.
    #[serde(flatten)]
    pub kind: WordKind,
}

fn digits(key: &str, text: &str) -> Result<Vec<Letter>> {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| {
            c.to_digit(36)
                .map(|d| d as Letter)
                .ok_or_else(|| Error::Invalid(format!("`{key}` letter `{c}` is not a digit")))
        })
        .collect()
}

impl WordSpec {
    /// Parses spec text.
    pub fn parse(text: &str) -> Result<WordSpec> {
        let mut entries: BTreeMap<String, String> = BTreeMap::new();
        for (number, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("line {}: expected `key = value`", number + 1)))?;
            let key = key.trim().to_string();
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(Error::Invalid(format!("line {}: duplicate key `{key}`", number + 1)));
            }
        }
        let kind_name = entries.remove("kind").ok_or_else(|| Error::Invalid("spec lacks a `kind`".into()))?;
        let name = entries.remove("name").unwrap_or_else(|| kind_name.clone());
        let require = |entries: &mut BTreeMap<String, String>, key: &str| {
            entries.remove(key).ok_or_else(|| Error::Invalid(format!("`{kind_name}` spec lacks `{key}`")))
        };
        let e = &mut entries;
        let kind = match kind_name.as_str() {
            "builtin" => WordKind::Builtin { word: require(e, "word")? },
            "characteristic" => WordKind::Characteristic { set: require(e, "set")? },
            "morphic" => {
                let morphism = require(e, "morphism")?;
                let seed = match e.remove("seed") {
                    Some(s) => s.parse().map_err(|_| Error::Invalid(format!("seed `{s}` is not a letter")))?,
                    None => 0,
                };
                WordKind::Morphic { morphism, seed, coding: e.remove("coding") }
            }
            "automatic" => WordKind::Automatic { ans: require(e, "ans")?, dfao: PathBuf::from(require(e, "dfao")?) },
            "periodic" => {
                let prefix = digits("prefix", &e.remove("prefix").unwrap_or_default())?;
                let cycle = digits("cycle", &require(e, "cycle")?)?;
                WordKind::Periodic { prefix, cycle }
            }
            other => return Err(Error::Unknown { kind: "word kind", name: other.to_string() }),
        };
        if let Some(key) = entries.keys().next() {
            return Err(Error::Invalid(format!("unexpected key `{key}` for kind `{kind_name}`")));
        }
        Ok(WordSpec { name, kind })
    }

    /// Reads and parses a spec file.
    pub fn load(path: &Path) -> Result<WordSpec> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        WordSpec::parse(&text)
    }

    /// Builds the word; relative DFAO paths are resolved against `base_dir`.
    pub fn build(&self, base_dir: &Path) -> Result<InfiniteWord> {
        match &self.kind {
            WordKind::Builtin { word } => InfiniteWord::builtin(word),
            WordKind::Characteristic { set } => Ok(InfiniteWord::characteristic(&self.name, SetGenerator::parse(set)?)),
            WordKind::Morphic { morphism, seed, coding } => {
                let coding = coding.as_deref().map(Morphism::parse).transpose()?;
                InfiniteWord::morphic(&self.name, Morphism::parse(morphism)?, *seed, coding)
            }
            WordKind::Automatic { ans, dfao } => {
                let path = base_dir.join(dfao);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
                let dfao = AutomatonJson::parse(&text)?.to_dfao(SINK_OUTPUT)?;
                InfiniteWord::automatic(&self.name, Arc::new(Ans::builtin(ans)?), Arc::new(dfao))
            }
            WordKind::Periodic { prefix, cycle } => InfiniteWord::periodic(&self.name, prefix.clone(), cycle.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_spec() {
        let spec = WordSpec::parse("# triangular\nname = w1\nkind = characteristic\nset = triangular\n").unwrap();
        assert_eq!(spec.name, "w1");
        let w = spec.build(Path::new(".")).unwrap();
        assert_eq!(w.render_prefix(20).unwrap(), "11010010001000010000");
    }

    #[test]
    fn morphic_spec_with_erasing_coding() {
        let spec = WordSpec::parse("kind = morphic\nmorphism = 0->01, 1->122, 2->2\ncoding = 0->, 1->1, 2->0").unwrap();
        let w = spec.build(Path::new(".")).unwrap();
        let squares = InfiniteWord::builtin("squares").unwrap();
        assert_eq!(w.prefix(500).unwrap(), squares.prefix(500).unwrap());
    }

    #[test]
    fn periodic_and_builtin_specs() {
        let w = WordSpec::parse("kind = periodic\nprefix = 2\ncycle = 01").unwrap().build(Path::new(".")).unwrap();
        assert_eq!(w.render_prefix(7).unwrap(), "2010101");
        let tm = WordSpec::parse("kind = builtin\nword = thue-morse").unwrap().build(Path::new(".")).unwrap();
        assert_eq!(tm.render_prefix(8).unwrap(), "01101001");
    }

    #[test]
    fn malformed_specs_are_rejected() {
        assert!(WordSpec::parse("set = triangular").is_err());
        assert!(WordSpec::parse("kind = morphic").is_err());
        assert!(WordSpec::parse("kind = builtin\nword = x\nword = y").is_err());
        assert!(WordSpec::parse("kind = builtin\nword = x\nextra = 1").is_err());
        assert!(matches!(WordSpec::parse("kind = nonsense"), Err(Error::Unknown { .. })));
        assert!(WordSpec::parse("kind = periodic\ncycle = 0!").is_err());
    }
}
