//! Lazily generated infinite words with a memoized prefix.

use std::fmt;
use std::sync::{Arc, RwLock};

use super::morphism::Morphism;
use super::sets::SetGenerator;
use super::Letter;
use crate::automata::Dfao;
use crate::error::{Error, Result};
use crate::numeration::Ans;

/// Produces a prefix of at least the requested length.
pub type PrefixFn = Arc<dyn Fn(usize) -> Result<Vec<Letter>> + Send + Sync>;

/// How the letters of an [`InfiniteWord`] are produced.
#[derive(Clone)]
pub enum WordSource {
    /// `coding(f^ω(seed))`.
    Morphic {
        /// Prolongable, non-erasing morphism.
        morphism: Morphism,
        /// Letter on which `morphism` is prolongable.
        seed: Letter,
        /// Letter-to-word coding (may erase); `None` is the identity.
        coding: Option<Morphism>,
    },
    /// `x[n]` = output of the DFAO on `rep_S(n)` read most significant first.
    Automatic {
        /// The numeration system.
        ans: Arc<Ans>,
        /// Reads either the language letters or the padded track letters.
        dfao: Arc<Dfao>,
    },
    /// `prefix · cycle^ω`.
    Periodic {
        /// Preperiod.
        prefix: Vec<Letter>,
        /// Period (nonempty).
        cycle: Vec<Letter>,
    },
    /// `x[n] = 1` iff `n` is generated.
    Characteristic(SetGenerator),
    /// A generated family identified by `kind` (e.g. Sturmian words).
    Generated {
        /// Kind label used in reports.
        kind: &'static str,
        /// Prefix producer.
        generate: PrefixFn,
    },
    /// A finite explicit prefix; reading past it is an error.
    Explicit(Vec<Letter>),
}

/// An infinite word over a finite alphabet of display names, computed on
/// demand.  Prefixes are memoized; already-materialized prefixes are read
/// concurrently.
pub struct InfiniteWord {
    name: String,
    letters: Vec<String>,
    source: WordSource,
    cache: RwLock<Vec<Letter>>,
}

impl fmt::Debug for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InfiniteWord")
            .field("name", &self.name)
            .field("kind", &self.kind())
            .field("letters", &self.letters)
            .finish()
    }
}

fn digit_names(k: usize) -> Vec<String> {
    (0..k).map(|i| i.to_string()).collect()
}

impl InfiniteWord {
    /// A word from any source with explicit letter names.
    pub fn new(name: &str, letters: Vec<String>, source: WordSource) -> Result<InfiniteWord> {
        match &source {
            WordSource::Morphic { morphism, seed, coding } => {
                if !morphism.is_prolongable_on(*seed) {
                    return Err(Error::Invalid(format!("morphism {morphism} is not prolongable on {seed}")));
                }
                if morphism.is_erasing() {
                    return Err(Error::Invalid(format!(
                        "fixed-point morphism {morphism} is erasing; erasures belong in the coding"
                    )));
                }
                if morphism.target_size() > morphism.num_letters() {
                    return Err(Error::Invalid(format!("morphism {morphism} leaves its alphabet")));
                }
                if let Some(g) = coding {
                    if g.num_letters() < morphism.num_letters() {
                        return Err(Error::Invalid("coding does not cover the morphism alphabet".into()));
                    }
                }
            }
            WordSource::Periodic { cycle, .. } if cycle.is_empty() => {
                return Err(Error::Invalid("period of a periodic word is empty".into()))
            }
            _ => {}
        }
        Ok(InfiniteWord { name: name.to_string(), letters, source, cache: RwLock::new(Vec::new()) })
    }

    /// `coding(f^ω(seed))` with digit letter names.
    pub fn morphic(name: &str, morphism: Morphism, seed: Letter, coding: Option<Morphism>) -> Result<InfiniteWord> {
        let size = match &coding {
            Some(g) => g.target_size(),
            None => morphism.num_letters(),
        };
        InfiniteWord::new(name, digit_names(size.max(1)), WordSource::Morphic { morphism, seed, coding })
    }

    /// Automatic word of a DFAO over an ANS (output names become letters).
    pub fn automatic(name: &str, ans: Arc<Ans>, dfao: Arc<Dfao>) -> Result<InfiniteWord> {
        let lang = ans.language().alphabet();
        let track = ans.track_alphabet(1);
        if dfao.alphabet() != lang && dfao.alphabet() != &track {
            return Err(Error::AlphabetMismatch(format!(
                "DFAO reads {:?}, numeration system {} uses {:?}",
                dfao.alphabet().letters(),
                ans.name(),
                lang.letters()
            )));
        }
        let letters = dfao.output_names().to_vec();
        InfiniteWord::new(name, letters, WordSource::Automatic { ans, dfao })
    }

    /// `prefix · cycle^ω` with digit letter names.
    pub fn periodic(name: &str, prefix: Vec<Letter>, cycle: Vec<Letter>) -> Result<InfiniteWord> {
        let size = prefix.iter().chain(&cycle).map(|&a| a as usize + 1).max().unwrap_or(1);
        InfiniteWord::new(name, digit_names(size.max(2)), WordSource::Periodic { prefix, cycle })
    }

    /// Characteristic word of a set.
    pub fn characteristic(name: &str, set: SetGenerator) -> InfiniteWord {
        InfiniteWord::new(name, digit_names(2), WordSource::Characteristic(set)).expect("always valid")
    }

    /// A word produced by a prefix function.
    pub fn generated(name: &str, kind: &'static str, letters: Vec<String>, generate: PrefixFn) -> InfiniteWord {
        InfiniteWord::new(name, letters, WordSource::Generated { kind, generate }).expect("always valid")
    }

    /// A finite explicit prefix standing in for an infinite word.
    pub fn explicit(name: &str, letters: Vec<String>, prefix: Vec<Letter>) -> InfiniteWord {
        InfiniteWord::new(name, letters, WordSource::Explicit(prefix)).expect("always valid")
    }

    /// Fibonacci word `0 ↦ 01, 1 ↦ 0`.
    pub fn fibonacci() -> InfiniteWord {
        InfiniteWord::morphic("fibonacci", Morphism::parse("0->01,1->0").unwrap(), 0, None).unwrap()
    }

    /// Thue–Morse word `0 ↦ 01, 1 ↦ 10`.
    pub fn thue_morse() -> InfiniteWord {
        InfiniteWord::morphic("thue-morse", Morphism::parse("0->01,1->10").unwrap(), 0, None).unwrap()
    }

    /// Tribonacci word `0 ↦ 01, 1 ↦ 02, 2 ↦ 0`.
    pub fn tribonacci() -> InfiniteWord {
        InfiniteWord::morphic("tribonacci", Morphism::parse("0->01,1->02,2->0").unwrap(), 0, None).unwrap()
    }

    /// `w_s = f(g_s^ω(0))` with `g_s: 0 ↦ 01, 1 ↦ 12^s, 2 ↦ 2` and
    /// `f: 0 ↦ ε, 1 ↦ 1, 2 ↦ 0`.
    pub fn polygonal(s: usize) -> Result<InfiniteWord> {
        if s == 0 {
            return Err(Error::Invalid("polygonal parameter must be at least 1".into()));
        }
        let mut one = vec![1];
        one.extend(std::iter::repeat_n(2, s));
        let g = Morphism::new(vec![vec![0, 1], one, vec![2]]);
        let f = Morphism::new(vec![vec![], vec![1], vec![0]]);
        InfiniteWord::morphic(&format!("polygonal:{s}"), g, 0, Some(f))
    }

    /// Built-in words: `fibonacci`, `thue-morse`, `tribonacci`,
    /// `polygonal:s`, `triangular`, `squares`, `powers-mersenne`,
    /// `v-system` (the last four as characteristic words).
    pub fn builtin(name: &str) -> Result<InfiniteWord> {
        match name {
            "fibonacci" => Ok(InfiniteWord::fibonacci()),
            "thue-morse" => Ok(InfiniteWord::thue_morse()),
            "tribonacci" => Ok(InfiniteWord::tribonacci()),
            _ => {
                if let Some(s) = name.strip_prefix("polygonal:") {
                    let s = s.parse().map_err(|_| Error::Invalid(format!("polygonal parameter `{s}`")))?;
                    return InfiniteWord::polygonal(s);
                }
                match SetGenerator::parse(name) {
                    Ok(set) => Ok(InfiniteWord::characteristic(name, set)),
                    Err(_) => Err(Error::Unknown { kind: "word", name: name.to_string() }),
                }
            }
        }
    }

    /// Name of the word.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Letter display names.
    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    /// The generating source.
    pub fn source(&self) -> &WordSource {
        &self.source
    }

    /// Generator kind label.
    pub fn kind(&self) -> &'static str {
        match &self.source {
            WordSource::Morphic { .. } => "morphic",
            WordSource::Automatic { .. } => "automatic",
            WordSource::Periodic { .. } => "periodic",
            WordSource::Characteristic(_) => "characteristic",
            WordSource::Generated { kind, .. } => kind,
            WordSource::Explicit(_) => "explicit",
        }
    }

    /// The letter at position `n`.
    pub fn letter(&self, n: usize) -> Result<Letter> {
        self.with_prefix(n + 1, |p| p[n])
    }

    /// The prefix of length `n`.
    pub fn prefix(&self, n: usize) -> Result<Vec<Letter>> {
        self.with_prefix(n, |p| p.to_vec())
    }

    /// Runs `f` on the prefix of length `n` without copying it.
    pub fn with_prefix<R>(&self, n: usize, f: impl FnOnce(&[Letter]) -> R) -> Result<R> {
        {
            let cache = self.cache.read().expect("prefix cache poisoned");
            if cache.len() >= n {
                return Ok(f(&cache[..n]));
            }
        }
        let mut cache = self.cache.write().expect("prefix cache poisoned");
        if cache.len() < n {
            let target = n.max(2 * cache.len()).max(64);
            let fresh = self.generate(target, n)?;
            *cache = fresh;
        }
        Ok(f(&cache[..n]))
    }

    /// Renders a prefix with the letter names.
    pub fn render_prefix(&self, n: usize) -> Result<String> {
        self.with_prefix(n, |p| self.render(p))
    }

    /// Renders letters with this word's names.
    pub fn render(&self, word: &[Letter]) -> String {
        word.iter().map(|&a| self.letters[a as usize].as_str()).collect()
    }

    /// Positions `< limit` of the letter 1, when the word is a
    /// characteristic word (sparse access).
    pub fn characteristic_positions(&self, limit: u64) -> Option<Result<Vec<u64>>> {
        match &self.source {
            WordSource::Characteristic(set) => Some(set.elements_below(limit)),
            _ => None,
        }
    }

    /// Produces a prefix of length at least `required` (aiming for `target`).
    fn generate(&self, target: usize, required: usize) -> Result<Vec<Letter>> {
        let mut out = match &self.source {
            WordSource::Morphic { morphism, seed, coding } => morphic_prefix(morphism, *seed, coding.as_ref(), target)?,
            WordSource::Automatic { ans, dfao } => {
                let track = dfao.alphabet() != ans.language().alphabet();
                let mut out = Vec::with_capacity(target);
                for n in 0..target as u64 {
                    let mut rep = ans.rep(n)?;
                    if track {
                        for l in rep.iter_mut() {
                            *l = ans.to_track(*l);
                        }
                    }
                    out.push(dfao.eval(&rep) as Letter);
                }
                out
            }
            WordSource::Periodic { prefix, cycle } => {
                let mut out = prefix.clone();
                while out.len() < target {
                    out.extend_from_slice(cycle);
                }
                out
            }
            WordSource::Characteristic(set) => {
                let mut out = vec![0; target];
                for e in set.elements_below(target as u64)? {
                    out[e as usize] = 1;
                }
                out
            }
            WordSource::Generated { generate, .. } => generate(target)?,
            WordSource::Explicit(prefix) => {
                if prefix.len() < required {
                    return Err(Error::DepthExhausted(format!(
                        "explicit word {} has {} letters, {required} requested",
                        self.name,
                        prefix.len()
                    )));
                }
                prefix.clone()
            }
        };
        if out.len() < required {
            return Err(Error::DepthExhausted(format!(
                "word {} produced {} letters, {required} requested",
                self.name,
                out.len()
            )));
        }
        out.truncate(target.max(required));
        Ok(out)
    }
}

/// Prefix of `coding(f^ω(seed))` of length at least `len`.
///
/// The fixed point `x` satisfies `x = f(x)`, so `f(x[..j])` is a prefix of
/// `x`; the raw prefix is extended one expanded letter at a time.
fn morphic_prefix(f: &Morphism, seed: Letter, coding: Option<&Morphism>, len: usize) -> Result<Vec<Letter>> {
    let mut raw: Vec<Letter> = f.image(seed).to_vec();
    let mut expanded = 1usize;
    let mut out = Vec::with_capacity(len);
    let mut coded_upto = 0usize;
    // Stall detection: the coded word must keep growing.
    let mut stalled = 0usize;
    while out.len() < len {
        if coded_upto < raw.len() {
            let before = out.len();
            let a = raw[coded_upto];
            match coding {
                Some(g) => out.extend_from_slice(g.image(a)),
                None => out.push(a),
            }
            coded_upto += 1;
            stalled = if out.len() == before { stalled + 1 } else { 0 };
            if stalled > 1 << 20 {
                return Err(Error::Invalid(format!(
                    "coding erases a suffix of the fixed point of {f} (no output after {} letters)",
                    coded_upto
                )));
            }
            continue;
        }
        let a = raw[expanded];
        let image = f.image(a).to_vec();
        raw.extend_from_slice(&image);
        expanded += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_prefix() {
        assert_eq!(InfiniteWord::fibonacci().render_prefix(10).unwrap(), "0100101001");
    }

    #[test]
    fn thue_morse_prefix() {
        assert_eq!(InfiniteWord::thue_morse().render_prefix(16).unwrap(), "0110100110010110");
    }

    #[test]
    fn polygonal_words() {
        let w1 = InfiniteWord::polygonal(1).unwrap();
        assert_eq!(w1.render_prefix(20).unwrap(), "11010010001000010000");
        let w2 = InfiniteWord::polygonal(2).unwrap();
        assert_eq!(w2.render_prefix(16).unwrap(), "1100100001000000");
    }

    #[test]
    fn prefixes_are_consistent() {
        let w = InfiniteWord::tribonacci();
        let short = w.prefix(100).unwrap();
        let long = w.prefix(1000).unwrap();
        assert_eq!(&long[..100], &short[..]);
        assert_eq!(w.letter(3).unwrap(), long[3]);
    }

    #[test]
    fn periodic_and_explicit() {
        let w = InfiniteWord::periodic("p", vec![1], vec![0, 1]).unwrap();
        assert_eq!(w.render_prefix(6).unwrap(), "101010");
        let e = InfiniteWord::explicit("e", vec!["a".into()], vec![0; 5]);
        assert!(e.prefix(5).is_ok());
        assert!(matches!(e.prefix(6), Err(Error::DepthExhausted(_))));
    }

    #[test]
    fn erasing_degeneracy_detected() {
        let f = Morphism::parse("0->01,1->1").unwrap();
        let g = Morphism::parse("0->0,1->").unwrap();
        let w = InfiniteWord::morphic("degenerate", f, 0, Some(g)).unwrap();
        assert!(w.prefix(3).is_err());
    }

    #[test]
    fn non_prolongable_rejected() {
        assert!(InfiniteWord::morphic("x", Morphism::parse("0->10,1->0").unwrap(), 0, None).is_err());
    }
}
