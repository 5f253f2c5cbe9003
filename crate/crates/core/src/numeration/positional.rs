//! Positional numeration systems given by a linear recurrence, with greedy
//! representations and their numeration-language automata.

use crate::automata::{Alphabet, Dfa, Direction, RadixEnumerator, Symbol};
use crate::error::{Error, Result};

/// Largest value a basis term may take before the basis table stops growing.
const TERM_LIMIT: u64 = 1 << 62;

/// A positional system `U_0 = 1 < U_1 < …` satisfying
/// `U_n = Σ_t coefficients[t] · U_{n−1−t}` for `n ≥ initial.len()`, with
/// digits `0..=max_digit` and greedy (normal) representations.
#[derive(Clone, Debug)]
pub struct PositionalSystem {
    name: String,
    initial: Vec<u64>,
    coefficients: Vec<i64>,
    max_digit: u32,
    terms: Vec<u64>,
    language: Dfa,
}

impl PositionalSystem {
    /// Builds a system from its recurrence and the automaton of its greedy
    /// representations (over digit letters `0..=max_digit`, no leading zeros).
    pub fn new(
        name: &str,
        initial: Vec<u64>,
        coefficients: Vec<i64>,
        max_digit: u32,
        language: Dfa,
    ) -> Result<PositionalSystem> {
        if initial.first() != Some(&1) {
            return Err(Error::Invalid("a positional basis starts with U_0 = 1".into()));
        }
        if coefficients.len() > initial.len() {
            return Err(Error::Invalid("recurrence order exceeds the initial terms".into()));
        }
        let mut terms = initial.clone();
        loop {
            let n = terms.len();
            let next: i128 = coefficients.iter().enumerate().map(|(t, &c)| c as i128 * terms[n - 1 - t] as i128).sum();
            if next <= *terms.last().unwrap() as i128 {
                return Err(Error::Invalid(format!("basis is not increasing at index {n}")));
            }
            if next > TERM_LIMIT as i128 {
                break;
            }
            terms.push(next as u64);
        }
        if terms.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("basis is not increasing".into()));
        }
        Ok(PositionalSystem { name: name.to_string(), initial, coefficients, max_digit, terms, language })
    }

    /// Base-`k` numeration: `U_n = k^n`.
    pub fn base(k: u32) -> Result<PositionalSystem> {
        if k < 2 {
            return Err(Error::Invalid(format!("base {k} must be at least 2")));
        }
        let language = parry_language(&[k - 1], k - 1);
        PositionalSystem::new(&format!("base:{k}"), vec![1], vec![k as i64], k - 1, language)
    }

    /// Zeckendorf numeration on `1, 2, 3, 5, 8, …`.
    pub fn fibonacci() -> PositionalSystem {
        PositionalSystem::new("fibonacci", vec![1, 2], vec![1, 1], 1, parry_language(&[1, 0], 1))
            .expect("Fibonacci basis is valid")
    }

    /// Tribonacci numeration on `1, 2, 4, 7, 13, …` (used oracle-side only).
    pub fn tribonacci() -> PositionalSystem {
        PositionalSystem::new("tribonacci", vec![1, 2, 4], vec![1, 1, 1], 1, parry_language(&[1, 1, 0], 1))
            .expect("Tribonacci basis is valid")
    }

    /// `U_n = 2^{n+1} − 1` with digits `{0,1,2}`; greedy representations are
    /// the leading-nonzero words of `(0+1)*(ε+20*)`.
    pub fn mersenne() -> PositionalSystem {
        let alphabet = digit_alphabet(2);
        // 0: nothing significant read (start), 1: inside (0+1)*, 2: after the 2 (0* only), 3: sink
        let delta = vec![
            0, 1, 2, // start: leading zeros stay, 1 enters, 2 jumps
            1, 1, 2, // (0+1)*
            2, 3, 3, // 20*
            3, 3, 3,
        ];
        let padded =
            Dfa::new(alphabet, Direction::Msd, 0, vec![true, true, true, false], delta).expect("well-formed table");
        PositionalSystem::new("mersenne", vec![1, 3], vec![3, -2], 2, strip_leading_padding(&padded))
            .expect("Mersenne basis is valid")
    }

    /// `V_n = 3V_{n−1} + 2V_{n−2} + 3V_{n−4}` on `1, 4, 15, 54`: the canonical
    /// system of the Parry number with quasi-greedy expansion `(3202)^ω`.
    pub fn v_quaternary() -> PositionalSystem {
        PositionalSystem::new("v-quaternary", vec![1, 4, 15, 54], vec![3, 2, 0, 3], 3, parry_language(&[3, 2, 0, 2], 3))
            .expect("V basis is valid")
    }

    /// Built-in by registry name (`base:k`, `fibonacci`, `tribonacci`,
    /// `mersenne`, `v-quaternary`).
    pub fn builtin(name: &str) -> Result<PositionalSystem> {
        match name {
            "fibonacci" => Ok(PositionalSystem::fibonacci()),
            "tribonacci" => Ok(PositionalSystem::tribonacci()),
            "mersenne" => Ok(PositionalSystem::mersenne()),
            "v-quaternary" => Ok(PositionalSystem::v_quaternary()),
            _ => match name.strip_prefix("base:").map(str::parse::<u32>) {
                Some(Ok(k)) => PositionalSystem::base(k),
                _ => Err(Error::Unknown { kind: "numeration system", name: name.to_string() }),
            },
        }
    }

    /// Registry name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Initial terms.
    pub fn initial_terms(&self) -> &[u64] {
        &self.initial
    }

    /// Recurrence coefficients.
    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// Largest digit.
    pub fn max_digit(&self) -> u32 {
        self.max_digit
    }

    /// Basis term `U_i` (panics beyond the 2^62 table limit).
    pub fn term(&self, i: usize) -> u64 {
        self.terms[i]
    }

    /// All tabulated basis terms.
    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    /// Automaton of greedy representations (no leading zeros).
    pub fn language(&self) -> &Dfa {
        &self.language
    }

    /// Greedy representation of `n`, most significant digit first; `ε` for 0.
    pub fn greedy_rep(&self, n: u64) -> Vec<Symbol> {
        let len = self.terms.iter().take_while(|&&u| u <= n).count();
        let mut rest = n;
        let mut digits = Vec::with_capacity(len);
        for i in (0..len).rev() {
            let d = rest / self.terms[i];
            rest -= d * self.terms[i];
            digits.push(d as Symbol);
        }
        digits
    }

    /// `Σ c_i U_i` for a digit word `c_t…c_0`.
    pub fn value(&self, digits: &[Symbol]) -> Result<u64> {
        let len = digits.len();
        if len > self.terms.len() {
            return Err(Error::Overflow("evaluating a representation".into()));
        }
        digits.iter().enumerate().try_fold(0u64, |acc, (i, &d)| {
            if d > self.max_digit {
                return Err(Error::Invalid(format!("digit {d} exceeds {}", self.max_digit)));
            }
            (d as u64)
                .checked_mul(self.terms[len - 1 - i])
                .and_then(|x| x.checked_add(acc))
                .ok_or_else(|| Error::Overflow("evaluating a representation".into()))
        })
    }

    /// Checks that the language automaton accepts exactly the greedy
    /// representations of length ≤ `max_len` and enumerates them in numeric
    /// order.  Reports the first counterexample word.
    pub fn validate_language(&self, max_len: usize) -> Result<()> {
        let enumerator = RadixEnumerator::new(self.language.clone());
        let alphabet = self.language.alphabet();
        let limit = self.terms[max_len];
        let total = enumerator.count_shorter(max_len + 1)?;
        for n in 0..limit {
            let greedy = self.greedy_rep(n);
            let listed = enumerator.unrank(n as u128)?;
            if listed != greedy {
                return Err(Error::Validation(format!(
                    "{}: word #{n} of the language is {} but the greedy representation is {}",
                    self.name,
                    alphabet.render_word(&listed),
                    alphabet.render_word(&greedy)
                )));
            }
        }
        if total != limit as u128 {
            let extra = enumerator.unrank(limit as u128)?;
            return Err(Error::Validation(format!(
                "{}: language accepts non-greedy word {}",
                self.name,
                alphabet.render_word(&extra)
            )));
        }
        Ok(())
    }
}

/// Digit alphabet `0..=max_digit` with 0 as padding letter.
pub fn digit_alphabet(max_digit: u32) -> Alphabet {
    let letters: Vec<String> = (0..=max_digit).map(|d| d.to_string()).collect();
    Alphabet::tuples(&letters, 1, Some(0))
}

/// Greedy-representation language of the canonical system of a Parry number
/// whose quasi-greedy expansion of 1 is `period^ω`: every suffix must be
/// lexicographically smaller than the corresponding prefix of `period^ω`.
/// Leading zeros are rejected.
pub fn parry_language(period: &[u32], max_digit: u32) -> Dfa {
    let p = period.len() as u32;
    let alphabet = digit_alphabet(max_digit);
    let k = alphabet.size();
    // states 0..p: matched length modulo the period; p: sink
    let sink = p;
    let mut delta = Vec::with_capacity((p as usize + 1) * k);
    for i in 0..p {
        let t = period[i as usize];
        for d in 0..k as u32 {
            delta.push(match d.cmp(&t) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Equal => (i + 1) % p,
                std::cmp::Ordering::Greater => sink,
            });
        }
    }
    delta.extend(std::iter::repeat_n(sink, k));
    let mut accepting = vec![true; p as usize];
    accepting.push(false);
    let padded = Dfa::new(alphabet, Direction::Msd, 0, accepting, delta).expect("well-formed table");
    strip_leading_padding(&padded)
}

/// Restricts a language of digit words to its words without leading zero.
pub fn strip_leading_padding(dfa: &Dfa) -> Dfa {
    let alphabet = dfa.alphabet().clone();
    let zero = alphabet.pad().unwrap_or(0);
    // key: None = sink, Some((started, q))
    Dfa::explore(
        alphabet,
        dfa.direction(),
        Some((false, dfa.initial())),
        usize::MAX,
        |key, s| match *key {
            None => None,
            Some((false, _)) if s == zero => None,
            Some((_, q)) => Some((true, dfa.next(q, s))),
        },
        |key| matches!(*key, Some((_, q)) if dfa.is_accepting(q)),
    )
    .expect("unbounded budget")
    .0
    .canonicalize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &PositionalSystem, n: u64) -> String {
        s.language().alphabet().render_word(&s.greedy_rep(n))
    }

    #[test]
    fn greedy_examples() {
        let f = PositionalSystem::fibonacci();
        assert_eq!(word(&f, 0), "");
        assert_eq!(word(&f, 4), "101");
        assert_eq!(f.value(&[1, 0, 1]).unwrap(), 4);
        let v = PositionalSystem::v_quaternary();
        assert_eq!(word(&v, 54), "1000");
        assert_eq!(&v.terms()[..6], &[1, 4, 15, 54, 195, 705]);
        let m = PositionalSystem::mersenne();
        assert_eq!(word(&m, 2), "2");
        assert_eq!(&m.terms()[..4], &[1, 3, 7, 15]);
        assert_eq!(PositionalSystem::base(2).unwrap().value(&[]).unwrap(), 0);
    }

    #[test]
    fn languages_match_greedy_oracle() {
        for sys in [
            PositionalSystem::fibonacci(),
            PositionalSystem::tribonacci(),
            PositionalSystem::mersenne(),
            PositionalSystem::v_quaternary(),
            PositionalSystem::base(2).unwrap(),
            PositionalSystem::base(3).unwrap(),
        ] {
            sys.validate_language(8).unwrap();
        }
    }

    #[test]
    fn corrupted_language_is_reported() {
        let f = PositionalSystem::fibonacci();
        let wrong = PositionalSystem::new(
            "wrong",
            vec![1, 2],
            vec![1, 1],
            1,
            PositionalSystem::base(2).unwrap().language().clone(),
        )
        .unwrap();
        assert!(matches!(wrong.validate_language(5), Err(Error::Validation(_))));
        assert!(f.validate_language(5).is_ok());
    }

    #[test]
    fn fibonacci_language_shape() {
        let f = PositionalSystem::fibonacci();
        let a = f.language().alphabet();
        assert!(f.language().accepts(&a.parse_word("10100").unwrap()));
        assert!(!f.language().accepts(&a.parse_word("0101").unwrap()));
        assert!(!f.language().accepts(&a.parse_word("110").unwrap()));
        assert!(f.language().accepts(&[]));
    }
}
