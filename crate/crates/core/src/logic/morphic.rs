//! From an msd DFAO over a numeration system to a morphic presentation.
//!
//! Letters are the pairs (state of the valid-track automaton, state of the
//! DFAO) reachable from the initial pair through co-accessible track
//! states; the morphism sends a letter to its successors under the track
//! letters in increasing order, and the coding sends it to the DFAO output
//! when the track state accepts (a complete representation) and to the
//! empty word otherwise.  Because the padding letter is the smallest and
//! loops on the initial pair, the fixed point lists the outputs on valid
//! representations in genealogical order.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::compile::track_dfao;
use crate::automata::{Dfao, StateId, Symbol};
use crate::error::{Error, Result};
use crate::numeration::Ans;
use crate::words::{InfiniteWord, Letter, Morphism, WordSource};

/// `coding(morphism^ω(seed))` with named letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphicPresentation {
    /// The prolongable morphism.
    pub morphism: Morphism,
    /// Letter-to-output coding (may erase).
    pub coding: Morphism,
    /// The start letter.
    pub seed: Letter,
    /// Display names of the morphism letters (the output name where it is
    /// unambiguous).
    pub letter_names: Vec<String>,
    /// Output letter names.
    pub output_names: Vec<String>,
}

impl MorphicPresentation {
    /// The generated word with output names as letters.
    pub fn to_word(&self, name: &str) -> Result<InfiniteWord> {
        InfiniteWord::new(
            name,
            self.output_names.clone(),
            WordSource::Morphic { morphism: self.morphism.clone(), seed: self.seed, coding: Some(self.coding.clone()) },
        )
    }

    /// `a->ab, b->…` with letter names.
    pub fn render_morphism(&self) -> String {
        self.morphism.render(&self.letter_names, &self.letter_names)
    }

    /// The coding rendered with letter and output names.
    pub fn render_coding(&self) -> String {
        self.coding.render(&self.letter_names, &self.output_names)
    }
}

/// Morphic presentation of the word generated by `dfao` over `ans`.
pub fn dfao_to_morphic(dfao: &Dfao, ans: &Ans) -> Result<MorphicPresentation> {
    let machine = track_dfao(ans, dfao)?;
    let language = ans.valid_track();
    let live = language.coaccessible();
    let k = language.alphabet().size();
    let root = (language.initial(), machine.base().initial());
    let mut index: HashMap<(StateId, StateId), usize> = HashMap::from([(root, 0)]);
    let mut letters = vec![root];
    let mut images: Vec<Vec<Letter>> = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some((p, q)) = queue.pop_front() {
        let mut image = Vec::new();
        for s in 0..k as Symbol {
            let next = (language.next(p, s), machine.base().next(q, s));
            if !live[next.0 as usize] {
                continue;
            }
            let id = *index.entry(next).or_insert_with(|| {
                letters.push(next);
                queue.push_back(next);
                letters.len() - 1
            });
            if id > Letter::MAX as usize {
                return Err(Error::Invalid(format!(
                    "morphic presentation needs more than {} letters",
                    Letter::MAX as usize + 1
                )));
            }
            image.push(id as Letter);
        }
        images.push(image);
    }
    let morphism = Morphism::new(images);
    if !morphism.is_prolongable_on(0) {
        return Err(Error::Invalid("the initial letter is not prolongable".into()));
    }
    let coding = Morphism::new(
        letters
            .iter()
            .map(|&(p, q)| if language.is_accepting(p) { vec![machine.output(q) as Letter] } else { Vec::new() })
            .collect(),
    );
    let output_names = machine.output_names().to_vec();
    let base_names: Vec<String> = letters
        .iter()
        .map(|&(p, q)| {
            let out = &output_names[machine.output(q) as usize];
            if language.is_accepting(p) {
                out.clone()
            } else {
                format!("({out})")
            }
        })
        .collect();
    let mut letter_names = Vec::with_capacity(base_names.len());
    let mut uses: HashMap<&str, usize> = HashMap::new();
    for name in &base_names {
        let count = uses.entry(name).or_insert(0);
        letter_names.push(if *count == 0 { name.clone() } else { format!("{name}{}", "'".repeat(*count)) });
        *count += 1;
    }
    Ok(MorphicPresentation { morphism, coding, seed: 0, letter_names, output_names })
}

/// Parses a morphism written with one-character letter names, e.g.
/// `#->#$, $->ab, a->cd`.  Letters are numbered in order of definition;
/// every letter used in an image must be defined.
pub fn parse_named_morphism(text: &str) -> Result<(Vec<String>, Morphism)> {
    let rules: Vec<(char, &str)> = text
        .split(',')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| {
            let (lhs, rhs) =
                r.split_once("->").ok_or_else(|| Error::Invalid(format!("morphism rule `{r}` lacks `->`")))?;
            let mut chars = lhs.trim().chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Ok((c, rhs.trim())),
                _ => Err(Error::Invalid(format!("left side `{lhs}` is not a single letter"))),
            }
        })
        .collect::<Result<_>>()?;
    let names: Vec<String> = rules.iter().map(|(c, _)| c.to_string()).collect();
    let images = rules
        .iter()
        .map(|(_, rhs)| {
            rhs.chars()
                .map(|c| {
                    rules
                        .iter()
                        .position(|(d, _)| *d == c)
                        .map(|i| i as Letter)
                        .ok_or_else(|| Error::Invalid(format!("letter `{c}` has no image")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((names, Morphism::new(images)))
}

/// A bijection `φ` from the letters of `a` reachable from `seed_a` onto the
/// letters of `b` reachable from `seed_b` with `φ(seed_a) = seed_b` and
/// `b(φ(x)) = φ(a(x))`, if one exists (it is unique when it exists).
pub fn renaming(a: &Morphism, seed_a: Letter, b: &Morphism, seed_b: Letter) -> Option<Vec<Option<Letter>>> {
    let mut forward: Vec<Option<Letter>> = vec![None; a.num_letters()];
    let mut backward: Vec<Option<Letter>> = vec![None; b.num_letters()];
    forward[seed_a as usize] = Some(seed_b);
    backward[seed_b as usize] = Some(seed_a);
    let mut queue = VecDeque::from([seed_a]);
    while let Some(x) = queue.pop_front() {
        let y = forward[x as usize]?;
        let (ia, ib) = (a.image(x), b.image(y));
        if ia.len() != ib.len() {
            return None;
        }
        for (&u, &v) in ia.iter().zip(ib) {
            match (forward[u as usize], backward[v as usize]) {
                (None, None) => {
                    forward[u as usize] = Some(v);
                    backward[v as usize] = Some(u);
                    queue.push_back(u);
                }
                (Some(fv), Some(bu)) if fv == v && bu == u => {}
                _ => return None,
            }
        }
    }
    Some(forward)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::automata::{Dfa, Direction};
    use crate::logic::sequences::{builtin_sequence, BUILTIN_SEQUENCES};

    #[test]
    fn generated_word_equals_dfao_word() {
        for name in BUILTIN_SEQUENCES {
            let (ans, dfao) = builtin_sequence(name).unwrap();
            let pres = dfao_to_morphic(&dfao, &ans).unwrap();
            let word = pres.to_word("m").unwrap().prefix(10_000).unwrap();
            for (n, &a) in word.iter().enumerate() {
                assert_eq!(a as u32, dfao.eval(&ans.rep(n as u64).unwrap()), "{name} at {n}");
            }
        }
    }

    #[test]
    fn base_two_presentation_is_uniform() {
        let (ans, dfao) = builtin_sequence("thue-morse").unwrap();
        let pres = dfao_to_morphic(&dfao, &ans).unwrap();
        assert_eq!(pres.morphism.uniform_length(), Some(2));
        assert_eq!(pres.render_morphism(), "0->01, 1->10");
    }

    #[test]
    fn constant_dfao_gives_a_power_map() {
        let ans = Ans::builtin("base:3").unwrap();
        let dfa = Dfa::universal(ans.language().alphabet().clone(), Direction::Msd);
        let dfao = Dfao::new(dfa, vec![0], vec!["c".into()]).unwrap();
        let pres = dfao_to_morphic(&dfao, &ans).unwrap();
        assert_eq!(pres.render_morphism(), "c->ccc");
        assert_eq!(pres.render_coding(), "c->c");
    }

    #[test]
    fn hash_padded_system() {
        // {1,2}* with the DFAO "last digit"
        let ans = Arc::new(Ans::one_two_star());
        let dfa =
            Dfa::new(ans.language().alphabet().clone(), Direction::Msd, 0, vec![false; 3], vec![1, 2, 1, 2, 1, 2])
                .unwrap();
        let dfao = Dfao::new(dfa, vec![0, 1, 2], vec!["e".into(), "1".into(), "2".into()]).unwrap();
        let pres = dfao_to_morphic(&dfao, &ans).unwrap();
        let word = pres.to_word("m").unwrap().prefix(2000).unwrap();
        for (n, &a) in word.iter().enumerate() {
            assert_eq!(a as u32, dfao.eval(&ans.rep(n as u64).unwrap()));
        }
    }

    #[test]
    fn renaming_detects_isomorphism() {
        let (_, f) = parse_named_morphism("a->ab, b->ba").unwrap();
        let (_, g) = parse_named_morphism("x->xy, y->yx").unwrap();
        let (_, h) = parse_named_morphism("x->xy, y->xy").unwrap();
        assert!(renaming(&f, 0, &g, 0).is_some());
        assert!(renaming(&f, 0, &h, 0).is_none());
    }
}
