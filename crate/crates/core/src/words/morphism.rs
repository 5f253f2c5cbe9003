//! Morphisms of free monoids over small integer alphabets.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Letter;
use crate::error::{Error, Result};

/// A morphism `A* → B*` given by the image of every letter of `A`
/// (letters are `0..images.len()`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    images: Vec<Vec<Letter>>,
}

impl Morphism {
    /// Morphism from the images of letters `0, 1, …`.
    pub fn new(images: Vec<Vec<Letter>>) -> Morphism {
        Morphism { images }
    }

    /// The identity on `k` letters.
    pub fn identity(k: usize) -> Morphism {
        Morphism::new((0..k).map(|a| vec![a as Letter]).collect())
    }

    /// Parses `"0->01, 1->0"` (digits as letters; an empty right side is the
    /// empty word).  Letters must be listed as `0, 1, …` in order.
    pub fn parse(text: &str) -> Result<Morphism> {
        let mut images = Vec::new();
        for (i, rule) in text.split(',').map(str::trim).filter(|r| !r.is_empty()).enumerate() {
            let (lhs, rhs) =
                rule.split_once("->").ok_or_else(|| Error::Invalid(format!("morphism rule `{rule}` lacks `->`")))?;
            let lhs = lhs.trim();
            if lhs != i.to_string() {
                return Err(Error::Invalid(format!("morphism rule {i} defines `{lhs}`")));
            }
            let image = rhs
                .trim()
                .chars()
                .map(|c| {
                    c.to_digit(36)
                        .map(|d| d as Letter)
                        .ok_or_else(|| Error::Invalid(format!("letter `{c}` in morphism image")))
                })
                .collect::<Result<Vec<_>>>()?;
            images.push(image);
        }
        Ok(Morphism::new(images))
    }

    /// Number of letters in the domain.
    pub fn num_letters(&self) -> usize {
        self.images.len()
    }

    /// All images.
    pub fn images(&self) -> &[Vec<Letter>] {
        &self.images
    }

    /// Image of one letter.
    pub fn image(&self, a: Letter) -> &[Letter] {
        &self.images[a as usize]
    }

    /// Image of a word.
    pub fn apply(&self, word: &[Letter]) -> Vec<Letter> {
        word.iter().flat_map(|&a| self.images[a as usize].iter().copied()).collect()
    }

    /// `k` if every image has length `k`.
    pub fn uniform_length(&self) -> Option<usize> {
        let k = self.images.first()?.len();
        self.images.iter().all(|i| i.len() == k).then_some(k)
    }

    /// Whether some image is empty.
    pub fn is_erasing(&self) -> bool {
        self.images.iter().any(Vec::is_empty)
    }

    /// Whether `f(a)` starts with `a` and is longer than one letter.
    pub fn is_prolongable_on(&self, a: Letter) -> bool {
        self.images.get(a as usize).is_some_and(|img| img.len() >= 2 && img[0] == a)
    }

    /// Largest letter occurring in an image, plus one.
    pub fn target_size(&self) -> usize {
        self.images.iter().flatten().map(|&a| a as usize + 1).max().unwrap_or(0)
    }

    /// Renders with letter names, e.g. `a->ab, b->a`.
    pub fn render(&self, source: &[String], target: &[String]) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(a, img)| {
                let img: String = img.iter().map(|&b| target[b as usize].as_str()).collect();
                format!("{}->{}", source[a], img)
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.num_letters().max(self.target_size())).map(|i| i.to_string()).collect();
        f.write_str(&self.render(&names, &names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_apply() {
        let f = Morphism::parse("0->01, 1->0").unwrap();
        assert_eq!(f.apply(&[0, 1]), vec![0, 1, 0]);
        assert!(f.is_prolongable_on(0));
        assert!(!f.is_prolongable_on(1));
        assert_eq!(f.to_string(), "0->01, 1->0");
        let g = Morphism::parse("0->,1->1,2->0").unwrap();
        assert!(g.is_erasing());
        assert_eq!(g.apply(&[0, 1, 2]), vec![1, 0]);
        assert!(Morphism::parse("1->0").is_err());
    }

    #[test]
    fn uniformity() {
        assert_eq!(Morphism::parse("0->01,1->10").unwrap().uniform_length(), Some(2));
        assert_eq!(Morphism::parse("0->01,1->0").unwrap().uniform_length(), None);
    }
}
