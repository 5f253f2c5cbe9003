//! Built-in automatic sequences as DFAOs over their numeration systems.

use crate::automata::{Dfa, Dfao, Direction};
use crate::error::{Error, Result};
use crate::numeration::Ans;

/// A small msd DFAO over the digit letters of `ans` with the given
/// transition table and one output per state (outputs named `0, 1, …`).
fn digit_dfao(ans: &Ans, delta: Vec<u32>, outputs: Vec<u32>) -> Result<Dfao> {
    let n = outputs.len();
    let letters = outputs.iter().copied().max().map_or(0, |m| m + 1);
    let dfa = Dfa::new(ans.language().alphabet().clone(), Direction::Msd, 0, vec![false; n], delta)?;
    Dfao::new(dfa, outputs, (0..letters).map(|i| i.to_string()).collect())
}

/// `(numeration system, DFAO)` of a built-in automatic sequence:
///
/// * `thue-morse` — base 2, parity of the number of 1s;
/// * `fibonacci` — Fibonacci system, last digit of the representation;
/// * `tribonacci` — Tribonacci system, number of trailing 1s.
pub fn builtin_sequence(name: &str) -> Result<(Ans, Dfao)> {
    match name {
        "thue-morse" => {
            let ans = Ans::builtin("base:2")?;
            let dfao = digit_dfao(&ans, vec![0, 1, 1, 0], vec![0, 1])?;
            Ok((ans, dfao))
        }
        "fibonacci" => {
            let ans = Ans::builtin("fibonacci")?;
            let dfao = digit_dfao(&ans, vec![0, 1, 0, 1], vec![0, 1])?;
            Ok((ans, dfao))
        }
        "tribonacci" => {
            let ans = Ans::builtin("tribonacci")?;
            let dfao = digit_dfao(&ans, vec![0, 1, 0, 2, 0, 2], vec![0, 1, 2])?;
            Ok((ans, dfao))
        }
        other => Err(Error::Unknown { kind: "automatic sequence", name: other.to_string() }),
    }
}

/// Names accepted by [`builtin_sequence`].
pub const BUILTIN_SEQUENCES: [&str; 3] = ["thue-morse", "fibonacci", "tribonacci"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::InfiniteWord;

    #[test]
    fn automatic_and_morphic_generators_agree() {
        for name in BUILTIN_SEQUENCES {
            let (ans, dfao) = builtin_sequence(name).unwrap();
            let morphic = InfiniteWord::builtin(name).unwrap().prefix(5000).unwrap();
            for (n, &letter) in morphic.iter().enumerate() {
                let out = dfao.eval(&ans.rep(n as u64).unwrap());
                assert_eq!(out as u8, letter, "{name} at {n}");
            }
        }
    }
}
