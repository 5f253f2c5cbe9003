//! Strictly increasing integer sequences whose characteristic words are
//! studied: triangular numbers, squares, polygonal numbers and the bases of
//! positional systems.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeration::PositionalSystem;

/// A strictly increasing sequence of naturals `e_0 < e_1 < …`.
#[derive(Clone)]
pub enum SetGenerator {
    /// `T_n = n(n+1)/2`, from `T_0 = 0`.
    Triangular,
    /// `n²`, from `0`.
    Squares,
    /// `P_n = n(sn − s + 2)/2` for a fixed `s ≥ 1`, from `P_0 = 0`.
    Polygonal(u64),
    /// `2^{n+1} − 1`, from `1`.
    PowersMersenne,
    /// Terms `1, 4, 15, 54, …` of the V-recurrence.
    VSystem,
    /// Basis terms of any positional system.
    Basis(Arc<PositionalSystem>),
    /// Explicit values (must be strictly increasing; finite).
    Values(Arc<Vec<u64>>),
}

impl std::fmt::Debug for SetGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

impl SetGenerator {
    /// Registry names: `triangular`, `squares`, `polygonal:s`,
    /// `powers-mersenne`, `v-system`, `basis:<system>`.
    pub fn parse(name: &str) -> Result<SetGenerator> {
        match name {
            "triangular" => Ok(SetGenerator::Triangular),
            "squares" => Ok(SetGenerator::Squares),
            "powers-mersenne" => Ok(SetGenerator::PowersMersenne),
            "v-system" => Ok(SetGenerator::VSystem),
            _ => {
                if let Some(s) = name.strip_prefix("polygonal:") {
                    let s: u64 = s.parse().map_err(|_| Error::Invalid(format!("polygonal parameter `{s}`")))?;
                    if s == 0 {
                        return Err(Error::Invalid("polygonal parameter must be at least 1".into()));
                    }
                    return Ok(SetGenerator::Polygonal(s));
                }
                if let Some(sys) = name.strip_prefix("basis:") {
                    return Ok(SetGenerator::Basis(Arc::new(PositionalSystem::builtin(sys)?)));
                }
                Err(Error::Unknown { kind: "set generator", name: name.to_string() })
            }
        }
    }

    /// Registry name.
    pub fn name(&self) -> String {
        match self {
            SetGenerator::Triangular => "triangular".into(),
            SetGenerator::Squares => "squares".into(),
            SetGenerator::Polygonal(s) => format!("polygonal:{s}"),
            SetGenerator::PowersMersenne => "powers-mersenne".into(),
            SetGenerator::VSystem => "v-system".into(),
            SetGenerator::Basis(sys) => format!("basis:{}", sys.name()),
            SetGenerator::Values(_) => "values".into(),
        }
    }

    /// The `i`-th element, or `None` past the end of a finite or
    /// overflowing sequence.
    pub fn nth(&self, i: u64) -> Option<u64> {
        match self {
            SetGenerator::Triangular => i.checked_mul(i + 1).map(|v| v / 2),
            SetGenerator::Squares => i.checked_mul(i),
            SetGenerator::Polygonal(s) => polygonal_number(*s, i),
            SetGenerator::PowersMersenne => (i < 62).then(|| (1u64 << (i + 1)) - 1),
            SetGenerator::VSystem => PositionalSystem::v_quaternary().terms().get(i as usize).copied(),
            SetGenerator::Basis(sys) => sys.terms().get(i as usize).copied(),
            SetGenerator::Values(v) => v.get(i as usize).copied(),
        }
    }

    /// All elements `< limit`, checking strict monotonicity.
    pub fn elements_below(&self, limit: u64) -> Result<Vec<u64>> {
        let mut out: Vec<u64> = Vec::new();
        let mut i = 0;
        while let Some(v) = self.nth(i) {
            if let Some(&last) = out.last() {
                if v <= last {
                    return Err(Error::Invalid(format!(
                        "set generator {} is not increasing at index {i}",
                        self.name()
                    )));
                }
            }
            if v >= limit {
                break;
            }
            out.push(v);
            i += 1;
        }
        Ok(out)
    }
}

/// `P_n = n(sn − s + 2)/2`.
pub fn polygonal_number(s: u64, n: u64) -> Option<u64> {
    // s·n(n−1)/2 + n, avoiding the negative intermediate at n = 0
    let pairs = n.checked_mul(n.saturating_sub(1))? / 2;
    s.checked_mul(pairs)?.checked_add(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_elements() {
        assert_eq!(SetGenerator::Triangular.elements_below(30).unwrap(), vec![0, 1, 3, 6, 10, 15, 21, 28]);
        assert_eq!(SetGenerator::Squares.elements_below(17).unwrap(), vec![0, 1, 4, 9, 16]);
        assert_eq!(SetGenerator::Polygonal(3).elements_below(36).unwrap(), vec![0, 1, 5, 12, 22, 35]);
        assert_eq!(SetGenerator::PowersMersenne.elements_below(40).unwrap(), vec![1, 3, 7, 15, 31]);
        assert_eq!(SetGenerator::VSystem.elements_below(60).unwrap(), vec![1, 4, 15, 54]);
    }

    #[test]
    fn non_monotone_values_rejected() {
        let g = SetGenerator::Values(Arc::new(vec![1, 5, 3]));
        assert!(g.elements_below(10).is_err());
    }
}
