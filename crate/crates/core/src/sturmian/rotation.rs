//! Boundary sets of Sturmian words from the rotation picture.
//!
//! The points `{−jα}`, `0 ≤ j ≤ ℓ`, cut the circle into the intervals
//! `I_w` of the `ℓ + 1` factors `w` of length ℓ, in lexicographic order.
//! A pair `(u, v)` is in the boundary set at `n ≥ ℓ` exactly when the
//! rotated interval `R^n(I_u)` meets `I_v`.  Every point involved has the
//! form `{mα}` for an integer `m`, so all comparisons are certified by
//! [`Slope::cmp_fractional`].

use std::cmp::Ordering;

use serde::Serialize;

use super::slope::Slope;
use crate::boundary::BoundarySet;
use crate::error::{Error, Result};
use crate::words::Letter;

/// Where each rotated point `R^n({−jα})` falls: it lies in the interval of
/// the factor `w_{σ(j)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constellation {
    /// The index `n`.
    pub n: usize,
    /// `σ(j)` for `j = 0..=ℓ`.
    pub sigma: Vec<usize>,
}

/// The partition of the circle by the factors of length ℓ.
#[derive(Clone, Debug, Serialize)]
pub struct FactorPartition {
    slope: Slope,
    ell: usize,
    /// `starts[k] = m` with `{mα}` the left end of the `k`-th interval
    /// (`m ∈ {0, −1, …, −ℓ}`), in increasing order of the points.
    starts: Vec<i128>,
    /// The factor coded by each interval, increasing lexicographically.
    factors: Vec<Vec<Letter>>,
}

impl FactorPartition {
    /// The partition for factors of length `ell ≥ 1`.
    pub fn new(slope: &Slope, ell: usize) -> Result<FactorPartition> {
        if ell == 0 {
            return Err(Error::Invalid("factor length must be positive".into()));
        }
        let mut starts: Vec<i128> = (0..=ell as i128).map(|j| -j).collect();
        let mut failure = None;
        starts.sort_by(|&p, &q| {
            slope.cmp_fractional(p, q).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                Ordering::Equal
            })
        });
        if let Some(e) = failure {
            return Err(e);
        }
        let factors = starts
            .iter()
            .map(|&m| (0..ell as i128).map(|t| slope.coding(m + t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if factors.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Validation("factor intervals are not in lexicographic order".into()));
        }
        Ok(FactorPartition { slope: slope.clone(), ell, starts, factors })
    }

    /// The slope.
    pub fn slope(&self) -> &Slope {
        &self.slope
    }

    /// The factor length ℓ.
    pub fn ell(&self) -> usize {
        self.ell
    }

    /// The factors `w_0 < … < w_ℓ`.
    pub fn factors(&self) -> &[Vec<Letter>] {
        &self.factors
    }

    /// The multipliers `m` with `{mα}` the left ends of the intervals.
    pub fn starts(&self) -> &[i128] {
        &self.starts
    }

    /// Whether `{xα}` lies in the arc `[{aα}, {bα})` (wrapping through 0).
    fn in_arc(&self, x: i128, a: i128, b: i128) -> Result<bool> {
        let s = &self.slope;
        let from = s.cmp_fractional(x, a)? != Ordering::Less;
        let before = s.cmp_fractional(x, b)? == Ordering::Less;
        Ok(if s.cmp_fractional(a, b)? == Ordering::Less { from && before } else { from || before })
    }

    /// End of interval `k`.
    fn end(&self, k: usize) -> i128 {
        self.starts.get(k + 1).copied().unwrap_or(0)
    }

    /// The interval containing `{mα}`.
    pub fn interval_of(&self, m: i128) -> Result<usize> {
        for k in 0..=self.ell {
            if self.in_arc(m, self.starts[k], self.end(k))? {
                return Ok(k);
            }
        }
        Err(Error::Validation(format!("point {{{m}α}} lies in no factor interval")))
    }

    /// The constellation at `n > ℓ`.
    pub fn constellation(&self, n: usize) -> Result<Constellation> {
        if n <= self.ell {
            return Err(Error::Invalid(format!(
                "constellations are defined for n > ℓ = {}; use the first boundary set for n = ℓ",
                self.ell
            )));
        }
        let sigma = (0..=self.ell as i128).map(|j| self.interval_of(n as i128 - j)).collect::<Result<Vec<_>>>()?;
        Ok(Constellation { n, sigma })
    }

    /// The boundary set at `n ≥ ℓ` from the overlaps `R^n(I_u) ∩ I_v`.
    pub fn boundary_set(&self, n: usize) -> Result<BoundarySet> {
        if n < self.ell {
            return Err(Error::Invalid(format!("boundary index {n} below ℓ = {}", self.ell)));
        }
        let shift = n as i128;
        let mut pairs = Vec::new();
        for u in 0..=self.ell {
            let (a, b) = (self.starts[u] + shift, self.end(u) + shift);
            for v in 0..=self.ell {
                let (c, d) = (self.starts[v], self.end(v));
                // half-open arcs meet iff one contains the other's start
                if self.in_arc(a, c, d)? || self.in_arc(c, a, b)? {
                    pairs.push((self.factors[u].clone(), self.factors[v].clone()));
                }
            }
        }
        Ok(BoundarySet::new(self.ell, self.ell, pairs))
    }

    /// The first boundary set `∂[ℓ]`, in bijection with the factors of
    /// length 2ℓ and therefore of size `2ℓ + 1`.
    pub fn boundary_first(&self) -> Result<BoundarySet> {
        let set = self.boundary_set(self.ell)?;
        if set.len() != 2 * self.ell + 1 {
            return Err(Error::Validation(format!(
                "first boundary set has {} pairs, expected {}",
                set.len(),
                2 * self.ell + 1
            )));
        }
        Ok(set)
    }
}

/// The constellation at `n > ℓ` and its boundary set.
pub fn constellation(slope: &Slope, ell: usize, n: usize) -> Result<(Constellation, BoundarySet)> {
    let partition = FactorPartition::new(slope, ell)?;
    Ok((partition.constellation(n)?, partition.boundary_set(n)?))
}

/// The first boundary set `∂[ℓ]`.
pub fn boundary_first(slope: &Slope, ell: usize) -> Result<BoundarySet> {
    FactorPartition::new(slope, ell)?.boundary_first()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{boundary_sets, PrefixPolicy};

    #[test]
    fn golden_factor_intervals() {
        let p = FactorPartition::new(&Slope::golden(), 2).unwrap();
        assert_eq!(p.factors(), &[vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(p.starts(), &[0, -2, -1]);
    }

    #[test]
    fn rotation_sets_equal_window_sets() {
        for slope in [Slope::golden(), Slope::one_minus_inverse_sqrt3()] {
            let word = slope.characteristic_word();
            for ell in 1..=3 {
                let p = FactorPartition::new(&slope, ell).unwrap();
                let oracle = boundary_sets(&word, ell, ell..=200, PrefixPolicy::Fixed(1 << 14)).unwrap();
                for (i, expected) in oracle.sets.iter().enumerate() {
                    assert_eq!(&p.boundary_set(ell + i).unwrap(), expected, "{slope} ℓ={ell} n={}", ell + i);
                }
            }
        }
    }

    #[test]
    fn first_set_has_two_ell_plus_one_pairs() {
        for ell in 1..=6 {
            assert_eq!(boundary_first(&Slope::golden(), ell).unwrap().len(), 2 * ell + 1);
        }
    }

    #[test]
    fn constellations_need_n_above_ell() {
        let p = FactorPartition::new(&Slope::golden(), 3).unwrap();
        assert!(p.constellation(3).is_err());
        assert_eq!(p.constellation(4).unwrap().sigma.len(), 4);
    }
}
