//! Continued fractions of slopes in `(0, 1)` and their standard words.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::quadratic::QuadraticNumber;
use crate::error::{Error, Result};
use crate::words::Letter;

/// Partial quotients `a_1, a_2, …` of `α = [0; a_1, a_2, …]`.
///
/// Either eventually periodic (`head` then `period` repeated forever, for
/// quadratic slopes) or a finite list of exact partial quotients of an
/// irrational slope (`period` empty), in which case only the listed depth
/// is usable and asking for more is [`Error::DepthExhausted`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ContinuedFraction {
    head: Vec<u64>,
    period: Vec<u64>,
}

fn check_quotients(qs: &[u64]) -> Result<()> {
    if qs.contains(&0) {
        return Err(Error::Invalid("partial quotients must be at least 1".into()));
    }
    Ok(())
}

impl ContinuedFraction {
    /// `[0; head, (period)^ω]`, stored with the shortest head and period.
    pub fn periodic(head: Vec<u64>, period: Vec<u64>) -> Result<ContinuedFraction> {
        check_quotients(&head)?;
        check_quotients(&period)?;
        if period.is_empty() {
            return Err(Error::Invalid("a periodic expansion needs a nonempty period".into()));
        }
        let mut period = period;
        let p = period.len();
        if let Some(q) = (1..=p).find(|&q| p.is_multiple_of(q) && (q..p).all(|i| period[i] == period[i - q])) {
            period.truncate(q);
        }
        let mut head = head;
        while head.last() == period.last() && !head.is_empty() {
            head.pop();
            period.rotate_right(1);
        }
        Ok(ContinuedFraction { head, period })
    }

    /// The listed partial quotients of an irrational slope; deeper
    /// quotients are unknown.
    pub fn truncated(quotients: Vec<u64>) -> Result<ContinuedFraction> {
        check_quotients(&quotients)?;
        if quotients.is_empty() {
            return Err(Error::Invalid("an expansion needs at least one partial quotient".into()));
        }
        Ok(ContinuedFraction { head: quotients, period: Vec::new() })
    }

    /// Expansion of an irrational quadratic number in `(0, 1)`.
    pub fn of_quadratic(x: &QuadraticNumber) -> Result<ContinuedFraction> {
        if x.is_rational() {
            return Err(Error::Invalid(format!("{x} is rational")));
        }
        if x.signum()? != Ordering::Greater || x.floor()? != 0 {
            return Err(Error::Invalid(format!("{x} does not lie in (0, 1)")));
        }
        // Write x = (P + √D)/Q with Q | D − P²; then a = ⌊x⌋,
        // P' = aQ − P, Q' = (D − P'²)/Q.
        let (a, b, c, d) = x.parts();
        let (mut p, mut q, radicand) = if b > 0 { (a, c, b * b * d) } else { (-a, -c, b * b * d) };
        if (radicand - p * p) % q != 0 {
            let m = q.abs();
            p *= m;
            q *= m;
            let radicand = radicand * m * m;
            return Self::expand_surd(p, q, radicand);
        }
        Self::expand_surd(p, q, radicand)
    }

    fn expand_surd(mut p: i128, mut q: i128, radicand: i128) -> Result<ContinuedFraction> {
        let root = (radicand as f64).sqrt();
        let floor_of = |p: i128, q: i128| -> Result<i128> {
            let mut g = ((p as f64 + root) / q as f64).floor() as i128;
            // (P + √D)/Q ≥ g  ⇔  sign(P − gQ + √D)·sign(Q) ≥ 0
            let at_least = |g: i128| -> Result<bool> {
                let s = QuadraticNumber::new(p - g * q, 1, 1, radicand)?.signum()?;
                Ok(if q > 0 { s != Ordering::Less } else { s != Ordering::Greater })
            };
            while !at_least(g)? {
                g -= 1;
            }
            while at_least(g + 1)? {
                g += 1;
            }
            Ok(g)
        };
        let mut seen: Vec<(i128, i128)> = Vec::new();
        let mut quotients = Vec::new();
        // skip the integer part (zero)
        let a0 = floor_of(p, q)?;
        p = a0 * q - p;
        q = (radicand - p * p) / q;
        loop {
            if let Some(start) = seen.iter().position(|&s| s == (p, q)) {
                let period = quotients.split_off(start);
                return ContinuedFraction::periodic(quotients, period);
            }
            if seen.len() > 10_000 {
                return Err(Error::Overflow("expanding a quadratic number".into()));
            }
            seen.push((p, q));
            let a = floor_of(p, q)?;
            quotients.push(a as u64);
            p = a * q - p;
            q = (radicand - p * p) / q;
        }
    }

    /// The partial quotients shared by every real number in the closed
    /// interval between two rationals `lo = (p, q)` and `hi = (p', q')`
    /// (used to obtain a certified prefix of the expansion of a number
    /// known only through rational bounds).
    pub fn of_interval(lo: (i128, i128), hi: (i128, i128)) -> Result<ContinuedFraction> {
        let expand = |(mut p, mut q): (i128, i128)| -> Vec<i128> {
            let mut out = Vec::new();
            while q != 0 {
                let a = p.div_euclid(q);
                out.push(a);
                (p, q) = (q, p - a * q);
            }
            out
        };
        let (x, y) = (expand(lo), expand(hi));
        if x.first() != Some(&0) || y.first() != Some(&0) {
            return Err(Error::Invalid("interval bounds must lie in (0, 1)".into()));
        }
        let mut common: Vec<u64> =
            x.iter().zip(&y).skip(1).take_while(|(a, b)| a == b).map(|(&a, _)| a as u64).collect();
        // a quotient is certain only if neither expansion ends with it
        if common.len() + 1 >= x.len().min(y.len()) {
            common.pop();
        }
        ContinuedFraction::truncated(common)
    }

    /// Whether the expansion is eventually periodic.
    pub fn is_periodic(&self) -> bool {
        !self.period.is_empty()
    }

    /// Non-repeating part.
    pub fn head(&self) -> &[u64] {
        &self.head
    }

    /// Repeating part (empty for truncated expansions).
    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// Number of usable partial quotients (`None` when unbounded).
    pub fn depth(&self) -> Option<usize> {
        (!self.is_periodic()).then_some(self.head.len())
    }

    /// The partial quotient `a_i` (1-based).
    pub fn quotient(&self, i: usize) -> Option<u64> {
        assert!(i >= 1, "partial quotients are numbered from 1");
        let i = i - 1;
        if i < self.head.len() {
            Some(self.head[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.head.len()) % self.period.len()])
        }
    }

    fn require(&self, i: usize) -> Result<u64> {
        self.quotient(i).ok_or_else(|| {
            Error::DepthExhausted(format!("partial quotient a_{i} requested, only {} known", self.head.len()))
        })
    }

    /// `a_1, …, a_k`.
    pub fn prefix(&self, k: usize) -> Result<Vec<u64>> {
        (1..=k).map(|i| self.require(i)).collect()
    }

    /// Convergents `p_0/q_0 = 0/1, …, p_k/q_k` (stopping early on overflow).
    pub fn convergents(&self, k: usize) -> Result<Vec<(i128, i128)>> {
        let mut out = vec![(0i128, 1i128)];
        let (mut p1, mut q1) = (1i128, 0i128);
        for i in 1..=k {
            let a = self.require(i)? as i128;
            let (p0, q0) = *out.last().expect("nonempty");
            let next = a
                .checked_mul(p0)
                .and_then(|x| x.checked_add(p1))
                .zip(a.checked_mul(q0).and_then(|x| x.checked_add(q1)));
            match next {
                Some(pq) => {
                    (p1, q1) = (p0, q0);
                    out.push(pq);
                }
                None => break,
            }
        }
        Ok(out)
    }

    /// `[0; a_{k+1} + 1, a_{k+2}, …]`, the slope whose characteristic word
    /// `g` maps onto this one's for `g: 0 ↦ S_k, 1 ↦ S_{k−1}` (`k ≥ 1`).
    pub fn derived(&self, k: usize) -> Result<ContinuedFraction> {
        if k == 0 {
            return Err(Error::Invalid("the derived slope needs k ≥ 1".into()));
        }
        let first = self.require(k + 1)? + 1;
        if self.is_periodic() {
            let h = self.head.len();
            if k + 1 < h {
                let mut head = vec![first];
                head.extend_from_slice(&self.head[k + 1..]);
                ContinuedFraction::periodic(head, self.period.clone())
            } else {
                let mut period = self.period.clone();
                let shift = (k + 1 - h) % period.len();
                period.rotate_left(shift);
                ContinuedFraction::periodic(vec![first], period)
            }
        } else {
            let mut head = vec![first];
            head.extend_from_slice(&self.head[k + 1..]);
            ContinuedFraction::truncated(head)
        }
    }

    /// Standard words `S_{−1}, S_0, …, S_{k_max}`: `S_{−1} = 1`, `S_0 = 0`,
    /// `S_1 = S_0^{a_1−1} S_{−1}` and `S_{k+1} = S_k^{a_{k+1}} S_{k−1}`
    /// (entry `i` of the result is `S_{i−1}`).
    pub fn standard_words(&self, k_max: usize) -> Result<Vec<Vec<Letter>>> {
        let mut words: Vec<Vec<Letter>> = vec![vec![1], vec![0]];
        for k in 1..=k_max {
            let a = self.require(k)? as usize;
            let (reps, tail) = if k == 1 { (a - 1, &words[0]) } else { (a, &words[k - 1]) };
            let base = &words[k];
            let mut next = Vec::with_capacity(reps * base.len() + tail.len());
            for _ in 0..reps {
                next.extend_from_slice(base);
            }
            next.extend_from_slice(tail);
            words.push(next);
        }
        Ok(words)
    }

    /// Prefix of length `len` of the characteristic word, read off the
    /// first standard word `S_k` (`k ≥ 1`) that is long enough.
    pub fn characteristic_prefix(&self, len: usize) -> Result<Vec<Letter>> {
        let (mut older, mut old) = (vec![1 as Letter], vec![0 as Letter]);
        let mut k = 0;
        loop {
            if k >= 1 && old.len() >= len {
                old.truncate(len);
                return Ok(old);
            }
            k += 1;
            let a = self.quotient(k).ok_or_else(|| {
                Error::DepthExhausted(format!(
                    "a prefix of length {len} needs more than the {} known partial quotients",
                    self.head.len()
                ))
            })? as usize;
            let reps = if k == 1 { a - 1 } else { a };
            let mut next = Vec::with_capacity(reps * old.len() + older.len());
            for _ in 0..reps {
                next.extend_from_slice(&old);
            }
            next.extend_from_slice(&older);
            (older, old) = (old, next);
        }
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |qs: &[u64]| qs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "[0;{}", join(&self.head))?;
        if self.is_periodic() {
            if !self.head.is_empty() {
                f.write_str(",")?;
            }
            write!(f, "({})]", join(&self.period))
        } else {
            f.write_str(",…]")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i128, b: i128, c: i128, d: i128) -> QuadraticNumber {
        QuadraticNumber::new(a, b, c, d).unwrap()
    }

    #[test]
    fn quadratic_expansions() {
        let fib = ContinuedFraction::of_quadratic(&q(3, -1, 2, 5)).unwrap();
        assert_eq!(fib, ContinuedFraction::periodic(vec![2], vec![1]).unwrap());
        let s3 = ContinuedFraction::of_quadratic(&q(3, -1, 3, 3)).unwrap();
        assert_eq!(s3.prefix(9).unwrap(), vec![2, 2, 1, 2, 1, 2, 1, 2, 1]);
        let beta = ContinuedFraction::of_quadratic(&q(2, -1, 1, 3)).unwrap();
        assert_eq!(beta.prefix(6).unwrap(), vec![3, 1, 2, 1, 2, 1]);
        let r2 = ContinuedFraction::of_quadratic(&q(-1, 1, 1, 2)).unwrap();
        assert_eq!(r2.to_string(), "[0;(2)]");
    }

    #[test]
    fn periodic_forms_are_minimal() {
        let a = ContinuedFraction::periodic(vec![3, 1, 2], vec![1, 2, 1, 2]).unwrap();
        assert_eq!(a.head(), &[3]);
        assert_eq!(a.period(), &[1, 2]);
        assert_eq!(a.derived(2).unwrap(), ContinuedFraction::periodic(vec![3], vec![1, 2]).unwrap());
        let pure = ContinuedFraction::periodic(vec![2, 1, 2], vec![1, 2]).unwrap();
        assert!(pure.head().is_empty());
        assert_eq!(pure.period(), &[2, 1]);
    }

    #[test]
    fn convergents_bracket_the_value() {
        let cf = ContinuedFraction::of_quadratic(&q(3, -1, 2, 5)).unwrap();
        let alpha = (3.0 - 5f64.sqrt()) / 2.0;
        for (p, q) in cf.convergents(30).unwrap().into_iter().skip(1) {
            assert!((alpha - p as f64 / q as f64).abs() < 1.0 / (q * q) as f64);
        }
    }

    #[test]
    fn standard_words_of_the_golden_slope() {
        let cf = ContinuedFraction::periodic(vec![2], vec![1]).unwrap();
        let words = cf.standard_words(4).unwrap();
        let render = |w: &Vec<Letter>| w.iter().map(|d| d.to_string()).collect::<String>();
        let shown: Vec<String> = words[1..].iter().map(render).collect();
        assert_eq!(shown, ["0", "01", "010", "01001", "01001010"]);
    }

    #[test]
    fn truncated_expansions_run_out() {
        let cf = ContinuedFraction::truncated(vec![3, 2]).unwrap();
        assert!(cf.characteristic_prefix(7).is_ok());
        assert!(matches!(cf.characteristic_prefix(100), Err(Error::DepthExhausted(_))));
        assert!(ContinuedFraction::truncated(vec![1, 0]).is_err());
    }

    #[test]
    fn interval_expansion_keeps_only_certain_quotients() {
        // 0.3819660112 ± 1e-10 around (3−√5)/2
        let cf =
            ContinuedFraction::of_interval((3_819_660_111, 10_000_000_000), (3_819_660_113, 10_000_000_000)).unwrap();
        let depth = cf.depth().unwrap();
        assert!(depth >= 15);
        assert_eq!(cf.prefix(depth).unwrap()[..5], [2, 1, 1, 1, 1]);
        assert!(cf.prefix(depth).unwrap()[1..].iter().all(|&a| a == 1));
    }
}
