//! Slopes of Sturmian words with certified comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::fraction::ContinuedFraction;
use super::quadratic::QuadraticNumber;
use crate::error::{Error, Result};
use crate::words::{InfiniteWord, Letter};

/// Decimal digits of π (truncated, so π lies within one unit of the last
/// digit above the value).
const PI_DIGITS: &str = "3141592653589793238462643383279502884";

/// An irrational slope `α ∈ (0, 1)`.
///
/// Every question the Sturmian constructions ask reduces to the sign of
/// `x + yα` for integers `x`, `y`.  Quadratic slopes answer exactly;
/// slopes known through a finite list of partial quotients answer with the
/// rational brackets formed by consecutive convergents, refined until the
/// sign is certain (or the listed depth is exhausted).  Floating point is
/// never trusted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Slope {
    /// Exact arithmetic in a quadratic field.
    Quadratic {
        /// The slope.
        value: QuadraticNumber,
        /// Its (eventually periodic) expansion.
        expansion: ContinuedFraction,
    },
    /// Known only through its partial quotients.
    Expansion(ContinuedFraction),
}

impl Slope {
    /// An irrational quadratic slope in `(0, 1)`.
    pub fn quadratic(value: QuadraticNumber) -> Result<Slope> {
        let expansion = ContinuedFraction::of_quadratic(&value)?;
        Ok(Slope::Quadratic { value, expansion })
    }

    /// A slope given by its partial quotients.
    pub fn from_expansion(expansion: ContinuedFraction) -> Slope {
        Slope::Expansion(expansion)
    }

    /// `(3 − √5)/2`, the slope of the Fibonacci word.
    pub fn golden() -> Slope {
        Slope::quadratic(QuadraticNumber::new(3, -1, 2, 5).expect("valid")).expect("valid slope")
    }

    /// `1 − 1/√3 = (3 − √3)/3`.
    pub fn one_minus_inverse_sqrt3() -> Slope {
        Slope::quadratic(QuadraticNumber::new(3, -1, 3, 3).expect("valid")).expect("valid slope")
    }

    /// `(π − 3)/2`, with the partial quotients certified from a decimal
    /// enclosure of π.
    pub fn half_pi_fraction() -> Slope {
        let digits: i128 = PI_DIGITS.parse().expect("digits");
        let unit = 10i128.pow(PI_DIGITS.len() as u32 - 1);
        let lo = (digits - 3 * unit, 2 * unit);
        let hi = (digits + 1 - 3 * unit, 2 * unit);
        Slope::Expansion(ContinuedFraction::of_interval(lo, hi).expect("π enclosure"))
    }

    /// Named slopes: `golden`/`fibonacci`, `sqrt3`, `pi`.
    pub fn named(name: &str) -> Result<Slope> {
        match name {
            "golden" | "fibonacci" => Ok(Slope::golden()),
            "sqrt3" => Ok(Slope::one_minus_inverse_sqrt3()),
            "pi" => Ok(Slope::half_pi_fraction()),
            _ => Err(Error::Unknown { kind: "slope", name: name.into() }),
        }
    }

    /// Parses `quad:(a,b,c,d)` for `(a + b√d)/c`, `cf:[a1,a2,…]` with an
    /// optional ` period:[…]` (without it the list is a truncated
    /// expansion), or a name accepted by [`Slope::named`].
    pub fn parse(text: &str) -> Result<Slope> {
        let text = text.trim();
        let list = |s: &str| -> Result<Vec<i128>> {
            let inner = s
                .trim()
                .strip_prefix(['[', '('])
                .and_then(|s| s.strip_suffix([']', ')']))
                .ok_or_else(|| Error::Invalid(format!("expected a bracketed list, found `{s}`")))?;
            inner
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Invalid(format!("`{t}` is not an integer"))))
                .collect()
        };
        let naturals = |v: Vec<i128>| -> Result<Vec<u64>> {
            v.into_iter()
                .map(|x| u64::try_from(x).map_err(|_| Error::Invalid(format!("negative partial quotient {x}"))))
                .collect()
        };
        if let Some(rest) = text.strip_prefix("quad:") {
            match list(rest)?.as_slice() {
                &[a, b, c, d] => Slope::quadratic(QuadraticNumber::new(a, b, c, d)?),
                _ => Err(Error::Invalid("quad: expects four integers (a,b,c,d)".into())),
            }
        } else if let Some(rest) = text.strip_prefix("cf:") {
            let (head, period) = match rest.split_once("period:") {
                Some((h, p)) => (h.trim().trim_end_matches([',', ';']), Some(p)),
                None => (rest, None),
            };
            let head = naturals(list(head)?)?;
            match period {
                Some(p) => Ok(Slope::Expansion(ContinuedFraction::periodic(head, naturals(list(p)?)?)?)),
                None => Ok(Slope::Expansion(ContinuedFraction::truncated(head)?)),
            }
        } else {
            Slope::named(text)
        }
    }

    /// The continued fraction expansion.
    pub fn expansion(&self) -> &ContinuedFraction {
        match self {
            Slope::Quadratic { expansion, .. } | Slope::Expansion(expansion) => expansion,
        }
    }

    /// Sign of `x + yα`.
    pub fn sign_of(&self, x: i128, y: i128) -> Result<Ordering> {
        if y == 0 {
            return Ok(x.cmp(&0));
        }
        match self {
            Slope::Quadratic { value, .. } => {
                value.checked_mul(&QuadraticNumber::integer(y))?.checked_add(&QuadraticNumber::integer(x))?.signum()
            }
            Slope::Expansion(cf) => {
                // α lies strictly between consecutive convergents
                let at = |(p, q): (i128, i128)| -> Option<Ordering> {
                    Some(x.checked_mul(q)?.checked_add(y.checked_mul(p)?)?.cmp(&0))
                };
                let depth = cf.depth().unwrap_or(usize::MAX).min(200);
                let convergents = cf.convergents(depth)?;
                for pair in convergents.windows(2) {
                    let (Some(s), Some(t)) = (at(pair[0]), at(pair[1])) else {
                        break;
                    };
                    match (s, t) {
                        _ if s == t && s != Ordering::Equal => return Ok(s),
                        (Ordering::Equal, t) if t != Ordering::Equal => return Ok(t),
                        (s, Ordering::Equal) if s != Ordering::Equal => return Ok(s),
                        _ => {}
                    }
                }
                Err(Error::DepthExhausted(format!(
                    "the sign of {x} + {y}·α is not settled by the known partial quotients"
                )))
            }
        }
    }

    /// `⌊mα⌋`.
    pub fn floor_multiple(&self, m: i128) -> Result<i128> {
        let mut g = (m as f64 * self.approx()).floor() as i128;
        while self.sign_of(-g, m)? == Ordering::Less {
            g -= 1;
        }
        while self.sign_of(-(g + 1), m)? != Ordering::Less {
            g += 1;
        }
        Ok(g)
    }

    /// Compares `{pα}` with `{qα}`.
    pub fn cmp_fractional(&self, p: i128, q: i128) -> Result<Ordering> {
        if p == q {
            return Ok(Ordering::Equal);
        }
        // {pα} − {qα} = (p − q)α − (⌊pα⌋ − ⌊qα⌋)
        let shift = self.floor_multiple(p)? - self.floor_multiple(q)?;
        self.sign_of(-shift, p - q)
    }

    /// Letter `ν({mα})` of the rotation coding: `0` on `[0, 1 − α)`.
    pub fn coding(&self, m: i128) -> Result<Letter> {
        Ok((self.floor_multiple(m + 1)? - self.floor_multiple(m)?) as Letter)
    }

    /// Whether `0^k` or `1^k` occurs in the Sturmian words of this slope,
    /// i.e. whether `k‖α‖ < 1`.
    pub fn has_run(&self, k: usize) -> Result<bool> {
        let k = k as i128;
        if self.sign_of(-1, 2)? == Ordering::Less {
            // α < 1/2: kα < 1
            Ok(self.sign_of(1, -k)? == Ordering::Greater)
        } else {
            // k(1 − α) < 1
            Ok(self.sign_of(1 - k, k)? == Ordering::Greater)
        }
    }

    /// A floating-point approximation (never used for decisions).
    pub fn approx(&self) -> f64 {
        match self {
            Slope::Quadratic { value, .. } => value.to_f64(),
            Slope::Expansion(cf) => {
                let convergents = cf.convergents(cf.depth().unwrap_or(40).min(40)).unwrap_or_default();
                convergents.last().map_or(0.0, |&(p, q)| p as f64 / q as f64)
            }
        }
    }

    /// Prefix of the characteristic word `s_{α,α}`.
    pub fn characteristic_prefix(&self, len: usize) -> Result<Vec<Letter>> {
        self.expansion().characteristic_prefix(len)
    }

    /// The characteristic word `s_{α,α}` as an [`InfiniteWord`].
    pub fn characteristic_word(&self) -> InfiniteWord {
        let cf = self.expansion().clone();
        InfiniteWord::generated(
            &format!("sturmian:{self}"),
            "sturmian",
            vec!["0".into(), "1".into()],
            Arc::new(move |n| cf.characteristic_prefix(n)),
        )
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Quadratic { value, .. } => write!(f, "{value}"),
            Slope::Expansion(cf) => write!(f, "{cf}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `⌊m(3 − √5)/2⌋` with integer square roots only.
    fn golden_floor(m: i128) -> i128 {
        if m == 0 {
            return 0;
        }
        if m < 0 {
            return -golden_floor(-m) - 1;
        }
        // m(3 − √5)/2 = (3m − √(5m²))/2; ⌊√(5m²)⌋ = s, irrational for m ≠ 0
        let t = 5 * m * m;
        let mut s = (t as f64).sqrt() as i128;
        while s * s > t {
            s -= 1;
        }
        while (s + 1) * (s + 1) <= t {
            s += 1;
        }
        // (3m − √t)/2 lies in ((3m − s − 1)/2, (3m − s)/2)
        (3 * m - s - 1).div_euclid(2)
    }

    #[test]
    fn characteristic_word_matches_the_floor_formula() {
        let slope = Slope::golden();
        let prefix = slope.characteristic_prefix(5000).unwrap();
        for (n, &a) in prefix.iter().enumerate() {
            let m = n as i128 + 1;
            assert_eq!(a as i128, golden_floor(m + 1) - golden_floor(m), "n = {n}");
        }
        assert_eq!(&prefix[..10], &[0, 1, 0, 0, 1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn exact_and_bracketed_modes_agree() {
        let exact = Slope::golden();
        let cf = ContinuedFraction::truncated(exact.expansion().prefix(60).unwrap()).unwrap();
        let bracketed = Slope::from_expansion(cf);
        for m in -300..300 {
            assert_eq!(exact.floor_multiple(m).unwrap(), bracketed.floor_multiple(m).unwrap());
            assert_eq!(exact.floor_multiple(m).unwrap(), golden_floor(m));
        }
        for (p, q) in [(3, 7), (-4, 5), (17, -2), (0, 13)] {
            assert_eq!(exact.cmp_fractional(p, q).unwrap(), bracketed.cmp_fractional(p, q).unwrap());
        }
    }

    #[test]
    fn pi_slope_expansion() {
        let slope = Slope::half_pi_fraction();
        let cf = slope.expansion();
        assert!(cf.depth().unwrap() >= 20);
        assert_eq!(cf.prefix(9).unwrap(), vec![14, 7, 1, 586, 3, 1, 2, 1, 1]);
        assert!((slope.approx() - (std::f64::consts::PI - 3.0) / 2.0).abs() < 1e-15);
        assert!(slope.has_run(10).unwrap());
        assert!(!slope.has_run(15).unwrap());
    }

    #[test]
    fn shallow_expansions_report_exhaustion() {
        let slope = Slope::from_expansion(ContinuedFraction::truncated(vec![2, 1]).unwrap());
        assert!(matches!(slope.floor_multiple(1000), Err(Error::DepthExhausted(_))));
    }

    #[test]
    fn parsing() {
        assert_eq!(Slope::parse("quad:(3,-1,2,5)").unwrap(), Slope::golden());
        let periodic = Slope::parse("cf:[2] period:[1]").unwrap();
        assert_eq!(periodic.expansion(), Slope::golden().expansion());
        assert!(Slope::parse("cf:[14,7,1,586]").unwrap().expansion().depth() == Some(4));
        assert!(Slope::parse("quad:(1,2)").is_err());
        assert!(Slope::parse("nope").is_err());
    }

    #[test]
    fn runs() {
        let golden = Slope::golden();
        assert!(golden.has_run(2).unwrap());
        assert!(!golden.has_run(3).unwrap());
        let s3 = Slope::one_minus_inverse_sqrt3();
        assert!(s3.has_run(2).unwrap());
        assert!(!s3.has_run(3).unwrap());
    }
}
