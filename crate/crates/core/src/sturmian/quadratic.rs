//! Exact arithmetic in real quadratic fields: numbers `(a + b√d)/c`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

/// The real number `(a + b√d)/c` with `c > 0`, `d` squarefree and
/// `gcd(a, b, c) = 1`; rationals are stored with `b = 0` and `d = 1`.
///
/// All operations are exact; comparisons reduce to the sign of
/// `p + q√d`, decided by comparing `p²` with `q²d`.  Arithmetic that leaves
/// the `i128` range reports [`Error::Overflow`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticNumber {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

fn gcd(mut x: i128, mut y: i128) -> i128 {
    x = x.abs();
    y = y.abs();
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("computing {what} in a quadratic field"))
}

fn mul(x: i128, y: i128) -> Result<i128> {
    x.checked_mul(y).ok_or_else(|| overflow("a product"))
}

fn add(x: i128, y: i128) -> Result<i128> {
    x.checked_add(y).ok_or_else(|| overflow("a sum"))
}

/// Sign of `p + q√d` for a non-square `d ≥ 2` (or `q = 0`).
fn surd_sign(p: i128, q: i128, d: i128) -> Result<Ordering> {
    if q == 0 || d == 0 {
        return Ok(p.cmp(&0));
    }
    if p >= 0 && q >= 0 {
        return Ok(Ordering::Greater);
    }
    if p <= 0 && q <= 0 {
        return Ok(Ordering::Less);
    }
    let pp = mul(p, p)?;
    let qqd = mul(mul(q, q)?, d)?;
    Ok(if p > 0 { pp.cmp(&qqd) } else { qqd.cmp(&pp) })
}

/// Largest `f` with `f² | d`, and `d / f²`.
fn square_part(d: i128) -> (i128, i128) {
    let mut f = 1;
    let mut rest = d;
    let mut p = 2;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            f *= p;
        }
        p += 1;
    }
    (f, rest)
}

impl QuadraticNumber {
    /// `(a + b√d)/c`, normalized.
    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Result<QuadraticNumber> {
        if c == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        if d < 0 {
            return Err(Error::Invalid(format!("√{d} is not real")));
        }
        let (f, d) = if d == 0 { (0, 1) } else { square_part(d) };
        let b = mul(b, f)?;
        if d == 1 {
            return Self::normalized(add(a, b)?, 0, c, 1);
        }
        Self::normalized(a, b, c, d)
    }

    fn normalized(mut a: i128, mut b: i128, mut c: i128, mut d: i128) -> Result<QuadraticNumber> {
        if b == 0 {
            d = 1;
        }
        let g = gcd(gcd(a, b), c);
        a /= g;
        b /= g;
        c /= g;
        if c < 0 {
            a = a.checked_neg().ok_or_else(|| overflow("a negation"))?;
            b = b.checked_neg().ok_or_else(|| overflow("a negation"))?;
            c = c.checked_neg().ok_or_else(|| overflow("a negation"))?;
        }
        Ok(QuadraticNumber { a, b, c, d })
    }

    /// The integer `n`.
    pub fn integer(n: i128) -> QuadraticNumber {
        QuadraticNumber { a: n, b: 0, c: 1, d: 1 }
    }

    /// The rational `p/q`.
    pub fn rational(p: i128, q: i128) -> Result<QuadraticNumber> {
        Self::new(p, 0, q, 1)
    }

    /// `√d`.
    pub fn sqrt(d: i128) -> Result<QuadraticNumber> {
        Self::new(0, 1, 1, d)
    }

    /// `(a, b, c, d)` of the normalized form.
    pub fn parts(&self) -> (i128, i128, i128, i128) {
        (self.a, self.b, self.c, self.d)
    }

    /// Whether the number is rational.
    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// The radicand shared by two operands.
    fn common_radicand(&self, other: &QuadraticNumber) -> Result<i128> {
        match (self.b, other.b) {
            (0, _) => Ok(other.d),
            (_, 0) => Ok(self.d),
            _ if self.d == other.d => Ok(self.d),
            _ => Err(Error::Invalid(format!(
                "operands lie in different quadratic fields (√{} and √{})",
                self.d, other.d
            ))),
        }
    }

    /// Exact sum.
    pub fn checked_add(&self, other: &QuadraticNumber) -> Result<QuadraticNumber> {
        let d = self.common_radicand(other)?;
        let a = add(mul(self.a, other.c)?, mul(other.a, self.c)?)?;
        let b = add(mul(self.b, other.c)?, mul(other.b, self.c)?)?;
        Self::normalized(a, b, mul(self.c, other.c)?, d)
    }

    /// Exact difference.
    pub fn checked_sub(&self, other: &QuadraticNumber) -> Result<QuadraticNumber> {
        self.checked_add(&other.negate()?)
    }

    /// Exact product.
    pub fn checked_mul(&self, other: &QuadraticNumber) -> Result<QuadraticNumber> {
        let d = self.common_radicand(other)?;
        let a = add(mul(self.a, other.a)?, mul(mul(self.b, other.b)?, d)?)?;
        let b = add(mul(self.a, other.b)?, mul(self.b, other.a)?)?;
        Self::normalized(a, b, mul(self.c, other.c)?, d)
    }

    /// Exact quotient.
    pub fn checked_div(&self, other: &QuadraticNumber) -> Result<QuadraticNumber> {
        if other.a == 0 && other.b == 0 {
            return Err(Error::Invalid("division by zero".into()));
        }
        // 1/((a + b√d)/c) = c(a − b√d)/(a² − b²d)
        let d = other.d;
        let norm = add(mul(other.a, other.a)?, -mul(mul(other.b, other.b)?, d)?)?;
        let inverse = Self::normalized(mul(other.c, other.a)?, -mul(other.c, other.b)?, norm, d)?;
        self.checked_mul(&inverse)
    }

    /// `−x`.
    pub fn negate(&self) -> Result<QuadraticNumber> {
        Self::normalized(-self.a, -self.b, self.c, self.d)
    }

    /// Sign of the number.
    pub fn signum(&self) -> Result<Ordering> {
        surd_sign(self.a, self.b, self.d)
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &QuadraticNumber) -> Result<Ordering> {
        self.checked_sub(other)?.signum()
    }

    /// Whether `x ≥ n` for an integer `n`.
    fn at_least(&self, n: i128) -> Result<bool> {
        // (a + b√d)/c − n = (a − nc + b√d)/c, and c > 0
        Ok(surd_sign(add(self.a, -mul(n, self.c)?)?, self.b, self.d)? != Ordering::Less)
    }

    /// `⌊x⌋`.
    pub fn floor(&self) -> Result<i128> {
        let estimate = self.to_f64().floor();
        if !estimate.is_finite() || estimate.abs() > 1e30 {
            return Err(overflow("a floor"));
        }
        let mut n = estimate as i128;
        while !self.at_least(n)? {
            n -= 1;
        }
        while self.at_least(n + 1)? {
            n += 1;
        }
        Ok(n)
    }

    /// `x − ⌊x⌋`.
    pub fn fract(&self) -> Result<QuadraticNumber> {
        self.checked_sub(&QuadraticNumber::integer(self.floor()?))
    }

    /// Floating-point approximation (for display and initial guesses only).
    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.d as f64).sqrt()) / self.c as f64
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    /// # Panics
    /// If the operands lie in different fields or the comparison overflows.
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other).expect("comparable quadratic numbers")
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for QuadraticNumber {
            type Output = QuadraticNumber;

            /// # Panics
            /// On overflow, division by zero or mismatched fields.
            fn $method(self, other: QuadraticNumber) -> QuadraticNumber {
                self.$checked(&other).expect(concat!("quadratic ", stringify!($method)))
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);
panicking_op!(Div, div, checked_div);

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;

    fn neg(self) -> QuadraticNumber {
        self.negate().expect("quadratic negation")
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numerator = match (self.a, self.b) {
            (a, 0) => a.to_string(),
            (0, 1) => format!("√{}", self.d),
            (0, -1) => format!("-√{}", self.d),
            (0, b) => format!("{b}√{}", self.d),
            (a, 1) => format!("{a}+√{}", self.d),
            (a, -1) => format!("{a}-√{}", self.d),
            (a, b) if b < 0 => format!("{a}-{}√{}", -b, self.d),
            (a, b) => format!("{a}+{b}√{}", self.d),
        };
        match (self.c, self.b != 0 && self.a != 0) {
            (1, _) => f.write_str(&numerator),
            (c, true) => write!(f, "({numerator})/{c}"),
            (c, false) => write!(f, "{numerator}/{c}"),
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
    fn normalization() {
        assert_eq!(q(2, 2, 4, 5), q(1, 1, 2, 5));
        assert_eq!(q(0, 1, 1, 12), q(0, 2, 1, 3));
        assert_eq!(q(1, 3, 1, 4), QuadraticNumber::integer(7));
        assert_eq!(q(1, 1, -2, 5), q(-1, -1, 2, 5));
        assert!(QuadraticNumber::new(1, 1, 0, 5).is_err());
    }

    #[test]
    fn field_identities() {
        let phi = q(1, 1, 2, 5);
        // φ² = φ + 1
        assert_eq!(phi * phi, phi + QuadraticNumber::integer(1));
        // 1/φ = φ − 1
        assert_eq!(QuadraticNumber::integer(1) / phi, phi - QuadraticNumber::integer(1));
        let r3 = QuadraticNumber::sqrt(3).unwrap();
        assert_eq!(r3 * r3, QuadraticNumber::integer(3));
        assert_eq!((QuadraticNumber::integer(2) - r3).to_string(), "2-√3");
    }

    #[test]
    fn exact_comparisons_near_ties() {
        // 1393/985 < √2 < 3363/2378, both extremely close
        let r2 = QuadraticNumber::sqrt(2).unwrap();
        assert!(QuadraticNumber::rational(1393, 985).unwrap() < r2);
        assert!(QuadraticNumber::rational(3363, 2378).unwrap() > r2);
        assert_eq!(r2.floor().unwrap(), 1);
        assert_eq!((-r2).floor().unwrap(), -2);
        let alpha = q(3, -1, 2, 5);
        assert_eq!((alpha * QuadraticNumber::integer(17)).floor().unwrap(), 6);
        assert!(alpha.fract().unwrap() == alpha);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let r2 = QuadraticNumber::sqrt(2).unwrap();
        let r3 = QuadraticNumber::sqrt(3).unwrap();
        assert!(r2.checked_add(&r3).is_err());
        assert!(r2.checked_add(&QuadraticNumber::integer(1)).is_ok());
    }
}
