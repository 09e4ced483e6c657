//! Exact fractions and the all-even continued-fraction expansion of 2-bridge indices.
//!
//! A 2-bridge index `p/q` with at least one even entry has a unique expansion
//!
//! ```text
//! p/q = 1/(e_1 - 1/(e_2 - ... - 1/e_n))
//! ```
//!
//! with every `e_i` even and nonzero. Indices with both entries odd are first
//! shifted by one (`p/q - 1`), which names the same knot.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::ExactInt;

/// Reduced fraction `num/den` with `den >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction<T> {
    num: T,
    den: T,
}

impl<T: ExactInt> Fraction<T> {
    pub fn new(num: T, den: T) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero(format!("{num}/{den}")));
        }
        Ok(Self::reduced(num, den))
    }

    /// Builds `num/den` only if it is already in lowest terms with a positive denominator.
    pub fn new_reduced(num: T, den: T) -> Result<Self> {
        if !den.is_positive() {
            return Err(Error::Precondition(format!(
                "denominator of {num}/{den} must be positive"
            )));
        }
        if !num.gcd(&den).is_one() {
            return Err(Error::Precondition(format!("{num}/{den} is not reduced")));
        }
        Ok(Self { num, den })
    }

    pub fn from_integer(n: T) -> Self {
        Self {
            num: n,
            den: T::one(),
        }
    }

    fn reduced(num: T, den: T) -> Self {
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g.clone(), den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }

    pub fn numer(&self) -> &T {
        &self.num
    }

    pub fn denom(&self) -> &T {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn abs(&self) -> Self {
        Self {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    /// `|self| < 1`
    pub fn is_proper(&self) -> bool {
        self.num.abs() < self.den
    }
}

impl<T: ExactInt> Add for Fraction<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        Self::reduced(num, self.den * rhs.den)
    }
}

impl<T: ExactInt> Sub for Fraction<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: ExactInt> Mul for Fraction<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::reduced(self.num * rhs.num, self.den * rhs.den)
    }
}

impl<T: ExactInt> Div for Fraction<T> {
    type Output = Result<Self>;
    fn div(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs.recip()?)
    }
}

impl<T: ExactInt> Neg for Fraction<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<T: ExactInt> PartialOrd for Fraction<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: ExactInt> Ord for Fraction<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num.clone() * other.den.clone()).cmp(&(other.num.clone() * self.den.clone()))
    }
}

impl<T: ExactInt> fmt::Display for Fraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl<T: ExactInt> FromStr for Fraction<T> {
    type Err = Error;

    /// Parses `p/q` with an optional leading `-`. The value is reduced on parse.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("expected a fraction p/q, got {s:?}"));
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (p, q) = body.split_once('/').ok_or_else(bad)?;
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !digits(p) || !digits(q) {
            return Err(bad());
        }
        let p: T = p.parse().map_err(|_| bad())?;
        let q: T = q.parse().map_err(|_| bad())?;
        let p = if neg { -p } else { p };
        Fraction::new(p, q).map_err(|_| Error::Parse(format!("zero denominator in {s:?}")))
    }
}

/// All-even continued-fraction expansion `[e_1, ..., e_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvenCfe<T> {
    entries: Vec<T>,
}

impl<T: ExactInt> EvenCfe<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Precondition("empty continued fraction".into()));
        }
        let two = T::one() + T::one();
        if let Some(e) = entries.iter().find(|e| e.is_zero() || !e.is_multiple_of(&two)) {
            return Err(Error::Precondition(format!(
                "continued-fraction entry {e} is not even and nonzero"
            )));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl<T: ExactInt> fmt::Display for EvenCfe<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

impl<T: ExactInt> FromStr for EvenCfe<T> {
    type Err = Error;

    /// Parses a bracket list such as `[-4,-2,-2,-2,-4,-2]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected a bracket list, got {s:?}")))?;
        let entries = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<T>()
                    .map_err(|_| Error::Parse(format!("bad continued-fraction entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        EvenCfe::new(entries).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Shifts a raw table index `p/q` (`0 < p < q`) so that one entry is even.
pub fn normalize_two_bridge<T: ExactInt>(f: &Fraction<T>) -> Result<Fraction<T>> {
    let (p, q) = (f.numer(), f.denom());
    if !p.gcd(q).is_one() {
        return Err(Error::Precondition(format!("{f} is not reduced")));
    }
    if !p.is_positive() || p >= q {
        return Err(Error::Precondition(format!(
            "2-bridge index {f} must satisfy 0 < p < q"
        )));
    }
    if p.is_odd() && q.is_odd() {
        Ok(Fraction::reduced(p.clone() - q.clone(), q.clone()))
    } else {
        Ok(f.clone())
    }
}

/// Expands `f` into its all-even continued fraction.
///
/// At each step the entry is the even integer nearest to `1/x`; the remainder
/// `e - 1/x` lies strictly inside `(-1, 1)`.
pub fn even_cfe<T: ExactInt>(f: &Fraction<T>) -> Result<EvenCfe<T>> {
    if f.is_zero() || !f.is_proper() {
        return Err(Error::Precondition(format!(
            "{f} must lie in (-1, 1) and be nonzero"
        )));
    }
    if f.numer().is_odd() && f.denom().is_odd() {
        return Err(Error::Precondition(format!(
            "{f} has both entries odd; normalize it first"
        )));
    }
    let two = T::one() + T::one();
    let mut entries = Vec::new();
    let mut x = f.clone();
    while !x.is_zero() {
        let y = x.recip()?;
        let e = nearest_even(&y, &two)?;
        x = Fraction::from_integer(e.clone()) - y;
        debug_assert!(x.is_proper());
        entries.push(e);
    }
    EvenCfe::new(entries)
}

// Ties only occur at odd integers, which is exactly the both-odd case.
fn nearest_even<T: ExactInt>(y: &Fraction<T>, two: &T) -> Result<T> {
    if y.is_integer() && y.numer().is_odd() {
        return Err(Error::Precondition(format!(
            "remainder reached the odd integer {y}; the input had both entries odd"
        )));
    }
    let (n, d) = (y.numer().clone(), y.denom().clone());
    let k = (n + d.clone()).div_floor(&(two.clone() * d));
    Ok(k * two.clone())
}

/// Exact value of `1/(e_1 - 1/(e_2 - ... - 1/e_n))`, evaluated innermost-out.
pub fn evaluate_cfe<T: ExactInt>(cfe: &EvenCfe<T>) -> Result<Fraction<T>> {
    let mut value = Fraction::from_integer(T::zero());
    for e in cfe.entries().iter().rev() {
        let denom = Fraction::from_integer(e.clone()) - value;
        if denom.is_zero() {
            return Err(Error::DivisionByZero(cfe.to_string()));
        }
        value = denom.recip()?;
    }
    Ok(value)
}

/// Parses a 2-bridge argument into its expansion.
///
/// `p/q` with `0 < p < q` is a raw table index and is normalized first; a
/// negative fraction is taken as already normalized; a bracket list is used as is.
pub fn parse_two_bridge<T: ExactInt>(s: &str) -> Result<EvenCfe<T>> {
    let s = s.trim();
    if s.starts_with('[') {
        return s.parse();
    }
    let f: Fraction<T> = s.parse()?;
    let normalized = if f.numer().is_negative() {
        f
    } else {
        normalize_two_bridge(&f)?
    };
    even_cfe(&normalized)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type F = Fraction<i64>;

    fn fr(p: i64, q: i64) -> F {
        F::new(p, q).unwrap()
    }

    fn cfe(v: &[i64]) -> EvenCfe<i64> {
        EvenCfe::new(v.to_vec()).unwrap()
    }

    #[test]
    fn reduces_and_fixes_sign() {
        let f = fr(6, -8);
        assert_eq!((*f.numer(), *f.denom()), (-3, 4));
        assert!(F::new(1, 0).is_err());
        assert!(F::new_reduced(2, 4).is_err());
    }

    #[test]
    fn parse_and_print() {
        let f: F = "-40/73".parse().unwrap();
        assert_eq!(f, fr(-40, 73));
        assert_eq!(f.to_string(), "-40/73");
        assert!("40".parse::<F>().is_err());
        assert!("4/0".parse::<F>().is_err());
        assert!("+4/5".parse::<F>().is_err());
        assert!("4/-5".parse::<F>().is_err());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_two_bridge(&fr(33, 73)).unwrap(), fr(-40, 73));
        assert_eq!(normalize_two_bridge(&fr(18, 47)).unwrap(), fr(18, 47));
        assert_eq!(normalize_two_bridge(&fr(1, 2)).unwrap(), fr(1, 2));
        assert!(normalize_two_bridge(&fr(-1, 3)).is_err());
        assert!(normalize_two_bridge(&fr(3, 3)).is_err());
        assert!(normalize_two_bridge(&fr(5, 3)).is_err());
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(even_cfe(&fr(28, 61)).unwrap(), cfe(&[2, -6, -2, 2]));
        assert_eq!(even_cfe(&fr(-4, 31)).unwrap(), cfe(&[-8, -4]));
        assert_eq!(even_cfe(&fr(1, 2)).unwrap(), cfe(&[2]));
    }

    #[test]
    fn expansion_rejects_bad_input() {
        assert!(even_cfe(&fr(1, 3)).is_err());
        assert!(even_cfe(&fr(0, 1)).is_err());
        assert!(even_cfe(&fr(3, 2)).is_err());
        assert!(even_cfe(&fr(-1, 1)).is_err());
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(evaluate_cfe(&cfe(&[2, -6, -2, 2])).unwrap(), fr(28, 61));
        assert_eq!(evaluate_cfe(&cfe(&[-6, -2, -2, -4])).unwrap(), fr(-10, 53));
        assert_eq!(evaluate_cfe(&cfe(&[2])).unwrap(), fr(1, 2));
    }

    #[test]
    fn cfe_validation_and_parse() {
        assert!(EvenCfe::<i64>::new(vec![]).is_err());
        assert!(EvenCfe::new(vec![2, 3]).is_err());
        assert!(EvenCfe::new(vec![2, 0]).is_err());
        let c: EvenCfe<i64> = "[-4, -2,-2]".parse().unwrap();
        assert_eq!(c.to_string(), "[-4,-2,-2]");
        assert!("[-4,-3]".parse::<EvenCfe<i64>>().is_err());
        assert!("-4,-2".parse::<EvenCfe<i64>>().is_err());
    }

    #[test]
    fn two_bridge_arguments() {
        assert_eq!(parse_two_bridge::<i64>("33/73").unwrap(), cfe(&[-2, -6, -4, -2]));
        assert_eq!(parse_two_bridge::<i64>("-4/31").unwrap(), cfe(&[-8, -4]));
        assert_eq!(parse_two_bridge::<i64>("[6,4]").unwrap(), cfe(&[6, 4]));
        // negative means "already normalized", so both-odd is rejected
        assert!(parse_two_bridge::<i64>("-1/3").is_err());
        // the trefoil index is fine once normalized
        assert_eq!(parse_two_bridge::<i64>("1/3").unwrap(), cfe(&[-2, -2]));
    }

    #[test]
    fn bigint_agrees_with_i64() {
        let f: Fraction<BigInt> = "28/61".parse().unwrap();
        let c = even_cfe(&f).unwrap();
        assert_eq!(c.to_string(), "[2,-6,-2,2]");
        assert_eq!(evaluate_cfe(&c).unwrap(), f);
    }

    #[test]
    fn ordering() {
        assert!(fr(-1, 2) < fr(1, 3));
        assert!(fr(2, 3) > fr(3, 5));
        assert_eq!((fr(1, 2) / fr(1, 4)).unwrap(), fr(2, 1));
        assert!((fr(1, 2) / fr(0, 1)).is_err());
    }
}
