use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::radical::{multiply_radicands, normalize_radical, prime_factors};
use super::Rational;
use crate::error::{Error, Result};

/// A finite sum `Σ q_d · √d` with rational `q_d` and distinct squarefree `d ≥ 1`.
///
/// The key `1` holds the rational part. Zero coefficients are never stored,
/// so the empty map is zero and structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactReal {
    terms: BTreeMap<u64, Rational>,
}

impl ExactReal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `num / den` as an exact real.
    ///
    /// # Panics
    /// Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::term(q, 1)
    }

    /// `q · √n` for any positive `n`; the radicand is reduced to its squarefree core.
    ///
    /// # Panics
    /// Panics if `n == 0`.
    pub fn term(q: Rational, n: u64) -> Self {
        let (factor, core) = normalize_radical(n);
        let mut terms = BTreeMap::new();
        let coeff = q * Rational::from_integer(BigInt::from(factor));
        if !coeff.is_zero() {
            terms.insert(core, coeff);
        }
        Self { terms }
    }

    /// `√n`.
    pub fn sqrt(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Self::term(Rational::one(), n)
    }

    /// The non-negative square root of a non-negative rational.
    pub fn sqrt_rational(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::Parse(format!("square root of negative rational {q}")));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // √(p/r) = √p · √r / r
        let p = q.numer().to_u64().ok_or(Error::RadicandOverflow)?;
        let r = q.denom().to_u64().ok_or(Error::RadicandOverflow)?;
        let root = Self::sqrt(p).checked_mul(&Self::sqrt(r))?;
        Ok(root.scale(&Rational::new(BigInt::one(), BigInt::from(r))))
    }

    /// Iterates `(radicand, coefficient)` in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(d, q)| (*d, q))
    }

    pub fn coefficient(&self, radicand: u64) -> Rational {
        self.terms.get(&radicand).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// `Some(q)` when the value is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(d, c)| (*d, c * q)).collect(),
        }
    }

    fn add_term(&mut self, d: u64, q: Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(d).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&d);
        }
    }

    /// Product, reporting radicand overflow instead of panicking.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&a, qa) in &self.terms {
            for (&b, qb) in &other.terms {
                let (g, core) = multiply_radicands(a, b).ok_or(Error::RadicandOverflow)?;
                out.add_term(core, qa * qb * Rational::from_integer(BigInt::from(g)));
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse.
    ///
    /// Peels off one prime `p` at a time: writing `a = u + v√p` with `u`, `v`
    /// free of `√p`, `1/a = (u − v√p) / (u² − p v²)` and the denominator has
    /// one prime fewer.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let p = self
            .terms
            .keys()
            .filter(|&&d| d > 1)
            .flat_map(|&d| prime_factors(d))
            .min()
            .expect("irrational element has a radicand > 1");
        let mut u = Self::zero();
        let mut v = Self::zero();
        for (&d, q) in &self.terms {
            if d % p == 0 {
                v.add_term(d / p, q.clone());
            } else {
                u.add_term(d, q.clone());
            }
        }
        let v_sqrt_p = Self {
            terms: v.terms.iter().map(|(d, q)| (d * p, q.clone())).collect(),
        };
        let p_rat = Rational::from_integer(BigInt::from(p));
        let norm = u.checked_mul(&u)? - v.checked_mul(&v)?.scale(&p_rat);
        (u - v_sqrt_p).checked_mul(&norm.invert()?)
    }

    /// Decimal string with exactly `digits` fractional digits, within `10^-digits`.
    pub fn to_decimal(&self, digits: usize) -> String {
        let guard = digits + 12;
        let scale_sq = BigUint::from(10u32).pow(2 * guard as u32);
        let mut total = BigInt::zero();
        for (&d, q) in &self.terms {
            let root = BigInt::from_biguint(Sign::Plus, (scale_sq.clone() * d).sqrt());
            total += (q.numer() * root).div_floor(q.denom());
        }
        let unit = BigInt::from(10u32).pow((guard - digits) as u32);
        let negative = total.is_negative();
        let magnitude = total.abs();
        let rounded = (magnitude + &unit / 2u32) / &unit;
        let text = rounded.to_string();
        let body = if digits == 0 {
            text
        } else {
            let padded = format!("{:0>width$}", text, width = digits + 1);
            let (int, frac) = padded.split_at(padded.len() - digits);
            format!("{int}.{frac}")
        };
        if negative && rounded_nonzero(&body) {
            format!("-{body}")
        } else {
            body
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal(20).parse().expect("decimal output parses")
    }
}

fn rounded_nonzero(body: &str) -> bool {
    body.chars().any(|c| c.is_ascii_digit() && c != '0')
}

impl From<Rational> for ExactReal {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for ExactReal {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(mut self) -> ExactReal {
        for q in self.terms.values_mut() {
            *q = -q.clone();
        }
        self
    }
}

impl Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        -self.clone()
    }
}

impl AddAssign<&ExactReal> for ExactReal {
    fn add_assign(&mut self, rhs: &ExactReal) {
        for (&d, q) in &rhs.terms {
            self.add_term(d, q.clone());
        }
    }
}

impl SubAssign<&ExactReal> for ExactReal {
    fn sub_assign(&mut self, rhs: &ExactReal) {
        for (&d, q) in &rhs.terms {
            self.add_term(d, -q.clone());
        }
    }
}

impl Add<&ExactReal> for &ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: &ExactReal) -> ExactReal {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&ExactReal> for &ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: &ExactReal) -> ExactReal {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

/// # Panics
/// Panics if a reduced radicand overflows `u64`; use [`ExactReal::checked_mul`]
/// where that is reachable.
impl Mul<&ExactReal> for &ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: &ExactReal) -> ExactReal {
        self.checked_mul(rhs).expect("radicand overflow")
    }
}

macro_rules! forward_owned {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: ExactReal) -> ExactReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: &ExactReal) -> ExactReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<ExactReal> for &ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: ExactReal) -> ExactReal {
                self.$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<ExactReal> for ExactReal {
    fn add_assign(&mut self, rhs: ExactReal) {
        *self += &rhs;
    }
}

impl Sum for ExactReal {
    fn sum<I: Iterator<Item = ExactReal>>(iter: I) -> Self {
        iter.fold(ExactReal::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a ExactReal> for ExactReal {
    fn sum<I: Iterator<Item = &'a ExactReal>>(iter: I) -> Self {
        iter.fold(ExactReal::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ExactReal {
    /// `p/q` and `p/q*sqrt(d)` terms joined by their signs, e.g. `3/8+1/12*sqrt(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (&d, q) in &self.terms {
            let piece = if d == 1 {
                fmt_rational(q)
            } else if q.is_one() {
                format!("sqrt({d})")
            } else if (-q).is_one() {
                format!("-sqrt({d})")
            } else {
                format!("{}*sqrt({d})", fmt_rational(q))
            };
            if !out.is_empty() && !piece.starts_with('-') {
                out.push('+');
            }
            out.push_str(&piece);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactReal({self})")
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_sqrt(s: &str) -> Result<u64> {
    let inner = s
        .strip_prefix("sqrt(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad radical `{s}`")))?;
    let d: u64 = inner
        .parse()
        .map_err(|_| Error::Parse(format!("bad radicand `{inner}`")))?;
    if d == 0 {
        return Err(Error::Parse("radicand must be positive".into()));
    }
    Ok(d)
}

fn parse_term(s: &str) -> Result<ExactReal> {
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    if body.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (q, d) = if body.starts_with("sqrt(") {
        (Rational::one(), parse_sqrt(body)?)
    } else if let Some((coeff, rad)) = body.split_once('*') {
        (parse_rational(coeff)?, parse_sqrt(rad)?)
    } else {
        (parse_rational(body)?, 1)
    };
    let value = ExactReal::term(q, d);
    Ok(if negative { -value } else { value })
}

impl FromStr for ExactReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut value = ExactReal::zero();
        let mut start = 0;
        for (i, c) in compact.char_indices() {
            if (c == '+' || c == '-') && i > start {
                value += parse_term(&compact[start..i])?;
                start = i;
            }
        }
        value += parse_term(&compact[start..])?;
        Ok(value)
    }
}
