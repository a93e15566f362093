use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use super::{ExactReal, Rational};
use crate::error::{Error, Result};

/// `re + i·im` over [`ExactReal`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactComplex {
    pub re: ExactReal,
    pub im: ExactReal,
}

impl ExactComplex {
    pub fn new(re: ExactReal, im: ExactReal) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(ExactReal::one())
    }

    pub fn i() -> Self {
        Self::new(ExactReal::zero(), ExactReal::one())
    }

    pub fn real(re: ExactReal) -> Self {
        Self {
            re,
            im: ExactReal::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(ExactReal::from_integer(n))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.re.scale(q), self.im.scale(q))
    }

    pub fn scale_real(&self, x: &ExactReal) -> Self {
        Self::new(&self.re * x, &self.im * x)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero());
        }
        let re = self.re.checked_mul(&rhs.re)? - self.im.checked_mul(&rhs.im)?;
        let im = self.re.checked_mul(&rhs.im)? + self.im.checked_mul(&rhs.re)?;
        Ok(Self::new(re, im))
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_real() {
            return Ok(Self::real(self.re.invert()?));
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        let inv = norm.invert()?;
        Ok(Self::new(&self.re * &inv, -(&self.im * &inv)))
    }
}

impl From<ExactReal> for ExactComplex {
    fn from(re: ExactReal) -> Self {
        Self::real(re)
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-&self.re, -&self.im)
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re, -self.im)
    }
}

impl AddAssign<&ExactComplex> for ExactComplex {
    fn add_assign(&mut self, rhs: &ExactComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactComplex> for ExactComplex {
    fn sub_assign(&mut self, rhs: &ExactComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Add<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        self.checked_mul(rhs).expect("radicand overflow")
    }
}

impl Add for ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: ExactComplex) -> ExactComplex {
        &self + &rhs
    }
}

impl Sub for ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: ExactComplex) -> ExactComplex {
        &self - &rhs
    }
}

impl Mul for ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: ExactComplex) -> ExactComplex {
        &self * &rhs
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExactComplex {
    type Err = Error;

    /// Parses `(re, im)`; a bare real is accepted as `(re, 0)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            Some(inner) => {
                let (re, im) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("bad complex `{s}`")))?;
                Ok(Self::new(re.parse()?, im.parse()?))
            }
            None => Ok(Self::real(t.parse()?)),
        }
    }
}
