//! Coefficients: exact Gaussian rationals or double-precision complex floats.
//!
//! Arithmetic between two exact operands stays exact. As soon as one operand
//! is a float the result is a float.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    /// `re + i·im` with both parts exact and in lowest terms.
    Exact {
        re: BigRational,
        im: BigRational,
    },
    Float(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(re: BigRational) -> Self {
        Scalar::Exact {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Scalar::Exact { re, im }
    }

    pub fn float(re: f64) -> Self {
        Scalar::Float(Complex64::new(re, 0.0))
    }

    pub fn complex(z: Complex64) -> Self {
        Scalar::Float(z)
    }

    /// Exact binomial coefficient `binom(n, k)` (zero when `k > n`).
    pub fn binomial(n: usize, k: usize) -> Self {
        Scalar::rational(BigRational::from_integer(binomial(n, k)))
    }

    /// Exact rational with the same value as a finite `f64`.
    pub fn exact_from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Scalar::rational)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact { .. })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact { re, im } => re.is_zero() && im.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact { re, im } => re.is_one() && im.is_zero(),
            Scalar::Float(z) => z.re == 1.0 && z.im == 0.0,
        }
    }

    /// True when the imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Exact { im, .. } => im.is_zero(),
            Scalar::Float(z) => z.im == 0.0,
        }
    }

    /// Real and `>= 0`, decided exactly for exact values.
    pub fn is_nonneg_real(&self) -> bool {
        match self {
            Scalar::Exact { re, im } => im.is_zero() && !re.is_negative(),
            Scalar::Float(z) => z.im == 0.0 && z.re >= 0.0,
        }
    }

    /// The exact real value, if this is an exact real.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact { re, im } if im.is_zero() => Some(re),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact { re, im } => Complex64::new(rat_to_f64(re), rat_to_f64(im)),
            Scalar::Float(z) => *z,
        }
    }

    /// Float view of the modulus.
    pub fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }

    /// `|self|²`, exact for exact values.
    pub fn modulus_sqr(&self) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::rational(re * re + im * im),
            Scalar::Float(z) => Scalar::float(z.norm_sqr()),
        }
    }

    /// Compare `|self|` against a nonnegative float bound.
    ///
    /// Exact values are compared exactly against the exact value of
    /// `bound`; floats use a relative tolerance of `1e-12`.
    pub fn cmp_modulus(&self, bound: f64) -> core::cmp::Ordering {
        use core::cmp::Ordering;
        match self {
            Scalar::Exact { re, im } => match BigRational::from_float(bound) {
                Some(b) => (re * re + im * im).cmp(&(&b * &b)),
                None => Ordering::Less,
            },
            Scalar::Float(z) => {
                let m = z.norm();
                if (m - bound).abs() <= 1e-12 * bound.max(m) {
                    Ordering::Equal
                } else if m < bound {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact {
                re: re.clone(),
                im: -im,
            },
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `None` when dividing by an exact zero.
    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        match (self, rhs) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => {
                let den = c * c + d * d;
                if den.is_zero() {
                    return None;
                }
                Some(Scalar::Exact {
                    re: (a * c + b * d) / &den,
                    im: (b * c - a * d) / &den,
                })
            }
            _ => Some(Scalar::Float(self.to_complex() / rhs.to_complex())),
        }
    }

    /// Promote to float representation.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_complex())
    }
}

/// Exact `binom(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Parse `"p/q"`, `"p"` or a finite decimal such as `"-0.25"` or `"1e-3"`
/// into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational literal {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Ok(n) = BigInt::from_str(s) {
        return Ok(BigRational::from_integer(n));
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let mut digits = String::with_capacity(int_part.len() + frac_part.len() + 1);
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let mut n = BigInt::from_str(&digits).ok()?;
    if neg {
        n = -n;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let r = if scale >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-scale) as usize))
    };
    Some(r)
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Scalar::rational)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact { re, im } if im.is_zero() => write!(f, "{re}"),
            Scalar::Exact { re, im } => {
                if im.is_negative() {
                    write!(f, "{re}-{}i", -im)
                } else {
                    write!(f, "{re}+{im}i")
                }
            }
            Scalar::Float(z) if z.im == 0.0 => write!(f, "{}", z.re),
            Scalar::Float(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::rational(r)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Float(z)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => Scalar::Exact {
                re: a + c,
                im: b + d,
            },
            _ => Scalar::Float(self.to_complex() + rhs.to_complex()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => Scalar::Exact {
                re: a - c,
                im: b - d,
            },
            _ => Scalar::Float(self.to_complex() - rhs.to_complex()),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => {
                if b.is_zero() && d.is_zero() {
                    Scalar::rational(a * c)
                } else {
                    Scalar::Exact {
                        re: a * c - b * d,
                        im: a * d + b * c,
                    }
                }
            }
            _ => Scalar::Float(self.to_complex() * rhs.to_complex()),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    /// Panics on exact division by zero, like [`BigRational`].
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.checked_div(rhs).expect("exact division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact { re: -re, im: -im },
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl core::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

impl core::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| &acc * &x)
    }
}

/// Human-readable exact form used by reports, e.g. `"3/4"`.
pub fn rational_string(r: &BigRational) -> String {
    r.to_string()
}

/// `gcd`-free check that an exact value is stored in lowest terms.
pub fn in_lowest_terms(r: &BigRational) -> bool {
    r.numer().gcd(r.denom()).is_one() && r.denom().is_positive() || r.numer().is_zero()
}
