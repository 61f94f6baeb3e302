use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::IsgError;

/// Coefficient ring for algebra elements: exact Gaussian rationals or
/// complex doubles.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
}

/// A complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(pub Complex<BigRational>);

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self(Complex::new(re, im))
    }

    pub fn from_int(re: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::zero())
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn i() -> Self {
        Self::gaussian(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.0.re * &self.0.re + &self.0.im * &self.0.im
    }

    /// The principal square root when it is again a Gaussian rational.
    ///
    /// Principal means real part positive, or real part zero and imaginary
    /// part nonnegative.
    pub fn exact_sqrt(&self) -> Option<Scalar> {
        let a = self.re();
        let b = self.im();
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = BigRational::from_integer(2.into());
        let x = rational_sqrt(&((&modulus + a) / &two))?;
        let y_abs = rational_sqrt(&((&modulus - a) / &two))?;
        let y = if b.is_negative() { -y_abs } else { y_abs };
        let root = Scalar::new(x, y);
        debug_assert_eq!(root.clone() * root.clone(), *self);
        Some(root)
    }

    pub fn principal_sqrt_c64(&self) -> Complex64 {
        self.to_c64().sqrt()
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt(q.numer())?;
    let d = int_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.0.re.is_zero() && self.0.im.is_zero()
    }
    fn conj(&self) -> Self {
        Self(self.0.conj())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.0.re.to_f64().unwrap_or(f64::NAN), self.0.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 + rhs.0)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 - rhs.0)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 * rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"`, `"p/q"` or a decimal literal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational, IsgError> {
    let s = s.trim();
    let bad = || IsgError::Input(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(IsgError::Input(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let q = BigRational::new(num, den);
        return Ok(if neg { -q } else { q });
    }
    Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
}

pub fn format_rational(q: &BigRational) -> String {
    fmt_rational(q)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        match (re.is_zero(), im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(re)),
            (true, false) => write!(f, "{}i", fmt_rational(im)),
            (false, false) => {
                let sign = if im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", fmt_rational(re), sign, fmt_rational(&im.abs()))
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_roots() {
        assert_eq!(Scalar::from_int(4).exact_sqrt(), Some(Scalar::from_int(2)));
        assert_eq!(Scalar::from_int(-4).exact_sqrt(), Some(Scalar::gaussian(0, 2)));
        // (1+2i)^2 = -3+4i
        assert_eq!(Scalar::gaussian(-3, 4).exact_sqrt(), Some(Scalar::gaussian(1, 2)));
        // (1-2i)^2 = -3-4i; principal root has positive real part
        assert_eq!(Scalar::gaussian(-3, -4).exact_sqrt(), Some(Scalar::gaussian(1, -2)));
        assert_eq!(Scalar::ratio(9, 16).exact_sqrt(), Some(Scalar::ratio(3, 4)));
        assert_eq!(Scalar::from_int(2).exact_sqrt(), None);
        assert_eq!(Scalar::gaussian(0, 1).exact_sqrt(), None);
        assert_eq!(Scalar::from_int(0).exact_sqrt(), Some(Scalar::from_int(0)));
    }

    #[test]
    fn exact_root_agrees_with_float_branch() {
        for s in [Scalar::gaussian(-3, 4), Scalar::gaussian(-3, -4), Scalar::from_int(-9), Scalar::gaussian(0, 2)] {
            let exact = s.exact_sqrt().unwrap().to_c64();
            let float = s.principal_sqrt_c64();
            assert!((exact - float).norm() < 1e-12, "{s}: {exact} vs {float}");
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-0.25").unwrap(), BigRational::new((-1).into(), 4.into()));
        assert_eq!(parse_rational("7").unwrap(), BigRational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::gaussian(1, -2).to_string(), "1-2i");
        assert_eq!(Scalar::ratio(-1, 3).to_string(), "-1/3");
        assert_eq!(Scalar::gaussian(0, 1).to_string(), "1i");
    }
}
