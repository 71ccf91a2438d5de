//! Exact Gaussian-rational scalars and a finite complex-float companion.
//!
//! A [`Scalar`] is an element of ℚ(i). Rationals are the elements with a zero
//! imaginary part, so one type serves both exact backends; whether the
//! imaginary unit may appear is decided by the [`Domain`] used when parsing.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Which exact scalar field a polynomial is allowed to live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Domain {
    /// ℚ: the `i` token is rejected by the parser.
    #[default]
    Rational,
    /// ℚ(i): `i` is the imaginary unit.
    Gaussian,
}

/// An exact element `re + im·i` of ℚ(i).
///
/// Both parts are `BigRational`, which keeps them in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    /// `num / den` as a rational scalar. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    pub fn i() -> Self {
        Self::gaussian(0, 1)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |z|² as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact square root in ℚ(i), if one exists.
    ///
    /// The root returned has positive real part, or zero real part and
    /// positive imaginary part. A negative rational has the root `i·√|q|`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let root = if self.im.is_zero() {
            let r = rational_sqrt(&self.re.abs())?;
            if self.re.is_positive() {
                Scalar::from_rational(r)
            } else {
                Scalar::new(BigRational::zero(), r)
            }
        } else {
            // (x + yi)² = a + bi  ⇒  x² = (a + |z|)/2, y = b / 2x.
            let modulus = rational_sqrt(&self.norm_sqr())?;
            let two = BigRational::from_integer(2.into());
            let x2 = (&self.re + &modulus) / &two;
            let x = rational_sqrt(&x2)?;
            if x.is_zero() {
                return None;
            }
            let y = &self.im / (&two * &x);
            Scalar::new(x, y)
        };
        debug_assert!(&root * &root == *self);
        Some(root.canonical_sign())
    }

    /// Flip the sign so that the real part is positive (or, for purely
    /// imaginary values, the imaginary part is positive).
    pub fn canonical_sign(self) -> Self {
        if self.re.is_negative() || (self.re.is_zero() && self.im.is_negative()) {
            -self
        } else {
            self
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Gaussian-integer parts, when both parts are integers.
    pub fn as_gaussian_integer(&self) -> Option<(BigInt, BigInt)> {
        if self.re.is_integer() && self.im.is_integer() {
            Some((self.re.to_integer(), self.im.to_integer()))
        } else {
            None
        }
    }

    /// Lexicographic comparison on `(re, im)`, used only for deterministic tie-breaks.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// Writes in the polynomial text grammar: `3`, `-1/2`, `i`, `-2*i`, `(1+2*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        let write_imag = |f: &mut fmt::Formatter<'_>, im: &BigRational| -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else if (-im).is_one() {
                write!(f, "-i")
            } else {
                fmt_rational(im, f)?;
                write!(f, "*i")
            }
        };
        if self.re.is_zero() {
            return write_imag(f, &self.im);
        }
        write!(f, "(")?;
        fmt_rational(&self.re, f)?;
        if self.im.is_positive() {
            write!(f, "+")?;
        }
        write_imag(f, &self.im)?;
        write!(f, ")")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::from_rational(&self.re * &rhs.re);
        }
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// A complex double that is guaranteed finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteComplex(Complex64);

impl FiniteComplex {
    pub fn new(z: Complex64) -> Result<Self, Error> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(FiniteComplex(z))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn get(self) -> Complex64 {
        self.0
    }
}

impl TryFrom<Complex64> for FiniteComplex {
    type Error = Error;
    fn try_from(z: Complex64) -> Result<Self, Error> {
        FiniteComplex::new(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_rationals_and_gaussians() {
        assert_eq!(Scalar::ratio(9, 4).sqrt(), Some(Scalar::ratio(3, 2)));
        assert_eq!(Scalar::from_int(-4).sqrt(), Some(Scalar::gaussian(0, 2)));
        assert_eq!(Scalar::from_int(2).sqrt(), None);
        // (1 + 2i)² = -3 + 4i
        assert_eq!(Scalar::gaussian(-3, 4).sqrt(), Some(Scalar::gaussian(1, 2)));
        // 2i = (1 + i)²
        assert_eq!(Scalar::gaussian(0, 2).sqrt(), Some(Scalar::gaussian(1, 1)));
        assert_eq!(Scalar::gaussian(1, 1).sqrt(), None);
    }

    #[test]
    fn inverse_and_display() {
        let z = Scalar::gaussian(1, 1);
        assert_eq!(&z * &z.inv().unwrap(), Scalar::one());
        assert_eq!(Scalar::ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(Scalar::gaussian(0, -1).to_string(), "-i");
        assert_eq!(Scalar::gaussian(2, -3).to_string(), "(2-3*i)");
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn finite_complex_rejects_nan() {
        assert!(FiniteComplex::new(Complex64::new(f64::NAN, 0.0)).is_err());
        assert!(FiniteComplex::new(Complex64::new(1.0, f64::INFINITY)).is_err());
        assert!(FiniteComplex::new(Complex64::new(1.0, 2.0)).is_ok());
    }
}
