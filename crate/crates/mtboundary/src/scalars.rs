//! Exact scalars: `Rational` (an alias for `BigRational`) and `QuadExt`,
//! elements a + b√−d of an imaginary quadratic field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as "p/q", or "p" when q = 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub fn is_squarefree(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Common interface of the two scalar fields. `Ctx` is whatever a value needs
/// besides its coefficients: nothing for ℚ, the discriminant for ℚ(√−d).
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    type Ctx: Copy + Eq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: Self::Ctx) -> Self;
    fn one_in(ctx: Self::Ctx) -> Self;
    fn from_rational(r: Rational, ctx: Self::Ctx) -> Self;
    fn vanishes(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    /// Least common multiple of the coefficient denominators.
    fn denom_lcm(&self) -> BigInt;
    fn re_part(&self) -> Rational;
    fn im_part(&self) -> Rational;

    fn div_exact(&self, other: &Self) -> Self {
        self.clone() * &other.inv().expect("division by zero")
    }
    fn is_unity(&self) -> bool {
        *self == Self::one_in(self.ctx())
    }
}

impl Scalar for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero_in(_: ()) -> Self {
        Rational::zero()
    }
    fn one_in(_: ()) -> Self {
        Rational::one()
    }
    fn from_rational(r: Rational, _: ()) -> Self {
        r
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn denom_lcm(&self) -> BigInt {
        self.denom().clone()
    }
    fn re_part(&self) -> Rational {
        self.clone()
    }
    fn im_part(&self) -> Rational {
        Rational::zero()
    }
}

/// a + b√−d with d > 0 square-free.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt {
    pub re: Rational,
    pub im: Rational,
    pub disc: u64,
}

impl QuadExt {
    pub fn new(re: Rational, im: Rational, disc: u64) -> Result<Self> {
        if !is_squarefree(disc) {
            return Err(Error::Domain(format!(
                "discriminant {disc} is not a positive square-free integer"
            )));
        }
        Ok(QuadExt { re, im, disc })
    }

    pub fn real(re: Rational, disc: u64) -> Self {
        QuadExt { re, im: Rational::zero(), disc }
    }

    pub fn from_ints(re: i64, im: i64, disc: u64) -> Self {
        QuadExt { re: rat(re), im: rat(im), disc }
    }

    /// √−d itself.
    pub fn sqrt_neg_d(disc: u64) -> Self {
        QuadExt { re: Rational::zero(), im: Rational::one(), disc }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// x·conj(x) = re² + d·im².
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im * rat(self.disc as i64)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.disc == other.disc {
            Ok(())
        } else {
            Err(Error::DiscriminantMismatch(self.disc, other.disc))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadExt { re: &self.re + &other.re, im: &self.im + &other.im, disc: self.disc })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadExt { re: &self.re - &other.re, im: &self.im - &other.im, disc: self.disc })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = rat(self.disc as i64);
        Ok(QuadExt {
            re: &self.re * &other.re - &self.im * &other.im * d,
            im: &self.re * &other.im + &self.im * &other.re,
            disc: self.disc,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let inv = Scalar::inv(other).ok_or(Error::DivisionByZero)?;
        self.checked_mul(&inv)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadExt { re: &self.re * r, im: &self.im * r, disc: self.disc }
    }
}

impl Scalar for QuadExt {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.disc
    }
    fn zero_in(disc: u64) -> Self {
        QuadExt { re: Rational::zero(), im: Rational::zero(), disc }
    }
    fn one_in(disc: u64) -> Self {
        QuadExt { re: Rational::one(), im: Rational::zero(), disc }
    }
    fn from_rational(r: Rational, disc: u64) -> Self {
        QuadExt::real(r, disc)
    }
    fn vanishes(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadExt { re: &self.re / &n, im: -(&self.im / &n), disc: self.disc })
    }
    fn conj(&self) -> Self {
        QuadExt { re: self.re.clone(), im: -self.im.clone(), disc: self.disc }
    }
    fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }
    fn re_part(&self) -> Rational {
        self.re.clone()
    }
    fn im_part(&self) -> Rational {
        self.im.clone()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rational(&self.re));
        }
        let root = if self.disc == 1 { "i".to_string() } else { format!("√-{}", self.disc) };
        let im_abs = self.im.abs();
        let coeff = if im_abs.is_one() { String::new() } else { format!("{}*", format_rational(&im_abs)) };
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{sign}{coeff}{root}")
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "{}{sign}{coeff}{root}", format_rational(&self.re))
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: &'a QuadExt) -> QuadExt {
                self.$checked(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt {
                self.$checked(&o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a, 'b> $tr<&'b QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $m(self, o: &'b QuadExt) -> QuadExt {
                self.$checked(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { re: -self.re, im: -self.im, disc: self.disc }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -(self.clone())
    }
}

/// Values as they appear in JSON: a rational string or {"re", "im"}.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Real(String),
    Complex { re: String, im: String },
}

impl ScalarRepr {
    pub fn from_quad(x: &QuadExt) -> Self {
        if x.im.is_zero() {
            ScalarRepr::Real(format_rational(&x.re))
        } else {
            ScalarRepr::Complex { re: format_rational(&x.re), im: format_rational(&x.im) }
        }
    }

    pub fn to_quad(&self, disc: u64) -> Result<QuadExt> {
        match self {
            ScalarRepr::Real(s) => Ok(QuadExt::real(parse_rational(s)?, disc)),
            ScalarRepr::Complex { re, im } => {
                Ok(QuadExt { re: parse_rational(re)?, im: parse_rational(im)?, disc })
            }
        }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            ScalarRepr::Real(s) => parse_rational(s),
            ScalarRepr::Complex { re, im } => {
                let im = parse_rational(im)?;
                if !im.is_zero() {
                    return Err(Error::Parse(format!("expected a rational entry, got {re}+{im}·√-d")));
                }
                parse_rational(re)
            }
        }
    }
}
