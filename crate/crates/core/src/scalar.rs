//! Exact arithmetic in the tower Q ⊂ Q(√2) ⊂ Q(√2, i).
//!
//! `RealScalar` is `a + b√2` with rational `a`, `b`; `ComplexScalar` is a pair
//! of real scalars. Since √2 is irrational the representation is unique, so
//! structural equality is field equality.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Element `a + b√2` of Q(√2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RealScalar {
    a: Rational,
    b: Rational,
}

/// Element `re + i·im` of Q(√2, i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexScalar {
    pub re: RealScalar,
    pub im: RealScalar,
}

impl RealScalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        RealScalar { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        RealScalar { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `n/d` as a real scalar.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn sqrt2() -> Self {
        RealScalar { a: Rational::zero(), b: Rational::one() }
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        RealScalar { a: Rational::zero(), b: rat(1, 2) }
    }

    /// Rational part.
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of √2.
    pub fn sqrt2_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b√2`.
    pub fn galois_conj(&self) -> Self {
        RealScalar { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² − 2b²`, a rational that is zero only for zero.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(2.into()) * &self.b * &self.b
    }

    /// Exact sign of the real number `a + b√2`: −1, 0 or +1.
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // Opposite signs: the term with the larger square wins.
        match (&self.a * &self.a).cmp(&(Rational::from_integer(2.into()) * &self.b * &self.b)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("a^2 = 2 b^2 has no nonzero rational solution"),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(RealScalar { a: &self.a / &n, b: -&self.b / &n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = RealScalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by a rational.
    pub fn scale(&self, r: &Rational) -> Self {
        RealScalar { a: &self.a * r, b: &self.b * r }
    }

    /// Floating-point approximation; carries no correctness contract.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    /// Total order on real values, decided exactly.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

pub(crate) fn rational_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Zero for RealScalar {
    fn zero() -> Self {
        RealScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for RealScalar {
    fn one() -> Self {
        RealScalar { a: Rational::one(), b: Rational::zero() }
    }
}

impl From<Rational> for RealScalar {
    fn from(a: Rational) -> Self {
        RealScalar::from_rational(a)
    }
}

impl From<i64> for RealScalar {
    fn from(n: i64) -> Self {
        RealScalar::from_int(n)
    }
}

impl<'a> Add<&'a RealScalar> for &RealScalar {
    type Output = RealScalar;
    fn add(self, rhs: &'a RealScalar) -> RealScalar {
        RealScalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a RealScalar> for &RealScalar {
    type Output = RealScalar;
    fn sub(self, rhs: &'a RealScalar) -> RealScalar {
        RealScalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a RealScalar> for &RealScalar {
    type Output = RealScalar;
    fn mul(self, rhs: &'a RealScalar) -> RealScalar {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        if self.b.is_zero() && rhs.b.is_zero() {
            return RealScalar::from_rational(&self.a * &rhs.a);
        }
        let two = Rational::from_integer(2.into());
        RealScalar { a: &self.a * &rhs.a + two * &self.b * &rhs.b, b: &self.a * &rhs.b + &self.b * &rhs.a }
    }
}

/// Panics on division by zero; use [`RealScalar::checked_div`] for a `Result`.
impl<'a> Div<&'a RealScalar> for &RealScalar {
    type Output = RealScalar;
    fn div(self, rhs: &'a RealScalar) -> RealScalar {
        self.checked_div(rhs).expect("division by zero in Q(sqrt2)")
    }
}

impl Neg for &RealScalar {
    type Output = RealScalar;
    fn neg(self) -> RealScalar {
        RealScalar { a: -&self.a, b: -&self.b }
    }
}

macro_rules! forward_owned_binops {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &'a $t) -> $t { (&self).$m(rhs) }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { self.$m(&rhs) }
        }
    )*};
}

forward_owned_binops!(RealScalar, Add add, Sub sub, Mul mul, Div div);
forward_owned_binops!(ComplexScalar, Add add, Sub sub, Mul mul, Div div);

impl Neg for RealScalar {
    type Output = RealScalar;
    fn neg(self) -> RealScalar {
        -&self
    }
}

impl AddAssign<&RealScalar> for RealScalar {
    fn add_assign(&mut self, rhs: &RealScalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&RealScalar> for RealScalar {
    fn sub_assign(&mut self, rhs: &RealScalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&RealScalar> for RealScalar {
    fn mul_assign(&mut self, rhs: &RealScalar) {
        *self = &*self * rhs;
    }
}

impl Sum for RealScalar {
    fn sum<I: Iterator<Item = RealScalar>>(iter: I) -> Self {
        iter.fold(RealScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a RealScalar> for RealScalar {
    fn sum<I: Iterator<Item = &'a RealScalar>>(iter: I) -> Self {
        iter.fold(RealScalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for RealScalar {
    fn product<I: Iterator<Item = RealScalar>>(iter: I) -> Self {
        iter.fold(RealScalar::one(), |acc, x| &acc * &x)
    }
}

impl ComplexScalar {
    pub fn new(re: RealScalar, im: RealScalar) -> Self {
        ComplexScalar { re, im }
    }

    pub fn real(re: RealScalar) -> Self {
        ComplexScalar { re, im: RealScalar::zero() }
    }

    pub fn imag(im: RealScalar) -> Self {
        ComplexScalar { re: RealScalar::zero(), im }
    }

    pub fn i() -> Self {
        Self::imag(RealScalar::one())
    }

    pub fn from_rationals(re: Rational, im: Rational) -> Self {
        ComplexScalar { re: re.into(), im: im.into() }
    }

    pub fn conj(&self) -> Self {
        ComplexScalar { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> RealScalar {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, r: &RealScalar) -> Self {
        ComplexScalar { re: &self.re * r, im: &self.im * r }
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = n.inverse()?;
        Ok(self.conj().scale(&inv))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        Ok(self * &rhs.inverse()?)
    }
}

impl Zero for ComplexScalar {
    fn zero() -> Self {
        ComplexScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ComplexScalar {
    fn one() -> Self {
        ComplexScalar::real(RealScalar::one())
    }
}

impl From<RealScalar> for ComplexScalar {
    fn from(re: RealScalar) -> Self {
        ComplexScalar::real(re)
    }
}

impl<'a> Add<&'a ComplexScalar> for &ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: &'a ComplexScalar) -> ComplexScalar {
        ComplexScalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a ComplexScalar> for &ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: &'a ComplexScalar) -> ComplexScalar {
        ComplexScalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a ComplexScalar> for &ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: &'a ComplexScalar) -> ComplexScalar {
        ComplexScalar { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl<'a> Div<&'a ComplexScalar> for &ComplexScalar {
    type Output = ComplexScalar;
    fn div(self, rhs: &'a ComplexScalar) -> ComplexScalar {
        self.checked_div(rhs).expect("division by zero in Q(sqrt2, i)")
    }
}

impl Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        -&self
    }
}

impl AddAssign<&ComplexScalar> for ComplexScalar {
    fn add_assign(&mut self, rhs: &ComplexScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sum for ComplexScalar {
    fn sum<I: Iterator<Item = ComplexScalar>>(iter: I) -> Self {
        iter.fold(ComplexScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

// ---------------------------------------------------------------------------
// Text form
//
// Rational: "p/q" (a bare integer "p" is accepted on input).
// RealScalar: "p/q" or "p/q+r/s*sqrt2" (the "+" becomes "-" for negative r).
// ComplexScalar: "<real>" or "<real>+<real>*i"; on output every imaginary
// term carries its own "*i" suffix so the text is unambiguous.

fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if n.is_empty() || d.is_empty() || d.starts_with(['+', '-']) {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Slots a signed term can fill.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Re,
    ReSqrt2,
    Im,
    ImSqrt2,
}

/// Splits "a+b*sqrt2-c*i" into signed terms, tagging each with its slot.
fn parse_terms(s: &str) -> Result<Vec<(Slot, Rational)>, Error> {
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(Error::Parse(format!("invalid scalar {s:?}")));
    }
    let bytes = s.as_bytes();
    let mut starts = vec![0usize];
    for (k, &c) in bytes.iter().enumerate().skip(1) {
        // A sign begins a new term unless it follows a '/' (never valid) or '*'.
        if (c == b'+' || c == b'-') && bytes[k - 1] != b'/' && bytes[k - 1] != b'*' {
            starts.push(k);
        }
    }
    starts.push(s.len());
    let mut out = Vec::new();
    for w in starts.windows(2) {
        let mut term = &s[w[0]..w[1]];
        let negative = term.starts_with('-');
        if term.starts_with(['+', '-']) {
            // Leading '+' on the first term is allowed only between terms.
            if w[0] == 0 && term.starts_with('+') {
                return Err(Error::Parse(format!("invalid scalar {s:?}")));
            }
            term = &term[1..];
        }
        let (mut body, imag) = match term.strip_suffix("*i") {
            Some(b) => (b, true),
            None => (term, false),
        };
        let surd = match body.strip_suffix("*sqrt2") {
            Some(b) => {
                body = b;
                true
            }
            None => false,
        };
        let mut r = parse_rational(body)?;
        if negative {
            r = -r;
        }
        let slot = match (imag, surd) {
            (false, false) => Slot::Re,
            (false, true) => Slot::ReSqrt2,
            (true, false) => Slot::Im,
            (true, true) => Slot::ImSqrt2,
        };
        out.push((slot, r));
    }
    // Each slot at most once, in canonical order.
    if out.windows(2).any(|p| p[0].0 >= p[1].0) {
        return Err(Error::Parse(format!("terms out of order or repeated in {s:?}")));
    }
    Ok(out)
}

fn fmt_real(a: &Rational, b: &Rational, suffix: &str, first: bool) -> String {
    let mut s = String::new();
    let push_signed = |s: &mut String, r: &Rational, tail: &str, lead: bool| {
        if !lead && !r.is_negative() {
            s.push('+');
        }
        s.push_str(&fmt_rational(r));
        s.push_str(tail);
    };
    push_signed(&mut s, a, suffix, first);
    if !b.is_zero() {
        push_signed(&mut s, b, &format!("*sqrt2{suffix}"), false);
    }
    s
}

impl fmt::Display for RealScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_real(&self.a, &self.b, "", true))
    }
}

impl fmt::Debug for RealScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RealScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut x = RealScalar::zero();
        for (slot, r) in parse_terms(s)? {
            match slot {
                Slot::Re => x.a = r,
                Slot::ReSqrt2 => x.b = r,
                Slot::Im | Slot::ImSqrt2 => return Err(Error::Parse(format!("imaginary term in real scalar {s:?}"))),
            }
        }
        Ok(x)
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        if !self.im.is_zero() {
            write!(f, "{}", fmt_real(&self.im.a, &self.im.b, "*i", false))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ComplexScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut z = ComplexScalar::zero();
        for (slot, r) in parse_terms(s)? {
            match slot {
                Slot::Re => z.re.a = r,
                Slot::ReSqrt2 => z.re.b = r,
                Slot::Im => z.im.a = r,
                Slot::ImSqrt2 => z.im.b = r,
            }
        }
        Ok(z)
    }
}

impl serde::Serialize for RealScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for RealScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Least common multiple of the denominators of both parts.
pub(crate) fn denom_lcm(x: &RealScalar) -> BigInt {
    x.a.denom().lcm(x.b.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(a: (i64, i64), b: (i64, i64)) -> RealScalar {
        RealScalar::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn difference_of_squares() {
        let x = rs((1, 1), (1, 1));
        let y = rs((1, 1), (-1, 1));
        assert_eq!(&x * &y, RealScalar::from_int(-1));
    }

    #[test]
    fn inverse_of_sqrt2() {
        assert_eq!(RealScalar::sqrt2().inverse().unwrap(), RealScalar::inv_sqrt2());
    }

    #[test]
    fn i_squared() {
        assert_eq!(&ComplexScalar::i() * &ComplexScalar::i(), -ComplexScalar::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(RealScalar::zero().inverse(), Err(Error::DivisionByZero)));
        assert!(matches!(ComplexScalar::one().checked_div(&ComplexScalar::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn signs() {
        assert_eq!(rs((3, 1), (-2, 1)).sign(), 1);
        assert_eq!(RealScalar::zero().sign(), 0);
        assert_eq!(rs((-1, 1), (1, 1)).sign(), 1);
        assert_eq!(rs((1, 1), (-1, 1)).sign(), -1);
        assert_eq!(rs((-3, 1), (0, 1)).sign(), -1);
        assert_eq!(rs((0, 1), (-1, 7)).sign(), -1);
    }

    #[test]
    fn conjugation() {
        let z = ComplexScalar::new(RealScalar::one(), RealScalar::sqrt2());
        let zc = z.conj();
        assert_eq!(zc, ComplexScalar::new(RealScalar::one(), -RealScalar::sqrt2()));
        assert_eq!(zc.conj(), z);
        let r = ComplexScalar::real(rs((2, 3), (1, 5)));
        assert_eq!(r.conj(), r);
        let n = &z * &z.conj();
        assert!(n.is_real());
        assert_eq!(n.re, RealScalar::from_int(3));
        assert!(n.re.sign() >= 0);
    }

    #[test]
    fn text_forms() {
        assert_eq!(RealScalar::frac(3, 4).to_string(), "3/4");
        assert_eq!(rs((1, 1), (-1, 2)).to_string(), "1/1-1/2*sqrt2");
        assert_eq!(RealScalar::sqrt2().to_string(), "0/1+1/1*sqrt2");
        assert_eq!("-3/6+2/4*sqrt2".parse::<RealScalar>().unwrap(), rs((-1, 2), (1, 2)));
        assert_eq!("5".parse::<RealScalar>().unwrap(), RealScalar::from_int(5));
        let z: ComplexScalar = "1/1+1/2*i".parse().unwrap();
        assert_eq!(z, ComplexScalar::from_rationals(rat(1, 1), rat(1, 2)));
        let w = ComplexScalar::new(rs((1, 1), (2, 1)), rs((-1, 3), (1, 1)));
        assert_eq!(w.to_string(), "1/1+2/1*sqrt2-1/3*i+1/1*sqrt2*i");
        assert_eq!(w.to_string().parse::<ComplexScalar>().unwrap(), w);
    }

    #[test]
    fn malformed_text_rejected() {
        for bad in ["", "1/0", "abc", "1/2+", "1/2*sqrt3", "1 /2", "1/2+1/3", "+1/2", "1/-2", "1/2*i"] {
            assert!(bad.parse::<RealScalar>().is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 25)), Some(rat(3, 5)));
        assert_eq!(rational_sqrt(&rat(1, 2)), None);
        assert_eq!(rational_sqrt(&rat(-1, 4)), None);
    }
}
