//! Base-set numbers and scaling factors.
//!
//! Every payload is held exactly as a pair of big rationals. Reals are the
//! rationals embedded in the reals; they print as decimals with a
//! configurable number of significant digits.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_complex::Complex;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ArithmeticError;

/// Exact complex scalar with big-rational parts. Real kinds keep `im == 0`.
pub type Exact = Complex<BigRational>;

/// Significant digits used when printing real payloads.
pub const DEFAULT_REAL_DIGITS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumberKind {
    Natural,
    Rational,
    Real,
    Complex,
}

impl NumberKind {
    /// Whether structures of this kind carry an order relation.
    pub fn is_ordered(self) -> bool {
        !matches!(self, NumberKind::Complex)
    }

    pub fn name(self) -> &'static str {
        match self {
            NumberKind::Natural => "natural",
            NumberKind::Rational => "rational",
            NumberKind::Real => "real",
            NumberKind::Complex => "complex",
        }
    }
}

impl fmt::Display for NumberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NumberKind {
    type Err = ArithmeticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "natural" => Ok(NumberKind::Natural),
            "rational" => Ok(NumberKind::Rational),
            "real" => Ok(NumberKind::Real),
            "complex" => Ok(NumberKind::Complex),
            other => Err(ArithmeticError::Parse(format!("unknown number kind `{other}`"))),
        }
    }
}

pub(crate) fn exact_real(q: BigRational) -> Exact {
    Complex::new(q, BigRational::zero())
}

pub(crate) fn exact_int(n: i64) -> Exact {
    exact_real(BigRational::from_integer(BigInt::from(n)))
}

pub(crate) fn is_real(z: &Exact) -> bool {
    z.im.is_zero()
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    match (a.magnitude().to_u128(), b.magnitude().to_u128()) {
        (Some(x), Some(y)) => BigInt::from(gcd_u128(x, y)),
        _ => a.gcd(b),
    }
}

/// Product of reduced rationals by cross-cancellation; the result is reduced.
fn rat_mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        return BigRational::zero();
    }
    let g1 = gcd(a.numer(), b.denom());
    let g2 = gcd(b.numer(), a.denom());
    let n = (a.numer() / &g1) * (b.numer() / &g2);
    let d = (a.denom() / &g2) * (b.denom() / &g1);
    BigRational::new_raw(n, d)
}

/// Sum of reduced rationals, reducing only by the denominators' gcd.
fn rat_add(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let g = gcd(a.denom(), b.denom());
    let (ad, bd) = (a.denom() / &g, b.denom() / &g);
    let n = a.numer() * &bd + b.numer() * &ad;
    if n.is_zero() {
        return BigRational::zero();
    }
    let h = gcd(&n, &g);
    BigRational::new_raw(n / &h, (a.denom() / &h) * bd)
}

fn rat_sub(a: &BigRational, b: &BigRational) -> BigRational {
    rat_add(a, &-b)
}

/// Exact complex product on reduced parts.
pub(crate) fn times(a: &Exact, b: &Exact) -> Exact {
    Complex::new(
        rat_sub(&rat_mul(&a.re, &b.re), &rat_mul(&a.im, &b.im)),
        rat_add(&rat_mul(&a.re, &b.im), &rat_mul(&a.im, &b.re)),
    )
}

/// Exact complex sum on reduced parts.
pub(crate) fn plus(a: &Exact, b: &Exact) -> Exact {
    Complex::new(rat_add(&a.re, &b.re), rat_add(&a.im, &b.im))
}

/// Exact complex quotient. `b` must be nonzero.
pub(crate) fn quotient(a: &Exact, b: &Exact) -> Exact {
    if b.im.is_zero() {
        let r = b.re.recip();
        return Complex::new(rat_mul(&a.re, &r), rat_mul(&a.im, &r));
    }
    let norm = rat_add(&rat_mul(&b.re, &b.re), &rat_mul(&b.im, &b.im)).recip();
    let p = times(a, &b.conj());
    Complex::new(rat_mul(&p.re, &norm), rat_mul(&p.im, &norm))
}

fn is_nonnegative_integer(z: &Exact) -> bool {
    is_real(z) && z.re.is_integer() && !z.re.is_negative()
}

/// An element of a base set. It carries no value of its own; values only
/// arise once a structure (a scaling factor) is chosen.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseNumber {
    kind: NumberKind,
    payload: Exact,
}

impl BaseNumber {
    pub fn new(kind: NumberKind, payload: Exact) -> Result<Self, ArithmeticError> {
        match kind {
            NumberKind::Natural if !is_nonnegative_integer(&payload) => Err(
                ArithmeticError::InvalidNumber(format!("{} is not a natural number", show_exact(&payload))),
            ),
            NumberKind::Rational | NumberKind::Real if !is_real(&payload) => Err(
                ArithmeticError::InvalidNumber(format!("{} has an imaginary part", show_exact(&payload))),
            ),
            _ => Ok(Self { kind, payload }),
        }
    }

    pub fn natural(n: u64) -> Self {
        Self { kind: NumberKind::Natural, payload: exact_real(BigRational::from_integer(n.into())) }
    }

    pub fn rational(q: BigRational) -> Self {
        Self { kind: NumberKind::Rational, payload: exact_real(q) }
    }

    pub fn real(q: BigRational) -> Self {
        Self { kind: NumberKind::Real, payload: exact_real(q) }
    }

    pub fn complex(re: BigRational, im: BigRational) -> Self {
        Self { kind: NumberKind::Complex, payload: Complex::new(re, im) }
    }

    /// Parses a number of the given kind: `7`, `-3/4`, `1.25e-2`, or `(a,b)`
    /// for complex numbers.
    pub fn parse(kind: NumberKind, text: &str) -> Result<Self, ArithmeticError> {
        Self::new(kind, parse_exact(text)?)
    }

    pub fn kind(&self) -> NumberKind {
        self.kind
    }

    pub fn payload(&self) -> &Exact {
        &self.payload
    }

    pub fn is_zero(&self) -> bool {
        self.payload.is_zero()
    }

    /// Nearest `f64` approximation of the real and imaginary parts.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.payload.re.to_f64().unwrap_or(f64::NAN), self.payload.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        if self.kind == NumberKind::Complex {
            format!("({},{})", decimal(&self.payload.re, digits), decimal(&self.payload.im, digits))
        } else {
            decimal(&self.payload.re, digits)
        }
    }
}

impl fmt::Display for BaseNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            NumberKind::Real => f.write_str(&self.to_decimal_string(DEFAULT_REAL_DIGITS)),
            _ => f.write_str(&show_exact(&self.payload)),
        }
    }
}

/// A nonzero scaling factor, the `s` or `t` of a scaled structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalingFactor(Exact);

impl ScalingFactor {
    pub fn new(value: Exact) -> Result<Self, ArithmeticError> {
        if value.is_zero() {
            Err(ArithmeticError::ZeroScaling)
        } else {
            Ok(Self(value))
        }
    }

    pub fn one() -> Self {
        Self(Exact::one())
    }

    pub fn integer(n: i64) -> Result<Self, ArithmeticError> {
        Self::new(exact_int(n))
    }

    pub fn ratio(numer: i64, denom: i64) -> Result<Self, ArithmeticError> {
        if denom == 0 {
            return Err(ArithmeticError::DivisionByZero);
        }
        Self::new(exact_real(BigRational::new(numer.into(), denom.into())))
    }

    pub fn rational(q: BigRational) -> Result<Self, ArithmeticError> {
        Self::new(exact_real(q))
    }

    pub fn complex(re: BigRational, im: BigRational) -> Result<Self, ArithmeticError> {
        Self::new(Complex::new(re, im))
    }

    pub fn value(&self) -> &Exact {
        &self.0
    }

    pub fn is_real(&self) -> bool {
        is_real(&self.0)
    }

    pub fn as_real(&self) -> Option<&BigRational> {
        self.is_real().then_some(&self.0.re)
    }

    pub fn is_positive_integer(&self) -> bool {
        self.as_real().is_some_and(|q| q.is_integer() && q.is_positive())
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.inv())
    }

    /// Composition of two structure-group elements.
    pub fn compose(&self, other: &Self) -> Self {
        Self(times(&self.0, &other.0))
    }

    /// `self / other`, the relabelling ratio between two levels.
    pub fn over(&self, other: &Self) -> Exact {
        quotient(&self.0, &other.0)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.0.re.to_f64().unwrap_or(f64::NAN), self.0.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for ScalingFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&show_exact(&self.0))
    }
}

impl FromStr for ScalingFactor {
    type Err = ArithmeticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_exact(s)?)
    }
}

/// Renders an exact scalar as `p/q` or `(p/q,r/s)`.
pub fn show_exact(z: &Exact) -> String {
    if z.im.is_zero() {
        z.re.to_string()
    } else {
        format!("({},{})", z.re, z.im)
    }
}

/// Parses `p`, `p/q`, a decimal such as `-1.25e3`, or a complex pair `(a,b)`.
pub fn parse_exact(text: &str) -> Result<Exact, ArithmeticError> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let (re, im) = inner
            .split_once(',')
            .ok_or_else(|| ArithmeticError::Parse(format!("expected `(re,im)`, got `{text}`")))?;
        return Ok(Complex::new(parse_rational(re)?, parse_rational(im)?));
    }
    Ok(exact_real(parse_rational(t)?))
}

/// Parses `p`, `p/q`, or a decimal literal with optional exponent, exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, ArithmeticError> {
    let t = text.trim();
    let bad = || ArithmeticError::Parse(format!("not a rational number: `{text}`"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        return Ok(BigRational::new(n, d));
    }

    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().map_err(|_| bad())? / 10;
    let shift = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let mut q = if shift >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-shift) as usize))
    };
    if negative {
        q = -q;
    }
    Ok(q)
}

/// Scientific-notation rendering of a rational with `digits` significant
/// digits (truncated, not rounded), e.g. `3.3333e-1`.
pub fn decimal(q: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if q.is_zero() {
        return "0".to_string();
    }
    let sign = if q.is_negative() { "-" } else { "" };
    let a = q.abs();
    let ten = BigRational::from_integer(BigInt::from(10u8));

    // Normalise to 1 <= m < 10.
    let mut exp: i64 = 0;
    let mut m = a;
    while m >= ten {
        m /= &ten;
        exp += 1;
    }
    while m < BigRational::one() {
        m *= &ten;
        exp -= 1;
    }

    let scale = num_traits::pow(BigInt::from(10u8), digits - 1);
    let scaled = (m * BigRational::from_integer(scale)).to_integer();
    let (_, mag) = scaled.into_parts();
    let s = BigInt::from_biguint(Sign::Plus, mag).to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let body = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
    if exp == 0 {
        format!("{sign}{body}")
    } else {
        format!("{sign}{body}e{exp}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    proptest::proptest! {
        #[test]
        fn kernels_match_reference_ops(
            parts in proptest::collection::vec((-10i64.pow(12)..10i64.pow(12), 1i64..10i64.pow(12)), 4),
            wide in 0u32..80,
        ) {
            let scale = BigInt::from(3).pow(wide);
            let r: Vec<BigRational> = parts.iter().map(|&(n, d)| q(n, d) * BigRational::from_integer(scale.clone())).collect();
            let a = Complex::new(r[0].clone(), r[1].clone());
            let b = Complex::new(r[2].clone(), r[3].clone());
            let real = Complex::new(r[2].clone(), BigRational::zero());
            proptest::prop_assert_eq!(times(&a, &b), &a * &b);
            proptest::prop_assert_eq!(plus(&a, &b), &a + &b);
            proptest::prop_assert_eq!(plus(&a, &-a.clone()), Exact::zero());
            if !b.is_zero() {
                proptest::prop_assert_eq!(quotient(&a, &b), &a / &b);
            }
            if !real.is_zero() {
                proptest::prop_assert_eq!(quotient(&a, &real), &a / &real);
            }
        }
    }

    #[test]
    fn gcd_handles_zero_and_wide_values() {
        assert_eq!(gcd_u128(0, 12), 12);
        assert_eq!(gcd_u128(48, 0), 48);
        assert_eq!(gcd_u128(1 << 100, 3 << 90), 1 << 90);
        let big = BigInt::from(u128::MAX) * 6;
        assert_eq!(gcd(&big, &BigInt::from(-4)), BigInt::from(2));
    }

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("-3/4").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("1.25").unwrap(), q(5, 4));
        assert_eq!(parse_rational("-1.5e-2").unwrap(), q(-3, 200));
        assert_eq!(parse_rational("2e3").unwrap(), q(2000, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn parses_complex_pair() {
        let z = parse_exact("(1/2,-3)").unwrap();
        assert_eq!(z, Complex::new(q(1, 2), q(-3, 1)));
    }

    #[test]
    fn natural_payload_must_be_nonnegative_integer() {
        assert!(BaseNumber::parse(NumberKind::Natural, "6").is_ok());
        assert!(BaseNumber::parse(NumberKind::Natural, "-6").is_err());
        assert!(BaseNumber::parse(NumberKind::Natural, "1/2").is_err());
        assert!(BaseNumber::parse(NumberKind::Rational, "(1,1)").is_err());
    }

    #[test]
    fn zero_scaling_is_rejected() {
        assert_eq!(ScalingFactor::integer(0), Err(ArithmeticError::ZeroScaling));
        assert_eq!("0/5".parse::<ScalingFactor>(), Err(ArithmeticError::ZeroScaling));
    }

    #[test]
    fn real_prints_fifty_digits() {
        let third = BaseNumber::real(q(1, 3));
        let s = third.to_string();
        assert_eq!(s, format!("3.{}e-1", "3".repeat(49)));
        assert_eq!(decimal(&q(5, 4), 50), "1.25");
        assert_eq!(decimal(&q(-1200, 1), 10), "-1.2e3");
    }
}
