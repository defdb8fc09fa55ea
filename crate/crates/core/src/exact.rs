//! Exact arithmetic in real quadratic fields Q(√D).
//!
//! A [`QuadSurd`] is stored as `(p + q·√D) / r` with integers `p`, `q`, `r`,
//! `r > 0` and `gcd(p, q, r) = 1`, which makes the representation canonical.
//! Rationals are surds with `q = 0`; they combine with a surd of any radicand.
//! Two surds with `q ≠ 0` and different radicands never mix: arithmetic on them
//! returns [`Error::FieldMismatch`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational.
pub type BigRat = BigRational;

/// Radicand of the field that holds every constant of the F₄* construction.
pub const DEFAULT_DISC: u64 = 26565;

/// Exact element of Q(√disc).
#[derive(Clone, Debug)]
pub struct QuadSurd {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    disc: u64,
}

fn is_perfect_square(n: u64) -> bool {
    let s = n.sqrt();
    s * s == n
}

fn check_disc(disc: u64) -> Result<()> {
    if disc < 2 || is_perfect_square(disc) {
        return Err(Error::BadRadicand(disc));
    }
    Ok(())
}

/// `floor(k·√d)` for an integer `k` and non-square `d`.
fn floor_mul_sqrt(k: &BigInt, d: u64) -> BigInt {
    if k.is_zero() {
        return BigInt::zero();
    }
    let root = (k * k * BigInt::from(d)).sqrt();
    if k.is_negative() {
        -root - 1
    } else {
        root
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
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

fn pow10(digits: usize) -> BigInt {
    num_traits::pow(BigInt::from(10u32), digits)
}

impl QuadSurd {
    /// Builds `(p + q·√disc) / r` and reduces it.
    pub fn from_parts(p: BigInt, q: BigInt, r: BigInt, disc: u64) -> Result<Self> {
        check_disc(disc)?;
        if r.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(Self::raw(p, q, r, disc))
    }

    /// Builds `rat + coef·√disc`.
    pub fn new(rat: BigRat, coef: BigRat, disc: u64) -> Result<Self> {
        check_disc(disc)?;
        let r = rat.denom().lcm(coef.denom());
        let p = rat.numer() * (&r / rat.denom());
        let q = coef.numer() * (&r / coef.denom());
        Ok(Self::raw(p, q, r, disc))
    }

    pub fn from_rational(x: BigRat, disc: u64) -> Result<Self> {
        Self::new(x, BigRat::zero(), disc)
    }

    pub fn from_integer(n: i64, disc: u64) -> Result<Self> {
        Self::from_parts(BigInt::from(n), BigInt::zero(), BigInt::one(), disc)
    }

    /// `√disc` itself.
    pub fn sqrt_of(disc: u64) -> Result<Self> {
        Self::from_parts(BigInt::zero(), BigInt::one(), BigInt::one(), disc)
    }

    /// Unchecked constructor; callers guarantee `r != 0` and a valid radicand.
    pub(crate) fn raw(mut p: BigInt, mut q: BigInt, mut r: BigInt, disc: u64) -> Self {
        debug_assert!(!r.is_zero());
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        Self { p, q, r, disc }
    }

    /// Reduces a triple of machine integers; `r != 0`.
    pub(crate) fn from_small(p: i128, q: i128, r: i128, disc: u64) -> Self {
        debug_assert!(r != 0);
        let g = gcd_u128(gcd_u128(p.unsigned_abs(), q.unsigned_abs()), r.unsigned_abs()) as i128;
        let s = if r < 0 { -g } else { g };
        Self {
            p: BigInt::from(p / s),
            q: BigInt::from(q / s),
            r: BigInt::from(r / s),
            disc,
        }
    }

    pub fn disc(&self) -> u64 {
        self.disc
    }

    /// Rational part.
    pub fn rat(&self) -> BigRat {
        BigRat::new(self.p.clone(), self.r.clone())
    }

    /// Coefficient of √disc.
    pub fn coef(&self) -> BigRat {
        BigRat::new(self.q.clone(), self.r.clone())
    }

    /// Integer triple `(p, q, r)` of the canonical form `(p + q·√D)/r`.
    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.p, &self.q, &self.r)
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// The rational value, if the surd part vanishes.
    pub fn to_rational(&self) -> Option<BigRat> {
        self.is_rational().then(|| self.rat())
    }

    /// Moves a rational into another field; fails for genuine surds.
    pub fn with_disc(&self, disc: u64) -> Result<Self> {
        check_disc(disc)?;
        if self.disc != disc && !self.is_rational() {
            return Err(Error::FieldMismatch(self.disc, disc));
        }
        Ok(Self { disc, ..self.clone() })
    }

    fn common_disc(&self, other: &Self) -> Result<u64> {
        if self.disc == other.disc || other.q.is_zero() {
            Ok(self.disc)
        } else if self.q.is_zero() {
            Ok(other.disc)
        } else {
            Err(Error::FieldMismatch(self.disc, other.disc))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let disc = self.common_disc(other)?;
        Ok(Self::raw(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            &self.r * &other.r,
            disc,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let disc = self.common_disc(other)?;
        Ok(Self::raw(
            &self.p * &other.r - &other.p * &self.r,
            &self.q * &other.r - &other.q * &self.r,
            &self.r * &other.r,
            disc,
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let disc = self.common_disc(other)?;
        let d = BigInt::from(disc);
        Ok(Self::raw(
            &self.p * &other.p + &self.q * &other.q * d,
            &self.p * &other.q + &self.q * &other.p,
            &self.r * &other.r,
            disc,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.common_disc(other)?;
        self.checked_mul(&other.recip()?)
    }

    /// Multiplicative inverse via the conjugate.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivByZero);
        }
        let norm = &self.p * &self.p - &self.q * &self.q * BigInt::from(self.disc);
        Ok(Self::raw(&self.r * &self.p, -(&self.r * &self.q), norm, self.disc))
    }

    /// The Galois conjugate `(p − q·√D)/r`.
    pub fn conjugate(&self) -> Self {
        Self { q: -&self.q, ..self.clone() }
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        sign_of(&self.p, &self.q, self.disc)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison; fails only across different fields.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        let disc = self.common_disc(other)?;
        if let Some(ord) = self.cmp_small(other, disc) {
            return Ok(ord);
        }
        let a = &self.p * &other.r - &other.p * &self.r;
        let b = &self.q * &other.r - &other.q * &self.r;
        Ok(sign_of(&a, &b, disc).cmp(&0))
    }

    /// [`QuadSurd::cmp_exact`] in 128-bit arithmetic; `None` on overflow.
    fn cmp_small(&self, other: &Self, disc: u64) -> Option<Ordering> {
        let [p1, q1, r1, p2, q2, r2] =
            [&self.p, &self.q, &self.r, &other.p, &other.q, &other.r].map(|x| x.to_i128());
        let (p1, q1, r1, p2, q2, r2) = (p1?, q1?, r1?, p2?, q2?, r2?);
        let a = p1.checked_mul(r2)?.checked_sub(p2.checked_mul(r1)?)?;
        let b = q1.checked_mul(r2)?.checked_sub(q2.checked_mul(r1)?)?;
        let sign = match (a.signum(), b.signum()) {
            (sa, 0) => sa,
            (0, sb) => sb,
            (sa, sb) if sa == sb => sa,
            (sa, sb) => {
                let lhs = a.checked_mul(a)?;
                let rhs = b.checked_mul(b)?.checked_mul(i128::from(disc))?;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => 0,
                }
            }
        };
        Some(sign.cmp(&0))
    }

    pub fn min_of<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max_of<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// `floor(self · scale)` for a positive integer `scale`.
    pub fn floor_scaled(&self, scale: &BigInt) -> BigInt {
        let a = &self.p * scale;
        let b = floor_mul_sqrt(&(&self.q * scale), self.disc);
        (a + b).div_floor(&self.r)
    }

    pub fn floor(&self) -> BigInt {
        self.floor_scaled(&BigInt::one())
    }

    /// Rational bracket `[lo, hi]` of width `10^-digits` containing the value.
    pub fn enclosure(&self, digits: usize) -> (BigRat, BigRat) {
        let scale = pow10(digits);
        let f = self.floor_scaled(&scale);
        (
            BigRat::new(f.clone(), scale.clone()),
            BigRat::new(f + 1, scale),
        )
    }

    /// Decimal approximation with `digits` fractional digits, correctly
    /// rounded (half away from zero). Display only.
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.is_negative();
        let mag = self.abs();
        let two_scale = pow10(digits) * 2;
        let n = (mag.floor_scaled(&two_scale) + BigInt::one()).div_floor(&BigInt::from(2));
        let mut s = n.to_string();
        if digits > 0 {
            if s.len() <= digits {
                s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
            }
            s.insert(s.len() - digits, '.');
        }
        if neg && !n.is_zero() {
            s.insert(0, '-');
        }
        s
    }

    /// Human-oriented text: omits unit coefficients and leads with the
    /// positive term, e.g. `(83497*sqrt(26565)-228339)/13158329`.
    pub fn pretty(&self) -> String {
        if self.q.is_zero() {
            return if self.r.is_one() {
                self.p.to_string()
            } else {
                format!("{}/{}", self.p, self.r)
            };
        }
        let root = if self.q.abs().is_one() {
            format!("sqrt({})", self.disc)
        } else {
            format!("{}*sqrt({})", self.q.abs(), self.disc)
        };
        let body = match (self.p.is_zero(), self.p.is_negative(), self.q.is_negative()) {
            (true, _, false) => root,
            (true, _, true) => format!("-{root}"),
            (false, true, false) => format!("{root}-{}", self.p.abs()),
            (false, _, neg_q) => {
                format!("{}{}{root}", self.p, if neg_q { "-" } else { "+" })
            }
        };
        if self.r.is_one() {
            body
        } else {
            format!("({body})/{}", self.r)
        }
    }

    /// Parses text, using `default_disc` when no square root appears.
    pub fn parse_in(text: &str, default_disc: u64) -> Result<Self> {
        parse_surd(text, default_disc)
    }
}

fn sign_of(p: &BigInt, q: &BigInt, disc: u64) -> i32 {
    let sp = sgn(p);
    let sq = sgn(q);
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    // opposite signs: compare p² with q²·D
    let lhs = p * p;
    let rhs = q * q * BigInt::from(disc);
    match lhs.cmp(&rhs) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

fn sgn(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Compares values that may live in different quadratic fields using
/// rational enclosures of increasing precision. Returns `None` if the two
/// could not be separated within `max_digits`.
pub fn compare_across_fields(x: &QuadSurd, y: &QuadSurd, max_digits: usize) -> Option<Ordering> {
    if let Ok(ord) = x.cmp_exact(y) {
        return Some(ord);
    }
    let mut digits = 16;
    while digits <= max_digits {
        let (xl, xh) = x.enclosure(digits);
        let (yl, yh) = y.enclosure(digits);
        if xh < yl {
            return Some(Ordering::Less);
        }
        if yh < xl {
            return Some(Ordering::Greater);
        }
        digits *= 2;
    }
    None
}

impl PartialEq for QuadSurd {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.q == other.q
            && self.r == other.r
            && (self.q.is_zero() || self.disc == other.disc)
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl fmt::Display for QuadSurd {
    /// Canonical `(p + q*sqrt(D))/r`; parses back to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.q.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({} {} {}*sqrt({}))/{}",
            self.p,
            sign,
            self.q.abs(),
            self.disc,
            self.r
        )
    }
}

impl FromStr for QuadSurd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_surd(s, DEFAULT_DISC)
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd { p: -self.p, q: -self.q, ..self }
    }
}

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        -(self.clone())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands live in different fields (or on division
        /// by zero); use the `checked_*` method to get an error instead.
        impl $trait<&QuadSurd> for &QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: &QuadSurd) -> QuadSurd {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}: {e}", stringify!($method)),
                }
            }
        }
        impl $trait<QuadSurd> for QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: QuadSurd) -> QuadSurd {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadSurd> for QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: &QuadSurd) -> QuadSurd {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadSurd> for &QuadSurd {
            type Output = QuadSurd;
            fn $method(self, rhs: QuadSurd) -> QuadSurd {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

/// Parses an exact decimal such as `-18.4811` into a rational.
pub fn parse_decimal(text: &str) -> Result<BigRat> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a number: {text:?}"));
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all = |s: &str| s.chars().all(|c| c.is_ascii_digit());
    if !all(int_part) || !all(frac_part) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let v = BigRat::new(n, pow10(frac_part.len()));
    Ok(if neg { -v } else { v })
}

/// Parses a rational `p/q`, an integer or a decimal.
pub fn parse_rational(text: &str) -> Result<BigRat> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    match t.split_once('/') {
        Some((n, d)) => {
            let n = parse_decimal(n)?;
            let d = parse_decimal(d)?;
            if d.is_zero() {
                return Err(Error::DivByZero);
            }
            Ok(n / d)
        }
        None => parse_decimal(&t),
    }
}

fn parse_surd(text: &str, default_disc: u64) -> Result<QuadSurd> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    // split off a top-level denominator
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => split = Some(i),
            _ => {}
        }
    }
    let (num, den) = match split {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s.as_str(), None),
    };
    // optional leading factor, as in `111*(397+sqrt(26565))`
    let (factor, num) = match num.split_once("*(") {
        Some((k, rest)) if rest.ends_with(')') && !k.contains(['(', ')']) && !k.contains("sqrt") => {
            (parse_decimal(k)?, &rest[..rest.len() - 1])
        }
        _ => (BigRat::one(), num),
    };
    let num = match num.strip_prefix('(').and_then(|n| n.strip_suffix(')')) {
        Some(inner) => inner,
        None => num,
    };

    let mut rat = BigRat::zero();
    let mut coef = BigRat::zero();
    let mut disc: Option<u64> = None;
    for term in split_terms(num) {
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term.strip_prefix('+').unwrap_or(term)),
        };
        if let Some(pos) = body.find("sqrt(") {
            let close = body[pos..]
                .find(')')
                .map(|c| c + pos)
                .ok_or_else(|| Error::Parse(format!("unclosed sqrt in {term:?}")))?;
            let d: u64 = body[pos + 5..close]
                .parse()
                .map_err(|_| Error::Parse(format!("bad radicand in {term:?}")))?;
            if let Some(prev) = disc {
                if prev != d {
                    return Err(Error::FieldMismatch(prev, d));
                }
            }
            disc = Some(d);
            let before = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
            let after = body[close + 1..].strip_prefix('*').unwrap_or(&body[close + 1..]);
            let mut k = BigRat::one();
            for factor in [before, after] {
                if !factor.is_empty() {
                    k *= parse_decimal(factor)?;
                }
            }
            coef += if neg { -k } else { k };
        } else {
            let v = parse_decimal(body)?;
            rat += if neg { -v } else { v };
        }
    }
    rat *= factor.clone();
    coef *= factor;
    if let Some(den) = den {
        let d = parse_decimal(den.trim_start_matches('(').trim_end_matches(')'))?;
        if d.is_zero() {
            return Err(Error::DivByZero);
        }
        rat /= d.clone();
        coef /= d;
    }
    QuadSurd::new(rat, coef, disc.unwrap_or(default_disc))
}

fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > start => {
                out.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(s: &str) -> QuadSurd {
        s.parse().unwrap()
    }

    fn int(n: i64) -> QuadSurd {
        QuadSurd::from_integer(n, DEFAULT_DISC).unwrap()
    }

    #[test]
    fn identity_and_conjugate_product() {
        let x = qs("(783 + sqrt(26565))/222");
        assert_eq!(&int(1) * &x, x);
        let y = qs("7 - 3*sqrt(26565)");
        let n = &y * &y.conjugate();
        assert_eq!(n, int(49 - 9 * 26565));
        assert!(n.is_rational());
    }

    #[test]
    fn root_squared_is_product_left_endpoint() {
        let x = qs("(783 + sqrt(26565))/222");
        assert_eq!(&x * &x, qs("(106609 + 261*sqrt(26565))/8214"));
    }

    #[test]
    fn signs() {
        assert_eq!(int(0).signum(), 0);
        let width = qs("(5501 - sqrt(26565))/1238") - qs("(783 + sqrt(26565))/222");
        assert_eq!(width.signum(), 1);
        let tau = qs("(83497*sqrt(26565) - 228339)/13158329");
        assert_eq!((tau - int(1)).signum(), 1);
    }

    #[test]
    fn decimals() {
        let phi = QuadSurd::parse_in("(1 + sqrt(5))/2", 5).unwrap();
        assert_eq!(phi.to_decimal(5), "1.61803");
        let lambda = qs("(228339 + 83497*sqrt(26565))/14071116");
        assert_eq!(lambda.to_decimal(4), "0.9834");
        let gamma = qs("(188261210808537 - 1136812239479*sqrt(26565))/173141622072241");
        assert_eq!(gamma.to_decimal(3), "0.017");
        assert_eq!((-phi).to_decimal(3), "-1.618");
        assert_eq!(qs("1/8").to_decimal(2), "0.13");
        assert_eq!(qs("-1/200").to_decimal(2), "-0.01");
        assert_eq!(qs("1/300").to_decimal(1), "0.0");
    }

    #[test]
    fn field_mismatch_and_div_by_zero() {
        let a = QuadSurd::sqrt_of(5).unwrap();
        let b = QuadSurd::sqrt_of(2).unwrap();
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch(5, 2)));
        assert_eq!(a.checked_div(&int(0)), Err(Error::DivByZero));
        // rationals mix with any field
        assert!(a.checked_mul(&int(3)).is_ok());
        assert_eq!(QuadSurd::sqrt_of(16), Err(Error::BadRadicand(16)));
    }

    #[test]
    fn text_round_trip_and_forms() {
        let x = qs("(83497*sqrt(26565)-228339)/13158329");
        assert_eq!(x.to_string(), "(-228339 + 83497*sqrt(26565))/13158329");
        assert_eq!(qs(&x.to_string()), x);
        assert_eq!(x.pretty(), "(83497*sqrt(26565)-228339)/13158329");
        assert_eq!(qs(&x.pretty()), x);
        assert_eq!(qs("7/100"), QuadSurd::from_rational(BigRat::new(7.into(), 100.into()), DEFAULT_DISC).unwrap());
        assert_eq!(qs("10+6*sqrt(2)").disc(), 2);
        assert_eq!(qs("18.25"), qs("73/4"));
        assert_eq!(qs("111*(397 + sqrt(26565))/65522"), qs("(44067 + 111*sqrt(26565))/65522"));
        assert!(qs("sqrt(26565)*2") == qs("2*sqrt(26565)"));
        assert!("abc".parse::<QuadSurd>().is_err());
    }

    #[test]
    fn cross_field_comparison() {
        let mu = qs("(-39 + 111*sqrt(26565))/8") ; // arbitrary surd, ~2261
        let other = QuadSurd::parse_in("10 + 6*sqrt(2)", 2).unwrap();
        assert_eq!(compare_across_fields(&other, &mu, 200), Some(Ordering::Less));
    }
}
