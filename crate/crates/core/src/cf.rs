//! Continued fractions: convergents, exact evaluation of finite and
//! eventually periodic expansions, reversal, Perron products and the
//! irrationality measure function.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{BigRat, QuadSurd};

/// Finite continued fraction `[x0; x1, ..., xn]`.
///
/// The head may be zero (reversed words `[0; xn, ..., x0]`); every other
/// partial quotient is at least one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CfWord {
    digits: Vec<u32>,
}

fn check_digits(digits: &[u32], head_may_be_zero: bool) -> Result<()> {
    for (index, &value) in digits.iter().enumerate() {
        if value == 0 && !(index == 0 && head_may_be_zero) {
            return Err(Error::BadDigit { index, value });
        }
    }
    Ok(())
}

impl CfWord {
    pub fn new(digits: Vec<u32>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyWord);
        }
        check_digits(&digits, true)?;
        Ok(Self { digits })
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn head(&self) -> u32 {
        self.digits[0]
    }
}

impl fmt::Display for CfWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.digits[0])?;
        for (i, d) in self.digits[1..].iter().enumerate() {
            write!(f, "{}{d}", if i == 0 { ";" } else { "," })?;
        }
        write!(f, "]")
    }
}

/// Eventually periodic continued fraction `prefix` followed by `period`
/// repeated forever.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicCf {
    prefix: Vec<u32>,
    period: Vec<u32>,
}

impl PeriodicCf {
    pub fn new(prefix: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::MalformedPeriod("empty period".into()));
        }
        check_digits(&prefix, true)?;
        if let Err(Error::BadDigit { index, value }) = check_digits(&period, prefix.is_empty()) {
            return Err(Error::BadDigit { index: prefix.len() + index, value });
        }
        if prefix.is_empty() && period[0] == 0 {
            return Err(Error::MalformedPeriod("period starts with 0".into()));
        }
        Ok(Self { prefix, period })
    }

    /// Pure period `overline(period)`.
    pub fn purely(period: Vec<u32>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// Digit at position `k` of the infinite expansion.
    pub fn digit(&self, k: usize) -> u32 {
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.period[(k - self.prefix.len()) % self.period.len()]
        }
    }

    /// The first `n` digits.
    pub fn take(&self, n: usize) -> Vec<u32> {
        (0..n).map(|k| self.digit(k)).collect()
    }

    /// The expansion with its first `n` digits removed.
    pub fn shift(&self, n: usize) -> PeriodicCf {
        if n <= self.prefix.len() {
            return PeriodicCf {
                prefix: self.prefix[n..].to_vec(),
                period: self.period.clone(),
            };
        }
        let k = (n - self.prefix.len()) % self.period.len();
        let mut period = self.period[k..].to_vec();
        period.extend_from_slice(&self.period[..k]);
        PeriodicCf { prefix: Vec::new(), period }
    }

    /// The same value with `digits` placed in front.
    pub fn prepend(&self, digits: &[u32]) -> Result<PeriodicCf> {
        let mut prefix = digits.to_vec();
        prefix.extend_from_slice(&self.prefix);
        PeriodicCf::new(prefix, self.period.clone())
    }
}

impl fmt::Display for PeriodicCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let period = self
            .period
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",");
        match self.prefix.split_first() {
            None => write!(f, "[({period})]"),
            Some((head, rest)) => {
                write!(f, "[{head};")?;
                for d in rest {
                    write!(f, "{d},")?;
                }
                write!(f, "({period})]")
            }
        }
    }
}

fn parse_digit_list(s: &str) -> Result<Vec<u32>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|d| {
            d.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad partial quotient {d:?}")))
        })
        .collect()
}

/// Splits `[h;a,b,(c,d)]` into head part, body part and optional period.
fn split_cf_text(text: &str) -> Result<(Vec<u32>, Option<Vec<u32>>)> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..]: {text:?}")))?;
    let (body, period) = match inner.find('(') {
        Some(open) => {
            let close = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("period must close the word: {text:?}")))?;
            let period = parse_digit_list(&close[open + 1..])?;
            let body = inner[..open].trim_end_matches(',').trim_end_matches(';');
            (body, Some(period))
        }
        None => (inner, None),
    };
    let mut digits = Vec::new();
    if !body.is_empty() {
        let (head, rest) = match body.split_once(';') {
            Some((h, r)) => (h, r),
            None => (body, ""),
        };
        digits.extend(parse_digit_list(head)?);
        digits.extend(parse_digit_list(rest)?);
    }
    Ok((digits, period))
}

impl FromStr for CfWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match split_cf_text(s)? {
            (digits, None) => CfWord::new(digits),
            (_, Some(_)) => Err(Error::Parse(format!("unexpected period in {s:?}"))),
        }
    }
}

impl FromStr for PeriodicCf {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match split_cf_text(s)? {
            (prefix, Some(period)) => PeriodicCf::new(prefix, period),
            (_, None) => Err(Error::MalformedPeriod(format!("no period in {s:?}"))),
        }
    }
}

/// Möbius map `t ↦ (a·t + b)/(c·t + d)` with integer coefficients.
///
/// The map of a digit prefix `x0..xn` is `[[p_n, p_{n-1}], [q_n, q_{n-1}]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mobius {
    pub fn identity() -> Self {
        Self {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    pub fn of_digits(digits: &[u32]) -> Self {
        // machine integers while they fit, then big integers
        let (mut a, mut b, mut c, mut d) = (1u128, 0u128, 0u128, 1u128);
        for (k, &x) in digits.iter().enumerate() {
            let x = x as u128;
            let next = a
                .checked_mul(x)
                .and_then(|v| v.checked_add(b))
                .zip(c.checked_mul(x).and_then(|v| v.checked_add(d)));
            match next {
                Some((na, nc)) => {
                    (b, d) = (a, c);
                    (a, c) = (na, nc);
                }
                None => {
                    let mut m = Self {
                        a: a.into(),
                        b: b.into(),
                        c: c.into(),
                        d: d.into(),
                    };
                    for &x in &digits[k..] {
                        m.push(x);
                    }
                    return m;
                }
            }
        }
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    /// Appends one partial quotient.
    pub fn push(&mut self, x: u32) {
        let x = BigInt::from(x);
        let a = &self.a * &x + &self.b;
        let c = &self.c * &x + &self.d;
        self.b = std::mem::replace(&mut self.a, a);
        self.d = std::mem::replace(&mut self.c, c);
    }

    /// `a·d − b·c`, which is `±1` for digit products.
    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply_rat(&self, t: &BigRat) -> Result<BigRat> {
        let num = &self.a * t.numer() + &self.b * t.denom();
        let den = &self.c * t.numer() + &self.d * t.denom();
        if den.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(BigRat::new(num, den))
    }

    pub fn apply(&self, t: &QuadSurd) -> Result<QuadSurd> {
        // (a(p + q√D)/r + b)/(c(p + q√D)/r + d)
        // = (A + B√D)/(C + E√D); multiply through by C − E√D
        if let Some(v) = self.apply_small(t) {
            return v;
        }
        let (p, q, r) = t.parts();
        let disc = t.disc();
        let d = BigInt::from(disc);
        let (a0, b0) = (&self.a * p + &self.b * r, &self.a * q);
        let (c0, e0) = (&self.c * p + &self.d * r, &self.c * q);
        let norm = &c0 * &c0 - &e0 * &e0 * &d;
        if norm.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(QuadSurd::raw(
            &a0 * &c0 - &b0 * &e0 * &d,
            &b0 * &c0 - &a0 * &e0,
            norm,
            disc,
        ))
    }
}

impl Mobius {
    /// [`Mobius::apply`] in 128-bit arithmetic; `None` on overflow.
    fn apply_small(&self, t: &QuadSurd) -> Option<Result<QuadSurd>> {
        let (p, q, r) = t.parts();
        let [a, b, c, dd, p, q, r] =
            [&self.a, &self.b, &self.c, &self.d, p, q, r].map(|x| x.to_i128());
        let (a, b, c, dd, p, q, r) = (a?, b?, c?, dd?, p?, q?, r?);
        let d = i128::from(t.disc());
        let a0 = a.checked_mul(p)?.checked_add(b.checked_mul(r)?)?;
        let b0 = a.checked_mul(q)?;
        let c0 = c.checked_mul(p)?.checked_add(dd.checked_mul(r)?)?;
        let e0 = c.checked_mul(q)?;
        let norm = c0.checked_mul(c0)?.checked_sub(e0.checked_mul(e0)?.checked_mul(d)?)?;
        if norm == 0 {
            return Some(Err(Error::DivByZero));
        }
        let np = a0.checked_mul(c0)?.checked_sub(b0.checked_mul(e0)?.checked_mul(d)?)?;
        let nq = b0.checked_mul(c0)?.checked_sub(a0.checked_mul(e0)?)?;
        Some(Ok(QuadSurd::from_small(np, nq, norm, t.disc())))
    }
}

/// Convergent table `p_k/q_k` for `k = 0..=n`, with `p_{-1} = 1`, `q_{-1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentSeq {
    pub p: Vec<BigInt>,
    pub q: Vec<BigInt>,
}

impl ConvergentSeq {
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// `p_k`, accepting `k = -1`.
    pub fn p_at(&self, k: isize) -> BigInt {
        if k < 0 {
            BigInt::one()
        } else {
            self.p[k as usize].clone()
        }
    }

    /// `q_k`, accepting `k = -1`.
    pub fn q_at(&self, k: isize) -> BigInt {
        if k < 0 {
            BigInt::zero()
        } else {
            self.q[k as usize].clone()
        }
    }

    pub fn ratio(&self, k: usize) -> BigRat {
        BigRat::new(self.p[k].clone(), self.q[k].clone())
    }

    pub fn last(&self) -> BigRat {
        self.ratio(self.len() - 1)
    }
}

pub fn convergents(w: &CfWord) -> ConvergentSeq {
    let mut seq = ConvergentSeq {
        p: Vec::with_capacity(w.len()),
        q: Vec::with_capacity(w.len()),
    };
    let (mut p1, mut p2) = (BigInt::one(), BigInt::zero());
    let (mut q1, mut q2) = (BigInt::zero(), BigInt::one());
    for &x in w.digits() {
        let x = BigInt::from(x);
        let p = &x * &p1 + &p2;
        let q = &x * &q1 + &q2;
        p2 = std::mem::replace(&mut p1, p.clone());
        q2 = std::mem::replace(&mut q1, q.clone());
        seq.p.push(p);
        seq.q.push(q);
    }
    seq
}

/// `ε_k = q_{k-1}/q_k` for `k = 0..=n` (so `ε_0 = 0`).
pub fn epsilon_seq(w: &CfWord) -> Result<Vec<BigRat>> {
    for (index, &value) in w.digits().iter().enumerate().skip(1) {
        if !(1..=4).contains(&value) {
            return Err(Error::DigitRange { index, value });
        }
    }
    let c = convergents(w);
    Ok((0..c.len() as isize)
        .map(|k| BigRat::new(c.q_at(k - 1), c.q_at(k)))
        .collect())
}

pub fn eval_finite(w: &CfWord) -> BigRat {
    convergents(w).last()
}

/// Square-free part of `n` together with the square root of the rest:
/// returns `(f, s)` with `n = f²·s`.
fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut f = BigInt::one();
    let mut s = BigInt::one();
    let limit = rest.cbrt().to_u64().unwrap_or(u64::MAX).min(1 << 24);
    let mut p: u64 = 2;
    while p <= limit {
        let bp = BigInt::from(p);
        if (&bp * &bp * &bp) > rest {
            break;
        }
        let mut odd = false;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            if odd {
                f *= &bp;
            }
            odd = !odd;
        }
        if odd {
            s *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // what remains has no prime factor ≤ its cube root: 1, prime, pq or p²
    let r = rest.sqrt();
    if &r * &r == rest {
        f *= r;
    } else {
        s *= rest;
    }
    (f, s)
}

/// Value of the purely periodic expansion `overline(period)`: the root
/// exceeding one of `Q t² + (Q' − P) t − P' = 0`.
fn periodic_fixed_point(period: &[u32], disc_hint: Option<u64>) -> Result<QuadSurd> {
    let m = Mobius::of_digits(period);
    let (pp, p1, qq, q1) = (&m.a, &m.b, &m.c, &m.d);
    let lin = pp - q1;
    let delta = &lin * &lin + BigInt::from(4) * qq * p1;
    let (f, disc) = match disc_hint {
        Some(d) => {
            let bd = BigInt::from(d);
            let quotient = &delta / &bd;
            let root = quotient.sqrt();
            if &quotient * &bd != delta || &root * &root != quotient {
                return Err(Error::MalformedPeriod(format!(
                    "discriminant {delta} is not a square multiple of {d}"
                )));
            }
            (root, d)
        }
        None => {
            let (f, s) = square_free_split(&delta);
            let d = s.to_u64().ok_or_else(|| {
                Error::MalformedPeriod(format!("discriminant {delta} too large"))
            })?;
            if d == 1 {
                return Err(Error::MalformedPeriod(format!(
                    "discriminant {delta} is a perfect square"
                )));
            }
            (f, d)
        }
    };
    if !qq.is_positive() {
        return Err(Error::MalformedPeriod("non-positive denominator".into()));
    }
    let t = QuadSurd::from_parts(lin, f, BigInt::from(2) * qq, disc)?;
    debug_assert!(t.is_positive());
    Ok(t)
}

/// Exact value of an eventually periodic continued fraction.
pub fn eval_periodic(x: &PeriodicCf) -> Result<QuadSurd> {
    let t = periodic_fixed_point(&x.period, None)?;
    Mobius::of_digits(&x.prefix).apply(&t)
}

/// Like [`eval_periodic`] but expresses the result in `Q(√disc)`; fails if
/// the value does not live in that field. Skips the square-free reduction.
pub fn eval_periodic_in(x: &PeriodicCf, disc: u64) -> Result<QuadSurd> {
    let t = periodic_fixed_point(&x.period, Some(disc))?;
    Mobius::of_digits(&x.prefix).apply(&t)
}

/// `[0; x_n, x_{n-1}, ..., x_0]`.
pub fn reverse_star(w: &CfWord, n: usize) -> Result<CfWord> {
    if n >= w.len() {
        return Err(Error::IndexOutOfRange { index: n, len: w.len() });
    }
    let mut digits = Vec::with_capacity(n + 2);
    digits.push(0);
    digits.extend(w.digits()[..=n].iter().rev());
    Ok(CfWord { digits })
}

/// `[x_n; x_{n-1}, ..., x_0] · [x_{n+1}; x_{n+2}, ...]` on a finite word,
/// the second factor cut after `depth` digits (or at the end of the word).
pub fn perron_rho_finite(w: &CfWord, n: usize, depth: usize) -> Result<BigRat> {
    let len = w.len();
    if n + 1 >= len {
        return Err(Error::IndexOutOfRange { index: n + 1, len });
    }
    let back: Vec<u32> = w.digits()[..=n].iter().rev().copied().collect();
    let end = (n + 1 + depth.max(1)).min(len);
    let fwd = &w.digits()[n + 1..end];
    Ok(eval_digits(&back) * eval_digits(fwd))
}

/// Perron product at index `n` of an eventually periodic expansion, exact.
pub fn perron_rho_periodic(x: &PeriodicCf, n: usize) -> Result<QuadSurd> {
    let back: Vec<u32> = x.take(n + 1).into_iter().rev().collect();
    let fwd = eval_periodic(&x.shift(n + 1))?;
    let back = QuadSurd::from_rational(eval_digits(&back), fwd.disc())?;
    back.checked_mul(&fwd)
}

/// Limit of the Perron product when the reversed prefix tends to `back`
/// and the tail is `fwd`, i.e. `eval(back) · eval(fwd)`.
pub fn perron_rho_limit(back: &PeriodicCf, fwd: &PeriodicCf) -> Result<QuadSurd> {
    eval_periodic(back)?.checked_mul(&eval_periodic(fwd)?)
}

/// Value of a non-empty digit slice.
pub fn eval_digits(digits: &[u32]) -> BigRat {
    let m = Mobius::of_digits(digits);
    BigRat::new(m.a, m.c)
}

/// Irrationality measure `ψ(t) = min_{1≤q≤t} ||qα||` of the finite word's
/// value, via Perron's formula at the index `n` with `q_n ≤ t < q_{n+1}`.
///
/// Needs `x_{n+2}` to exist, i.e. `t < q_{N-1}` for a word `[x0; ..., xN]`.
pub fn psi_of_t(w: &CfWord, t: &BigInt) -> Result<BigRat> {
    if t < &BigInt::one() {
        return Err(Error::Domain(format!("psi needs t >= 1, got {t}")));
    }
    let c = convergents(w);
    let last = c.len() - 1;
    let n = match c.q.iter().rposition(|q| q <= t) {
        Some(n) if n + 2 <= last => n,
        _ => {
            return Err(Error::Domain(format!(
                "t = {t} is beyond the convergents covered by {w}"
            )))
        }
    };
    let reversed = BigRat::new(c.q[n].clone(), c.q[n + 1].clone());
    let tail = eval_digits(&w.digits()[n + 2..]);
    let one = BigRat::one();
    Ok(one.clone() / (BigRat::from(c.q[n + 1].clone()) * (one + reversed / tail)))
}

/// `x/(1+x)`: the Dirichlet constant `d = ρ/(1+ρ)` and likewise
/// `δ = μ/(1+μ)`.
pub fn to_dirichlet(x: &QuadSurd) -> Result<QuadSurd> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("expected a positive value, got {x}")));
    }
    let one = QuadSurd::from_integer(1, x.disc())?;
    x.checked_div(&x.checked_add(&one)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CfWord {
        s.parse().unwrap()
    }

    #[test]
    fn convergent_examples() {
        assert_eq!(eval_finite(&w("[1;1,1,1,1]")), BigRat::new(8.into(), 5.into()));
        assert_eq!(eval_finite(&w("[4;3]")), BigRat::new(13.into(), 3.into()));
        let q: Vec<i64> = convergents(&w("[4;3,1,4,1,4,1,3]"))
            .q
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect();
        assert_eq!(q, [1, 3, 4, 19, 23, 111, 134, 513]);
    }

    #[test]
    fn epsilons() {
        let e = epsilon_seq(&w("[1;1,1]")).unwrap();
        assert_eq!(e, [BigRat::zero(), BigRat::one(), BigRat::new(1.into(), 2.into())]);
        assert_eq!(
            epsilon_seq(&w("[4;3,5]")),
            Err(Error::DigitRange { index: 2, value: 5 })
        );
        let fours = CfWord::new(vec![4; 30]).unwrap();
        let fifth = BigRat::new(1.into(), 5.into());
        assert!(epsilon_seq(&fours).unwrap()[1..].iter().all(|e| e >= &fifth));
    }

    #[test]
    fn periodic_values() {
        let phi = eval_periodic(&"[(1)]".parse().unwrap()).unwrap();
        assert_eq!(phi, QuadSurd::parse_in("(1+sqrt(5))/2", 5).unwrap());
        let lo = eval_periodic(&"[4;3,(1,4,1,4,1,3)]".parse().unwrap()).unwrap();
        assert_eq!(lo, "(783+sqrt(26565))/222".parse().unwrap());
        let hi = eval_periodic(&"[4;3,(4,1,4,1,3,1)]".parse().unwrap()).unwrap();
        assert_eq!(hi, "(5501-sqrt(26565))/1238".parse().unwrap());
        let hi2 = eval_periodic_in(&"[4;3,(4,1,4,1,3,1)]".parse().unwrap(), 26565).unwrap();
        assert_eq!(hi, hi2);
        assert!(eval_periodic_in(&"[(1)]".parse().unwrap(), 26565).is_err());
    }

    #[test]
    fn rotation_of_period() {
        let a = eval_periodic(&"[(3,1,4,1,4,1)]".parse().unwrap()).unwrap();
        let b = eval_periodic(&"[3;(1,4,1,4,1,3)]".parse().unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn square_free() {
        let (f, s) = square_free_split(&BigInt::from(26565u64 * 36 * 49));
        assert_eq!((f, s), (BigInt::from(42), BigInt::from(26565)));
        let (f, s) = square_free_split(&BigInt::from(1_000_003u64 * 1_000_003 * 7));
        assert_eq!((f, s), (BigInt::from(1_000_003), BigInt::from(7)));
    }

    #[test]
    fn reversal() {
        assert_eq!(reverse_star(&w("[4;3]"), 1).unwrap(), w("[0;3,4]"));
        assert_eq!(reverse_star(&w("[4;3,1]"), 2).unwrap(), w("[0;1,3,4]"));
        assert_eq!(reverse_star(&w("[1;2,1]"), 2).unwrap().digits()[1..], [1, 2, 1]);
        assert!(reverse_star(&w("[4;3]"), 2).is_err());
    }

    #[test]
    fn perron_limit_of_golden_ratio() {
        let one: PeriodicCf = "[(1)]".parse().unwrap();
        let rho = perron_rho_limit(&one, &one).unwrap();
        assert_eq!(rho, QuadSurd::parse_in("(3+sqrt(5))/2", 5).unwrap());
        assert_eq!(
            to_dirichlet(&rho).unwrap(),
            QuadSurd::parse_in("(5+sqrt(5))/10", 5).unwrap()
        );
    }

    #[test]
    fn perron_periodic_approaches_limit() {
        let one: PeriodicCf = "[(1)]".parse().unwrap();
        let lim = perron_rho_limit(&one, &one).unwrap();
        let mut prev = None;
        for n in [2, 6, 10, 20] {
            let d = (perron_rho_periodic(&one, n).unwrap() - &lim).abs();
            if let Some(p) = prev {
                assert!(d < p);
            }
            prev = Some(d);
        }
    }

    #[test]
    fn psi_small_case() {
        // α = [0; 2, 3, 1, 4] = 19/43
        let word = w("[0;2,3,1,4]");
        let alpha = eval_finite(&word);
        assert_eq!(alpha, BigRat::new(19.into(), 43.into()));
        for t in 1..7 {
            let brute = (1..=t)
                .map(|q| {
                    let x = alpha.clone() * BigRat::from(BigInt::from(q));
                    let f = x.clone() - x.floor();
                    f.clone().min(BigRat::one() - f)
                })
                .min()
                .unwrap();
            assert_eq!(psi_of_t(&word, &BigInt::from(t)).unwrap(), brute, "t = {t}");
        }
        assert!(psi_of_t(&word, &BigInt::zero()).is_err());
    }

    #[test]
    fn text_forms() {
        for s in ["[4;3,(1,4,1,4,1,3)]", "[(1)]", "[4;(1,3)]", "[0;(2)]"] {
            let p: PeriodicCf = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        for s in ["[4;3,1,4]", "[7]"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("[4;3,0]".parse::<CfWord>().is_err());
        assert!("[]".parse::<CfWord>().is_err());
        assert!("[4;3]".parse::<PeriodicCf>().is_err());
    }

    #[test]
    fn shift_and_take() {
        let x: PeriodicCf = "[4;3,(1,4,1,4,1,3)]".parse().unwrap();
        assert_eq!(x.take(9), [4, 3, 1, 4, 1, 4, 1, 3, 1]);
        assert_eq!(x.shift(4).to_string(), "[(1,4,1,3,1,4)]");
        assert_eq!(x.shift(1).to_string(), "[3;(1,4,1,4,1,3)]");
    }
}
