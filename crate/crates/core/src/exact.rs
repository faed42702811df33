//! Exact rationals and base-`p` digit machinery.
//!
//! Every quantity in the crate is an exact [`Rational`]. Floors and
//! fractional parts are integer divisions; nothing here touches floating
//! point.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator. Displays as `a/b`, or `a` when `b = 1`.
pub type Rational = BigRational;

/// Shorthand for `num / den` as a [`Rational`].
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `⌊x⌋`.
pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// `{x} = x - ⌊x⌋`, always in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    let rem = x.numer().mod_floor(x.denom());
    Rational::new(rem, x.denom().clone())
}

/// The integer value of `x`, if it is one.
pub fn as_integer(x: &Rational) -> Option<BigInt> {
    x.is_integer().then(|| x.numer().clone())
}

/// A prime validated by trial division. Primes are bounded by `u32::MAX` so
/// products of a few of them with column indices stay inside `u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) {
            return Err(Error::domain(format!("p = {p} is too large (limit {})", u32::MAX)));
        }
        if !is_prime(p) {
            return Err(Error::domain(format!("p = {p} is not prime")));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `p^n` as a big integer.
    pub fn pow(self, n: u64) -> BigInt {
        num_traits::pow(self.big(), n as usize)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// `p`-adic valuation of a nonzero integer, together with its prime-to-`p`
/// part.
pub fn split_p_power(n: &BigInt, p: Prime) -> (u64, BigInt) {
    debug_assert!(!n.is_zero());
    let p = p.big();
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

/// The decomposition `x = p^v · numer / denom` with `numer`, `denom` positive,
/// coprime, and prime to `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicForm {
    pub v: i64,
    /// `x_N`
    pub numer: BigInt,
    /// `x_D`
    pub denom: BigInt,
}

impl PAdicForm {
    pub fn reconstruct(&self, p: Prime) -> Rational {
        let unit = Rational::new(self.numer.clone(), self.denom.clone());
        let scale = p.pow(self.v.unsigned_abs());
        if self.v >= 0 {
            unit * int(scale)
        } else {
            unit / int(scale)
        }
    }
}

pub fn p_adic_decompose(x: &Rational, p: Prime) -> Result<PAdicForm> {
    if !x.is_positive() {
        return Err(Error::domain(format!("p-adic decomposition needs x > 0, got {x}")));
    }
    let (vn, numer) = split_p_power(x.numer(), p);
    let (vd, denom) = split_p_power(x.denom(), p);
    Ok(PAdicForm { v: vn as i64 - vd as i64, numer, denom })
}

/// `⌊x · p^k⌋` for any integer `k`.
fn floor_times_p_power(x: &Rational, p: Prime, k: i64) -> BigInt {
    let scale = p.pow(k.unsigned_abs());
    if k >= 0 {
        (x.numer() * scale).div_floor(x.denom())
    } else {
        x.numer().div_floor(&(x.denom() * scale))
    }
}

/// The digit of `x` at position `k` of its base-`p` expansion (position 0 is
/// the units digit, negative positions lie after the radix point).
pub fn digit(x: &Rational, p: Prime, k: i64) -> Result<u64> {
    if !x.is_positive() {
        return Err(Error::domain(format!("digit needs x > 0, got {x}")));
    }
    let d = floor_times_p_power(x, p, -k).mod_floor(&p.big());
    Ok(d.to_u64().expect("digit below p"))
}

/// Multiplicative order of `p` modulo `modulus` (1 when `modulus = 1`).
pub fn multiplicative_order(p: Prime, modulus: &BigInt) -> Result<u64> {
    if !modulus.is_positive() {
        return Err(Error::domain(format!("modulus must be positive, got {modulus}")));
    }
    if modulus.is_one() {
        return Ok(1);
    }
    if !p.big().gcd(modulus).is_one() {
        return Err(Error::domain(format!("p = {p} is not a unit modulo {modulus}")));
    }
    let base = p.big().mod_floor(modulus);
    let mut acc = base.clone();
    let mut order = 1u64;
    while !acc.is_one() {
        acc = (acc * &base).mod_floor(modulus);
        order += 1;
    }
    Ok(order)
}

/// Base-`p` expansion of a positive rational: the integer digits plus the
/// eventually periodic fractional digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePExpansion {
    pub p: Prime,
    /// Least significant first; empty when `⌊x⌋ = 0`.
    pub integer_digits: Vec<u64>,
    /// Digits at positions `-1 … -D_x`.
    pub preperiod_digits: Vec<u64>,
    /// Digits at positions `-D_x-1 … -D_x-L_x`, repeating forever.
    pub period_digits: Vec<u64>,
    /// `⟨x⟩`
    pub digit_average: Rational,
}

impl BasePExpansion {
    /// `L_x`
    pub fn period_len(&self) -> u64 {
        self.period_digits.len() as u64
    }

    /// `D_x`
    pub fn delay(&self) -> u64 {
        self.preperiod_digits.len() as u64
    }

    pub fn digit_at(&self, k: i64) -> u64 {
        if k >= 0 {
            return self.integer_digits.get(k as usize).copied().unwrap_or(0);
        }
        let j = k.unsigned_abs() as usize;
        let delay = self.preperiod_digits.len();
        if j <= delay {
            self.preperiod_digits[j - 1]
        } else {
            self.period_digits[(j - delay - 1) % self.period_digits.len()]
        }
    }

    /// Sums the digits back against powers of `p`, closing the periodic
    /// tail with a geometric series.
    pub fn reconstruct(&self) -> Rational {
        let p = self.p.big();
        let horner =
            |digits: &mut dyn Iterator<Item = &u64>| digits.fold(BigInt::zero(), |acc, &d| acc * &p + BigInt::from(d));
        let whole = horner(&mut self.integer_digits.iter().rev());
        let pre = horner(&mut self.preperiod_digits.iter());
        let block = horner(&mut self.period_digits.iter());
        let cycle = self.p.pow(self.period_len()) - BigInt::one();
        let tail = (int(pre) + Rational::new(block, cycle)) / int(self.p.pow(self.delay()));
        int(whole) + tail
    }
}

/// Expands `x` by long division, detecting the period from the first repeated
/// remainder.
pub fn expand(x: &Rational, p: Prime) -> Result<BasePExpansion> {
    if !x.is_positive() {
        return Err(Error::domain(format!("expand needs x > 0, got {x}")));
    }
    let pb = p.big();
    let den = x.denom();

    let mut whole = floor(x);
    let mut integer_digits = Vec::new();
    while !whole.is_zero() {
        let (q, r) = whole.div_rem(&pb);
        integer_digits.push(r.to_u64().expect("digit below p"));
        whole = q;
    }

    let mut rem = x.numer().mod_floor(den);
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut digits = Vec::new();
    let start = loop {
        if let Some(&start) = seen.get(&rem) {
            break start;
        }
        seen.insert(rem.clone(), digits.len());
        let (q, r) = (rem * &pb).div_rem(den);
        digits.push(q.to_u64().expect("digit below p"));
        rem = r;
    };
    let period_digits = digits.split_off(start);
    let total: u64 = period_digits.iter().sum();
    let digit_average = ratio(total as i64, period_digits.len() as i64);

    Ok(BasePExpansion { p, integer_digits, preperiod_digits: digits, period_digits, digit_average })
}

/// `{x · p^n}`.
pub fn frac_part_pn(x: &Rational, p: Prime, n: u64) -> Rational {
    frac(&(x * int(p.pow(n))))
}

/// `⌊x · p^n⌋ mod m`.
pub fn floor_pn_mod(x: &Rational, p: Prime, n: u64, m: &BigInt) -> Result<BigInt> {
    if !m.is_positive() {
        return Err(Error::domain(format!("modulus must be positive, got {m}")));
    }
    Ok(floor_times_p_power(x, p, n as i64).mod_floor(m))
}
