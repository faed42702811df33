//! Tower parameters and the rounding indicators `δ`, `δ₀`, `δ̃` behind `μ`.
//!
//! `μ(i)` rounds `τ·i` down or up according to a lexicographic comparison of
//! the base-`p` digits of `τ·i` on either side of the radix point. Because
//! `d | p − 1`, the fractional digits of `τ·i` are a single repeated digit,
//! and the comparison collapses to the units digit versus the first
//! fractional digit once factors of `p` are stripped from `i`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::{digit, expand, int, p_adic_decompose, ratio, PAdicForm, Prime, Rational};
use crate::periodic::EventuallyPeriodicSeq;

/// `(p, d, r)` with `p` an odd prime, `d | p − 1`, `r ≥ 1`, and the derived
/// slopes `τ = (p+1)/d` and `γ = ((p−1)r + p + 1)/d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerParams {
    p: Prime,
    d: u64,
    r: u64,
    tau: Rational,
    gamma: Rational,
    tau_form: PAdicForm,
    gamma_form: PAdicForm,
    tau_d: u64,
    tau_n: u64,
}

impl TowerParams {
    pub fn new(p: u64, d: u64, r: u64) -> Result<Self> {
        let prime = Prime::new(p)?;
        if p == 2 {
            return Err(Error::domain("p must be an odd prime"));
        }
        if d == 0 || !(p - 1).is_multiple_of(d) {
            return Err(Error::domain(format!(
                "d = {d} does not divide p - 1 = {}; the a-number formula requires d | p - 1",
                p - 1
            )));
        }
        if r == 0 {
            return Err(Error::domain("r must be a positive integer"));
        }
        let p_big = BigInt::from(p);
        let d_big = BigInt::from(d);
        let tau = Rational::new(&p_big + 1, d_big.clone());
        let gamma_num = (&p_big - 1) * BigInt::from(r) + &p_big + 1;
        let gamma = Rational::new(gamma_num, d_big);
        let tau_form = p_adic_decompose(&tau, prime)?;
        let gamma_form = p_adic_decompose(&gamma, prime)?;

        let g2 = d.gcd(&2);
        let tau_d = d / g2;
        let tau_n = (p + 1) / g2;

        let gap = &gamma - &tau;
        let expected_gap = BigInt::from(r) * BigInt::from(p - 1) / BigInt::from(d);
        if gap != int(expected_gap) {
            return Err(Error::invariant(format!("γ − τ = {gap} is not r(p−1)/d")));
        }
        if tau_form.denom != BigInt::from(tau_d) || tau_form.numer != BigInt::from(tau_n) || tau_form.v != 0 {
            return Err(Error::invariant("τ does not decompose as τ_N/τ_D"));
        }
        if gamma_form.denom != tau_form.denom {
            return Err(Error::invariant("γ_D differs from τ_D"));
        }
        if !d.is_multiple_of(tau_d) || tau_d.is_multiple_of(p) {
            return Err(Error::invariant("τ_D must divide d and be prime to p"));
        }
        Ok(Self { p: prime, d, r, tau, gamma, tau_form, gamma_form, tau_d, tau_n })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn tau(&self) -> &Rational {
        &self.tau
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn tau_inv(&self) -> Rational {
        self.tau.recip()
    }

    pub fn gamma_inv(&self) -> Rational {
        self.gamma.recip()
    }

    /// Denominator of `τ` in lowest terms, `d / gcd(d, 2)`.
    pub fn tau_d(&self) -> u64 {
        self.tau_d
    }

    /// Numerator of `τ` in lowest terms, `(p + 1) / gcd(d, 2)`.
    pub fn tau_n(&self) -> u64 {
        self.tau_n
    }

    pub fn tau_form(&self) -> &PAdicForm {
        &self.tau_form
    }

    pub fn gamma_form(&self) -> &PAdicForm {
        &self.gamma_form
    }

    /// `γ − τ = r(p − 1)/d`, a positive integer.
    pub fn slope_gap(&self) -> BigInt {
        (&self.gamma - &self.tau).to_integer()
    }

    /// `max(0, v_p(γ))`, the delay of the base-`p` expansion of `γ⁻¹`.
    pub fn gamma_inv_delay(&self) -> u64 {
        self.gamma_form.v.max(0) as u64
    }

    /// The `r` paired with this one by `r₁ = (r + 1)p + 1`.
    pub fn pairing_partner(&self) -> u64 {
        (self.r + 1) * self.p.get() + 1
    }
}

impl fmt::Display for TowerParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}, d={}, r={}", self.p, self.d, self.r)
    }
}

fn check_index(i: u64) -> Result<()> {
    if i < 1 {
        return Err(Error::domain("δ is defined for positive integers i"));
    }
    Ok(())
}

/// Fast digit criterion; `i ≥ 1`.
pub(crate) fn raw_delta(params: &TowerParams, mut i: u64) -> u8 {
    let p = params.p.get();
    while i.is_multiple_of(p) {
        i /= p;
    }
    let td = u128::from(params.tau_d);
    if u128::from(i) % td == 0 {
        return 0;
    }
    // τ_N·i mod p·τ_D carries both the units digit and the fractional part.
    let m = u128::from(p) * td;
    let a = u128::from(params.tau_n) * (u128::from(i) % m) % m;
    let units = a / td;
    let first_fractional = (a % td) * u128::from(p) / td;
    u8::from(first_fractional > units)
}

pub(crate) fn raw_delta0(params: &TowerParams, i: u64) -> u8 {
    if i.is_multiple_of(params.p.get()) {
        0
    } else {
        raw_delta(params, i)
    }
}

pub(crate) fn raw_delta_tilde(params: &TowerParams, i: u64) -> u8 {
    if i.is_multiple_of(params.tau_d) {
        1
    } else {
        raw_delta(params, i)
    }
}

/// `⌊τ·i⌋`
pub(crate) fn floor_tau(params: &TowerParams, i: u64) -> u128 {
    u128::from(params.tau_n) * u128::from(i) / u128::from(params.tau_d)
}

pub(crate) fn raw_mu(params: &TowerParams, i: u64) -> u128 {
    floor_tau(params, i) + u128::from(raw_delta(params, i))
}

/// `δ(i) = 1` exactly when `μ(i)` rounds `τ·i` up.
pub fn delta(params: &TowerParams, i: u64) -> Result<u8> {
    check_index(i)?;
    Ok(raw_delta(params, i))
}

/// `δ` with multiples of `p` forced to 0; periodic with period `τ_D·p`.
pub fn delta0(params: &TowerParams, i: u64) -> Result<u8> {
    check_index(i)?;
    Ok(raw_delta0(params, i))
}

/// `δ` with multiples of `τ_D` forced to 1.
pub fn delta_tilde(params: &TowerParams, i: u64) -> Result<u8> {
    check_index(i)?;
    Ok(raw_delta_tilde(params, i))
}

/// `μ(i) = ⌊τi⌋ + δ(i)`.
pub fn mu(params: &TowerParams, i: u64) -> Result<u128> {
    check_index(i)?;
    Ok(raw_mu(params, i))
}

/// Reference `δ` straight from the lexicographic comparison of the digit
/// sequences `(i_n)_{n≥0}` and `(i_{−1−n})_{n≥0}` of `τ·i`.
///
/// Slow; kept to cross-check [`delta`]. The fractional digits are constant
/// and the integer digits vanish past the leading one, so the sequences
/// must differ within `max(#integer digits, 1) + 1` positions.
pub fn delta_lexicographic(params: &TowerParams, i: u64) -> Result<u8> {
    check_index(i)?;
    let x = &params.tau * int(i);
    let p = params.p;
    let bound = expand(&x, p)?.integer_digits.len().max(1) as i64;
    for n in 0..=bound {
        let upper = digit(&x, p, n)?;
        let lower = digit(&x, p, -1 - n)?;
        if upper != lower {
            return Ok(u8::from(upper < lower));
        }
    }
    Err(Error::invariant(format!("digit sequences of τ·{i} agree through position {bound}")))
}

/// `⟨δ₀⟩ = ½(1 − 1/p)(1 − 1/τ_D)`.
pub fn delta0_average(params: &TowerParams) -> Rational {
    let p = params.p.get() as i64;
    let td = params.tau_d as i64;
    ratio(1, 2) * ratio(p - 1, p) * ratio(td - 1, td)
}

/// `δ₀(1), …, δ₀(τ_D·p)` as a purely periodic sequence.
pub fn delta0_as_sequence(params: &TowerParams) -> EventuallyPeriodicSeq {
    let len = params.tau_d * params.p.get();
    let cycle = (1..=len).map(|i| int(raw_delta0(params, i))).collect();
    EventuallyPeriodicSeq::purely_periodic(cycle).expect("non-empty cycle")
}

/// `L_{γ⁻¹}`, the period of the base-`p` expansion of `γ⁻¹`.
pub fn gamma_inv_period(params: &TowerParams) -> u64 {
    expand(&params.gamma_inv(), params.p).expect("γ > 0").period_len()
}
