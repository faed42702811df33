//! The quasi-polynomial `a^r(X_n) = ½(τ⁻¹ − γ⁻¹)p^{2n} + λ_r·n + ν_r(n)`.
//!
//! The a-number is a difference of two floor sums minus a difference of two
//! δ-sums. Each sum has a closed form: a `p^{2n}` or `p^n` leading part, a
//! linear part, and a part periodic in `n`. The periodic tails are summed
//! with [`EventuallyPeriodicSeq::prefix_sum`], so evaluation cost does not
//! grow with `n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::delta::{delta0_average, raw_delta0, TowerParams};
use crate::error::{Error, Result};
use crate::exact::{
    as_integer, expand, floor_pn_mod, frac, frac_part_pn, int, p_adic_decompose, ratio, Prime, Rational,
};
use crate::periodic::EventuallyPeriodicSeq;

fn positive(x: &Rational, what: &str) -> Result<()> {
    if !x.is_positive() {
        return Err(Error::domain(format!("{what} must be positive, got {x}")));
    }
    Ok(())
}

/// `A_{x⁻¹}(n)`, the part of the floor sum periodic in `n`.
pub fn a_fn(x_inv: &Rational, p: Prime, n: u64) -> Result<Rational> {
    positive(x_inv, "x⁻¹")?;
    let x = x_inv.recip();
    let x_d = p_adic_decompose(&x, p)?.denom;
    let half_gap = ratio(1, 2) * (int(1) - Rational::new(BigInt::from(1), x_d.clone()));
    let f = frac_part_pn(x_inv, p, n);
    let mut total = (-&half_gap + ratio(1, 2) * &x * (int(1) - &f)) * &f;
    let count = floor_pn_mod(x_inv, p, n, &x_d)?;
    let count = count.to_u64().expect("below x_D");
    for k in 1..=count {
        total += frac(&(&x * int(k))) - &half_gap;
    }
    Ok(total)
}

/// `Σ_{i=1}^{⌊x⁻¹pⁿ⌋} (pⁿ − ⌊xi⌋)` in closed form; requires `v_p(x) ≥ 0`.
pub fn floor_sum_closed(x: &Rational, p: Prime, n: u64) -> Result<Rational> {
    positive(x, "x")?;
    let form = p_adic_decompose(x, p)?;
    if form.v < 0 {
        return Err(Error::domain(format!("floor-sum closed form needs v_p(x) ≥ 0, got v_p({x}) = {}", form.v)));
    }
    let x_inv = x.recip();
    let pn = int(p.pow(n));
    let one_minus = int(1) - Rational::new(BigInt::from(1), form.denom);
    let lead = ratio(1, 2) * &x_inv * &pn * &pn;
    let mid = ratio(1, 2) * (&x_inv * one_minus - int(1)) * &pn;
    Ok(lead + mid + a_fn(&x_inv, p, n)?)
}

/// `F_{x⁻¹}(e) = Σ_{k=1}^{⌊x⁻¹pᵉ⌋ mod τ_D p} (δ₀(k) − ⟨δ₀⟩)`.
pub fn f_fn(x_inv: &Rational, params: &TowerParams, e: u64) -> Result<Rational> {
    positive(x_inv, "x⁻¹")?;
    let p = params.p();
    let modulus = BigInt::from(params.tau_d() * p.get());
    let count = floor_pn_mod(x_inv, p, e, &modulus)?.to_u64().expect("below τ_D p");
    let avg = delta0_average(params);
    let ones: u64 = (1..=count).map(|k| u64::from(raw_delta0(params, k))).sum();
    Ok(int(ones) - int(count) * avg)
}

/// Closed evaluation of `Σ_{i=1}^{⌊x⁻¹pⁿ⌋} δ(i)` for a fixed `x` with
/// `x_D = τ_D`, valid from `n = D_{x⁻¹}` on.
#[derive(Debug, Clone)]
pub struct DeltaSum {
    x_inv: Rational,
    p: Prime,
    tau_d: u64,
    delay: u64,
    period: u64,
    frac_seq: EventuallyPeriodicSeq,
    f_seq: EventuallyPeriodicSeq,
    digit_average: Rational,
    leading: Rational,
    linear: Rational,
}

impl DeltaSum {
    pub fn new(x: &Rational, params: &TowerParams) -> Result<Self> {
        if *x < int(1) {
            return Err(Error::domain(format!("δ-sum closed form needs x ≥ 1, got {x}")));
        }
        let p = params.p();
        let x_d = p_adic_decompose(x, p)?.denom;
        if x_d != BigInt::from(params.tau_d()) {
            return Err(Error::domain(format!(
                "δ-sum closed form needs x_D = τ_D = {}, got x_D = {x_d} for x = {x}",
                params.tau_d()
            )));
        }
        let x_inv = x.recip();
        let expansion = expand(&x_inv, p)?;
        let (delay, period) = (expansion.delay(), expansion.period_len());

        // {x⁻¹pᵉ} from e = 0: periodic once e reaches the delay.
        let frac_at = |e: u64| frac_part_pn(&x_inv, p, e);
        let frac_seq = EventuallyPeriodicSeq::new(
            (0..delay).map(frac_at).collect(),
            (delay..delay + period).map(frac_at).collect(),
        )?;
        // F(e) from e = 0: periodic once e passes the delay.
        let f_at = |e: u64| f_fn(&x_inv, params, e);
        let f_seq = EventuallyPeriodicSeq::new(
            (0..=delay).map(f_at).collect::<Result<_>>()?,
            (delay + 1..=delay + period).map(f_at).collect::<Result<_>>()?,
        )?;

        let tau_d = params.tau_d();
        let one_minus_td = ratio(tau_d as i64 - 1, tau_d as i64);
        let p_i = p.get() as i64;
        let linear = f_seq.average() - &expansion.digit_average / int(2 * p_i) * &one_minus_td;
        let leading = ratio(1, 2) * &x_inv * &one_minus_td;
        Ok(Self {
            x_inv,
            p,
            tau_d,
            delay,
            period,
            frac_seq,
            f_seq,
            digit_average: expansion.digit_average,
            leading,
            linear,
        })
    }

    /// `D_{x⁻¹}`
    pub fn delay(&self) -> u64 {
        self.delay
    }

    /// `L_{x⁻¹}`
    pub fn period(&self) -> u64 {
        self.period
    }

    /// `⟨x⁻¹⟩`
    pub fn digit_average(&self) -> &Rational {
        &self.digit_average
    }

    /// `⟨F_{x⁻¹}⟩`
    pub fn f_average(&self) -> &Rational {
        self.f_seq.average()
    }

    /// Coefficient of `pⁿ`, `½x⁻¹(1 − 1/τ_D)`.
    pub fn leading_coeff(&self) -> &Rational {
        &self.leading
    }

    /// Coefficient of `n`, `⟨F_{x⁻¹}⟩ − ⟨x⁻¹⟩/(2p)·(1 − 1/τ_D)`.
    pub fn linear_coeff(&self) -> &Rational {
        &self.linear
    }

    pub fn total(&self, n: u64) -> Result<Rational> {
        if n < self.delay {
            return Err(Error::domain(format!(
                "δ-sum closed form for x⁻¹ = {} is valid from n = {} on, got n = {n}",
                self.x_inv, self.delay
            )));
        }
        let p = self.p.get() as i64;
        let td = self.tau_d as i64;
        let one_minus_td = ratio(td - 1, td);
        let pn = int(self.p.pow(n));
        let count = BigInt::from(n) + 1u32;
        let lead = ratio(1, 2) * &one_minus_td * (pn - ratio(1, p)) * &self.x_inv;
        let fracs = ratio(1, 2) * ratio(p - 1, p) * &one_minus_td * self.frac_seq.prefix_sum(&count)?;
        Ok(lead - fracs + self.f_seq.prefix_sum(&count)?)
    }

    /// `B_{x⁻¹}(n)`: the total less its `pⁿ` and `n` terms.
    pub fn periodic_part(&self, n: u64) -> Result<Rational> {
        let pn = int(self.p.pow(n));
        Ok(self.total(n)? - &self.leading * pn - &self.linear * int(n))
    }
}

/// `Σ_{i=1}^{⌊x⁻¹pⁿ⌋} δ(i)` in closed form.
pub fn delta_sum_closed(x: &Rational, params: &TowerParams, n: u64) -> Result<Rational> {
    DeltaSum::new(x, params)?.total(n)
}

/// `λ_r = ⟨F_{γ⁻¹}⟩ − ⟨γ⁻¹⟩/(2p)(1 − 1/τ_D)`.
pub fn lambda_r(params: &TowerParams) -> Result<Rational> {
    Ok(DeltaSum::new(params.gamma(), params)?.linear)
}

/// The four closed sums behind the a-number, precomputed for one `params`.
#[derive(Debug, Clone)]
pub struct ClosedSums {
    params: TowerParams,
    tau_sum: DeltaSum,
    gamma_sum: DeltaSum,
}

impl ClosedSums {
    pub fn new(params: &TowerParams) -> Result<Self> {
        Ok(Self {
            params: params.clone(),
            tau_sum: DeltaSum::new(params.tau(), params)?,
            gamma_sum: DeltaSum::new(params.gamma(), params)?,
        })
    }

    pub fn tau_sum(&self) -> &DeltaSum {
        &self.tau_sum
    }

    pub fn gamma_sum(&self) -> &DeltaSum {
        &self.gamma_sum
    }

    /// `N_r`, the first `n` at which every closed sum is valid.
    pub fn delay(&self) -> u64 {
        self.gamma_sum.delay.max(self.tau_sum.delay)
    }

    /// `[FS(τ) − FS(γ)] − [DS(τ) − DS(γ)]`, all four in closed form.
    pub fn a_number(&self, n: u64) -> Result<BigInt> {
        if n < self.delay() {
            return Err(Error::PreDelay { n, delay: self.delay() });
        }
        let p = self.params.p();
        let floors = floor_sum_closed(self.params.tau(), p, n)? - floor_sum_closed(self.params.gamma(), p, n)?;
        let deltas = self.tau_sum.total(n)? - self.gamma_sum.total(n)?;
        let value = floors - deltas;
        as_integer(&value).ok_or_else(|| {
            Error::invariant(format!("closed sums give non-integer {value} at n = {n} ({})", self.params))
        })
    }

    /// `ν_r(n) = A_{τ⁻¹}(n) − A_{γ⁻¹}(n) − B_{τ⁻¹}(n) + B_{γ⁻¹}(n)`.
    pub fn nu(&self, n: u64) -> Result<Rational> {
        let p = self.params.p();
        Ok(a_fn(&self.params.tau_inv(), p, n)?
            - a_fn(&self.params.gamma_inv(), p, n)?
            - self.tau_sum.periodic_part(n)?
            + self.gamma_sum.periodic_part(n)?)
    }
}

/// `a^r(X_n)` through the closed sums.
pub fn a_number_closed_sums(params: &TowerParams, n: u64) -> Result<BigInt> {
    ClosedSums::new(params)?.a_number(n)
}

/// `½(τ⁻¹ − γ⁻¹)`.
pub fn quad_coeff(params: &TowerParams) -> Rational {
    ratio(1, 2) * (params.tau_inv() - params.gamma_inv())
}

fn quad_coeff_direct(params: &TowerParams) -> Rational {
    let (p, d, r) = (BigInt::from(params.p().get()), BigInt::from(params.d()), BigInt::from(params.r()));
    let num = &d * &r * (&p - 1u32);
    let den = BigInt::from(2u32) * (&p + 1u32) * ((&p - 1u32) * &r + &p + 1u32);
    Rational::new(num, den)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormModel {
    pub params: TowerParams,
    pub quad_coeff: Rational,
    pub lambda: Rational,
    /// `N_r`
    pub delay: u64,
    /// `lcm(L_{γ⁻¹}, 2)`
    pub claimed_period: u64,
    /// `ν_r(n)` at index `n mod claimed_period`, for `n ≥ N_r`.
    pub nu_table: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelRecord {
    pub p: u64,
    pub d: u64,
    pub r: u64,
    pub quad: String,
    pub lambda: String,
    #[serde(rename = "N_r")]
    pub n_r: u64,
    pub period: u64,
    pub nu: Vec<String>,
}

impl ClosedFormModel {
    pub fn nu(&self, n: u64) -> Result<&Rational> {
        if n < self.delay {
            return Err(Error::PreDelay { n, delay: self.delay });
        }
        Ok(&self.nu_table[(n % self.claimed_period) as usize])
    }

    pub fn value(&self, n: u64) -> Result<Rational> {
        let pn = int(self.params.p().pow(n));
        Ok(&self.quad_coeff * &pn * &pn + &self.lambda * int(n) + self.nu(n)?)
    }

    /// `a^r(X_n)` for `n ≥ N_r`.
    pub fn evaluate(&self, n: u64) -> Result<BigInt> {
        let value = self.value(n)?;
        match as_integer(&value) {
            Some(v) if !v.is_negative() => Ok(v),
            _ => Err(Error::invariant(format!("model gives {value} at n = {n} ({})", self.params))),
        }
    }

    pub fn record(&self) -> ModelRecord {
        ModelRecord {
            p: self.params.p().get(),
            d: self.params.d(),
            r: self.params.r(),
            quad: self.quad_coeff.to_string(),
            lambda: self.lambda.to_string(),
            n_r: self.delay,
            period: self.claimed_period,
            nu: self.nu_table.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.record()).expect("plain record")
    }
}

/// Builds the model from the closed sums and checks `ν` over a second period.
pub fn closed_model(params: &TowerParams) -> Result<ClosedFormModel> {
    let quad = quad_coeff(params);
    if quad != quad_coeff_direct(params) {
        return Err(Error::invariant(format!("½(τ⁻¹ − γ⁻¹) = {quad} disagrees with dr(p−1)/(2(p+1)((p−1)r+p+1))")));
    }
    let sums = ClosedSums::new(params)?;
    if !sums.tau_sum.linear.is_zero() {
        return Err(Error::invariant(format!("τ-side linear coefficient is {} ({params})", sums.tau_sum.linear)));
    }
    let delay = params.gamma_inv_delay();
    if delay != sums.delay() {
        return Err(Error::invariant(format!("v_p(γ) = {delay} but the γ⁻¹ expansion has delay {}", sums.delay())));
    }
    let lambda = sums.gamma_sum.linear.clone();
    let claimed_period = sums.gamma_sum.period.lcm(&2);

    let mut nu_table = vec![Rational::zero(); claimed_period as usize];
    for n in delay..delay + claimed_period {
        nu_table[(n % claimed_period) as usize] = sums.nu(n)?;
    }
    let model = ClosedFormModel { params: params.clone(), quad_coeff: quad, lambda, delay, claimed_period, nu_table };
    for n in delay..delay + 2 * claimed_period {
        if n >= delay + claimed_period && sums.nu(n)? != *model.nu(n)? {
            return Err(Error::invariant(format!("ν is not periodic at n = {n} ({params})")));
        }
        model.evaluate(n)?;
    }
    Ok(model)
}

/// For `d ∈ {1, 2}`: `quad·p^{2n} + A_{τ⁻¹}(n) − A_{γ⁻¹}(n)`.
pub fn special_d12(params: &TowerParams, n: u64) -> Result<Rational> {
    if params.d() > 2 {
        return Err(Error::domain(format!("this closed form needs d ∈ {{1, 2}}, got d = {}", params.d())));
    }
    let p = params.p();
    let pn = int(p.pow(n));
    Ok(quad_coeff(params) * &pn * &pn + a_fn(&params.tau_inv(), p, n)? - a_fn(&params.gamma_inv(), p, n)?)
}

/// For `r = p + 1`: `λ = 0`, period 1, `ν = ½(p − 1)(τ⁻¹ − 1)` from `n = 1`.
pub fn special_r_eq_p_plus_1(params: &TowerParams) -> Result<ClosedFormModel> {
    let p = params.p().get();
    if params.r() != p + 1 {
        return Err(Error::domain(format!("this closed form needs r = p + 1 = {}, got r = {}", p + 1, params.r())));
    }
    let nu = ratio(1, 2) * int(p - 1) * (params.tau_inv() - int(1));
    Ok(ClosedFormModel {
        params: params.clone(),
        quad_coeff: quad_coeff(params),
        lambda: Rational::zero(),
        delay: 1,
        claimed_period: 1,
        nu_table: vec![nu],
    })
}

/// `a¹(X_n) = d(p−1)/(4(p+1))·(p^{2n−1} + 1) − [d odd](p−1)/(4d)`, `n ≥ 1`.
pub fn r_one_formula(p: u64, d: u64, n: u64) -> Rational {
    assert!(n >= 1);
    let (pi, di) = (p as i64, d as i64);
    let pw = int(Prime::new(p).expect("prime").pow(2 * n - 1));
    let main = ratio(di * (pi - 1), 4 * (pi + 1)) * (pw + int(1));
    if d % 2 == 1 {
        main - ratio(pi - 1, 4 * di)
    } else {
        main
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::raw_delta;
    use crate::exact::floor;

    fn params(p: u64, d: u64, r: u64) -> TowerParams {
        TowerParams::new(p, d, r).unwrap()
    }

    fn floor_sum_direct(x: &Rational, p: Prime, n: u64) -> Rational {
        let pn = p.pow(n);
        let upper = floor(&(x.recip() * int(pn.clone()))).to_u64().unwrap();
        (1..=upper).map(|i| int(&pn - floor(&(x * int(i))))).sum()
    }

    fn delta_sum_direct(x: &Rational, t: &TowerParams, n: u64) -> Rational {
        let upper = floor(&(x.recip() * int(t.p().pow(n)))).to_u64().unwrap();
        int((1..=upper).map(|i| u64::from(raw_delta(t, i))).sum::<u64>())
    }

    #[test]
    fn floor_sum_example() {
        let p = Prime::new(5).unwrap();
        assert_eq!(floor_sum_closed(&ratio(3, 2), p, 1).unwrap(), int(7));
        assert_eq!(a_fn(&ratio(2, 3), p, 1).unwrap(), ratio(1, 3));
        assert!(floor_sum_closed(&ratio(2, 5), p, 1).is_err());
    }

    #[test]
    fn floor_sums_match_direct() {
        for (p, d, r) in [(5, 4, 2), (7, 3, 5), (7, 6, 1), (13, 4, 3), (3, 2, 3), (5, 4, 61)] {
            let t = params(p, d, r);
            for x in [t.tau().clone(), t.gamma().clone()] {
                for n in 0..=4 {
                    assert_eq!(
                        floor_sum_closed(&x, t.p(), n).unwrap(),
                        floor_sum_direct(&x, t.p(), n),
                        "{t} x={x} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn delta_sums_match_direct() {
        for (p, d, r) in [(5, 4, 2), (7, 3, 5), (7, 6, 1), (13, 4, 3), (13, 12, 7), (5, 4, 61)] {
            let t = params(p, d, r);
            for x in [t.tau().clone(), t.gamma().clone()] {
                let ds = DeltaSum::new(&x, &t).unwrap();
                for n in ds.delay()..=4 {
                    assert_eq!(ds.total(n).unwrap(), delta_sum_direct(&x, &t, n), "{t} x={x} n={n}");
                }
            }
        }
    }

    #[test]
    fn f_average_for_tau() {
        let t = params(5, 4, 2);
        assert_eq!(f_fn(&t.tau_inv(), &t, 0).unwrap(), int(0));
        let ds = DeltaSum::new(t.tau(), &t).unwrap();
        assert_eq!(ds.f_average(), &ratio(1, 10));
        assert!(ds.linear_coeff().is_zero());
    }

    #[test]
    fn model_for_p5_d4_r2() {
        let t = params(5, 4, 2);
        assert_eq!(lambda_r(&t).unwrap(), ratio(1, 3));
        let m = closed_model(&t).unwrap();
        assert_eq!(m.quad_coeff, ratio(4, 21));
        assert_eq!(m.claimed_period, 6);
        assert_eq!(m.delay, 0);
        assert_eq!(m.evaluate(1).unwrap(), BigInt::from(5));
        assert_eq!(m.evaluate(2).unwrap(), BigInt::from(120));
        assert_eq!(*m.nu(3).unwrap(), ratio(-4, 21));
        assert_eq!(*m.nu(4).unwrap(), ratio(-2, 21));
        assert_eq!(*m.nu(5).unwrap(), ratio(2, 7));
    }

    #[test]
    fn model_with_delay() {
        let t = params(5, 4, 61);
        let m = closed_model(&t).unwrap();
        assert_eq!(m.delay, 3);
        assert_eq!(m.quad_coeff, ratio(122, 375));
        assert!(m.lambda.is_zero());
        assert!(m.nu_table.iter().all(|v| *v == ratio(2, 3)));
        assert_eq!(m.evaluate(2), Err(Error::PreDelay { n: 2, delay: 3 }));
    }

    #[test]
    fn special_cases() {
        let t = params(5, 4, 6);
        let m = special_r_eq_p_plus_1(&t).unwrap();
        assert_eq!(m.nu_table, vec![ratio(-2, 3)]);
        assert!(special_r_eq_p_plus_1(&params(5, 4, 2)).is_err());
        assert!(special_d12(&params(5, 4, 2), 1).is_err());
        let t = params(5, 2, 3);
        let m = closed_model(&t).unwrap();
        for n in 1..6 {
            assert_eq!(special_d12(&t, n).unwrap(), m.value(n).unwrap());
        }
    }

    #[test]
    fn quad_for_p3() {
        for r in 1..10 {
            assert_eq!(quad_coeff(&params(3, 2, r)), ratio(r as i64, 4 * (r as i64 + 2)));
        }
    }

    #[test]
    fn json_shape() {
        let m = closed_model(&params(5, 4, 2)).unwrap();
        let v = m.to_json();
        assert_eq!(v["quad"], "4/21");
        assert_eq!(v["lambda"], "1/3");
        assert_eq!(v["N_r"], 0);
        assert_eq!(v["period"], 6);
        assert_eq!(v["nu"].as_array().unwrap().len(), 6);
    }
}
