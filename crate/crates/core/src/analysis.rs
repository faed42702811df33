//! Measured periods and delays of `ν_r`, the pairing `r ↦ (r+1)p + 1`, and
//! grid sweeps.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::closed_form::{closed_model, lambda_r, quad_coeff, ClosedSums};
use crate::delta::{gamma_inv_period, TowerParams};
use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::lattice::{a_number_bruteforce, right_column, Budget};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodOptions {
    /// Full `lcm_bound` periods checked past the delay.
    pub window_periods: u64,
    pub budget: Budget,
    /// Levels with at most this many columns are also brute-forced and
    /// compared against the closed sums.
    pub cross_check_columns: u64,
}

impl Default for PeriodOptions {
    fn default() -> Self {
        Self { window_periods: 3, budget: Budget::default(), cross_check_columns: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub params: TowerParams,
    pub quad: Rational,
    pub lambda: Rational,
    /// `N_r = D_{γ⁻¹}`
    pub closed_delay: u64,
    /// `L_{γ⁻¹}`
    pub gamma_inv_period: u64,
    /// `lcm(L_{γ⁻¹}, 2)`
    pub lcm_bound: u64,
    pub minimal_period: u64,
    pub half_case: bool,
    pub minimal_delay: u64,
    pub lambda_times_period: Rational,
    pub pairing_partner: u64,
    /// Levels `n` examined, inclusive.
    pub window: (u64, u64),
    /// Levels where brute force and the closed sums were both evaluated.
    pub cross_checked: Vec<u64>,
}

fn columns_at(params: &TowerParams, n: u64) -> BigInt {
    right_column(params, n)
}

/// Smallest period of `ν_r` and the smallest delay from which it holds,
/// certified over `window_periods + 1` multiples of `lcm(L_{γ⁻¹}, 2)`.
pub fn minimal_period(params: &TowerParams, opts: &PeriodOptions) -> Result<PeriodReport> {
    if opts.window_periods == 0 {
        return Err(Error::domain("window_periods must be positive"));
    }
    let sums = ClosedSums::new(params)?;
    let quad = quad_coeff(params);
    let lambda = lambda_r(params)?;
    let delay = params.gamma_inv_delay();
    let l_gamma = gamma_inv_period(params);
    let bound = l_gamma.lcm(&2);
    let end = delay + (opts.window_periods + 1) * bound;

    let mut residuals = Vec::with_capacity(end as usize + 1);
    let mut cross_checked = Vec::new();
    for n in 0..=end {
        let a = if n < delay {
            a_number_bruteforce(params, n, &opts.budget)?.total
        } else {
            let closed = sums.a_number(n)?;
            let cols = columns_at(params, n);
            if cols <= BigInt::from(opts.cross_check_columns.min(opts.budget.max_columns)) {
                let brute = a_number_bruteforce(params, n, &opts.budget)?.total;
                if brute != closed {
                    return Err(Error::invariant(format!(
                        "closed sums give {closed} but brute force gives {brute} at n = {n} ({params})"
                    )));
                }
                cross_checked.push(n);
            }
            closed
        };
        let pn = int(params.p().pow(n));
        residuals.push(int(a) - &quad * &pn * &pn - &lambda * int(n));
    }

    let periodic_from =
        |start: u64, l: u64| (start..=end - l).all(|n| residuals[n as usize] == residuals[(n + l) as usize]);
    let minimal_period =
        (1..=bound).filter(|l| bound.is_multiple_of(*l)).find(|&l| periodic_from(delay, l)).ok_or_else(|| {
            Error::invariant(format!("ν is not periodic with period {bound} from n = {delay} ({params})"))
        })?;
    let mut minimal_delay = delay;
    while minimal_delay > 0 {
        let n = (minimal_delay - 1) as usize;
        if residuals[n] != residuals[n + minimal_period as usize] {
            break;
        }
        minimal_delay -= 1;
    }

    let lambda_times_period = &lambda * int(minimal_period);
    Ok(PeriodReport {
        params: params.clone(),
        quad,
        lambda,
        closed_delay: delay,
        gamma_inv_period: l_gamma,
        lcm_bound: bound,
        minimal_period,
        half_case: 2 * minimal_period == bound,
        minimal_delay,
        lambda_times_period,
        pairing_partner: params.pairing_partner(),
        window: (0, end),
        cross_checked,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaCheck {
    pub lambda: Rational,
    pub minimal_period: u64,
    pub product: Rational,
    pub integral: bool,
}

/// `λ_r` times the measured minimal period.
pub fn check_lambda_integrality(params: &TowerParams, opts: &PeriodOptions) -> Result<LambdaCheck> {
    let report = minimal_period(params, opts)?;
    let integral = report.lambda_times_period.is_integer();
    Ok(LambdaCheck {
        lambda: report.lambda,
        minimal_period: report.minimal_period,
        product: report.lambda_times_period,
        integral,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingRecord {
    pub r0: u64,
    pub r1: u64,
    pub lambda0: Rational,
    pub lambda1: Rational,
    pub delay0: u64,
    pub delay1: u64,
    /// `γ₁ = p·γ₀`
    pub gamma_scaled: bool,
    pub lambda_equal: bool,
    pub delay_shifted: bool,
    /// Measured minimal periods; `None` when the measurement did not finish.
    pub period0: Option<u64>,
    pub period1: Option<u64>,
}

impl PairingRecord {
    /// Whether the proven relations hold: equal `λ`, delay up by one.
    pub fn relations_hold(&self) -> bool {
        self.gamma_scaled && self.lambda_equal && self.delay_shifted
    }

    /// Equality of the measured periods, when both were measured.
    pub fn periods_equal(&self) -> Option<bool> {
        Some(self.period0? == self.period1?)
    }
}

/// Compares `r₀ = params.r()` with `r₁ = (r₀ + 1)p + 1`.
pub fn check_pairing(params: &TowerParams, opts: &PeriodOptions) -> Result<PairingRecord> {
    let period0 = minimal_period(params, opts).ok().map(|r| r.minimal_period);
    pairing_with_period(params, period0, opts)
}

fn pairing_with_period(params: &TowerParams, period0: Option<u64>, opts: &PeriodOptions) -> Result<PairingRecord> {
    let partner = TowerParams::new(params.p().get(), params.d(), params.pairing_partner())?;
    let lambda0 = lambda_r(params)?;
    let lambda1 = lambda_r(&partner)?;
    let delay0 = params.gamma_inv_delay();
    let delay1 = partner.gamma_inv_delay();
    let gamma_scaled = *partner.gamma() == params.gamma() * int(params.p().get());
    let period1 = minimal_period(&partner, opts).ok().map(|r| r.minimal_period);
    Ok(PairingRecord {
        r0: params.r(),
        r1: partner.r(),
        lambda_equal: lambda0 == lambda1,
        delay_shifted: delay1 == delay0 + 1,
        lambda0,
        lambda1,
        delay0,
        delay1,
        gamma_scaled,
        period0,
        period1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    /// Brute force is compared with the model for `max(N_r, 1) ≤ n ≤ n_max`.
    pub n_max: u64,
    pub period: PeriodOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { n_max: 3, period: PeriodOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepData {
    pub report: PeriodReport,
    pub lambda_period_integral: bool,
    pub pairing: PairingRecord,
    /// Levels where the model was checked against brute force.
    pub oracle_checked: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub p: u64,
    pub d: u64,
    pub r: u64,
    pub outcome: std::result::Result<SweepData, String>,
}

fn sweep_cell(p: u64, d: u64, r: u64, opts: &SweepOptions) -> Result<SweepData> {
    let params = TowerParams::new(p, d, r)?;
    let model = closed_model(&params)?;
    let report = minimal_period(&params, &opts.period)?;
    let pairing = pairing_with_period(&params, Some(report.minimal_period), &opts.period)?;
    let mut oracle_checked = Vec::new();
    for n in model.delay.max(1)..=opts.n_max {
        let brute = match a_number_bruteforce(&params, n, &opts.period.budget) {
            Ok(b) => b.total,
            Err(Error::Budget { .. }) => break,
            Err(e) => return Err(e),
        };
        let closed = model.evaluate(n)?;
        if brute != closed {
            return Err(Error::invariant(format!("model gives {closed}, brute force {brute} at n = {n}")));
        }
        oracle_checked.push(n);
    }
    let lambda_period_integral = report.lambda_times_period.is_integer();
    Ok(SweepData { report, lambda_period_integral, pairing, oracle_checked })
}

/// One row per distinct `(p, d, r)`, in lexicographic order. Cells run in
/// parallel; a failing cell records its error and the sweep continues.
pub fn sweep(grid: &[(u64, u64, u64)], opts: &SweepOptions) -> Vec<SweepRow> {
    let mut cells = grid.to_vec();
    cells.sort_unstable();
    cells.dedup();
    cells
        .par_iter()
        .map(|&(p, d, r)| SweepRow { p, d, r, outcome: sweep_cell(p, d, r, opts).map_err(|e| e.to_string()) })
        .collect()
}
