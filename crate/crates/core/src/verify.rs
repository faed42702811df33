//! Full identity suite for one `(p, d, r)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::analysis::{check_pairing, minimal_period, PeriodOptions};
use crate::closed_form::{closed_model, r_one_formula, special_d12, special_r_eq_p_plus_1, ClosedSums, DeltaSum};
use crate::delta::{
    delta0_as_sequence, delta0_average, delta_lexicographic, floor_tau, raw_delta, raw_delta0, raw_delta_tilde,
    TowerParams,
};
use crate::error::{Error, Result};
use crate::exact::{expand, int, ratio};
use crate::lattice::{sum_decomposition, triangle_identity, Budget};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub params: TowerParams,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

// Ok(None) passes, Ok(Some(detail)) fails.
type Check = Result<Option<String>>;

fn fail_if(cond: bool, detail: impl FnOnce() -> String) -> Check {
    Ok(if cond { Some(detail()) } else { None })
}

fn first_bad(mut items: impl Iterator<Item = u64>, bad: impl Fn(u64) -> bool, what: &str) -> Check {
    Ok(items.find(|&i| bad(i)).map(|i| format!("{what} fails at i = {i}")))
}

struct Suite {
    checks: Vec<CheckOutcome>,
}

impl Suite {
    fn run(&mut self, name: impl Into<String>, check: Check) -> Result<()> {
        let name = name.into();
        let (passed, detail) = match check {
            Ok(None) => (true, String::new()),
            Ok(Some(detail)) => (false, detail),
            Err(Error::Invariant(msg)) => (false, msg),
            Err(e) => return Err(e),
        };
        self.checks.push(CheckOutcome { name, passed, detail });
        Ok(())
    }
}

fn delta_laws(t: &TowerParams, suite: &mut Suite) -> Result<()> {
    let p = t.p().get();
    let block = t.tau_d() * p;
    let td = t.tau_d();

    suite.run(
        "delta-digit-criterion",
        (1..=500u64)
            .map(|i| delta_lexicographic(t, i).map(|v| (i, v)))
            .find(|r| !matches!(r, Ok((i, v)) if *v == raw_delta(t, *i)))
            .map_or(Ok(None), |r| r.map(|(i, _)| Some(format!("fast and lexicographic δ differ at i = {i}")))),
    )?;
    suite.run(
        "delta-multiplicative",
        first_bad(1..=200, |i| (1..=3u32).any(|k| raw_delta(t, i * p.pow(k)) != raw_delta(t, i)), "δ(pᵏi) = δ(i)"),
    )?;
    suite
        .run("delta0-shift", first_bad(1..=5 * block, |i| raw_delta0(t, i) != raw_delta0(t, i + block), "δ₀ shift"))?;
    suite.run(
        "delta0-reflection",
        first_bad(
            1..block,
            |i| {
                let (a, b) = (raw_delta0(t, i), raw_delta0(t, block - i));
                if i % p == 0 || i % td == 0 {
                    a != 0 || b != 0
                } else {
                    a + b != 1
                }
            },
            "δ₀(i) + δ₀(τ_D p − i)",
        ),
    )?;
    let d = t.d();
    suite.run(
        "delta-small-reflection",
        first_bad(
            1..d,
            |j| {
                if j % td == 0 {
                    raw_delta(t, j) != 0
                } else {
                    raw_delta(t, j) + raw_delta(t, d - j) != 1
                }
            },
            "δ(j) + δ(d − j)",
        ),
    )?;
    suite.run(
        "mu-identity",
        first_bad(
            1..=500,
            |i| {
                let floor = floor_tau(t, i);
                let ceil = (u128::from(t.tau_n()) * u128::from(i)).div_ceil(u128::from(td));
                floor + u128::from(raw_delta(t, i)) != ceil - 1 + u128::from(raw_delta_tilde(t, i))
            },
            "⌊τi⌋ + δ(i) = ⌈τi⌉ − 1 + δ̃(i)",
        ),
    )?;
    let seq = delta0_as_sequence(t);
    suite.run(
        "delta0-average",
        fail_if(*seq.average() != delta0_average(t), || {
            format!("period mean {} vs formula {}", seq.average(), delta0_average(t))
        }),
    )?;
    let reflect: u64 = (1..d).chain(1..=block - d).map(|i| u64::from(raw_delta0(t, i))).sum();
    suite.run(
        "reflection-sum",
        fail_if(2 * reflect != (p - 1) * (td - 1), || format!("sum is {reflect}, expected (p−1)(τ_D−1)/2")),
    )?;
    Ok(())
}

fn linear_laws(t: &TowerParams, suite: &mut Suite) -> Result<()> {
    let p = t.p().get() as i64;
    let avg = expand(&t.tau_inv(), t.p())?.digit_average;
    suite.run("tau-inv-digit-average", fail_if(avg != ratio(p - 1, 2), || format!("⟨τ⁻¹⟩ = {avg}")))?;
    let tau_sum = DeltaSum::new(t.tau(), t)?;
    suite.run(
        "linear-cancellation",
        fail_if(!tau_sum.linear_coeff().is_zero(), || format!("τ-side linear coefficient {}", tau_sum.linear_coeff())),
    )?;
    Ok(())
}

/// Runs every identity for `params` at levels `1..=n_max`. Budget errors
/// abort; failed identities are recorded in the report.
pub fn verify(params: &TowerParams, n_max: u64, budget: &Budget) -> Result<VerifyReport> {
    let t = params;
    let mut suite = Suite { checks: Vec::new() };
    delta_laws(t, &mut suite)?;
    linear_laws(t, &mut suite)?;

    let model = closed_model(t);
    let model_ok = model.as_ref().map(|_| None).map_err(Clone::clone);
    suite.run("closed-model", model_ok)?;
    let sums = ClosedSums::new(t)?;

    for n in 1..=n_max {
        let breakdown = sum_decomposition(t, n, budget);
        let brute = match &breakdown {
            Ok(b) => Some(b.total.clone()),
            Err(Error::Budget { .. }) => return Err(breakdown.unwrap_err()),
            Err(_) => None,
        };
        suite.run(format!("lattice-sum-forms n={n}"), breakdown.map(|_| None))?;
        let Some(brute) = brute else { continue };

        if n >= t.gamma_inv_delay() {
            let closed = sums.a_number(n)?;
            suite.run(
                format!("closed-sums n={n}"),
                fail_if(closed != brute, || format!("closed sums {closed}, brute force {brute}")),
            )?;
            if let Ok(m) = &model {
                let v = m.evaluate(n);
                suite.run(
                    format!("closed-model n={n}"),
                    v.map(|v| (v != brute).then(|| format!("model {v}, brute force {brute}"))),
                )?;
            }
        }
        let id = triangle_identity(t, n, budget)?;
        suite.run(
            format!("triangle-identity n={n}"),
            fail_if(!id.holds(), || format!("triangle gives {}, count {}", id.from_triangle, id.a_number)),
        )?;
        if t.r() == 1 {
            let f = r_one_formula(t.p().get(), t.d(), n);
            suite.run(
                format!("r-one-formula n={n}"),
                fail_if(f != int(brute.clone()), || format!("formula {f}, count {brute}")),
            )?;
        }
        if t.d() <= 2 {
            let v = special_d12(t, n)?;
            suite.run(
                format!("small-d-formula n={n}"),
                fail_if(v != int(brute.clone()), || format!("formula {v}, count {brute}")),
            )?;
        }
        if t.r() == t.p().get() + 1 {
            let v = special_r_eq_p_plus_1(t)?.evaluate(n)?;
            suite.run(
                format!("r-eq-p-plus-1-formula n={n}"),
                fail_if(v != brute, || format!("formula {v}, count {brute}")),
            )?;
        }
    }

    let opts = PeriodOptions { budget: *budget, ..PeriodOptions::default() };
    let report = minimal_period(t, &opts)?;
    suite.run(
        "period-divides-lcm",
        fail_if(report.minimal_period != report.lcm_bound && !report.half_case, || {
            format!("minimal period {} vs lcm bound {}", report.minimal_period, report.lcm_bound)
        }),
    )?;
    suite.run(
        "lambda-period-integral",
        fail_if(!report.lambda_times_period.is_integer(), || format!("λ·L = {}", report.lambda_times_period)),
    )?;
    let lambda_lcm = &report.lambda * int(report.lcm_bound);
    suite
        .run("lambda-lcm-integral", fail_if(!lambda_lcm.is_integer(), || format!("λ·lcm(L_γ⁻¹, 2) = {lambda_lcm}")))?;
    suite.run(
        "delay-bound",
        fail_if(report.minimal_delay > report.closed_delay, || {
            format!("minimal delay {} exceeds N_r = {}", report.minimal_delay, report.closed_delay)
        }),
    )?;
    if t.d() <= 2 {
        suite.run("small-d-lambda", fail_if(!report.lambda.is_zero(), || format!("λ = {}", report.lambda)))?;
    }
    let pairing = check_pairing(t, &opts)?;
    suite.run("pairing-relations", fail_if(!pairing.relations_hold(), || format!("{pairing:?}")))?;

    let increasing = (1..=n_max)
        .map(|n| crate::lattice::a_number_bruteforce(t, n, budget).map(|b| b.total))
        .collect::<Result<Vec<BigInt>>>()?;
    suite.run(
        "a-number-increasing",
        fail_if(increasing.windows(2).any(|w| w[0] >= w[1]), || format!("values {increasing:?}")),
    )?;

    Ok(VerifyReport { params: params.clone(), checks: suite.checks })
}
