//! Acceptance gate: ten criteria, exact equality throughout. Prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use anum::analysis::{minimal_period, sweep, PeriodOptions, SweepOptions};
use anum::closed_form::{
    closed_model, delta_sum_closed, floor_sum_closed, r_one_formula, special_r_eq_p_plus_1, ClosedSums,
};
use anum::delta::TowerParams;
use anum::exact::{floor, int, ratio, Rational};
use anum::lattice::{a_number_bruteforce, right_column, sum_decomposition, t_n, Budget};
use anum::report::delta_table;
use anum::verify::verify;
use anum::{delta, Error};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

const PRIMES: [u64; 4] = [3, 5, 7, 13];

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn grid_pd() -> Vec<(u64, u64)> {
    PRIMES.iter().flat_map(|&p| divisors(p - 1).into_iter().map(move |d| (p, d))).collect()
}

fn grid_pdr() -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for (p, d) in grid_pd() {
        let mut rs: Vec<u64> = (1..=12).collect();
        rs.extend([p + 1, 2 * p + 1]);
        rs.sort_unstable();
        rs.dedup();
        out.extend(rs.into_iter().map(|r| (p, d, r)));
    }
    out
}

fn params(p: u64, d: u64, r: u64) -> TowerParams {
    TowerParams::new(p, d, r).unwrap()
}

fn pow5(n: u64) -> Rational {
    int(BigInt::from(5u32).pow(n as u32))
}

/// Criterion 1: Lattice count, both sum forms and the closed form agree.
fn three_way() -> Result<String, String> {
    let budget = Budget::default();
    let grid = grid_pdr();
    let checked: Vec<usize> = grid
        .par_iter()
        .map(|&(p, d, r)| {
            let t = params(p, d, r);
            let model = closed_model(&t).map_err(|e| format!("{t}: {e}"))?;
            let sums = ClosedSums::new(&t).map_err(|e| format!("{t}: {e}"))?;
            let mut count = 0;
            for n in 1..=4u64 {
                if right_column(&t, n) > BigInt::from(budget.max_columns) {
                    if n == 4 {
                        continue;
                    }
                    return Err(format!("{t} n={n} exceeds the column budget"));
                }
                let brute = a_number_bruteforce(&t, n, &budget).map_err(|e| format!("{t} n={n}: {e}"))?.total;
                let decomposed = sum_decomposition(&t, n, &budget).map_err(|e| format!("{t} n={n}: {e}"))?;
                let brackets = decomposed.floor_sum_form.expect("filled in");
                if decomposed.total != brute || &brackets.floor_bracket - &brackets.delta_bracket != brute {
                    return Err(format!("{t} n={n}: decomposition disagrees with {brute}"));
                }
                if n >= model.delay {
                    let closed = model.evaluate(n).map_err(|e| format!("{t} n={n}: {e}"))?;
                    let from_sums = sums.a_number(n).map_err(|e| format!("{t} n={n}: {e}"))?;
                    if closed != brute || from_sums != brute {
                        return Err(format!("{t} n={n}: brute {brute}, model {closed}, closed sums {from_sums}"));
                    }
                } else if !matches!(model.evaluate(n), Err(Error::PreDelay { .. })) {
                    return Err(format!("{t} n={n}: model answered before its delay"));
                }
                count += 1;
            }
            Ok(count)
        })
        .collect::<Result<_, String>>()?;
    Ok(format!("{} parameter sets, {} levels", grid.len(), checked.iter().sum::<usize>()))
}

/// Criterion 2: The (5, 4, 2) model and its minimal period.
fn table_one() -> Result<String, String> {
    let t = params(5, 4, 2);
    let m = closed_model(&t).map_err(|e| e.to_string())?;
    let nu = [ratio(-4, 21), ratio(-2, 21), ratio(2, 7)];
    if m.quad_coeff != ratio(4, 21) || m.lambda != ratio(1, 3) {
        return Err(format!("quad {} λ {}", m.quad_coeff, m.lambda));
    }
    for n in 0..12u64 {
        if *m.nu(n).unwrap() != nu[(n % 3) as usize] {
            return Err(format!("ν({n}) = {}", m.nu(n).unwrap()));
        }
    }
    let rep = minimal_period(&t, &PeriodOptions::default()).map_err(|e| e.to_string())?;
    if rep.minimal_period != 3 {
        return Err(format!("minimal period {}", rep.minimal_period));
    }
    Ok("quad 4/21, λ 1/3, L 3, ν = (-4/21, -2/21, 2/7)".into())
}

/// Criterion 3: r = 61: valid from n = 3 only.
fn r61_delay() -> Result<String, String> {
    let t = params(5, 4, 61);
    let m = closed_model(&t).map_err(|e| e.to_string())?;
    if m.delay != 3
        || m.quad_coeff != ratio(122, 375)
        || !m.lambda.is_zero()
        || m.nu_table.iter().any(|v| *v != ratio(2, 3))
    {
        return Err(format!("{m:?}"));
    }
    let budget = Budget::default();
    for n in 3..=8 {
        let brute = a_number_bruteforce(&t, n, &budget).map_err(|e| e.to_string())?.total;
        let formula = ratio(122, 375) * pow5(2 * n) + ratio(2, 3);
        if m.evaluate(n).unwrap() != brute || formula != int(brute.clone()) {
            return Err(format!("n={n}: brute {brute}, formula {formula}"));
        }
    }
    for n in 1..=2 {
        let brute = a_number_bruteforce(&t, n, &budget).map_err(|e| e.to_string())?.total;
        let naive = ratio(122, 375) * pow5(2 * n) + ratio(2, 3);
        if naive == int(brute.clone()) {
            return Err(format!("n={n}: naive extension {naive} matches brute force"));
        }
        if !matches!(m.evaluate(n), Err(Error::PreDelay { n: _, delay: 3 })) {
            return Err(format!("n={n}: model did not refuse"));
        }
    }
    Ok("N_r = 3, formula exact for n = 3..8, refused and wrong at n = 1, 2".into())
}

/// Criterion 4: r = 1 closed formula.
fn r_one() -> Result<String, String> {
    let budget = Budget::default();
    for (p, d) in grid_pd() {
        let t = params(p, d, 1);
        for n in 1..=3 {
            let brute = a_number_bruteforce(&t, n, &budget).map_err(|e| e.to_string())?.total;
            let f = r_one_formula(p, d, n);
            if f != int(brute.clone()) {
                return Err(format!("{t} n={n}: formula {f}, brute {brute}"));
            }
        }
    }
    Ok(format!("{} (p, d) pairs, n = 1..3", grid_pd().len()))
}

/// Criterion 5: δ, δ₀, δ̃ for p = 5, d = 4, i = 1..19.
fn table_two() -> Result<String, String> {
    let table = delta_table(&params(5, 4, 1), 19);
    let delta = [1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0];
    let delta0 = [1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0];
    let delta_tilde = [1, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1, 1, 0, 1, 0, 1, 1, 1, 0];
    if table.delta != delta || table.delta0 != delta0 || table.delta_tilde != delta_tilde {
        return Err(format!("{:?} {:?} {:?}", table.delta, table.delta0, table.delta_tilde));
    }
    Ok("three rows match".into())
}

/// Criterion 6: The floor-sum bracket for (5, 4, 2).
fn table_three() -> Result<String, String> {
    let t = params(5, 4, 2);
    let c1 = [ratio(-2, 7), ratio(-5, 21), ratio(-3, 7), ratio(-2, 21), ratio(-2, 7), ratio(1, 3)];
    let expected = |n: u64| ratio(4, 21) * pow5(2 * n) + ratio(2, 21) * pow5(n) + &c1[(n % 6) as usize];
    let p = t.p();
    for n in 0..=12 {
        let closed = floor_sum_closed(t.tau(), p, n).unwrap() - floor_sum_closed(t.gamma(), p, n).unwrap();
        if closed != expected(n) {
            return Err(format!("closed n={n}: {closed}"));
        }
    }
    let budget = Budget::default();
    for n in 1..=8 {
        let b = sum_decomposition(&t, n, &budget).map_err(|e| e.to_string())?.floor_sum_form.unwrap();
        if int(b.floor_bracket.clone()) != expected(n) {
            return Err(format!("enumerated n={n}: {}", b.floor_bracket));
        }
    }
    Ok("closed n = 0..12, enumerated n = 1..8".into())
}

fn direct_delta_sum(t: &TowerParams, x: &Rational, n: u64) -> Rational {
    let upper = floor(&(x.recip() * int(t.p().pow(n)))).to_u64().unwrap();
    int((1..=upper).map(|i| u64::from(delta(t, i).unwrap())).sum::<u64>())
}

/// Criterion 7: δ-sums for (5, 4, 2).
fn example_delta_sums() -> Result<String, String> {
    let t = params(5, 4, 2);
    let c2 = [ratio(-1, 14), ratio(13, 42), ratio(23, 42), ratio(1, 14), ratio(1, 42), ratio(5, 42)];
    let tau_expected = |n: u64| ratio(1, 6) * pow5(n) + if n.is_multiple_of(2) { ratio(-1, 6) } else { ratio(1, 6) };
    let gamma_expected = |n: u64| ratio(1, 14) * pow5(n) + ratio(n as i64, 3) + &c2[(n % 6) as usize];
    for n in 0..=12 {
        let tau = delta_sum_closed(t.tau(), &t, n).unwrap();
        let gamma = delta_sum_closed(t.gamma(), &t, n).unwrap();
        if tau != tau_expected(n) || gamma != gamma_expected(n) {
            return Err(format!("closed n={n}: {tau}, {gamma}"));
        }
        if n <= 8 && (direct_delta_sum(&t, t.tau(), n) != tau || direct_delta_sum(&t, t.gamma(), n) != gamma) {
            return Err(format!("direct n={n} disagrees"));
        }
    }
    Ok("closed n = 0..12, direct n = 0..8".into())
}

/// Criterion 8: L and L_{γ⁻¹} for p = 5, d = 2, r = 1..16.
fn table_four() -> Result<String, String> {
    let l = [1, 3, 3, 5, 2, 1, 8, 9, 3, 11, 1, 9, 7, 3, 10, 3];
    let l_gamma = [1, 6, 6, 5, 4, 2, 16, 9, 6, 22, 1, 18, 14, 3, 10, 6];
    let grid: Vec<_> = (1..=16).map(|r| (5, 2, r)).collect();
    let rows = sweep(&grid, &SweepOptions::default());
    let mut got_l = Vec::new();
    let mut got_lg = Vec::new();
    for row in &rows {
        let data = row.outcome.as_ref().map_err(|e| format!("r={}: {e}", row.r))?;
        got_l.push(data.report.minimal_period);
        got_lg.push(data.report.gamma_inv_period);
    }
    if got_l != l || got_lg != l_gamma {
        return Err(format!("L {got_l:?}, L_γ⁻¹ {got_lg:?}"));
    }
    Ok("both rows match for r = 1..16".into())
}

/// Criterion 9: structural laws over the grid of criterion 1. Lists every
/// failing identity, not only the first.
fn structural_laws() -> Result<String, String> {
    let budget = Budget::default();
    let grid = grid_pdr();
    let reports: Vec<(String, usize, Vec<String>)> = grid
        .par_iter()
        .map(|&(p, d, r)| {
            let t = params(p, d, r);
            let rep = verify(&t, 3, &budget).map_err(|e| format!("{t}: {e}"))?;
            let failed =
                rep.checks.iter().filter(|c| !c.passed).map(|c| format!("{} ({})", c.name, c.detail)).collect();
            Ok((t.to_string(), rep.checks.len(), failed))
        })
        .collect::<Result<_, String>>()?;
    let total: usize = reports.iter().map(|r| r.1).sum();
    let failures: Vec<String> =
        reports.iter().flat_map(|(t, _, f)| f.iter().map(move |c| format!("[{t}] {c}"))).collect();
    if failures.is_empty() {
        Ok(format!("{total} identities over {} parameter sets", grid.len()))
    } else {
        Err(format!("{} of {total} identities failed: {}", failures.len(), failures.join("; ")))
    }
}

/// Criterion 10: Special cases.
fn special_cases() -> Result<String, String> {
    let budget = Budget::default();
    let opts = PeriodOptions::default();
    for (p, d) in grid_pd().into_iter().filter(|&(_, d)| d <= 2) {
        for r in 1..=12 {
            let m = closed_model(&params(p, d, r)).map_err(|e| e.to_string())?;
            if !m.lambda.is_zero() {
                return Err(format!("p={p} d={d} r={r}: λ = {}", m.lambda));
            }
        }
    }
    for (p, d) in grid_pd() {
        let t = params(p, d, p + 1);
        let special = special_r_eq_p_plus_1(&t).map_err(|e| e.to_string())?;
        let nu = ratio(1, 2) * int(p - 1) * (t.tau_inv() - int(1));
        let model = closed_model(&t).map_err(|e| e.to_string())?;
        let rep = minimal_period(&t, &opts).map_err(|e| e.to_string())?;
        if !model.lambda.is_zero() || rep.minimal_period != 1 || special.nu_table != vec![nu.clone()] {
            return Err(format!("{t}: λ {} L {}", model.lambda, rep.minimal_period));
        }
        for n in 1..=4 {
            let brute = a_number_bruteforce(&t, n, &budget).map_err(|e| e.to_string())?.total;
            if special.evaluate(n).unwrap() != brute || *model.nu(n).unwrap() != nu {
                return Err(format!("{t} n={n}"));
            }
        }
    }
    for (r, expected) in [(1, 1), (2, 1), (7, 1), (3, 2), (6, 2)] {
        let rep = minimal_period(&params(3, 2, r), &opts).map_err(|e| e.to_string())?;
        if rep.minimal_period != expected || !rep.lambda.is_zero() {
            return Err(format!("p=3 d=2 r={r}: L {}", rep.minimal_period));
        }
    }
    // t_n agrees with its defining quotient on the grid as a side check.
    for (p, d, r) in grid_pdr() {
        let t = params(p, d, r);
        for n in 1..=4u32 {
            let q = BigInt::from(d) * BigInt::from(p).pow(n) / BigInt::from((r + 1) * p - (r - 1));
            if t_n(&t, u64::from(n)) != q {
                return Err(format!("{t}: t_{n}"));
            }
        }
    }
    Ok("d ∈ {1,2} ⇒ λ = 0; r = p+1 model; p = 3 periods 1,1,1,2,2".into())
}

type Criterion = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("three-way oracle agreement", three_way),
        ("(5,4,2) model and period", table_one),
        ("r = 61 delay", r61_delay),
        ("r = 1 closed formula", r_one),
        ("δ table for p = 5, d = 4", table_two),
        ("floor-sum bracket for (5,4,2)", table_three),
        ("δ-sums for (5,4,2)", example_delta_sums),
        ("periods for p = 5, d = 2", table_four),
        ("structural laws", structural_laws),
        ("special cases", special_cases),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
