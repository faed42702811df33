//! Brute-force lattice counts for the a-number.
//!
//! Everything here enumerates columns `i = 1..⌊τ⁻¹pⁿ⌋` (or lattice points) and
//! is gated by a [`Budget`]. The closed forms in [`crate::closed_form`] are
//! checked against these counts.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::delta::{floor_tau, raw_delta, raw_delta_tilde, raw_mu, TowerParams};
use crate::error::{Error, Result};
use crate::exact::{as_integer, floor, int, Rational};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest budget accepted; keeps every intermediate sum inside `i128`.
pub const MAX_BUDGET: u64 = 1 << 40;

/// Upper bound on the number of columns (or points) a brute-force routine
/// may enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_columns: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_columns: DEFAULT_BUDGET }
    }
}

impl Budget {
    pub fn new(max_columns: u64) -> Result<Self> {
        if max_columns > MAX_BUDGET {
            return Err(Error::domain(format!("budget {max_columns} exceeds the maximum {MAX_BUDGET}")));
        }
        Ok(Self { max_columns })
    }

    pub(crate) fn admit(&self, work: &BigInt) -> Result<u64> {
        match work.to_u64() {
            Some(w) if w <= self.max_columns => Ok(w),
            _ => Err(Error::Budget { columns: work.to_string(), budget: self.max_columns }),
        }
    }
}

/// `⌊γ⁻¹pⁿ⌋ = ⌊d pⁿ / ((r+1)p − (r−1))⌋`, the last column under the left edge.
pub fn t_n(params: &TowerParams, n: u64) -> BigInt {
    floor(&(params.gamma_inv() * int(params.p().pow(n))))
}

/// `⌊τ⁻¹pⁿ⌋`, the last column that can contain points.
pub fn right_column(params: &TowerParams, n: u64) -> BigInt {
    floor(&(params.tau_inv() * int(params.p().pow(n))))
}

// Column range for level n, admitted by the budget.
struct Window {
    pn: i128,
    t: u64,
    right: u64,
    gap: i128,
}

fn window(params: &TowerParams, n: u64, budget: &Budget) -> Result<Window> {
    let right = budget.admit(&right_column(params, n))?;
    let t = t_n(params, n).to_u64().expect("t_n <= right column");
    let pn = params.p().pow(n).to_i128().expect("pⁿ bounded by the budget");
    let gap = params.slope_gap().to_i128().expect("γ − τ fits in i128");
    Ok(Window { pn, t, right, gap })
}

/// `#Δ_n`, counted column by column: `Σ_{t_n < i ≤ ⌊τ⁻¹pⁿ⌋} max(0, pⁿ − μ(i))`.
pub fn count_delta_region(params: &TowerParams, n: u64, budget: &Budget) -> Result<BigInt> {
    let w = window(params, n, budget)?;
    let mut total: i128 = 0;
    for i in (w.t + 1)..=w.right {
        let mu = raw_mu(params, i) as i128;
        total += (w.pn - mu).max(0);
    }
    Ok(BigInt::from(total))
}

/// `#Δ_n` by testing every point `(i, j)` with `t_n < i ≤ pⁿ`, `0 < j < pⁿ`.
pub fn count_delta_region_pointwise(params: &TowerParams, n: u64, budget: &Budget) -> Result<BigInt> {
    let pn = params.p().pow(n);
    let t = t_n(params, n);
    let columns = (&pn - &t).max(BigInt::zero());
    let points: BigInt = &columns * (&pn - 1u32).max(BigInt::zero());
    budget.admit(&points)?;
    let pn = pn.to_u64().expect("admitted");
    let t = t.to_u64().expect("admitted");
    let mut total: u64 = 0;
    for i in (t + 1)..=pn {
        let mu = raw_mu(params, i);
        for j in 1..pn {
            if u128::from(j) >= mu {
                total += 1;
            }
        }
    }
    Ok(BigInt::from(total))
}

/// `#Δ̃_n`: `Δ_n` together with the points `pⁿ − i(γ−τ) ≤ j < pⁿ`, `0 < j`,
/// over the columns `i ≤ t_n`.
pub fn count_tilde_delta(params: &TowerParams, n: u64, budget: &Budget) -> Result<BigInt> {
    let w = window(params, n, budget)?;
    let mut left: i128 = 0;
    for i in 1..=w.t {
        let lo = (w.pn - i128::from(i) * w.gap).max(1);
        left += (w.pn - lo).max(0);
    }
    Ok(count_delta_region(params, n, budget)? + BigInt::from(left))
}

/// The two bracketed sums whose difference is the a-number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumBrackets {
    /// `Σ_{i ≤ ⌊τ⁻¹pⁿ⌋}(pⁿ − ⌊τi⌋) − Σ_{i ≤ ⌊γ⁻¹pⁿ⌋}(pⁿ − ⌊γi⌋)`
    pub floor_bracket: BigInt,
    /// `Σ_{i ≤ ⌊τ⁻¹pⁿ⌋} δ(i) − Σ_{i ≤ ⌊γ⁻¹pⁿ⌋} δ(i)`
    pub delta_bracket: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ANumberBreakdown {
    pub n: u64,
    pub t_n: BigInt,
    /// `r(p−1) t_n(t_n+1) / (2d)`
    pub triangle_term: Rational,
    pub delta_region_count: BigInt,
    pub total: BigInt,
    pub floor_sum_form: Option<SumBrackets>,
}

/// `a^r(X_n)` as the triangle term plus `#Δ_n`, cross-checked against `#Δ̃_n`.
pub fn a_number_bruteforce(params: &TowerParams, n: u64, budget: &Budget) -> Result<ANumberBreakdown> {
    let t = t_n(params, n);
    let triangle_term = int(params.slope_gap()) * int(&t * (&t + 1u32)) / int(2u32);
    let triangle = as_integer(&triangle_term)
        .ok_or_else(|| Error::invariant(format!("triangle term {triangle_term} is not an integer")))?;
    let delta_region_count = count_delta_region(params, n, budget)?;
    let total = triangle + &delta_region_count;
    let tilde = count_tilde_delta(params, n, budget)?;
    if tilde != total {
        return Err(Error::invariant(format!("#Δ̃_{n} = {tilde} but the a-number count is {total} ({params})")));
    }
    Ok(ANumberBreakdown { n, t_n: t, triangle_term, delta_region_count, total, floor_sum_form: None })
}

/// [`a_number_bruteforce`] with the sum decomposition filled in. Both forms
/// of the sum are computed by enumeration and must agree with the count.
pub fn sum_decomposition(params: &TowerParams, n: u64, budget: &Budget) -> Result<ANumberBreakdown> {
    let mut breakdown = a_number_bruteforce(params, n, budget)?;
    let w = window(params, n, budget)?;
    let gamma = params.gamma();
    let g_num = gamma.numer().to_i128().expect("γ numerator fits in i128");
    let g_den = gamma.denom().to_i128().expect("γ denominator fits in i128");

    // Split at t_n: the left columns contribute i(γ−τ) each.
    let mut line1: i128 = 0;
    for i in 1..=w.t {
        line1 += i128::from(i) * w.gap;
    }
    for i in (w.t + 1)..=w.right {
        line1 += w.pn - floor_tau(params, i) as i128 - i128::from(raw_delta(params, i));
    }

    let mut floor_bracket: i128 = 0;
    let mut delta_bracket: i128 = 0;
    for i in 1..=w.right {
        floor_bracket += w.pn - floor_tau(params, i) as i128;
        delta_bracket += i128::from(raw_delta(params, i));
    }
    for i in 1..=w.t {
        floor_bracket -= w.pn - g_num * i128::from(i) / g_den;
        delta_bracket -= i128::from(raw_delta(params, i));
    }
    let line2 = floor_bracket - delta_bracket;

    let total = breakdown.total.to_i128().expect("bounded by the budget");
    if line1 != total || line2 != total {
        return Err(Error::invariant(format!(
            "sum forms disagree at n = {n} ({params}): count {total}, split sum {line1}, bracket difference {line2}"
        )));
    }
    breakdown.floor_sum_form =
        Some(SumBrackets { floor_bracket: BigInt::from(floor_bracket), delta_bracket: BigInt::from(delta_bracket) });
    Ok(breakdown)
}

/// The closed triangle `y ≤ pⁿ`, `y ≥ τx`, `y ≥ pⁿ − (γ−τ)x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleSpec {
    pub params: TowerParams,
    pub n: u64,
    /// `(0, pⁿ)`, `(τ⁻¹pⁿ, pⁿ)`, `(γ⁻¹pⁿ, τγ⁻¹pⁿ)`
    pub vertices: [(Rational, Rational); 3],
}

impl TriangleSpec {
    pub fn new(params: &TowerParams, n: u64) -> Self {
        let pn = int(params.p().pow(n));
        let low_x = params.gamma_inv() * &pn;
        let low_y = params.tau() * &low_x;
        let vertices = [(Rational::zero(), pn.clone()), (params.tau_inv() * &pn, pn.clone()), (low_x, low_y)];
        Self { params: params.clone(), n, vertices }
    }

    pub fn contains(&self, x: &BigInt, y: &BigInt) -> bool {
        let pn = self.params.p().pow(self.n);
        let x_r = int(x.clone());
        let y_r = int(y.clone());
        *y <= pn && y_r >= self.params.tau() * &x_r && y_r >= int(pn) - int(self.params.slope_gap()) * x_r
    }
}

/// Lattice points in the closed triangle, counted per column.
pub fn triangle_lattice_count(spec: &TriangleSpec, budget: &Budget) -> Result<BigInt> {
    let params = &spec.params;
    let w = window(params, spec.n, budget)?;
    let (tn, td) = (i128::from(params.tau_n()), i128::from(params.tau_d()));
    let mut total: i128 = 0;
    for x in 0..=i128::from(w.right) {
        let ceil_tau_x = (tn * x + td - 1) / td;
        let lo = ceil_tau_x.max(w.pn - w.gap * x);
        total += (w.pn - lo + 1).max(0);
    }
    Ok(BigInt::from(total))
}

/// `L(P_n) − ⌊τ⁻¹pⁿ⌋ − 1 + Σ_{t_n < i ≤ ⌊τ⁻¹pⁿ⌋}(1 − δ̃(i))`, set beside the
/// direct count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleIdentity {
    pub lattice_points: BigInt,
    pub top_edge: BigInt,
    pub correction: BigInt,
    pub from_triangle: BigInt,
    pub a_number: BigInt,
}

impl TriangleIdentity {
    pub fn holds(&self) -> bool {
        self.from_triangle == self.a_number
    }
}

pub fn triangle_identity(params: &TowerParams, n: u64, budget: &Budget) -> Result<TriangleIdentity> {
    let w = window(params, n, budget)?;
    let lattice_points = triangle_lattice_count(&TriangleSpec::new(params, n), budget)?;
    let top_edge = BigInt::from(w.right) + 1u32;
    let correction: u64 = ((w.t + 1)..=w.right).map(|i| 1 - u64::from(raw_delta_tilde(params, i))).sum();
    let correction = BigInt::from(correction);
    let from_triangle = &lattice_points - &top_edge + &correction;
    let a_number = a_number_bruteforce(params, n, budget)?.total;
    Ok(TriangleIdentity { lattice_points, top_edge, correction, from_triangle, a_number })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, d: u64, r: u64) -> TowerParams {
        TowerParams::new(p, d, r).unwrap()
    }

    #[test]
    fn small_levels() {
        let b = Budget::default();
        let t = params(5, 4, 2);
        assert_eq!(t_n(&t, 1), BigInt::from(1));
        assert_eq!(right_column(&t, 1), BigInt::from(3));
        let a = a_number_bruteforce(&t, 1, &b).unwrap();
        assert_eq!(a.total, BigInt::from(5));
        assert_eq!(sum_decomposition(&t, 2, &b).unwrap().total, BigInt::from(120));
        assert_eq!(a_number_bruteforce(&t, 0, &b).unwrap().total, BigInt::zero());
    }

    #[test]
    fn pointwise_matches_columns() {
        let b = Budget::default();
        for (p, d) in [(5, 4), (5, 2), (7, 3), (7, 6), (3, 2)] {
            for r in 1..6 {
                let t = params(p, d, r);
                for n in 0..3 {
                    assert_eq!(
                        count_delta_region(&t, n, &b).unwrap(),
                        count_delta_region_pointwise(&t, n, &b).unwrap(),
                        "{t} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn triangle_example() {
        let b = Budget::default();
        let t = params(5, 4, 2);
        let spec = TriangleSpec::new(&t, 1);
        assert_eq!(triangle_lattice_count(&spec, &b).unwrap(), BigInt::from(8));
        let id = triangle_identity(&t, 1, &b).unwrap();
        assert!(id.holds(), "{id:?}");
    }

    #[test]
    fn triangle_per_column_matches_points() {
        let b = Budget::default();
        for (p, d, r) in [(5, 4, 2), (7, 3, 4), (5, 1, 3), (13, 12, 2)] {
            let t = params(p, d, r);
            for n in 0..3 {
                let spec = TriangleSpec::new(&t, n);
                let pn = t.p().pow(n).to_i64().unwrap();
                let mut count = 0u64;
                for x in 0..=pn {
                    for y in 0..=pn {
                        if spec.contains(&BigInt::from(x), &BigInt::from(y)) {
                            count += 1;
                        }
                    }
                }
                assert_eq!(triangle_lattice_count(&spec, &b).unwrap(), BigInt::from(count), "{t} n={n}");
            }
        }
    }

    #[test]
    fn budget_enforced() {
        let t = params(5, 4, 2);
        let small = Budget::new(10).unwrap();
        assert!(matches!(a_number_bruteforce(&t, 3, &small), Err(Error::Budget { .. })));
        assert!(matches!(count_delta_region_pointwise(&t, 2, &small), Err(Error::Budget { .. })));
        assert!(Budget::new(MAX_BUDGET + 1).is_err());
    }
}
