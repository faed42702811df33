//! Minimal period and delay of ν over a small grid, compared with the
//! bound lcm(L_γ⁻¹, 2) and with λ·L.
//!
//! `cargo run --release --example period_sweep -- 3,5,7 8`

use anum::analysis::{sweep, SweepOptions};
use anum::report::{render_sweep, OutputFormat};

fn main() {
    let mut args = std::env::args().skip(1);
    let primes: Vec<u64> =
        args.next().unwrap_or_else(|| "3,5,7".into()).split(',').map(|s| s.parse().expect("prime")).collect();
    let r_max: u64 = args.next().map_or(6, |s| s.parse().expect("r_max"));

    let grid: Vec<_> = primes
        .iter()
        .flat_map(|&p| (1..p).filter(move |d| (p - 1) % d == 0).flat_map(move |d| (1..=r_max).map(move |r| (p, d, r))))
        .collect();
    let rows = sweep(&grid, &SweepOptions::default());
    print!("{}", render_sweep(&rows, OutputFormat::Markdown));

    let odd: Vec<_> = rows
        .iter()
        .filter_map(|row| row.outcome.as_ref().ok().map(|data| (row, data)))
        .filter(|(_, data)| !data.lambda_period_integral)
        .map(|(row, data)| format!("({}, {}, {}): λ·L = {}", row.p, row.d, row.r, data.report.lambda_times_period))
        .collect();
    println!();
    match odd.as_slice() {
        [] => println!("λ·L is an integer at every grid point"),
        _ => println!("λ·L is not an integer at: {}", odd.join("; ")),
    }
}
