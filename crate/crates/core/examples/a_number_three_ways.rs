//! a^r(X_n) by direct count, by the triangle lattice count, and by the
//! closed quasi-polynomial.
//!
//! `cargo run --example a_number_three_ways -- 5 4 2 5`

use anum::closed_form::closed_model;
use anum::delta::TowerParams;
use anum::lattice::{sum_decomposition, triangle_identity, Budget};

fn main() -> anum::Result<()> {
    let a: Vec<u64> = std::env::args().skip(1).map(|s| s.parse().expect("integer")).collect();
    let get = |i: usize, default| *a.get(i).unwrap_or(&default);
    let t = TowerParams::new(get(0, 5), get(1, 4), get(2, 2))?;
    let n_max = get(3, 5);
    let budget = Budget::default();
    let model = closed_model(&t)?;

    println!("{t}, closed form valid from n = {}", model.delay);
    println!("{:>3} {:>14} {:>14} {:>14}", "n", "count", "triangle", "closed");
    for n in 1..=n_max {
        let count = sum_decomposition(&t, n, &budget)?.total;
        let tri = triangle_identity(&t, n, &budget)?.from_triangle;
        let closed = if n >= model.delay { model.evaluate(n)?.to_string() } else { "-".into() };
        println!("{n:>3} {count:>14} {tri:>14} {closed:>14}");
    }
    Ok(())
}
