//! The quasi-polynomial a^r(X_n) = quad·p^{2n} + λ·n + ν(n) with its
//! coefficients, as markdown and JSON.
//!
//! `cargo run --example closed_form_model -- 13 12 5`

use anum::analysis::{minimal_period, PeriodOptions};
use anum::closed_form::closed_model;
use anum::delta::TowerParams;
use anum::report::{render_formula, OutputFormat};

fn main() -> anum::Result<()> {
    let a: Vec<u64> = std::env::args().skip(1).map(|s| s.parse().expect("integer")).collect();
    let get = |i: usize, default| *a.get(i).unwrap_or(&default);
    let t = TowerParams::new(get(0, 5), get(1, 4), get(2, 2))?;

    let model = closed_model(&t)?;
    let report = minimal_period(&t, &PeriodOptions::default())?;
    print!("{}", render_formula(&model, &report, OutputFormat::Markdown)?);
    println!();
    println!("{}", model.to_json());
    Ok(())
}
