//! The δ, δ₀ and δ̃ indicator sequences for one `(p, d)`.
//!
//! `cargo run --example delta_table -- 7 3 30`

use anum::delta::{delta0_as_sequence, delta0_average, TowerParams};
use anum::report::{delta_table, render_delta_table, OutputFormat};

fn main() -> anum::Result<()> {
    let a: Vec<u64> = std::env::args().skip(1).map(|s| s.parse().expect("integer")).collect();
    let (p, d, i_max) = (*a.first().unwrap_or(&5), *a.get(1).unwrap_or(&4), *a.get(2).unwrap_or(&19));
    let t = TowerParams::new(p, d, 1)?;

    print!("{}", render_delta_table(&delta_table(&t, i_max), OutputFormat::Markdown));
    let seq = delta0_as_sequence(&t);
    println!();
    println!("δ₀ has period {} with mean {}", seq.cycle().len(), delta0_average(&t));
    Ok(())
}
