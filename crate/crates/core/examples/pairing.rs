//! Compares r₀ with its partner r₁ = (r₀ + 1)p + 1: same λ, delay up by
//! one, γ scaled by p. Measured periods are shown beside.

use anum::analysis::{check_pairing, PeriodOptions};
use anum::delta::TowerParams;

fn main() -> anum::Result<()> {
    let opts = PeriodOptions::default();
    println!("{:>3} {:>3} {:>4} {:>5} {:>8} {:>6} {:>6} {:>6}", "p", "d", "r0", "r1", "λ", "N0→N1", "L0", "L1");
    for (p, d) in [(5, 4), (7, 6), (7, 3)] {
        for r in 1..=4 {
            let t = TowerParams::new(p, d, r)?;
            let rec = check_pairing(&t, &opts)?;
            assert!(rec.relations_hold(), "{rec:?}");
            let show = |l: Option<u64>| l.map_or("?".into(), |v| v.to_string());
            println!(
                "{p:>3} {d:>3} {:>4} {:>5} {:>8} {:>6} {:>6} {:>6}",
                rec.r0,
                rec.r1,
                rec.lambda0.to_string(),
                format!("{}→{}", rec.delay0, rec.delay1),
                show(rec.period0),
                show(rec.period1)
            );
        }
    }
    Ok(())
}
