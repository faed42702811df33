//! Base-p expansion of a rational: digits, delay, period, digit average.
//!
//! `cargo run --example base_p_expansion -- 7 11/3`

use anum::exact::{expand, p_adic_decompose, Prime, Rational};

fn main() -> anum::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().map_or(5, |s| s.parse().expect("p"));
    let x: Rational = args.next().map_or_else(|| "21/4".parse().unwrap(), |s| s.parse().expect("rational a/b"));
    let p = Prime::new(p)?;

    let form = p_adic_decompose(&x, p)?;
    let e = expand(&x, p)?;
    println!("x = {x} = {p}^{} * {}/{}", form.v, form.numer, form.denom, p = p.get());
    println!("integer digits (low first): {:?}", e.integer_digits);
    println!("preperiod: {:?}", e.preperiod_digits);
    println!("period:    {:?}", e.period_digits);
    println!("delay D = {}, period L = {}, digit average = {}", e.delay(), e.period_len(), e.digit_average);
    assert_eq!(e.reconstruct(), x);
    Ok(())
}
