//! Closed-form prefix sums of eventually periodic sequences.
//!
//! Sequences are 1-indexed: term `i` is `head[i-1]` for `i <= D` and
//! `cycle[(i-D-1) mod L]` afterwards. Callers with 0-indexed sequences shift
//! by one at the call site.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventuallyPeriodicSeq {
    head: Vec<Rational>,
    cycle: Vec<Rational>,
    average: Rational,
    // running sums of `cycle[k] - average`, k = 0..L
    cycle_deviation: Vec<Rational>,
    head_total: Rational,
}

impl EventuallyPeriodicSeq {
    pub fn new(head: Vec<Rational>, cycle: Vec<Rational>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::domain("a periodic sequence needs a non-empty cycle"));
        }
        let len = int(cycle.len());
        let average = cycle.iter().fold(Rational::zero(), |acc, t| acc + t) / len;
        let mut cycle_deviation = Vec::with_capacity(cycle.len() + 1);
        let mut running = Rational::zero();
        cycle_deviation.push(running.clone());
        for t in &cycle {
            running += t - &average;
            cycle_deviation.push(running.clone());
        }
        let head_total = head.iter().fold(Rational::zero(), |acc, t| acc + t);
        Ok(Self { head, cycle, average, cycle_deviation, head_total })
    }

    /// A sequence periodic from its first term.
    pub fn purely_periodic(cycle: Vec<Rational>) -> Result<Self> {
        Self::new(Vec::new(), cycle)
    }

    pub fn delay(&self) -> u64 {
        self.head.len() as u64
    }

    pub fn period(&self) -> u64 {
        self.cycle.len() as u64
    }

    pub fn head(&self) -> &[Rational] {
        &self.head
    }

    pub fn cycle(&self) -> &[Rational] {
        &self.cycle
    }

    /// Mean over one period.
    pub fn average(&self) -> &Rational {
        &self.average
    }

    pub fn term(&self, i: u64) -> Result<&Rational> {
        if i < 1 {
            return Err(Error::domain("sequence terms are indexed from 1"));
        }
        let delay = self.delay();
        if i <= delay {
            Ok(&self.head[(i - 1) as usize])
        } else {
            Ok(&self.cycle[((i - delay - 1) % self.period()) as usize])
        }
    }

    /// `f_1 + … + f_N`, independent of the size of `N`.
    pub fn prefix_sum(&self, n: &BigInt) -> Result<Rational> {
        if n.is_negative() {
            return Err(Error::domain(format!("prefix length must be non-negative, got {n}")));
        }
        let delay = BigInt::from(self.delay());
        if *n <= delay {
            let n = n.to_usize().expect("bounded by head length");
            return Ok(self.head[..n].iter().fold(Rational::zero(), |acc, t| acc + t));
        }
        // N·avg over the periodic stretch, plus the deviation of the
        // incomplete final block.
        let tail = n - &delay;
        let partial = tail.mod_floor(&BigInt::from(self.period()));
        let partial = partial.to_usize().expect("below the period");
        Ok(&self.head_total + int(tail) * &self.average + &self.cycle_deviation[partial])
    }

    pub fn prefix_sum_u64(&self, n: u64) -> Rational {
        self.prefix_sum(&BigInt::from(n)).expect("non-negative length")
    }
}
