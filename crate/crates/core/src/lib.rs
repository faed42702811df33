//! Higher a-numbers `a^r(X_n)` of `Z_p`-towers with ramification invariant
//! `d | p − 1`, computed exactly three ways: by counting lattice points, by
//! enumerating the equivalent floor and δ sums, and from the closed
//! quasi-polynomial `½(τ⁻¹ − γ⁻¹)p^{2n} + λ_r n + ν_r(n)`.
//!
//! ```
//! use anum::{closed_model, a_number_bruteforce, Budget, TowerParams};
//!
//! let t = TowerParams::new(5, 4, 2).unwrap();
//! let model = closed_model(&t).unwrap();
//! let brute = a_number_bruteforce(&t, 3, &Budget::default()).unwrap();
//! assert_eq!(model.evaluate(3).unwrap(), brute.total);
//! ```
//!
//! The `examples/` directory has one runnable program per capability.

pub mod analysis;
pub mod cli;
pub mod closed_form;
pub mod delta;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod periodic;
pub mod report;
pub mod verify;

pub use analysis::{
    check_lambda_integrality, check_pairing, minimal_period, sweep, PeriodOptions, PeriodReport, SweepOptions, SweepRow,
};
pub use closed_form::{closed_model, delta_sum_closed, floor_sum_closed, lambda_r, ClosedFormModel};
pub use delta::{delta, delta0, delta_tilde, mu, TowerParams};
pub use error::{Error, Result};
pub use exact::{expand, Prime, Rational};
pub use lattice::{a_number_bruteforce, sum_decomposition, triangle_lattice_count, Budget, TriangleSpec};
pub use periodic::EventuallyPeriodicSeq;
pub use verify::{verify, VerifyReport};
