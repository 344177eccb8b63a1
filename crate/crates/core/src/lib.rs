//! Generalized Fibonacci (Horadam) sequences in exact arithmetic.
//!
//! The crate evaluates `W_n(a, b, p, q)`, builds the spectral data of the
//! recurrence in `Q(sqrt(p^2 + 4q))`, encloses the infinite sums
//! `sum_{k >= n} (+-1)^k / sum_i s_i W_{mk + l_i}` between exact rationals,
//! and checks that the closed-form integer (or quadratic) estimates of the
//! inverse sums converge at the geometric rate `|beta|^m`.
//!
//! Runnable examples live in `examples/`; `cargo run --example <name>`.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod harness;
pub mod quadratic;
pub mod recurrence;
pub mod series;

pub use asymptotics::{
    estimate_alternating, estimate_block, estimate_block_alternating, estimate_general,
    estimate, EstimateValue, Family,
};
pub use error::{Error, Result};
pub use harness::{
    decay_fit, round_identity_scan, verify_row, verify_run, verify_run_concurrent, DecayFit,
    RoundIdentity, VerificationRow,
};
pub use quadratic::{
    spectral, sqrt_enclosure, validity_check, FieldElement, RationalInterval, SpectralData,
    ValidityReport,
};
pub use recurrence::{
    w_fast, w_iter, w_range, weighted_denominator, RecurrenceParams, Sequence, WeightedSelector,
};
pub use series::{
    inverse_enclosure, partial_sum, sum_enclosure, tail_bound_alternating, tail_bound_plain,
    BoundKind, SumSpec, TailEnclosure,
};
