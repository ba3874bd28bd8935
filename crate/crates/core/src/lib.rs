//! Exact solver for the camel-and-bananas desert transport problem.
//!
//! A camel stands at the border of a desert with a stock of `N` bananas.
//! It can carry one banana on its back, holds at most one banana's worth
//! of fuel in its stomach (one banana = one mile of walking), and may cache
//! bananas anywhere along the line. How far into the desert can it get?
//!
//! This crate computes the optimal penetration distance `c(N)` by several
//! independent routes (a halving recurrence, a closed form, and a weighted
//! prefix-sum chain), generates the optimal shuttle strategy move by move,
//! validates arbitrary strategy traces against the movement rules, and
//! checks the certificate inequalities that bound every legal strategy.
//!
//! Every position, distance and fuel level is an exact big rational
//! ([`Rat`]); no floating point enters any computation.
//!
//! All public functions are pure; the only stateful type is
//! [`distance::Recurrence`], whose memo table requires `&mut` access and is
//! therefore single-threaded per instance.

// Error variants carry the exact offending rationals (two big integers
// each), which puts them over clippy's default Err-size threshold.
#![allow(clippy::result_large_err)]

pub mod desert;
pub mod distance;
pub mod optimality;
pub mod rational;
pub mod strategy;

pub use desert::{
    apply_move, initial_state, validate_trace, weighted_prefix_sums, DesertError, Move,
    RuleViolation, Trace, TraceSummary, WorldState,
};
pub use distance::{
    c_closed, c_recurrence, f_closed, g_eval, h_floor_pow2, lambda_coeffs, s_chain,
    s_chain_bound, verify_f_identities, DistanceError, LambdaRow, Recurrence, SChain,
};
pub use optimality::{
    certify_upper_bound, grid_oracle, certificate_report, random_trace, FuzzPolicy, GridState,
    CertificateReport, OptimalityError, OracleResult,
};
pub use rational::{decimal, mixed, parse_rat, rat, whole, Rat};
pub use strategy::{
    check_meal_invariants, eating_recurrence_violation, even_step, final_phase, meal_configs,
    odd_step, uwc_eating_positions, uwc_trace, BananaConfig, MealCheck, MealReport,
    StrategyError,
};
