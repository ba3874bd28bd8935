//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS/FAIL line. Run with `cargo test -p camel-core --test acceptance`
//! (add `-- --nocapture` to see the lines on success).
//!
//! Everything is checked in exact rational arithmetic; "agree" always
//! means exact equality, and the runtime ceilings are asserted.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use camel_core::{
    c_closed, certify_upper_bound, check_meal_invariants, eating_recurrence_violation,
    grid_oracle, lambda_coeffs, certificate_report, random_trace, rat, s_chain, s_chain_bound,
    uwc_eating_positions, uwc_trace, validate_trace, verify_f_identities, whole, DesertError,
    FuzzPolicy, Move, Rat, Recurrence, RuleViolation, Trace,
};

fn criterion<F: FnOnce()>(id: u32, what: &str, budget: Option<Duration>, body: F) {
    let started = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = started.elapsed();
    match outcome {
        Ok(()) => {
            if let Some(limit) = budget {
                assert!(
                    elapsed <= limit,
                    "criterion {id} exceeded its {limit:?} budget: took {elapsed:?}"
                );
            }
            println!("criterion {id}: PASS — {what} ({elapsed:?})");
        }
        Err(panic) => {
            println!("criterion {id}: FAIL — {what}");
            resume_unwind(panic);
        }
    }
}

#[test]
fn criterion_1_golden_values() {
    criterion(
        1,
        "c(1..=7) = 1, 2, 7/3, 8/3, 17/6, 3, 25/8 by all four routes",
        Some(Duration::from_secs(1)),
        || {
            let golden = [
                (1u64, whole(1)),
                (2, whole(2)),
                (3, rat(7, 3)),
                (4, rat(8, 3)),
                (5, rat(17, 6)),
                (6, whole(3)),
                (7, rat(25, 8)),
            ];
            let mut rec = Recurrence::new();
            for (n, expected) in golden {
                assert_eq!(rec.c(n), expected, "recurrence at n = {n}");
                assert_eq!(c_closed(n), expected, "closed form at n = {n}");
                assert_eq!(
                    s_chain_bound(n),
                    expected,
                    "chain bound at n = {n}"
                );
                let summary = validate_trace(&uwc_trace(n).unwrap()).unwrap();
                assert!(summary.complete);
                assert_eq!(summary.max_pos, expected, "simulated reach at n = {n}");
            }
        },
    );
}

#[test]
fn criterion_2_headline_value() {
    criterion(
        2,
        "c(73083734) = 14 1003590240076691/1125899906842624 by closed form and chain bound",
        Some(Duration::from_secs(5)),
        || {
            let expected = whole(14) + rat(1003590240076691, 1125899906842624);
            assert_eq!(c_closed(73083734), expected);
            assert_eq!(s_chain_bound(73083734), expected);
        },
    );
}

#[test]
fn criterion_3_cross_method_agreement() {
    criterion(
        3,
        "recurrence = closed form = chain bound up to 100000; simulation up to 64",
        Some(Duration::from_secs(30)),
        || {
            let mut rec = Recurrence::new();
            for n in 1..=100_000u64 {
                let closed = c_closed(n);
                assert_eq!(rec.c(n), closed, "recurrence vs closed at n = {n}");
                assert_eq!(s_chain_bound(n), closed, "chain vs closed at n = {n}");
            }
            for n in 1..=64 {
                let summary = validate_trace(&uwc_trace(n).unwrap()).unwrap();
                assert_eq!(summary.max_pos, c_closed(n), "simulation at n = {n}");
            }
        },
    );
}

#[test]
fn criterion_4_trace_properties() {
    criterion(
        4,
        "traces up to n = 64: legal, meal properties, eating recurrence, chain equalities",
        None,
        || {
            for n in 1..=64u64 {
                let trace = uwc_trace(n).unwrap();
                let summary = validate_trace(&trace).unwrap();
                assert!(summary.complete, "trace incomplete at n = {n}");

                let meals = check_meal_invariants(&trace).unwrap();
                assert_eq!(meals.checks.len() as u64, n);
                assert!(meals.all_ok(), "meal property failed at n = {n}");

                let ascending = uwc_eating_positions(n).unwrap();
                assert_eq!(
                    eating_recurrence_violation(&ascending),
                    None,
                    "eating recurrence failed at n = {n}"
                );

                // Both chain clauses hold with equality on the strategy's
                // own prefix sums.
                let s = &summary.s_prime;
                let limit = whole(n - 1);
                for k in n.div_ceil(2)..=n {
                    assert_eq!(s[k as usize - 1], limit, "s_{k} != n-1 at n = {n}");
                }
                for k in 1..=n / 2 {
                    let rhs = (&s[2 * k as usize - 2] + &s[2 * k as usize - 1]) / whole(4)
                        + rat(2 * k as i64 - 1, 2);
                    assert_eq!(s[k as usize - 1], rhs, "chain step {k} at n = {n}");
                }
                assert_eq!(*s.last().unwrap(), limit);

                // Every forward mile carried a banana: the skin positions
                // sum to exactly (n - 1 + e_1)/2.
                let eaten_sum: Rat = summary.eating_sorted.iter().sum();
                let e1 = &summary.eating_sorted[0];
                assert_eq!(
                    eaten_sum,
                    (whole(n - 1) + e1) / whole(2),
                    "skin-position sum at n = {n}"
                );
            }
        },
    );
}

#[test]
fn criterion_5_lambda_machinery() {
    criterion(
        5,
        "coefficient rows 2..=64: weights sum to 1, tie to c(2n), c(2n+1), c(4m), c(4m+2)",
        None,
        || {
            for n in 2..=64u64 {
                let row = lambda_coeffs(n).unwrap();
                assert_eq!(row.weight_sum(), whole(1), "weight sum at n = {n}");
                assert_eq!(row.coeffs[0], c_closed(2 * n), "lambda_0 at n = {n}");
                assert_eq!(
                    row.coeffs[1],
                    whole(4) * (c_closed(2 * n + 1) - c_closed(2 * n)),
                    "lambda_1 at n = {n}"
                );
            }
            for m in 2..=32u64 {
                let row = lambda_coeffs(m).unwrap();
                let half = rat(1, 2);
                assert_eq!(
                    c_closed(4 * m),
                    &half + &row.coeffs[1] / whole(8) + &row.coeffs[0],
                    "c(4m) identity at m = {m}"
                );
                assert_eq!(
                    c_closed(4 * m + 2),
                    half + whole(3) * &row.coeffs[1] / whole(8) + &row.coeffs[0],
                    "c(4m+2) identity at m = {m}"
                );
            }
        },
    );
}

#[test]
fn criterion_6_f_identities() {
    criterion(
        6,
        "the three F identities for all n <= 256 and dyadic m <= 1024",
        None,
        || {
            let ms = [1u64, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024];
            for n in 1..=256u64 {
                for &m in &ms {
                    assert_eq!(
                        verify_f_identities(n, m).unwrap(),
                        (true, true, true),
                        "identity failed at n = {n}, m = {m}"
                    );
                }
            }
        },
    );
}

#[test]
fn criterion_7_optimality_evidence() {
    criterion(
        7,
        "9000 fuzzed strategies never beat the bound; the grid oracle attains it on compatible grids",
        Some(Duration::from_secs(120)),
        || {
            let policy = FuzzPolicy::default();
            for n in 2..=10u64 {
                let bound = certify_upper_bound(n);
                let reference = s_chain(n).unwrap();
                assert_eq!(reference.bound, bound);
                for seed in 0..1000u64 {
                    let trace = random_trace(n, seed, &policy);
                    let summary = validate_trace(&trace)
                        .unwrap_or_else(|e| panic!("illegal trace n={n} seed={seed}: {e}"));
                    assert!(summary.complete, "incomplete trace n={n} seed={seed}");
                    assert!(
                        summary.max_pos <= bound,
                        "reach {} beats c({n}) = {} at seed {seed}",
                        summary.max_pos,
                        bound
                    );
                    let report = certificate_report(&summary, &reference).unwrap();
                    assert!(report.all_ok(), "certificate failed n={n} seed={seed}");
                }
            }

            // Pinned optima on grids fine enough to carry the optimal
            // strategy, plus soundness on every tested grid.
            assert_eq!(grid_oracle(2, 2).unwrap().optimum, whole(2));
            assert_eq!(grid_oracle(3, 3).unwrap().optimum, rat(7, 3));
            assert_eq!(grid_oracle(4, 6).unwrap().optimum, rat(8, 3));
            for n in 1..=4u64 {
                let bound = certify_upper_bound(n);
                for k in 1..=6u64 {
                    let result = grid_oracle(n, k).unwrap();
                    assert!(
                        result.optimum <= bound,
                        "oracle beat the bound at n = {n}, k = {k}"
                    );
                }
            }
        },
    );
}

#[test]
fn criterion_8_negative_controls() {
    criterion(
        8,
        "over-walk, eat-with-fuel and eat-without-banana rejected with kind and index",
        None,
        || {
            let over_walk = Trace {
                n: 1,
                moves: vec![Move::Eat, Move::Walk { to: rat(3, 2) }],
            };
            assert_eq!(
                validate_trace(&over_walk),
                Err(DesertError::Illegal {
                    index: 1,
                    violation: RuleViolation::FuelExceeded {
                        need: rat(3, 2),
                        have: whole(1),
                    },
                })
            );

            let eat_with_fuel = Trace {
                n: 2,
                moves: vec![Move::Eat, Move::Walk { to: rat(1, 2) }, Move::Eat],
            };
            assert_eq!(
                validate_trace(&eat_with_fuel),
                Err(DesertError::Illegal {
                    index: 2,
                    violation: RuleViolation::EatWithFuel { fuel: rat(1, 2) },
                })
            );

            let eat_without_banana = Trace {
                n: 2,
                moves: vec![
                    Move::Eat,
                    Move::Pick,
                    Move::Walk { to: rat(1, 2) },
                    Move::Drop,
                    Move::Walk { to: whole(0) },
                    Move::Eat,
                ],
            };
            assert_eq!(
                validate_trace(&eat_without_banana),
                Err(DesertError::Illegal {
                    index: 5,
                    violation: RuleViolation::NoBananaHere { pos: whole(0) },
                })
            );
        },
    );
}
