//! Certificates that no legal strategy beats the optimal shuttle.
//!
//! The core inequality chain: for any legal complete strategy with
//! weighted prefix sums `s'`, `s'_k <= n - 1` for `k >= n/2` and
//! `s'_k <= s'_(2k-1)/4 + s'_(2k)/4 + (2k-1)/2` for `k <= n/2`. Chaining
//! these downward against the optimal strategy's own chain values `s`
//! yields `s'_k <= s_k` for every `k`, and in particular the reach bound
//! `max_pos <= s_1 + 1 = c(n)`.
//!
//! [`certificate_report`] evaluates every clause exactly on a trace summary.
//! [`random_trace`] generates seeded adversarial-but-legal traces, and
//! [`grid_oracle`] exhaustively searches a `1/k`-discretized desert at tiny
//! `n`. Both exist to catch model bugs: their only legitimate outcome is
//! agreement with the bound.

use std::collections::{BinaryHeap, HashSet};
use std::fmt;

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::desert::{self, Move, Trace, TraceSummary, WorldState};
use crate::distance::{s_chain_bound, SChain};
use crate::rational::{rat, whole, Rat};

/// Errors from the optimality checkers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OptimalityError {
    /// The certificate is defined for complete traces only.
    IncompleteTrace,
    /// The reference chain was computed for a different banana count.
    ReferenceMismatch { expected: u64, got: u64 },
    /// The oracle state space explodes beyond four bananas.
    TooManyBananas { n: u64, max: u64 },
    /// Grid density zero or beyond the encodable budget.
    GridOutOfRange { k: u64, max: u64 },
    /// The search touched more states than the fixed budget allows.
    StateBudgetExceeded { budget: u64 },
}

impl fmt::Display for OptimalityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptimalityError::IncompleteTrace => {
                write!(f, "certificate requires a complete trace")
            }
            OptimalityError::ReferenceMismatch { expected, got } => {
                write!(f, "reference chain is for n = {expected}, trace has n = {got}")
            }
            OptimalityError::TooManyBananas { n, max } => {
                write!(f, "oracle state budget allows at most {max} bananas, got {n}")
            }
            OptimalityError::GridOutOfRange { k, max } => {
                write!(f, "grid density {k} outside 1..={max}")
            }
            OptimalityError::StateBudgetExceeded { budget } => {
                write!(f, "oracle exceeded its budget of {budget} states")
            }
        }
    }
}

impl std::error::Error for OptimalityError {}

/// Exact evaluation of every certificate clause on one trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub n: u64,
    /// `s'_k <= n - 1` per `k` in `ceil(n/2)..=n`.
    pub clause1: Vec<bool>,
    /// `s'_k <= s'_(2k-1)/4 + s'_(2k)/4 + (2k-1)/2` per `k` in `1..=n/2`.
    pub clause2: Vec<bool>,
    /// `s'_k <= s_k` against the optimal chain, all `k`.
    pub dominance_ok: bool,
    /// `max_pos <= c(n)`. Implied by dominance plus the final mile, but
    /// recorded independently.
    pub bound_ok: bool,
    /// Minimum slack (right side minus left side) over all inequalities;
    /// zero exactly when the trace is optimal.
    pub worst_slack: Rat,
}

impl CertificateReport {
    pub fn all_ok(&self) -> bool {
        self.clause1.iter().all(|&ok| ok)
            && self.clause2.iter().all(|&ok| ok)
            && self.dominance_ok
            && self.bound_ok
    }
}

/// Evaluates the certificate clauses on a complete trace summary against
/// the optimal chain of the same `n`.
pub fn certificate_report(
    summary: &TraceSummary,
    reference: &SChain,
) -> Result<CertificateReport, OptimalityError> {
    if !summary.complete {
        return Err(OptimalityError::IncompleteTrace);
    }
    if reference.n != summary.n {
        return Err(OptimalityError::ReferenceMismatch {
            expected: reference.n,
            got: summary.n,
        });
    }
    let n = summary.n;
    let s_prime = &summary.s_prime;
    let sp = |k: u64| &s_prime[k as usize - 1];
    let mut worst: Option<Rat> = None;
    let mut note = |slack: Rat| {
        let better = worst.as_ref().is_none_or(|w| slack < *w);
        if better {
            worst = Some(slack.clone());
        }
        !slack.is_negative()
    };

    let limit = whole(n - 1);
    let clause1 = (n.div_ceil(2)..=n)
        .map(|k| note(&limit - sp(k)))
        .collect();
    let clause2 = (1..=n / 2)
        .map(|k| {
            let rhs =
                (sp(2 * k - 1) + sp(2 * k)) / whole(4) + rat(2 * k as i64 - 1, 2);
            note(rhs - sp(k))
        })
        .collect();

    // Chain the dominance comparison downward, the same direction the
    // inequalities propagate.
    let mut dominance_ok = true;
    for k in (1..=n).rev() {
        if !note(&reference.s[k as usize - 1] - sp(k)) {
            dominance_ok = false;
        }
    }
    let bound_ok = note(&reference.bound - &summary.max_pos);

    Ok(CertificateReport {
        n,
        clause1,
        clause2,
        dominance_ok,
        bound_ok,
        worst_slack: worst.expect("at least one clause evaluated"),
    })
}

/// A certified ceiling on the reach of every legal strategy with `n`
/// bananas: the chain bound `s_1 + 1`.
pub fn certify_upper_bound(n: u64) -> Rat {
    assert!(n >= 1, "the bound is defined for n >= 1");
    if n == 1 {
        whole(1)
    } else {
        s_chain_bound(n)
    }
}

/// Knobs for the random strategy generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzPolicy {
    /// Random fractions are picked with denominators up to this value.
    pub max_denominator: u32,
    /// Chance (in percent) of shuttling a banana forward when possible.
    pub carry_percent: u32,
}

impl Default for FuzzPolicy {
    fn default() -> Self {
        FuzzPolicy {
            max_denominator: 8,
            carry_percent: 60,
        }
    }
}

/// Uniform rational in `[0, 1]` with a policy-bounded denominator.
fn random_fraction(rng: &mut ChaCha8Rng, policy: &FuzzPolicy) -> Rat {
    let denom = rng.gen_range(1..=policy.max_denominator.max(1)) as i64;
    let numer = rng.gen_range(0..=denom);
    rat(numer, denom)
}

/// Generates a legal, complete trace by a seeded randomized shuttle policy.
///
/// The generator keeps all ground bananas inside a half-mile window, so
/// some banana is always reachable and the camel can never strand itself:
/// at each meal it either wanders to a random banana of the window, or
/// shoulders one, drops it at a random spot of the window (forward or
/// backward), and walks on to a reachable banana. Leftover fuel is burned
/// with a forward out-and-back so the next eat happens on an exactly empty
/// stomach. Deterministic per `(n, seed, policy)`.
pub fn random_trace(n: u64, seed: u64, policy: &FuzzPolicy) -> Trace {
    assert!(n >= 1, "need at least one banana");
    let mut rng = ChaCha8Rng::seed_from_u64(
        seed ^ n.wrapping_mul(0x9e37_79b9_7f4a_7c15),
    );
    let mut state = desert::initial_state(n).expect("n >= 1");
    let mut moves = Vec::new();

    loop {
        emit(&mut state, &mut moves, Move::Eat);
        if state.ground.is_empty() {
            let reach = &state.camel_pos + whole(1);
            emit(&mut state, &mut moves, Move::Walk { to: reach });
            break;
        }

        let here = state.camel_pos.clone();
        let can_carry = state.ground.contains_key(&here);
        if can_carry && rng.gen_range(0..100) < policy.carry_percent.min(100) {
            emit(&mut state, &mut moves, Move::Pick);
            if state.ground.is_empty() {
                // Only the carried banana is left: push it forward a random
                // distance and burn the rest of the mile beyond it.
                let fraction = random_fraction(&mut rng, policy);
                let drop_at = &here + &fraction;
                walk_to(&mut state, &mut moves, &drop_at);
                emit(&mut state, &mut moves, Move::Drop);
                burn_out(&mut state, &mut moves);
            } else {
                // Drop anywhere in the half-mile window of the remaining
                // bananas; every such spot is within the mile.
                let window_lo = state.ground.keys().next().expect("nonempty").clone();
                let offset = random_fraction(&mut rng, policy) / whole(2);
                let drop_at = &window_lo + offset;
                walk_to(&mut state, &mut moves, &drop_at);
                emit(&mut state, &mut moves, Move::Drop);
                let target = pick_reachable(&mut rng, &state);
                walk_to(&mut state, &mut moves, &target);
                burn_out(&mut state, &mut moves);
            }
        } else {
            let target = pick_reachable(&mut rng, &state);
            walk_to(&mut state, &mut moves, &target);
            burn_out(&mut state, &mut moves);
        }
    }

    Trace { n, moves }
}

fn emit(state: &mut WorldState, moves: &mut Vec<Move>, mv: Move) {
    desert::step(state, &mv).expect("fuzz generator emitted an illegal move");
    moves.push(mv);
}

fn walk_to(state: &mut WorldState, moves: &mut Vec<Move>, to: &Rat) {
    if *to != state.camel_pos {
        emit(state, moves, Move::Walk { to: to.clone() });
    }
}

/// Random ground banana within walking range of the camel.
fn pick_reachable(rng: &mut ChaCha8Rng, state: &WorldState) -> Rat {
    let candidates: Vec<Rat> = state
        .ground
        .keys()
        .filter(|pos| (*pos - &state.camel_pos).abs() <= state.fuel)
        .cloned()
        .collect();
    assert!(!candidates.is_empty(), "window invariant keeps a banana in range");
    candidates[rng.gen_range(0..candidates.len())].clone()
}

/// Spend whatever fuel is left with a forward out-and-back, so the camel
/// ends where it stands with an empty stomach.
fn burn_out(state: &mut WorldState, moves: &mut Vec<Move>) {
    if state.fuel.is_zero() {
        return;
    }
    let here = state.camel_pos.clone();
    let tip = &here + &state.fuel / whole(2);
    emit(state, moves, Move::Walk { to: tip });
    emit(state, moves, Move::Walk { to: here });
}

/// State of the `1/k`-grid discretization: positions are grid indices
/// (position = index / k), fuel is counted in grid units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridState {
    pub pos: u32,
    pub fuel_units: u32,
    pub carrying: bool,
    /// Sorted ascending grid indices of ground bananas.
    pub ground: Vec<u32>,
}

/// Outcome of the exhaustive grid search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub n: u64,
    pub k: u64,
    /// Exact optimum of the discretized problem.
    pub optimum: Rat,
    pub states_visited: u64,
}

const ORACLE_MAX_N: u64 = 4;
const ORACLE_MAX_K: u64 = 64;
const ORACLE_STATE_BUDGET: u64 = 20_000_000;

// Packed state: pos (10 bits) | fuel (7) | carrying (1) | count (3) |
// four ground indices (10 bits each). Fits because n*k <= 256.
fn encode(state: &GridState) -> u64 {
    debug_assert!(state.ground.len() <= ORACLE_MAX_N as usize);
    let mut word = u64::from(state.pos)
        | (u64::from(state.fuel_units) << 10)
        | (u64::from(state.carrying) << 17)
        | ((state.ground.len() as u64) << 18);
    for (i, &g) in state.ground.iter().enumerate() {
        word |= u64::from(g) << (21 + 10 * i);
    }
    word
}

fn decode(word: u64) -> GridState {
    let count = ((word >> 18) & 0x7) as usize;
    let ground = (0..count)
        .map(|i| ((word >> (21 + 10 * i)) & 0x3ff) as u32)
        .collect();
    GridState {
        pos: (word & 0x3ff) as u32,
        fuel_units: ((word >> 10) & 0x7f) as u32,
        carrying: (word >> 17) & 1 == 1,
        ground,
    }
}

fn successors(state: &GridState, k: u32, out: &mut Vec<GridState>) {
    out.clear();
    if state.fuel_units >= 1 {
        let mut fwd = state.clone();
        fwd.pos += 1;
        fwd.fuel_units -= 1;
        out.push(fwd);
        if state.pos >= 1 {
            let mut back = state.clone();
            back.pos -= 1;
            back.fuel_units -= 1;
            out.push(back);
        }
    }
    let here = state.ground.binary_search(&state.pos);
    if let Ok(idx) = here {
        if state.fuel_units == 0 {
            let mut eat = state.clone();
            eat.ground.remove(idx);
            eat.fuel_units = k;
            out.push(eat);
        }
        if !state.carrying {
            let mut pick = state.clone();
            pick.ground.remove(idx);
            pick.carrying = true;
            out.push(pick);
        }
    }
    if state.carrying {
        let mut drop = state.clone();
        let at = drop.ground.partition_point(|&g| g < state.pos);
        drop.ground.insert(at, state.pos);
        drop.carrying = false;
        out.push(drop);
    }
}

/// Exhaustive best-first search over the `1/k`-grid world. The objective
/// is the best reach `pos/k + fuel/k` over all reachable states, returned
/// as an exact rational. Any grid strategy is a legal strategy, so the
/// result never exceeds [`certify_upper_bound`]; when the optimal
/// strategy's positions all lie on the grid, it attains it.
pub fn grid_oracle(n: u64, k: u64) -> Result<OracleResult, OptimalityError> {
    if n == 0 || n > ORACLE_MAX_N {
        return Err(OptimalityError::TooManyBananas { n, max: ORACLE_MAX_N });
    }
    if k == 0 || k > ORACLE_MAX_K {
        return Err(OptimalityError::GridOutOfRange { k, max: ORACLE_MAX_K });
    }
    let k32 = k as u32;
    let start = GridState {
        pos: 0,
        fuel_units: 0,
        carrying: false,
        ground: vec![0; n as usize],
    };

    let mut visited: HashSet<u64> = HashSet::new();
    let mut heap: BinaryHeap<(u32, u64)> = BinaryHeap::new();

    let start_key = encode(&start);
    visited.insert(start_key);
    heap.push((0, start_key));
    let mut best = 0u32;
    let mut succ = Vec::new();

    while let Some((score, key)) = heap.pop() {
        best = best.max(score);
        let state = decode(key);
        successors(&state, k32, &mut succ);
        for next in succ.drain(..) {
            let next_key = encode(&next);
            if visited.insert(next_key) {
                if visited.len() as u64 > ORACLE_STATE_BUDGET {
                    return Err(OptimalityError::StateBudgetExceeded {
                        budget: ORACLE_STATE_BUDGET,
                    });
                }
                heap.push((next.pos + next.fuel_units, next_key));
            }
        }
    }

    Ok(OracleResult {
        n,
        k,
        optimum: rat(best as i64, k as i64),
        states_visited: visited.len() as u64,
    })
}
