//! The desert model: movement rules, world state and trace validation.
//!
//! The desert is the half-line of nonnegative mile coordinates with the
//! banana stock at the origin. A camel action is one of four primitive
//! [`Move`]s; a [`Trace`] is an ordered list of them starting from the
//! stock. Replaying a trace either produces a [`TraceSummary`] or the first
//! rule violation with its move index.
//!
//! Eating is *strict*: a banana may be eaten only with an exactly empty
//! stomach, and only off the ground (a carried banana must be dropped
//! first). Walks may be split into arbitrarily many segments; only the
//! cumulative distance is charged against fuel.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::Rat;

/// Serialize a [`Rat`] as the exact string `"p/q"` (or `"p"` when `q = 1`)
/// and refuse anything else on the way back in. Keeps floats off the wire.
pub mod rat_string {
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{parse_rat, Rat};

    pub fn serialize<S: Serializer>(value: &Rat, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rat(&s).map_err(D::Error::custom)
    }
}

/// One primitive camel action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Move {
    /// Consume a ground banana at the current position. Requires an exactly
    /// empty stomach; refills fuel to one mile.
    Eat,
    /// Walk to an absolute position, spending `|to - here|` miles of fuel.
    Walk {
        #[serde(with = "rat_string")]
        to: Rat,
    },
    /// Shoulder a ground banana at the current position.
    Pick,
    /// Put the carried banana down at the current position.
    Drop,
}

/// A strategy: the initial banana count plus the full move list.
///
/// This is also the wire format shared across the repo:
/// `{"n": 4, "moves": [{"op":"eat"}, {"op":"walk","to":"1/2"}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub n: u64,
    pub moves: Vec<Move>,
}

impl Trace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Full state of the world between moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldState {
    pub camel_pos: Rat,
    /// Miles still walkable from the banana in the stomach, in `[0, 1]`.
    pub fuel: Rat,
    pub carrying: bool,
    /// Ground bananas as position -> count.
    pub ground: BTreeMap<Rat, u64>,
    /// Eating positions in chronological order.
    pub eaten: Vec<Rat>,
    /// Maximum camel position over the whole history.
    pub max_pos: Rat,
}

impl WorldState {
    /// Bananas not yet eaten (ground plus carried).
    pub fn bananas_left(&self) -> u64 {
        self.ground.values().sum::<u64>() + u64::from(self.carrying)
    }

    /// Ground bananas expanded to a sorted ascending list.
    pub fn ground_positions(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for (pos, &count) in &self.ground {
            for _ in 0..count {
                out.push(pos.clone());
            }
        }
        out
    }

    fn add_ground(&mut self, pos: Rat) {
        *self.ground.entry(pos).or_insert(0) += 1;
    }

    fn remove_ground(&mut self, pos: &Rat) -> bool {
        match self.ground.get_mut(pos) {
            Some(count) if *count > 1 => {
                *count -= 1;
                true
            }
            Some(_) => {
                self.ground.remove(pos);
                true
            }
            None => false,
        }
    }
}

/// A movement rule broken by a single move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleViolation {
    /// Walk longer than the fuel in the stomach.
    FuelExceeded { need: Rat, have: Rat },
    /// Eat with fuel remaining (eating is strict).
    EatWithFuel { fuel: Rat },
    /// Eat or pick with no ground banana at the camel's position.
    NoBananaHere { pos: Rat },
    /// Pick while already carrying.
    AlreadyCarrying,
    /// Drop with nothing on the back.
    NotCarrying,
    /// Walk target before the desert border.
    NegativePosition { to: Rat },
}

impl fmt::Display for RuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleViolation::FuelExceeded { need, have } => {
                write!(f, "walk needs {need} miles but only {have} in the stomach")
            }
            RuleViolation::EatWithFuel { fuel } => {
                write!(f, "cannot eat with {fuel} miles of fuel left")
            }
            RuleViolation::NoBananaHere { pos } => {
                write!(f, "no ground banana at position {pos}")
            }
            RuleViolation::AlreadyCarrying => write!(f, "already carrying a banana"),
            RuleViolation::NotCarrying => write!(f, "not carrying a banana"),
            RuleViolation::NegativePosition { to } => {
                write!(f, "walk target {to} is outside the desert")
            }
        }
    }
}

/// Errors from the desert model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesertError {
    /// The stock must hold at least one banana.
    EmptyStock,
    /// The weighted prefix sums of an empty eating list are undefined.
    EmptyEatingList,
    /// A move broke a rule during replay.
    Illegal { index: usize, violation: RuleViolation },
}

impl fmt::Display for DesertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesertError::EmptyStock => write!(f, "banana stock must be nonempty"),
            DesertError::EmptyEatingList => write!(f, "eating position list is empty"),
            DesertError::Illegal { index, violation } => {
                write!(f, "illegal move at index {index}: {violation}")
            }
        }
    }
}

impl std::error::Error for DesertError {}

/// The start of every trace: camel at the origin with an empty stomach and
/// `n` bananas piled at position 0.
pub fn initial_state(n: u64) -> Result<WorldState, DesertError> {
    if n == 0 {
        return Err(DesertError::EmptyStock);
    }
    let zero = Rat::zero();
    let mut ground = BTreeMap::new();
    ground.insert(zero.clone(), n);
    Ok(WorldState {
        camel_pos: zero.clone(),
        fuel: zero.clone(),
        carrying: false,
        ground,
        eaten: Vec::new(),
        max_pos: zero,
    })
}

/// In-place move engine shared by [`apply_move`] and [`validate_trace`].
pub(crate) fn step(state: &mut WorldState, mv: &Move) -> Result<(), RuleViolation> {
    match mv {
        Move::Eat => {
            if !state.fuel.is_zero() {
                return Err(RuleViolation::EatWithFuel {
                    fuel: state.fuel.clone(),
                });
            }
            let pos = state.camel_pos.clone();
            if !state.remove_ground(&pos) {
                return Err(RuleViolation::NoBananaHere { pos });
            }
            state.eaten.push(pos);
            state.fuel = Rat::one();
        }
        Move::Walk { to } => {
            if to.is_negative() {
                return Err(RuleViolation::NegativePosition { to: to.clone() });
            }
            let dist = (to - &state.camel_pos).abs();
            if dist > state.fuel {
                return Err(RuleViolation::FuelExceeded {
                    need: dist,
                    have: state.fuel.clone(),
                });
            }
            state.fuel -= dist;
            state.camel_pos = to.clone();
            if state.camel_pos > state.max_pos {
                state.max_pos = state.camel_pos.clone();
            }
        }
        Move::Pick => {
            if state.carrying {
                return Err(RuleViolation::AlreadyCarrying);
            }
            let pos = state.camel_pos.clone();
            if !state.remove_ground(&pos) {
                return Err(RuleViolation::NoBananaHere { pos });
            }
            state.carrying = true;
        }
        Move::Drop => {
            if !state.carrying {
                return Err(RuleViolation::NotCarrying);
            }
            state.carrying = false;
            let pos = state.camel_pos.clone();
            state.add_ground(pos);
        }
    }
    Ok(())
}

/// Applies one move to a state, returning the successor state.
pub fn apply_move(state: &WorldState, mv: &Move) -> Result<WorldState, RuleViolation> {
    let mut next = state.clone();
    step(&mut next, mv)?;
    Ok(next)
}

/// What a replayed trace boils down to for the verifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceSummary {
    pub n: u64,
    /// Eating positions sorted descending: `eating_sorted[i]` is `e'_(i+1)`.
    pub eating_sorted: Vec<Rat>,
    /// `s'_k = e'_1 + 2 * sum(e'_2 ..= e'_k)`; empty if nothing was eaten.
    pub s_prime: Vec<Rat>,
    pub max_pos: Rat,
    /// True when every banana was eaten. No implicit final walk is added;
    /// `max_pos` counts only walks present in the trace.
    pub complete: bool,
}

/// Replays a trace from the initial state and summarizes it, or reports the
/// first rule violation with its move index.
pub fn validate_trace(trace: &Trace) -> Result<TraceSummary, DesertError> {
    let mut state = initial_state(trace.n)?;
    for (index, mv) in trace.moves.iter().enumerate() {
        step(&mut state, mv).map_err(|violation| DesertError::Illegal { index, violation })?;
    }
    let mut eating_sorted = state.eaten.clone();
    eating_sorted.sort();
    eating_sorted.reverse();
    let s_prime = if eating_sorted.is_empty() {
        Vec::new()
    } else {
        weighted_prefix_sums(&eating_sorted)?
    };
    Ok(TraceSummary {
        n: trace.n,
        complete: state.eaten.len() as u64 == trace.n,
        eating_sorted,
        s_prime,
        max_pos: state.max_pos,
    })
}

/// `s_k = e_1 + 2 * sum(e_2 ..= e_k)` for a descending list of eating
/// positions; `s_1 = e_1`.
pub fn weighted_prefix_sums(eating_sorted: &[Rat]) -> Result<Vec<Rat>, DesertError> {
    let first = eating_sorted.first().ok_or(DesertError::EmptyEatingList)?;
    debug_assert!(
        eating_sorted.windows(2).all(|w| w[0] >= w[1]),
        "eating positions must be sorted descending"
    );
    let mut sums = Vec::with_capacity(eating_sorted.len());
    let mut acc = first.clone();
    sums.push(acc.clone());
    for e in &eating_sorted[1..] {
        acc += e + e;
        sums.push(acc.clone());
    }
    Ok(sums)
}
