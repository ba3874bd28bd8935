//! The optimal shuttle strategy ("ultra-wise camel") and its structural
//! checks.
//!
//! The strategy repeats two kinds of step until three bananas remain. With
//! an *even* banana count it eats one banana of the hindmost pair, carries
//! the other as far as the mile allows and returns to the bananas closest
//! to the origin. With an *odd* count it eats one of the hindmost pair,
//! carries the other to the sole furthest banana, pushes both of those
//! forward in turn as far as the mile allows, and returns. The last three
//! bananas are spent the same way but without returning.
//!
//! Three properties hold at every meal-time and are preserved by the steps:
//!
//! (a) the camel stands with the banana(s) closest to the origin and all
//!     bananas fit in an interval of length 1/2;
//! (b) before an even step the bananas split into co-located pairs;
//! (c) before an odd step they split into pairs plus one banana furthest
//!     out.
//!
//! [`check_meal_invariants`] verifies (a)-(c) on any trace;
//! [`eating_recurrence_violation`] checks the recurrence that links each
//! eating position to two positions roughly twice as deep in the schedule.

use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};

use crate::desert::{self, step, DesertError, Move, Trace};
use crate::rational::{rat, whole, Rat};

/// Multiset of banana positions at meal-time. The camel itself stands at
/// the minimum position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BananaConfig {
    positions: BTreeMap<Rat, u64>,
    len: u64,
}

/// Errors from building configs or applying strategy steps to them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyError {
    /// A config must hold at least one banana, a strategy at least one.
    Empty,
    /// Banana positions start at the desert border.
    NegativePosition { pos: Rat },
    /// A step got a config of the wrong size or parity.
    WrongCount { expected: &'static str, got: u64 },
    /// An even-count config did not split into co-located pairs.
    NotPaired,
    /// An odd-count config had its unpaired banana somewhere other than
    /// the furthest position.
    SoleNotFurthest,
    /// The bananas did not fit in an interval of length 1/2.
    IntervalTooWide { width: Rat },
}

impl fmt::Display for StrategyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyError::Empty => write!(f, "banana config is empty"),
            StrategyError::NegativePosition { pos } => {
                write!(f, "banana position {pos} is outside the desert")
            }
            StrategyError::WrongCount { expected, got } => {
                write!(f, "step needs {expected} bananas, got {got}")
            }
            StrategyError::NotPaired => {
                write!(f, "even config does not split into co-located pairs")
            }
            StrategyError::SoleNotFurthest => {
                write!(f, "odd config's unpaired banana is not the furthest")
            }
            StrategyError::IntervalTooWide { width } => {
                write!(f, "bananas span {width}, more than the half-mile window")
            }
        }
    }
}

impl std::error::Error for StrategyError {}

impl BananaConfig {
    pub fn new<I: IntoIterator<Item = Rat>>(positions: I) -> Result<Self, StrategyError> {
        let mut map = BTreeMap::new();
        let mut len = 0;
        for pos in positions {
            if pos.is_negative() {
                return Err(StrategyError::NegativePosition { pos });
            }
            *map.entry(pos).or_insert(0) += 1;
            len += 1;
        }
        if len == 0 {
            return Err(StrategyError::Empty);
        }
        Ok(BananaConfig { positions: map, len })
    }

    /// `n` bananas piled at the origin.
    pub fn stock(n: u64) -> Result<Self, StrategyError> {
        Self::new(std::iter::repeat_n(Rat::zero(), n as usize))
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn min(&self) -> &Rat {
        self.positions.keys().next().expect("config is nonempty")
    }

    pub fn max(&self) -> &Rat {
        self.positions.keys().next_back().expect("config is nonempty")
    }

    /// Where the camel stands at meal-time.
    pub fn camel_at(&self) -> &Rat {
        self.min()
    }

    /// Positions expanded to a sorted ascending list.
    pub fn to_vec(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.len as usize);
        for (pos, &count) in &self.positions {
            for _ in 0..count {
                out.push(pos.clone());
            }
        }
        out
    }

    fn remove(&mut self, pos: &Rat, count: u64) {
        let entry = self.positions.get_mut(pos).expect("position present");
        assert!(*entry >= count);
        *entry -= count;
        if *entry == 0 {
            self.positions.remove(pos);
        }
        self.len -= count;
    }

    fn add(&mut self, pos: Rat, count: u64) {
        *self.positions.entry(pos).or_insert(0) += count;
        self.len += count;
    }

    fn check_interval(&self) -> Result<(), StrategyError> {
        let width = self.max() - self.min();
        if width > rat(1, 2) {
            Err(StrategyError::IntervalTooWide { width })
        } else {
            Ok(())
        }
    }
}

/// Pairing rule for a meal-time multiset: an even count must consist of
/// co-located pairs; an odd count of pairs plus one banana at the maximum.
pub(crate) fn pairing_ok(positions: &BTreeMap<Rat, u64>) -> bool {
    let mut odd_positions = positions
        .iter()
        .filter(|(_, &count)| count % 2 == 1)
        .map(|(pos, _)| pos);
    let total: u64 = positions.values().sum();
    match (total % 2, odd_positions.next()) {
        (0, None) => true,
        (1, Some(pos)) => {
            odd_positions.next().is_none()
                && Some(pos) == positions.keys().next_back()
        }
        _ => false,
    }
}

/// Removes zero-length walks and pick/drop pairs with nothing in between.
/// Steps are emitted with the fewest walk segments that still spend the
/// banana exactly.
fn canonicalize(start: &Rat, raw: Vec<Move>) -> Vec<Move> {
    let mut pos = start.clone();
    let mut out: Vec<Move> = Vec::with_capacity(raw.len());
    for mv in raw {
        match mv {
            Move::Walk { ref to } if *to == pos => continue,
            Move::Walk { ref to } => {
                pos = to.clone();
                out.push(mv);
            }
            Move::Drop if matches!(out.last(), Some(Move::Pick)) => {
                out.pop();
            }
            other => out.push(other),
        }
    }
    out
}

/// Even-count step: eat one banana of the hindmost pair, carry the other
/// forward as far as the mile allows, return to the closest banana(s).
///
/// With the hindmost pair at `q` and the closest remaining banana at `q'`,
/// fuel conservation puts the drop at `(q + q' + 1)/2`. Returns the config
/// at the next meal plus the emitted moves.
pub fn even_step(config: &BananaConfig) -> Result<(BananaConfig, Vec<Move>), StrategyError> {
    if config.len < 4 || !config.len.is_multiple_of(2) {
        return Err(StrategyError::WrongCount {
            expected: "an even number (at least 4) of",
            got: config.len,
        });
    }
    if !pairing_ok(&config.positions) {
        return Err(StrategyError::NotPaired);
    }
    config.check_interval()?;

    let q = config.min().clone();
    let mut next = config.clone();
    next.remove(&q, 2);
    let q_next = next.min().clone();
    let drop_at = (&q + &q_next + whole(1)) / whole(2);
    next.add(drop_at.clone(), 1);

    let raw = vec![
        Move::Eat,
        Move::Pick,
        Move::Walk { to: drop_at },
        Move::Drop,
        Move::Walk { to: q_next },
    ];
    Ok((next, canonicalize(&q, raw)))
}

/// Odd-count step: eat one banana of the hindmost pair, carry the other to
/// the sole furthest banana at `f`, push both forward in turn by
/// `d = (1 + q + q' - 2f)/4`, and return to the closest banana(s).
pub fn odd_step(config: &BananaConfig) -> Result<(BananaConfig, Vec<Move>), StrategyError> {
    if config.len < 5 || config.len.is_multiple_of(2) {
        return Err(StrategyError::WrongCount {
            expected: "an odd number (at least 5) of",
            got: config.len,
        });
    }
    if !pairing_ok(&config.positions) {
        return Err(StrategyError::SoleNotFurthest);
    }
    config.check_interval()?;

    let q = config.min().clone();
    let sole = config.max().clone();
    let mut next = config.clone();
    next.remove(&q, 2);
    let q_next = next.min().clone();
    let advance = (whole(1) + &q + &q_next - whole(2) * &sole) / whole(4);
    let pair_at = &sole + &advance;
    next.remove(&sole, 1);
    next.add(pair_at.clone(), 2);

    let raw = vec![
        Move::Eat,
        Move::Pick,
        Move::Walk { to: sole.clone() },
        Move::Drop,
        Move::Pick,
        Move::Walk { to: pair_at.clone() },
        Move::Drop,
        Move::Walk { to: sole },
        Move::Pick,
        Move::Walk { to: pair_at },
        Move::Drop,
        Move::Walk { to: q_next },
    ];
    Ok((next, canonicalize(&q, raw)))
}

/// Endgame for the last one, two or three bananas: same shuttle shapes, but
/// the camel never returns. Returns the final reach and the moves.
pub fn final_phase(config: &BananaConfig) -> Result<(Rat, Vec<Move>), StrategyError> {
    config.check_interval()?;
    let positions = config.to_vec();
    match positions.as_slice() {
        [r] => {
            let reach = r + whole(1);
            let raw = vec![Move::Eat, Move::Walk { to: reach.clone() }];
            Ok((reach, canonicalize(r, raw)))
        }
        [r, r2] => {
            if r != r2 {
                return Err(StrategyError::NotPaired);
            }
            let reach = r + whole(2);
            let raw = vec![
                Move::Eat,
                Move::Pick,
                Move::Walk { to: r + whole(1) },
                Move::Drop,
                Move::Eat,
                Move::Walk { to: reach.clone() },
            ];
            Ok((reach, canonicalize(r, raw)))
        }
        [p, p2, f] => {
            if p != p2 {
                return Err(StrategyError::SoleNotFurthest);
            }
            // Pair at p, sole banana at f >= p. Advance both to f + d with
            // d = (1 - (f - p))/3, then run the two-banana endgame there.
            let advance = (whole(1) - (f - p)) / whole(3);
            let pair_at = f + &advance;
            let reach = &pair_at + whole(2);
            let raw = vec![
                Move::Eat,
                Move::Pick,
                Move::Walk { to: f.clone() },
                Move::Drop,
                Move::Pick,
                Move::Walk { to: pair_at.clone() },
                Move::Drop,
                Move::Walk { to: f.clone() },
                Move::Pick,
                Move::Walk { to: pair_at.clone() },
                Move::Drop,
                Move::Eat,
                Move::Pick,
                Move::Walk { to: &pair_at + whole(1) },
                Move::Drop,
                Move::Eat,
                Move::Walk { to: reach.clone() },
            ];
            Ok((reach, canonicalize(p, raw)))
        }
        _ => Err(StrategyError::WrongCount {
            expected: "one, two or three",
            got: config.len,
        }),
    }
}

/// The full strategy for `n` bananas as a replayable trace: alternate
/// even/odd steps by current banana parity until three or fewer remain,
/// then the no-return endgame.
pub fn uwc_trace(n: u64) -> Result<Trace, StrategyError> {
    let mut config = BananaConfig::stock(n)?;
    let mut moves = Vec::new();
    while config.len() > 3 {
        let (next, step_moves) = if config.len().is_multiple_of(2) {
            even_step(&config)?
        } else {
            odd_step(&config)?
        };
        moves.extend(step_moves);
        config = next;
    }
    let (_reach, final_moves) = final_phase(&config)?;
    moves.extend(final_moves);
    Ok(Trace { n, moves })
}

/// Eating positions of the strategy, ascending: `e_n <= ... <= e_1` with
/// `e_1 = c(n) - 1`.
pub fn uwc_eating_positions(n: u64) -> Result<Vec<Rat>, StrategyError> {
    let trace = uwc_trace(n)?;
    let summary = desert::validate_trace(&trace).expect("generated strategy trace is legal");
    let mut ascending = summary.eating_sorted;
    ascending.reverse();
    Ok(ascending)
}

/// The per-meal banana table: for each meal, the ground positions (sorted
/// ascending) at the moment just before the camel eats.
pub fn meal_configs(trace: &Trace) -> Result<Vec<Vec<Rat>>, DesertError> {
    let mut state = desert::initial_state(trace.n)?;
    let mut configs = Vec::new();
    for (index, mv) in trace.moves.iter().enumerate() {
        let snapshot = if matches!(mv, Move::Eat) {
            Some(state.ground_positions())
        } else {
            None
        };
        step(&mut state, mv).map_err(|violation| DesertError::Illegal { index, violation })?;
        if let Some(config) = snapshot {
            configs.push(config);
        }
    }
    Ok(configs)
}

/// Result of checking properties (a)-(c) at one meal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealCheck {
    /// 1-based meal number.
    pub meal: usize,
    /// Index of the corresponding eat move.
    pub eat_index: usize,
    /// Property (a), first half: the camel stands at the minimum position.
    pub camel_at_min: bool,
    /// Property (a), second half: all bananas within a half-mile interval.
    pub half_interval: bool,
    /// Properties (b)/(c): pairs, plus a sole furthest banana when odd.
    pub paired: bool,
}

impl MealCheck {
    pub fn ok(&self) -> bool {
        self.camel_at_min && self.half_interval && self.paired
    }
}

/// Per-meal verdicts for a whole trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealReport {
    pub checks: Vec<MealCheck>,
}

impl MealReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(MealCheck::ok)
    }
}

/// Checks the meal-time properties (a)-(c) at every eat of a trace.
/// Failures are report entries, not errors; only an illegal trace errors.
pub fn check_meal_invariants(trace: &Trace) -> Result<MealReport, DesertError> {
    let mut state = desert::initial_state(trace.n)?;
    let mut checks = Vec::new();
    for (index, mv) in trace.moves.iter().enumerate() {
        if matches!(mv, Move::Eat) {
            let ground = &state.ground;
            let check = match (ground.keys().next(), ground.keys().next_back()) {
                (Some(min), Some(max)) => MealCheck {
                    meal: checks.len() + 1,
                    eat_index: index,
                    camel_at_min: state.camel_pos == *min,
                    half_interval: max - min <= rat(1, 2),
                    paired: pairing_ok(ground),
                },
                // No ground bananas: the eat itself will fail below.
                _ => MealCheck {
                    meal: checks.len() + 1,
                    eat_index: index,
                    camel_at_min: false,
                    half_interval: false,
                    paired: false,
                },
            };
            checks.push(check);
        }
        step(&mut state, mv).map_err(|violation| DesertError::Illegal { index, violation })?;
    }
    Ok(MealReport { checks })
}

/// Checks `e_k = e_(2k-2)/4 + e_(2k-1)/2 + e_(2k)/4 + 1/2` for every valid
/// `k` on an ascending list of eating positions (`e_n` first, `e_1` last).
/// Returns the first violated `k`, or `None` when the recurrence holds.
///
/// At `k = 2` the equality is self-referential (`e_2` appears on both
/// sides); it is checked as stated, which is equivalent to its simplified
/// form `e_2 = 2*e_3/3 + e_4/3 + 2/3`.
pub fn eating_recurrence_violation(e_ascending: &[Rat]) -> Option<u64> {
    let total = e_ascending.len() as u64;
    let e = |j: u64| &e_ascending[(total - j) as usize];
    for k in 2..=total / 2 {
        let rhs = (e(2 * k - 2) + e(2 * k)) / whole(4) + e(2 * k - 1) / whole(2) + rat(1, 2);
        if *e(k) != rhs {
            return Some(k);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::desert::validate_trace;
    use crate::rational::rat;

    fn config(entries: &[(i64, i64)]) -> BananaConfig {
        BananaConfig::new(entries.iter().map(|&(n, d)| rat(n, d))).unwrap()
    }

    fn positions(config: &BananaConfig) -> Vec<Rat> {
        config.to_vec()
    }

    #[test]
    fn even_step_matches_worked_examples() {
        let (next, _) = even_step(&config(&[(0, 1), (0, 1), (0, 1), (0, 1)])).unwrap();
        assert_eq!(positions(&next), vec![rat(0, 1), rat(0, 1), rat(1, 2)]);

        let (next, _) = even_step(&config(&[(0, 1), (0, 1), (1, 4), (1, 4)])).unwrap();
        assert_eq!(positions(&next), vec![rat(1, 4), rat(1, 4), rat(5, 8)]);

        let (next, _) =
            even_step(&config(&[(1, 4), (1, 4), (9, 16), (9, 16)])).unwrap();
        assert_eq!(positions(&next), vec![rat(9, 16), rat(9, 16), rat(29, 32)]);
    }

    #[test]
    fn odd_step_matches_worked_examples() {
        let (next, _) = odd_step(&config(&[(0, 1); 5])).unwrap();
        assert_eq!(
            positions(&next),
            vec![rat(0, 1), rat(0, 1), rat(1, 4), rat(1, 4)]
        );

        let (next, _) =
            odd_step(&config(&[(0, 1), (0, 1), (0, 1), (0, 1), (1, 2)])).unwrap();
        assert_eq!(
            positions(&next),
            vec![rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 2)]
        );

        let (next, _) =
            odd_step(&config(&[(0, 1), (0, 1), (1, 4), (1, 4), (1, 2)])).unwrap();
        assert_eq!(
            positions(&next),
            vec![rat(1, 4), rat(1, 4), rat(9, 16), rat(9, 16)]
        );
    }

    #[test]
    fn final_phase_matches_worked_examples() {
        let (reach, _) = final_phase(&config(&[(1, 2), (1, 2), (3, 4)])).unwrap();
        assert_eq!(reach, whole(3));

        let (reach, _) = final_phase(&config(&[(9, 16), (9, 16), (29, 32)])).unwrap();
        assert_eq!(reach, rat(25, 8));

        let (reach, _) = final_phase(&config(&[(0, 1)])).unwrap();
        assert_eq!(reach, whole(1));

        let (reach, _) = final_phase(&config(&[(0, 1), (0, 1)])).unwrap();
        assert_eq!(reach, whole(2));
    }

    #[test]
    fn steps_reject_malformed_configs() {
        assert!(matches!(
            even_step(&config(&[(0, 1), (0, 1)])),
            Err(StrategyError::WrongCount { .. })
        ));
        assert!(matches!(
            even_step(&config(&[(0, 1), (0, 1), (0, 1), (1, 4)])),
            Err(StrategyError::NotPaired)
        ));
        // Unpaired banana hiding at the minimum instead of the maximum.
        assert!(matches!(
            odd_step(&config(&[(0, 1), (1, 4), (1, 4), (1, 2), (1, 2)])),
            Err(StrategyError::SoleNotFurthest)
        ));
        assert!(matches!(
            even_step(&config(&[(0, 1), (0, 1), (3, 4), (3, 4)])),
            Err(StrategyError::IntervalTooWide { .. })
        ));
        assert!(matches!(
            final_phase(&config(&[(0, 1), (1, 4)])),
            Err(StrategyError::NotPaired)
        ));
        assert!(matches!(
            final_phase(&config(&[(0, 1), (1, 4), (1, 4)])),
            Err(StrategyError::SoleNotFurthest)
        ));
        assert!(matches!(
            final_phase(&config(&[(0, 1); 4])),
            Err(StrategyError::WrongCount { .. })
        ));
        assert!(matches!(BananaConfig::stock(0), Err(StrategyError::Empty)));
    }

    #[test]
    fn steps_eat_one_banana_and_spend_the_mile_exactly() {
        use crate::desert::{apply_move, WorldState};

        // Replay a step's moves from the meal-time world state: exactly
        // one banana is consumed, the mile is spent to the last drop, and
        // the camel ends with the bananas of the next config.
        let mut config = BananaConfig::stock(20).unwrap();
        while config.len() > 3 {
            let (next, moves) = if config.len().is_multiple_of(2) {
                even_step(&config).unwrap()
            } else {
                odd_step(&config).unwrap()
            };
            let mut state = WorldState {
                camel_pos: config.camel_at().clone(),
                fuel: Rat::zero(),
                carrying: false,
                ground: config
                    .to_vec()
                    .into_iter()
                    .fold(std::collections::BTreeMap::new(), |mut m, p| {
                        *m.entry(p).or_insert(0) += 1;
                        m
                    }),
                eaten: Vec::new(),
                max_pos: config.camel_at().clone(),
            };
            let eats = moves.iter().filter(|m| matches!(m, Move::Eat)).count();
            assert_eq!(eats, 1);
            for mv in &moves {
                state = apply_move(&state, mv).unwrap();
            }
            assert!(state.fuel.is_zero(), "fuel must return to 0");
            assert!(!state.carrying);
            assert_eq!(&state.camel_pos, next.camel_at());
            assert_eq!(state.ground_positions(), next.to_vec());
            config = next;
        }
    }

    #[test]
    fn step_outputs_land_weakly_furthest() {
        // The freshly dropped banana of an even step is never behind any
        // other banana of the new config.
        for n in [4u64, 6, 8, 12, 16] {
            let mut config = BananaConfig::stock(n).unwrap();
            while config.len() > 3 {
                let before_max = config.max().clone();
                let (next, _) = if config.len().is_multiple_of(2) {
                    even_step(&config).unwrap()
                } else {
                    odd_step(&config).unwrap()
                };
                assert!(next.max() >= &before_max);
                config = next;
            }
        }
    }

    #[test]
    fn uwc_trace_reproduces_published_tables() {
        type Rows = &'static [&'static [(i64, i64)]];
        let tables: &[(u64, Rows)] = &[
            (3, &[&[(0, 1); 3], &[(1, 3), (1, 3)], &[(4, 3)]]),
            (
                4,
                &[
                    &[(0, 1); 4],
                    &[(0, 1), (0, 1), (1, 2)],
                    &[(2, 3), (2, 3)],
                    &[(5, 3)],
                ],
            ),
            (
                5,
                &[
                    &[(0, 1); 5],
                    &[(0, 1), (0, 1), (1, 4), (1, 4)],
                    &[(1, 4), (1, 4), (5, 8)],
                    &[(5, 6), (5, 6)],
                    &[(11, 6)],
                ],
            ),
            (
                6,
                &[
                    &[(0, 1); 6],
                    &[(0, 1), (0, 1), (0, 1), (0, 1), (1, 2)],
                    &[(0, 1), (0, 1), (1, 2), (1, 2)],
                    &[(1, 2), (1, 2), (3, 4)],
                    &[(1, 1), (1, 1)],
                    &[(2, 1)],
                ],
            ),
            (
                7,
                &[
                    &[(0, 1); 7],
                    &[(0, 1), (0, 1), (0, 1), (0, 1), (1, 4), (1, 4)],
                    &[(0, 1), (0, 1), (1, 4), (1, 4), (1, 2)],
                    &[(1, 4), (1, 4), (9, 16), (9, 16)],
                    &[(9, 16), (9, 16), (29, 32)],
                    &[(9, 8), (9, 8)],
                    &[(17, 8)],
                ],
            ),
        ];
        for (n, rows) in tables {
            let trace = uwc_trace(*n).unwrap();
            let configs = meal_configs(&trace).unwrap();
            let expected: Vec<Vec<Rat>> = rows
                .iter()
                .map(|row| row.iter().map(|&(p, q)| rat(p, q)).collect())
                .collect();
            assert_eq!(configs, expected, "meal table for n = {n}");
        }
    }

    #[test]
    fn uwc_reach_matches_published_values() {
        let expected = [
            (1, whole(1)),
            (2, whole(2)),
            (3, rat(7, 3)),
            (4, rat(8, 3)),
            (5, rat(17, 6)),
            (6, whole(3)),
            (7, rat(25, 8)),
        ];
        for (n, reach) in expected {
            let summary = validate_trace(&uwc_trace(n).unwrap()).unwrap();
            assert!(summary.complete);
            assert_eq!(summary.max_pos, reach, "reach for n = {n}");
        }
    }

    #[test]
    fn eating_positions_read_off_the_tables() {
        assert_eq!(
            uwc_eating_positions(3).unwrap(),
            vec![whole(0), rat(1, 3), rat(4, 3)]
        );
        // Each table row's minimum is the next eating position.
        assert_eq!(
            uwc_eating_positions(7).unwrap(),
            vec![
                whole(0),
                whole(0),
                whole(0),
                rat(1, 4),
                rat(9, 16),
                rat(9, 8),
                rat(17, 8),
            ]
        );
        assert_eq!(uwc_eating_positions(1).unwrap(), vec![whole(0)]);
    }

    #[test]
    fn traces_are_canonical() {
        // No zero-length walks, no pick immediately undone by a drop.
        for n in 1..=64 {
            let trace = uwc_trace(n).unwrap();
            let mut pos = Rat::zero();
            let mut prev_was_pick = false;
            for mv in &trace.moves {
                match mv {
                    Move::Walk { to } => {
                        assert_ne!(*to, pos, "zero-length walk in uwc_trace({n})");
                        pos = to.clone();
                        prev_was_pick = false;
                    }
                    Move::Drop => {
                        assert!(!prev_was_pick, "pick/drop no-op in uwc_trace({n})");
                        prev_was_pick = false;
                    }
                    Move::Pick => prev_was_pick = true,
                    Move::Eat => prev_was_pick = false,
                }
            }
        }
    }

    #[test]
    fn meal_invariants_hold_for_generated_traces() {
        for n in 1..=48 {
            let report = check_meal_invariants(&uwc_trace(n).unwrap()).unwrap();
            assert_eq!(report.checks.len(), n as usize);
            assert!(report.all_ok(), "meal invariants for n = {n}");
        }
    }

    #[test]
    fn meal_invariants_flag_hand_built_violations() {
        // Spread two bananas a full mile apart, then eat at the far end:
        // wide interval, camel not at the minimum, and pairing broken.
        let trace = Trace {
            n: 4,
            moves: vec![
                Move::Eat,
                Move::Pick,
                Move::Walk { to: rat(1, 2) },
                Move::Drop,
                Move::Walk { to: whole(0) },
                Move::Eat,
                Move::Walk { to: rat(1, 2) },
                Move::Pick,
                Move::Walk { to: whole(1) },
                Move::Drop,
                Move::Eat,
            ],
        };
        let report = check_meal_invariants(&trace).unwrap();
        assert!(report.checks[0].ok());
        assert!(report.checks[1].ok());
        let bad = &report.checks[2];
        assert!(!bad.half_interval);
        assert!(!bad.camel_at_min);
        assert!(!bad.paired);
    }

    #[test]
    fn eating_recurrence_holds_for_generated_positions() {
        for n in 1..=64 {
            let e = uwc_eating_positions(n).unwrap();
            assert_eq!(eating_recurrence_violation(&e), None, "recurrence at n = {n}");
        }
        // Negative control: perturb one deep position.
        let mut e = uwc_eating_positions(12).unwrap();
        e[3] += rat(1, 100);
        assert!(eating_recurrence_violation(&e).is_some());
    }
}
