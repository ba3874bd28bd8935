//! The optimal penetration distance `c(n)`, computed three independent
//! ways, plus the coefficient machinery tying them together.
//!
//! * [`Recurrence`] evaluates the halving recurrence
//!   `c(2n+1) = c(2n)/2 + c(2n+2)/2`, `c(2n) = c(n)/2 + c(n+1)/2 + 1/2`
//!   with `c(1) = 1`, memoized.
//! * [`c_closed`] evaluates the closed form `F(n, h(n))` built from the
//!   quadratic `g(x) = -x^2/6 + x + 1` and the largest power of two below
//!   `n`.
//! * [`s_chain`] runs the weighted prefix-sum chain downward from
//!   `s_k = n - 1` and returns the bound `s_1 + 1`, which equals `c(n)`.
//!
//! All three routes use exact rational arithmetic; agreement is checked in
//! the test suites, never assumed.
//!
//! Everything here is a pure function except [`Recurrence`], whose memo
//! table takes `&mut self` and is single-threaded per instance. Evaluating
//! `c(n)` touches `O(log n)` distinct arguments through the halving.

use std::collections::HashMap;
use std::fmt;

use num::{One, Zero};

use crate::rational::{rat, whole, Rat};

/// Errors from the distance computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistanceError {
    /// The closed form is rational only at powers of two.
    NotPowerOfTwo { m: u64 },
    /// Argument below the smallest meaningful value.
    DomainTooSmall { n: u64, min: u64 },
}

impl fmt::Display for DistanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceError::NotPowerOfTwo { m } => {
                write!(f, "{m} is not a power of two")
            }
            DistanceError::DomainTooSmall { n, min } => {
                write!(f, "argument {n} is below the minimum {min}")
            }
        }
    }
}

impl std::error::Error for DistanceError {}

/// Memoized evaluator of the halving recurrence with `c(1) = 1`.
///
/// Neither `c(2)` nor `c(3)` is an extra base case; both fall out of the
/// equalities as linear self-references:
///
/// * the even equation at `n = 1` reads `c(2) = c(1)/2 + c(2)/2 + 1/2`,
///   which solves to `c(2) = c(1) + 1`;
/// * the odd equation at `n = 1` reads `c(3) = c(2)/2 + c(4)/2`, and `c(4)`
///   refers straight back to `c(3)`. Substituting the even equation for
///   `c(4)` gives `c(3) = c(1)/4 + c(2)/2 + c(3)/4 + 1/2`, which solves to
///   `c(3) = c(1)/3 + 2*c(2)/3 + 2/3`.
///
/// From `n = 4` upward the literal equalities descend: an even `n` halves
/// outright, and an odd `n` touches its even neighbors, whose own operands
/// are below `n` again.
#[derive(Debug, Default)]
pub struct Recurrence {
    memo: HashMap<u64, Rat>,
}

impl Recurrence {
    pub fn new() -> Self {
        Self::default()
    }

    /// `c(n)` for `n >= 1`.
    pub fn c(&mut self, n: u64) -> Rat {
        assert!(n >= 1, "c(n) is defined for n >= 1");
        if let Some(value) = self.memo.get(&n) {
            return value.clone();
        }
        let value = if n == 1 {
            Rat::one()
        } else if n == 2 {
            // Solve x = c(1)/2 + x/2 + 1/2.
            self.c(1) + whole(1)
        } else if n == 3 {
            // Solve x = c(1)/4 + c(2)/2 + x/4 + 1/2.
            (self.c(1) + whole(2) * self.c(2) + whole(2)) / whole(3)
        } else if n.is_multiple_of(2) {
            (self.c(n / 2) + self.c(n / 2 + 1) + whole(1)) / whole(2)
        } else {
            (self.c(n - 1) + self.c(n + 1)) / whole(2)
        };
        self.memo.insert(n, value.clone());
        value
    }
}

/// One-shot recurrence evaluation with a fresh memo.
pub fn c_recurrence(n: u64) -> Rat {
    Recurrence::new().c(n)
}

/// The quadratic `g(x) = -x^2/6 + x + 1`, exactly.
pub fn g_eval(x: &Rat) -> Rat {
    Rat::one() + x - x * x / whole(6)
}

/// `h(n)`: the largest power of two with `h(n) <= n`.
pub fn h_floor_pow2(n: u64) -> u64 {
    assert!(n >= 1, "h(n) is defined for n >= 1");
    1 << n.ilog2()
}

/// The closed form
/// `F(n, m) = log2(m)/2 + g((n-1)/m) + ((n-1) mod 2) / (6 m^2)`,
/// restricted to `m` a power of two so the logarithm is an integer and the
/// result stays rational.
pub fn f_closed(n: u64, m: u64) -> Result<Rat, DistanceError> {
    assert!(n >= 1, "F(n, m) is defined for n >= 1");
    if m == 0 || !m.is_power_of_two() {
        return Err(DistanceError::NotPowerOfTwo { m });
    }
    let log_half = rat(m.ilog2() as i64, 2);
    let x = Rat::new((n - 1).into(), m.into());
    let parity = if !(n - 1).is_multiple_of(2) {
        Rat::new(1.into(), (6 * m * m).into())
    } else {
        Rat::zero()
    };
    Ok(log_half + g_eval(&x) + parity)
}

/// `c(n) = F(n, h(n))` for `n >= 1`.
pub fn c_closed(n: u64) -> Rat {
    f_closed(n, h_floor_pow2(n)).expect("h(n) is a power of two")
}

/// Checks the three exact identities of `F` at `(n, m)`:
///
/// 1. `F(2m, 2m) = F(2m, m)` (uses only `m`),
/// 2. `F(2n+1, m) = F(2n, m)/2 + F(2n+2, m)/2`,
/// 3. `F(2n, 2m) = F(n, m)/2 + F(n+1, m)/2 + 1/2`.
pub fn verify_f_identities(n: u64, m: u64) -> Result<(bool, bool, bool), DistanceError> {
    if m == 0 || !m.is_power_of_two() {
        return Err(DistanceError::NotPowerOfTwo { m });
    }
    let f = |a, b| f_closed(a, b).expect("power-of-two m");
    let id1 = f(2 * m, 2 * m) == f(2 * m, m);
    let id2 = f(2 * n + 1, m) == (f(2 * n, m) + f(2 * n + 2, m)) / whole(2);
    let id3 = f(2 * n, 2 * m) == (f(n, m) + f(n + 1, m) + whole(1)) / whole(2);
    Ok((id1, id2, id3))
}

/// Coefficients expressing `c(N)` as an affine function of the eating
/// positions `e_(2n) ..= e_(n+1)`:
///
/// `c(N) = coeffs[n]*e_(2n) + ... + coeffs[1]*e_(n+1) + coeffs[0]`
///
/// for every `N >= 2n`. The weights `coeffs[1..]` sum to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaRow {
    pub n: u64,
    /// `coeffs[i]` multiplies `e_(n+i)`; `coeffs[0]` is the constant term.
    pub coeffs: Vec<Rat>,
}

impl LambdaRow {
    /// The `n = 2` row, from `c = e_2 + 2` and the simplified recurrence
    /// `e_2 = 2*e_3/3 + e_4/3 + 2/3`.
    pub fn base() -> Self {
        LambdaRow {
            n: 2,
            coeffs: vec![rat(8, 3), rat(2, 3), rat(1, 3)],
        }
    }

    /// The row for `n + 1`: substitutes
    /// `e_(n+1) = e_(2n)/4 + e_(2n+1)/2 + e_(2n+2)/4 + 1/2` into this row,
    /// which keeps the weight sum at one.
    pub fn next(&self) -> Self {
        let m = self.n;
        let lam1 = &self.coeffs[1];
        let quarter = lam1 / whole(4);
        let mut coeffs = Vec::with_capacity(m as usize + 2);
        coeffs.push(&self.coeffs[0] + lam1 / whole(2));
        for j in 1..m {
            coeffs.push(self.coeffs[(j + 1) as usize].clone());
        }
        let last = coeffs.len() - 1;
        coeffs[last] += &quarter; // e_(2m) picks up lam1/4
        coeffs.push(lam1 / whole(2)); // e_(2m+1)
        coeffs.push(quarter); // e_(2m+2)
        LambdaRow { n: m + 1, coeffs }
    }

    /// Sum of the variable coefficients (should be exactly one).
    pub fn weight_sum(&self) -> Rat {
        self.coeffs[1..].iter().sum()
    }
}

/// The coefficient row for a given `n >= 2`, iterating [`LambdaRow::next`]
/// up from the base row. Callers sweeping a range should roll the row
/// forward themselves; rebuilding from the base is quadratic.
pub fn lambda_coeffs(n: u64) -> Result<LambdaRow, DistanceError> {
    if n < 2 {
        return Err(DistanceError::DomainTooSmall { n, min: 2 });
    }
    let mut row = LambdaRow::base();
    while row.n < n {
        row = row.next();
    }
    Ok(row)
}

/// The weighted prefix-sum chain of the optimal strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SChain {
    pub n: u64,
    /// `s[k-1]` is `s_k` for `k = 1..=n`.
    pub s: Vec<Rat>,
    /// `s_1 + 1`, which equals `c(n)`.
    pub bound: Rat,
}

/// Evaluates the chain: `s_k = n - 1` for `k >= n/2`, then descending
/// `s_k = s_(2k-1)/4 + s_(2k)/4 + (2k-1)/2`, and finally the
/// self-referential `s_1 = s_1/4 + s_2/4 + 1/2`, i.e. `s_1 = (s_2 + 2)/3`.
///
/// `n = 1` degenerates through the base clause alone (`s_1 = 0`, bound 1).
pub fn s_chain(n: u64) -> Result<SChain, DistanceError> {
    if n == 0 {
        return Err(DistanceError::DomainTooSmall { n, min: 1 });
    }
    if n == 1 {
        return Ok(SChain {
            n,
            s: vec![Rat::zero()],
            bound: Rat::one(),
        });
    }
    let base_start = n.div_ceil(2);
    let base = whole(n - 1);
    let mut s = vec![Rat::zero(); n as usize + 1];
    for k in base_start..=n {
        s[k as usize] = base.clone();
    }
    for k in (2..base_start).rev() {
        let k = k as usize;
        s[k] = (&s[2 * k - 1] + &s[2 * k]) / whole(4) + rat(2 * k as i64 - 1, 2);
    }
    s[1] = (&s[2] + whole(2)) / whole(3);
    let bound = &s[1] + whole(1);
    s.remove(0);
    Ok(SChain { n, s, bound })
}

/// Piecewise-affine piece of the chain values: `s_k = a*k + b` for
/// `k` in `lo..=hi`.
struct Piece {
    lo: u64,
    hi: u64,
    a: u64,
    b: Rat,
}

fn eval_piece(pieces: &[Piece], k: u64) -> Rat {
    let idx = pieces.partition_point(|p| p.hi < k);
    let piece = &pieces[idx];
    debug_assert!(piece.lo <= k && k <= piece.hi);
    whole(piece.a) * whole(k) + &piece.b
}

/// The chain bound `s_1 + 1` without materializing all `n` values.
///
/// Within any stretch of `k` where both children `2k-1` and `2k` fall into
/// a common affine piece `s = a*k + b`, the recurrence maps the piece to
/// `s = (a+1)*k + (b/2 - a/4 - 1/2)`; stretches straddling a piece
/// boundary are evaluated pointwise. Pieces grow by at most one per
/// halving level, so the whole evaluation is `O(log^2 n)` exact rational
/// operations. Agreement with [`s_chain`] is pinned in the tests.
pub fn s_chain_bound(n: u64) -> Rat {
    assert!(n >= 1, "the chain is defined for n >= 1");
    if n == 1 {
        return Rat::one();
    }
    let base_start = n.div_ceil(2);
    let mut pieces = vec![Piece {
        lo: base_start,
        hi: n,
        a: 0,
        b: whole(n - 1),
    }];
    let mut frontier = base_start;
    while frontier > 2 {
        let lo_new = (frontier + 1).div_ceil(2);
        let hi_new = frontier - 1;
        let mut level = Vec::new();
        let mut k = lo_new;
        while k <= hi_new {
            let child_lo = 2 * k - 1;
            let idx = pieces.partition_point(|p| p.hi < child_lo);
            let piece = &pieces[idx];
            if piece.hi >= 2 * k {
                // Both children inside one affine piece.
                let end = (piece.hi / 2).min(hi_new);
                level.push(Piece {
                    lo: k,
                    hi: end,
                    a: piece.a + 1,
                    b: &piece.b / whole(2) - rat(piece.a as i64, 4) - rat(1, 2),
                });
                k = end + 1;
            } else {
                // Children straddle a boundary: evaluate pointwise.
                let value = (eval_piece(&pieces, child_lo) + eval_piece(&pieces, 2 * k))
                    / whole(4)
                    + rat(2 * k as i64 - 1, 2);
                level.push(Piece {
                    lo: k,
                    hi: k,
                    a: 0,
                    b: value,
                });
                k += 1;
            }
        }
        level.extend(pieces);
        pieces = level;
        frontier = lo_new;
    }
    let s1 = (eval_piece(&pieces, 2) + whole(2)) / whole(3);
    s1 + whole(1)
}
