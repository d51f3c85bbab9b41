//! Binary quadratic forms `Q(m, n) = a m^2 + b mn + c n^2` and exact
//! representability decisions.
//!
//! The form attached to a parameter triple is `(r-1)m^2 + dmn + (g-1)n^2`,
//! which is half the self-intersection of `mH + nC` on the K3 lattice. A
//! K3 surface with that Picard lattice has no `(-2)`-curves when `Q` misses
//! `-1`, and no elliptic pencils when `Q` has no nontrivial zero.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{add, mul, sub};
use crate::invariants::{is_perfect_square, isqrt, Params};

/// Search bound used when none is given.
pub const DEFAULT_BOUND: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinaryQuadForm {
    a: i64,
    b: i64,
    c: i64,
    disc: i128,
}

impl BinaryQuadForm {
    /// Panics if `b^2 - 4ac` does not fit in `i128`, which needs coefficients
    /// near `2^62`.
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        let (a2, b2, c2) = (a as i128, b as i128, c as i128);
        let disc = sub(mul(b2, b2), mul(4, mul(a2, c2)));
        BinaryQuadForm { a, b, c, disc }
    }

    /// `(r-1)m^2 + dmn + (g-1)n^2`.
    pub fn from_params(p: &Params) -> Self {
        Self::new(p.r() - 1, p.d(), p.g() - 1)
    }

    pub fn coefficients(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    pub fn discriminant(&self) -> i128 {
        self.disc
    }

    /// `a m^2 + b mn + c n^2`, exactly.
    pub fn value(&self, m: i64, n: i64) -> i128 {
        let (m, n) = (m as i128, n as i128);
        let am2 = mul(self.a as i128, mul(m, m));
        let bmn = mul(self.b as i128, mul(m, n));
        let cn2 = mul(self.c as i128, mul(n, n));
        add(add(am2, bmn), cn2)
    }

    /// True when `Q(m, n) mod 2` never equals `t mod 2`.
    pub fn parity_obstructed(&self, t: i64) -> bool {
        let target = t.rem_euclid(2) as i128;
        [(0, 0), (1, 0), (0, 1), (1, 1)]
            .iter()
            .all(|&(m, n)| self.value(m, n).rem_euclid(2) != target)
    }
}

impl fmt::Display for BinaryQuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}m^2 + {}mn + {}n^2", self.a, self.b, self.c)
    }
}

/// Convenience wrapper matching the free-function style of the other modules.
pub fn q_value(f: &BinaryQuadForm, m: i64, n: i64) -> i128 {
    f.value(m, n)
}

pub fn discriminant(f: &BinaryQuadForm) -> i128 {
    f.discriminant()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoReason {
    /// `Q` takes only one parity and the target has the other.
    Parity,
    /// Target 0 with non-square discriminant.
    SquareTest,
    /// The search box provably contains every solution and none was found.
    Exhausted,
}

impl fmt::Display for NoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoReason::Parity => "parity",
            NoReason::SquareTest => "square-test",
            NoReason::Exhausted => "exhausted",
        })
    }
}

/// Outcome of a representability query. A `Yes` witness has always been
/// checked by substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReprResult {
    Yes { m: i64, n: i64 },
    No(NoReason),
    Unknown { bound: u64 },
}

impl ReprResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, ReprResult::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, ReprResult::No(_))
    }

    pub fn witness(&self) -> Option<(i64, i64)> {
        match *self {
            ReprResult::Yes { m, n } => Some((m, n)),
            _ => None,
        }
    }
}

impl fmt::Display for ReprResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReprResult::Yes { m, n } => write!(f, "Yes({m},{n})"),
            ReprResult::No(reason) => write!(f, "No({reason})"),
            ReprResult::Unknown { bound } => write!(f, "Unknown({bound})"),
        }
    }
}

/// Ordering used to pick a canonical witness: smaller `|n|`, then smaller
/// `|m|`, then nonnegative `m`, then nonnegative `n`.
fn witness_key(m: i64, n: i64) -> (u64, u64, bool, bool) {
    (n.unsigned_abs(), m.unsigned_abs(), m < 0, n < 0)
}

/// Decides whether `Q` has a zero `(m, n) != (0, 0)`.
///
/// With `a != 0` such a zero exists exactly when the discriminant is a
/// perfect square; the witness is the primitive vector of a rational root
/// `m/n = (-b +- sqrt(disc)) / 2a`, normalized to `n > 0`.
pub fn represents_zero(f: &BinaryQuadForm) -> Result<ReprResult> {
    if f.a == 0 {
        return Err(Error::DegenerateForm(format!(
            "represents_zero needs a != 0, got {f}"
        )));
    }
    let Some(root) = is_perfect_square(f.disc) else {
        return Ok(ReprResult::No(NoReason::SquareTest));
    };
    let denom = 2 * f.a as i128;
    let witness = [-(f.b as i128) + root, -(f.b as i128) - root]
        .into_iter()
        .map(|num| {
            let g = num.gcd(&denom);
            let (mut m, mut n) = (num / g, denom / g);
            if n < 0 {
                m = -m;
                n = -n;
            }
            let m = i64::try_from(m).expect("root numerator fits in i64");
            let n = i64::try_from(n).expect("root denominator fits in i64");
            (m, n)
        })
        .min_by_key(|&(m, n)| witness_key(m, n))
        .expect("two candidate roots");
    assert_eq!(f.value(witness.0, witness.1), 0, "zero witness failed substitution");
    Ok(ReprResult::Yes { m: witness.0, n: witness.1 })
}

/// Decides whether `Q(m, n) = t` for some integers, searching `|m|, |n| <= bound`.
///
/// Pipeline: a parity obstruction answers `No(parity)`; `t = 0` is delegated
/// to [`represents_zero`]; a definite form whose sign differs from `t` answers
/// `No(exhausted)`; otherwise each `n` in the box is solved exactly for `m`.
/// When nothing is found, definite forms whose solution ellipse fits in the
/// box give `No(exhausted)` and everything else gives `Unknown`.
pub fn represents(f: &BinaryQuadForm, t: i64, bound: u64) -> ReprResult {
    if f.parity_obstructed(t) {
        return ReprResult::No(NoReason::Parity);
    }
    if t == 0 {
        if f.a == 0 {
            return ReprResult::Yes { m: 1, n: 0 };
        }
        return represents_zero(f).expect("a != 0 checked above");
    }
    let definite = f.disc < 0;
    if definite && (t > 0) != (f.a > 0) {
        return ReprResult::No(NoReason::Exhausted);
    }

    let bound_i = bound.min(i64::MAX as u64) as i64;
    for abs_n in 0..=bound_i {
        let signs: &[i64] = if abs_n == 0 { &[0] } else { &[abs_n, -abs_n] };
        let hit = signs
            .iter()
            .flat_map(|&n| solve_for_m(f, n, t).into_iter().map(move |m| (m, n)))
            .filter(|&(m, _)| m.unsigned_abs() <= bound)
            .min_by_key(|&(m, n)| witness_key(m, n));
        if let Some((m, n)) = hit {
            assert_eq!(f.value(m, n), t as i128, "witness failed substitution");
            return ReprResult::Yes { m, n };
        }
    }

    if definite && ellipse_within(f, t, bound) {
        ReprResult::No(NoReason::Exhausted)
    } else {
        ReprResult::Unknown { bound }
    }
}

/// All integers `m` with `Q(m, n) = t` for fixed `n`.
fn solve_for_m(f: &BinaryQuadForm, n: i64, t: i64) -> Vec<i64> {
    let (a, b, c) = (f.a as i128, f.b as i128, f.c as i128);
    let n = n as i128;
    let lin = mul(b, n);
    let constant = sub(mul(c, mul(n, n)), t as i128);
    if a == 0 {
        // lin * m + constant = 0
        return if lin == 0 {
            if constant == 0 {
                vec![0]
            } else {
                vec![]
            }
        } else if constant % lin == 0 {
            i64::try_from(-constant / lin).into_iter().collect()
        } else {
            vec![]
        };
    }
    // a m^2 + lin m + constant = 0; disc_n = disc * n^2 + 4 a t
    let disc_n = sub(mul(lin, lin), mul(4, mul(a, constant)));
    let Some(s) = is_perfect_square(disc_n) else {
        return vec![];
    };
    let denom = 2 * a;
    let mut roots: Vec<i64> = [-lin + s, -lin - s]
        .into_iter()
        .filter(|num| num % denom == 0)
        .filter_map(|num| i64::try_from(num / denom).ok())
        .collect();
    roots.dedup();
    roots
}

/// For a definite form, whether every solution of `Q = t` lies in the box.
///
/// From `4aQ = (2am + bn)^2 - disc n^2` we get `|disc| n^2 <= 4at` and
/// `|2am + bn| <= sqrt(4at)`.
fn ellipse_within(f: &BinaryQuadForm, t: i64, bound: u64) -> bool {
    let four_at = mul(4, mul(f.a as i128, t as i128));
    debug_assert!(four_at > 0 && f.disc < 0);
    let n_max = isqrt((four_at / -f.disc) as u128);
    let lead = isqrt(four_at as u128) + 1;
    let span = lead + f.b.unsigned_abs() as u128 * n_max;
    let two_a = 2 * f.a.unsigned_abs() as u128;
    let m_max = span.div_ceil(two_a);
    n_max <= bound as u128 && m_max <= bound as u128
}
