//! Closed-form Brill-Noether invariants and exact integer helpers.

use std::fmt;

use crate::error::{Error, Result};

/// Upper bound accepted for each of `d`, `g`, `r`.
///
/// With every parameter at most `10^6`, quantities such as `d^2`,
/// `4(r-1)(g+r-2)` and `(r+1)(g-d+r)` stay below `10^13`, so closed-form
/// invariants are computed in `i64` without any possibility of overflow.
pub const PARAM_MAX: i64 = 1_000_000;

/// Degree, genus and ambient dimension of a curve `C` in `P^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    d: i64,
    g: i64,
    r: i64,
}

impl Params {
    pub fn new(d: i64, g: i64, r: i64) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParams(format!("degree d={d} must be >= 1")));
        }
        if g < 0 {
            return Err(Error::InvalidParams(format!("genus g={g} must be >= 0")));
        }
        if r < 1 {
            return Err(Error::InvalidParams(format!("dimension r={r} must be >= 1")));
        }
        if d > PARAM_MAX || g > PARAM_MAX || r > PARAM_MAX {
            return Err(Error::InvalidParams(format!(
                "(d, g, r) = ({d}, {g}, {r}) exceeds the supported bound {PARAM_MAX}"
            )));
        }
        Ok(Params { d, g, r })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn r(&self) -> i64 {
        self.r
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d={}, g={}, r={})", self.d, self.g, self.r)
    }
}

/// A Brill-Noether number. Negative values mean a general curve of the given
/// genus carries no `g^r_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rho(pub i64);

impl Rho {
    pub fn value(self) -> i64 {
        self.0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `g - (r+1)(g-d+r)` for arbitrary integers (no range checks).
pub fn rho(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

pub fn brill_noether_number(p: &Params) -> Rho {
    Rho(rho(p.g, p.r, p.d))
}

/// `min(d - 2r + 2, floor((g+3)/2))`.
pub fn expected_gonality(p: &Params) -> i64 {
    (p.d - 2 * p.r + 2).min((p.g + 3) / 2)
}

/// Gonality of a general curve of genus `g`.
pub fn generic_gonality(g: i64) -> Result<i64> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("generic gonality needs g >= 2, got {g}")));
    }
    Ok((g + 3) / 2)
}

/// Dimension `2g + 2k - 5` of the locus of `k`-gonal curves.
///
/// Only valid for `2 <= k` and `2k <= g + 2`; outside that range the formula
/// is not a dimension and an error is returned.
pub fn gonal_locus_dim(g: i64, k: i64) -> Result<i64> {
    if k < 2 || 2 * k > g + 2 {
        return Err(Error::OutOfRange(format!(
            "gonal locus dimension needs 2 <= k <= (g+2)/2, got g={g}, k={k}"
        )));
    }
    Ok(2 * g + 2 * k - 5)
}

/// Expected dimension `(r+1)d - (r-3)(g-1)` of the Hilbert scheme of curves.
pub fn hilbert_expected_dim(p: &Params) -> Result<i64> {
    if p.r < 3 {
        return Err(Error::OutOfRange(format!(
            "Hilbert scheme dimension needs r >= 3, got r={}",
            p.r
        )));
    }
    Ok((p.r + 1) * p.d - (p.r - 3) * (p.g - 1))
}

/// Expected dimension `2r - 2 - e` of the variety of `e`-secant
/// `(r-2)`-planes. Negative means expected empty.
pub fn secant_expected_dim(r: i64, e: i64) -> i64 {
    2 * r - 2 - e
}

/// `deg - 2(h0 - 1)`.
pub fn clifford_of_divisor(deg: i64, h0: i64) -> i64 {
    deg - 2 * (h0 - 1)
}

/// Clifford index of a general curve of genus `g`, `floor((g-1)/2)`.
pub fn generic_clifford_index(g: i64) -> i64 {
    (g - 1).div_euclid(2)
}

/// Floor of the square root, by integer Newton iteration.
pub fn isqrt(n: u128) -> u128 {
    if n <= u64::MAX as u128 {
        return isqrt_u64(n as u64) as u128;
    }
    let bits = 128 - n.leading_zeros();
    // 2^ceil(bits/2) >= sqrt(n); Newton decreases monotonically from above.
    let mut x = 1u128 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

fn isqrt_u64(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let bits = 64 - n.leading_zeros();
    let mut x = 1u64 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Returns the root when `x` is a perfect square.
pub fn is_perfect_square(x: i128) -> Option<i128> {
    if x < 0 {
        return None;
    }
    // squares are 0, 1, 4 or 9 mod 16
    if !matches!(x & 15, 0 | 1 | 4 | 9) {
        return None;
    }
    let root = isqrt(x as u128);
    (root * root == x as u128).then_some(root as i128)
}
