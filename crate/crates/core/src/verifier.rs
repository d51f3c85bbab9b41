//! Constrained minimization over divisor classes and the numerical
//! hypotheses around it.
//!
//! For a curve `C` on a K3 surface with `Pic = ZH + ZC`, a pencil computing
//! the gonality below the generic value comes from a class `D = mH + nC` in
//! the set `A` cut out by
//!
//! * (i)   `(r-1)m^2 + mnd + (g-1)n^2 > 0`,
//! * (ii)  `2 < (2r-2)m + nd < d - 2`,
//! * (iii) `md + (2n-1)(g-1) <= 0`,
//!
//! and the gonality is bounded below by `alpha = min f` with
//! `f(D) = D.C - D^2`. [`enumerate_a`] lists `A` exactly, [`compute_alpha`]
//! takes the minimum and checks it against the closed form `d - 2r + 2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{add, mul, sub};
use crate::invariants::{brill_noether_number, is_perfect_square, isqrt, Params};
use crate::lattice::{DivClass, K3Lattice};
use crate::qform::{represents, represents_zero, BinaryQuadForm, DEFAULT_BOUND};
use crate::report::dec;

/// `D.C - D^2 = -(2r-2)m^2 + m(d - 2nd) + (n - n^2)(2g-2)`.
pub fn f_value(p: &Params, x: DivClass) -> i128 {
    let (d, g, r) = (p.d() as i128, p.g() as i128, p.r() as i128);
    let (m, n) = (x.m as i128, x.n as i128);
    let quad = mul(-(2 * r - 2), mul(m, m));
    let lin = mul(m, sub(d, mul(2, mul(n, d))));
    let cst = mul(sub(n, mul(n, n)), 2 * g - 2);
    add(add(quad, lin), cst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintA {
    pub params: Params,
    /// Also require `(C - D)^2 > 0`.
    pub strict: bool,
}

impl ConstraintA {
    pub fn new(params: Params, strict: bool) -> Self {
        ConstraintA { params, strict }
    }

    pub fn contains(&self, x: DivClass) -> bool {
        in_a(self, x)
    }
}

pub fn in_a(c: &ConstraintA, x: DivClass) -> bool {
    let p = &c.params;
    let form = BinaryQuadForm::from_params(p);
    let (d, g, r) = (p.d() as i128, p.g() as i128, p.r() as i128);
    let (m, n) = (x.m as i128, x.n as i128);

    let positive = form.value(x.m, x.n) > 0;
    let degree = (2 * r - 2) * m + n * d;
    let strip = 2 < degree && degree < d - 2;
    let half_genus = m * d + (2 * n - 1) * (g - 1) <= 0;
    let residual = !c.strict || form.value(-x.m, 1 - x.n) > 0;
    positive && strip && half_genus && residual
}

/// The feasible classes together with the `n`-interval that was scanned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub members: Vec<DivClass>,
    #[serde(with = "dec")]
    pub n_min: i64,
    #[serde(with = "dec")]
    pub n_max: i64,
}

/// Lists `A` exactly, ordered by `n` then `m`.
///
/// Writing `x = D.H = (2r-2)m + nd` and `disc = d^2 - 4(r-1)(g-1)`, one has
/// `4(r-1) Q(m,n) = x^2 - disc n^2`. Conditions (i) and (ii) then force
/// `disc n^2 < x^2 < (d-2)^2`, which bounds `|n|`; for each `n`, (ii) is an
/// open interval of width `(d-4)/(2r-2)` in `m`.
pub fn enumerate_a(c: &ConstraintA) -> Result<Enumeration> {
    let p = &c.params;
    let form = BinaryQuadForm::from_params(p);
    let disc = form.discriminant();
    if p.d() < 5 || p.r() < 2 || disc <= 0 {
        return Err(Error::NonTerminating(format!(
            "need d >= 5, r >= 2 and d^2 - 4(r-1)(g-1) > 0; got {p} with discriminant {disc}"
        )));
    }
    let d = p.d() as i128;
    let two_a = 2 * (p.r() as i128 - 1);
    let width = (d - 2) * (d - 2) - 1;
    let n_bound = isqrt((width / disc) as u128) as i64;

    let mut members = Vec::new();
    for n in -n_bound..=n_bound {
        let nd = n as i128 * d;
        // 2 < two_a m + nd < d - 2
        let m_lo = (2 - nd).div_euclid(two_a) + 1;
        let m_hi = -(-(d - 2 - nd)).div_euclid(two_a) - 1;
        for m in m_lo..=m_hi {
            let x = DivClass::new(m as i64, n);
            if in_a(c, x) {
                members.push(x);
            }
        }
    }
    Ok(Enumeration { members, n_min: -n_bound, n_max: n_bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AlphaOptions {
    /// Enumerate the strict variant of `A`.
    pub strict_a: bool,
    /// Fail with [`Error::HypothesisViolation`] unless the gonality theorem
    /// applies.
    pub enforce_hypotheses: bool,
    /// Search bound for `Q = -1`; `None` means [`DEFAULT_BOUND`].
    pub bound: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaReport {
    #[serde(with = "dec::option")]
    pub alpha: Option<i128>,
    pub minimizers: Vec<DivClass>,
    pub enumerated: Vec<DivClass>,
    #[serde(with = "dec")]
    pub n_min: i64,
    #[serde(with = "dec")]
    pub n_max: i64,
    pub strict_a: bool,
    /// Whether the theorem's hypotheses held, so that `alpha` and the
    /// minimizers were checked against the closed form.
    pub guaranteed: bool,
}

pub fn compute_alpha(p: &Params, opts: AlphaOptions) -> Result<AlphaReport> {
    let bound = opts.bound.unwrap_or(DEFAULT_BOUND);
    let hypotheses = theorem3_applicable_with_bound(p, bound);
    if opts.enforce_hypotheses && !hypotheses.ok() {
        return Err(Error::HypothesisViolation(format!(
            "{p}: {}",
            hypotheses.failures().join(", ")
        )));
    }
    let enumeration = enumerate_a(&ConstraintA::new(*p, opts.strict_a))?;
    let values: Vec<i128> = enumeration.members.iter().map(|&x| f_value(p, x)).collect();
    let alpha = values.iter().copied().min();
    let minimizers: Vec<DivClass> = enumeration
        .members
        .iter()
        .zip(&values)
        .filter(|&(_, &v)| Some(v) == alpha)
        .map(|(&x, _)| x)
        .collect();

    let guaranteed = hypotheses.ok();
    if guaranteed {
        let expected_alpha = (p.d() - 2 * p.r() + 2) as i128;
        let mut expected = vec![DivClass::H];
        if p.d() == p.g() - 1 {
            expected.push(DivClass::C - DivClass::H);
        }
        expected.sort_by_key(|x| (x.n, x.m));
        if alpha != Some(expected_alpha) || minimizers != expected {
            return Err(Error::InternalInvariantViolation(format!(
                "{p}: expected alpha {expected_alpha} at {expected:?}, computed {alpha:?} at {minimizers:?}"
            )));
        }
    }

    Ok(AlphaReport {
        alpha,
        minimizers,
        enumerated: enumeration.members,
        n_min: enumeration.n_min,
        n_max: enumeration.n_max,
        strict_a: opts.strict_a,
        guaranteed,
    })
}

/// `H^1(C, N_C) = 0` for the curves on quartic surfaces: `d <= 18` or
/// `g < 4d - 31`.
pub fn h1_normal_vanishes(d: i64, g: i64) -> bool {
    d <= 18 || g < 4 * d - 31
}

/// Result of the very-ampleness search. Only `NoViolatorFound` is a
/// certificate; a violator does not show that `|C|` fails to be very ample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum VeryAmpleSearch {
    NoViolatorFound,
    ViolatorFound { witness: DivClass },
}

/// The numerical conditions a class `D` must meet to obstruct
/// `k`-very-ampleness of `|C|`: `D` effective, `C - 2D` Q-effective and
/// `C.D - k - 1 <= D^2 <= C.D/2 < k + 1`.
pub fn is_very_ample_violator(l: &K3Lattice, x: DivClass, k: i64) -> Result<bool> {
    if !l.is_effective(x)? || !l.is_q_effective(DivClass::C - 2 * x)? {
        return Ok(false);
    }
    let cd = l.intersect(DivClass::C, x);
    let sq = l.self_int(x);
    let k = k as i128;
    Ok(cd - k - 1 <= sq && 2 * sq <= cd && cd < 2 * (k + 1))
}

/// Searches every class that could obstruct `k`-very-ampleness.
///
/// Effectiveness gives `D.H >= 3` and `D^2 >= 0`; Q-effectiveness of `C - 2D`
/// gives `D.H <= d/2`. With `4(r-1)Q = (D.H)^2 - disc n^2` this bounds `n` by
/// `4 disc n^2 <= d^2`, and `m` lies in a strip for each `n`.
pub fn check_very_ample_order(l: &K3Lattice, k: i64) -> Result<VeryAmpleSearch> {
    if !l.is_certified() {
        return Err(Error::Uncertified(format!(
            "very-ampleness search at {} needs a certified lattice",
            l.params()
        )));
    }
    let p = l.params();
    let d = p.d() as i128;
    let disc = l.form().discriminant();
    let two_a = 2 * (p.r() as i128 - 1);
    let n_bound = isqrt((d * d / (4 * disc)) as u128) as i64;
    let half = d / 2;
    for n in -n_bound..=n_bound {
        let nd = n as i128 * d;
        // 3 <= two_a m + nd <= floor(d/2)
        let m_lo = -(-(3 - nd)).div_euclid(two_a);
        let m_hi = (half - nd).div_euclid(two_a);
        for m in m_lo..=m_hi {
            let x = DivClass::new(m as i64, n);
            if is_very_ample_violator(l, x, k)? {
                return Ok(VeryAmpleSearch::ViolatorFound { witness: x });
            }
        }
    }
    Ok(VeryAmpleSearch::NoViolatorFound)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoriCase {
    /// `8(g-1) = d^2`: complete intersection of type `(4, d/4)`.
    Boundary,
    /// `8g < d^2`, `(d, g) != (5, 3)`: Picard lattice `ZH + ZC`.
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoriVerdict {
    Exists(MoriCase),
    NotExists,
}

/// Existence of a smooth degree-`d` genus-`g` curve on a smooth quartic.
pub fn mori_exists(d: i64, g: i64) -> MoriVerdict {
    let (d2, g) = (d as i128 * d as i128, g as i128);
    if 8 * (g - 1) == d2 {
        MoriVerdict::Exists(MoriCase::Boundary)
    } else if 8 * g < d2 && (d, g) != (5, 3) {
        MoriVerdict::Exists(MoriCase::Interior)
    } else {
        MoriVerdict::NotExists
    }
}

/// `d^2 >= 4g(r-1) + (r-1)^2`.
pub fn rathmann_exists(p: &Params) -> bool {
    let (d, g, r) = (p.d(), p.g(), p.r());
    d * d >= 4 * g * (r - 1) + (r - 1) * (r - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct HypothesisReport {
    pub flags: Vec<Flag>,
}

impl HypothesisReport {
    fn push(&mut self, name: &str, holds: bool, detail: String) {
        self.flags.push(Flag { name: name.to_string(), holds, detail });
    }

    pub fn ok(&self) -> bool {
        self.flags.iter().all(|f| f.holds)
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|f| f.name == name).map(|f| f.holds)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.flags.iter().filter(|f| !f.holds).map(|f| f.name.as_str()).collect()
    }
}

pub mod flags {
    pub const R_AT_LEAST_3: &str = "r>=3";
    pub const DEGREE_BOUND: &str = "d>=r^2+r";
    pub const RHO_NEGATIVE: &str = "rho<0";
    pub const DISCRIMINANT_MARGIN: &str = "discriminant-margin";
    pub const NO_MINUS_TWO: &str = "minus-one-not-represented";
    pub const NO_ELLIPTIC: &str = "zero-not-represented";

    pub const GENUS_ODD: &str = "g>=15-odd";
    pub const DEGREE_EVEN: &str = "d>=14-even";
    pub const D2_OVER_8G: &str = "d^2>8g";
    pub const BN_SPECIAL: &str = "4d<3g+12";
    pub const NON_SQUARE: &str = "d^2-8g+8-non-square";
    pub const H1_VANISHES: &str = "d<=18-or-g<4d-31";
}

pub fn theorem3_applicable(p: &Params) -> HypothesisReport {
    theorem3_applicable_with_bound(p, DEFAULT_BOUND)
}

/// Hypotheses of the gonality theorem for curves on K3 sections of `P^r`.
pub fn theorem3_applicable_with_bound(p: &Params, bound: u64) -> HypothesisReport {
    let (d, g, r) = (p.d(), p.g(), p.r());
    let mut report = HypothesisReport::default();
    report.push(flags::R_AT_LEAST_3, r >= 3, format!("r={r}"));
    report.push(flags::DEGREE_BOUND, d >= r * r + r, format!("{d} >= {}", r * r + r));
    let rho = brill_noether_number(p);
    report.push(flags::RHO_NEGATIVE, rho.is_negative(), format!("rho={rho}"));
    let (holds, detail) = if r >= 4 {
        let rhs = 4 * (r - 1) * (g + r - 2);
        (d * d > rhs, format!("{} > {rhs}", d * d))
    } else if r == 3 {
        (d * d > 8 * g, format!("{} > {}", d * d, 8 * g))
    } else {
        (false, "needs r >= 3".to_string())
    };
    report.push(flags::DISCRIMINANT_MARGIN, holds, detail);

    let form = BinaryQuadForm::from_params(p);
    let minus_one = represents(&form, -1, bound);
    report.push(flags::NO_MINUS_TWO, minus_one.is_no(), minus_one.to_string());
    let (holds, detail) = match represents_zero(&form) {
        Ok(res) => (res.is_no(), format!("{res}, disc={}", form.discriminant())),
        Err(e) => (false, e.to_string()),
    };
    report.push(flags::NO_ELLIPTIC, holds, detail);
    report
}

/// A degree/genus pair produced from an applicable `(d, g)` with its
/// expected gonality in `P^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct DerivedPair {
    #[serde(with = "dec")]
    pub d: i64,
    #[serde(with = "dec")]
    pub g: i64,
    #[serde(with = "dec")]
    pub gonality: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub hypotheses: HypothesisReport,
    /// Empty unless every hypothesis holds.
    pub derived: Vec<DerivedPair>,
}

impl Theorem1Report {
    pub fn ok(&self) -> bool {
        self.hypotheses.ok()
    }
}

/// Hypotheses for space curves of expected gonality, and the four derived
/// pairs `(d,g)`, `(d+1,g+1)`, `(d+1,g+2)`, `(d+2,g+3)`.
pub fn theorem1_applicable(d: i64, g: i64) -> Theorem1Report {
    let (d2, g) = (d as i128 * d as i128, g as i128);
    let d = d as i128;
    let mut report = HypothesisReport::default();
    report.push(flags::GENUS_ODD, g >= 15 && g % 2 == 1, format!("g={g}"));
    report.push(flags::DEGREE_EVEN, d >= 14 && d % 2 == 0, format!("d={d}"));
    report.push(flags::D2_OVER_8G, d2 > 8 * g, format!("{d2} > {}", 8 * g));
    report.push(flags::BN_SPECIAL, 4 * d < 3 * g + 12, format!("{} < {}", 4 * d, 3 * g + 12));
    let q = d2 - 8 * g + 8;
    report.push(flags::NON_SQUARE, is_perfect_square(q).is_none(), format!("d^2-8g+8={q}"));
    report.push(
        flags::H1_VANISHES,
        d <= 18 || g < 4 * d - 31,
        format!("d={d}, 4d-31={}", 4 * d - 31),
    );
    let derived = if report.ok() {
        let (d, g) = (d as i64, g as i64);
        [(d, g), (d + 1, g + 1), (d + 1, g + 2), (d + 2, g + 3)]
            .into_iter()
            .map(|(d, g)| DerivedPair { d, g, gonality: (d - 4).min((g + 3) / 2) })
            .collect()
    } else {
        Vec::new()
    };
    Theorem1Report { hypotheses: report, derived }
}

/// All `(r, d)` with `r >= 1`, `r + 1 <= d <= g - 1` and `rho(g, r, d) = -1`,
/// sorted by `r`.
///
/// `rho = -1` is `(r+1)(g-d+r) = g+1`, so `r+1` runs over divisors of `g+1`.
pub fn bn_divisor_solutions(g: i64) -> Result<Vec<(i64, i64)>> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("Brill-Noether divisors need g >= 2, got {g}")));
    }
    let n = g + 1;
    let mut divisors = Vec::new();
    let mut s = 1;
    while s * s <= n {
        if n % s == 0 {
            divisors.push(s);
            if s * s != n {
                divisors.push(n / s);
            }
        }
        s += 1;
    }
    divisors.sort_unstable();
    Ok(divisors
        .into_iter()
        .filter(|&s| s >= 2)
        .map(|s| {
            let r = s - 1;
            (r, g + r - n / s)
        })
        .filter(|&(r, d)| r < d && d <= g - 1)
        .collect())
}
