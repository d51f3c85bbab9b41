//! The rank-2 lattice `ZH + ZC` with `H^2 = 2r-2`, `H.C = d`, `C^2 = 2g-2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{add, mul};
use crate::invariants::Params;
use crate::qform::{represents, represents_zero, BinaryQuadForm, NoReason, ReprResult, DEFAULT_BOUND};
use crate::report::dec;

/// The class `mH + nC`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivClass {
    #[serde(with = "dec")]
    pub m: i64,
    #[serde(with = "dec")]
    pub n: i64,
}

impl DivClass {
    pub const ZERO: DivClass = DivClass { m: 0, n: 0 };
    /// Hyperplane class.
    pub const H: DivClass = DivClass { m: 1, n: 0 };
    /// Curve class.
    pub const C: DivClass = DivClass { m: 0, n: 1 };

    pub const fn new(m: i64, n: i64) -> Self {
        DivClass { m, n }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl Add for DivClass {
    type Output = DivClass;
    fn add(self, rhs: DivClass) -> DivClass {
        DivClass::new(self.m + rhs.m, self.n + rhs.n)
    }
}

impl Sub for DivClass {
    type Output = DivClass;
    fn sub(self, rhs: DivClass) -> DivClass {
        DivClass::new(self.m - rhs.m, self.n - rhs.n)
    }
}

impl Neg for DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass::new(-self.m, -self.n)
    }
}

impl Mul<DivClass> for i64 {
    type Output = DivClass;
    fn mul(self, rhs: DivClass) -> DivClass {
        DivClass::new(self * rhs.m, self * rhs.n)
    }
}

/// Evidence that the surface has neither `(-2)`-curves nor elliptic pencils,
/// and that the lattice is hyperbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificate {
    /// Why `Q = -1` has no solution.
    pub no_minus_two: NoReason,
    /// Why `Q = 0` has no nontrivial solution.
    pub no_elliptic: NoReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3Lattice {
    params: Params,
    form: BinaryQuadForm,
    certificate: Option<Certificate>,
}

/// Ampleness of `C`, decided only through a sufficient condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ampleness {
    Yes,
    Unknown,
}

impl K3Lattice {
    /// Lattice without certificates. Intersection numbers and ampleness are
    /// available; effectiveness tests are not.
    pub fn new(params: Params) -> Self {
        K3Lattice { form: BinaryQuadForm::from_params(&params), params, certificate: None }
    }

    pub fn certified(params: Params) -> Result<Self> {
        Self::certified_with_bound(params, DEFAULT_BOUND)
    }

    /// Builds the lattice and certifies it: the discriminant
    /// `d^2 - 4(r-1)(g-1)` must be positive, `Q` must miss `-1`, and `Q` must
    /// have no nontrivial zero.
    pub fn certified_with_bound(params: Params, bound: u64) -> Result<Self> {
        let mut lattice = Self::new(params);
        lattice.certificate = Some(lattice.certificate_for(bound)?);
        Ok(lattice)
    }

    fn certificate_for(&self, bound: u64) -> Result<Certificate> {
        let disc = self.form.discriminant();
        if disc <= 0 {
            return Err(Error::Uncertified(format!(
                "discriminant {disc} is not positive, so the form is not hyperbolic"
            )));
        }
        let no_minus_two = match represents(&self.form, -1, bound) {
            ReprResult::No(reason) => reason,
            ReprResult::Yes { m, n } => {
                return Err(Error::Uncertified(format!("(-2)-class found: Q({m},{n}) = -1")))
            }
            ReprResult::Unknown { bound } => {
                return Err(Error::Uncertified(format!(
                    "could not exclude Q = -1 within |m|,|n| <= {bound}"
                )))
            }
        };
        let no_elliptic = match represents_zero(&self.form)? {
            ReprResult::No(reason) => reason,
            other => {
                return Err(Error::Uncertified(format!("elliptic class found: Q = 0 at {other}")))
            }
        };
        Ok(Certificate { no_minus_two, no_elliptic })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn form(&self) -> &BinaryQuadForm {
        &self.form
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        self.certificate.as_ref()
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.is_some()
    }

    pub fn gram(&self) -> [[i64; 2]; 2] {
        let p = &self.params;
        [[2 * p.r() - 2, p.d()], [p.d(), 2 * p.g() - 2]]
    }

    pub fn intersect(&self, x: DivClass, y: DivClass) -> i128 {
        let [[hh, hc], [_, cc]] = self.gram();
        let (m1, n1, m2, n2) = (x.m as i128, x.n as i128, y.m as i128, y.n as i128);
        let mixed = add(mul(m1, n2), mul(m2, n1));
        add(
            add(mul(hh as i128, mul(m1, m2)), mul(hc as i128, mixed)),
            mul(cc as i128, mul(n1, n2)),
        )
    }

    pub fn self_int(&self, x: DivClass) -> i128 {
        self.intersect(x, x)
    }

    /// `D.H`
    pub fn degree(&self, x: DivClass) -> i128 {
        self.intersect(x, DivClass::H)
    }

    /// The numerical criterion `D^2 >= 0` and `D.H > 2`, applied without
    /// checking that the lattice is certified.
    pub fn passes_effectivity_test(&self, x: DivClass) -> bool {
        self.self_int(x) >= 0 && self.degree(x) > 2
    }

    fn require_certificate(&self) -> Result<()> {
        if self.is_certified() {
            Ok(())
        } else {
            Err(Error::Uncertified(format!(
                "effectiveness at {} needs the no-(-2)-curve and no-elliptic-pencil certificates",
                self.params
            )))
        }
    }

    /// Effective and nonzero. The zero class is reported as not effective.
    pub fn is_effective(&self, x: DivClass) -> Result<bool> {
        self.require_certificate()?;
        Ok(self.passes_effectivity_test(x))
    }

    /// Some positive multiple is effective, or `D = 0`. Equivalent to
    /// `D^2 >= 0` and `D.H > 0` on a hyperbolic rank-2 lattice.
    pub fn is_q_effective(&self, x: DivClass) -> Result<bool> {
        self.require_certificate()?;
        Ok(x.is_zero() || (self.self_int(x) >= 0 && self.degree(x) > 0))
    }

    /// `Yes` when `d^2 > 4g(r-1)`, which forces `C.D > 0` for every effective
    /// `D`. Otherwise nothing is claimed.
    pub fn c_is_ample(&self) -> Ampleness {
        let p = &self.params;
        if p.d() * p.d() > 4 * p.g() * (p.r() - 1) {
            Ampleness::Yes
        } else {
            Ampleness::Unknown
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(d: i64, g: i64, r: i64) -> K3Lattice {
        K3Lattice::new(Params::new(d, g, r).unwrap())
    }

    fn certified(d: i64, g: i64, r: i64) -> K3Lattice {
        K3Lattice::certified(Params::new(d, g, r).unwrap()).unwrap()
    }

    #[test]
    fn intersection_examples() {
        let l = lattice(18, 23, 3);
        assert_eq!(l.intersect(DivClass::H, DivClass::H), 4);
        assert_eq!(l.intersect(DivClass::C, DivClass::C), 44);
        let l = lattice(16, 29, 3);
        assert_eq!(l.intersect(DivClass::new(1, 1), DivClass::H), 20);
        assert_eq!(l.gram(), [[4, 16], [16, 56]]);
    }

    #[test]
    fn self_intersection_examples() {
        let c_minus_4h = DivClass::C - 4 * DivClass::H;
        assert_eq!(lattice(18, 23, 3).self_int(c_minus_4h), -36);
        assert_eq!(lattice(16, 29, 3).self_int(DivClass::C - 2 * DivClass::H), 8);
        assert_eq!(lattice(16, 29, 3).self_int(DivClass::ZERO), 0);
    }

    #[test]
    fn certification() {
        let l = certified(18, 23, 3);
        let cert = l.certificate().unwrap();
        assert_eq!(cert.no_minus_two, NoReason::Parity);
        assert_eq!(cert.no_elliptic, NoReason::SquareTest);
        // disc 16 is a square
        let err = K3Lattice::certified(Params::new(16, 31, 3).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Uncertified(_)));
        // negative discriminant
        assert!(K3Lattice::certified(Params::new(6, 30, 3).unwrap()).is_err());
        assert!(lattice(18, 23, 3).is_effective(DivClass::H).is_err());
    }

    #[test]
    fn effectiveness_examples() {
        let l = certified(18, 23, 3);
        assert_eq!(l.is_effective(DivClass::H), Ok(true));
        assert_eq!(l.is_effective(DivClass::C - 4 * DivClass::H), Ok(false));
        assert_eq!(l.is_effective(DivClass::ZERO), Ok(false));
        // (C - 4H)^2 = 0 at (19, 45, 3): the class is isotropic, so the
        // lattice cannot be certified; the bare criterion still says yes.
        let l = lattice(19, 45, 3);
        assert!(l.passes_effectivity_test(DivClass::C - 4 * DivClass::H));
        assert!(l.is_effective(DivClass::H).is_err());
    }

    #[test]
    fn q_effectiveness_examples() {
        let l = certified(16, 29, 3);
        assert_eq!(l.is_q_effective(DivClass::ZERO), Ok(true));
        assert_eq!(l.is_q_effective(DivClass::C - 2 * DivClass::H), Ok(true));
        assert_eq!(l.is_q_effective(-DivClass::H), Ok(false));
    }

    #[test]
    fn ampleness_examples() {
        assert_eq!(lattice(16, 29, 3).c_is_ample(), Ampleness::Yes);
        assert_eq!(lattice(14, 25, 3).c_is_ample(), Ampleness::Unknown);
        assert_eq!(lattice(20, 10, 4).c_is_ample(), Ampleness::Yes);
    }

    #[test]
    fn ample_c_is_positive_on_effective_classes() {
        let l = certified(16, 29, 3);
        assert_eq!(l.c_is_ample(), Ampleness::Yes);
        for m in -40..=40 {
            for n in -40..=40 {
                let x = DivClass::new(m, n);
                if l.is_effective(x).unwrap() {
                    assert!(l.intersect(DivClass::C, x) > 0, "C.{x} <= 0");
                }
            }
        }
    }
}
