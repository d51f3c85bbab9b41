//! Implementation-independent oracles for the search routines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use k3gon_core::qform::{represents, represents_zero, BinaryQuadForm, NoReason, ReprResult};
use k3gon_core::verifier::{
    compute_alpha, enumerate_a, f_value, h1_normal_vanishes, theorem3_applicable, AlphaOptions,
    ConstraintA,
};
use k3gon_core::{DivClass, K3Lattice, Params};

/// Every `(m, n)` in the box with `Q(m, n) = t`, excluding `(0, 0)`.
fn box_solutions(f: &BinaryQuadForm, t: i128, bound: i64) -> Vec<(i64, i64)> {
    let (a, b, c) = f.coefficients();
    let mut out = Vec::new();
    for n in -bound..=bound {
        for m in -bound..=bound {
            if (m, n) == (0, 0) {
                continue;
            }
            let q = a as i128 * (m * m) as i128 + b as i128 * (m * n) as i128 + c as i128 * (n * n) as i128;
            if q == t {
                out.push((m, n));
            }
        }
    }
    out
}

#[test]
fn representability_against_box_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let p = Params::new(rng.gen_range(3..=50), rng.gen_range(1..=90), rng.gen_range(2..=6)).unwrap();
        let f = BinaryQuadForm::from_params(&p);
        for t in [-1i64, -2, 1, 3] {
            let sols = box_solutions(&f, t as i128, 60);
            match represents(&f, t, 60) {
                ReprResult::Yes { m, n } => {
                    assert_eq!(f.value(m, n), t as i128);
                    assert!(sols.contains(&(m, n)), "{p}: witness ({m},{n}) outside box");
                }
                ReprResult::No(NoReason::Parity) | ReprResult::No(NoReason::Exhausted) => {
                    assert!(sols.is_empty(), "{p}, t={t}: No contradicted by {:?}", sols[0])
                }
                ReprResult::No(NoReason::SquareTest) => unreachable!("square test only for t = 0"),
                ReprResult::Unknown { .. } => assert!(sols.is_empty()),
            }
        }
        let zeros = box_solutions(&f, 0, 60);
        match represents_zero(&f).unwrap() {
            ReprResult::Yes { m, n } => assert_eq!(f.value(m, n), 0),
            ReprResult::No(_) => assert!(zeros.is_empty()),
            ReprResult::Unknown { .. } => panic!("zero test is never unknown"),
        }
        if !zeros.is_empty() {
            assert!(represents_zero(&f).unwrap().is_yes());
        }
    }
}

#[test]
fn h1_matches_residual_effectiveness_small_grid() {
    let mut checked = 0;
    for d in 5..=40i64 {
        for g in 2..=120i64 {
            if d * d <= 8 * (g - 1) {
                continue;
            }
            let Ok(l) = K3Lattice::certified(Params::new(d, g, 3).unwrap()) else { continue };
            let residual = DivClass::C - 4 * DivClass::H;
            assert_eq!(h1_normal_vanishes(d, g), !l.is_effective(residual).unwrap(), "(d,g)=({d},{g})");
            checked += 1;
        }
    }
    assert!(checked > 100);
}

/// Minimizing f by brute force over a box that contains the whole strip.
#[test]
fn alpha_against_box_minimum() {
    for (d, g, r) in [(16, 29, 3), (18, 23, 3), (20, 29, 3), (30, 35, 5), (24, 43, 3)] {
        let p = Params::new(d, g, r).unwrap();
        assert!(theorem3_applicable(&p).ok(), "{p}");
        let c = ConstraintA::new(p, false);
        let mut best: Option<i128> = None;
        for n in -50..=50 {
            for m in -300..=300 {
                let x = DivClass::new(m, n);
                if c.contains(x) {
                    let v = f_value(&p, x);
                    best = Some(best.map_or(v, |b: i128| b.min(v)));
                }
            }
        }
        let report = compute_alpha(&p, AlphaOptions::default()).unwrap();
        assert_eq!(report.alpha, best);
        assert_eq!(report.alpha, Some((d - 2 * r + 2) as i128));
        let e = enumerate_a(&c).unwrap();
        assert_eq!(report.enumerated, e.members);
    }
}
