use proptest::prelude::*;

use k3gon_core::invariants::{
    brill_noether_number, expected_gonality, generic_gonality, gonal_locus_dim, is_perfect_square, rho,
};
use k3gon_core::qform::BinaryQuadForm;
use k3gon_core::verifier::{
    bn_divisor_solutions, check_very_ample_order, enumerate_a, f_value, in_a, ConstraintA, VeryAmpleSearch,
};
use k3gon_core::{DivClass, K3Lattice, Params};

fn params() -> impl Strategy<Value = Params> {
    (1i64..=120, 0i64..=200, 1i64..=8).prop_map(|(d, g, r)| Params::new(d, g, r).unwrap())
}

fn class() -> impl Strategy<Value = DivClass> {
    (-500i64..=500, -500i64..=500).prop_map(|(m, n)| DivClass::new(m, n))
}

proptest! {
    #[test]
    fn serre_duality(g in 0i64..300, r in 0i64..20, d in 0i64..600) {
        let r_dual = g - d + r - 1;
        let d_dual = 2 * g - 2 - d;
        prop_assume!(r_dual >= 0 && d_dual >= 0);
        prop_assert_eq!(rho(g, r, d), rho(g, r_dual, d_dual));
    }

    #[test]
    fn space_curves_are_special_iff_4d_below_3g_plus_12(d in 1i64..400, g in 0i64..400) {
        let p = Params::new(d, g, 3).unwrap();
        prop_assert_eq!(brill_noether_number(&p).is_negative(), 4 * d < 3 * g + 12);
    }

    #[test]
    fn rho_minus_one_pencils_have_codimension_one(h in 1i64..500) {
        // rho(g, 1, k) = 2k - g - 2 equals -1 exactly when g = 2k - 1
        let (g, k) = (2 * h + 1, h + 1);
        prop_assert_eq!(rho(g, 1, k), -1);
        prop_assert_eq!(gonal_locus_dim(g, k).unwrap(), 3 * g - 4);
    }

    #[test]
    fn squares_and_neighbours(x in 0i128..(1i128 << 62)) {
        prop_assert_eq!(is_perfect_square(x * x), Some(x));
        if x >= 1 {
            prop_assert_eq!(is_perfect_square(x * x + 1), None);
        }
    }

    #[test]
    fn expected_gonality_at_most_generic(p in params()) {
        prop_assume!(p.g() >= 2);
        prop_assert!(expected_gonality(&p) <= generic_gonality(p.g()).unwrap());
    }

    #[test]
    fn form_symmetries(p in params(), x in class()) {
        let f = BinaryQuadForm::from_params(&p);
        let (a, _, c) = f.coefficients();
        prop_assert_eq!(f.value(1, 0), a as i128);
        prop_assert_eq!(f.value(0, 1), c as i128);
        prop_assert_eq!(f.value(-x.m, -x.n), f.value(x.m, x.n));
    }

    #[test]
    fn self_intersection_is_twice_form(p in params(), x in class()) {
        let l = K3Lattice::new(p);
        prop_assert_eq!(l.self_int(x), 2 * l.form().value(x.m, x.n));
    }

    #[test]
    fn pairing_is_symmetric_bilinear(p in params(), x in class(), y in class(), z in class(), s in -20i64..20) {
        let l = K3Lattice::new(p);
        prop_assert_eq!(l.intersect(x, y), l.intersect(y, x));
        prop_assert_eq!(l.intersect(x + y, z), l.intersect(x, z) + l.intersect(y, z));
        prop_assert_eq!(l.intersect(s * x, z), s as i128 * l.intersect(x, z));
    }

    #[test]
    fn hodge_inequality(p in params(), x in class()) {
        let (d, g, r) = (p.d(), p.g(), p.r());
        prop_assume!(d * d > 4 * (r - 1) * (g - 1));
        let l = K3Lattice::new(p);
        let dh = l.degree(x);
        prop_assert!((2 * r as i128 - 2) * l.self_int(x) <= dh * dh);
    }

    #[test]
    fn f_matches_pairing(p in params(), x in class()) {
        let l = K3Lattice::new(p);
        prop_assert_eq!(f_value(&p, x), l.intersect(x, DivClass::C) - l.self_int(x));
    }

    #[test]
    fn bn_divisors_have_rho_minus_one(g in 2i64..5000) {
        for (r, d) in bn_divisor_solutions(g).unwrap() {
            prop_assert_eq!(rho(g, r, d), -1);
            prop_assert_eq!(rho(g, r, d + 1), rho(g, r, d) + r + 1);
            prop_assert!(r + 1 <= d && d <= g - 1);
        }
    }
}

fn certified_params() -> impl Strategy<Value = K3Lattice> {
    (5i64..=60, 2i64..=150, 3i64..=6)
        .prop_filter_map("certifiable lattice", |(d, g, r)| {
            K3Lattice::certified(Params::new(d, g, r).ok()?).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn effective_implies_q_effective(l in certified_params(), x in class()) {
        if l.is_effective(x).unwrap() {
            prop_assert!(l.is_q_effective(x).unwrap());
        }
        // scale invariance of Q-effectiveness
        prop_assert_eq!(l.is_q_effective(x).unwrap(), l.is_q_effective(3 * x).unwrap());
    }

    #[test]
    fn hyperplane_and_curve_are_effective(l in certified_params()) {
        let p = *l.params();
        prop_assume!(p.d() > 2 && p.g() >= 2);
        prop_assert!(l.is_effective(DivClass::H).unwrap());
        prop_assert!(l.is_effective(DivClass::C).unwrap());
    }

    #[test]
    fn strict_a_is_subset(d in 5i64..=45, g in 2i64..=90, r in 2i64..=5) {
        let p = Params::new(d, g, r).unwrap();
        let default = enumerate_a(&ConstraintA::new(p, false));
        prop_assume!(default.is_ok());
        let default = default.unwrap().members;
        let strict = enumerate_a(&ConstraintA::new(p, true)).unwrap().members;
        prop_assert!(strict.iter().all(|x| default.contains(x)));
        if d <= g - 1 && 2 < 2 * r - 2 && 2 * r - 2 < d - 2 {
            prop_assert!(default.contains(&DivClass::H));
            prop_assert!(strict.contains(&DivClass::H));
        }
    }

    #[test]
    fn violators_satisfy_the_chain(l in certified_params(), k in 0i64..40) {
        if let VeryAmpleSearch::ViolatorFound { witness } = check_very_ample_order(&l, k).unwrap() {
            let cd = l.intersect(DivClass::C, witness);
            let sq = l.self_int(witness);
            let k = k as i128;
            prop_assert!(sq >= 0 && l.degree(witness) > 2);
            let residual = DivClass::C - 2 * witness;
            prop_assert!(residual.is_zero() || (l.self_int(residual) >= 0 && l.degree(residual) > 0));
            prop_assert!(cd - k - 1 <= sq && 2 * sq <= cd && cd < 2 * (k + 1));
            let p = *l.params();
            if cd <= (p.g() - 1) as i128 && p.d() >= 5 {
                prop_assert!(in_a(&ConstraintA::new(p, false), witness));
            }
        }
    }
}
