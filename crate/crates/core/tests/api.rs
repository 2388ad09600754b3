use aluthge::closed_forms::{self as cf, Scenario};
use aluthge::matrix;
use aluthge::wlft::WeightedLFT;
use proptest::prelude::*;

#[test]
fn iterates_are_distinct_with_constant_norm() {
    let base = Scenario::new(0.5, 0.0, 0).unwrap();
    let norms: Vec<f64> = (0..8)
        .map(|n| cf::norm_value(&base.with_n(n).unwrap()))
        .collect();
    assert!(norms.iter().all(|&v| (v - 2.0).abs() < 1e-15));
    for n in 0..7 {
        let w = cf::iterate_symbols(&base.with_n(n).unwrap());
        let v = cf::iterate_symbols(&base.with_n(n + 1).unwrap());
        assert!(
            w.distance(&v).unwrap() > 1e-3,
            "iterates {n} and {} coincide",
            n + 1
        );
    }
}

#[test]
fn symbolic_step_reproduces_closed_form() {
    let base = Scenario::new(0.25, 1.0, 0).unwrap();
    let mut w = cf::c_phi(&base);
    for n in 1..=5 {
        w = w.aluthge_step().unwrap();
        let want = cf::iterate_symbols(&base.with_n(n).unwrap());
        assert!(w.equals(&want, 1e-11), "n = {n}");
    }
}

#[test]
fn numeric_step_matches_closed_form_on_corner() {
    let base = Scenario::new(0.5, 0.0, 0).unwrap();
    let t = matrix::truncate(&cf::c_phi(&base), 128).unwrap();
    let num = matrix::aluthge_numeric(&t, matrix::DEFAULT_REL_CUTOFF).unwrap();
    let closed = matrix::truncate(&cf::iterate_symbols(&base.with_n(1).unwrap()), 128).unwrap();
    assert!(matrix::corner_distance(&num, &closed, 8) < 1e-6);
}

fn scenario() -> impl Strategy<Value = Scenario> {
    (0.05f64..0.95, -0.9f64..2.0, 0usize..10)
        .prop_map(|(a, al, n)| Scenario::new(a, al, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn both_iterate_forms_agree(sc in scenario()) {
        let w = cf::iterate_symbols(&sc);
        prop_assert!(cf::iterate_adjoint_form(&sc).adjoint().equals(&w, 1e-9));
        let d = cf::adjoint_iterate_symbols(&sc);
        prop_assert!(cf::adjoint_iterate_adjoint_form(&sc).adjoint().equals(&d, 1e-9));
    }

    #[test]
    fn adjoint_is_an_involution(sc in scenario()) {
        let w: WeightedLFT = cf::iterate_symbols(&sc);
        prop_assert!(w.adjoint().adjoint().equals(&w, 1e-12));
    }

    #[test]
    fn kernel_norm_never_exceeds_bound(sc in scenario(), re in -0.6f64..0.6, im in -0.6f64..0.6) {
        let om = num_complex::Complex64::new(re, im);
        prop_assert!(cf::sot_norm_sq_expanded(&sc, om) <= cf::sot_bound_sq(&sc, om) * (1.0 + 1e-10));
    }
}
