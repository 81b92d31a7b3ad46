use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tfzero::hurwitz::{max_real_root_part, routh_hurwitz, IntPolynomial};
use tfzero::kernels::{FormulaId, KernelPair};
use tfzero::oracle::{oracle_ambiguity, oracle_stft, oracle_wigner};
use tfzero::phase_space::{convert_value, GridSpec};
use tfzero::polyanalytic::{
    degree1_residual, degree1_roots, guaranteed_zero_search, polyanalytic_bargmann, ComplexPolynomial,
};
use tfzero::scan::scan;
use tfzero::special::gamma_complex;
use tfzero::step::{convexity_weights, stft_box_closed_form, Alpha, AlphaStepSpec, StepMode};
use tfzero::{FunctionSpec, PhaseSpacePoint, TransformKind};

fn point() -> impl Strategy<Value = PhaseSpacePoint> {
    (-3.0..3.0f64, -2.0..2.0f64).prop_map(|(x, xi)| PhaseSpacePoint::new(x, xi).unwrap())
}

fn cplx() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn family() -> impl Strategy<Value = FunctionSpec> {
    prop_oneof![
        (0.3..3.0f64, -1.0..1.0f64).prop_map(|(a, b)| FunctionSpec::gaussian(Complex64::new(a, b)).unwrap()),
        (0.3..3.0f64).prop_map(|a| FunctionSpec::one_sided(a).unwrap()),
        (0u32..4, 0.5..3.0f64).prop_map(|(n, a)| FunctionSpec::monomial_exp(n, a).unwrap()),
        (0.5..3.0f64, 0.5..2.0f64).prop_map(|(a, b)| FunctionSpec::gumbel(a, b).unwrap()),
        (0.5..2.0f64, 2.5..4.0f64).prop_map(|(a, b)| FunctionSpec::conv_exp_exp(a, b, 1).unwrap()),
        proptest::collection::vec(cplx(), 1..4).prop_map(|c| FunctionSpec::hermite_combo(c).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflect_is_an_involution(f in family(), t in -4.0..4.0f64) {
        let ff = f.reflect().reflect();
        prop_assert!((ff.eval(t) - f.eval(t)).norm() <= 1e-12 * f.eval(t).norm().max(1e-300));
        prop_assert!((f.reflect().eval(t) - f.eval(-t)).norm() <= 1e-12 * f.eval(-t).norm().max(1e-300));
    }

    #[test]
    fn conversions_round_trip(
        re in -10.0..10.0f64, im in -10.0..10.0f64, z in point(),
        from in 0usize..3, to in 0usize..3,
    ) {
        let (from, to) = (TransformKind::ALL[from], TransformKind::ALL[to]);
        let v = Complex64::new(re, im);
        let there = convert_value(from, to, v, z);
        let back = convert_value(to, from, there.value, there.point);
        prop_assert!((back.value - v).norm() <= 1e-12 * v.norm().max(1.0));
        prop_assert!((back.point.x - z.x).abs() < 1e-14 && (back.point.xi - z.xi).abs() < 1e-14);
    }

    #[test]
    fn gamma_recurrence(re in 0.2..8.0f64, im in -6.0..6.0f64) {
        let s = Complex64::new(re, im);
        let lhs = gamma_complex(s + 1.0).unwrap();
        let rhs = s * gamma_complex(s).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());
    }

    #[test]
    fn convexity_weights_sum_to_one(mut v in proptest::collection::vec(0.01..10.0f64, 1..8), up in any::<bool>()) {
        v.sort_by(|a, b| if up { a.partial_cmp(b).unwrap() } else { b.partial_cmp(a).unwrap() });
        v.dedup();
        let w = convexity_weights(&v).unwrap();
        prop_assert!(w.iter().all(|&x| x > 0.0));
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degree1_roots_solve_their_equation(a in cplx(), b in cplx()) {
        let (z1, z2) = degree1_roots(a, b);
        prop_assert!(degree1_residual(a, b, z1).norm() < 1e-10);
        prop_assert!(degree1_residual(a, b, z2).norm() < 1e-10);
    }

    #[test]
    fn polyanalytic_degree_bookkeeping(
        p in proptest::collection::vec(cplx(), 1..5),
        q in proptest::collection::vec(cplx(), 1..5),
    ) {
        prop_assume!(p.last().unwrap().norm() > 1e-3 && q.last().unwrap().norm() > 1e-3);
        let (pp, qq) = (ComplexPolynomial::new(p.clone()), ComplexPolynomial::new(q.clone()));
        let b = polyanalytic_bargmann(&pp, &qq).unwrap();
        prop_assert_eq!(b.deg_z(), qq.degree());
        prop_assert_eq!(b.deg_conj(), pp.degree());
        prop_assert_eq!(b.total_degree(), Some(p.len() + q.len() - 2));
    }

    #[test]
    fn scan_minimum_is_a_lower_envelope(cx in -1.0..1.0f64, cy in -1.0..1.0f64, n in 5usize..30) {
        let grid = GridSpec::square(2.0, n).unwrap();
        let z0 = Complex64::new(cx, cy);
        let eval = |p: PhaseSpacePoint| (Complex64::new(p.x, p.xi) - z0) * Complex64::new(1.0, 0.5);
        let r = scan(eval, &grid, 1e-10).unwrap();
        let brute = grid.points().map(|p| eval(p).norm()).fold(f64::INFINITY, f64::min);
        prop_assert!(r.min_modulus <= brute * (1.0 + 1e-12));
        prop_assert_eq!(r.zeros.len(), 1);
        let hit = r.zeros[0].point;
        prop_assert!((Complex64::new(hit.x, hit.xi) - z0).norm() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reflection_flips_the_ambiguity(f in family(), g in family(), z in point()) {
        let (sf, sg) = (f.sampled().unwrap(), g.sampled().unwrap());
        let (rf, rg) = (f.reflect().sampled().unwrap(), g.reflect().sampled().unwrap());
        let minus = PhaseSpacePoint::new(-z.x, -z.xi).unwrap();
        let lhs = oracle_ambiguity(&rf, &rg, z, 1e-11).unwrap();
        let rhs = oracle_ambiguity(&sf, &sg, minus, 1e-11).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-8, "{lhs} vs {rhs}");
    }

    #[test]
    fn self_wigner_is_real(f in family(), z in point()) {
        let sf = f.sampled().unwrap();
        let w = oracle_wigner(&sf, &sf, z, 1e-11).unwrap();
        prop_assert!(w.im.abs() < 1e-8 * w.norm().max(1.0), "{w}");
    }

    #[test]
    fn kernels_match_the_oracle_at_random_points(idx in 0usize..7, z in point()) {
        let pair = KernelPair::reference(FormulaId::ZERO_FREE[idx]);
        let (f, g) = pair.functions().unwrap();
        let want = pair.oracle_scale() * oracle_ambiguity(&f.sampled().unwrap(), &g.sampled().unwrap(), z, 1e-11).unwrap();
        let got = pair.eval(z).unwrap();
        prop_assert!((got - want).norm() < 1e-8, "{:?} at {z:?}: {got} vs {want}", pair.formula_id());
    }

    #[test]
    fn span_h0_h1_pairs_always_vanish(p in proptest::collection::vec(cplx(), 2), q in proptest::collection::vec(cplx(), 2)) {
        prop_assume!(p[1].norm() > 0.1 && q[1].norm() > 0.1);
        // π(z + a)(z̄ + b̄) − 1 after dividing by −πq₁p̄₁.
        let a = q[0] / q[1];
        let b = -p[0] / (PI * p[1]);
        let (z1, _) = degree1_roots(a, b);
        let bp = polyanalytic_bargmann(&ComplexPolynomial::new(p.clone()), &ComplexPolynomial::new(q.clone())).unwrap();
        let scale = q[1].norm() * p[1].norm();
        prop_assert!(bp.eval(z1).norm() < 1e-9 * scale.max(1.0));
        let report = guaranteed_zero_search(&bp, 96, 1e-9).unwrap();
        prop_assert!(!report.zeros.is_empty());
    }
}

#[test]
fn hurwitz_agrees_with_root_finder_on_random_integer_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut checked, mut stable) = (0, 0);
    while checked < 500 {
        let deg = rng.gen_range(1..=8);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-6..=12)).collect();
        c[0] = rng.gen_range(1..=4);
        let p = IntPolynomial::from_i64(&c);
        let Ok(re) = max_real_root_part(&p) else { continue };
        // Roots close to the axis are where float roots cannot decide.
        if re.abs() < 1e-6 {
            continue;
        }
        let verdict = routh_hurwitz(&p).unwrap().is_hurwitz;
        assert_eq!(verdict, re < 0.0, "{c:?}: max Re = {re}");
        stable += verdict as usize;
        checked += 1;
    }
    assert!(stable > 20, "battery should contain stable cases, got {stable}");
}

#[test]
fn hurwitz_agrees_on_products_of_known_factors() {
    // (z + 1)(z² + z + 1)(z + 3) is stable; flipping one sign makes it not.
    let stable = IntPolynomial::from_i64(&[1, 5, 8, 7, 3]);
    assert!(routh_hurwitz(&stable).unwrap().is_hurwitz);
    // (z − 1)(z² + z + 1)(z + 3)
    let unstable = IntPolynomial::from_i64(&[1, 3, 2, -1, -3]);
    assert!(!routh_hurwitz(&unstable).unwrap().is_hurwitz);
}

#[test]
fn step_closed_form_matches_oracle_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for mode in [StepMode::Monotone, StepMode::Lp] {
        let spec = AlphaStepSpec::fixture(mode, Alpha::parse("sqrt2/2").unwrap()).unwrap();
        let chi = FunctionSpec::unit_indicator().sampled().unwrap();
        for _ in 0..500 {
            let x: f64 = rng.gen_range(-4.0..4.0);
            let xi: f64 = rng.gen_range(-6.0..6.0);
            let f = spec.truncated(x - 1.0, x + 2.0).unwrap().sampled().unwrap();
            let want = oracle_stft(&f, &chi, PhaseSpacePoint::new(x, xi).unwrap(), 1e-12).unwrap();
            let got = stft_box_closed_form(&spec, x, xi).unwrap();
            assert!((got - want).norm() < 1e-9, "{mode:?} ({x}, {xi}): {got} vs {want}");
        }
    }
}

#[test]
fn every_zero_free_reference_has_a_formula_id() {
    for id in FormulaId::ZERO_FREE {
        assert_eq!(KernelPair::reference(id).formula_id(), id);
    }
    assert!(!FormulaId::ZERO_FREE.contains(&FormulaId::SymExp));
}

#[test]
fn an_family_is_stable_and_escapes_the_sufficient_test_from_degree_eight() {
    use tfzero::hurwitz::build_an;
    for n in 1..=30u32 {
        let r = routh_hurwitz(&build_an(n).unwrap()).unwrap();
        assert!(r.is_hurwitz, "A_{n}");
        assert!(r.necessary_ok, "A_{n}");
        assert_eq!(r.sufficient_ok, n < 8, "A_{n}");
    }
}
