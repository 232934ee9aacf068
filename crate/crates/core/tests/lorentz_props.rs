//! Property tests for the Minkowski inner product and causal classification.

use curvelab::lorentz::CAUSAL_TOL;
use curvelab::{causal_character, minkowski_dot, on_hyperbolic_sphere, pseudo_norm, CausalCharacter, Vec4};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -1e3..1e3f64
}

fn vec4() -> impl Strategy<Value = Vec4> {
    (coord(), coord(), coord(), coord()).prop_map(|(a, b, c, d)| Vec4::new(a, b, c, d))
}

/// Small integers: the inner product is exact on these.
fn int_vec4() -> impl Strategy<Value = Vec4> {
    (-20i32..=20, -20i32..=20, -20i32..=20, -20i32..=20)
        .prop_map(|(a, b, c, d)| Vec4::new(a as f64, b as f64, c as f64, d as f64))
}

/// `Σ |v_i w_i|`, the scale against which rounding in `g(v, w)` is measured.
fn abs_scale(v: Vec4, w: Vec4) -> f64 {
    (0..4).map(|i| (v[i] * w[i]).abs()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn dot_is_symmetric(v in vec4(), w in vec4()) {
        prop_assert_eq!(minkowski_dot(v, w), minkowski_dot(w, v));
    }

    #[test]
    fn dot_is_bilinear(u in vec4(), v in vec4(), w in vec4(), a in -10.0..10.0f64, b in -10.0..10.0f64) {
        let lhs = minkowski_dot(u * a + v * b, w);
        let rhs = a * minkowski_dot(u, w) + b * minkowski_dot(v, w);
        let scale = a.abs() * abs_scale(u, w) + b.abs() * abs_scale(v, w);
        prop_assert!((lhs - rhs).abs() <= 4.0 * f64::EPSILON * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn pseudo_norm_squares_to_the_quadratic_form(v in vec4()) {
        let n = pseudo_norm(v);
        let g = minkowski_dot(v, v).abs();
        prop_assert!((n * n - g).abs() <= 2.0 * f64::EPSILON * g.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn exact_classification_is_a_partition(v in int_vec4()) {
        prop_assume!(v != Vec4::ZERO);
        let g = minkowski_dot(v, v);
        let c = causal_character(v, 0.0);
        let expected = if g > 0.0 {
            CausalCharacter::Spacelike
        } else if g < 0.0 {
            CausalCharacter::Timelike
        } else {
            CausalCharacter::Null
        };
        prop_assert_eq!(c, expected);
    }

    #[test]
    fn classification_is_scale_invariant(v in vec4(), k in 1e-6..1e6f64) {
        prop_assert_eq!(causal_character(v, CAUSAL_TOL), causal_character(v * k, CAUSAL_TOL));
    }

    #[test]
    fn boosted_points_stay_on_the_unit_sphere(phi in -5.0..5.0f64, th in -3.0..3.0f64, r in 0.0..3.0f64) {
        let p = Vec4::new(r.cosh(), r.sinh() * th.cos(), r.sinh() * th.sin() * phi.cos(), r.sinh() * th.sin() * phi.sin());
        prop_assert!(on_hyperbolic_sphere(p, 1e-12 * p.euclid_norm_sq().max(1.0)));
    }
}

#[test]
fn basis_reproduces_the_signature() {
    let sig = [-1.0, 1.0, 1.0, 1.0];
    for i in 0..4 {
        for j in 0..4 {
            let want = if i == j { sig[i] } else { 0.0 };
            assert_eq!(minkowski_dot(Vec4::e(i), Vec4::e(j)), want);
        }
    }
}

#[test]
fn classification_examples() {
    assert_eq!(causal_character(Vec4::new(0.0, 1.0, 0.0, 0.0), CAUSAL_TOL), CausalCharacter::Spacelike);
    assert_eq!(causal_character(Vec4::new(1.0, 0.0, 0.0, 0.0), CAUSAL_TOL), CausalCharacter::Timelike);
    assert_eq!(causal_character(Vec4::new(1.0, 1.0, 0.0, 0.0), CAUSAL_TOL), CausalCharacter::Null);
    assert_eq!(causal_character(Vec4::ZERO, CAUSAL_TOL), CausalCharacter::Spacelike);
}

#[test]
fn pseudo_norm_examples() {
    assert_eq!(pseudo_norm(Vec4::new(0.0, 3.0, 4.0, 0.0)), 5.0);
    assert_eq!(pseudo_norm(Vec4::new(2.0, 0.0, 0.0, 0.0)), 2.0);
    assert_eq!(pseudo_norm(Vec4::new(1.0, 1.0, 0.0, 0.0)), 0.0);
}

#[test]
fn hyperbolic_sphere_examples() {
    let y = Vec4::new(1f64.cosh(), 0.0, 1f64.sinh(), 0.0);
    assert!((minkowski_dot(y, y) + 1.0).abs() < 1e-15);
    assert!(on_hyperbolic_sphere(Vec4::e(0), 0.0));
    assert!(on_hyperbolic_sphere(y, 1e-12));
    assert!(!on_hyperbolic_sphere(Vec4::e(1), 1e-12));
}
