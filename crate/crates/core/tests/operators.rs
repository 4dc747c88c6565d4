use esdg_mhd::operators::{interpolate_1d, lgl_nodes_weights, Operator1D};
use proptest::prelude::*;

#[test]
fn low_degree_nodes_and_weights_match_closed_forms() {
    let (x, w) = lgl_nodes_weights(2).unwrap();
    let expect = [(-1.0, 1.0 / 3.0), (0.0, 4.0 / 3.0), (1.0, 1.0 / 3.0)];
    for (k, (xe, we)) in expect.iter().enumerate() {
        assert!((x[k] - xe).abs() < 1e-15 && (w[k] - we).abs() < 1e-15);
    }
    let (x, w) = lgl_nodes_weights(3).unwrap();
    let a = (0.2f64).sqrt();
    let expect = [(-1.0, 1.0 / 6.0), (-a, 5.0 / 6.0), (a, 5.0 / 6.0), (1.0, 1.0 / 6.0)];
    for (k, (xe, we)) in expect.iter().enumerate() {
        assert!((x[k] - xe).abs() < 1e-15 && (w[k] - we).abs() < 1e-15);
    }
    // N = 4: interior nodes 0 and +-sqrt(3/7)
    let (x, w) = lgl_nodes_weights(4).unwrap();
    assert!((x[1] + (3.0f64 / 7.0).sqrt()).abs() < 1e-15);
    assert!((w[2] - 64.0 / 90.0).abs() < 1e-15);
}

#[test]
fn derivative_corner_entries() {
    for n in 1..=8 {
        let op = Operator1D::new(n).unwrap();
        let c = (n * (n + 1)) as f64 / 4.0;
        assert_eq!(op.d(0, 0), -c);
        assert_eq!(op.d(n, n), c);
        for i in 1..n {
            assert_eq!(op.d(i, i), 0.0);
        }
        // rows annihilate constants
        for i in 0..=n {
            let s: f64 = (0..=n).map(|j| op.d(i, j)).sum();
            assert!(s.abs() < 1e-12, "N={n} row {i}: {s}");
        }
    }
}

#[test]
fn sbp_property_for_all_supported_degrees() {
    for n in 1..=10 {
        let op = Operator1D::new(n).unwrap();
        assert!(op.sbp_residual() < 1e-13, "N={n}");
    }
}

proptest! {
    #[test]
    fn differentiates_polynomials_exactly(n in 1usize..=8, coeffs in prop::collection::vec(-2.0f64..2.0, 9)) {
        let op = Operator1D::new(n).unwrap();
        let c = &coeffs[..=n];
        let p = |x: f64| c.iter().rev().fold(0.0, |acc, a| acc * x + a);
        let dp = |x: f64| c.iter().enumerate().skip(1).map(|(k, a)| k as f64 * a * x.powi(k as i32 - 1)).sum::<f64>();
        let v: Vec<f64> = op.nodes.iter().map(|&x| p(x)).collect();
        let d = op.apply_d(&v);
        for (i, &x) in op.nodes.iter().enumerate() {
            prop_assert!((d[i] - dp(x)).abs() < 1e-11 * (1.0 + dp(x).abs()));
        }
    }

    #[test]
    fn interpolation_reproduces_polynomials(n in 1usize..=8, x in -1.0f64..1.0) {
        let op = Operator1D::new(n).unwrap();
        let p = |t: f64| t.powi(n as i32) - 0.5 * t + 0.25;
        let v: Vec<f64> = op.nodes.iter().map(|&t| p(t)).collect();
        prop_assert!((interpolate_1d(&v, &op.nodes, x) - p(x)).abs() < 1e-12);
    }

    #[test]
    fn weights_are_positive_and_sum_to_two(n in 1usize..=10) {
        let op = Operator1D::new(n).unwrap();
        prop_assert!(op.weights.iter().all(|&w| w > 0.0));
        prop_assert!((op.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }
}
