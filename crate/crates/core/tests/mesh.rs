use esdg_mhd::mesh::{sine_warp, Mesh, MeshConfig, MeshType};

/// Jacobian determinant of the sine warp, by hand.
fn warp_det(chi: [f64; 3]) -> f64 {
    use std::f64::consts::PI;
    let (s, c) = (chi.map(|x| (PI * x).sin()), chi.map(|x| (PI * x).cos()));
    let g = [
        0.1 * PI * c[0] * s[1] * s[2],
        0.1 * PI * s[0] * c[1] * s[2],
        0.1 * PI * s[0] * s[1] * c[2],
    ];
    // det(I + 1 g^T) = 1 + sum g
    1.0 + g[0] + g[1] + g[2]
}

#[test]
fn meshes_are_watertight_with_matching_surface_metrics() {
    for kind in [MeshType::A, MeshType::B] {
        for n in [2, 3, 5] {
            let mesh = Mesh::build(MeshConfig::of_type(kind, 3, n)).unwrap();
            assert!(mesh.watertight_residual() < 1e-14);
            let (ds, dn) = mesh.surface_mismatch();
            assert!(ds < 1e-13 && dn < 1e-12, "{kind:?} N={n}: {ds:e} {dn:e}");
            assert!(mesh.metric_identity_residual() < 1e-13);
        }
    }
}

#[test]
fn volume_is_the_box_volume() {
    // the warp displacement is periodic, so it moves no volume
    for (kind, vol) in [(MeshType::A, 1.0), (MeshType::B, 8.0)] {
        let mesh = Mesh::build(MeshConfig::of_type(kind, 4, 5)).unwrap();
        assert!((mesh.total_volume() - vol).abs() < 1e-6 * vol, "{kind:?}: {}", mesh.total_volume());
    }
}

#[test]
fn jacobian_converges_to_the_analytic_determinant() {
    let err = |n: usize| {
        let mesh = Mesh::build(MeshConfig::of_type(MeshType::A, 4, n)).unwrap();
        let h3 = (0.25f64 / 2.0).powi(3);
        let mut worst: f64 = 0.0;
        for el in &mesh.elements {
            for (x, j) in el.x.iter().zip(&el.jac) {
                // invert the warp by fixed point: chi = x - g(chi)
                let mut chi = *x;
                for _ in 0..60 {
                    let y = sine_warp(chi);
                    chi = [0, 1, 2].map(|d| chi[d] - (y[d] - x[d]));
                }
                worst = worst.max((j / h3 - warp_det(chi)).abs());
            }
        }
        worst
    };
    let (e3, e6) = (err(3), err(6));
    assert!(e6 < 1e-4 && e6 < 0.05 * e3, "{e3:e} {e6:e}");
}

#[test]
fn cartesian_nodes_fill_the_box() {
    let mesh = Mesh::build(MeshConfig::cartesian([2, 3, 1], [0.0; 3], [2.0, 3.0, 0.5], 2)).unwrap();
    assert_eq!(mesh.n_elements(), 6);
    assert_eq!(mesh.period(), [2.0, 3.0, 0.5]);
    let lo = mesh.elements.iter().flat_map(|e| e.x.iter()).fold([f64::MAX; 3], |m, x| [0, 1, 2].map(|d| m[d].min(x[d])));
    let hi = mesh.elements.iter().flat_map(|e| e.x.iter()).fold([f64::MIN; 3], |m, x| [0, 1, 2].map(|d| m[d].max(x[d])));
    assert_eq!(lo, [0.0; 3]);
    assert!((hi[0] - 2.0).abs() < 1e-15 && (hi[1] - 3.0).abs() < 1e-15 && (hi[2] - 0.5).abs() < 1e-15);
    assert!((mesh.total_volume() - 3.0).abs() < 1e-13);
}

#[test]
fn each_face_is_shared_once() {
    let mesh = Mesh::build(MeshConfig::of_type(MeshType::B, 3, 2)).unwrap();
    assert_eq!(mesh.faces.len(), 3 * mesh.n_elements());
    let mut hits = vec![0; mesh.faces.len()];
    for e in 0..mesh.n_elements() {
        for f in 0..6 {
            hits[mesh.face_id(e, f)] += 1;
        }
    }
    assert!(hits.iter().all(|&h| h == 2));
}
