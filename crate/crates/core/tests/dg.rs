use std::f64::consts::PI;

use esdg_mhd::dg::{
    compute_rhs, divergence_error, entropy_rate, node_weight, FluxMode, RhsConfig, SolutionField, Solver,
};
use esdg_mhd::mesh::{Mesh, MeshConfig, MeshType};
use esdg_mhd::physics::{entropy_variables_prim, prim_to_cons, PhysParams, Primitive, State};

fn smooth_prim(x: [f64; 3]) -> Primitive {
    let s = |k: f64, a: f64| (2.0 * PI * k * a).sin();
    let c = |k: f64, a: f64| (2.0 * PI * k * a).cos();
    Primitive {
        rho: 1.0 + 0.2 * s(1.0, x[0]) * c(1.0, x[1]),
        v: [0.3 * s(1.0, x[2]), -0.2 * c(1.0, x[0]), 0.1 * s(1.0, x[1] + x[2])],
        p: 1.0 + 0.3 * c(1.0, x[0] + x[2]),
        b: [0.5 + 0.2 * c(1.0, x[1]), 0.4 * s(1.0, x[2]), -0.3 + 0.1 * s(1.0, x[0])],
        psi: 0.05 * s(1.0, x[0] - x[1]),
    }
}

fn smooth_field(mesh: &Mesh, p: &PhysParams) -> SolutionField {
    SolutionField::from_fn(mesh, |x| prim_to_cons(&smooth_prim(x), p).unwrap())
}

#[test]
fn density_is_conserved_on_a_warped_mesh() {
    let mesh = Mesh::build(MeshConfig::of_type(MeshType::A, 2, 3)).unwrap();
    let p = PhysParams::new(5.0 / 3.0, 0.01, 0.01, 0.72).unwrap().with_ch(1.5);
    let field = smooth_field(&mesh, &p);
    let du = compute_rhs(&field, &mesh, &RhsConfig::new(FluxMode::Es, p), 0.0).unwrap();
    let np = mesh.nodes_per_element();
    let (mut total, mut scale) = (0.0, 0.0);
    for (e, el) in mesh.elements.iter().enumerate() {
        for i in 0..np {
            let w = el.jac[i] * node_weight(&mesh.op, i);
            total += w * du.data[e * np + i][0];
            scale += w * du.data[e * np + i][0].abs();
        }
    }
    assert!(total.abs() < 1e-13 * scale, "{total:e} vs {scale:e}");
}

#[test]
fn entropy_budget_on_warped_mesh_with_smooth_data() {
    let mesh = Mesh::build(MeshConfig::of_type(MeshType::B, 2, 4)).unwrap();
    let ideal = PhysParams::ideal(5.0 / 3.0).with_ch(1.2);
    let field = smooth_field(&mesh, &ideal);
    let ec = entropy_rate(&field, &mesh, &RhsConfig::new(FluxMode::Ec, ideal), 0.0).unwrap();
    assert!(ec.abs() < 1e-12, "{ec:e}");
    let es = entropy_rate(&field, &mesh, &RhsConfig::new(FluxMode::Es, ideal), 0.0).unwrap();
    assert!(es < 0.0);
    let visc = PhysParams::new(5.0 / 3.0, 0.02, 0.03, 0.72).unwrap().with_ch(1.2);
    let br1 = entropy_rate(&field, &mesh, &RhsConfig::new(FluxMode::Ec, visc), 0.0).unwrap();
    assert!(br1 < 0.0);
}

#[test]
fn glm_damping_source() {
    let mesh = Mesh::build(MeshConfig::of_type(MeshType::A, 2, 2)).unwrap();
    let p = PhysParams::ideal(1.4).with_ch(0.7).with_alpha(2.5);
    let q = Primitive { rho: 1.0, v: [0.1, 0.2, 0.3], p: 1.0, b: [0.3, 0.2, 0.1], psi: 0.4 };
    let field = SolutionField::from_fn(&mesh, |_| prim_to_cons(&q, &p).unwrap());
    let du = compute_rhs(&field, &mesh, &RhsConfig::new(FluxMode::Es, p), 0.0).unwrap();
    for d in &du.data {
        assert!((d[8] + 2.5 * 0.4).abs() < 1e-12);
        for k in 0..8 {
            assert!(d[k].abs() < 1e-12);
        }
    }
    // switching GLM off removes the damping
    let mut cfg = RhsConfig::new(FluxMode::Es, p);
    cfg.glm = false;
    let du = compute_rhs(&field, &mesh, &cfg, 0.0).unwrap();
    assert!(du.data.iter().all(|d| d[8].abs() < 1e-12));
}

#[test]
fn lifted_gradient_converges() {
    let p = PhysParams::new(1.4, 0.01, 0.01, 0.72).unwrap();
    let err = |n: usize| {
        let mesh = Mesh::build(MeshConfig::of_type(MeshType::A, 3, n)).unwrap();
        let field = smooth_field(&mesh, &p);
        let mut solver = Solver::new(&mesh, RhsConfig::new(FluxMode::Es, p));
        let g = solver.lift_gradients(&field.data).unwrap();
        let np = mesh.nodes_per_element();
        let mut worst: f64 = 0.0;
        for (e, el) in mesh.elements.iter().enumerate() {
            for i in 0..np {
                let x = el.x[i];
                for d in 0..3 {
                    let h = 1e-5;
                    let (mut a, mut b) = (x, x);
                    a[d] += h;
                    b[d] -= h;
                    let fd = (entropy_variables_prim(&smooth_prim(a), p.gamma)
                        - entropy_variables_prim(&smooth_prim(b), p.gamma))
                        * (0.5 / h);
                    worst = worst.max((g[e * np + i][d] - fd).max_abs());
                }
            }
        }
        worst
    };
    let (e3, e5) = (err(3), err(5));
    assert!(e5 < 0.25 * e3, "{e3:e} {e5:e}");
}

#[test]
fn parallel_and_serial_rhs_agree_bitwise() {
    let mesh = Mesh::build(MeshConfig::of_type(MeshType::B, 3, 3)).unwrap();
    let p = PhysParams::new(5.0 / 3.0, 0.01, 0.02, 0.72).unwrap().with_ch(1.5);
    let field = smooth_field(&mesh, &p);
    let run = |par: bool| {
        let mut s = Solver::new(&mesh, RhsConfig::new(FluxMode::Es, p)).with_parallel(par);
        let mut du = vec![State::ZERO; field.data.len()];
        s.rhs(&field.data, 0.0, &mut du).unwrap();
        du
    };
    assert_eq!(run(false), run(true));
}

#[test]
fn divergence_of_a_curl_is_small() {
    // B = curl A with A = (sin 2 pi y, sin 2 pi z, sin 2 pi x) / (2 pi)
    let mesh = Mesh::build(MeshConfig::of_type(MeshType::A, 3, 5)).unwrap();
    let p = PhysParams::ideal(1.4);
    let solenoidal = SolutionField::from_fn(&mesh, |x| {
        let c = |a: f64| (2.0 * PI * a).cos();
        let q = Primitive { rho: 1.0, v: [0.0; 3], p: 1.0, b: [-c(x[2]), -c(x[0]), -c(x[1])], psi: 0.0 };
        prim_to_cons(&q, &p).unwrap()
    });
    let bumpy = SolutionField::from_fn(&mesh, |x| {
        let q = Primitive { rho: 1.0, v: [0.0; 3], p: 1.0, b: [(2.0 * PI * x[0]).sin(), 0.0, 0.0], psi: 0.0 };
        prim_to_cons(&q, &p).unwrap()
    });
    let (a, b) = (divergence_error(&solenoidal.data, &mesh), divergence_error(&bumpy.data, &mesh));
    assert!(a < 1e-2 * b, "{a:e} vs {b:e}");
}
