use esdg_mhd::cases::{blast_wave_state, CaseKind, CaseSpec};
use esdg_mhd::dg::{compute_rhs, entropy_rate, total_entropy, FluxMode, RhsConfig, SolutionField};
use esdg_mhd::mesh::{Mesh, MeshConfig, MeshType};
use esdg_mhd::physics::{prim_to_cons, PhysParams, Primitive};

fn max_abs(f: &SolutionField) -> f64 {
    f.data.iter().map(|s| s.max_abs()).fold(0.0, f64::max)
}

#[test]
fn free_stream_all_terms() {
    for kind in [MeshType::A, MeshType::B] {
        for n in [3, 4] {
            let mesh = Mesh::build(MeshConfig::of_type(kind, 4, n)).unwrap();
            let p = PhysParams::new(5.0 / 3.0, 0.01, 0.02, 0.72).unwrap().with_ch(2.0).with_alpha(0.0);
            let q = Primitive { rho: 1.3, v: [0.4, -0.2, 0.3], p: 0.8, b: [0.5, -0.7, 0.2], psi: 0.1 };
            let u0 = prim_to_cons(&q, &p).unwrap();
            let field = SolutionField::from_fn(&mesh, |_| u0);
            let cfg = RhsConfig::new(FluxMode::Es, p);
            let du = compute_rhs(&field, &mesh, &cfg, 0.0).unwrap();
            let r = max_abs(&du);
            println!("free stream {:?} N={n}: {r:e} metric {:e}", kind, mesh.metric_identity_residual());
            assert!(r < 1e-11);
        }
    }
}

#[test]
fn semi_discrete_entropy_blast() {
    let mesh = Mesh::build(MeshConfig::of_type(MeshType::B, 3, 3)).unwrap();
    let field = SolutionField::from_fn(&mesh, blast_wave_state);
    let p = PhysParams::ideal(5.0 / 3.0).with_ch(2.0);
    let s = total_entropy(&field.data, &mesh, &p).unwrap();
    let ec = entropy_rate(&field, &mesh, &RhsConfig::new(FluxMode::Ec, p), 0.0).unwrap();
    let es = entropy_rate(&field, &mesh, &RhsConfig::new(FluxMode::Es, p), 0.0).unwrap();
    let pv = PhysParams::new(5.0 / 3.0, 0.01, 0.01, 0.72).unwrap().with_ch(2.0);
    let ecv = entropy_rate(&field, &mesh, &RhsConfig::new(FluxMode::Ec, pv), 0.0).unwrap();
    println!("S {s:e} ec {ec:e} es {es:e} ec+visc {ecv:e}");
    assert!(ec.abs() <= 1e-10 * s.abs());
    assert!(es <= 1e-10 * s.abs());
    assert!(ecv <= 1e-10 * s.abs());
    let _ = CaseSpec::defaults(CaseKind::BlastWave);
}
