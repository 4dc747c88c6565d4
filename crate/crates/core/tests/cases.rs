use esdg_mhd::cases::{
    blast_wave_state, eoc, gaussian_pulse_state, l2_error, manufactured_residual, manufactured_state,
    orszag_tang_state, CaseKind, CaseSpec, BLAST_CENTER,
};
use esdg_mhd::mesh::Mesh;
use esdg_mhd::physics::{
    advective_flux_prim, cons_to_prim, powell_phi, viscous_flux_direct, PhysParams, PrimGradient, State, NVAR,
};

fn prim_vec(u: &State, p: &PhysParams) -> [f64; NVAR] {
    let q = cons_to_prim(u, p).unwrap();
    [q.rho, q.v[0], q.v[1], q.v[2], q.p, q.b[0], q.b[1], q.b[2], q.psi]
}

/// `F_adv - F_visc` at `x` with gradients from central differences.
fn total_flux(x: [f64; 3], t: f64, p: &PhysParams, h: f64) -> [State; 3] {
    let u = manufactured_state(x, t);
    let adv = advective_flux_prim(&cons_to_prim(&u, p).unwrap(), p).total();
    let mut g = PrimGradient::default();
    for d in 0..3 {
        let (mut a, mut b) = (x, x);
        a[d] += h;
        b[d] -= h;
        let (pa, pb) = (prim_vec(&manufactured_state(a, t), p), prim_vec(&manufactured_state(b, t), p));
        for k in 0..NVAR {
            g.0[k][d] = (pa[k] - pb[k]) / (2.0 * h);
        }
    }
    let visc = viscous_flux_direct(&u, &g, p).unwrap();
    [0, 1, 2].map(|d| adv[d] - visc[d])
}

/// `u_t + div(F_adv - F_visc) + Powell term`, all by finite differences.
#[test]
fn manufactured_residual_matches_finite_differences() {
    let p = PhysParams::new(2.0, 0.005, 0.005, 0.72).unwrap();
    let (h, hv) = (1e-4, 1e-4);
    for (x, t) in [([0.1, 0.2, 0.3], 0.0), ([0.7, -0.4, 0.05], 0.37), ([1.3, 0.9, -0.6], 0.81)] {
        let mut r = (manufactured_state(x, t + h) - manufactured_state(x, t - h)) * (0.5 / h);
        let mut div_b = 0.0;
        for d in 0..3 {
            let (mut a, mut b) = (x, x);
            a[d] += h;
            b[d] -= h;
            let df = (total_flux(a, t, &p, hv)[d] - total_flux(b, t, &p, hv)[d]) * (0.5 / h);
            r += df;
            div_b += (manufactured_state(a, t)[5 + d] - manufactured_state(b, t)[5 + d]) / (2.0 * h);
        }
        assert!(div_b.abs() < 1e-8);
        r += powell_phi(&manufactured_state(x, t)) * div_b;
        let exact = manufactured_residual(x, t, &p).unwrap();
        for k in 0..NVAR {
            assert!((r[k] - exact[k]).abs() < 1e-5 * (1.0 + exact[k].abs()), "x={x:?} k={k}: {} vs {}", r[k], exact[k]);
        }
    }
}

#[test]
fn initial_states_are_admissible_and_shaped() {
    let p = PhysParams::ideal(5.0 / 3.0);
    let centre = cons_to_prim(&blast_wave_state(BLAST_CENTER), &p).unwrap();
    assert!((centre.p - 0.9).abs() < 1e-3 && (centre.rho - 1.2).abs() < 1e-3);
    let far = cons_to_prim(&blast_wave_state([1.3, 1.2, 1.1]), &p).unwrap();
    assert!((far.p - 0.3).abs() < 1e-10);
    let pulse = gaussian_pulse_state([0.5; 3]);
    assert_eq!(pulse[5], 1.0);
    assert!(gaussian_pulse_state([0.0; 3])[5] < 1e-50);
    let ot = cons_to_prim(&orszag_tang_state([0.25, 0.0, 0.0]), &p).unwrap();
    assert!((ot.v[1] - 1.0).abs() < 1e-15);
}

#[test]
fn l2_error_of_exact_field_is_zero_and_eoc_of_ideal_sequence_is_exact() {
    let spec = CaseSpec { elements: 2, ..CaseSpec::defaults(CaseKind::Manufactured) };
    let mesh = Mesh::build(spec.mesh_config()).unwrap();
    let field = spec.initial_field(&mesh);
    let e = l2_error(&field, &mesh, |x| manufactured_state(x, 0.0), &spec.params().unwrap()).unwrap();
    assert!(e.iter().all(|&v| v == 0.0));
    let (rates, avg) = eoc(&[1.0, 1.0 / 16.0, 1.0 / 256.0]).unwrap();
    assert_eq!(rates, vec![4.0, 4.0]);
    assert_eq!(avg, 4.0);
}

#[test]
fn case_names_round_trip() {
    for k in [CaseKind::Manufactured, CaseKind::BlastWave, CaseKind::GaussianPulse, CaseKind::OrszagTang] {
        assert_eq!(CaseKind::parse(k.name()), Some(k));
    }
    assert_eq!(CaseKind::parse("sod"), None);
}
