use esdg_mhd::physics::{
    advective_flux_normal, cons_to_prim, entropy_function, entropy_variables, entropy_variables_prim, k_matrices,
    max_fast_speed, prim_to_cons, viscous_flux_direct, viscous_flux_entropy, wave_speeds_prim, PhysParams,
    PrimGradient, Primitive, State, NVAR,
};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn prim_strategy() -> impl Strategy<Value = Primitive> {
    (
        0.2f64..3.0,
        prop::array::uniform3(-1.5f64..1.5),
        0.2f64..3.0,
        prop::array::uniform3(-1.5f64..1.5),
        -0.5f64..0.5,
    )
        .prop_map(|(rho, v, p, b, psi)| Primitive { rho, v, p, b, psi })
}

fn fd_entropy_gradient(u: &State, params: &PhysParams) -> State {
    let mut g = State::ZERO;
    for k in 0..NVAR {
        let h = 1e-5 * (1.0 + u[k].abs());
        let (mut a, mut b) = (*u, *u);
        a.0[k] += h;
        b.0[k] -= h;
        g.0[k] = (entropy_function(&a, params).unwrap() - entropy_function(&b, params).unwrap()) / (2.0 * h);
    }
    g
}

#[test]
fn heat_conductivity_relation() {
    let p = PhysParams::new(2.0, 0.005, 0.005, 0.72).unwrap();
    assert!((p.kappa_over_r - 0.005 * 2.0 / 0.72).abs() < 1e-16);
    assert_eq!(PhysParams::new(1.4, 0.0, 0.1, 0.72).unwrap().kappa_over_r, 0.0);
}

#[test]
fn shear_layer_viscous_flux_by_hand() {
    // v1 = y, B3 = x, everything else uniform
    let params = PhysParams::new(5.0 / 3.0, 0.1, 0.2, 0.72).unwrap();
    let q = Primitive { rho: 1.0, v: [0.5, 0.0, 0.0], p: 1.0, b: [0.0, 0.0, 2.0], psi: 0.0 };
    let mut g = PrimGradient::default();
    g.0[1][1] = 1.0;
    g.0[7][0] = 1.0;
    let f = viscous_flux_direct(&prim_to_cons(&q, &params).unwrap(), &g, &params).unwrap();
    // tau_12 = mu, tau_11 = 0
    assert!((f[1][1] - 0.1).abs() < 1e-15 && (f[0][2] - 0.1).abs() < 1e-15);
    assert!(f[0][1].abs() < 1e-15);
    // induction: eta (dB3/dx - dB1/dz) in the x-flux of B3, minus that in the z-flux of B1
    assert!((f[0][7] - 0.2).abs() < 1e-15 && (f[2][5] + 0.2).abs() < 1e-15);
    // curl B = (0, -1, 0), (curl B x B)_1 = -2; energy x-flux = v1 tau_11 - eta (-2)
    assert!((f[0][4] - 0.4).abs() < 1e-15);
    // energy y-flux = v1 tau_12
    assert!((f[1][4] - 0.05).abs() < 1e-15);
}

#[test]
fn flux_jacobian_spectrum_matches_fast_speed() {
    let params = PhysParams::ideal(5.0 / 3.0);
    let q = Primitive { rho: 1.3, v: [0.4, -0.3, 0.2], p: 0.7, b: [0.8, 0.5, -0.6], psi: 0.0 };
    let n = [0.6, 0.0, 0.8];
    let u = prim_to_cons(&q, &params).unwrap();
    let flux = |u: &State| advective_flux_normal(&cons_to_prim(u, &params).unwrap(), &n, &params);
    let jac = DMatrix::from_fn(NVAR, NVAR, |r, c| {
        let h = 1e-6;
        let (mut a, mut b) = (u, u);
        a.0[c] += h;
        b.0[c] -= h;
        (flux(&a)[r] - flux(&b)[r]) / (2.0 * h)
    });
    let largest = jac.complex_eigenvalues().iter().fold(0.0f64, |m, z| m.max(z.re.hypot(z.im)));
    let ws = wave_speeds_prim(&q, &n, &params);
    let vn = 0.4 * 0.6 + 0.2 * 0.8;
    assert!((largest - (vn + ws.fast)).abs() < 1e-6, "{largest} vs {}", vn + ws.fast);
    assert!(ws.fast <= max_fast_speed(&q, params.gamma) + 1e-15);
}

proptest! {
    #[test]
    fn primitive_round_trip(q in prim_strategy()) {
        let params = PhysParams::ideal(1.4);
        let back = cons_to_prim(&prim_to_cons(&q, &params).unwrap(), &params).unwrap();
        prop_assert!((back.p - q.p).abs() < 1e-12 * (1.0 + q.p));
        prop_assert!((back.v[1] - q.v[1]).abs() < 1e-13);
    }

    #[test]
    fn entropy_variables_are_the_entropy_gradient(q in prim_strategy()) {
        let params = PhysParams::ideal(5.0 / 3.0);
        let u = prim_to_cons(&q, &params).unwrap();
        let w = entropy_variables(&u, &params).unwrap();
        let fd = fd_entropy_gradient(&u, &params);
        for k in 0..NVAR {
            prop_assert!((w[k] - fd[k]).abs() < 1e-6 * (1.0 + w[k].abs()), "component {}", k);
        }
    }

    #[test]
    fn entropy_is_strictly_convex(q in prim_strategy()) {
        let params = PhysParams::ideal(5.0 / 3.0);
        let u = prim_to_cons(&q, &params).unwrap();
        // dw/du by differencing w
        let h = DMatrix::from_fn(NVAR, NVAR, |r, c| {
            let e = 1e-6 * (1.0 + u[c].abs());
            let (mut a, mut b) = (u, u);
            a.0[c] += e;
            b.0[c] -= e;
            (entropy_variables(&a, &params).unwrap()[r] - entropy_variables(&b, &params).unwrap()[r]) / (2.0 * e)
        });
        let asym = (&h - h.transpose()).amax();
        prop_assert!(asym < 1e-5 * h.amax());
        let sym = (&h + h.transpose()) * 0.5;
        let min = sym.symmetric_eigen().eigenvalues.min();
        prop_assert!(min > 0.0);
    }

    /// `K grad w` with `grad w` obtained by differencing `w` along a linear
    /// primitive field, against the flux written in primitive gradients.
    #[test]
    fn k_times_grad_w_is_the_viscous_flux(q in prim_strategy(), slopes in prop::array::uniform27(-1.0f64..1.0)) {
        let params = PhysParams::new(5.0 / 3.0, 0.03, 0.02, 0.72).unwrap();
        let mut g = PrimGradient::default();
        for r in 0..NVAR {
            for d in 0..3 {
                g.0[r][d] = slopes[(r * 3 + d) % 27];
            }
        }
        let at = |d: usize, s: f64| {
            let mut x = q;
            x.rho += s * g.0[0][d];
            x.p += s * g.0[4][d];
            for k in 0..3 {
                x.v[k] += s * g.0[1 + k][d];
                x.b[k] += s * g.0[5 + k][d];
            }
            x.psi += s * g.0[8][d];
            entropy_variables_prim(&x, params.gamma)
        };
        let h = 1e-5;
        let gw = [0, 1, 2].map(|d| (at(d, h) - at(d, -h)) * (0.5 / h));
        let w = entropy_variables_prim(&q, params.gamma);
        let via_k = k_matrices(&w, &params).unwrap().apply(&gw);
        let fast = viscous_flux_entropy(&w, &gw, &params);
        let direct = viscous_flux_direct(&prim_to_cons(&q, &params).unwrap(), &g, &params).unwrap();
        let scale = direct.iter().fold(1e-3f64, |m, s| m.max(s.max_abs()));
        for d in 0..3 {
            prop_assert!((via_k[d] - direct[d]).max_abs() < 1e-7 * scale);
            prop_assert!((fast[d] - via_k[d]).max_abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn viscous_dissipation_is_non_negative(q in prim_strategy(), gv in prop::array::uniform27(-2.0f64..2.0)) {
        let params = PhysParams::new(1.4, 0.02, 0.05, 0.72).unwrap();
        let w = entropy_variables_prim(&q, params.gamma);
        let gw = [0, 1, 2].map(|d| {
            let mut s = State::ZERO;
            for k in 0..NVAR {
                s.0[k] = gv[d * 9 + k];
            }
            s
        });
        let f = viscous_flux_entropy(&w, &gw, &params);
        let quad: f64 = (0..3).map(|d| gw[d].dot(&f[d])).sum();
        prop_assert!(quad >= -1e-12 * gv.iter().map(|x| x * x).sum::<f64>());
    }
}
