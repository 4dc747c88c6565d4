//! Pointwise properties of the two-point flux and the viscous matrices on a
//! handful of random states.

use esdg_mhd::numflux::{ec_flux_dot, NodePrim};
use esdg_mhd::physics::{
    entropy_flux_potentials, entropy_variables_prim, k_matrices, prim_to_cons, PhysParams, Primitive,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> esdg_mhd::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut prim = || Primitive {
        rho: rng.gen_range(0.5..2.0),
        v: [0; 3].map(|_| rng.gen_range(-1.0..1.0)),
        p: rng.gen_range(0.5..2.0),
        b: [0; 3].map(|_| rng.gen_range(-1.0..1.0)),
        psi: rng.gen_range(-0.5..0.5),
    };
    let p = PhysParams::new(5.0 / 3.0, 0.01, 0.02, 0.72)?.with_ch(1.0);
    for _ in 0..5 {
        let (a, b) = (prim(), prim());
        let (ua, ub) = (prim_to_cons(&a, &p)?, prim_to_cons(&b, &p)?);
        let n = [1.0, 0.0, 0.0];
        let f = ec_flux_dot(&NodePrim::from_prim(&a), &NodePrim::from_prim(&b), &n, p.gamma, p.ch);
        let dw = entropy_variables_prim(&b, p.gamma) - entropy_variables_prim(&a, p.gamma);
        let psi = |u| -> esdg_mhd::Result<f64> {
            let q = entropy_flux_potentials(u, &p)?;
            Ok(q[0][0] + q[1][0] + q[2][0])
        };
        let theta = |q: &Primitive| q.rho / q.p * (q.v[0] * q.b[0] + q.v[1] * q.b[1] + q.v[2] * q.b[2]);
        let residual = dw.dot(&f) - (psi(&ub)? - psi(&ua)?) + 0.5 * (a.b[0] + b.b[0]) * (theta(&b) - theta(&a));
        let k = k_matrices(&entropy_variables_prim(&a, p.gamma), &p)?.full();
        let asym = (0..27).flat_map(|r| (0..27).map(move |c| (r, c))).fold(0.0f64, |m, (r, c)| m.max((k[r][c] - k[c][r]).abs()));
        println!("EC condition residual {residual:+.2e}   max |K - K^T| {asym:.1e}");
    }
    Ok(())
}
