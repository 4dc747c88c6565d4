//! Two-point entropy-conservative fluxes, the Rusanov-stabilized surface flux,
//! BR1 averages and the non-conservative surface couplings.

use crate::error::{Error, Result};
use crate::physics::{
    cons_to_prim, entropy_variables, glm_phi, powell_phi, BlockVec3, PhysParams, Primitive,
    SplitFlux, State,
};

/// Primitive values plus the derived quantities every two-point flux needs.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NodePrim {
    pub rho: f64,
    pub v: [f64; 3],
    pub p: f64,
    pub b: [f64; 3],
    pub psi: f64,
    pub beta: f64,
    pub ln_rho: f64,
    pub ln_beta: f64,
    pub v2: f64,
    pub b2: f64,
    pub vb: f64,
}

impl NodePrim {
    pub fn from_prim(q: &Primitive) -> Self {
        let beta = 0.5 * q.rho / q.p;
        Self {
            rho: q.rho,
            v: q.v,
            p: q.p,
            b: q.b,
            psi: q.psi,
            beta,
            ln_rho: q.rho.ln(),
            ln_beta: beta.ln(),
            v2: dot3(&q.v, &q.v),
            b2: dot3(&q.b, &q.b),
            vb: dot3(&q.v, &q.b),
        }
    }

    pub fn from_state(u: &State, params: &PhysParams) -> Result<Self> {
        Ok(Self::from_prim(&cons_to_prim(u, params)?))
    }

    pub fn prim(&self) -> Primitive {
        Primitive {
            rho: self.rho,
            v: self.v,
            p: self.p,
            b: self.b,
            psi: self.psi,
        }
    }
}

#[inline]
fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Logarithmic mean with precomputed logarithms.
#[inline]
pub fn log_mean_with_logs(a: f64, b: f64, ln_a: f64, ln_b: f64) -> f64 {
    let f = (a - b) / (a + b);
    let u = f * f;
    if u < 1e-4 {
        let series = 1.0 + u * (1.0 / 3.0 + u * (0.2 + u / 7.0));
        0.5 * (a + b) / series
    } else {
        (a - b) / (ln_a - ln_b)
    }
}

/// `(b - a) / (ln b - ln a)`, stable as `a -> b`.
pub fn log_mean(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::InvalidInput(format!(
            "logarithmic mean needs positive arguments, got {a} and {b}"
        )));
    }
    Ok(log_mean_with_logs(a, b, a.ln(), b.ln()))
}

/// Entropy-conservative flux contracted with a spatial vector `n`:
/// `sum_d n_d F_d^ec(l, r)`. `n` need not be unit length; the volume kernel
/// passes averaged contravariant metric vectors.
#[inline]
pub fn ec_flux_dot(l: &NodePrim, r: &NodePrim, n: &[f64; 3], gamma: f64, ch: f64) -> State {
    let rho_ln = log_mean_with_logs(l.rho, r.rho, l.ln_rho, r.ln_rho);
    let beta_ln = log_mean_with_logs(l.beta, r.beta, l.ln_beta, r.ln_beta);
    let rho_a = 0.5 * (l.rho + r.rho);
    let beta_a = 0.5 * (l.beta + r.beta);
    let v = [
        0.5 * (l.v[0] + r.v[0]),
        0.5 * (l.v[1] + r.v[1]),
        0.5 * (l.v[2] + r.v[2]),
    ];
    let b = [
        0.5 * (l.b[0] + r.b[0]),
        0.5 * (l.b[1] + r.b[1]),
        0.5 * (l.b[2] + r.b[2]),
    ];
    let psi = 0.5 * (l.psi + r.psi);
    let p_bar = rho_a / (2.0 * beta_a);
    let vv = 0.5 * (l.v2 + r.v2);
    let bb = 0.5 * (l.b2 + r.b2);
    let vn = dot3(&v, n);
    let bn = dot3(&b, n);
    let ptot = p_bar + 0.5 * bb;

    let mut f = State::ZERO;
    let mass = rho_ln * vn;
    f[0] = mass;
    let mut e = mass * (0.5 / ((gamma - 1.0) * beta_ln) - 0.5 * vv);
    for k in 0..3 {
        let m = mass * v[k] - bn * b[k] + ptot * n[k];
        let bk = vn * b[k] - v[k] * bn + ch * psi * n[k];
        f[1 + k] = m;
        f[5 + k] = bk;
        e += m * v[k] + bk * b[k];
    }
    let fpsi = ch * bn;
    f[8] = fpsi;
    let vnb2 = 0.5 * (dot3(&l.v, n) * l.b2 + dot3(&r.v, n) * r.b2);
    let vb = 0.5 * (l.vb + r.vb);
    let bnpsi = 0.5 * (dot3(&l.b, n) * l.psi + dot3(&r.b, n) * r.psi);
    e += fpsi * psi - 0.5 * vnb2 + bn * vb - ch * bnpsi;
    f[4] = e;
    f
}

const UNIT: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// Entropy-conservative flux in all three coordinate directions.
pub fn ec_flux(ul: &State, ur: &State, params: &PhysParams) -> Result<BlockVec3> {
    let l = NodePrim::from_state(ul, params)?;
    let r = NodePrim::from_state(ur, params)?;
    Ok([0, 1, 2].map(|d| ec_flux_dot(&l, &r, &UNIT[d], params.gamma, params.ch)))
}

/// Entropy-conservative flux split into its Euler, ideal MHD and GLM parts,
/// each contracted with `n`. The three parts sum to [`ec_flux_dot`].
pub fn ec_flux_split_dot(l: &NodePrim, r: &NodePrim, n: &[f64; 3], gamma: f64, ch: f64) -> [State; 3] {
    let avg = |a: f64, b: f64| 0.5 * (a + b);
    let rho_ln = log_mean_with_logs(l.rho, r.rho, l.ln_rho, r.ln_rho);
    let beta_ln = log_mean_with_logs(l.beta, r.beta, l.ln_beta, r.ln_beta);
    let v = [0, 1, 2].map(|k| avg(l.v[k], r.v[k]));
    let b = [0, 1, 2].map(|k| avg(l.b[k], r.b[k]));
    let psi = avg(l.psi, r.psi);
    let p_bar = avg(l.rho, r.rho) / (2.0 * avg(l.beta, r.beta));
    let vn = dot3(&v, n);
    let bn = dot3(&b, n);

    let mut euler = State::ZERO;
    euler[0] = rho_ln * vn;
    let mut energy = euler[0] * (0.5 / ((gamma - 1.0) * beta_ln) - 0.5 * avg(l.v2, r.v2));
    for k in 0..3 {
        euler[1 + k] = euler[0] * v[k] + p_bar * n[k];
        energy += euler[1 + k] * v[k];
    }
    euler[4] = energy;

    let mut mhd = State::ZERO;
    let bb = avg(l.b2, r.b2);
    let mut energy = 0.0;
    for k in 0..3 {
        mhd[1 + k] = -bn * b[k] + 0.5 * bb * n[k];
        mhd[5 + k] = vn * b[k] - v[k] * bn;
        energy += mhd[1 + k] * v[k] + mhd[5 + k] * b[k];
    }
    energy += -0.5 * avg(dot3(&l.v, n) * l.b2, dot3(&r.v, n) * r.b2) + bn * avg(l.vb, r.vb);
    mhd[4] = energy;

    let mut glm = State::ZERO;
    for k in 0..3 {
        glm[5 + k] = ch * psi * n[k];
    }
    glm[8] = ch * bn;
    glm[4] = ch * (2.0 * psi * bn - avg(dot3(&l.b, n) * l.psi, dot3(&r.b, n) * r.psi));
    [euler, mhd, glm]
}

/// Entropy-conservative flux split into its Euler, ideal MHD and GLM parts.
pub fn ec_flux_split(ul: &State, ur: &State, params: &PhysParams) -> Result<SplitFlux> {
    let l = NodePrim::from_state(ul, params)?;
    let r = NodePrim::from_state(ur, params)?;
    let parts = [0, 1, 2].map(|d| ec_flux_split_dot(&l, &r, &UNIT[d], params.gamma, params.ch));
    Ok(SplitFlux {
        euler: [0, 1, 2].map(|d| parts[d][0]),
        mhd: [0, 1, 2].map(|d| parts[d][1]),
        glm: [0, 1, 2].map(|d| parts[d][2]),
    })
}

/// Largest signal speed over both sides of an interface.
pub fn interface_lambda_max(l: &NodePrim, r: &NodePrim, n: &[f64; 3], params: &PhysParams) -> f64 {
    let ws_l = crate::physics::wave_speeds_prim(&l.prim(), n, params);
    let ws_r = crate::physics::wave_speeds_prim(&r.prim(), n, params);
    ws_l.lambda_max.max(ws_r.lambda_max)
}

/// Entropy-stable surface flux from cached primitives: EC flux minus scalar
/// Rusanov dissipation `lambda_max/2 [[u]]`.
#[inline]
pub fn es_flux_nodes(
    l: &NodePrim,
    r: &NodePrim,
    ul: &State,
    ur: &State,
    n: &[f64; 3],
    params: &PhysParams,
) -> State {
    let mut f = ec_flux_dot(l, r, n, params.gamma, params.ch);
    let lam = interface_lambda_max(l, r, n, params);
    for k in 0..9 {
        f[k] -= 0.5 * lam * (ur[k] - ul[k]);
    }
    f
}

pub fn es_surface_flux(ul: &State, ur: &State, n: &[f64; 3], params: &PhysParams) -> Result<State> {
    let l = NodePrim::from_state(ul, params)?;
    let r = NodePrim::from_state(ur, params)?;
    Ok(es_flux_nodes(&l, &r, ul, ur, n, params))
}

/// Surface residual of the Powell term on the `M` side:
/// `phi(uM) (avg(B) . n) - phi(uM) (B^M . n)`.
pub fn noncons_surface_b(um: &State, up: &State, n: &[f64; 3]) -> State {
    let jump_bn = (up[5] - um[5]) * n[0] + (up[6] - um[6]) * n[1] + (up[7] - um[7]) * n[2];
    powell_phi(um) * (0.5 * jump_bn)
}

/// Surface residual of the GLM non-conservative term on the `M` side:
/// `(phi^GLM(uM) . n)(avg(psi) - psi^M)`.
pub fn noncons_surface_psi(um: &State, up: &State, n: &[f64; 3]) -> State {
    let phi = glm_phi(um);
    let phin = crate::physics::contract(&phi, n);
    phin * (0.5 * (up[8] - um[8]))
}

/// BR1 interface values: averaged entropy variables and averaged normal
/// viscous flux.
pub fn br1_couplings(
    um: &State,
    up: &State,
    fv_m: &BlockVec3,
    fv_p: &BlockVec3,
    n: &[f64; 3],
    params: &PhysParams,
) -> Result<(State, State)> {
    let w_star = (entropy_variables(um, params)? + entropy_variables(up, params)?) * 0.5;
    let mut f_star = State::ZERO;
    for d in 0..3 {
        f_star.axpy(0.5 * n[d], &(fv_m[d] + fv_p[d]));
    }
    Ok((w_star, f_star))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_mean_examples() {
        assert_eq!(log_mean(3.0, 3.0).unwrap(), 3.0);
        let e = std::f64::consts::E;
        assert!((log_mean(1.0, e).unwrap() - (e - 1.0)).abs() < 1e-15);
        let m = log_mean(1.0, 1.0 + 1e-12).unwrap();
        assert!(m.is_finite() && m >= 1.0 && m <= 1.0 + 1e-12);
        assert!(log_mean(0.0, 1.0).is_err());
        assert!(log_mean(1.0, -2.0).is_err());
    }

    #[test]
    fn noncons_trivial_cases() {
        let p = PhysParams::ideal(5.0 / 3.0);
        let q = Primitive { rho: 1.0, v: [0.3, 0.1, -0.2], p: 1.0, b: [0.4, 0.5, 0.6], psi: 0.1 };
        let u = crate::physics::prim_to_cons(&q, &p).unwrap();
        let n = [0.6, 0.8, 0.0];
        assert_eq!(noncons_surface_b(&u, &u, &n), State::ZERO);
        assert_eq!(noncons_surface_psi(&u, &u, &n), State::ZERO);
        let mut flipped = u;
        for k in 5..8 {
            flipped[k] = -u[k];
        }
        let bn = 0.4 * 0.6 + 0.5 * 0.8;
        let expect = powell_phi(&u) * (-bn);
        let got = noncons_surface_b(&u, &flipped, &n);
        for k in 0..9 {
            assert!((got[k] - expect[k]).abs() < 1e-15);
        }
    }
}
