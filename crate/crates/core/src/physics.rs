//! Resistive GLM-MHD: state conversions, fluxes, entropy variables and the
//! entropy-variable dissipation matrices.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

pub const NVAR: usize = 9;

/// Conservative state `(rho, rho v, E, B, psi)`; also used for entropy
/// variables and residuals.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State(pub [f64; NVAR]);

/// One state per spatial direction: fluxes `f_1, f_2, f_3` or gradients.
pub type BlockVec3 = [State; 3];

impl State {
    pub const ZERO: State = State([0.0; NVAR]);

    pub fn dot(&self, o: &State) -> f64 {
        self.0.iter().zip(o.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    #[inline]
    pub fn axpy(&mut self, a: f64, x: &State) {
        for k in 0..NVAR {
            self.0[k] += a * x.0[k];
        }
    }
}

impl Index<usize> for State {
    type Output = f64;
    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for State {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for State {
    type Output = State;
    #[inline]
    fn add(mut self, o: State) -> State {
        self += o;
        self
    }
}

impl Sub for State {
    type Output = State;
    #[inline]
    fn sub(mut self, o: State) -> State {
        self -= o;
        self
    }
}

impl AddAssign for State {
    #[inline]
    fn add_assign(&mut self, o: State) {
        for k in 0..NVAR {
            self.0[k] += o.0[k];
        }
    }
}

impl SubAssign for State {
    #[inline]
    fn sub_assign(&mut self, o: State) {
        for k in 0..NVAR {
            self.0[k] -= o.0[k];
        }
    }
}

impl Mul<f64> for State {
    type Output = State;
    #[inline]
    fn mul(mut self, a: f64) -> State {
        for v in self.0.iter_mut() {
            *v *= a;
        }
        self
    }
}

impl Neg for State {
    type Output = State;
    fn neg(self) -> State {
        self * -1.0
    }
}

/// Contract a block vector with a spatial vector: `sum_d f_d n_d`.
pub fn contract(f: &BlockVec3, n: &[f64; 3]) -> State {
    let mut out = f[0] * n[0];
    out.axpy(n[1], &f[1]);
    out.axpy(n[2], &f[2]);
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    pub gamma: f64,
    pub mu: f64,
    pub eta: f64,
    pub prandtl: f64,
    /// Heat conductivity over the gas constant, `mu gamma / ((gamma-1) Pr)`.
    pub kappa_over_r: f64,
    pub ch: f64,
    pub alpha: f64,
}

impl PhysParams {
    pub fn new(gamma: f64, mu: f64, eta: f64, prandtl: f64) -> Result<Self> {
        if !(gamma > 1.0) {
            return Err(Error::InvalidInput(format!("gamma = {gamma} must exceed 1")));
        }
        if !(mu >= 0.0) || !(eta >= 0.0) {
            return Err(Error::InvalidInput("mu and eta must be non-negative".into()));
        }
        if !(prandtl > 0.0) {
            return Err(Error::InvalidInput("Prandtl number must be positive".into()));
        }
        Ok(Self {
            gamma,
            mu,
            eta,
            prandtl,
            kappa_over_r: mu * gamma / ((gamma - 1.0) * prandtl),
            ch: 0.0,
            alpha: 0.0,
        })
    }

    /// Inviscid, non-resistive parameters.
    pub fn ideal(gamma: f64) -> Self {
        Self::new(gamma, 0.0, 0.0, 0.72).expect("valid gamma")
    }

    pub fn with_ch(mut self, ch: f64) -> Self {
        self.ch = ch;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn is_viscous(&self) -> bool {
        self.mu > 0.0 || self.eta > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Primitive {
    pub rho: f64,
    pub v: [f64; 3],
    pub p: f64,
    pub b: [f64; 3],
    pub psi: f64,
}

impl Primitive {
    pub fn beta(&self) -> f64 {
        0.5 * self.rho / self.p
    }
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn prim_to_cons(q: &Primitive, params: &PhysParams) -> Result<State> {
    if !(q.rho > 0.0) {
        return Err(Error::positivity("density", q.rho));
    }
    if !(q.p > 0.0) {
        return Err(Error::positivity("pressure", q.p));
    }
    let e = q.p / (params.gamma - 1.0)
        + 0.5 * q.rho * dot3(&q.v, &q.v)
        + 0.5 * dot3(&q.b, &q.b)
        + 0.5 * q.psi * q.psi;
    Ok(State([
        q.rho,
        q.rho * q.v[0],
        q.rho * q.v[1],
        q.rho * q.v[2],
        e,
        q.b[0],
        q.b[1],
        q.b[2],
        q.psi,
    ]))
}

pub fn cons_to_prim(u: &State, params: &PhysParams) -> Result<Primitive> {
    let rho = u[0];
    if !(rho > 0.0) {
        return Err(Error::positivity("density", rho));
    }
    let v = [u[1] / rho, u[2] / rho, u[3] / rho];
    let b = [u[5], u[6], u[7]];
    let p = (params.gamma - 1.0)
        * (u[4] - 0.5 * rho * dot3(&v, &v) - 0.5 * dot3(&b, &b) - 0.5 * u[8] * u[8]);
    if !(p > 0.0) {
        return Err(Error::positivity("pressure", p));
    }
    Ok(Primitive {
        rho,
        v,
        p,
        b,
        psi: u[8],
    })
}

/// Mathematical entropy `S = -rho s / (gamma - 1)`, `s = ln(p rho^-gamma)`.
pub fn entropy_function(u: &State, params: &PhysParams) -> Result<f64> {
    let q = cons_to_prim(u, params)?;
    let s = q.p.ln() - params.gamma * q.rho.ln();
    Ok(-q.rho * s / (params.gamma - 1.0))
}

pub fn entropy_variables_prim(q: &Primitive, gamma: f64) -> State {
    let s = q.p.ln() - gamma * q.rho.ln();
    let beta = q.beta();
    let b2 = 2.0 * beta;
    State([
        (gamma - s) / (gamma - 1.0) - beta * dot3(&q.v, &q.v),
        b2 * q.v[0],
        b2 * q.v[1],
        b2 * q.v[2],
        -b2,
        b2 * q.b[0],
        b2 * q.b[1],
        b2 * q.b[2],
        b2 * q.psi,
    ])
}

pub fn entropy_variables(u: &State, params: &PhysParams) -> Result<State> {
    Ok(entropy_variables_prim(&cons_to_prim(u, params)?, params.gamma))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitFlux {
    pub euler: BlockVec3,
    pub mhd: BlockVec3,
    pub glm: BlockVec3,
}

impl SplitFlux {
    pub fn total(&self) -> BlockVec3 {
        [0, 1, 2].map(|d| self.euler[d] + self.mhd[d] + self.glm[d])
    }
}

pub fn advective_flux_prim(q: &Primitive, params: &PhysParams) -> SplitFlux {
    let g = params.gamma;
    let ch = params.ch;
    let v2 = dot3(&q.v, &q.v);
    let bb = dot3(&q.b, &q.b);
    let vb = dot3(&q.v, &q.b);
    let mut euler = [State::ZERO; 3];
    let mut mhd = [State::ZERO; 3];
    let mut glm = [State::ZERO; 3];
    for d in 0..3 {
        let vd = q.v[d];
        let bd = q.b[d];
        let e = &mut euler[d];
        e[0] = q.rho * vd;
        for k in 0..3 {
            e[1 + k] = q.rho * vd * q.v[k];
        }
        e[1 + d] += q.p;
        e[4] = vd * (0.5 * q.rho * v2 + g * q.p / (g - 1.0));

        let m = &mut mhd[d];
        for k in 0..3 {
            m[1 + k] = -bd * q.b[k];
            m[5 + k] = vd * q.b[k] - bd * q.v[k];
        }
        m[1 + d] += 0.5 * bb;
        m[4] = vd * bb - bd * vb;

        let c = &mut glm[d];
        c[4] = ch * q.psi * bd;
        c[5 + d] = ch * q.psi;
        c[8] = ch * bd;
    }
    SplitFlux { euler, mhd, glm }
}

pub fn advective_flux(u: &State, params: &PhysParams) -> Result<SplitFlux> {
    Ok(advective_flux_prim(&cons_to_prim(u, params)?, params))
}

/// Normal advective flux `f . n` without building the three blocks.
pub fn advective_flux_normal(q: &Primitive, n: &[f64; 3], params: &PhysParams) -> State {
    let g = params.gamma;
    let vn = dot3(&q.v, n);
    let bn = dot3(&q.b, n);
    let bb = dot3(&q.b, &q.b);
    let vb = dot3(&q.v, &q.b);
    let v2 = dot3(&q.v, &q.v);
    let ptot = q.p + 0.5 * bb;
    let mut f = State::ZERO;
    f[0] = q.rho * vn;
    for k in 0..3 {
        f[1 + k] = q.rho * vn * q.v[k] - bn * q.b[k] + ptot * n[k];
        f[5 + k] = vn * q.b[k] - bn * q.v[k] + params.ch * q.psi * n[k];
    }
    f[4] = vn * (0.5 * q.rho * v2 + g * q.p / (g - 1.0) + bb) - bn * vb
        + params.ch * q.psi * bn;
    f[8] = params.ch * bn;
    f
}

/// Gradients of the primitive variables `(rho, v, p, B, psi)`:
/// `g[q][d] = d(prim_q)/dx_d`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PrimGradient(pub [[f64; 3]; NVAR]);

/// Viscous and resistive flux from primitive gradients. Reference path for
/// checking the entropy-variable form `K grad w`.
pub fn viscous_flux_direct(u: &State, grad: &PrimGradient, params: &PhysParams) -> Result<BlockVec3> {
    let q = cons_to_prim(u, params)?;
    let g = &grad.0;
    let (mu, eta) = (params.mu, params.eta);
    let dv = |i: usize, d: usize| g[1 + i][d];
    let db = |i: usize, d: usize| g[5 + i][d];
    let div_v = dv(0, 0) + dv(1, 1) + dv(2, 2);
    // grad(p / rho)
    let grad_t = [0, 1, 2].map(|d| g[4][d] / q.rho - q.p * g[0][d] / (q.rho * q.rho));
    let curl_b = [
        db(2, 1) - db(1, 2),
        db(0, 2) - db(2, 0),
        db(1, 0) - db(0, 1),
    ];
    let b = q.b;
    let j_cross_b = [
        curl_b[1] * b[2] - curl_b[2] * b[1],
        curl_b[2] * b[0] - curl_b[0] * b[2],
        curl_b[0] * b[1] - curl_b[1] * b[0],
    ];
    let mut out = [State::ZERO; 3];
    for d in 0..3 {
        let f = &mut out[d];
        let mut tv = 0.0;
        for k in 0..3 {
            let mut tau = mu * (dv(k, d) + dv(d, k));
            if k == d {
                tau -= 2.0 / 3.0 * mu * div_v;
            }
            f[1 + k] = tau;
            tv += tau * q.v[k];
            f[5 + k] = eta * (db(k, d) - db(d, k));
        }
        f[4] = tv + params.kappa_over_r * grad_t[d] - eta * j_cross_b[d];
    }
    Ok(out)
}

/// `K(w) grad w` evaluated without forming `K`: the entropy-variable
/// gradient is mapped back to gradients of `v`, `B` and `p / rho`, which
/// enter the viscous flux linearly. Used by the solver's hot loop.
pub fn viscous_flux_entropy(w: &State, gw: &BlockVec3, params: &PhysParams) -> BlockVec3 {
    let (mu, eta) = (params.mu, params.eta);
    // w5 = -2 beta = -rho / p
    let theta = -w[4];
    let inv = 1.0 / theta;
    let v = [w[1] * inv, w[2] * inv, w[3] * inv];
    let b = [w[5] * inv, w[6] * inv, w[7] * inv];
    // d(v_k)/dx_d and d(B_k)/dx_d
    let mut dv = [[0.0; 3]; 3];
    let mut db = [[0.0; 3]; 3];
    let mut grad_t = [0.0; 3];
    for d in 0..3 {
        let g = &gw[d];
        for k in 0..3 {
            dv[k][d] = (g[1 + k] + v[k] * g[4]) * inv;
            db[k][d] = (g[5 + k] + b[k] * g[4]) * inv;
        }
        grad_t[d] = g[4] * inv * inv;
    }
    let div_v = dv[0][0] + dv[1][1] + dv[2][2];
    let curl_b = [
        db[2][1] - db[1][2],
        db[0][2] - db[2][0],
        db[1][0] - db[0][1],
    ];
    let j_cross_b = [
        curl_b[1] * b[2] - curl_b[2] * b[1],
        curl_b[2] * b[0] - curl_b[0] * b[2],
        curl_b[0] * b[1] - curl_b[1] * b[0],
    ];
    let mut out = [State::ZERO; 3];
    for d in 0..3 {
        let f = &mut out[d];
        let mut tv = 0.0;
        for k in 0..3 {
            let mut tau = mu * (dv[k][d] + dv[d][k]);
            if k == d {
                tau -= 2.0 / 3.0 * mu * div_v;
            }
            f[1 + k] = tau;
            tv += tau * v[k];
            f[5 + k] = eta * (db[k][d] - db[d][k]);
        }
        f[4] = tv + params.kappa_over_r * grad_t[d] - eta * j_cross_b[d];
    }
    out
}

/// The 27x27 dissipation matrix as nine 9x9 blocks, `blocks[i][j] = K_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct KMatrix {
    pub blocks: [[[[f64; NVAR]; NVAR]; 3]; 3],
}

impl KMatrix {
    pub fn full(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; 27]; 27];
        for bi in 0..3 {
            for bj in 0..3 {
                for r in 0..NVAR {
                    for c in 0..NVAR {
                        m[bi * NVAR + r][bj * NVAR + c] = self.blocks[bi][bj][r][c];
                    }
                }
            }
        }
        m
    }

    /// `f_i = sum_j K_ij g_j`. Rows and columns 1 and 9 are structurally zero.
    pub fn apply(&self, g: &BlockVec3) -> BlockVec3 {
        let mut out = [State::ZERO; 3];
        for i in 0..3 {
            for j in 0..3 {
                let k = &self.blocks[i][j];
                for r in 1..8 {
                    let mut s = 0.0;
                    for c in 1..8 {
                        s += k[r][c] * g[j][c];
                    }
                    out[i][r] += s;
                }
            }
        }
        out
    }
}

/// Dissipation matrices in entropy variables.
///
/// Entries follow the appendix tables with 1-based indices. Several printed
/// entries of `K_12`, `K_21`, `K_32` and `K_33` are inconsistent with the
/// viscous flux they are meant to reproduce; the values here are the
/// corrected ones (checked against [`viscous_flux_direct`]).
pub fn k_matrices(w: &State, params: &PhysParams) -> Result<KMatrix> {
    let w5 = w[4];
    if !(w5 < 0.0) {
        return Err(Error::InvalidInput(format!("entropy variable w5 = {w5} must be negative")));
    }
    let (m, e, kr) = (params.mu, params.eta, params.kappa_over_r);
    let (w2, w3, w4) = (w[1], w[2], w[3]);
    let (w6, w7, w8) = (w[5], w[6], w[7]);
    let q = w5 * w5;
    let mut kb = [[[[0.0; NVAR]; NVAR]; 3]; 3];
    let inv = 1.0 / w5;
    let mut set = |bi: usize, bj: usize, r: usize, c: usize, v: f64| {
        kb[bi - 1][bj - 1][r - 1][c - 1] = v * inv;
    };

    // K11
    set(1, 1, 2, 2, -4.0 * m / 3.0);
    set(1, 1, 2, 5, 4.0 * m * w2 / (3.0 * w5));
    set(1, 1, 3, 3, -m);
    set(1, 1, 3, 5, m * w3 / w5);
    set(1, 1, 4, 4, -m);
    set(1, 1, 4, 5, m * w4 / w5);
    set(1, 1, 5, 2, 4.0 * m * w2 / (3.0 * w5));
    set(1, 1, 5, 3, m * w3 / w5);
    set(1, 1, 5, 4, m * w4 / w5);
    set(
        1, 1, 5, 5,
        -4.0 * m * w2 * w2 / (3.0 * q) - m * w3 * w3 / q - m * w4 * w4 / q + kr / w5
            - e * w7 * w7 / q - e * w8 * w8 / q,
    );
    set(1, 1, 5, 7, e * w7 / w5);
    set(1, 1, 5, 8, e * w8 / w5);
    set(1, 1, 7, 5, e * w7 / w5);
    set(1, 1, 7, 7, -e);
    set(1, 1, 8, 5, e * w8 / w5);
    set(1, 1, 8, 8, -e);

    // K12
    set(1, 2, 2, 3, 2.0 * m / 3.0);
    set(1, 2, 2, 5, -2.0 * m * w3 / (3.0 * w5));
    set(1, 2, 3, 2, -m);
    set(1, 2, 3, 5, m * w2 / w5);
    set(1, 2, 5, 2, m * w3 / w5);
    set(1, 2, 5, 3, -2.0 * m * w2 / (3.0 * w5));
    set(1, 2, 5, 5, -m * w2 * w3 / (3.0 * q) + e * w6 * w7 / q);
    set(1, 2, 5, 6, -e * w7 / w5);
    set(1, 2, 7, 5, -e * w6 / w5);
    set(1, 2, 7, 6, e);

    // K13
    set(1, 3, 2, 4, 2.0 * m / 3.0);
    set(1, 3, 2, 5, -2.0 * m * w4 / (3.0 * w5));
    set(1, 3, 4, 2, -m);
    set(1, 3, 4, 5, m * w2 / w5);
    set(1, 3, 5, 2, m * w4 / w5);
    set(1, 3, 5, 4, -2.0 * m * w2 / (3.0 * w5));
    set(1, 3, 5, 5, -m * w2 * w4 / (3.0 * q) + e * w6 * w8 / q);
    set(1, 3, 5, 6, -e * w8 / w5);
    set(1, 3, 8, 5, -e * w6 / w5);
    set(1, 3, 8, 6, e);

    // K21
    set(2, 1, 2, 3, -m);
    set(2, 1, 2, 5, m * w3 / w5);
    set(2, 1, 3, 2, 2.0 * m / 3.0);
    set(2, 1, 3, 5, -2.0 * m * w2 / (3.0 * w5));
    set(2, 1, 5, 2, -2.0 * m * w3 / (3.0 * w5));
    set(2, 1, 5, 3, m * w2 / w5);
    set(2, 1, 5, 5, -m * w2 * w3 / (3.0 * q) + e * w6 * w7 / q);
    set(2, 1, 5, 7, -e * w6 / w5);
    set(2, 1, 6, 5, -e * w7 / w5);
    set(2, 1, 6, 7, e);

    // K22
    set(2, 2, 2, 2, -m);
    set(2, 2, 2, 5, m * w2 / w5);
    set(2, 2, 3, 3, -4.0 * m / 3.0);
    set(2, 2, 3, 5, 4.0 * m * w3 / (3.0 * w5));
    set(2, 2, 4, 4, -m);
    set(2, 2, 4, 5, m * w4 / w5);
    set(2, 2, 5, 2, m * w2 / w5);
    set(2, 2, 5, 3, 4.0 * m * w3 / (3.0 * w5));
    set(2, 2, 5, 4, m * w4 / w5);
    set(
        2, 2, 5, 5,
        -m * w2 * w2 / q - 4.0 * m * w3 * w3 / (3.0 * q) - m * w4 * w4 / q + kr / w5
            - e * w6 * w6 / q - e * w8 * w8 / q,
    );
    set(2, 2, 5, 6, e * w6 / w5);
    set(2, 2, 5, 8, e * w8 / w5);
    set(2, 2, 6, 5, e * w6 / w5);
    set(2, 2, 6, 6, -e);
    set(2, 2, 8, 5, e * w8 / w5);
    set(2, 2, 8, 8, -e);

    // K23
    set(2, 3, 3, 4, 2.0 * m / 3.0);
    set(2, 3, 3, 5, -2.0 * m * w4 / (3.0 * w5));
    set(2, 3, 4, 3, -m);
    set(2, 3, 4, 5, m * w3 / w5);
    set(2, 3, 5, 3, m * w4 / w5);
    set(2, 3, 5, 4, -2.0 * m * w3 / (3.0 * w5));
    set(2, 3, 5, 5, -m * w3 * w4 / (3.0 * q) + e * w7 * w8 / q);
    set(2, 3, 5, 7, -e * w8 / w5);
    set(2, 3, 8, 5, -e * w7 / w5);
    set(2, 3, 8, 7, e);

    // K31
    set(3, 1, 2, 4, -m);
    set(3, 1, 2, 5, m * w4 / w5);
    set(3, 1, 4, 2, 2.0 * m / 3.0);
    set(3, 1, 4, 5, -2.0 * m * w2 / (3.0 * w5));
    set(3, 1, 5, 2, -2.0 * m * w4 / (3.0 * w5));
    set(3, 1, 5, 4, m * w2 / w5);
    set(3, 1, 5, 5, -m * w2 * w4 / (3.0 * q) + e * w6 * w8 / q);
    set(3, 1, 5, 8, -e * w6 / w5);
    set(3, 1, 6, 5, -e * w8 / w5);
    set(3, 1, 6, 8, e);

    // K32
    set(3, 2, 3, 4, -m);
    set(3, 2, 3, 5, m * w4 / w5);
    set(3, 2, 4, 3, 2.0 * m / 3.0);
    set(3, 2, 4, 5, -2.0 * m * w3 / (3.0 * w5));
    set(3, 2, 5, 3, -2.0 * m * w4 / (3.0 * w5));
    set(3, 2, 5, 4, m * w3 / w5);
    set(3, 2, 5, 5, -m * w3 * w4 / (3.0 * q) + e * w7 * w8 / q);
    set(3, 2, 5, 8, -e * w7 / w5);
    set(3, 2, 7, 5, -e * w8 / w5);
    set(3, 2, 7, 8, e);

    // K33
    set(3, 3, 2, 2, -m);
    set(3, 3, 2, 5, m * w2 / w5);
    set(3, 3, 3, 3, -m);
    set(3, 3, 3, 5, m * w3 / w5);
    set(3, 3, 4, 4, -4.0 * m / 3.0);
    set(3, 3, 4, 5, 4.0 * m * w4 / (3.0 * w5));
    set(3, 3, 5, 2, m * w2 / w5);
    set(3, 3, 5, 3, m * w3 / w5);
    set(3, 3, 5, 4, 4.0 * m * w4 / (3.0 * w5));
    set(
        3, 3, 5, 5,
        -m * w2 * w2 / q - m * w3 * w3 / q - 4.0 * m * w4 * w4 / (3.0 * q) + kr / w5
            - e * w6 * w6 / q - e * w7 * w7 / q,
    );
    set(3, 3, 5, 6, e * w6 / w5);
    set(3, 3, 5, 7, e * w7 / w5);
    set(3, 3, 6, 5, e * w6 / w5);
    set(3, 3, 6, 6, -e);
    set(3, 3, 7, 5, e * w7 / w5);
    set(3, 3, 7, 7, -e);

    Ok(KMatrix { blocks: kb })
}

pub fn viscous_flux_k(w: &State, grad_w: &BlockVec3, params: &PhysParams) -> Result<BlockVec3> {
    Ok(k_matrices(w, params)?.apply(grad_w))
}

/// Powell term `(0, B, v.B, v, 0)`.
pub fn powell_phi(u: &State) -> State {
    let v = [u[1] / u[0], u[2] / u[0], u[3] / u[0]];
    let b = [u[5], u[6], u[7]];
    State([0.0, b[0], b[1], b[2], dot3(&v, &b), v[0], v[1], v[2], 0.0])
}

pub fn powell_phi_prim(q: &Primitive) -> State {
    let b = q.b;
    State([0.0, b[0], b[1], b[2], dot3(&q.v, &b), q.v[0], q.v[1], q.v[2], 0.0])
}

/// Galilean-invariance term: `phi_l = (0,0,0,0, v_l psi, 0,0,0, v_l)`.
pub fn glm_phi(u: &State) -> BlockVec3 {
    [0, 1, 2].map(|l| {
        let vl = u[1 + l] / u[0];
        let mut s = State::ZERO;
        s[4] = vl * u[8];
        s[8] = vl;
        s
    })
}

/// Entropy flux potentials split into Euler, MHD and GLM parts.
pub fn entropy_flux_potentials(u: &State, params: &PhysParams) -> Result<[[f64; 3]; 3]> {
    let q = cons_to_prim(u, params)?;
    let w = entropy_variables_prim(&q, params.gamma);
    let s = entropy_function(u, params)?;
    let f = advective_flux_prim(&q, params);
    let theta = 2.0 * q.beta() * dot3(&q.v, &q.b);
    let mut out = [[0.0; 3]; 3];
    for d in 0..3 {
        out[0][d] = w.dot(&f.euler[d]) - q.v[d] * s;
        out[1][d] = w.dot(&f.mhd[d]) + theta * q.b[d];
        out[2][d] = w.dot(&f.glm[d]);
    }
    Ok(out)
}

/// GLM damping source `(0, ..., 0, -alpha psi)`.
pub fn glm_source(u: &State, params: &PhysParams) -> State {
    let mut r = State::ZERO;
    r[8] = -params.alpha * u[8];
    r
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeeds {
    pub sound: f64,
    pub alfven: f64,
    pub fast: f64,
    pub lambda_max: f64,
}

pub fn wave_speeds_prim(q: &Primitive, n: &[f64; 3], params: &PhysParams) -> WaveSpeeds {
    let cs2 = params.gamma * q.p / q.rho;
    let ca2 = dot3(&q.b, &q.b) / q.rho;
    let bn = dot3(&q.b, n);
    let can2 = bn * bn / q.rho;
    let s = cs2 + ca2;
    let disc = (s * s - 4.0 * cs2 * can2).max(0.0);
    let cf = (0.5 * (s + disc.sqrt())).sqrt();
    WaveSpeeds {
        sound: cs2.sqrt(),
        alfven: ca2.sqrt(),
        fast: cf,
        lambda_max: (dot3(&q.v, n).abs() + cf).max(params.ch),
    }
}

pub fn wave_speeds(u: &State, n: &[f64; 3], params: &PhysParams) -> Result<WaveSpeeds> {
    Ok(wave_speeds_prim(&cons_to_prim(u, params)?, n, params))
}

/// Largest fast magnetosonic speed over all directions, `sqrt(c_s^2 + c_a^2)`.
pub fn max_fast_speed(q: &Primitive, gamma: f64) -> f64 {
    (gamma * q.p / q.rho + dot3(&q.b, &q.b) / q.rho).sqrt()
}
