//! Low-storage explicit Runge-Kutta time stepping with CFL-limited steps and
//! a per-step GLM cleaning speed.

use crate::dg::Solver;
use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::numflux::NodePrim;
use crate::physics::{cons_to_prim, max_fast_speed, wave_speeds_prim, PhysParams, State};

// Five-stage fourth-order 2N-storage Runge-Kutta coefficients.
pub const RK_A: [f64; 5] = [
    0.0,
    -567301805773.0 / 1357537059087.0,
    -2404267990393.0 / 2016746695238.0,
    -3550918686646.0 / 2091501179385.0,
    -1275806237668.0 / 842570457699.0,
];
pub const RK_B: [f64; 5] = [
    1432997174477.0 / 9575080441755.0,
    5161836677717.0 / 13612068292357.0,
    1720146321549.0 / 2090206949498.0,
    3134564353537.0 / 4481467310338.0,
    2277821191437.0 / 14882151754819.0,
];
pub const RK_C: [f64; 5] = [
    0.0,
    1432997174477.0 / 9575080441755.0,
    2526269341429.0 / 6820363962896.0,
    2006345519317.0 / 3224310063776.0,
    2802321613138.0 / 2924317926251.0,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChPolicy {
    Zero,
    /// `c_h = max(|v| + c_f)` over all nodes.
    Proportional,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeConfig {
    pub cfl: f64,
    pub t_end: f64,
    pub fixed_dt: Option<f64>,
    pub ch_policy: ChPolicy,
    pub alpha: f64,
}

impl TimeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::InvalidInput(format!("CFL = {} must lie in (0, 1]", self.cfl)));
        }
        if !(self.t_end > 0.0) {
            return Err(Error::InvalidInput("end time must be positive".into()));
        }
        if let Some(dt) = self.fixed_dt {
            if !(dt > 0.0) {
                return Err(Error::InvalidInput("fixed dt must be positive".into()));
            }
        }
        if !(self.alpha >= 0.0) {
            return Err(Error::InvalidInput("alpha must be non-negative".into()));
        }
        Ok(())
    }
}

/// One 2N-storage step: `k <- A_s k + dt L(u, t + c_s dt)`, `u <- u + B_s k`.
/// `k` and `du` are caller-owned scratch of the same length as `u`.
pub fn rk54_step<F>(u: &mut [State], k: &mut [State], du: &mut [State], t: f64, dt: f64, mut rhs: F) -> Result<()>
where
    F: FnMut(&[State], f64, &mut [State]) -> Result<()>,
{
    if !(dt > 0.0) {
        return Err(Error::InvalidInput(format!("time step {dt} must be positive")));
    }
    for s in 0..5 {
        let ts = t + RK_C[s] * dt;
        rhs(u, ts, du).map_err(|e| Error::Stage {
            stage: s,
            time: ts,
            source: Box::new(e),
        })?;
        for ((ki, ui), di) in k.iter_mut().zip(u.iter_mut()).zip(du.iter()) {
            for c in 0..9 {
                ki[c] = RK_A[s] * ki[c] + dt * di[c];
                ui[c] += RK_B[s] * ki[c];
            }
        }
    }
    Ok(())
}

fn admissible_prims(u: &[State], params: &PhysParams) -> Result<Vec<NodePrim>> {
    u.iter()
        .map(|ui| cons_to_prim(ui, params).map(|q| NodePrim::from_prim(&q)))
        .collect()
}

/// Stable step from the advective and viscous spectral-radius estimate.
pub fn compute_dt(u: &[State], mesh: &Mesh, params: &PhysParams, cfl: f64) -> Result<f64> {
    let prims = admissible_prims(u, params)?;
    let np = mesh.nodes_per_element();
    let scale = (2 * mesh.config.degree + 1) as f64;
    let viscous = params.is_viscous();
    let mut worst: f64 = 0.0;
    for (e, el) in mesh.elements.iter().enumerate() {
        for i in 0..np {
            let p = &prims[e * np + i];
            let q = p.prim();
            let (mut adv, mut len) = (0.0, 0.0);
            for dir in 0..3 {
                let ja = el.ja[i][dir];
                let l = (ja[0] * ja[0] + ja[1] * ja[1] + ja[2] * ja[2]).sqrt();
                let n = [ja[0] / l, ja[1] / l, ja[2] / l];
                let ws = wave_speeds_prim(&q, &n, params);
                let vn = (q.v[0] * ja[0] + q.v[1] * ja[1] + q.v[2] * ja[2]).abs();
                adv += (vn + ws.fast * l).max(params.ch * l);
                len += l;
            }
            let inv = scale / (2.0 * el.jac[i]);
            let mut lam = adv * inv;
            if viscous {
                let diff = (4.0 * params.mu / (3.0 * q.rho))
                    .max(params.eta)
                    .max(params.kappa_over_r * params.gamma / q.rho);
                let r = len * inv;
                lam += diff * r * r;
            }
            worst = worst.max(lam);
        }
    }
    Ok(cfl / worst)
}

/// GLM cleaning speed for the next step.
pub fn update_ch(u: &[State], params: &PhysParams, policy: ChPolicy) -> Result<f64> {
    match policy {
        ChPolicy::Zero => Ok(0.0),
        ChPolicy::Proportional => {
            let mut c: f64 = 0.0;
            for ui in u {
                let q = cons_to_prim(ui, params)?;
                let v = (q.v[0] * q.v[0] + q.v[1] * q.v[1] + q.v[2] * q.v[2]).sqrt();
                c = c.max(v + max_fast_speed(&q, params.gamma));
            }
            Ok(c)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    pub step: usize,
    pub t: f64,
    pub dt: f64,
    pub ch: f64,
}

/// Integrates to `tc.t_end`. `observe` is called before the first step (with
/// `dt = 0`) and after every step; returning `false` stops early.
pub fn integrate<F>(solver: &mut Solver, u: &mut [State], t0: f64, tc: &TimeConfig, mut observe: F) -> Result<f64>
where
    F: FnMut(&StepInfo, &[State], &mut Solver) -> Result<bool>,
{
    tc.validate()?;
    solver.config.params.alpha = tc.alpha;
    let mut k = vec![State::ZERO; u.len()];
    let mut du = vec![State::ZERO; u.len()];
    let mut t = t0;
    let mut step = 0;
    solver.config.params.ch = update_ch(u, &solver.config.params, tc.ch_policy)?;
    let info = StepInfo { step, t, dt: 0.0, ch: solver.config.params.ch };
    if !observe(&info, u, solver)? {
        return Ok(t);
    }
    while t < tc.t_end * (1.0 - 1e-14) {
        let params = solver.config.params;
        let ch = update_ch(u, &params, tc.ch_policy)?;
        solver.config.params.ch = ch;
        let mut dt = match tc.fixed_dt {
            Some(dt) => dt,
            None => compute_dt(u, solver.mesh, &solver.config.params, tc.cfl)?,
        };
        if t + dt > tc.t_end {
            dt = tc.t_end - t;
        }
        rk54_step(u, &mut k, &mut du, t, dt, |x, ts, out| solver.rhs(x, ts, out))?;
        step += 1;
        t = if t + dt >= tc.t_end { tc.t_end } else { t + dt };
        let info = StepInfo { step, t, dt, ch };
        if !observe(&info, u, solver)? {
            break;
        }
    }
    Ok(t)
}

/// Largest `|v| + c_f` over all nodes.
pub fn max_signal_speed(u: &[State], params: &PhysParams) -> Result<f64> {
    update_ch(u, params, ChPolicy::Proportional)
}

/// Smallest nodal pressure.
pub fn min_pressure(u: &[State], params: &PhysParams) -> f64 {
    u.iter()
        .map(|ui| {
            let rho = ui[0];
            let v2 = (ui[1] * ui[1] + ui[2] * ui[2] + ui[3] * ui[3]) / rho;
            let b2 = ui[5] * ui[5] + ui[6] * ui[6] + ui[7] * ui[7];
            (params.gamma - 1.0) * (ui[4] - 0.5 * v2 - 0.5 * b2 - 0.5 * ui[8] * ui[8])
        })
        .fold(f64::INFINITY, f64::min)
}
