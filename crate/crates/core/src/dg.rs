//! Split-form DGSEM right-hand side on curvilinear hexahedra.
//!
//! Per evaluation: primitives (and entropy variables) at all nodes, BR1
//! interface averages and lifted gradients when viscous, one pass over faces
//! for numerical fluxes and surface couplings, then element-local volume
//! kernels and assembly. Every element writes only its own residual slice,
//! and face passes write only their own face buffers.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, NodeLocation, Result};
use crate::mesh::{face_node, ElementGeometry, Mesh};
use crate::numflux::{ec_flux_dot, ec_flux_split_dot, es_flux_nodes, NodePrim};
use crate::operators::Operator1D;
use crate::physics::{
    advective_flux_normal, cons_to_prim, entropy_function, entropy_variables_prim, viscous_flux_entropy,
    powell_phi_prim, BlockVec3, PhysParams, State,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxMode {
    /// Entropy-conservative surface flux.
    Ec,
    /// Entropy-conservative flux plus Rusanov dissipation.
    Es,
}

pub type SourceFn = dyn Fn([f64; 3], f64) -> State + Send + Sync;

#[derive(Clone)]
pub struct RhsConfig {
    pub mode: FluxMode,
    pub viscous: bool,
    pub glm: bool,
    pub params: PhysParams,
    /// Extra nodal source added to `u_t`, evaluated at stage time.
    pub source: Option<Arc<SourceFn>>,
}

impl fmt::Debug for RhsConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RhsConfig")
            .field("mode", &self.mode)
            .field("viscous", &self.viscous)
            .field("glm", &self.glm)
            .field("params", &self.params)
            .field("source", &self.source.is_some())
            .finish()
    }
}

impl RhsConfig {
    pub fn new(mode: FluxMode, params: PhysParams) -> Self {
        Self {
            mode,
            viscous: params.is_viscous(),
            glm: true,
            params,
            source: None,
        }
    }

    /// Parameters as seen by the kernels: GLM off means no cleaning speed and
    /// no damping.
    pub fn effective_params(&self) -> PhysParams {
        let mut p = self.params;
        if !self.glm {
            p.ch = 0.0;
            p.alpha = 0.0;
        }
        p
    }
}

/// Nodal solution, element after element, `(N+1)^3` states each.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub degree: usize,
    pub data: Vec<State>,
}

impl SolutionField {
    pub fn zeros(mesh: &Mesh) -> Self {
        Self {
            degree: mesh.config.degree,
            data: vec![State::ZERO; mesh.n_elements() * mesh.nodes_per_element()],
        }
    }

    /// Sample `f(x)` at every mesh node.
    pub fn from_fn(mesh: &Mesh, f: impl Fn([f64; 3]) -> State) -> Self {
        let data = mesh
            .elements
            .iter()
            .flat_map(|el| el.x.iter().map(|&x| f(x)))
            .collect();
        Self {
            degree: mesh.config.degree,
            data,
        }
    }

    pub fn element(&self, e: usize) -> &[State] {
        let np = (self.degree + 1).pow(3);
        &self.data[e * np..(e + 1) * np]
    }
}

pub(crate) fn chunked<T, F>(parallel: bool, data: &mut [T], chunk: usize, f: F) -> Result<()>
where
    T: Send,
    F: Fn(usize, &mut [T]) -> Result<()> + Sync + Send,
{
    if parallel {
        data.par_chunks_mut(chunk)
            .enumerate()
            .try_for_each(|(i, c)| f(i, c))
    } else {
        data.chunks_mut(chunk).enumerate().try_for_each(|(i, c)| f(i, c))
    }
}

fn strides(m: usize) -> [usize; 3] {
    [1, m, m * m]
}

/// Start indices of all 1D lines along `dir` in an `m^3` lattice.
fn line_starts(m: usize, dir: usize) -> impl Iterator<Item = usize> {
    let s = strides(m);
    let (o1, o2) = match dir {
        0 => (s[1], s[2]),
        1 => (s[0], s[2]),
        _ => (s[0], s[1]),
    };
    (0..m).flat_map(move |b| (0..m).map(move |a| a * o1 + b * o2))
}

fn locate(mesh: &Mesh, e: usize, node: usize, err: Error) -> Error {
    match err {
        Error::Positivity { quantity, value, .. } => Error::Positivity {
            quantity,
            value,
            location: Some(NodeLocation {
                element: e,
                node,
                x: mesh.elements[e].x[node],
            }),
        },
        other => other,
    }
}

/// Cached primitives for every node, with positivity checked.
pub fn node_primitives(u: &[State], mesh: &Mesh, params: &PhysParams) -> Result<Vec<NodePrim>> {
    let np = mesh.nodes_per_element();
    let mut out = vec![NodePrim::default(); u.len()];
    chunked(false, &mut out, np, |e, chunk| {
        fill_primitives(&u[e * np..(e + 1) * np], chunk, params).map_err(|(i, err)| locate(mesh, e, i, err))
    })?;
    Ok(out)
}

fn fill_primitives(u: &[State], out: &mut [NodePrim], params: &PhysParams) -> std::result::Result<(), (usize, Error)> {
    for (i, (ui, o)) in u.iter().zip(out.iter_mut()).enumerate() {
        *o = NodePrim::from_prim(&cons_to_prim(ui, params).map_err(|e| (i, e))?);
    }
    Ok(())
}

/// Flux-differencing volume term `sum_dir 2 sum_m D_im F(u_i, u_m) . avg(Ja^dir)`
/// accumulated into `out`, for an arbitrary contracted two-point flux.
/// `diag(u_i, Ja_i)` must equal `pair(u_i, u_i, Ja_i)`; it is only evaluated
/// where `D_ii` is nonzero.
pub fn flux_differencing<P, G>(
    op: &Operator1D,
    el: &ElementGeometry,
    prims: &[NodePrim],
    out: &mut [State],
    pair: P,
    diag: G,
) where
    P: Fn(&NodePrim, &NodePrim, &[f64; 3]) -> State,
    G: Fn(&NodePrim, &[f64; 3]) -> State,
{
    let m = op.n_nodes();
    let st = strides(m);
    for dir in 0..3 {
        let s = st[dir];
        for base in line_starts(m, dir) {
            for a in 0..m {
                let ia = base + a * s;
                let daa = op.d(a, a);
                let ja_a = el.ja[ia][dir];
                if daa != 0.0 {
                    out[ia].axpy(2.0 * daa, &diag(&prims[ia], &ja_a));
                }
                for b in a + 1..m {
                    let ib = base + b * s;
                    let ja_b = el.ja[ib][dir];
                    let avg = [
                        0.5 * (ja_a[0] + ja_b[0]),
                        0.5 * (ja_a[1] + ja_b[1]),
                        0.5 * (ja_a[2] + ja_b[2]),
                    ];
                    let f = pair(&prims[ia], &prims[ib], &avg);
                    out[ia].axpy(2.0 * op.d(a, b), &f);
                    out[ib].axpy(2.0 * op.d(b, a), &f);
                }
            }
        }
    }
}

/// Split-form advective volume term of one element (positive sign, i.e. the
/// quantity subtracted from `J u_t`).
pub fn volume_advective(op: &Operator1D, el: &ElementGeometry, prims: &[NodePrim], params: &PhysParams) -> Vec<State> {
    let mut out = vec![State::ZERO; prims.len()];
    let (g, ch) = (params.gamma, params.ch);
    flux_differencing(
        op,
        el,
        prims,
        &mut out,
        |l, r, n| ec_flux_dot(l, r, n, g, ch),
        |p, n| advective_flux_normal(&p.prim(), n, params),
    );
    out
}

/// One part (0 Euler, 1 ideal MHD, 2 GLM) of the split EC volume term.
pub fn volume_advective_part(
    op: &Operator1D,
    el: &ElementGeometry,
    prims: &[NodePrim],
    params: &PhysParams,
    part: usize,
) -> Vec<State> {
    let mut out = vec![State::ZERO; prims.len()];
    let (g, ch) = (params.gamma, params.ch);
    flux_differencing(
        op,
        el,
        prims,
        &mut out,
        |l, r, n| ec_flux_split_dot(l, r, n, g, ch)[part],
        |p, n| ec_flux_split_dot(p, p, n, g, ch)[part],
    );
    out
}

/// Powell volume term: `phi(u_i) sum_m D_im B_m . avg(Ja)_(i,m)` over the
/// three reference directions.
pub fn volume_noncons_mhd(op: &Operator1D, el: &ElementGeometry, prims: &[NodePrim]) -> Vec<State> {
    let mut out = vec![State::ZERO; prims.len()];
    add_noncons_mhd(op, el, prims, &mut out);
    out
}

fn add_noncons_mhd(op: &Operator1D, el: &ElementGeometry, prims: &[NodePrim], out: &mut [State]) {
    let m = op.n_nodes();
    let st = strides(m);
    let mut divb = vec![0.0; prims.len()];
    for dir in 0..3 {
        let s = st[dir];
        for base in line_starts(m, dir) {
            for a in 0..m {
                let ia = base + a * s;
                let ja_a = el.ja[ia][dir];
                let mut acc = 0.0;
                for b in 0..m {
                    let ib = base + b * s;
                    let ja_b = el.ja[ib][dir];
                    let bb = &prims[ib].b;
                    let dot = bb[0] * (ja_a[0] + ja_b[0]) + bb[1] * (ja_a[1] + ja_b[1]) + bb[2] * (ja_a[2] + ja_b[2]);
                    acc += op.d(a, b) * 0.5 * dot;
                }
                divb[ia] += acc;
            }
        }
    }
    for (i, o) in out.iter_mut().enumerate() {
        o.axpy(divb[i], &powell_phi_prim(&prims[i].prim()));
    }
}

/// `sum_dir Ja^dir_i (D_dir psi)_i` at every node, metric taken at the node.
fn psi_gradient(op: &Operator1D, el: &ElementGeometry, prims: &[NodePrim]) -> Vec<[f64; 3]> {
    let m = op.n_nodes();
    let st = strides(m);
    let mut g = vec![[0.0; 3]; prims.len()];
    for dir in 0..3 {
        let s = st[dir];
        for base in line_starts(m, dir) {
            for a in 0..m {
                let ia = base + a * s;
                let mut dpsi = 0.0;
                for b in 0..m {
                    dpsi += op.d(a, b) * prims[base + b * s].psi;
                }
                let ja = el.ja[ia][dir];
                for c in 0..3 {
                    g[ia][c] += ja[c] * dpsi;
                }
            }
        }
    }
    g
}

/// GLM non-conservative volume term `phi^GLM(u_i) . (Ja grad_xi psi)_i`.
pub fn volume_noncons_glm(op: &Operator1D, el: &ElementGeometry, prims: &[NodePrim]) -> Vec<State> {
    let mut out = vec![State::ZERO; prims.len()];
    add_noncons_glm(op, el, prims, &mut out);
    out
}

fn add_noncons_glm(op: &Operator1D, el: &ElementGeometry, prims: &[NodePrim], out: &mut [State]) {
    let g = psi_gradient(op, el, prims);
    for (i, o) in out.iter_mut().enumerate() {
        let p = &prims[i];
        let vg = p.v[0] * g[i][0] + p.v[1] * g[i][1] + p.v[2] * g[i][2];
        o[4] += vg * p.psi;
        o[8] += vg;
    }
}

/// D-divergence of the contravariant viscous fluxes (positive sign: added to
/// `J u_t`).
pub fn volume_viscous(op: &Operator1D, el: &ElementGeometry, fv: &[BlockVec3]) -> Vec<State> {
    let mut out = vec![State::ZERO; fv.len()];
    add_volume_viscous(op, el, fv, &mut out);
    out
}

fn add_volume_viscous(op: &Operator1D, el: &ElementGeometry, fv: &[BlockVec3], out: &mut [State]) {
    let m = op.n_nodes();
    let st = strides(m);
    let mut contra = vec![State::ZERO; fv.len()];
    for dir in 0..3 {
        for (i, c) in contra.iter_mut().enumerate() {
            let ja = el.ja[i][dir];
            *c = fv[i][0] * ja[0];
            c.axpy(ja[1], &fv[i][1]);
            c.axpy(ja[2], &fv[i][2]);
        }
        let s = st[dir];
        for base in line_starts(m, dir) {
            for a in 0..m {
                let ia = base + a * s;
                for b in 0..m {
                    let dab = op.d(a, b);
                    if dab != 0.0 {
                        out[ia].axpy(dab, &contra[base + b * s]);
                    }
                }
            }
        }
    }
}

/// Reusable right-hand-side evaluator holding all scratch storage.
pub struct Solver<'m> {
    pub mesh: &'m Mesh,
    pub config: RhsConfig,
    pub parallel: bool,
    prims: Vec<NodePrim>,
    w: Vec<State>,
    fv: Vec<BlockVec3>,
    wstar: Vec<State>,
    face_res: Vec<[State; 2]>,
}

impl<'m> Solver<'m> {
    pub fn new(mesh: &'m Mesh, config: RhsConfig) -> Self {
        let n = mesh.n_elements() * mesh.nodes_per_element();
        let m = mesh.op.n_nodes();
        let nf = mesh.faces.len() * m * m;
        Self {
            mesh,
            parallel: false,
            prims: vec![NodePrim::default(); n],
            w: if config.viscous { vec![State::ZERO; n] } else { Vec::new() },
            fv: if config.viscous { vec![[State::ZERO; 3]; n] } else { Vec::new() },
            wstar: if config.viscous { vec![State::ZERO; nf] } else { Vec::new() },
            face_res: vec![[State::ZERO; 2]; nf],
            config,
        }
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    fn update_primitives(&mut self, u: &[State], params: &PhysParams) -> Result<()> {
        let mesh = self.mesh;
        let np = mesh.nodes_per_element();
        chunked(self.parallel, &mut self.prims, np, |e, chunk| {
            fill_primitives(&u[e * np..(e + 1) * np], chunk, params).map_err(|(i, err)| locate(mesh, e, i, err))
        })
    }

    /// Entropy variables, BR1 interface averages, lifted gradients and nodal
    /// viscous fluxes.
    fn update_viscous(&mut self, params: &PhysParams) -> Result<()> {
        let mesh = self.mesh;
        let op = &mesh.op;
        let m = op.n_nodes();
        let np = mesh.nodes_per_element();
        let gamma = params.gamma;
        let prims = &self.prims;
        chunked(self.parallel, &mut self.w, np, |e, chunk| {
            for (i, w) in chunk.iter_mut().enumerate() {
                *w = entropy_variables_prim(&prims[e * np + i].prim(), gamma);
            }
            Ok(())
        })?;
        let w = &self.w;
        chunked(self.parallel, &mut self.wstar, m * m, |f, chunk| {
            let fc = &mesh.faces[f];
            for b in 0..m {
                for a in 0..m {
                    let il = fc.left * np + face_node(m, fc.face_left, a, b);
                    let ir = fc.right * np + face_node(m, fc.face_right, a, b);
                    chunk[a + m * b] = (w[il] + w[ir]) * 0.5;
                }
            }
            Ok(())
        })?;
        let wstar = &self.wstar;
        chunked(self.parallel, &mut self.fv, np, |e, chunk| {
            let q = lift_element(mesh, e, &w[e * np..(e + 1) * np], wstar);
            for (i, f) in chunk.iter_mut().enumerate() {
                *f = viscous_flux_entropy(&w[e * np + i], &q[i], params);
            }
            Ok(())
        })
    }

    fn update_faces(&mut self, u: &[State], params: &PhysParams) -> Result<()> {
        let mesh = self.mesh;
        let m = mesh.op.n_nodes();
        let np = mesh.nodes_per_element();
        let prims = &self.prims;
        let fv = &self.fv;
        let viscous = self.config.viscous;
        let mode = self.config.mode;
        chunked(self.parallel, &mut self.face_res, m * m, |f, chunk| {
            let fc = &mesh.faces[f];
            let metrics = &mesh.elements[fc.left].faces[fc.face_left];
            for b in 0..m {
                for a in 0..m {
                    let q = a + m * b;
                    let il = fc.left * np + face_node(m, fc.face_left, a, b);
                    let ir = fc.right * np + face_node(m, fc.face_right, a, b);
                    let n = &metrics.n[q];
                    let (pl, pr) = (&prims[il], &prims[ir]);
                    let fstar = match mode {
                        FluxMode::Ec => ec_flux_dot(pl, pr, n, params.gamma, params.ch),
                        FluxMode::Es => es_flux_nodes(pl, pr, &u[il], &u[ir], n, params),
                    };
                    let mut cl = fstar - advective_flux_normal(&pl.prim(), n, params);
                    let mut cr = advective_flux_normal(&pr.prim(), n, params) - fstar;
                    let jump_bn = 0.5
                        * ((pr.b[0] - pl.b[0]) * n[0] + (pr.b[1] - pl.b[1]) * n[1] + (pr.b[2] - pl.b[2]) * n[2]);
                    cl.axpy(jump_bn, &powell_phi_prim(&pl.prim()));
                    cr.axpy(jump_bn, &powell_phi_prim(&pr.prim()));
                    let jump_psi = 0.5 * (pr.psi - pl.psi);
                    let vnl = pl.v[0] * n[0] + pl.v[1] * n[1] + pl.v[2] * n[2];
                    let vnr = pr.v[0] * n[0] + pr.v[1] * n[1] + pr.v[2] * n[2];
                    cl[4] += vnl * jump_psi * pl.psi;
                    cl[8] += vnl * jump_psi;
                    cr[4] += vnr * jump_psi * pr.psi;
                    cr[8] += vnr * jump_psi;
                    if viscous {
                        let fvl = crate::physics::contract(&fv[il], n);
                        let fvr = crate::physics::contract(&fv[ir], n);
                        let fstar_v = (fvl + fvr) * 0.5;
                        cl -= fstar_v - fvl;
                        cr += fstar_v - fvr;
                    }
                    let s = metrics.s[q];
                    chunk[q] = [cl * s, cr * s];
                }
            }
            Ok(())
        })
    }

    /// `u_t` for the nodal state `u` at time `t`, written to `du`.
    pub fn rhs(&mut self, u: &[State], t: f64, du: &mut [State]) -> Result<()> {
        let params = self.config.effective_params();
        self.update_primitives(u, &params)?;
        if self.config.viscous {
            self.update_viscous(&params)?;
        }
        self.update_faces(u, &params)?;

        let mesh = self.mesh;
        let op = &mesh.op;
        let np = mesh.nodes_per_element();
        let prims = &self.prims;
        let fv = &self.fv;
        let face_res = &self.face_res;
        let config = &self.config;
        chunked(self.parallel, du, np, |e, res| {
            let el = &mesh.elements[e];
            let pe = &prims[e * np..(e + 1) * np];
            for r in res.iter_mut() {
                *r = State::ZERO;
            }
            // Everything below is first accumulated with the sign it has on
            // the left-hand side, then negated.
            let (g, ch) = (params.gamma, params.ch);
            flux_differencing(
                op,
                el,
                pe,
                res,
                |l, r, n| ec_flux_dot(l, r, n, g, ch),
                |p, n| advective_flux_normal(&p.prim(), n, &params),
            );
            add_noncons_mhd(op, el, pe, res);
            if config.glm {
                add_noncons_glm(op, el, pe, res);
            }
            add_surface(mesh, e, face_res, res);
            for r in res.iter_mut() {
                *r = -*r;
            }
            if config.viscous {
                add_volume_viscous(op, el, &fv[e * np..(e + 1) * np], res);
            }
            for (i, r) in res.iter_mut().enumerate() {
                let j = el.jac[i];
                if params.alpha != 0.0 {
                    r[8] -= j * params.alpha * u[e * np + i][8];
                }
                if let Some(src) = &config.source {
                    r.axpy(j, &src(el.x[i], t));
                }
                *r = *r * (1.0 / j);
            }
            Ok(())
        })
    }

    /// Surface part of the residual (the quantity subtracted from `J u_t`),
    /// mostly for inspection and tests.
    pub fn surface_terms(&mut self, u: &[State]) -> Result<Vec<State>> {
        let params = self.config.effective_params();
        self.update_primitives(u, &params)?;
        if self.config.viscous {
            self.update_viscous(&params)?;
        }
        self.update_faces(u, &params)?;
        let np = self.mesh.nodes_per_element();
        let mut out = vec![State::ZERO; u.len()];
        for (e, res) in out.chunks_mut(np).enumerate() {
            add_surface(self.mesh, e, &self.face_res, res);
        }
        Ok(out)
    }

    /// Lifted entropy-variable gradients at every node.
    pub fn lift_gradients(&mut self, u: &[State]) -> Result<Vec<BlockVec3>> {
        let params = self.config.effective_params();
        self.update_primitives(u, &params)?;
        let mut cfg = self.config.clone();
        cfg.viscous = true;
        let mut tmp = Solver::new(self.mesh, cfg);
        tmp.prims.clone_from(&self.prims);
        tmp.update_viscous(&params)?;
        let np = self.mesh.nodes_per_element();
        Ok((0..self.mesh.n_elements())
            .flat_map(|e| lift_element(self.mesh, e, &tmp.w[e * np..(e + 1) * np], &tmp.wstar))
            .collect())
    }

    /// Nodal viscous fluxes from the last evaluation.
    pub fn viscous_fluxes(&self) -> &[BlockVec3] {
        &self.fv
    }
}

fn add_surface(mesh: &Mesh, e: usize, face_res: &[[State; 2]], res: &mut [State]) {
    let op = &mesh.op;
    let m = op.n_nodes();
    let (w0, wn) = (op.weights[0], op.weights[m - 1]);
    for face in 0..6 {
        let fid = mesh.face_id(e, face);
        let side = if face % 2 == 1 { 0 } else { 1 };
        let inv_w = if face % 2 == 1 { 1.0 / wn } else { 1.0 / w0 };
        let base = fid * m * m;
        for b in 0..m {
            for a in 0..m {
                res[face_node(m, face, a, b)].axpy(inv_w, &face_res[base + a + m * b][side]);
            }
        }
    }
}

/// Strong-form BR1 gradient of the entropy variables for one element:
/// `J Q = sum_l Ja^l D_l W + (W* - W) n s_hat / w_boundary`, then `/ J`.
fn lift_element(mesh: &Mesh, e: usize, w: &[State], wstar: &[State]) -> Vec<BlockVec3> {
    let op = &mesh.op;
    let el = &mesh.elements[e];
    let m = op.n_nodes();
    let st = strides(m);
    let mut q = vec![[State::ZERO; 3]; w.len()];
    for dir in 0..3 {
        let s = st[dir];
        for base in line_starts(m, dir) {
            for a in 0..m {
                let ia = base + a * s;
                let mut dw = State::ZERO;
                for b in 0..m {
                    let dab = op.d(a, b);
                    if dab != 0.0 {
                        dw.axpy(dab, &w[base + b * s]);
                    }
                }
                let ja = el.ja[ia][dir];
                for c in 0..3 {
                    q[ia][c].axpy(ja[c], &dw);
                }
            }
        }
    }
    let (w0, wn) = (op.weights[0], op.weights[m - 1]);
    for face in 0..6 {
        let fid = mesh.face_id(e, face);
        let inv_w = if face % 2 == 1 { 1.0 / wn } else { 1.0 / w0 };
        let fm = &el.faces[face];
        for b in 0..m {
            for a in 0..m {
                let fq = a + m * b;
                let i = face_node(m, face, a, b);
                let jump = wstar[fid * m * m + fq] - w[i];
                for c in 0..3 {
                    q[i][c].axpy(inv_w * fm.n[fq][c] * fm.s[fq], &jump);
                }
            }
        }
    }
    for (qi, j) in q.iter_mut().zip(&el.jac) {
        for c in qi.iter_mut() {
            *c = *c * (1.0 / j);
        }
    }
    q
}

/// Convenience wrapper: `u_t` as a new field.
pub fn compute_rhs(field: &SolutionField, mesh: &Mesh, config: &RhsConfig, t: f64) -> Result<SolutionField> {
    let mut solver = Solver::new(mesh, config.clone());
    let mut du = SolutionField::zeros(mesh);
    solver.rhs(&field.data, t, &mut du.data)?;
    Ok(du)
}

/// Sum of `J w S(u)` over all quadrature nodes.
pub fn total_entropy(u: &[State], mesh: &Mesh, params: &PhysParams) -> Result<f64> {
    let np = mesh.nodes_per_element();
    let mut total = 0.0;
    for (e, el) in mesh.elements.iter().enumerate() {
        let mut part = 0.0;
        for (i, (u, j)) in u[e * np..(e + 1) * np].iter().zip(&el.jac).enumerate() {
            let s = entropy_function(u, params).map_err(|err| locate(mesh, e, i, err))?;
            part += j * node_weight(&mesh.op, i) * s;
        }
        total += part;
    }
    Ok(total)
}

/// Tensor-product quadrature weight of volume node `i`.
#[inline]
pub fn node_weight(op: &Operator1D, i: usize) -> f64 {
    let m = op.n_nodes();
    op.weights[i % m] * op.weights[(i / m) % m] * op.weights[i / (m * m)]
}

/// `sum J w W . u_t`: the semi-discrete rate of change of total entropy.
pub fn entropy_rate_of(u: &[State], du: &[State], mesh: &Mesh, params: &PhysParams) -> Result<f64> {
    let np = mesh.nodes_per_element();
    let mut total = 0.0;
    for (e, el) in mesh.elements.iter().enumerate() {
        let mut part = 0.0;
        for i in 0..np {
            let k = e * np + i;
            let q = cons_to_prim(&u[k], params).map_err(|err| locate(mesh, e, i, err))?;
            let w = entropy_variables_prim(&q, params.gamma);
            part += el.jac[i] * node_weight(&mesh.op, i) * w.dot(&du[k]);
        }
        total += part;
    }
    Ok(total)
}

pub fn entropy_rate(field: &SolutionField, mesh: &Mesh, config: &RhsConfig, t: f64) -> Result<f64> {
    let du = compute_rhs(field, mesh, config, t)?;
    entropy_rate_of(&field.data, &du.data, mesh, &config.params)
}

/// Discrete `||div B||_L2` from the reference-space divergence of the
/// contravariant field. Not normalized; callers divide by the first value.
pub fn divergence_error(state: &[State], mesh: &Mesh) -> f64 {
    let op = &mesh.op;
    let m = op.n_nodes();
    let st = strides(m);
    let np = mesh.nodes_per_element();
    let mut total = 0.0;
    for (e, el) in mesh.elements.iter().enumerate() {
        let u = &state[e * np..(e + 1) * np];
        let mut div = vec![0.0; np];
        for dir in 0..3 {
            let s = st[dir];
            for base in line_starts(m, dir) {
                for a in 0..m {
                    let mut acc = 0.0;
                    for b in 0..m {
                        let ib = base + b * s;
                        let ja = el.ja[ib][dir];
                        acc += op.d(a, b) * (ja[0] * u[ib][5] + ja[1] * u[ib][6] + ja[2] * u[ib][7]);
                    }
                    div[base + a * s] += acc;
                }
            }
        }
        for i in 0..np {
            let d = div[i] / el.jac[i];
            total += el.jac[i] * node_weight(op, i) * d * d;
        }
    }
    total.sqrt()
}
