//! Acceptance suite: one measured check per criterion, each with the
//! tolerance it is judged against. Used by `esdg verify` and by the
//! `acceptance` test target.

use std::time::Instant;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cases::{eoc, l2_error, manufactured_state, CaseKind, CaseSpec, ERROR_VARIABLES};
use crate::cli::{simulate, RunConfig, SimOptions};
use crate::dg::{
    entropy_rate, node_weight, total_entropy, volume_advective_part, volume_noncons_glm, volume_noncons_mhd, FluxMode,
    RhsConfig, SolutionField,
};
use crate::error::Result;
use crate::mesh::{Mesh, MeshConfig, MeshType};
use crate::numflux::{ec_flux_dot, NodePrim};
use crate::operators::Operator1D;
use crate::physics::{
    advective_flux_normal, entropy_flux_potentials, entropy_variables_prim, k_matrices, prim_to_cons,
    viscous_flux_direct, PhysParams, PrimGradient, Primitive, State, NVAR,
};
use crate::timeint::{compute_dt, update_ch, ChPolicy};

/// Reference `L2(rho)` on the `8^3` manufactured level.
pub const REFERENCE_RHO_8: f64 = 6.11e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Names of the sub-checks that failed.
    pub failed: Vec<&'static str>,
    pub detail: String,
    pub seconds: f64,
}

impl Check {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {}: {} ({:.1} s)",
            self.id,
            if self.passed { "PASS".to_string() } else { format!("FAIL: {}", self.failed.join(", ")) },
            self.name,
            self.detail,
            self.seconds
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub seed: u64,
    /// Include the `16^3` manufactured level.
    pub full: bool,
    pub parallel: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Self { seed: 0, full: true, parallel: false }
    }
}

pub const CRITERIA: usize = 10;

pub fn run_criterion(id: usize, s: &Settings) -> Result<Check> {
    let start = Instant::now();
    let (name, parts, detail) = match id {
        1 => operators_suite()?,
        2 => metric_free_stream()?,
        3 => ec_flux_suite(s.seed)?,
        4 => k_matrix_suite(s.seed)?,
        5 => volume_identities(s.seed)?,
        6 => semi_discrete_entropy()?,
        7 => convergence(s)?,
        8 => temporal_entropy_order(s)?,
        9 => divergence_cleaning(s)?,
        10 => orszag_tang(s)?,
        _ => return Err(crate::Error::InvalidInput(format!("no criterion {id}"))),
    };
    Ok(Check {
        id,
        name,
        passed: parts.iter().all(|p| p.1),
        failed: parts.iter().filter(|p| !p.1).map(|p| p.0).collect(),
        detail,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn run_all(s: &Settings) -> Result<Vec<Check>> {
    (1..=CRITERIA).map(|id| run_criterion(id, s)).collect()
}

/// Criterion name, named sub-checks and a human-readable measurement.
type Outcome = (&'static str, Vec<(&'static str, bool)>, String);

fn operators_suite() -> Result<Outcome> {
    let (mut sbp, mut quad): (f64, f64) = (0.0, 0.0);
    for n in 1..=8 {
        let op = Operator1D::new(n)?;
        sbp = sbp.max(op.sbp_residual());
        for k in 0..2 * n {
            let approx: f64 = op.nodes.iter().zip(&op.weights).map(|(x, w)| w * x.powi(k as i32)).sum();
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            quad = quad.max((approx - exact).abs());
        }
    }
    Ok((
        "LGL/SBP operators, N=1..8",
        vec![("sbp", sbp <= 1e-13), ("quadrature", quad <= 1e-13)],
        format!("max |Q+Q^T-B| = {sbp:.2e}, max quadrature error = {quad:.2e} (tol 1e-13)"),
    ))
}

fn metric_free_stream() -> Result<Outcome> {
    let (mut ident, mut fs): (f64, f64) = (0.0, 0.0);
    let params = PhysParams::new(5.0 / 3.0, 0.01, 0.02, 0.72)?.with_ch(1.7);
    let q = Primitive { rho: 1.2, v: [0.3, -0.2, 0.5], p: 0.8, b: [0.6, -0.4, 0.9], psi: 0.1 };
    let u = prim_to_cons(&q, &params)?;
    for kind in [MeshType::A, MeshType::B] {
        for n in [3, 4] {
            let mesh = Mesh::build(MeshConfig::of_type(kind, 4, n))?;
            ident = ident.max(mesh.metric_identity_residual());
            let field = SolutionField::from_fn(&mesh, |_| u);
            let cfg = RhsConfig::new(FluxMode::Es, params);
            let du = crate::dg::compute_rhs(&field, &mesh, &cfg, 0.0)?;
            fs = du.data.iter().fold(fs, |m, s| m.max(s.max_abs()));
        }
    }
    Ok((
        "metric identities and free stream, meshes a/b, N=3,4",
        vec![("metric identities", ident <= 1e-12), ("free stream", fs <= 1e-11)],
        format!("metric identity residual {ident:.2e} (tol 1e-12), free-stream |u_t| {fs:.2e} (tol 1e-11)"),
    ))
}

fn random_prim(rng: &mut ChaCha8Rng) -> Primitive {
    Primitive {
        rho: rng.gen_range(0.2..3.0),
        v: [0; 3].map(|_| rng.gen_range(-1.5..1.5)),
        p: rng.gen_range(0.2..3.0),
        b: [0; 3].map(|_| rng.gen_range(-1.5..1.5)),
        psi: rng.gen_range(-0.5..0.5),
    }
}

/// Random pair; every tenth pair is a tiny perturbation, exercising the
/// series branch of the logarithmic mean.
fn random_pair(rng: &mut ChaCha8Rng, i: usize) -> (Primitive, Primitive) {
    let a = random_prim(rng);
    let b = if i % 10 == 0 {
        let mut f = || 1.0 + rng.gen_range(-1e-6..1e-6);
        Primitive {
            rho: a.rho * f(),
            v: a.v.map(|x| x * f()),
            p: a.p * f(),
            b: a.b.map(|x| x * f()),
            psi: a.psi * f(),
        }
    } else {
        random_prim(rng)
    };
    (a, b)
}

const UNIT: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

fn ec_flux_suite(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = PhysParams::ideal(5.0 / 3.0).with_ch(1.3);
    let (g, ch) = (params.gamma, params.ch);
    let (mut cond, mut cons, mut sym): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..10_000 {
        let (a, b) = random_pair(&mut rng, i);
        let (ua, ub) = (prim_to_cons(&a, &params)?, prim_to_cons(&b, &params)?);
        let (wa, wb) = (entropy_variables_prim(&a, g), entropy_variables_prim(&b, g));
        let (pa, pb) = (entropy_flux_potentials(&ua, &params)?, entropy_flux_potentials(&ub, &params)?);
        let theta = |q: &Primitive| q.rho / q.p * (q.v[0] * q.b[0] + q.v[1] * q.b[1] + q.v[2] * q.b[2]);
        let (ta, tb) = (theta(&a), theta(&b));
        let (na, nb) = (NodePrim::from_prim(&a), NodePrim::from_prim(&b));
        for (d, n) in UNIT.iter().enumerate() {
            let f = ec_flux_dot(&na, &nb, n, g, ch);
            let dw = wb - wa;
            let lhs = dw.dot(&f);
            let psi = |p: &[[f64; 3]; 3]| p[0][d] + p[1][d] + p[2][d];
            let bavg = 0.5 * (a.b[d] + b.b[d]);
            let rhs = psi(&pb) - psi(&pa) - bavg * (tb - ta);
            let scale = (0..NVAR).map(|k| (dw[k] * f[k]).abs()).sum::<f64>()
                + psi(&pa).abs()
                + psi(&pb).abs()
                + bavg.abs() * (ta.abs() + tb.abs());
            cond = cond.max((lhs - rhs).abs() / scale);

            let fr = ec_flux_dot(&nb, &na, n, g, ch);
            sym = sym.max((f - fr).max_abs() / f.max_abs().max(1e-300));
            let fa = advective_flux_normal(&a, n, &params);
            let faa = ec_flux_dot(&na, &na, n, g, ch);
            cons = cons.max((fa - faa).max_abs() / fa.max_abs().max(1.0));
        }
    }
    Ok((
        "EC flux: entropy condition, consistency, symmetry (1e4 pairs x 3 directions)",
        vec![("ec condition", cond <= 1e-12), ("consistency", cons <= 1e-13), ("symmetry", sym <= 1e-13)],
        format!("EC condition {cond:.2e} (tol 1e-12), consistency {cons:.2e}, symmetry {sym:.2e} (tol 1e-13)"),
    ))
}

/// `dw / d(rho, v, p, B, psi)` as a 9x9 matrix, rows indexed by `w`.
fn dw_dprim(q: &Primitive, gamma: f64) -> [[f64; NVAR]; NVAR] {
    let (rho, p) = (q.rho, q.p);
    let beta = rho / (2.0 * p);
    let v2 = q.v.iter().map(|x| x * x).sum::<f64>();
    let mut m = [[0.0; NVAR]; NVAR];
    m[0][0] = gamma / (rho * (gamma - 1.0)) - v2 / (2.0 * p);
    m[0][4] = -1.0 / (p * (gamma - 1.0)) + v2 * rho / (2.0 * p * p);
    for k in 0..3 {
        m[0][1 + k] = -2.0 * beta * q.v[k];
        m[1 + k][0] = q.v[k] / p;
        m[1 + k][4] = -rho * q.v[k] / (p * p);
        m[1 + k][1 + k] = 2.0 * beta;
        m[5 + k][0] = q.b[k] / p;
        m[5 + k][4] = -rho * q.b[k] / (p * p);
        m[5 + k][5 + k] = 2.0 * beta;
    }
    m[4][0] = -1.0 / p;
    m[4][4] = rho / (p * p);
    m[8][0] = q.psi / p;
    m[8][4] = -rho * q.psi / (p * p);
    m[8][8] = 2.0 * beta;
    m
}

fn k_matrix_suite(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4b);
    let gamma = 5.0 / 3.0;
    let full_params = PhysParams::new(gamma, 0.02, 0.03, 0.72)?;

    // K_ij = K_ji^T, and K q . q >= 0
    let (mut sym, mut psd): (f64, f64) = (0.0, f64::INFINITY);
    for _ in 0..10_000 {
        let q = random_prim(&mut rng);
        let k = k_matrices(&entropy_variables_prim(&q, gamma), &full_params)?.full();
        let kmax = k.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
        for r in 0..27 {
            for c in 0..27 {
                sym = sym.max((k[r][c] - k[c][r]).abs() / kmax);
            }
        }
        let v: Vec<f64> = (0..27).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let quad: f64 = (0..27).map(|r| v[r] * (0..27).map(|c| k[r][c] * v[c]).sum::<f64>()).sum();
        let norm2: f64 = v.iter().map(|x| x * x).sum();
        psd = psd.min(quad / norm2);
    }

    // resistive part only
    let eta = 0.03;
    let res_params = PhysParams::new(gamma, 0.0, eta, 0.72)?;
    let mut eig: f64 = 0.0;
    for _ in 0..200 {
        let q = random_prim(&mut rng);
        let k = k_matrices(&entropy_variables_prim(&q, gamma), &res_params)?.full();
        let m = DMatrix::from_fn(27, 27, |r, c| k[r][c]);
        let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        let b2 = q.b.iter().map(|x| x * x).sum::<f64>();
        let mut expect = vec![0.0; 24];
        expect.push(2.0 * eta * q.p / q.rho);
        expect.extend([eta * q.p * (b2 + 2.0) / q.rho; 2]);
        expect.sort_by(f64::total_cmp);
        let top = expect[26];
        for (a, b) in ev.iter().zip(&expect) {
            eig = eig.max((a - b).abs() / top);
        }
    }

    // K grad w against the flux written in primitive gradients
    let mut direct: f64 = 0.0;
    for _ in 0..1000 {
        let q = random_prim(&mut rng);
        let u = prim_to_cons(&q, &full_params)?;
        let mut gp = PrimGradient::default();
        for row in gp.0.iter_mut() {
            for x in row.iter_mut() {
                *x = rng.gen_range(-2.0..2.0);
            }
        }
        let j = dw_dprim(&q, gamma);
        let gw: [State; 3] = [0, 1, 2].map(|d| {
            let mut s = State::ZERO;
            for r in 0..NVAR {
                s[r] = (0..NVAR).map(|c| j[r][c] * gp.0[c][d]).sum();
            }
            s
        });
        let a = k_matrices(&entropy_variables_prim(&q, gamma), &full_params)?.apply(&gw);
        let b = viscous_flux_direct(&u, &gp, &full_params)?;
        let scale = b.iter().fold(0.0f64, |m, s| m.max(s.max_abs()));
        for d in 0..3 {
            direct = direct.max((a[d] - b[d]).max_abs() / scale);
        }
    }
    Ok((
        "K matrices: symmetry, resistive spectrum, PSD, K grad w = viscous flux",
        vec![
            ("symmetry", sym <= 1e-14),
            ("resistive spectrum", eig <= 1e-9),
            ("semi-definite", psd >= -1e-12),
            ("K grad w", direct <= 1e-10),
        ],
        format!(
            "symmetry {sym:.2e}, eigenvalues {eig:.2e} (tol 1e-9), min q.Kq/|q|^2 {psd:.2e} (tol -1e-12), K grad w vs direct {direct:.2e} (tol 1e-10)"
        ),
    ))
}

fn volume_identities(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5c);
    let params = PhysParams::ideal(5.0 / 3.0).with_ch(0.9);
    let (mut mhd, mut glm): (f64, f64) = (0.0, 0.0);
    for n in [2, 3, 4] {
        let mesh = Mesh::build(MeshConfig::of_type(MeshType::B, 2, n))?;
        let el = &mesh.elements[0];
        let op = &mesh.op;
        for _ in 0..100 {
            let prims: Vec<Primitive> = el.x.iter().map(|_| random_prim(&mut rng)).collect();
            let nodes: Vec<NodePrim> = prims.iter().map(NodePrim::from_prim).collect();
            let w: Vec<State> = prims.iter().map(|q| entropy_variables_prim(q, params.gamma)).collect();
            let contract = |terms: &[Vec<State>]| {
                let (mut sum, mut scale) = (0.0, 0.0);
                for i in 0..w.len() {
                    let wt = node_weight(op, i);
                    for t in terms {
                        sum += wt * w[i].dot(&t[i]);
                        scale += wt * (0..NVAR).map(|k| (w[i][k] * t[i][k]).abs()).sum::<f64>();
                    }
                }
                sum.abs() / scale
            };
            mhd = mhd.max(contract(&[
                volume_advective_part(op, el, &nodes, &params, 1),
                volume_noncons_mhd(op, el, &nodes),
            ]));
            glm = glm.max(contract(&[
                volume_advective_part(op, el, &nodes, &params, 2),
                volume_noncons_glm(op, el, &nodes),
            ]));
        }
    }
    Ok((
        "volume contraction identities (MHD and GLM parts), warped element, N=2,3,4",
        vec![("mhd", mhd <= 1e-11), ("glm", glm <= 1e-11)],
        format!("MHD {mhd:.2e}, GLM {glm:.2e} relative to the summed magnitudes (tol 1e-11)"),
    ))
}

fn semi_discrete_entropy() -> Result<Outcome> {
    let spec = CaseSpec::defaults(CaseKind::BlastWave);
    let mesh = Mesh::build(spec.mesh_config())?;
    let field = spec.initial_field(&mesh);
    let base = spec.params()?;
    let ch = update_ch(&field.data, &base, ChPolicy::Proportional)?;
    let ideal = base.with_ch(ch);
    let visc = PhysParams { mu: 0.005, eta: 0.005, ..PhysParams::new(base.gamma, 0.005, 0.005, 0.72)? }.with_ch(ch);
    let s = total_entropy(&field.data, &mesh, &ideal)?.abs();
    let tol = 1e-10 * s;
    let rate = |mode, p| entropy_rate(&field, &mesh, &RhsConfig::new(mode, p), 0.0);
    let ec = rate(FluxMode::Ec, ideal)?;
    let es = rate(FluxMode::Es, ideal)?;
    let ecv = rate(FluxMode::Ec, visc)?;
    let esv = rate(FluxMode::Es, visc)?;
    Ok((
        "semi-discrete entropy, blast wave, mesh b 3^3, N=3",
        vec![
            ("ec conserves", ec.abs() <= tol),
            ("es dissipates", es <= tol),
            ("viscous dissipates", ecv <= tol && esv <= tol),
        ],
        format!("|S| = {s:.4}; EC {ec:.2e}, ES {es:.2e}, EC+visc {ecv:.2e}, ES+visc {esv:.2e} (tol {tol:.1e})"),
    ))
}

fn convergence(s: &Settings) -> Result<Outcome> {
    let mut cfg = RunConfig::new(CaseSpec::defaults(CaseKind::Manufactured));
    // The step size estimate is conservative; CFL 1 keeps the temporal error
    // far below the spatial one (see notes) and halves the cost.
    cfg.cfl = 1.0;
    let levels: &[usize] = if s.full { &[4, 8, 16] } else { &[4, 8] };
    let params = cfg.case.params()?;
    let opts = SimOptions { parallel: s.parallel, cadence: 0, ..Default::default() };
    let mut errors = Vec::new();
    for &n in levels {
        let o = simulate(&cfg, n, &opts)?;
        if let Some(c) = o.crash {
            return Ok(("manufactured solution convergence", vec![("eoc", false)], format!("{n}^3 crashed: {}", c.message)));
        }
        errors.push(l2_error(&o.field, &o.mesh, |x| manufactured_state(x, o.t_final), &params)?);
    }
    let mut rates = Vec::new();
    for k in 0..7 {
        rates.push(eoc(&errors.iter().map(|e| e[k]).collect::<Vec<_>>())?.1);
    }
    let threshold = if s.full { 3.8 } else { 3.5 };
    let min_rate = rates.iter().copied().fold(f64::INFINITY, f64::min);
    let rho8 = errors[1][0];
    let ratio = rho8 / REFERENCE_RHO_8;
    let eoc_ok = min_rate >= threshold;
    let table_ok = (1.0 / 3.0..=3.0).contains(&ratio);
    let eocs: Vec<String> = ERROR_VARIABLES.iter().zip(&rates).map(|(v, r)| format!("{v} {r:.2}")).collect();
    let rho: Vec<String> = levels.iter().zip(&errors).map(|(n, e)| format!("{n}^3 {:.3e}", e[0])).collect();
    Ok((
        "manufactured solution convergence, N=3, mesh b",
        vec![("eoc", eoc_ok), ("table level", table_ok)],
        format!(
            "avg EOC [{}] (min {min_rate:.2}, need >= {threshold}) {}; L2(rho) [{}], 8^3 / reference = {ratio:.2} (need within 3x) {}",
            eocs.join(", "),
            if eoc_ok { "ok" } else { "low" },
            rho.join(", "),
            if table_ok { "ok" } else { "outside" }
        ),
    ))
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let num: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let den: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    num / den
}

fn temporal_entropy_order(s: &Settings) -> Result<Outcome> {
    let mut cfg = RunConfig::new(CaseSpec::defaults(CaseKind::BlastWave));
    cfg.flux = FluxMode::Ec;
    cfg.case.t_end = 0.2;
    let mesh = Mesh::build(cfg.case.mesh_config())?;
    let field = cfg.case.initial_field(&mesh);
    let p = cfg.case.params()?;
    let p = p.with_ch(update_ch(&field.data, &p, ChPolicy::Proportional)?);
    let dt_max = compute_dt(&field.data, &mesh, &p, 1.0)?;
    let dt0 = cfg.case.t_end / (cfg.case.t_end / dt_max).ceil();
    let opts = SimOptions { parallel: s.parallel, cadence: 0, ..Default::default() };
    let (mut dts, mut ds) = (Vec::new(), Vec::new());
    let mut s0 = 0.0;
    for k in 0..5 {
        cfg.fixed_dt = Some(dt0 / f64::from(1 << k));
        let o = simulate(&cfg, cfg.case.elements, &opts)?;
        if let Some(c) = o.crash {
            return Ok(("temporal entropy order", vec![("slope", false)], format!("dt {:.3e} crashed: {}", dt0, c.message)));
        }
        s0 = o.initial_entropy();
        dts.push(cfg.fixed_dt.unwrap());
        ds.push((o.final_entropy() - s0).abs());
    }
    // the plateau sits near 1e-15 |S|; anything a hundred ulps above it counts
    let floor = 100.0 * f64::EPSILON * s0.abs();
    let keep: Vec<usize> = (0..dts.len()).filter(|&i| ds[i] > floor).collect();
    let slope = if keep.len() >= 2 {
        loglog_slope(&keep.iter().map(|&i| dts[i]).collect::<Vec<_>>(), &keep.iter().map(|&i| ds[i]).collect::<Vec<_>>())
    } else {
        f64::NAN
    };
    let local: Vec<String> = keep.windows(2).map(|w| format!("{:.2}", (ds[w[0]] / ds[w[1]]).log2())).collect();
    let pairs: Vec<String> = dts.iter().zip(&ds).map(|(d, e)| format!("{d:.2e}:{e:.2e}")).collect();
    Ok((
        "temporal entropy order, EC blast wave, mesh b 3^3",
        vec![("slope", (slope - 4.0).abs() <= 0.4)],
        format!(
            "slope {slope:.2} over {} points above plateau (need 4 +- 0.4), local [{}]; dt:|dS| [{}]",
            keep.len(),
            local.join(", "),
            pairs.join(", ")
        ),
    ))
}

fn divergence_cleaning(s: &Settings) -> Result<Outcome> {
    let mut cfg = RunConfig::new(CaseSpec::defaults(CaseKind::GaussianPulse));
    let opts = SimOptions { parallel: s.parallel, cadence: 5, ..Default::default() };
    let mut summary = |policy: ChPolicy, alpha: f64| -> Result<(f64, f64, Option<String>)> {
        cfg.case.ch_policy = policy;
        cfg.case.alpha = alpha;
        let o = simulate(&cfg, cfg.case.elements, &opts)?;
        let d0 = o.history[0].div_b;
        let peak = o.history.iter().fold(0.0f64, |m, r| m.max(r.div_b)) / d0;
        let last = o.history.last().map_or(f64::NAN, |r| r.div_b) / d0;
        Ok((last, peak, o.crash.map(|c| c.message)))
    };
    let (clean_last, clean_peak, clean_crash) = summary(ChPolicy::Proportional, 1.0)?;
    let (none_last, none_peak, none_crash) = summary(ChPolicy::Zero, 0.0)?;
    let parts = vec![
        ("cleaning decays", clean_crash.is_none() && clean_last < 0.5 * clean_peak),
        ("no cleaning persists", none_last >= 0.9 * none_peak),
    ];
    let crash_note = match (&clean_crash, &none_crash) {
        (None, None) => String::new(),
        (a, b) => format!("; crashes: cleaning {a:?}, no cleaning {b:?}"),
    };
    Ok((
        "divergence cleaning, Gaussian pulse, mesh a 8^3",
        parts,
        format!(
            "normalized |div B| final/peak: c_h prop + alpha=1 {clean_last:.3}/{clean_peak:.3} (need < 0.5 of peak), c_h=0 {none_last:.3}/{none_peak:.3} (need >= 0.9 of peak){crash_note}"
        ),
    ))
}

fn orszag_tang(s: &Settings) -> Result<Outcome> {
    let cfg = RunConfig::new(CaseSpec::defaults(CaseKind::OrszagTang));
    let opts = SimOptions { parallel: s.parallel, cadence: 1, ..Default::default() };
    let o = simulate(&cfg, cfg.case.elements, &opts)?;
    let s0 = o.initial_entropy().abs();
    let worst = o.history.iter().fold(f64::NEG_INFINITY, |m, r| m.max(r.entropy_rate));
    let parts = vec![("no positivity failure", o.crash.is_none()), ("entropy rate", worst <= 1e-10 * s0)];
    let status = match &o.crash {
        None => format!("reached t = {}", o.t_final),
        Some(c) => format!("crashed at t = {:.4}: {}", c.time, c.message),
    };
    Ok((
        "Orszag-Tang robustness, ES + BR1 + GLM, mesh a 8^3, CFL 0.5",
        parts,
        format!(
            "{status} in {} steps; max dS/dt over {} records = {worst:.3e} (tol {:.1e})",
            o.steps,
            o.history.len(),
            1e-10 * s0
        ),
    ))
}
