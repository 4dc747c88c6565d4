//! Fully periodic curvilinear hexahedral meshes with curl-form metrics.

use crate::error::{Error, Result};
use crate::operators::Operator1D;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Identity,
    /// `x_l = chi_l + 0.1 sin(pi chi_1) sin(pi chi_2) sin(pi chi_3)`.
    SineWarp,
}

pub fn sine_warp(chi: [f64; 3]) -> [f64; 3] {
    use std::f64::consts::PI;
    let s = 0.1 * (PI * chi[0]).sin() * (PI * chi[1]).sin() * (PI * chi[2]).sin();
    [chi[0] + s, chi[1] + s, chi[2] + s]
}

impl Transform {
    pub fn apply(&self, chi: [f64; 3]) -> [f64; 3] {
        match self {
            Transform::Identity => chi,
            Transform::SineWarp => sine_warp(chi),
        }
    }
}

/// The two warped test meshes: (a) on the unit cube, (b) on a shifted box of
/// edge length 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshType {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshConfig {
    pub elements: [usize; 3],
    pub lower: [f64; 3],
    pub upper: [f64; 3],
    pub transform: Transform,
    pub degree: usize,
}

impl MeshConfig {
    pub fn of_type(kind: MeshType, n: usize, degree: usize) -> Self {
        let (lower, upper) = match kind {
            MeshType::A => ([0.0; 3], [1.0; 3]),
            MeshType::B => ([-0.6, -0.8, -0.7], [1.4, 1.2, 1.3]),
        };
        Self {
            elements: [n; 3],
            lower,
            upper,
            transform: Transform::SineWarp,
            degree,
        }
    }

    pub fn cartesian(elements: [usize; 3], lower: [f64; 3], upper: [f64; 3], degree: usize) -> Self {
        Self {
            elements,
            lower,
            upper,
            transform: Transform::Identity,
            degree,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.elements.iter().any(|&n| n == 0) {
            return Err(Error::InvalidInput("need at least one element per dimension".into()));
        }
        for d in 0..3 {
            if !(self.upper[d] > self.lower[d]) {
                return Err(Error::InvalidInput(format!("degenerate domain bounds in dimension {d}")));
            }
        }
        Ok(())
    }
}

/// Surface metrics on one local face: `s_hat` and the outward unit normal at
/// the `(N+1)^2` face nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceMetrics {
    pub s: Vec<f64>,
    pub n: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElementGeometry {
    pub x: Vec<[f64; 3]>,
    pub jac: Vec<f64>,
    /// `ja[node][i]` is the volume-weighted contravariant vector `J a^i`.
    pub ja: Vec<[[f64; 3]; 3]>,
    pub faces: [FaceMetrics; 6],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceConnection {
    pub left: usize,
    pub face_left: usize,
    pub right: usize,
    pub face_right: usize,
    pub orientation: Orientation,
}

#[derive(Debug, Clone)]
pub struct Mesh {
    pub config: MeshConfig,
    pub op: Operator1D,
    pub elements: Vec<ElementGeometry>,
    /// Face `3 e + d` joins the `+d` face of element `e` to the `-d` face of
    /// its neighbour.
    pub faces: Vec<FaceConnection>,
}

/// Volume node index with `i` (the xi direction) running fastest.
#[inline]
pub fn node_index(m: usize, i: usize, j: usize, k: usize) -> usize {
    i + m * (j + m * k)
}

/// Volume node index of face node `(a, b)` on local face `face`.
/// Faces are numbered `-xi, +xi, -eta, +eta, -zeta, +zeta`.
#[inline]
pub fn face_node(m: usize, face: usize, a: usize, b: usize) -> usize {
    let fixed = if face % 2 == 0 { 0 } else { m - 1 };
    match face / 2 {
        0 => node_index(m, fixed, a, b),
        1 => node_index(m, a, fixed, b),
        _ => node_index(m, a, b, fixed),
    }
}

/// Apply `D` along reference direction `dir` to a nodal scalar field.
pub fn d_along(op: &Operator1D, dir: usize, f: &[f64]) -> Vec<f64> {
    let m = op.n_nodes();
    let stride = [1, m, m * m][dir];
    let mut out = vec![0.0; f.len()];
    for idx in 0..f.len() {
        let pos = (idx / stride) % m;
        let base = idx - pos * stride;
        let mut s = 0.0;
        for q in 0..m {
            s += op.d(pos, q) * f[base + q * stride];
        }
        out[idx] = s;
    }
    out
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn covariant(x: &[[f64; 3]], op: &Operator1D) -> [Vec<[f64; 3]>; 3] {
    let comps: Vec<Vec<f64>> = (0..3).map(|c| x.iter().map(|p| p[c]).collect()).collect();
    [0, 1, 2].map(|dir| {
        let dc: Vec<Vec<f64>> = comps.iter().map(|c| d_along(op, dir, c)).collect();
        (0..x.len()).map(|i| [dc[0][i], dc[1][i], dc[2][i]]).collect()
    })
}

/// Curl-form metrics `Ja_n^i = -e_i . curl_xi(X_l grad_xi X_m)`, `(n, m, l)`
/// cyclic, and the Jacobian from the covariant triple product.
///
/// Returns `(J, Ja)` with `Ja[node][i][n]`.
pub fn compute_metrics_curl(x: &[[f64; 3]], op: &Operator1D) -> Result<(Vec<f64>, Vec<[[f64; 3]; 3]>)> {
    let nn = x.len();
    let a = covariant(x, op);
    let mut jac = vec![0.0; nn];
    for (idx, j) in jac.iter_mut().enumerate() {
        *j = {
            let c = cross(a[1][idx], a[2][idx]);
            a[0][idx][0] * c[0] + a[0][idx][1] * c[1] + a[0][idx][2] * c[2]
        };
        if !(*j > 0.0) {
            return Err(Error::Jacobian { element: 0, node: idx, value: *j });
        }
    }
    let mut ja = vec![[[0.0; 3]; 3]; nn];
    for n in 0..3 {
        let m_ = (n + 1) % 3;
        let l = (n + 2) % 3;
        // v_k = X_l dX_m/dxi_k
        let v: Vec<Vec<f64>> = (0..3)
            .map(|k| (0..nn).map(|idx| x[idx][l] * a[k][idx][m_]).collect())
            .collect();
        // dv[k][j] = d v_k / d xi_j
        let dv: Vec<Vec<Vec<f64>>> = v
            .iter()
            .map(|vk| (0..3).map(|j| d_along(op, j, vk)).collect())
            .collect();
        for idx in 0..nn {
            let curl = [
                dv[2][1][idx] - dv[1][2][idx],
                dv[0][2][idx] - dv[2][0][idx],
                dv[1][0][idx] - dv[0][1][idx],
            ];
            for i in 0..3 {
                ja[idx][i][n] = -curl[i];
            }
        }
    }
    Ok((jac, ja))
}

/// Cross-product metrics `Ja^i = a_j x a_k`. Kept only as a diagnostic
/// contrast: these do not satisfy the discrete metric identities on curved
/// elements.
pub fn compute_metrics_cross(x: &[[f64; 3]], op: &Operator1D) -> Vec<[[f64; 3]; 3]> {
    let a = covariant(x, op);
    (0..x.len())
        .map(|idx| {
            [
                cross(a[1][idx], a[2][idx]),
                cross(a[2][idx], a[0][idx]),
                cross(a[0][idx], a[1][idx]),
            ]
        })
        .collect()
}

/// `max_node max_n |sum_i D_i Ja_n^i|`.
pub fn metric_identity_residual(ja: &[[[f64; 3]; 3]], op: &Operator1D) -> f64 {
    let mut worst: f64 = 0.0;
    for n in 0..3 {
        let mut sum = vec![0.0; ja.len()];
        for i in 0..3 {
            let comp: Vec<f64> = ja.iter().map(|v| v[i][n]).collect();
            for (s, d) in sum.iter_mut().zip(d_along(op, i, &comp)) {
                *s += d;
            }
        }
        worst = sum.iter().fold(worst, |w, v| w.max(v.abs()));
    }
    worst
}

/// Outward `(s_hat, n)` on the six faces from nodal contravariant vectors.
pub fn surface_metrics(ja: &[[[f64; 3]; 3]], m: usize) -> std::result::Result<[FaceMetrics; 6], usize> {
    let mut out: Vec<FaceMetrics> = Vec::with_capacity(6);
    for face in 0..6 {
        let dir = face / 2;
        let sign = if face % 2 == 0 { -1.0 } else { 1.0 };
        let mut s = Vec::with_capacity(m * m);
        let mut n = Vec::with_capacity(m * m);
        for b in 0..m {
            for a in 0..m {
                let v = ja[face_node(m, face, a, b)][dir];
                let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                if !(len > 0.0) {
                    return Err(face);
                }
                s.push(len);
                n.push([sign * v[0] / len, sign * v[1] / len, sign * v[2] / len]);
            }
        }
        out.push(FaceMetrics { s, n });
    }
    Ok(out.try_into().expect("six faces"))
}

impl Mesh {
    pub fn build(config: MeshConfig) -> Result<Self> {
        config.validate()?;
        let op = Operator1D::new(config.degree)?;
        let m = op.n_nodes();
        let [n1, n2, n3] = config.elements;
        let h = [0, 1, 2].map(|d| (config.upper[d] - config.lower[d]) / config.elements[d] as f64);
        let mut elements = Vec::with_capacity(n1 * n2 * n3);
        for e3 in 0..n3 {
            for e2 in 0..n2 {
                for e1 in 0..n1 {
                    let e = [e1, e2, e3];
                    let eid = elements.len();
                    let mut x = Vec::with_capacity(m * m * m);
                    for k in 0..m {
                        for j in 0..m {
                            for i in 0..m {
                                let xi = [op.nodes[i], op.nodes[j], op.nodes[k]];
                                let chi = [0, 1, 2].map(|d| {
                                    config.lower[d] + (e[d] as f64 + 0.5 * (xi[d] + 1.0)) * h[d]
                                });
                                x.push(config.transform.apply(chi));
                            }
                        }
                    }
                    let (jac, ja) = compute_metrics_curl(&x, &op).map_err(|err| match err {
                        Error::Jacobian { node, value, .. } => Error::Jacobian { element: eid, node, value },
                        other => other,
                    })?;
                    let faces = surface_metrics(&ja, m)
                        .map_err(|face| Error::DegenerateFace { element: eid, face })?;
                    elements.push(ElementGeometry { x, jac, ja, faces });
                }
            }
        }
        let mut mesh = Self {
            config,
            op,
            elements,
            faces: Vec::new(),
        };
        mesh.faces = (0..mesh.n_elements())
            .flat_map(|e| (0..3).map(move |d| (e, d)))
            .map(|(e, d)| FaceConnection {
                left: e,
                face_left: 2 * d + 1,
                right: mesh.neighbor(e, d, true),
                face_right: 2 * d,
                orientation: Orientation::Identity,
            })
            .collect();
        Ok(mesh)
    }

    pub fn n_elements(&self) -> usize {
        self.config.elements.iter().product()
    }

    pub fn nodes_per_element(&self) -> usize {
        let m = self.op.n_nodes();
        m * m * m
    }

    pub fn element_coords(&self, e: usize) -> [usize; 3] {
        let [n1, n2, _] = self.config.elements;
        [e % n1, (e / n1) % n2, e / (n1 * n2)]
    }

    pub fn element_id(&self, c: [usize; 3]) -> usize {
        let [n1, n2, _] = self.config.elements;
        c[0] + n1 * (c[1] + n2 * c[2])
    }

    /// Periodic neighbour across the `+dir` (or `-dir`) face.
    pub fn neighbor(&self, e: usize, dir: usize, plus: bool) -> usize {
        let mut c = self.element_coords(e);
        let n = self.config.elements[dir];
        c[dir] = if plus { (c[dir] + 1) % n } else { (c[dir] + n - 1) % n };
        self.element_id(c)
    }

    /// Face id shared with the neighbour across local face `face` of `e`.
    pub fn face_id(&self, e: usize, face: usize) -> usize {
        let dir = face / 2;
        if face % 2 == 1 {
            3 * e + dir
        } else {
            3 * self.neighbor(e, dir, false) + dir
        }
    }

    /// Physical period of the domain in each direction.
    pub fn period(&self) -> [f64; 3] {
        [0, 1, 2].map(|d| self.config.upper[d] - self.config.lower[d])
    }

    pub fn total_volume(&self) -> f64 {
        let w = &self.op.weights;
        let m = self.op.n_nodes();
        let mut v = 0.0;
        for el in &self.elements {
            for k in 0..m {
                for j in 0..m {
                    for i in 0..m {
                        v += el.jac[node_index(m, i, j, k)] * w[i] * w[j] * w[k];
                    }
                }
            }
        }
        v
    }

    /// Largest distance between matched face nodes, after removing the
    /// periodic shift on wrap-around faces.
    pub fn watertight_residual(&self) -> f64 {
        let m = self.op.n_nodes();
        let period = self.period();
        let mut worst: f64 = 0.0;
        for f in &self.faces {
            let dir = f.face_left / 2;
            let wraps = self.element_coords(f.left)[dir] == self.config.elements[dir] - 1;
            for b in 0..m {
                for a in 0..m {
                    let xl = self.elements[f.left].x[face_node(m, f.face_left, a, b)];
                    let xr = self.elements[f.right].x[face_node(m, f.face_right, a, b)];
                    for c in 0..3 {
                        let shift = if wraps && c == dir { period[c] } else { 0.0 };
                        worst = worst.max((xl[c] - (xr[c] + shift)).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest mismatch of `s_hat` and `n_left + n_right` over all faces.
    pub fn surface_mismatch(&self) -> (f64, f64) {
        let m = self.op.n_nodes();
        let (mut ds, mut dn): (f64, f64) = (0.0, 0.0);
        for f in &self.faces {
            let fl = &self.elements[f.left].faces[f.face_left];
            let fr = &self.elements[f.right].faces[f.face_right];
            for q in 0..m * m {
                ds = ds.max((fl.s[q] - fr.s[q]).abs());
                for c in 0..3 {
                    dn = dn.max((fl.n[q][c] + fr.n[q][c]).abs());
                }
            }
        }
        (ds, dn)
    }

    /// Worst metric identity residual over all elements.
    pub fn metric_identity_residual(&self) -> f64 {
        self.elements
            .iter()
            .map(|el| metric_identity_residual(&el.ja, &self.op))
            .fold(0.0, f64::max)
    }
}
