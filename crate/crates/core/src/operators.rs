//! One-dimensional Legendre-Gauss-Lobatto collocation operators.
//!
//! Everything in the tensor-product kernels is built from the 1D nodes,
//! weights and the differentiation matrix `D` defined here. On LGL nodes
//! `Q = diag(w) D` satisfies the summation-by-parts property `Q + Q^T = B`.

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 10;

/// Legendre polynomial `P_n(x)` and `P_{n-1}(x)` by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut pm1, mut p) = (1.0, x);
    for k in 1..n {
        let kf = k as f64;
        let pn = ((2.0 * kf + 1.0) * x * p - kf * pm1) / (kf + 1.0);
        pm1 = p;
        p = pn;
    }
    (p, pm1)
}

pub fn legendre(n: usize, x: f64) -> f64 {
    legendre_pair(n, x).0
}

/// LGL nodes and weights for polynomial degree `n`.
///
/// Interior nodes are the roots of `q = P_{n+1} - P_{n-1}`, found by Newton
/// iteration from Chebyshev-Gauss-Lobatto guesses (`q' = (2n+1) P_n`).
pub fn lgl_nodes_weights(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "LGL operators need degree N >= 1".into(),
        ));
    }
    if n > MAX_DEGREE {
        return Err(Error::InvalidInput(format!(
            "degree N = {n} exceeds supported maximum {MAX_DEGREE}"
        )));
    }
    let nf = n as f64;
    let mut x = vec![0.0; n + 1];
    x[0] = -1.0;
    x[n] = 1.0;
    for (j, xj) in x.iter_mut().enumerate().take(n).skip(1) {
        let mut t = -(std::f64::consts::PI * j as f64 / nf).cos();
        for _ in 0..50 {
            let (pn, _) = legendre_pair(n, t);
            let q = legendre(n + 1, t) - legendre(n - 1, t);
            let dt = q / ((2.0 * nf + 1.0) * pn);
            t -= dt;
            if dt.abs() <= 1e-15 {
                break;
            }
        }
        *xj = t;
    }
    // Symmetrize about zero so mirrored nodes agree to the last bit.
    for j in 0..=n / 2 {
        let s = 0.5 * (x[n - j] - x[j]);
        x[j] = -s;
        x[n - j] = s;
    }
    if n % 2 == 0 {
        x[n / 2] = 0.0;
    }
    let w = x
        .iter()
        .map(|&xi| {
            let p = legendre(n, xi);
            2.0 / (nf * (nf + 1.0) * p * p)
        })
        .collect();
    Ok((x, w))
}

pub fn barycentric_weights(nodes: &[f64]) -> Result<Vec<f64>> {
    let m = nodes.len();
    let mut w = vec![1.0; m];
    for j in 0..m {
        for k in 0..m {
            if k != j {
                let diff = nodes[j] - nodes[k];
                if diff == 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "duplicate nodes at indices {k} and {j}"
                    )));
                }
                w[j] /= diff;
            }
        }
    }
    Ok(w)
}

/// Dense Lagrange differentiation matrix, row-major: `D[i][j] = l_j'(x_i)`.
pub fn derivative_matrix(nodes: &[f64]) -> Result<Vec<Vec<f64>>> {
    let w = barycentric_weights(nodes)?;
    let m = nodes.len();
    let mut d = vec![vec![0.0; m]; m];
    for i in 0..m {
        let mut diag = 0.0;
        for j in 0..m {
            if i != j {
                let v = (w[j] / w[i]) / (nodes[i] - nodes[j]);
                d[i][j] = v;
                diag -= v;
            }
        }
        d[i][i] = diag;
    }
    Ok(d)
}

/// Barycentric Lagrange interpolation of nodal `values` at `x`.
pub fn interpolate_1d(values: &[f64], nodes: &[f64], x: f64) -> f64 {
    let w = barycentric_weights(nodes).expect("distinct nodes");
    let (mut num, mut den) = (0.0, 0.0);
    for j in 0..nodes.len() {
        let dx = x - nodes[j];
        if dx == 0.0 {
            return values[j];
        }
        let t = w[j] / dx;
        num += t * values[j];
        den += t;
    }
    num / den
}

#[derive(Debug, Clone)]
pub struct Operator1D {
    pub degree: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Row-major (N+1)^2 differentiation matrix.
    pub d: Vec<f64>,
}

impl Operator1D {
    pub fn new(degree: usize) -> Result<Self> {
        let (nodes, weights) = lgl_nodes_weights(degree)?;
        let mut d = derivative_matrix(&nodes)?;
        // On LGL nodes the diagonal is known in closed form: zero inside,
        // -/+ N(N+1)/4 at the ends. Exact zeros let kernels skip those terms.
        let m = degree + 1;
        let corner = (degree * (degree + 1)) as f64 / 4.0;
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = if i == 0 {
                -corner
            } else if i == m - 1 {
                corner
            } else {
                0.0
            };
        }
        let d = d.concat();
        Ok(Self {
            degree,
            nodes,
            weights,
            d,
        })
    }

    #[inline]
    pub fn n_nodes(&self) -> usize {
        self.degree + 1
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.d[i * (self.degree + 1) + j]
    }

    /// `Q = diag(w) D`, row-major.
    pub fn q_matrix(&self) -> Vec<f64> {
        let m = self.n_nodes();
        (0..m * m)
            .map(|k| self.weights[k / m] * self.d[k])
            .collect()
    }

    /// Boundary matrix `diag(-1, 0, ..., 0, 1)`, row-major.
    pub fn b_matrix(&self) -> Vec<f64> {
        let m = self.n_nodes();
        let mut b = vec![0.0; m * m];
        b[0] = -1.0;
        b[m * m - 1] = 1.0;
        b
    }

    /// `max |Q + Q^T - B|`.
    pub fn sbp_residual(&self) -> f64 {
        let m = self.n_nodes();
        let q = self.q_matrix();
        let b = self.b_matrix();
        let mut r: f64 = 0.0;
        for i in 0..m {
            for j in 0..m {
                r = r.max((q[i * m + j] + q[j * m + i] - b[i * m + j]).abs());
            }
        }
        r
    }

    pub fn apply_d(&self, v: &[f64]) -> Vec<f64> {
        let m = self.n_nodes();
        (0..m)
            .map(|i| (0..m).map(|j| self.d(i, j) * v[j]).sum())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_and_n2_values() {
        let (x, w) = lgl_nodes_weights(1).unwrap();
        assert_eq!(x, vec![-1.0, 1.0]);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);

        let (x, w) = lgl_nodes_weights(2).unwrap();
        assert_eq!(x, vec![-1.0, 0.0, 1.0]);
        for (a, b) in w.iter().zip([1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn degree_zero_rejected() {
        assert!(lgl_nodes_weights(0).is_err());
        assert!(Operator1D::new(0).is_err());
        assert!(Operator1D::new(MAX_DEGREE + 1).is_err());
    }

    #[test]
    fn duplicate_nodes_rejected() {
        assert!(derivative_matrix(&[-1.0, 0.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn quadratic_derivative_n2() {
        let op = Operator1D::new(2).unwrap();
        let v: Vec<f64> = op.nodes.iter().map(|x| x * x).collect();
        let dv = op.apply_d(&v);
        for (x, d) in op.nodes.iter().zip(dv) {
            assert!((d - 2.0 * x).abs() < 1e-14);
        }
    }

    #[test]
    fn interpolation_basics() {
        let op = Operator1D::new(3).unwrap();
        let ones = vec![1.0; 4];
        assert!((interpolate_1d(&ones, &op.nodes, 0.77) - 1.0).abs() < 1e-15);
        assert!((interpolate_1d(&op.nodes, &op.nodes, 0.3) - 0.3).abs() < 1e-15);
        let cubes: Vec<f64> = op.nodes.iter().map(|x| x * x * x).collect();
        assert!((interpolate_1d(&cubes, &op.nodes, 0.5) - 0.125).abs() < 1e-14);
        assert_eq!(interpolate_1d(&cubes, &op.nodes, op.nodes[1]), cubes[1]);
    }
}
