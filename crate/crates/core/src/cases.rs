//! The four verification problems: manufactured solution, blast wave,
//! Gaussian divergence pulse and the 3D Orszag-Tang vortex.

use std::f64::consts::PI;

use crate::dg::{node_weight, SolutionField};
use crate::error::{Error, Result};
use crate::mesh::{Mesh, MeshConfig, MeshType};
use crate::physics::{cons_to_prim, prim_to_cons, PhysParams, Primitive, State};
use crate::timeint::ChPolicy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseKind {
    Manufactured,
    BlastWave,
    GaussianPulse,
    OrszagTang,
}

impl CaseKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "manufactured" => Some(Self::Manufactured),
            "blast_wave" => Some(Self::BlastWave),
            "gaussian_pulse" => Some(Self::GaussianPulse),
            "orszag_tang" => Some(Self::OrszagTang),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Manufactured => "manufactured",
            Self::BlastWave => "blast_wave",
            Self::GaussianPulse => "gaussian_pulse",
            Self::OrszagTang => "orszag_tang",
        }
    }
}

fn phase(x: [f64; 3], t: f64) -> f64 {
    2.0 * PI * (x[0] + x[1] + x[2] - t)
}

/// `h = 0.5 sin(2 pi (x + y + z - t)) + 2` and its first two derivatives
/// with respect to `x`.
pub fn manufactured_h(x: [f64; 3], t: f64) -> (f64, f64, f64) {
    let a = phase(x, t);
    (
        0.5 * a.sin() + 2.0,
        PI * a.cos(),
        -2.0 * PI * PI * a.sin(),
    )
}

pub fn manufactured_state(x: [f64; 3], t: f64) -> State {
    let (h, _, _) = manufactured_h(x, t);
    State([h, h, h, 0.0, 2.0 * h * h + h, h, -h, 0.0, 0.0])
}

/// Analytic residual of the manufactured solution, to be added as a source.
/// Only valid for `gamma = 2`.
pub fn manufactured_residual(x: [f64; 3], t: f64, params: &PhysParams) -> Result<State> {
    if (params.gamma - 2.0).abs() > 1e-14 {
        return Err(Error::InvalidInput(format!(
            "manufactured residual requires gamma = 2, got {}",
            params.gamma
        )));
    }
    Ok(manufactured_residual_unchecked(x, t, params))
}

fn manufactured_residual_unchecked(x: [f64; 3], t: f64, params: &PhysParams) -> State {
    let (h, hx, hxx) = manufactured_h(x, t);
    let (mu, eta, pr) = (params.mu, params.eta, params.prandtl);
    State([
        hx,
        hx + 4.0 * h * hx,
        hx + 4.0 * h * hx,
        4.0 * h * hx,
        hx + 12.0 * h * hx - 6.0 * eta * (hx * hx + h * hxx) - 6.0 * mu * hxx / pr,
        hx - 3.0 * eta * hxx,
        -hx + 3.0 * eta * hxx,
        0.0,
        0.0,
    ])
}

pub const BLAST_CENTER: [f64; 3] = [0.3, 0.4, 0.2];

pub fn blast_inner() -> Primitive {
    Primitive { rho: 1.2, v: [0.1, 0.0, 0.1], p: 0.9, b: [1.0; 3], psi: 0.0 }
}

pub fn blast_outer() -> Primitive {
    Primitive { rho: 1.0, v: [0.2, -0.4, 0.2], p: 0.3, b: [1.0; 3], psi: 0.0 }
}

/// Smoothed spherical blast: primitives blended as `(inner + l outer)/(1 + l)`
/// with `l = exp(5 (r - r0) / delta0)`.
pub fn blast_wave_state(x: [f64; 3]) -> State {
    let (r0, delta0) = (0.3, 0.1);
    let r = ((x[0] - BLAST_CENTER[0]).powi(2) + (x[1] - BLAST_CENTER[1]).powi(2) + (x[2] - BLAST_CENTER[2]).powi(2))
        .sqrt();
    let l = (5.0 / delta0 * (r - r0)).exp();
    let (a, b) = (blast_inner(), blast_outer());
    let mix = |p: f64, q: f64| (p + l * q) / (1.0 + l);
    let mix3 = |p: [f64; 3], q: [f64; 3]| [0, 1, 2].map(|k| mix(p[k], q[k]));
    let q = Primitive {
        rho: mix(a.rho, b.rho),
        v: mix3(a.v, b.v),
        p: mix(a.p, b.p),
        b: mix3(a.b, b.b),
        psi: 0.0,
    };
    prim_to_cons(&q, &PhysParams::ideal(5.0 / 3.0)).expect("blended state is admissible")
}

/// Non-solenoidal Gaussian bump in `B_1` on a fluid at rest.
pub fn gaussian_pulse_state(x: [f64; 3]) -> State {
    let r2 = (x[0] - 0.5).powi(2) + (x[1] - 0.5).powi(2) + (x[2] - 0.5).powi(2);
    let b1 = (-0.125 * r2 / (0.0275 * 0.0275)).exp();
    State([1.0, 0.0, 0.0, 0.0, 6.0, b1, 0.0, 0.0, 0.0])
}

pub fn orszag_tang_state(x: [f64; 3]) -> State {
    let s = |a: f64| (2.0 * PI * a).sin();
    let c = 1.0 / (4.0 * PI);
    let q = Primitive {
        rho: 25.0 / (36.0 * PI),
        v: [-s(x[2]), s(x[0]), s(x[1])],
        p: 5.0 / (12.0 * PI),
        b: [-c * s(x[2]), c * (4.0 * PI * x[0]).sin(), c * (4.0 * PI * x[1]).sin()],
        psi: 0.0,
    };
    prim_to_cons(&q, &PhysParams::ideal(5.0 / 3.0)).expect("admissible")
}

/// A fully specified experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseSpec {
    pub kind: CaseKind,
    pub mesh: MeshType,
    pub elements: usize,
    pub degree: usize,
    pub gamma: f64,
    pub mu: f64,
    pub eta: f64,
    pub prandtl: f64,
    pub alpha: f64,
    pub ch_policy: ChPolicy,
    pub t_end: f64,
    pub cadence: usize,
}

impl CaseSpec {
    /// Experiment defaults for each case; every field may be overridden.
    pub fn defaults(kind: CaseKind) -> Self {
        let base = Self {
            kind,
            mesh: MeshType::A,
            elements: 4,
            degree: 3,
            gamma: 5.0 / 3.0,
            mu: 0.0,
            eta: 0.0,
            prandtl: 0.72,
            alpha: 0.0,
            ch_policy: ChPolicy::Proportional,
            t_end: 1.0,
            cadence: 1,
        };
        match kind {
            CaseKind::Manufactured => Self {
                mesh: MeshType::B,
                gamma: 2.0,
                mu: 0.005,
                eta: 0.005,
                ..base
            },
            CaseKind::BlastWave => Self { mesh: MeshType::B, elements: 3, t_end: 0.5, ..base },
            CaseKind::GaussianPulse => Self { elements: 8, t_end: 2.0, ..base },
            CaseKind::OrszagTang => Self {
                elements: 8,
                mu: 1e-3,
                eta: 6e-4,
                t_end: 0.5,
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::InvalidInput("N must be at least 1".into()));
        }
        if self.elements == 0 {
            return Err(Error::InvalidInput("need at least one element per dimension".into()));
        }
        if self.kind == CaseKind::Manufactured {
            if (self.gamma - 2.0).abs() > 1e-14 || (self.prandtl - 0.72).abs() > 1e-14 {
                return Err(Error::InvalidInput(
                    "the manufactured residual is only valid for gamma = 2 and Pr = 0.72".into(),
                ));
            }
        }
        PhysParams::new(self.gamma, self.mu, self.eta, self.prandtl)?;
        Ok(())
    }

    pub fn params(&self) -> Result<PhysParams> {
        Ok(PhysParams::new(self.gamma, self.mu, self.eta, self.prandtl)?.with_alpha(self.alpha))
    }

    pub fn mesh_config(&self) -> MeshConfig {
        MeshConfig::of_type(self.mesh, self.elements, self.degree)
    }

    pub fn initial_state(&self, x: [f64; 3]) -> State {
        match self.kind {
            CaseKind::Manufactured => manufactured_state(x, 0.0),
            CaseKind::BlastWave => blast_wave_state(x),
            CaseKind::GaussianPulse => gaussian_pulse_state(x),
            CaseKind::OrszagTang => orszag_tang_state(x),
        }
    }

    pub fn initial_field(&self, mesh: &Mesh) -> SolutionField {
        SolutionField::from_fn(mesh, |x| self.initial_state(x))
    }
}

pub const ERROR_VARIABLES: [&str; 7] = ["rho", "v1", "v3", "p", "B1", "B3", "psi"];

/// Quadrature-weighted nodal L2 errors of `(rho, v1, v3, p, B1, B3, psi)`.
pub fn l2_error(
    field: &SolutionField,
    mesh: &Mesh,
    exact: impl Fn([f64; 3]) -> State,
    params: &PhysParams,
) -> Result<[f64; 7]> {
    let np = mesh.nodes_per_element();
    let mut sums = [0.0; 7];
    let pick = |q: &Primitive| [q.rho, q.v[0], q.v[2], q.p, q.b[0], q.b[2], q.psi];
    for (e, el) in mesh.elements.iter().enumerate() {
        for i in 0..np {
            let num = pick(&cons_to_prim(&field.data[e * np + i], params)?);
            let ex = pick(&cons_to_prim(&exact(el.x[i]), params)?);
            let w = el.jac[i] * node_weight(&mesh.op, i);
            for k in 0..7 {
                sums[k] += w * (num[k] - ex[k]).powi(2);
            }
        }
    }
    Ok(sums.map(f64::sqrt))
}

/// Experimental orders `log2(e_coarse / e_fine)` between successive levels of
/// factor-two refinement, and their average.
pub fn eoc(errors: &[f64]) -> Result<(Vec<f64>, f64)> {
    if errors.len() < 2 {
        return Err(Error::InvalidInput("need at least two refinement levels".into()));
    }
    if errors.iter().any(|&e| !(e > 0.0)) {
        return Err(Error::InvalidInput("error levels must be positive".into()));
    }
    let rates: Vec<f64> = errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let avg = rates.iter().sum::<f64>() / rates.len() as f64;
    Ok((rates, avg))
}
