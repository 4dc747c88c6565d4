//! Entropy-stable split-form DGSEM for the 3D resistive GLM-MHD equations on
//! fully periodic curvilinear hexahedral meshes.
//!
//! Layering, bottom up: [`operators`] (1D LGL/SBP), [`mesh`] (geometry and
//! curl-form metrics), [`physics`] (equations and entropy machinery),
//! [`numflux`] (two-point and interface fluxes), [`dg`] (right-hand side and
//! diagnostics), [`timeint`] (RK5(4) driver), [`cases`] (test problems) and
//! [`cli`] (configuration files, runs, CSV output), with [`vtk`] dumps and
//! the [`verify`] acceptance suite on top.

pub mod cases;
pub mod cli;
pub mod dg;
pub mod error;
pub mod mesh;
pub mod numflux;
pub mod operators;
pub mod physics;
pub mod timeint;
pub mod verify;
pub mod vtk;

pub use error::{Error, Result};
