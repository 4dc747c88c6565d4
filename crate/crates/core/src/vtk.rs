//! Legacy ASCII VTK output: an unstructured grid with one linear hexahedron
//! per cube of neighbouring quadrature nodes, `N^3` per element.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::Result;
use crate::mesh::{node_index, Mesh};
use crate::physics::{PhysParams, State};

/// Writes `(rho, p, |B|^2/2, psi)` at every node of `u`.
pub fn write_vtk(path: &Path, mesh: &Mesh, u: &[State], params: &PhysParams, t: f64) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let m = mesh.op.n_nodes();
    let n = u.len();
    writeln!(w, "# vtk DataFile Version 3.0")?;
    writeln!(w, "esdg-mhd t={t:?}")?;
    writeln!(w, "ASCII")?;
    writeln!(w, "DATASET UNSTRUCTURED_GRID")?;
    writeln!(w, "POINTS {n} double")?;
    for el in &mesh.elements {
        for x in &el.x {
            writeln!(w, "{:?} {:?} {:?}", x[0], x[1], x[2])?;
        }
    }
    let sub = m - 1;
    let cells = mesh.n_elements() * sub * sub * sub;
    writeln!(w, "CELLS {cells} {}", 9 * cells)?;
    let np = mesh.nodes_per_element();
    for e in 0..mesh.n_elements() {
        for k in 0..sub {
            for j in 0..sub {
                for i in 0..sub {
                    let c = |a: usize, b: usize, d: usize| e * np + node_index(m, i + a, j + b, k + d);
                    writeln!(
                        w,
                        "8 {} {} {} {} {} {} {} {}",
                        c(0, 0, 0),
                        c(1, 0, 0),
                        c(1, 1, 0),
                        c(0, 1, 0),
                        c(0, 0, 1),
                        c(1, 0, 1),
                        c(1, 1, 1),
                        c(0, 1, 1)
                    )?;
                }
            }
        }
    }
    writeln!(w, "CELL_TYPES {cells}")?;
    for _ in 0..cells {
        writeln!(w, "12")?;
    }
    writeln!(w, "POINT_DATA {n}")?;
    let fields: [(&str, fn(&State, f64) -> f64); 4] = [
        ("rho", |s, _| s[0]),
        ("p", |s, g| {
            let v2 = (s[1] * s[1] + s[2] * s[2] + s[3] * s[3]) / s[0];
            let b2 = s[5] * s[5] + s[6] * s[6] + s[7] * s[7];
            (g - 1.0) * (s[4] - 0.5 * v2 - 0.5 * b2 - 0.5 * s[8] * s[8])
        }),
        ("magnetic_energy", |s, _| 0.5 * (s[5] * s[5] + s[6] * s[6] + s[7] * s[7])),
        ("psi", |s, _| s[8]),
    ];
    for (name, f) in fields {
        writeln!(w, "SCALARS {name} double 1")?;
        writeln!(w, "LOOKUP_TABLE default")?;
        for s in u {
            writeln!(w, "{:?}", f(s, params.gamma))?;
        }
    }
    w.flush()?;
    Ok(())
}
