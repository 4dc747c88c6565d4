//! Semi-discrete entropy rate `sum J w W . u_t` for the blast wave: zero up
//! to roundoff with the EC flux, non-positive once dissipation is added.

use esdg_mhd::cases::{CaseKind, CaseSpec};
use esdg_mhd::dg::{entropy_rate, total_entropy, FluxMode, RhsConfig};
use esdg_mhd::mesh::Mesh;
use esdg_mhd::physics::PhysParams;
use esdg_mhd::timeint::{update_ch, ChPolicy};

fn main() -> esdg_mhd::Result<()> {
    let spec = CaseSpec::defaults(CaseKind::BlastWave);
    let mesh = Mesh::build(spec.mesh_config())?;
    let field = spec.initial_field(&mesh);
    let ideal = spec.params()?;
    let ch = update_ch(&field.data, &ideal, ChPolicy::Proportional)?;
    let ideal = ideal.with_ch(ch);
    let viscous = PhysParams::new(ideal.gamma, 0.005, 0.005, 0.72)?.with_ch(ch);
    println!("total entropy {:.6}", total_entropy(&field.data, &mesh, &ideal)?);
    for (label, mode, p) in [
        ("EC", FluxMode::Ec, ideal),
        ("ES", FluxMode::Es, ideal),
        ("EC + BR1", FluxMode::Ec, viscous),
        ("ES + BR1", FluxMode::Es, viscous),
    ] {
        let rate = entropy_rate(&field, &mesh, &RhsConfig::new(mode, p), 0.0)?;
        println!("{label:>9}: dS/dt = {rate:+.3e}");
    }
    Ok(())
}
