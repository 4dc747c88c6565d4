//! Viscous Orszag-Tang vortex with the entropy-stable scheme; prints the
//! entropy history and whether the run stayed admissible. Element count as
//! the first argument (default 4).

use esdg_mhd::cases::{CaseKind, CaseSpec};
use esdg_mhd::cli::{simulate, RunConfig, SimOptions};

fn main() -> esdg_mhd::Result<()> {
    let elements = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let cfg = RunConfig::new(CaseSpec::defaults(CaseKind::OrszagTang));
    let opts = SimOptions { parallel: true, cadence: 10, ..Default::default() };
    let o = simulate(&cfg, elements, &opts)?;
    for r in &o.history {
        println!("t = {:.4}  S = {:.8}  dS/dt = {:+.3e}  min p = {:.4}", r.t, r.entropy, r.entropy_rate, r.min_p);
    }
    match o.crash {
        Some(c) => println!("positivity failure at t = {}: {}", c.time, c.message),
        None => println!("reached t = {} in {} steps", o.t_final, o.steps),
    }
    Ok(())
}
