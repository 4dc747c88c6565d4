//! Convergence study with the manufactured solution on mesh (b).
//!
//! `cargo run --release --example manufactured -- 4 8 16`

use esdg_mhd::cases::{eoc, l2_error, manufactured_state, CaseKind, CaseSpec, ERROR_VARIABLES};
use esdg_mhd::cli::{simulate, RunConfig, SimOptions};

fn main() -> esdg_mhd::Result<()> {
    let mut levels: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if levels.is_empty() {
        levels = vec![2, 4];
    }
    let mut cfg = RunConfig::new(CaseSpec::defaults(CaseKind::Manufactured));
    cfg.cfl = 1.0;
    let params = cfg.case.params()?;
    let opts = SimOptions { parallel: true, cadence: 0, ..Default::default() };
    println!("{:>5} {}", "K", ERROR_VARIABLES.map(|v| format!("{v:>10}")).join(" "));
    let mut errors = Vec::new();
    for &n in &levels {
        let o = simulate(&cfg, n, &opts)?;
        let e = l2_error(&o.field, &o.mesh, |x| manufactured_state(x, o.t_final), &params)?;
        println!("{n:>4}^3 {}", e.map(|v| format!("{v:>10.3e}")).join(" "));
        errors.push(e);
    }
    if errors.len() >= 2 {
        let avg: Vec<String> = (0..7)
            .map(|k| eoc(&errors.iter().map(|e| e[k]).collect::<Vec<_>>()).map(|r| format!("{:>10.2}", r.1)))
            .collect::<esdg_mhd::Result<_>>()?;
        println!("{:>6} {}", "EOC", avg.join(" "));
    }
    Ok(())
}
