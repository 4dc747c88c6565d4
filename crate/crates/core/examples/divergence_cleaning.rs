//! Gaussian pulse in `B_1`: normalized `||div B||` over time without cleaning
//! and with damped GLM cleaning. Pass the element count as the first argument
//! (default 4).

use esdg_mhd::cases::{CaseKind, CaseSpec};
use esdg_mhd::cli::{simulate, RunConfig, SimOptions};
use esdg_mhd::timeint::ChPolicy;

fn main() -> esdg_mhd::Result<()> {
    let elements = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let mut cfg = RunConfig::new(CaseSpec::defaults(CaseKind::GaussianPulse));
    cfg.case.elements = elements;
    cfg.case.t_end = 1.0;
    let opts = SimOptions { parallel: true, cadence: 20, ..Default::default() };
    for (label, policy, alpha) in [
        ("c_h = 0", ChPolicy::Zero, 0.0),
        ("GLM, alpha = 0", ChPolicy::Proportional, 0.0),
        ("GLM, alpha = 1", ChPolicy::Proportional, 1.0),
    ] {
        cfg.case.ch_policy = policy;
        cfg.case.alpha = alpha;
        let o = simulate(&cfg, elements, &opts)?;
        let d0 = o.history[0].div_b;
        let trace: Vec<String> = o.history.iter().map(|r| format!("{:.2}:{:.3}", r.t, r.div_b / d0)).collect();
        println!("{label:>15}  {}", trace.join(" "));
    }
    Ok(())
}
