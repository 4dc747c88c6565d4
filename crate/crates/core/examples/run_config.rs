//! Drives a run from a `key = value` file, as the `esdg` binary does, and
//! lists what was written.
//!
//! `cargo run --release --example run_config -- examples/configs/blast_wave.cfg out/blast`

use std::path::PathBuf;

use esdg_mhd::cli::{parse_config, run, RunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let config = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/blast_wave.cfg").into());
    let out = PathBuf::from(args.next().unwrap_or_else(|| "out/run_config".into()));
    let cfg = parse_config(&std::fs::read_to_string(&config)?)?;
    let report = run(&cfg, &out, &RunOptions { serial: true, cadence: None })?;
    println!("reached t = {} (crash: {:?})", report.t_final, report.crash.map(|c| c.time));
    let mut files: Vec<_> = std::fs::read_dir(&out)?.filter_map(|e| e.ok()).map(|e| e.path()).collect();
    files.sort();
    for f in files {
        println!("  {}", f.display());
    }
    Ok(())
}
