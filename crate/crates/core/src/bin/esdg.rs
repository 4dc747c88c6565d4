//! Command-line front end: `esdg run|sweep --config FILE --output DIR`,
//! `esdg verify`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use esdg_mhd::cli::{parse_config, run, sweep, Sweep, RunOptions};
use esdg_mhd::verify::{run_criterion, Settings, CRITERIA};

#[derive(Parser)]
#[command(name = "esdg", version, about = "Entropy-stable DGSEM for resistive GLM-MHD")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Common {
    /// key=value run file
    #[arg(long)]
    config: PathBuf,
    /// output directory
    #[arg(long, default_value = "out")]
    output: PathBuf,
    /// single-threaded, bit-reproducible
    #[arg(long)]
    serial: bool,
    /// diagnostics every n steps (overrides the config)
    #[arg(long)]
    cadence: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one case.
    Run(Common),
    /// Run a one-parameter sweep over dt, alpha or cfl.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// overrides the config `sweep` entry, e.g. `alpha:0,0.5,1`
        #[arg(long)]
        sweep: Option<String>,
    },
    /// Run the acceptance checks.
    Verify {
        /// optional run file; only `seed` is read from it
        #[arg(long)]
        config: Option<PathBuf>,
        /// write verify.csv here
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        serial: bool,
        /// skip the 16^3 manufactured level
        #[arg(long)]
        quick: bool,
        /// run only these criteria
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

fn load(path: &PathBuf) -> Result<esdg_mhd::cli::RunConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.cmd {
        Command::Run(c) => {
            let cfg = load(&c.config)?;
            let opts = RunOptions { serial: c.serial, cadence: c.cadence };
            let report = run(&cfg, &c.output, &opts).map_err(|e| e.to_string())?;
            match &report.crash {
                Some(crash) => {
                    eprintln!("crashed at t = {}: {}", crash.time, crash.message);
                    Ok(false)
                }
                None => {
                    println!("reached t = {}; output in {}", report.t_final, c.output.display());
                    Ok(true)
                }
            }
        }
        Command::Sweep { common: c, sweep: spec } => {
            let mut cfg = load(&c.config)?;
            if let Some(s) = spec {
                cfg.sweep = Some(Sweep::parse(&s).map_err(|e| e.to_string())?);
            }
            let opts = RunOptions { serial: c.serial, cadence: c.cadence };
            let reports = sweep(&cfg, &c.output, &opts).map_err(|e| e.to_string())?;
            let crashed = reports.iter().filter(|r| r.crash.is_some()).count();
            println!("{} runs, {crashed} crashed; output in {}", reports.len(), c.output.display());
            Ok(true)
        }
        Command::Verify { config, output, serial, quick, only } => {
            let seed = match &config {
                Some(p) => load(p)?.seed,
                None => 0,
            };
            let settings = Settings { seed, full: !quick, parallel: !serial };
            let ids: Vec<usize> = if only.is_empty() { (1..=CRITERIA).collect() } else { only };
            let mut checks = Vec::new();
            for id in ids {
                let c = run_criterion(id, &settings).map_err(|e| e.to_string())?;
                println!("{}", c.line());
                checks.push(c);
            }
            if let Some(dir) = output {
                std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
                let mut text = String::from("criterion,passed,seconds,detail\n");
                for c in &checks {
                    text.push_str(&format!("{},{},{},\"{}\"\n", c.id, c.passed, c.seconds, c.detail.replace('"', "'")));
                }
                std::fs::write(dir.join("verify.csv"), text).map_err(|e| e.to_string())?;
            }
            Ok(checks.iter().all(|c| c.passed))
        }
    }
}
