//! Batch driver: `key=value` run files, case execution with CSV diagnostics,
//! VTK dumps and one-parameter sweeps.
//!
//! ```text
//! # Gaussian pulse, damped cleaning
//! case = gaussian_pulse
//! N = 3
//! elements = 8
//! alpha = 1
//! ```
//!
//! Keys and defaults (case-specific physics defaults come from
//! [`CaseSpec::defaults`]):
//!
//! | key | meaning | default |
//! |---|---|---|
//! | `case` | `manufactured`, `blast_wave`, `gaussian_pulse`, `orszag_tang` | required |
//! | `N` | polynomial degree, 1..=10 | required |
//! | `elements` | elements per direction | required |
//! | `mesh` | `a` or `b` | per case |
//! | `gamma`, `mu`, `eta`, `pr` | physics | gamma 5/3, Pr 0.72, per case |
//! | `alpha` | GLM damping | 0 |
//! | `ch` | `proportional` or `zero` | proportional |
//! | `cfl` | in (0, 1] | 0.5 |
//! | `t_end` | final time | per case |
//! | `dt` | fixed step, overrides `cfl` | none |
//! | `flux` | `es` or `ec` surface flux | es |
//! | `viscous` | `true`/`false` | true when mu or eta > 0 |
//! | `cadence` | diagnostics every n steps | 1 |
//! | `seed` | RNG seed for `verify` | 0 |
//! | `levels` | comma list of element counts (manufactured) | `elements` |
//! | `vtk_times` | comma list of dump times | none |
//! | `sweep` | `dt:`, `alpha:` or `cfl:` followed by a comma list | none |

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::cases::{eoc, l2_error, manufactured_residual, manufactured_state, CaseKind, CaseSpec, ERROR_VARIABLES};
use crate::dg::{divergence_error, entropy_rate_of, total_entropy, FluxMode, RhsConfig, SolutionField, Solver};
use crate::error::{Error, Result};
use crate::mesh::{Mesh, MeshType};
use crate::operators::MAX_DEGREE;
use crate::physics::State;
use crate::timeint::{integrate, max_signal_speed, min_pressure, ChPolicy, StepInfo, TimeConfig};
use crate::vtk::write_vtk;

pub const DIAGNOSTICS_HEADER: &str = "step,t,dt,S_total,dSdt_semi_discrete,divB_L2,min_p,max_|v|+c_f,c_h";

const KEYS: [&str; 20] = [
    "case", "N", "elements", "mesh", "gamma", "mu", "eta", "pr", "alpha", "ch", "cfl", "t_end", "dt", "flux",
    "viscous", "cadence", "seed", "levels", "vtk_times", "sweep",
];

/// Shortest decimal text that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Dt,
    Alpha,
    Cfl,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::Dt => "dt",
            SweepParam::Alpha => "alpha",
            SweepParam::Cfl => "cfl",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

impl Sweep {
    /// Parses `alpha:0,0.2,1` (a `=` separator is accepted too).
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let (name, list) = s
            .split_once(':')
            .or_else(|| s.split_once('='))
            .ok_or_else(|| format!("sweep `{s}` should look like `alpha:0,0.2,1`"))?;
        let param = match name.trim() {
            "dt" => SweepParam::Dt,
            "alpha" => SweepParam::Alpha,
            "cfl" => SweepParam::Cfl,
            other => return Err(format!("cannot sweep `{other}` (expected dt, alpha or cfl)")),
        };
        let values = parse_list(list, parse_real)?;
        Ok(Self { param, values })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub case: CaseSpec,
    pub cfl: f64,
    pub fixed_dt: Option<f64>,
    pub flux: FluxMode,
    pub viscous: bool,
    pub levels: Vec<usize>,
    pub vtk_times: Vec<f64>,
    pub seed: u64,
    pub sweep: Option<Sweep>,
}

impl RunConfig {
    pub fn new(case: CaseSpec) -> Self {
        Self {
            viscous: case.mu > 0.0 || case.eta > 0.0,
            levels: vec![case.elements],
            case,
            cfl: 0.5,
            fixed_dt: None,
            flux: FluxMode::Es,
            vtk_times: Vec::new(),
            seed: 0,
            sweep: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.case.validate()?;
        self.time_config().validate()?;
        if self.levels.iter().any(|&n| n == 0) {
            return Err(Error::InvalidInput("refinement levels must be positive".into()));
        }
        Ok(())
    }

    pub fn time_config(&self) -> TimeConfig {
        TimeConfig {
            cfl: self.cfl,
            t_end: self.case.t_end,
            fixed_dt: self.fixed_dt,
            ch_policy: self.case.ch_policy,
            alpha: self.case.alpha,
        }
    }

    /// Right-hand-side configuration, including the manufactured source.
    pub fn rhs_config(&self) -> Result<RhsConfig> {
        let params = self.case.params()?;
        let mut rc = RhsConfig::new(self.flux, params);
        rc.viscous = self.viscous;
        if self.case.kind == CaseKind::Manufactured {
            // gamma = 2 is checked by CaseSpec::validate
            manufactured_residual([0.0; 3], 0.0, &params)?;
            rc.source = Some(Arc::new(move |x, t| {
                manufactured_residual(x, t, &params).unwrap_or(State::ZERO)
            }));
        }
        Ok(rc)
    }
}

fn line_err(line: usize, msg: impl Into<String>) -> Error {
    Error::ConfigLine { line, msg: msg.into() }
}

fn parse_real(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(format!("`{s}` is not a finite number")),
    }
}

fn parse_count(s: &str) -> std::result::Result<usize, String> {
    let s = s.trim();
    s.parse::<usize>().map_err(|_| format!("`{s}` is not a non-negative integer"))
}

fn parse_list<T>(s: &str, f: fn(&str) -> std::result::Result<T, String>) -> std::result::Result<Vec<T>, String> {
    let items: Vec<&str> = s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    if items.is_empty() {
        return Err("empty list".into());
    }
    items.into_iter().map(f).collect()
}

fn require(ok: bool, msg: &str) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

/// Parses a run file. Unknown or repeated keys and malformed lines are
/// reported with their line number.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut entries: Vec<(usize, &str, &str)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (k, v) = body
            .split_once('=')
            .ok_or_else(|| line_err(line, format!("expected `key = value`, found `{body}`")))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(line_err(line, "missing key before `=`"));
        }
        if !KEYS.contains(&k) {
            return Err(line_err(line, format!("unknown key `{k}`")));
        }
        if v.is_empty() {
            return Err(line_err(line, format!("missing value for `{k}`")));
        }
        if let Some(prev) = entries.iter().find(|e| e.1 == k) {
            return Err(line_err(line, format!("`{k}` already set on line {}", prev.0)));
        }
        entries.push((line, k, v));
    }
    let find = |key: &str| entries.iter().find(|e| e.1 == key).copied();
    let (case_line, _, case_name) = find("case").ok_or(Error::MissingKey("case"))?;
    let kind = CaseKind::parse(case_name).ok_or_else(|| line_err(case_line, format!("unknown case `{case_name}`")))?;
    for key in ["N", "elements"] {
        if find(key).is_none() {
            return Err(Error::MissingKey(if key == "N" { "N" } else { "elements" }));
        }
    }

    let mut cfg = RunConfig::new(CaseSpec::defaults(kind));
    let mut viscous = None;
    let mut levels = None;
    for &(line, key, value) in &entries {
        let mut apply = |cfg: &mut RunConfig| -> std::result::Result<(), String> {
            let c = &mut cfg.case;
            match key {
                "case" => {}
                "N" => {
                    c.degree = parse_count(value)?;
                    require((1..=MAX_DEGREE).contains(&c.degree), "N must lie in 1..=10")?;
                }
                "elements" => {
                    c.elements = parse_count(value)?;
                    require(c.elements >= 1, "elements must be at least 1")?;
                }
                "mesh" => {
                    c.mesh = match value {
                        "a" => MeshType::A,
                        "b" => MeshType::B,
                        _ => return Err(format!("mesh must be `a` or `b`, found `{value}`")),
                    }
                }
                "gamma" => {
                    c.gamma = parse_real(value)?;
                    require(c.gamma > 1.0, "gamma must exceed 1")?;
                }
                "mu" => {
                    c.mu = parse_real(value)?;
                    require(c.mu >= 0.0, "mu must be non-negative")?;
                }
                "eta" => {
                    c.eta = parse_real(value)?;
                    require(c.eta >= 0.0, "eta must be non-negative")?;
                }
                "pr" => {
                    c.prandtl = parse_real(value)?;
                    require(c.prandtl > 0.0, "pr must be positive")?;
                }
                "alpha" => {
                    c.alpha = parse_real(value)?;
                    require(c.alpha >= 0.0, "alpha must be non-negative")?;
                }
                "ch" => {
                    c.ch_policy = match value {
                        "proportional" => ChPolicy::Proportional,
                        "zero" => ChPolicy::Zero,
                        _ => return Err(format!("ch must be `proportional` or `zero`, found `{value}`")),
                    }
                }
                "t_end" => {
                    c.t_end = parse_real(value)?;
                    require(c.t_end > 0.0, "t_end must be positive")?;
                }
                "cadence" => {
                    c.cadence = parse_count(value)?;
                    require(c.cadence >= 1, "cadence must be at least 1")?;
                }
                "cfl" => {
                    cfg.cfl = parse_real(value)?;
                    require(cfg.cfl > 0.0 && cfg.cfl <= 1.0, "cfl must lie in (0, 1]")?;
                }
                "dt" => {
                    let dt = parse_real(value)?;
                    require(dt > 0.0, "dt must be positive")?;
                    cfg.fixed_dt = Some(dt);
                }
                "flux" => {
                    cfg.flux = match value {
                        "es" => FluxMode::Es,
                        "ec" => FluxMode::Ec,
                        _ => return Err(format!("flux must be `es` or `ec`, found `{value}`")),
                    }
                }
                "viscous" => {
                    viscous = Some(match value {
                        "true" => true,
                        "false" => false,
                        _ => return Err(format!("viscous must be `true` or `false`, found `{value}`")),
                    })
                }
                "seed" => cfg.seed = value.parse().map_err(|_| format!("`{value}` is not a valid seed"))?,
                "levels" => {
                    let l = parse_list(value, parse_count)?;
                    require(l.iter().all(|&n| n >= 1), "levels must be positive")?;
                    levels = Some(l);
                }
                "vtk_times" => {
                    let t = parse_list(value, parse_real)?;
                    require(t.iter().all(|&t| t >= 0.0), "vtk_times must be non-negative")?;
                    cfg.vtk_times = t;
                }
                "sweep" => cfg.sweep = Some(Sweep::parse(value)?),
                _ => unreachable!("key list checked above"),
            }
            Ok(())
        };
        apply(&mut cfg).map_err(|msg| line_err(line, msg))?;
    }
    cfg.viscous = viscous.unwrap_or(cfg.case.mu > 0.0 || cfg.case.eta > 0.0);
    cfg.levels = levels.unwrap_or_else(|| vec![cfg.case.elements]);
    cfg.case.validate().map_err(|e| Error::Config(e.to_string()))?;
    Ok(cfg)
}

/// One line of `diagnostics.csv`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagRow {
    pub step: usize,
    pub t: f64,
    pub dt: f64,
    pub entropy: f64,
    pub entropy_rate: f64,
    pub div_b: f64,
    pub min_p: f64,
    pub max_speed: f64,
    pub ch: f64,
}

impl DiagRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.step,
            fmt_f64(self.t),
            fmt_f64(self.dt),
            fmt_f64(self.entropy),
            fmt_f64(self.entropy_rate),
            fmt_f64(self.div_b),
            fmt_f64(self.min_p),
            fmt_f64(self.max_speed),
            fmt_f64(self.ch)
        )
    }
}

/// Diagnostics of the state `u` at the step described by `info`. The
/// semi-discrete entropy rate costs one extra right-hand side.
pub fn diagnostics(solver: &mut Solver, u: &[State], info: &StepInfo, scratch: &mut Vec<State>) -> Result<DiagRow> {
    let params = solver.config.effective_params();
    let mesh = solver.mesh;
    scratch.resize(u.len(), State::ZERO);
    solver.rhs(u, info.t, scratch)?;
    Ok(DiagRow {
        step: info.step,
        t: info.t,
        dt: info.dt,
        entropy: total_entropy(u, mesh, &params)?,
        entropy_rate: entropy_rate_of(u, scratch, mesh, &params)?,
        div_b: divergence_error(u, mesh),
        min_p: min_pressure(u, &params),
        max_speed: max_signal_speed(u, &params)?,
        ch: info.ch,
    })
}

/// Output locations and cadence for [`simulate`].
#[derive(Debug, Clone, Default)]
pub struct SimOptions {
    pub parallel: bool,
    /// Record diagnostics every `cadence` steps (the first and last step are
    /// always recorded). `0` records only those two.
    pub cadence: usize,
    pub diagnostics: Option<PathBuf>,
    pub vtk_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crash {
    pub time: f64,
    pub message: String,
}

pub struct Outcome {
    pub mesh: Mesh,
    pub field: SolutionField,
    pub t_final: f64,
    pub steps: usize,
    pub crash: Option<Crash>,
    pub history: Vec<DiagRow>,
}

impl Outcome {
    pub fn initial_entropy(&self) -> f64 {
        self.history.first().map_or(f64::NAN, |r| r.entropy)
    }

    pub fn final_entropy(&self) -> f64 {
        self.history.last().map_or(f64::NAN, |r| r.entropy)
    }
}

fn vtk_name(t: f64) -> String {
    format!("solution_t{}.vtk", fmt_f64(t))
}

/// Runs `cfg` on `elements`^3 elements. A positivity failure ends the run
/// early and is returned in [`Outcome::crash`], not as an error.
pub fn simulate(cfg: &RunConfig, elements: usize, opts: &SimOptions) -> Result<Outcome> {
    cfg.validate()?;
    let mut case = cfg.case.clone();
    case.elements = elements;
    let mesh = Mesh::build(case.mesh_config())?;
    let params = case.params()?;
    let mut field = case.initial_field(&mesh);
    let tc = cfg.time_config();
    let t_end = tc.t_end;

    let mut csv = match &opts.diagnostics {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            writeln!(w, "{DIAGNOSTICS_HEADER}")?;
            w.flush()?;
            Some(w)
        }
        None => None,
    };
    let mut stops: Vec<f64> = cfg.vtk_times.iter().copied().filter(|&t| t > 0.0 && t < t_end).collect();
    stops.sort_by(f64::total_cmp);
    stops.dedup();
    stops.push(t_end);
    if let Some(dir) = &opts.vtk_dir {
        if cfg.vtk_times.iter().any(|&t| t == 0.0) {
            write_vtk(&dir.join(vtk_name(0.0)), &mesh, &field.data, &params, 0.0)?;
        }
    }

    let mut history = Vec::new();
    let mut crash = None;
    let mut t = 0.0;
    let mut steps = 0;
    let mut scratch = Vec::new();
    {
        let mut solver = Solver::new(&mesh, cfg.rhs_config()?).with_parallel(opts.parallel);
        for (segment, &stop) in stops.iter().enumerate() {
            let seg_tc = TimeConfig { t_end: stop, ..tc };
            let offset = steps;
            let mut io_err = None;
            let res = integrate(&mut solver, &mut field.data, t, &seg_tc, |info, u, solver| {
                if info.step == 0 && segment > 0 {
                    return Ok(true);
                }
                let info = StepInfo { step: offset + info.step, ..*info };
                steps = info.step;
                let last = info.t >= t_end * (1.0 - 1e-14);
                let due = if opts.cadence == 0 { info.step == 0 } else { info.step % opts.cadence == 0 };
                if due || last {
                    let row = diagnostics(solver, u, &info, &mut scratch)?;
                    if let Some(w) = csv.as_mut() {
                        if let Err(e) = writeln!(w, "{}", row.csv()).and_then(|_| w.flush()) {
                            io_err = Some(e);
                            return Ok(false);
                        }
                    }
                    history.push(row);
                }
                Ok(true)
            });
            if let Some(e) = io_err {
                return Err(e.into());
            }
            match res {
                Ok(tf) => t = tf,
                Err(e) if e.is_positivity() => {
                    crash = Some(Crash { time: e.stage_time().unwrap_or(t), message: e.to_string() });
                    break;
                }
                Err(e) => return Err(e),
            }
            if let Some(dir) = &opts.vtk_dir {
                if cfg.vtk_times.iter().any(|&x| (x - stop).abs() <= 1e-12 * stop.max(1.0)) {
                    write_vtk(&dir.join(vtk_name(stop)), &mesh, &field.data, &params, stop)?;
                }
            }
        }
    }
    Ok(Outcome { mesh, field, t_final: t, steps, crash, history })
}

/// Flags shared by `run` and `sweep`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub serial: bool,
    pub cadence: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub t_final: f64,
    pub crash: Option<Crash>,
    /// Per-level L2 errors for manufactured runs.
    pub errors: Vec<(usize, [f64; 7])>,
}

fn sim_options(dir: &Path, cfg: &RunConfig, opts: &RunOptions) -> SimOptions {
    SimOptions {
        parallel: !opts.serial,
        cadence: opts.cadence.unwrap_or(cfg.case.cadence),
        diagnostics: Some(dir.join("diagnostics.csv")),
        vtk_dir: if cfg.vtk_times.is_empty() { None } else { Some(dir.to_path_buf()) },
    }
}

fn join_row(cells: impl IntoIterator<Item = String>) -> String {
    cells.into_iter().collect::<Vec<_>>().join(",")
}

/// Executes a run file into `out`: `diagnostics.csv`, `summary.csv` and any
/// requested VTK dumps. Manufactured runs with several levels get one
/// subdirectory per level.
pub fn run(cfg: &RunConfig, out: &Path, opts: &RunOptions) -> Result<RunReport> {
    cfg.validate()?;
    fs::create_dir_all(out)?;
    let mut summary = BufWriter::new(File::create(out.join("summary.csv"))?);
    if cfg.case.kind == CaseKind::Manufactured {
        writeln!(summary, "row,elements,t_final,{}", ERROR_VARIABLES.join(","))?;
        let params = cfg.case.params()?;
        let mut report = RunReport { t_final: 0.0, crash: None, errors: Vec::new() };
        for &n in &cfg.levels {
            let dir = if cfg.levels.len() == 1 { out.to_path_buf() } else { out.join(format!("level_{n}")) };
            fs::create_dir_all(&dir)?;
            let o = simulate(cfg, n, &sim_options(&dir, cfg, opts))?;
            report.t_final = o.t_final;
            if let Some(c) = o.crash {
                writeln!(summary, "crash,{n},{},{}", fmt_f64(c.time), vec![""; 7].join(","))?;
                report.crash = Some(c);
                break;
            }
            let e = l2_error(&o.field, &o.mesh, |x| manufactured_state(x, o.t_final), &params)?;
            writeln!(
                summary,
                "{}",
                join_row(["l2".into(), n.to_string(), fmt_f64(o.t_final)].into_iter().chain(e.iter().map(|&v| fmt_f64(v))))
            )?;
            summary.flush()?;
            report.errors.push((n, e));
        }
        if report.crash.is_none() && report.errors.len() >= 2 {
            let cols: Vec<(Vec<f64>, f64)> =
                (0..7).map(|k| eoc(&report.errors.iter().map(|e| e.1[k]).collect::<Vec<_>>())).collect::<Result<_>>()?;
            for (i, pair) in report.errors.windows(2).enumerate() {
                let label = format!("{}-{}", pair[0].0, pair[1].0);
                writeln!(
                    summary,
                    "{}",
                    join_row(["eoc".into(), label, String::new()].into_iter().chain(cols.iter().map(|c| fmt_f64(c.0[i]))))
                )?;
            }
            writeln!(
                summary,
                "{}",
                join_row(["eoc".into(), "avg".into(), String::new()].into_iter().chain(cols.iter().map(|c| fmt_f64(c.1))))
            )?;
        }
        summary.flush()?;
        return Ok(report);
    }

    let o = simulate(cfg, cfg.case.elements, &sim_options(out, cfg, opts))?;
    writeln!(summary, "status,t_final,crash_time,steps,S_initial,S_final,divB_initial,divB_final")?;
    writeln!(summary, "{}", outcome_cells(&o))?;
    summary.flush()?;
    Ok(RunReport { t_final: o.t_final, crash: o.crash, errors: Vec::new() })
}

fn outcome_cells(o: &Outcome) -> String {
    let (status, crash) = match &o.crash {
        Some(c) => ("positivity_failure", fmt_f64(c.time)),
        None => ("completed", String::new()),
    };
    let first = o.history.first();
    let last = o.history.last();
    let g = |r: Option<&DiagRow>, f: fn(&DiagRow) -> f64| r.map(|r| fmt_f64(f(r))).unwrap_or_default();
    join_row([
        status.to_string(),
        fmt_f64(o.t_final),
        crash,
        o.steps.to_string(),
        g(first, |r| r.entropy),
        g(last, |r| r.entropy),
        g(first, |r| r.div_b),
        g(last, |r| r.div_b),
    ])
}

/// Runs the configured sweep: one subdirectory (with its own
/// `diagnostics.csv`) per value, plus `sweep.csv` with one row per value.
pub fn sweep(cfg: &RunConfig, out: &Path, opts: &RunOptions) -> Result<Vec<RunReport>> {
    let sw = cfg
        .sweep
        .clone()
        .ok_or_else(|| Error::Config("`sweep` needs a `sweep = <dt|alpha|cfl>:v1,v2,...` entry".into()))?;
    fs::create_dir_all(out)?;
    let mut table = BufWriter::new(File::create(out.join("sweep.csv"))?);
    writeln!(table, "param,value,status,t_final,crash_time,steps,S_initial,S_final,divB_initial,divB_final")?;
    table.flush()?;
    let mut reports = Vec::new();
    for &v in &sw.values {
        let mut c = cfg.clone();
        c.sweep = None;
        match sw.param {
            SweepParam::Dt => c.fixed_dt = Some(v),
            SweepParam::Alpha => c.case.alpha = v,
            SweepParam::Cfl => c.cfl = v,
        }
        c.validate()?;
        let dir = out.join(format!("{}_{}", sw.param.name(), fmt_f64(v)));
        fs::create_dir_all(&dir)?;
        let o = simulate(&c, c.levels[0], &sim_options(&dir, &c, opts))?;
        writeln!(table, "{},{},{}", sw.param.name(), fmt_f64(v), outcome_cells(&o))?;
        table.flush()?;
        reports.push(RunReport { t_final: o.t_final, crash: o.crash, errors: Vec::new() });
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse_config("case=orszag_tang\nN=3\nelements=8").unwrap();
        assert_eq!(c.case.kind, CaseKind::OrszagTang);
        assert_eq!((c.case.degree, c.case.elements), (3, 8));
        assert_eq!(c.cfl, 0.5);
        assert_eq!(c.case.alpha, 0.0);
        assert_eq!(c.case.gamma, 5.0 / 3.0);
        assert_eq!(c.case.ch_policy, ChPolicy::Proportional);
        assert!(c.viscous);
    }

    #[test]
    fn bad_values_are_rejected() {
        assert!(matches!(parse_config("case=blast_wave\nN=0\nelements=3"), Err(Error::ConfigLine { line: 2, .. })));
        assert!(matches!(
            parse_config("case=blast_wave\nN=3\nelements=3\ncfl=1.5"),
            Err(Error::ConfigLine { line: 4, .. })
        ));
        assert!(matches!(parse_config("case=blast_wave\nN=3"), Err(Error::MissingKey("elements"))));
        assert!(matches!(
            parse_config("# header\ncase=blast_wave\nN=3\nelements=3\nbogus=1"),
            Err(Error::ConfigLine { line: 5, .. })
        ));
        assert!(matches!(parse_config("case=blast_wave\nN 3"), Err(Error::ConfigLine { line: 2, .. })));
    }

    #[test]
    fn sweep_parsing() {
        let s = Sweep::parse("alpha:0, 0.2,1").unwrap();
        assert_eq!(s.param, SweepParam::Alpha);
        assert_eq!(s.values, vec![0.0, 0.2, 1.0]);
        assert!(Sweep::parse("gamma:1").is_err());
    }

    #[test]
    fn float_text_round_trips() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
