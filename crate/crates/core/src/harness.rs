//! Experiment driver: runs (problem, ν, M, mode) matrices, pairs SDC and
//! ISDC rows to compute V-cycle savings, and runs the initial-guess ablation
//! and the temporal order study.

use std::fmt::Write as _;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigrid::{MultigridSolver, SmootherConfig, SmootherKind};
use crate::problems::{BurgersProblem, BurgersProfile, HeatProblem, ImexProblem};
use crate::quadrature::{CollocationTable, NodeRule};
use crate::spatial::Field2D;
use crate::sweeper::{integrate_fixed_sweeps, run_step, GuessPolicy, ResidualForm, RunStats, SweepConfig, SweepMode};

/// Version of the CSV column layout written by [`write_csv`].
pub const CSV_SCHEMA_VERSION: u32 = 1;

/// Coarsest multigrid level has at most this many points per direction.
pub const COARSEST_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    Heat,
    Burgers,
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProblemKind::Heat => "heat",
            ProblemKind::Burgers => "burgers",
        })
    }
}

impl FromStr for ProblemKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heat" => Ok(Self::Heat),
            "burgers" => Ok(Self::Burgers),
            other => Err(Error::Config(format!("unknown problem '{other}'"))),
        }
    }
}

/// One benchmark run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub problem: ProblemKind,
    pub nu: f64,
    pub nodes: usize,
    pub rule: NodeRule,
    pub mode: SweepMode,
    pub l_cycles: usize,
    pub dt: f64,
    /// Mesh points per unit length, i.e. `1/h`.
    pub grid: usize,
    pub residual_tol: f64,
    pub inner_tol: f64,
    pub max_sweeps: usize,
    pub guess: GuessPolicy,
    pub profile: BurgersProfile,
    pub residual_form: ResidualForm,
    pub smoother: SmootherKind,
    pub pre_smooth: usize,
    pub post_smooth: usize,
    pub damping: f64,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        let sweep = SweepConfig::default();
        let smoother = SmootherConfig::<f64>::default();
        Self {
            problem: ProblemKind::Heat,
            nu: 1.0,
            nodes: 3,
            rule: NodeRule::GaussLobatto,
            mode: SweepMode::SdcExact,
            l_cycles: sweep.l_cycles,
            dt: 1e-3,
            grid: 64,
            residual_tol: sweep.residual_tol,
            inner_tol: sweep.inner_tol,
            max_sweeps: sweep.max_sweeps,
            guess: sweep.guess,
            profile: BurgersProfile::Radial,
            residual_form: ResidualForm::Unweighted,
            smoother: smoother.kind,
            pre_smooth: smoother.pre_sweeps,
            post_smooth: smoother.post_sweeps,
            damping: smoother.damping,
        }
    }
}

fn parse<V: FromStr>(key: &str, value: &str) -> Result<V> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("invalid value '{value}' for '{key}'")))
}

impl ExperimentSpec {
    pub fn new(problem: ProblemKind, nu: f64, nodes: usize, mode: SweepMode) -> Self {
        Self {
            problem,
            nu,
            nodes,
            mode,
            ..Self::default()
        }
    }

    pub fn sweep_config(&self) -> SweepConfig<f64> {
        SweepConfig {
            mode: self.mode,
            l_cycles: self.l_cycles,
            residual_tol: self.residual_tol,
            max_sweeps: self.max_sweeps,
            inner_tol: self.inner_tol,
            guess: self.guess,
            residual_form: self.residual_form,
            ..SweepConfig::default()
        }
    }

    /// Applies one `key=value` override. Keys match the CLI flag names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim().replace('_', "-").as_str() {
            "problem" => self.problem = parse(key, value)?,
            "nu" => self.nu = parse(key, value)?,
            "nodes" | "m" => self.nodes = parse(key, value)?,
            "rule" => self.rule = parse(key, value)?,
            "mode" => self.mode = parse(key, value)?,
            "l-cycles" | "l" => self.l_cycles = parse(key, value)?,
            "dt" => self.dt = parse(key, value)?,
            "grid" => self.grid = parse(key, value)?,
            "tol" | "residual-tol" => self.residual_tol = parse(key, value)?,
            "inner-tol" => self.inner_tol = parse(key, value)?,
            "max-sweeps" => self.max_sweeps = parse(key, value)?,
            "guess" => self.guess = parse(key, value)?,
            "profile" => self.profile = parse(key, value)?,
            "smoother" => self.smoother = parse(key, value)?,
            "damping" => self.damping = parse(key, value)?,
            "pre-smooth" => self.pre_smooth = parse(key, value)?,
            "post-smooth" => self.post_smooth = parse(key, value)?,
            "residual-form" => {
                self.residual_form = match value.trim() {
                    "unweighted" => ResidualForm::Unweighted,
                    "weighted" => ResidualForm::Weighted,
                    other => return Err(Error::Config(format!("unknown residual form '{other}'"))),
                }
            }
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Applies a plain `key = value` file; `#` starts a comment.
    /// Keys this spec does not know are returned to the caller.
    pub fn apply_config(&mut self, text: &str) -> Result<Vec<(String, String)>> {
        let mut unknown = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", n + 1)))?;
            match self.set(k, v) {
                Ok(()) => {}
                Err(Error::Config(msg)) if msg.starts_with("unknown key") => {
                    unknown.push((k.trim().to_string(), v.trim().to_string()))
                }
                Err(e) => return Err(e),
            }
        }
        Ok(unknown)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu > 0.0 && self.dt > 0.0) {
            return Err(Error::Config("nu and dt must be positive".into()));
        }
        self.sweep_config().validate()
    }

    /// Specs that differ only in mode (and L) form an SDC/ISDC pair.
    fn pair_key(&self) -> String {
        let mut s = self.clone();
        s.mode = SweepMode::SdcExact;
        s.l_cycles = 0;
        serde_json::to_string(&s).expect("spec serialises")
    }
}

/// Outcome of one [`ExperimentSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub spec: ExperimentSpec,
    pub stats: Option<RunStats>,
    /// `100 (1 - isdc/sdc)` inner cycles, set on both rows of a pair.
    pub savings_pct: Option<f64>,
    pub diffusive_cfl: f64,
    pub wall_time_s: f64,
    pub error: Option<String>,
}

impl ResultRow {
    pub fn sweeps(&self) -> Option<usize> {
        self.stats.as_ref().map(|s| s.sweeps)
    }

    pub fn inner_cycles(&self) -> Option<usize> {
        self.stats.as_ref().map(|s| s.inner_cycles)
    }

    pub fn converged(&self) -> bool {
        self.stats.as_ref().is_some_and(|s| s.converged)
    }
}

/// Solution and statistics of one spec.
pub struct SpecOutcome {
    pub u_final: Field2D<f64>,
    pub stats: RunStats,
}

type DynProblem = Box<dyn ImexProblem<f64> + Send + Sync>;

fn build_problem(spec: &ExperimentSpec) -> Result<(DynProblem, Field2D<f64>, MultigridSolver<f64>)> {
    let smoother = SmootherConfig {
        pre_sweeps: spec.pre_smooth,
        post_sweeps: spec.post_smooth,
        kind: spec.smoother,
        damping: spec.damping,
    };
    match spec.problem {
        ProblemKind::Heat => {
            let p = HeatProblem::new(spec.nu, spec.grid)?;
            let solver = MultigridSolver::new(p.op.clone(), smoother, COARSEST_POINTS)?;
            let u0 = p.initial();
            Ok((Box::new(p), u0, solver))
        }
        ProblemKind::Burgers => {
            let p = BurgersProblem::new(spec.nu, spec.grid, spec.profile)?;
            let solver = MultigridSolver::new(p.op.clone(), smoother, COARSEST_POINTS)?;
            let u0 = p.initial();
            Ok((Box::new(p), u0, solver))
        }
    }
}

/// Runs one spec to completion.
pub fn run_spec(spec: &ExperimentSpec) -> Result<SpecOutcome> {
    spec.validate()?;
    let table = CollocationTable::new(spec.rule, spec.nodes)?;
    let (problem, u0, mut solver) = build_problem(spec)?;
    let out = run_step(&u0, problem.as_ref(), &table, spec.dt, &mut solver, &spec.sweep_config())?;
    Ok(SpecOutcome {
        u_final: out.u_final,
        stats: out.stats,
    })
}

fn run_row(spec: &ExperimentSpec) -> ResultRow {
    let start = Instant::now();
    let h = 1.0 / spec.grid as f64;
    let (stats, error) = match run_spec(spec) {
        Ok(o) => (Some(o.stats), None),
        Err(e) => (None, Some(e.to_string())),
    };
    ResultRow {
        spec: spec.clone(),
        stats,
        savings_pct: None,
        diffusive_cfl: spec.nu * spec.dt / (h * h),
        wall_time_s: start.elapsed().as_secs_f64(),
        error,
    }
}

/// Runs every spec (concurrently), keeping input order, and fills in the
/// savings of matched SDC/ISDC pairs.
pub fn run_matrix(specs: &[ExperimentSpec]) -> Vec<ResultRow> {
    let mut rows: Vec<ResultRow> = specs.par_iter().map(run_row).collect();
    fill_savings(&mut rows);
    rows
}

fn fill_savings(rows: &mut [ResultRow]) {
    let keys: Vec<String> = rows.iter().map(|r| r.spec.pair_key()).collect();
    for i in 0..rows.len() {
        if rows[i].spec.mode != SweepMode::IsdcFixed {
            continue;
        }
        let partner = (0..rows.len()).find(|&j| rows[j].spec.mode == SweepMode::SdcExact && keys[j] == keys[i]);
        let Some(j) = partner else { continue };
        if let (Some(isdc), Some(sdc)) = (rows[i].inner_cycles(), rows[j].inner_cycles()) {
            if rows[i].converged() && rows[j].converged() && sdc > 0 {
                let pct = 100.0 * (1.0 - isdc as f64 / sdc as f64);
                rows[i].savings_pct = Some(pct);
                rows[j].savings_pct = Some(pct);
            }
        }
    }
}

fn matrix(problem: ProblemKind, nus: &[f64]) -> Vec<ExperimentSpec> {
    let mut specs = Vec::new();
    for &nu in nus {
        for m in [3, 5, 7] {
            specs.push(ExperimentSpec::new(problem, nu, m, SweepMode::SdcExact));
            let mut isdc = ExperimentSpec::new(problem, nu, m, SweepMode::IsdcFixed);
            isdc.l_cycles = 2;
            specs.push(isdc);
        }
    }
    specs
}

/// ν ∈ {1, 10, 100} × M ∈ {3, 5, 7} × {SDC, ISDC(L=2)}.
pub fn heat_matrix() -> Vec<ExperimentSpec> {
    matrix(ProblemKind::Heat, &[1.0, 10.0, 100.0])
}

/// ν ∈ {0.1, 1, 10} × M ∈ {3, 5, 7} × {SDC, ISDC(L=2)}.
pub fn burgers_matrix() -> Vec<ExperimentSpec> {
    matrix(ProblemKind::Burgers, &[0.1, 1.0, 10.0])
}

pub fn csv_header() -> &'static str {
    "schema,problem,nu,nodes,rule,mode,l_cycles,dt,grid,residual_tol,inner_tol,max_sweeps,guess,\
     sweeps,inner_cycles,w_cycles,savings_pct,final_residual,converged,diffusive_cfl,error"
}

/// One CSV line; wall time is left out so reruns are byte-identical.
pub fn csv_row(row: &ResultRow) -> String {
    let s = &row.spec;
    let opt = |v: Option<String>| v.unwrap_or_default();
    let stats = row.stats.as_ref();
    format!(
        "{},{},{},{},{},{},{},{:e},{},{:e},{:e},{},{},{},{},{},{},{},{},{},{}",
        CSV_SCHEMA_VERSION,
        s.problem,
        s.nu,
        s.nodes,
        s.rule,
        s.mode,
        if s.mode == SweepMode::IsdcFixed { s.l_cycles.to_string() } else { String::new() },
        s.dt,
        s.grid,
        s.residual_tol,
        s.inner_tol,
        s.max_sweeps,
        s.guess,
        opt(stats.map(|x| x.sweeps.to_string())),
        opt(stats.map(|x| x.inner_cycles.to_string())),
        opt(stats.map(|x| x.w_inversion_cycles.to_string())),
        opt(row.savings_pct.map(|p| format!("{p:.1}"))),
        opt(stats.map(|x| format!("{:e}", x.final_residual()))),
        row.converged(),
        row.diffusive_cfl,
        opt(row.error.as_ref().map(|e| format!("\"{}\"", e.replace('"', "'")))),
    )
}

pub fn write_csv<W: Write>(mut w: W, rows: &[ResultRow]) -> Result<()> {
    writeln!(w, "{}", csv_header())?;
    for r in rows {
        writeln!(w, "{}", csv_row(r))?;
    }
    Ok(())
}

pub fn write_json<W: Write>(w: W, rows: &[ResultRow]) -> Result<()> {
    serde_json::to_writer_pretty(w, rows).map_err(|e| Error::Io(e.to_string()))
}

/// Table with `cycles(sweeps)` cells per (ν, M) and the savings column.
pub fn pretty_table(rows: &[ResultRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<8} {:>3} {:>12} {:>12} {:>9}", "problem", "M", "SDC", "ISDC", "savings");
    let cell = |r: Option<&ResultRow>| match r {
        Some(r) => match (&r.stats, &r.error) {
            (Some(s), _) if s.converged => format!("{}({})", s.inner_cycles, s.sweeps),
            (Some(s), _) => format!("{}({})*", s.inner_cycles, s.sweeps),
            (None, _) => "error".to_string(),
        },
        None => "-".to_string(),
    };
    let mut seen = Vec::new();
    for r in rows {
        let key = r.spec.pair_key();
        if seen.contains(&key) {
            continue;
        }
        seen.push(key.clone());
        let sdc = rows.iter().find(|x| x.spec.mode == SweepMode::SdcExact && x.spec.pair_key() == key);
        let isdc = rows.iter().find(|x| x.spec.mode == SweepMode::IsdcFixed && x.spec.pair_key() == key);
        let savings = sdc
            .or(isdc)
            .and_then(|x| x.savings_pct)
            .map(|p| format!("{p:.0}%"))
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<8} {:>3} {:>12} {:>12} {:>9}   nu={}",
            r.spec.problem,
            r.spec.nodes,
            cell(sdc),
            cell(isdc),
            savings,
            r.spec.nu
        );
    }
    out.push_str("(* = not converged)\n");
    out
}

/// One (mode, guess policy) run of the ablation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AblationEntry {
    pub mode: SweepMode,
    pub guess: GuessPolicy,
    pub row: ResultRow,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AblationReport {
    pub entries: Vec<AblationEntry>,
}

impl AblationReport {
    pub fn get(&self, mode: SweepMode, guess: GuessPolicy) -> Option<&ResultRow> {
        self.entries.iter().find(|e| e.mode == mode && e.guess == guess).map(|e| &e.row)
    }

    pub fn rows(&self) -> Vec<ResultRow> {
        self.entries.iter().map(|e| e.row.clone()).collect()
    }
}

/// Runs `spec` under every initial-guess policy, in both ISDC and SDC mode.
pub fn run_ablation(spec: &ExperimentSpec) -> Result<AblationReport> {
    if spec.mode != SweepMode::IsdcFixed {
        return Err(Error::Config("ablation expects an ISDC spec".into()));
    }
    let mut specs = Vec::new();
    for mode in [SweepMode::IsdcFixed, SweepMode::SdcExact] {
        for guess in GuessPolicy::ALL {
            let mut s = spec.clone();
            s.mode = mode;
            s.guess = guess;
            specs.push(s);
        }
    }
    let rows = run_matrix(&specs);
    Ok(AblationReport {
        entries: rows
            .into_iter()
            .map(|row| AblationEntry {
                mode: row.spec.mode,
                guess: row.spec.guess,
                row,
            })
            .collect(),
    })
}

/// Settings of the temporal convergence study on the heat problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderStudySpec {
    pub nu: f64,
    pub nodes: usize,
    pub grid: usize,
    pub final_time: f64,
    pub dts: Vec<f64>,
    pub sweep_counts: Vec<usize>,
    pub inner_tol: f64,
}

impl Default for OrderStudySpec {
    fn default() -> Self {
        Self {
            nu: 1.0,
            nodes: 5,
            grid: 64,
            final_time: 0.04,
            dts: vec![4e-3, 2e-3, 1e-3],
            sweep_counts: vec![1, 2, 3, 4],
            inner_tol: 1e-14,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderRow {
    pub sweeps: usize,
    pub dt: f64,
    /// Max-norm error against the exact solution of the semi-discrete system.
    pub temporal_error: f64,
    /// Max-norm error against the analytic PDE solution.
    pub total_error: f64,
    /// `log2(e(2Δt)/e(Δt))` from the previous row; `None` for the coarsest Δt.
    pub observed_order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderTable {
    pub spec: OrderStudySpec,
    pub rows: Vec<OrderRow>,
    /// Max-norm difference between the semi-discrete and analytic solutions.
    pub spatial_floor: f64,
}

impl OrderTable {
    pub fn orders(&self, sweeps: usize) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.sweeps == sweeps)
            .filter_map(|r| r.observed_order)
            .collect()
    }
}

/// Integrates the heat problem to `final_time` with `K` sweeps per step for
/// every `K` and `Δt` and reports observed orders.
pub fn run_order_study(spec: &OrderStudySpec) -> Result<OrderTable> {
    let problem = HeatProblem::new(spec.nu, spec.grid)?;
    let table = CollocationTable::new(NodeRule::GaussLobatto, spec.nodes)?;
    let config = SweepConfig {
        inner_tol: spec.inner_tol,
        ..SweepConfig::default()
    };
    let reference = problem.semi_discrete(spec.final_time);
    let exact = problem.exact(spec.final_time);
    let u0 = problem.initial();
    let jobs: Vec<(usize, f64)> = spec
        .sweep_counts
        .iter()
        .flat_map(|&k| spec.dts.iter().map(move |&dt| (k, dt)))
        .collect();
    let errors: Vec<Result<(f64, f64)>> = jobs
        .par_iter()
        .map(|&(k, dt)| {
            let steps = (spec.final_time / dt).round() as usize;
            if steps == 0 || ((steps as f64) * dt - spec.final_time).abs() > 1e-9 * spec.final_time {
                return Err(Error::Config(format!("dt={dt} does not divide the final time")));
            }
            let mut solver = MultigridSolver::new(problem.op.clone(), SmootherConfig::default(), COARSEST_POINTS)?;
            let u = integrate_fixed_sweeps(&u0, &problem, &table, dt, steps, k, &mut solver, &config)?;
            Ok((u.max_diff(&reference), u.max_diff(&exact)))
        })
        .collect();
    let mut rows: Vec<OrderRow> = Vec::with_capacity(jobs.len());
    for (&(k, dt), res) in jobs.iter().zip(errors) {
        let (temporal_error, total_error) = res?;
        let observed_order = rows
            .last()
            .filter(|prev| prev.sweeps == k)
            .map(|prev| (prev.temporal_error / temporal_error).ln() / (prev.dt / dt).ln());
        rows.push(OrderRow {
            sweeps: k,
            dt,
            temporal_error,
            total_error,
            observed_order,
        });
    }
    Ok(OrderTable {
        spec: spec.clone(),
        rows,
        spatial_floor: reference.max_diff(&exact),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heat_matrix_cardinality() {
        let m = heat_matrix();
        assert_eq!(m.len(), 18);
        assert_eq!(m.iter().filter(|s| s.mode == SweepMode::IsdcFixed).count(), 9);
        assert!(m.iter().all(|s| s.dt == 1e-3 && s.grid == 64 && s.residual_tol == 5e-8));
    }

    #[test]
    fn config_file_overrides() {
        let mut spec = ExperimentSpec::default();
        let unknown = spec
            .apply_config("# comment\nproblem = burgers\nnu=10\nnodes = 5 # trailing\nmode=isdc\nl-cycles=3\nguess=zero\nout=results.csv\n")
            .unwrap();
        assert_eq!(spec.problem, ProblemKind::Burgers);
        assert_eq!(spec.nu, 10.0);
        assert_eq!(spec.nodes, 5);
        assert_eq!(spec.mode, SweepMode::IsdcFixed);
        assert_eq!(spec.l_cycles, 3);
        assert_eq!(spec.guess, GuessPolicy::Zero);
        assert_eq!(unknown, vec![("out".to_string(), "results.csv".to_string())]);
        assert!(spec.apply_config("nu = abc").is_err());
        assert!(spec.apply_config("just words").is_err());
    }

    #[test]
    fn savings_fill_pairs_only() {
        let stats = |cycles| RunStats {
            sweeps: 4,
            inner_cycles: cycles,
            max_solve_cycles: 2,
            w_inversion_cycles: 0,
            residual_history: vec![1e-9],
            initial_residual: 1.0,
            converged: true,
        };
        let sdc = ExperimentSpec::new(ProblemKind::Heat, 10.0, 3, SweepMode::SdcExact);
        let mut isdc = sdc.clone();
        isdc.mode = SweepMode::IsdcFixed;
        let lonely = ExperimentSpec::new(ProblemKind::Heat, 1.0, 3, SweepMode::IsdcFixed);
        let row = |spec: ExperimentSpec, c| ResultRow {
            spec,
            stats: Some(stats(c)),
            savings_pct: None,
            diffusive_cfl: 0.0,
            wall_time_s: 0.0,
            error: None,
        };
        let mut rows = vec![row(sdc, 40), row(isdc, 30), row(lonely, 8)];
        fill_savings(&mut rows);
        assert_eq!(rows[0].savings_pct, Some(25.0));
        assert_eq!(rows[1].savings_pct, Some(25.0));
        assert_eq!(rows[2].savings_pct, None);
        let text = pretty_table(&rows);
        assert!(text.contains("40(4)") && text.contains("30(4)") && text.contains("25%"));
    }

    #[test]
    fn failures_are_recorded_in_row() {
        let bad = ExperimentSpec {
            grid: 6, // too coarse for the hierarchy
            ..ExperimentSpec::default()
        };
        let good = ExperimentSpec {
            grid: 16,
            ..ExperimentSpec::default()
        };
        let rows = run_matrix(&[bad, good]);
        assert!(rows[0].error.is_some() && rows[0].stats.is_none());
        assert!(rows[1].error.is_none() && rows[1].converged());
        let line = csv_row(&rows[0]);
        assert!(line.starts_with("1,heat,"));
        assert_eq!(csv_header().split(',').count(), line.split(',').count());
    }

    #[test]
    fn ablation_requires_isdc_spec() {
        assert!(run_ablation(&ExperimentSpec::default()).is_err());
    }
}
