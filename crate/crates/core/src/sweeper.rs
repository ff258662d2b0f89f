//! SDC and inexact SDC sweeps over one collocation interval.
//!
//! Each substep from node `m` to node `m+1` solves the weighted IMEX Euler
//! correction
//!
//! ```text
//! (W - Δt_m ν A) u_{m+1}^{k+1} = W u_m^{k+1} + Δt_m W [f^E(u_m^{k+1}) - f^E(u_m^k)]
//!                              - Δt_m f̃^I(u_{m+1}^k) + Δt Σ_j s_{m,j} f̃(u_j^k)
//! ```
//!
//! where `f̃ = W f^E + f̃^I` and `f̃^I(u) = ν A u`. In `SdcExact` mode the
//! system is solved to `inner_tol`; in `IsdcFixed` mode exactly `L` V-cycles
//! are applied.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigrid::{ShiftedSolver, DEFAULT_CYCLE_CAP};
use crate::problems::ImexProblem;
use crate::quadrature::CollocationTable;
use crate::scalar::Real;
use crate::spatial::Field2D;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    /// Every implicit system solved to the inner tolerance.
    SdcExact,
    /// Every implicit system approximated by a fixed number of V-cycles.
    IsdcFixed,
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepMode::SdcExact => "sdc",
            SweepMode::IsdcFixed => "isdc",
        })
    }
}

impl FromStr for SweepMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sdc" | "sdc-exact" => Ok(Self::SdcExact),
            "isdc" | "isdc-fixed" => Ok(Self::IsdcFixed),
            other => Err(Error::Config(format!("unknown sweep mode '{other}'"))),
        }
    }
}

/// Initial guess handed to the inner solver for `u_{m+1}^{k+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GuessPolicy {
    /// `u_{m+1}^k`
    PreviousSweep,
    Zero,
    /// `u_m^{k+1}`
    PreviousNode,
}

impl GuessPolicy {
    pub const ALL: [GuessPolicy; 3] = [GuessPolicy::PreviousSweep, GuessPolicy::Zero, GuessPolicy::PreviousNode];
}

impl fmt::Display for GuessPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GuessPolicy::PreviousSweep => "previous-sweep",
            GuessPolicy::Zero => "zero",
            GuessPolicy::PreviousNode => "previous-node",
        })
    }
}

impl FromStr for GuessPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "previous-sweep" | "previous-sweep-value" | "warm" => Ok(Self::PreviousSweep),
            "zero" => Ok(Self::Zero),
            "previous-node" | "previous-node-value" => Ok(Self::PreviousNode),
            other => Err(Error::Config(format!("unknown guess policy '{other}'"))),
        }
    }
}

/// Which collocation defect the stopping test measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualForm {
    /// `u_m - u_0 - Δt Σ_j q_{m,j} f(u_j)`; needs one `W` inversion per node.
    #[default]
    Unweighted,
    /// `W (u_m - u_0) - Δt Σ_j q_{m,j} f̃(u_j)`
    Weighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig<T> {
    pub mode: SweepMode,
    /// V-cycles per implicit solve in `IsdcFixed` mode.
    pub l_cycles: usize,
    pub residual_tol: T,
    pub max_sweeps: usize,
    /// Absolute defect tolerance of full inner solves.
    pub inner_tol: T,
    pub inner_cap: usize,
    pub guess: GuessPolicy,
    pub residual_form: ResidualForm,
    /// Divide the residual by `max|u_0|`.
    pub relative_residual: bool,
    /// Relative defect tolerance for `W` inversions.
    pub weight_tol: T,
}

impl<T: Real> Default for SweepConfig<T> {
    fn default() -> Self {
        Self {
            mode: SweepMode::SdcExact,
            l_cycles: 2,
            residual_tol: T::lit(5e-8),
            max_sweeps: 100,
            inner_tol: T::lit(1e-11),
            inner_cap: DEFAULT_CYCLE_CAP,
            guess: GuessPolicy::PreviousSweep,
            residual_form: ResidualForm::Unweighted,
            relative_residual: false,
            weight_tol: T::lit(1e-13),
        }
    }
}

impl<T: Real> SweepConfig<T> {
    pub fn isdc(l_cycles: usize) -> Self {
        Self {
            mode: SweepMode::IsdcFixed,
            l_cycles,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == SweepMode::IsdcFixed && self.l_cycles == 0 {
            return Err(Error::Config("ISDC needs at least one V-cycle per solve".into()));
        }
        if !(self.residual_tol > T::zero()) {
            return Err(Error::Config(format!("residual tolerance must be positive, got {}", self.residual_tol)));
        }
        if self.mode == SweepMode::SdcExact && (!(self.inner_tol > T::zero()) || self.inner_cap == 0) {
            return Err(Error::Config("SDC needs a positive inner tolerance and cycle cap".into()));
        }
        if !(self.weight_tol > T::zero()) {
            return Err(Error::Config("weighting tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Node values and cached right-hand sides of one collocation interval.
#[derive(Debug, Clone)]
pub struct SweepState<T> {
    pub table: CollocationTable<T>,
    pub u0: Field2D<T>,
    pub dt: T,
    /// `u_m^k` for every node.
    pub nodes: Vec<Field2D<T>>,
    /// `f^E(u_m^k)`; absent for purely implicit problems.
    pub explicit: Option<Vec<Field2D<T>>>,
    /// `f̃^I(u_m^k) = W f^I(u_m^k)`
    pub implicit_weighted: Vec<Field2D<T>>,
    /// Last computed `W⁻¹ f̃^I(u_m)`, reused as the inversion start value.
    implicit_unweighted: Vec<Option<Field2D<T>>>,
    /// Completed sweeps `k`.
    pub sweep: usize,
    /// Most V-cycles any single implicit solve has taken so far.
    pub max_solve_cycles: usize,
}

/// Counters of one time step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub sweeps: usize,
    /// V-cycles of the implicit solves, excluding weighting inversions.
    pub inner_cycles: usize,
    #[serde(default)]
    pub max_solve_cycles: usize,
    pub w_inversion_cycles: usize,
    /// Residual after each sweep.
    pub residual_history: Vec<f64>,
    /// Residual of the spread initial state.
    pub initial_residual: f64,
    pub converged: bool,
}

impl RunStats {
    pub fn final_residual(&self) -> f64 {
        self.residual_history.last().copied().unwrap_or(self.initial_residual)
    }

    pub const CSV_HEADER: &'static str = "sweeps,inner_cycles,w_inversion_cycles,final_residual,converged";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:e},{}",
            self.sweeps,
            self.inner_cycles,
            self.w_inversion_cycles,
            self.final_residual(),
            self.converged
        )
    }
}

/// Spreads `u0` to every node and evaluates the split right-hand sides once.
pub fn initialize<T: Real, P: ImexProblem<T> + ?Sized>(
    u0: &Field2D<T>,
    table: &CollocationTable<T>,
    dt: T,
    problem: &P,
) -> Result<SweepState<T>> {
    u0.check_finite()?;
    problem.grid().check(&u0.grid)?;
    let m = table.num_nodes();
    let fi = problem.weighted_implicit(u0)?;
    let fe = problem.explicit(u0)?;
    Ok(SweepState {
        table: table.clone(),
        u0: u0.clone(),
        dt,
        nodes: vec![u0.clone(); m],
        explicit: fe.map(|f| vec![f; m]),
        implicit_weighted: vec![fi; m],
        implicit_unweighted: vec![None; m],
        sweep: 0,
        max_solve_cycles: 0,
    })
}

impl<T: Real> SweepState<T> {
    /// `f̃(u_j^k) = W f^E(u_j^k) + f̃^I(u_j^k)` for every node.
    fn weighted_rhs<P: ImexProblem<T> + ?Sized>(&self, problem: &P) -> Result<Vec<Field2D<T>>> {
        (0..self.nodes.len())
            .map(|j| {
                let mut f = self.implicit_weighted[j].clone();
                if let Some(fe) = &self.explicit {
                    f.axpy(T::one(), &problem.weight(&fe[j])?);
                }
                Ok(f)
            })
            .collect()
    }

    /// `Δt Σ_j w_j g_j`
    fn integrate(&self, weights: &[T], values: &[Field2D<T>]) -> Field2D<T> {
        let mut acc = Field2D::zeros(self.u0.grid);
        for (&w, v) in weights.iter().zip(values) {
            acc.axpy(self.dt * w, v);
        }
        acc
    }

    /// Unweighted right-hand side `f(u_j^k)` at every node, plus the
    /// weighting-inversion cycles it took.
    fn unweighted_rhs<S: ShiftedSolver<T> + ?Sized>(
        &mut self,
        solver: &mut S,
        config: &SweepConfig<T>,
    ) -> Result<(Vec<Field2D<T>>, usize)> {
        let mut cycles = 0;
        let mut out = Vec::with_capacity(self.nodes.len());
        for j in 0..self.nodes.len() {
            let b = &self.implicit_weighted[j];
            let tol = config.weight_tol * b.max_norm().max(T::min_positive_value());
            let guess = self.implicit_unweighted[j].as_ref().unwrap_or(b);
            let (fi, c) = solver.invert_weighting(b, guess, tol)?;
            cycles += c;
            let mut f = fi.clone();
            self.implicit_unweighted[j] = Some(fi);
            if let Some(fe) = &self.explicit {
                f.axpy(T::one(), &fe[j]);
            }
            out.push(f);
        }
        Ok((out, cycles))
    }

    /// Max-norm collocation residual over all nodes and the `W`-inversion
    /// cycles spent computing it.
    pub fn residual<P, S>(&mut self, problem: &P, solver: &mut S, config: &SweepConfig<T>) -> Result<(T, usize)>
    where
        P: ImexProblem<T> + ?Sized,
        S: ShiftedSolver<T> + ?Sized,
    {
        let (rhs, cycles, weighted) = match config.residual_form {
            ResidualForm::Unweighted => {
                let (f, c) = self.unweighted_rhs(solver, config)?;
                (f, c, false)
            }
            ResidualForm::Weighted => (self.weighted_rhs(problem)?, 0, true),
        };
        let mut worst = T::zero();
        for m in 0..self.nodes.len() {
            let mut diff = self.nodes[m].clone();
            diff.axpy(-T::one(), &self.u0);
            if weighted {
                diff = problem.weight(&diff)?;
            }
            diff.axpy(-T::one(), &self.integrate(&self.table.full_weights[m], &rhs));
            worst = worst.max(diff.max_norm());
        }
        if config.relative_residual {
            worst = worst / self.u0.max_norm().max(T::min_positive_value());
        }
        Ok((worst, cycles))
    }

    /// Value at the end of the interval.
    pub fn end_value<S: ShiftedSolver<T> + ?Sized>(
        &mut self,
        solver: &mut S,
        config: &SweepConfig<T>,
    ) -> Result<(Field2D<T>, usize)> {
        if self.table.ends_at_one() {
            return Ok((self.nodes[self.nodes.len() - 1].clone(), 0));
        }
        let (f, cycles) = self.unweighted_rhs(solver, config)?;
        let mut u = self.u0.clone();
        u.axpy(T::one(), &self.integrate(&self.table.terminal_weights, &f));
        Ok((u, cycles))
    }

    /// Performs one sweep over all nodes and returns the inner V-cycles spent.
    pub fn sweep<P, S>(&mut self, problem: &P, solver: &mut S, config: &SweepConfig<T>) -> Result<usize>
    where
        P: ImexProblem<T> + ?Sized,
        S: ShiftedSolver<T> + ?Sized,
    {
        let m_nodes = self.nodes.len();
        let nu = problem.diffusivity();
        let sweep_index = self.sweep + 1;
        let ftilde = self.weighted_rhs(problem)?;

        // (target node, substep length in τ, quadrature row)
        let mut substeps: Vec<(usize, T, Vec<T>)> = Vec::with_capacity(m_nodes);
        if !self.table.starts_at_origin() {
            substeps.push((0, self.table.nodes[0], self.table.full_weights[0].clone()));
        }
        for (m, row) in self.table.substep_weights.iter().enumerate() {
            substeps.push((m + 1, self.table.nodes[m + 1] - self.table.nodes[m], row.clone()));
        }

        let mut cycles = 0;
        // explicit part at the left end of the substep, old and new iterate
        let mut left_explicit_change: Option<Field2D<T>> = None;
        for (target, dtau, row) in substeps {
            let dtm = self.dt * dtau;
            let left_new = if target == 0 { self.u0.clone() } else { self.nodes[target - 1].clone() };

            let mut rhs = problem.weight(&left_new)?;
            if let Some(change) = left_explicit_change.take() {
                rhs.axpy(dtm, &problem.weight(&change)?);
            }
            rhs.axpy(-dtm, &self.implicit_weighted[target]);
            rhs.axpy(T::one(), &self.integrate(&row, &ftilde));

            solver.set_shift(nu * dtm)?;
            let guess = match config.guess {
                GuessPolicy::PreviousSweep => self.nodes[target].clone(),
                GuessPolicy::Zero => Field2D::zeros(self.u0.grid),
                GuessPolicy::PreviousNode => left_new,
            };
            let (u_new, report) = match config.mode {
                SweepMode::SdcExact => solver.solve_full(&rhs, &guess, config.inner_tol, config.inner_cap)?,
                SweepMode::IsdcFixed => solver.solve_inexact(&rhs, &guess, config.l_cycles, config.inner_tol)?,
            };
            cycles += report.cycles_used;
            self.max_solve_cycles = self.max_solve_cycles.max(report.cycles_used);
            if config.mode == SweepMode::SdcExact && !report.converged {
                return Err(Error::InnerSolve {
                    node: target,
                    sweep: sweep_index,
                    source: Box::new(Error::NoConvergence {
                        cycles: report.cycles_used,
                        defect: report.final_defect_norm.to_f64_lossy(),
                    }),
                });
            }
            u_new.check_finite().map_err(|e| Error::InnerSolve {
                node: target,
                sweep: sweep_index,
                source: Box::new(e),
            })?;

            self.implicit_weighted[target] = problem.weighted_implicit(&u_new)?;
            if let Some(fe) = self.explicit.as_mut() {
                let new = problem.explicit(&u_new)?.expect("explicit part present");
                let old = std::mem::replace(&mut fe[target], new);
                let mut change = fe[target].clone();
                change.axpy(-T::one(), &old);
                left_explicit_change = Some(change);
            }
            self.nodes[target] = u_new;
        }
        self.sweep = sweep_index;
        Ok(cycles)
    }
}

/// Result of one time step.
#[derive(Debug, Clone)]
pub struct StepResult<T> {
    pub u_final: Field2D<T>,
    pub stats: RunStats,
    pub state: SweepState<T>,
}

/// Sweeps from the spread initial state until the residual drops to
/// `residual_tol` or `max_sweeps` is reached.
///
/// Failing to converge is reported through `stats.converged`, not as an error.
pub fn run_step<T, P, S>(
    u0: &Field2D<T>,
    problem: &P,
    table: &CollocationTable<T>,
    dt: T,
    solver: &mut S,
    config: &SweepConfig<T>,
) -> Result<StepResult<T>>
where
    T: Real,
    P: ImexProblem<T> + ?Sized,
    S: ShiftedSolver<T> + ?Sized,
{
    config.validate()?;
    let mut state = initialize(u0, table, dt, problem)?;
    let (r0, mut w_cycles) = state.residual(problem, solver, config)?;
    let mut stats = RunStats {
        sweeps: 0,
        inner_cycles: 0,
        max_solve_cycles: 0,
        w_inversion_cycles: 0,
        residual_history: Vec::new(),
        initial_residual: r0.to_f64_lossy(),
        converged: r0 <= config.residual_tol,
    };
    while !stats.converged && stats.sweeps < config.max_sweeps {
        stats.inner_cycles += state.sweep(problem, solver, config)?;
        stats.sweeps += 1;
        let (r, c) = state.residual(problem, solver, config)?;
        w_cycles += c;
        stats.residual_history.push(r.to_f64_lossy());
        stats.converged = r <= config.residual_tol;
    }
    let (u_final, c) = state.end_value(solver, config)?;
    stats.w_inversion_cycles = w_cycles + c;
    stats.max_solve_cycles = state.max_solve_cycles;
    Ok(StepResult { u_final, stats, state })
}

/// Runs `steps` consecutive steps with exactly `sweeps` sweeps each.
pub fn integrate_fixed_sweeps<T, P, S>(
    u0: &Field2D<T>,
    problem: &P,
    table: &CollocationTable<T>,
    dt: T,
    steps: usize,
    sweeps: usize,
    solver: &mut S,
    config: &SweepConfig<T>,
) -> Result<Field2D<T>>
where
    T: Real,
    P: ImexProblem<T> + ?Sized,
    S: ShiftedSolver<T> + ?Sized,
{
    config.validate()?;
    let mut u = u0.clone();
    for _ in 0..steps {
        let mut state = initialize(&u, table, dt, problem)?;
        for _ in 0..sweeps {
            state.sweep(problem, solver, config)?;
        }
        u = state.end_value(solver, config)?.0;
    }
    Ok(u)
}
