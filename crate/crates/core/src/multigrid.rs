//! Geometric multigrid for the shifted compact system `(W - γA) u = b`.
//!
//! Every level rediscretises the compact stencils on its own spacing. The
//! smoother is red-black Gauss-Seidel, transfers are full weighting and
//! bilinear interpolation, and the coarsest level is solved directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{max_abs, Real};
use crate::spatial::compact::CompactLaplacian;
use crate::spatial::grid::{BoundaryCondition, Field2D, Grid2D};
use crate::spatial::stencil::{Neighbours, Stencil9};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmootherKind {
    RedBlackGaussSeidel,
    /// Simultaneous update `u += ω D⁻¹ r`. It keeps sine eigenmodes of the
    /// constant-coefficient stencils separate, so an inexact solve of a smooth
    /// right-hand side leaves little high-frequency error behind.
    #[default]
    Jacobi,
}

impl std::fmt::Display for SmootherKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SmootherKind::RedBlackGaussSeidel => "rbgs",
            SmootherKind::Jacobi => "jacobi",
        })
    }
}

impl std::str::FromStr for SmootherKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rbgs" | "red-black" => Ok(Self::RedBlackGaussSeidel),
            "jacobi" => Ok(Self::Jacobi),
            other => Err(Error::Config(format!("unknown smoother '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmootherConfig<T> {
    pub kind: SmootherKind,
    pub pre_sweeps: usize,
    pub post_sweeps: usize,
    pub damping: T,
}

impl<T: Real> Default for SmootherConfig<T> {
    fn default() -> Self {
        Self {
            kind: SmootherKind::Jacobi,
            pre_sweeps: 2,
            post_sweeps: 2,
            damping: T::lit(0.85),
        }
    }
}

/// Outcome of one linear solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveReport<T> {
    pub cycles_used: usize,
    pub final_defect_norm: T,
    pub converged: bool,
}

#[derive(Debug, Clone)]
struct Level<T> {
    grid: Grid2D<T>,
    neighbours: Neighbours,
    laplacian: Stencil9<T>,
    weighting: Stencil9<T>,
    op: Stencil9<T>,
    u: Vec<T>,
    b: Vec<T>,
    r: Vec<T>,
}

impl<T: Real> Level<T> {
    fn new(grid: Grid2D<T>, gamma: T) -> Self {
        let laplacian = Stencil9::compact_laplacian(grid.hx);
        let weighting = Stencil9::compact_weighting();
        let n = grid.len();
        Self {
            neighbours: Neighbours::new(&grid),
            op: weighting.add_scaled(-gamma, &laplacian),
            laplacian,
            weighting,
            grid,
            u: vec![T::zero(); n],
            b: vec![T::zero(); n],
            r: vec![T::zero(); n],
        }
    }

    fn smooth(&mut self, kind: SmootherKind, sweeps: usize, damping: T) {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let diag = self.op.center;
        if kind == SmootherKind::Jacobi {
            for _ in 0..sweeps {
                self.compute_defect();
                for (u, r) in self.u.iter_mut().zip(&self.r) {
                    *u = *u + damping * *r / diag;
                }
            }
            return;
        }
        for _ in 0..sweeps {
            for color in 0..2 {
                for j in 0..ny {
                    let start = (j + color) % 2;
                    for i in (start..nx).step_by(2) {
                        let k = j * nx + i;
                        let off = self.op.off_center_at(&self.neighbours, &self.u, i, j, nx);
                        let gs = (self.b[k] - off) / diag;
                        self.u[k] = self.u[k] + damping * (gs - self.u[k]);
                    }
                }
            }
        }
    }

    fn compute_defect(&mut self) {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        self.op.defect(&self.neighbours, &self.b, &self.u, &mut self.r, nx, ny);
    }
}

/// Dense LU factorisation with partial pivoting for the coarsest level.
#[derive(Debug, Clone)]
struct DenseLu<T> {
    n: usize,
    lu: Vec<T>,
    pivots: Vec<usize>,
}

impl<T: Real> DenseLu<T> {
    fn factor(level: &Level<T>) -> Result<Self> {
        let n = level.grid.len();
        let nx = level.grid.nx;
        let mut a = vec![T::zero(); n * n];
        let mut e = vec![T::zero(); n];
        for col in 0..n {
            e[col] = T::one();
            for row in 0..n {
                let (i, j) = (row % nx, row / nx);
                a[row * n + col] = level.op.eval_at(&level.neighbours, &e, i, j, nx);
            }
            e[col] = T::zero();
        }
        let mut pivots = vec![0; n];
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| {
                    a[x * n + k]
                        .abs()
                        .partial_cmp(&a[y * n + k].abs())
                        .expect("NaN in coarse operator")
                })
                .expect("non-empty range");
            if a[p * n + k] == T::zero() {
                return Err(Error::Config("singular coarse-grid operator".into()));
            }
            pivots[k] = p;
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
            }
            for r in k + 1..n {
                let f = a[r * n + k] / a[k * n + k];
                a[r * n + k] = f;
                for c in k + 1..n {
                    a[r * n + c] = a[r * n + c] - f * a[k * n + c];
                }
            }
        }
        Ok(Self { n, lu: a, pivots })
    }

    fn solve(&self, b: &[T], x: &mut [T]) {
        let n = self.n;
        x.copy_from_slice(b);
        for k in 0..n {
            x.swap(k, self.pivots[k]);
        }
        for r in 0..n {
            let mut s = x[r];
            for c in 0..r {
                s = s - self.lu[r * n + c] * x[c];
            }
            x[r] = s;
        }
        for r in (0..n).rev() {
            let mut s = x[r];
            for c in r + 1..n {
                s = s - self.lu[r * n + c] * x[c];
            }
            x[r] = s / self.lu[r * n + r];
        }
    }
}

/// Level hierarchy for `(W - γA) u = b`.
#[derive(Debug, Clone)]
pub struct MgHierarchy<T> {
    levels: Vec<Level<T>>,
    coarse: DenseLu<T>,
    smoother: SmootherConfig<T>,
    gamma: T,
    nu: T,
    coarsest_threshold: usize,
    cycle_cap: usize,
}

/// Default cycle cap for run-to-tolerance solves.
pub const DEFAULT_CYCLE_CAP: usize = 100;

/// Builds the hierarchy by halving the points per direction until a level
/// has at most `coarsest_threshold` points per direction.
///
/// `nu` is stored for reference; the operator only depends on `gamma`.
pub fn build_hierarchy<T: Real>(
    grid: Grid2D<T>,
    nu: T,
    gamma: T,
    smoother: SmootherConfig<T>,
    coarsest_threshold: usize,
) -> Result<MgHierarchy<T>> {
    if !(gamma >= T::zero()) {
        return Err(Error::Config(format!("shift must be non-negative, got {gamma}")));
    }
    let mut grids = vec![grid];
    loop {
        let g = grids.last().expect("finest grid present");
        if g.nx.max(g.ny) <= coarsest_threshold {
            break;
        }
        match g.coarsen() {
            Some(c) => grids.push(c),
            None => break,
        }
    }
    let last = grids.last().expect("finest grid present");
    if grids.len() < 3 || last.nx.max(last.ny) > coarsest_threshold.max(4) {
        return Err(Error::NotCoarsenable {
            nx: grid.nx,
            ny: grid.ny,
            levels: grids.len() - 1,
        });
    }
    let levels: Vec<Level<T>> = grids.into_iter().map(|g| Level::new(g, gamma)).collect();
    let coarse = DenseLu::factor(levels.last().expect("coarsest level present"))?;
    Ok(MgHierarchy {
        levels,
        coarse,
        smoother,
        gamma,
        nu,
        coarsest_threshold,
        cycle_cap: DEFAULT_CYCLE_CAP,
    })
}

impl<T: Real> MgHierarchy<T> {
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// Points per direction on every level, finest first.
    pub fn level_sizes(&self) -> Vec<(usize, usize)> {
        self.levels.iter().map(|l| (l.grid.nx, l.grid.ny)).collect()
    }

    pub fn shift(&self) -> T {
        self.gamma
    }

    pub fn nu(&self) -> T {
        self.nu
    }

    pub fn grid(&self) -> &Grid2D<T> {
        &self.levels[0].grid
    }

    pub fn smoother(&self) -> SmootherConfig<T> {
        self.smoother
    }

    pub fn coarsest_threshold(&self) -> usize {
        self.coarsest_threshold
    }

    pub fn cycle_cap(&self) -> usize {
        self.cycle_cap
    }

    pub fn set_cycle_cap(&mut self, cap: usize) {
        self.cycle_cap = cap.max(1);
    }

    /// Rebuilds every level operator for a new shift, keeping grids and buffers.
    pub fn set_shift(&mut self, gamma: T) -> Result<()> {
        if !(gamma >= T::zero()) {
            return Err(Error::Config(format!("shift must be non-negative, got {gamma}")));
        }
        if gamma == self.gamma {
            return Ok(());
        }
        for l in &mut self.levels {
            l.op = l.weighting.add_scaled(-gamma, &l.laplacian);
        }
        self.coarse = DenseLu::factor(self.levels.last().expect("coarsest level present"))?;
        self.gamma = gamma;
        Ok(())
    }

    /// Max-norm of `b - (W - γA) u` on the finest grid.
    pub fn defect_norm(&mut self, b: &Field2D<T>, u: &Field2D<T>) -> Result<T> {
        self.load(b, u)?;
        let fine = &mut self.levels[0];
        fine.compute_defect();
        Ok(max_abs(&fine.r))
    }

    fn load(&mut self, b: &Field2D<T>, u: &Field2D<T>) -> Result<()> {
        let fine = &mut self.levels[0];
        fine.grid.check(&b.grid)?;
        fine.grid.check(&u.grid)?;
        fine.b.copy_from_slice(&b.values);
        fine.u.copy_from_slice(&u.values);
        Ok(())
    }

    fn cycle_from(&mut self, level: usize) {
        let last = self.levels.len() - 1;
        if level == last {
            let l = &mut self.levels[last];
            self.coarse.solve(&l.b, &mut l.u);
            return;
        }
        let SmootherConfig {
            kind,
            pre_sweeps,
            post_sweeps,
            damping,
        } = self.smoother;
        {
            let l = &mut self.levels[level];
            l.smooth(kind, pre_sweeps, damping);
            l.compute_defect();
        }
        {
            let (fine, coarse) = self.levels.split_at_mut(level + 1);
            let (f, c) = (&fine[level], &mut coarse[0]);
            restrict(&f.grid, &f.r, &c.grid, &mut c.b);
            c.u.iter_mut().for_each(|v| *v = T::zero());
        }
        self.cycle_from(level + 1);
        {
            let (fine, coarse) = self.levels.split_at_mut(level + 1);
            let (f, c) = (&mut fine[level], &coarse[0]);
            prolong_add(&c.grid, &c.u, &f.grid, &mut f.u);
        }
        self.levels[level].smooth(kind, post_sweeps, damping);
    }

    /// Applies one V(ν₁,ν₂)-cycle to `u`.
    pub fn v_cycle(&mut self, b: &Field2D<T>, u: &Field2D<T>) -> Result<Field2D<T>> {
        self.load(b, u)?;
        self.cycle_from(0);
        Ok(Field2D {
            grid: u.grid,
            values: self.levels[0].u.clone(),
        })
    }

    /// Runs V-cycles until the defect max-norm is at most `tol` or `cap`
    /// cycles have been spent. A capped solve is reported, not an error.
    pub fn solve_full(
        &mut self,
        b: &Field2D<T>,
        u0: &Field2D<T>,
        tol: T,
        cap: usize,
    ) -> Result<(Field2D<T>, SolveReport<T>)> {
        if !(tol > T::zero()) || cap == 0 {
            return Err(Error::Config(format!("solve_full needs tol > 0 and cap >= 1 (tol={tol}, cap={cap})")));
        }
        self.load(b, u0)?;
        self.levels[0].compute_defect();
        let mut defect = max_abs(&self.levels[0].r);
        let mut cycles = 0;
        while !(defect <= tol) && cycles < cap {
            self.cycle_from(0);
            cycles += 1;
            self.levels[0].compute_defect();
            defect = max_abs(&self.levels[0].r);
        }
        Ok((
            Field2D {
                grid: u0.grid,
                values: self.levels[0].u.clone(),
            },
            SolveReport {
                cycles_used: cycles,
                final_defect_norm: defect,
                converged: defect <= tol,
            },
        ))
    }

    /// Applies exactly `cycles` V-cycles. `converged` reports whether the
    /// final defect happens to satisfy `reference_tol`.
    pub fn solve_inexact(
        &mut self,
        b: &Field2D<T>,
        u0: &Field2D<T>,
        cycles: usize,
        reference_tol: T,
    ) -> Result<(Field2D<T>, SolveReport<T>)> {
        if cycles == 0 {
            return Err(Error::Config("fixed-budget solve needs at least one cycle".into()));
        }
        self.load(b, u0)?;
        for _ in 0..cycles {
            self.cycle_from(0);
        }
        self.levels[0].compute_defect();
        let defect = max_abs(&self.levels[0].r);
        Ok((
            Field2D {
                grid: u0.grid,
                values: self.levels[0].u.clone(),
            },
            SolveReport {
                cycles_used: cycles,
                final_defect_norm: defect,
                converged: defect <= reference_tol,
            },
        ))
    }
}

/// Full-weighting restriction of a fine residual onto the coarse grid.
fn restrict<T: Real>(fine: &Grid2D<T>, r: &[T], coarse: &Grid2D<T>, out: &mut [T]) {
    let (fx, fy) = (fine.nx as isize, fine.ny as isize);
    let periodic = fine.bc == BoundaryCondition::Periodic;
    let fetch = |i: isize, j: isize| -> T {
        if periodic {
            r[(j.rem_euclid(fy) * fx + i.rem_euclid(fx)) as usize]
        } else if i < 0 || j < 0 || i >= fx || j >= fy {
            T::zero()
        } else {
            r[(j * fx + i) as usize]
        }
    };
    let offset = if periodic { 0 } else { 1 };
    let (c1, c2, c4) = (T::lit(1.0 / 16.0), T::lit(2.0 / 16.0), T::lit(4.0 / 16.0));
    for jc in 0..coarse.ny {
        for ic in 0..coarse.nx {
            let (i, j) = ((2 * ic + offset) as isize, (2 * jc + offset) as isize);
            let corners = fetch(i - 1, j - 1) + fetch(i + 1, j - 1) + fetch(i - 1, j + 1) + fetch(i + 1, j + 1);
            let edges = fetch(i - 1, j) + fetch(i + 1, j) + fetch(i, j - 1) + fetch(i, j + 1);
            out[jc * coarse.nx + ic] = c4 * fetch(i, j) + c2 * edges + c1 * corners;
        }
    }
}

/// Adds the bilinear interpolation of a coarse correction to the fine iterate.
fn prolong_add<T: Real>(coarse: &Grid2D<T>, e: &[T], fine: &Grid2D<T>, u: &mut [T]) {
    let (cx, cy) = (coarse.nx as isize, coarse.ny as isize);
    let periodic = fine.bc == BoundaryCondition::Periodic;
    let fetch = |i: isize, j: isize| -> T {
        if periodic {
            e[(j.rem_euclid(cy) * cx + i.rem_euclid(cx)) as usize]
        } else if i < 0 || j < 0 || i >= cx || j >= cy {
            T::zero()
        } else {
            e[(j * cx + i) as usize]
        }
    };
    // fine index -> (lower coarse index, true if fine point coincides with it)
    let map = |f: usize| -> (isize, bool) {
        if periodic {
            ((f / 2) as isize, f.is_multiple_of(2))
        } else if !f.is_multiple_of(2) {
            (((f - 1) / 2) as isize, true)
        } else {
            ((f / 2) as isize - 1, false)
        }
    };
    let half = T::lit(0.5);
    for j in 0..fine.ny {
        let (jc, jon) = map(j);
        for i in 0..fine.nx {
            let (ic, ion) = map(i);
            let v = match (ion, jon) {
                (true, true) => fetch(ic, jc),
                (false, true) => half * (fetch(ic, jc) + fetch(ic + 1, jc)),
                (true, false) => half * (fetch(ic, jc) + fetch(ic, jc + 1)),
                (false, false) => {
                    half * half * (fetch(ic, jc) + fetch(ic + 1, jc) + fetch(ic, jc + 1) + fetch(ic + 1, jc + 1))
                }
            };
            let k = j * fine.nx + i;
            u[k] = u[k] + v;
        }
    }
}

/// Inner solver interface used by the sweeper.
pub trait ShiftedSolver<T: Real> {
    /// Selects the system `W - γA` for subsequent solves.
    fn set_shift(&mut self, gamma: T) -> Result<()>;

    fn solve_full(
        &mut self,
        b: &Field2D<T>,
        u0: &Field2D<T>,
        tol: T,
        cap: usize,
    ) -> Result<(Field2D<T>, SolveReport<T>)>;

    fn solve_inexact(
        &mut self,
        b: &Field2D<T>,
        u0: &Field2D<T>,
        cycles: usize,
        reference_tol: T,
    ) -> Result<(Field2D<T>, SolveReport<T>)>;

    /// Solves `W u = b` to absolute defect `tol`; returns the cycles spent.
    fn invert_weighting(&mut self, b: &Field2D<T>, guess: &Field2D<T>, tol: T) -> Result<(Field2D<T>, usize)>;
}

/// Two hierarchies on the same grid: one for the shifted implicit systems
/// and one with zero shift for weighting-matrix inversions.
#[derive(Debug, Clone)]
pub struct MultigridSolver<T> {
    pub op: CompactLaplacian<T>,
    pub shifted: MgHierarchy<T>,
    pub weighting: MgHierarchy<T>,
}

impl<T: Real> MultigridSolver<T> {
    pub fn new(op: CompactLaplacian<T>, smoother: SmootherConfig<T>, coarsest_threshold: usize) -> Result<Self> {
        let shifted = build_hierarchy(op.grid, op.nu, T::zero(), smoother, coarsest_threshold)?;
        let weighting = shifted.clone();
        Ok(Self { op, shifted, weighting })
    }
}

impl<T: Real> ShiftedSolver<T> for MultigridSolver<T> {
    fn set_shift(&mut self, gamma: T) -> Result<()> {
        self.shifted.set_shift(gamma)
    }

    fn solve_full(
        &mut self,
        b: &Field2D<T>,
        u0: &Field2D<T>,
        tol: T,
        cap: usize,
    ) -> Result<(Field2D<T>, SolveReport<T>)> {
        self.shifted.solve_full(b, u0, tol, cap)
    }

    fn solve_inexact(
        &mut self,
        b: &Field2D<T>,
        u0: &Field2D<T>,
        cycles: usize,
        reference_tol: T,
    ) -> Result<(Field2D<T>, SolveReport<T>)> {
        self.shifted.solve_inexact(b, u0, cycles, reference_tol)
    }

    fn invert_weighting(&mut self, b: &Field2D<T>, guess: &Field2D<T>, tol: T) -> Result<(Field2D<T>, usize)> {
        self.op.invert_weighting_from(b, guess, &mut self.weighting, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn periodic(n: usize) -> Grid2D<f64> {
        Grid2D::square(n, 0.0, 1.0, BoundaryCondition::Periodic).unwrap()
    }

    fn dirichlet(n: usize) -> Grid2D<f64> {
        Grid2D::square(n, 0.0, 1.0, BoundaryCondition::DirichletZero).unwrap()
    }

    fn pseudo_random(g: Grid2D<f64>, seed: u64) -> Field2D<f64> {
        let mut s = seed;
        let values = (0..g.len())
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
            })
            .collect();
        Field2D::from_values(g, values).unwrap()
    }

    #[test]
    fn level_counts() {
        let mg = build_hierarchy(periodic(64), 1.0, 0.0, SmootherConfig::default(), 4).unwrap();
        assert_eq!(mg.level_sizes().iter().map(|s| s.0).collect::<Vec<_>>(), vec![64, 32, 16, 8, 4]);
        let mg = build_hierarchy(dirichlet(64), 1.0, 0.0, SmootherConfig::default(), 4).unwrap();
        assert_eq!(mg.level_sizes().iter().map(|s| s.0).collect::<Vec<_>>(), vec![63, 31, 15, 7, 3]);
    }

    #[test]
    fn too_small_or_odd_grids_rejected() {
        assert!(matches!(
            build_hierarchy(periodic(8), 1.0, 0.0, SmootherConfig::default(), 4),
            Err(Error::NotCoarsenable { .. })
        ));
        assert!(build_hierarchy(periodic(60), 1.0, 0.0, SmootherConfig::default(), 4).is_err());
        assert!(build_hierarchy(periodic(64), 1.0, -1.0, SmootherConfig::default(), 4).is_err());
    }

    #[test]
    fn zero_is_a_fixed_point() {
        let g = periodic(32);
        let mut mg = build_hierarchy(g, 1.0, 0.01, SmootherConfig::default(), 4).unwrap();
        let z = Field2D::zeros(g);
        assert_eq!(mg.v_cycle(&z, &z).unwrap().max_norm(), 0.0);
    }

    #[test]
    fn restriction_of_constant_is_constant_periodic() {
        let f = periodic(16);
        let c = f.coarsen().unwrap();
        let r = vec![2.0; f.len()];
        let mut out = vec![0.0; c.len()];
        restrict(&f, &r, &c, &mut out);
        assert!(out.iter().all(|&v| (v - 2.0).abs() < 1e-15));
        let mut u = vec![0.0; f.len()];
        prolong_add(&c, &out, &f, &mut u);
        assert!(u.iter().all(|&v| (v - 2.0).abs() < 1e-15));
    }

    #[test]
    fn prolongation_is_exact_for_linear_functions_dirichlet() {
        let f = dirichlet(16);
        let c = f.coarsen().unwrap();
        // linear function vanishing at x = 0 only matters in the interior away from x = 1
        let e: Vec<f64> = (0..c.len()).map(|k| c.x(k % c.nx) + 2.0 * c.y(k / c.nx)).collect();
        let mut u = vec![0.0; f.len()];
        prolong_add(&c, &e, &f, &mut u);
        for j in 1..f.ny - 1 {
            for i in 1..f.nx - 1 {
                assert!((u[j * f.nx + i] - (f.x(i) + 2.0 * f.y(j))).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn exact_solution_is_a_fixed_point() {
        for (g, gamma) in [(periodic(32), 0.005), (dirichlet(32), 0.05)] {
            let mut mg = build_hierarchy(g, 10.0, gamma, SmootherConfig::default(), 4).unwrap();
            let star = pseudo_random(g, 7);
            let b = mg.levels[0].op.apply(&star);
            let out = mg.v_cycle(&b, &star).unwrap();
            assert!(out.max_diff(&star) < 1e-12);
            let (u, rep) = mg.solve_full(&b, &star, 1e-10, 10).unwrap();
            assert_eq!(rep.cycles_used, 0);
            assert!(rep.converged);
            assert_eq!(u, star);
            let (u, rep) = mg.solve_inexact(&b, &star, 3, 1e-10).unwrap();
            assert_eq!(rep.cycles_used, 3);
            assert!(u.max_diff(&star) < 1e-12);
        }
    }

    #[test]
    fn contraction_on_shifted_periodic_problem() {
        let g = periodic(64);
        for nu in [0.1, 1.0, 10.0, 100.0] {
            let gamma = nu * 1e-3;
            let mut mg = build_hierarchy(g, nu, gamma, SmootherConfig::default(), 4).unwrap();
            let star = pseudo_random(g, 11);
            let b = mg.levels[0].op.apply(&star);
            let mut u = Field2D::zeros(g);
            let mut d = mg.defect_norm(&b, &u).unwrap();
            for _ in 0..5 {
                u = mg.v_cycle(&b, &u).unwrap();
                let next = mg.defect_norm(&b, &u).unwrap();
                assert!(next <= 0.2 * d, "nu={nu}: {next} > 0.2 * {d}");
                d = next;
            }
        }
    }

    #[test]
    fn full_solve_manufactured_and_trivial_cases() {
        let g = dirichlet(64);
        let mut mg = build_hierarchy(g, 100.0, 0.05, SmootherConfig::default(), 4).unwrap();
        let star = Field2D::from_fn(g, |x, y| (x * (1.0 - x) * y * (1.0 - y)).sqrt());
        let b = mg.levels[0].op.apply(&star);
        let zero = Field2D::zeros(g);
        let (u, rep) = mg.solve_full(&b, &zero, 1e-10, 100).unwrap();
        assert!(rep.converged && rep.cycles_used > 0 && rep.cycles_used <= 100);
        assert!(rep.final_defect_norm <= 1e-10);
        assert!(mg.defect_norm(&b, &u).unwrap() <= 1e-10);

        let (_, rep) = mg.solve_full(&b, &zero, 1e10, 100).unwrap();
        assert_eq!(rep.cycles_used, 0);

        let (_, rep) = mg.solve_full(&b, &zero, 1e-30, 2).unwrap();
        assert!(!rep.converged);
        assert_eq!(rep.cycles_used, 2);
    }

    #[test]
    fn inexact_matches_full_for_large_budgets() {
        let g = periodic(64);
        let mut mg = build_hierarchy(g, 10.0, 0.01, SmootherConfig::default(), 4).unwrap();
        let star = pseudo_random(g, 3);
        let b = mg.levels[0].op.apply(&star);
        let zero = Field2D::zeros(g);
        let tol = 1e-11;
        let (full, rep) = mg.solve_full(&b, &zero, tol, 100).unwrap();
        let (inexact, irep) = mg.solve_inexact(&b, &zero, 2 * rep.cycles_used, tol).unwrap();
        assert!(irep.converged);
        assert!(full.max_diff(&inexact) <= 10.0 * tol);
        let (big, _) = mg.solve_inexact(&b, &zero, 50, tol).unwrap();
        assert!(full.max_diff(&big) <= 10.0 * tol);
    }

    #[test]
    fn deterministic_and_shift_rebuild() {
        let g = dirichlet(32);
        let mut a = build_hierarchy(g, 1.0, 0.0, SmootherConfig::default(), 4).unwrap();
        a.set_shift(0.02).unwrap();
        let mut b = build_hierarchy(g, 1.0, 0.02, SmootherConfig::default(), 4).unwrap();
        let rhs = pseudo_random(g, 5);
        let zero = Field2D::zeros(g);
        let (ua, ra) = a.solve_full(&rhs, &zero, 1e-9, 50).unwrap();
        let (ub, rb) = b.solve_full(&rhs, &zero, 1e-9, 50).unwrap();
        assert_eq!(ua, ub);
        assert_eq!(ra, rb);
    }
}
