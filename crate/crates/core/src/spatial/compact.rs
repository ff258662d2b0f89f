//! Fourth-order compact (Mehrstellen) discretisation of `ν Δ`.
//!
//! The semi-discrete diffusion equation reads `W u' = ν A u`, so the
//! unweighted implicit right-hand side is `ν W⁻¹ A u` and its weighted
//! counterpart is simply `ν A u`.

use crate::error::{Error, Result};
use crate::multigrid::MgHierarchy;
use crate::scalar::Real;
use crate::spatial::grid::{Field2D, Grid2D};
use crate::spatial::stencil::Stencil9;

#[derive(Debug, Clone, PartialEq)]
pub struct CompactLaplacian<T> {
    pub grid: Grid2D<T>,
    pub nu: T,
    pub stencil_a: Stencil9<T>,
    pub stencil_w: Stencil9<T>,
}

impl<T: Real> CompactLaplacian<T> {
    pub fn new(grid: Grid2D<T>, nu: T) -> Result<Self> {
        if (grid.hx - grid.hy).abs() > T::lit(1e-12) * grid.hx.max(T::lit(1e-300)) {
            return Err(Error::InvalidGrid(format!(
                "compact stencil needs square cells, got hx={} hy={}",
                grid.hx, grid.hy
            )));
        }
        Ok(Self {
            grid,
            nu,
            stencil_a: Stencil9::compact_laplacian(grid.hx),
            stencil_w: Stencil9::compact_weighting(),
        })
    }

    /// `A u`, the compact Laplacian without the diffusivity.
    pub fn apply_laplacian(&self, u: &Field2D<T>) -> Result<Field2D<T>> {
        self.grid.check(&u.grid)?;
        Ok(self.stencil_a.apply(u))
    }

    /// `W u`
    pub fn apply_weighting(&self, u: &Field2D<T>) -> Result<Field2D<T>> {
        self.grid.check(&u.grid)?;
        Ok(self.stencil_w.apply(u))
    }

    /// `ν A u`, the weighted implicit right-hand side.
    pub fn weighted_diffusion(&self, u: &Field2D<T>) -> Result<Field2D<T>> {
        let mut out = self.apply_laplacian(u)?;
        out.scale(self.nu);
        Ok(out)
    }

    /// Stencil of `W - γ A`.
    pub fn shifted(&self, gamma: T) -> Stencil9<T> {
        self.stencil_w.add_scaled(-gamma, &self.stencil_a)
    }

    /// Solves `W u = b` with V-cycles of a `γ = 0` hierarchy, starting from `b`.
    ///
    /// Returns the solution and the number of cycles spent.
    pub fn invert_weighting(
        &self,
        b: &Field2D<T>,
        mg: &mut MgHierarchy<T>,
        tol: T,
    ) -> Result<(Field2D<T>, usize)> {
        self.invert_weighting_from(b, b, mg, tol)
    }

    /// As [`invert_weighting`](Self::invert_weighting) with an explicit initial guess.
    pub fn invert_weighting_from(
        &self,
        b: &Field2D<T>,
        guess: &Field2D<T>,
        mg: &mut MgHierarchy<T>,
        tol: T,
    ) -> Result<(Field2D<T>, usize)> {
        if !(tol > T::zero()) {
            return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
        }
        self.grid.check(&b.grid)?;
        if mg.shift() != T::zero() {
            return Err(Error::Config("weighting inversion needs a hierarchy with zero shift".into()));
        }
        let cap = mg.cycle_cap();
        let (u, report) = mg.solve_full(b, guess, tol, cap)?;
        if !report.converged {
            return Err(Error::NoConvergence {
                cycles: report.cycles_used,
                defect: report.final_defect_norm.to_f64_lossy(),
            });
        }
        Ok((u, report.cycles_used))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigrid::{build_hierarchy, SmootherConfig};
    use crate::spatial::grid::BoundaryCondition;
    use std::f64::consts::PI;

    fn unit(n: usize, bc: BoundaryCondition) -> Grid2D<f64> {
        Grid2D::square(n, 0.0, 1.0, bc).unwrap()
    }

    #[test]
    fn constants_in_nullspace_and_fixed_by_weighting() {
        let op = CompactLaplacian::new(unit(16, BoundaryCondition::Periodic), 1.0).unwrap();
        let c = Field2D::constant(op.grid, 3.5);
        assert!(op.apply_laplacian(&c).unwrap().max_norm() < 1e-10);
        let w = op.apply_weighting(&c).unwrap();
        assert!(w.values.iter().all(|&v| (v - 3.5).abs() < 1e-14));

        // Dirichlet: interior rows (away from the boundary) behave the same
        let d = CompactLaplacian::new(unit(16, BoundaryCondition::DirichletZero), 1.0).unwrap();
        let c = Field2D::constant(d.grid, 1.0);
        let a = d.apply_laplacian(&c).unwrap();
        let w = d.apply_weighting(&c).unwrap();
        for j in 1..d.grid.ny - 1 {
            for i in 1..d.grid.nx - 1 {
                assert!(a.at(i, j).abs() < 1e-10);
                assert!((w.at(i, j) - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn weighting_of_delta_is_the_stencil() {
        let g = unit(8, BoundaryCondition::DirichletZero);
        let op = CompactLaplacian::new(g, 1.0).unwrap();
        let mut delta = Field2D::zeros(g);
        delta.values[g.index(3, 4)] = 1.0;
        let w = op.apply_weighting(&delta).unwrap();
        for j in 0..g.ny {
            for i in 0..g.nx {
                let expected = match (i as i64 - 3, j as i64 - 4) {
                    (0, 0) => 8.0 / 12.0,
                    (0, 1) | (0, -1) | (1, 0) | (-1, 0) => 1.0 / 12.0,
                    _ => 0.0,
                };
                assert_eq!(w.at(i, j), expected);
            }
        }
    }

    #[test]
    fn operators_are_symmetric() {
        // <A e_p, e_q> == <A e_q, e_p> for a handful of point pairs near the boundary
        for bc in [BoundaryCondition::DirichletZero, BoundaryCondition::Periodic] {
            let g = unit(8, bc);
            let op = CompactLaplacian::new(g, 1.0).unwrap();
            let pts = [(0, 0), (1, 0), (0, 1), (1, 1), (g.nx - 1, 0), (g.nx - 1, g.ny - 1)];
            for &p in &pts {
                for &q in &pts {
                    let mut ep = Field2D::zeros(g);
                    ep.values[g.index(p.0, p.1)] = 1.0;
                    let mut eq = Field2D::zeros(g);
                    eq.values[g.index(q.0, q.1)] = 1.0;
                    let apq = op.apply_laplacian(&ep).unwrap().at(q.0, q.1);
                    let aqp = op.apply_laplacian(&eq).unwrap().at(p.0, p.1);
                    assert_eq!(apq, aqp);
                    let wpq = op.apply_weighting(&ep).unwrap().at(q.0, q.1);
                    let wqp = op.apply_weighting(&eq).unwrap().at(p.0, p.1);
                    assert_eq!(wpq, wqp);
                }
            }
        }
    }

    #[test]
    fn grid_mismatch_rejected() {
        let op = CompactLaplacian::new(unit(8, BoundaryCondition::Periodic), 1.0).unwrap();
        let other = Field2D::zeros(unit(16, BoundaryCondition::Periodic));
        assert!(matches!(op.apply_laplacian(&other), Err(Error::GridMismatch { .. })));
        assert!(matches!(op.apply_weighting(&other), Err(Error::GridMismatch { .. })));
    }

    #[test]
    fn periodic_fourier_symbol() {
        // A sin(2πx) = λ W sin(2πx) with λ from the stencil symbols
        for n in [16usize, 32, 64] {
            let g = unit(n, BoundaryCondition::Periodic);
            let h = g.hx;
            let op = CompactLaplacian::new(g, 1.0).unwrap();
            let u = Field2D::from_fn(g, |x, _| (2.0 * PI * x).sin());
            let c = (2.0 * PI * h).cos();
            let sym_a = (-20.0 + 8.0 * c + 8.0 + 4.0 * c) / (6.0 * h * h);
            let sym_w = (8.0 + 2.0 * c + 2.0) / 12.0;
            let lambda = sym_a / sym_w;
            let au = op.apply_laplacian(&u).unwrap();
            let mut wu = op.apply_weighting(&u).unwrap();
            wu.scale(lambda);
            assert!(au.max_diff(&wu) < 1e-9 * lambda.abs());
            let rel = (lambda + 4.0 * PI * PI).abs() / (4.0 * PI * PI);
            // leading error term is k⁴h⁴/240 relative
            assert!(rel < 10.0 * h.powi(4), "n={n} rel={rel}");
        }
    }

    #[test]
    fn weighting_is_a_contraction_in_max_norm() {
        let g = unit(16, BoundaryCondition::Periodic);
        let op = CompactLaplacian::new(g, 1.0).unwrap();
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let u = Field2D::from_values(g, (0..g.len()).map(|_| next()).collect()).unwrap();
        assert!(op.apply_weighting(&u).unwrap().max_norm() <= u.max_norm());
    }

    #[test]
    fn invert_weighting_cases() {
        let g = unit(32, BoundaryCondition::DirichletZero);
        let op = CompactLaplacian::new(g, 1.0).unwrap();
        let mut mg = build_hierarchy(g, 1.0, 0.0, SmootherConfig::default(), 4).unwrap();

        let target = Field2D::from_fn(g, |x, y| (3.0 * x).sin() * (1.0 + y * y));
        let b = op.apply_weighting(&target).unwrap();
        let (u, cycles) = op.invert_weighting(&b, &mut mg, 1e-13).unwrap();
        assert!(cycles >= 1);
        assert!(u.max_diff(&target) < 1e-12);
        let resid = op.apply_weighting(&u).unwrap().max_diff(&b);
        assert!(resid <= 1e-13);

        let zero = Field2D::zeros(g);
        let (u, cycles) = op.invert_weighting(&zero, &mut mg, 1e-13).unwrap();
        assert_eq!(cycles, 0);
        assert_eq!(u.max_norm(), 0.0);

        let gp = unit(32, BoundaryCondition::Periodic);
        let opp = CompactLaplacian::new(gp, 1.0).unwrap();
        let mut mgp = build_hierarchy(gp, 1.0, 0.0, SmootherConfig::default(), 4).unwrap();
        let c = Field2D::constant(gp, 2.0);
        let (u, cycles) = opp.invert_weighting(&c, &mut mgp, 1e-13).unwrap();
        assert!(cycles <= 1);
        assert!(u.max_diff(&c) < 1e-13);

        assert!(op.invert_weighting(&b, &mut mg, 0.0).is_err());
    }
}
