//! The two benchmark problems: 2D heat equation with homogeneous Dirichlet
//! data on the unit square, and 2D viscous Burgers on `[-1,1]²` with
//! periodic boundaries.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spatial::{weno5_advection, BoundaryCondition, CompactLaplacian, Field2D, Grid2D};

/// Right-hand side split `f = f^E + f^I` with `f^I = ν W⁻¹ A`.
pub trait ImexProblem<T: Real> {
    fn grid(&self) -> &Grid2D<T>;

    fn diffusivity(&self) -> T;

    /// `W u`
    fn weight(&self, u: &Field2D<T>) -> Result<Field2D<T>>;

    /// `W f^I(u)`
    fn weighted_implicit(&self, u: &Field2D<T>) -> Result<Field2D<T>>;

    /// `f^E(u)`, or `None` when the problem is purely implicit.
    fn explicit(&self, u: &Field2D<T>) -> Result<Option<Field2D<T>>>;
}

#[derive(Debug, Clone)]
pub struct HeatProblem<T> {
    pub nu: T,
    pub op: CompactLaplacian<T>,
}

impl<T: Real> HeatProblem<T> {
    /// Unit square with `intervals` mesh intervals per direction.
    pub fn new(nu: T, intervals: usize) -> Result<Self> {
        if !(nu > T::zero()) {
            return Err(Error::Config(format!("diffusivity must be positive, got {nu}")));
        }
        let grid = Grid2D::square(intervals, T::zero(), T::one(), BoundaryCondition::DirichletZero)?;
        Ok(Self {
            nu,
            op: CompactLaplacian::new(grid, nu)?,
        })
    }

    pub fn initial(&self) -> Field2D<T> {
        heat_initial(&self.op.grid)
    }

    pub fn exact(&self, t: T) -> Field2D<T> {
        Field2D::from_fn(self.op.grid, |x, y| heat_exact(x, y, t, self.nu))
    }

    /// Exact solution of the spatially discrete system at time `t`.
    ///
    /// The sampled initial condition is an eigenvector of both stencils, so
    /// the semi-discrete solution is the initial field times
    /// `exp(ν λ_h t)` with `λ_h = λ_A / λ_W`.
    pub fn semi_discrete(&self, t: T) -> Field2D<T> {
        let h = self.op.grid.hx;
        let c = (T::PI() * h).cos();
        let sym_a = (T::lit(-20.0) + T::lit(16.0) * c + T::lit(4.0) * c * c) / (T::lit(6.0) * h * h);
        let sym_w = (T::lit(8.0) + T::lit(4.0) * c) / T::lit(12.0);
        let mut u = self.initial();
        u.scale((self.nu * sym_a / sym_w * t).exp());
        u
    }
}

impl<T: Real> ImexProblem<T> for HeatProblem<T> {
    fn grid(&self) -> &Grid2D<T> {
        &self.op.grid
    }

    fn diffusivity(&self) -> T {
        self.nu
    }

    fn weight(&self, u: &Field2D<T>) -> Result<Field2D<T>> {
        self.op.apply_weighting(u)
    }

    fn weighted_implicit(&self, u: &Field2D<T>) -> Result<Field2D<T>> {
        self.op.weighted_diffusion(u)
    }

    fn explicit(&self, _u: &Field2D<T>) -> Result<Option<Field2D<T>>> {
        Ok(None)
    }
}

/// Shape of the Burgers initial pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BurgersProfile {
    /// `exp(-(x² + y²)/σ²)`
    #[default]
    Radial,
    /// `exp(-x²/σ²)`, constant in `y`
    XOnly,
}

impl fmt::Display for BurgersProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BurgersProfile::Radial => "radial",
            BurgersProfile::XOnly => "x-only",
        })
    }
}

impl FromStr for BurgersProfile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "radial" => Ok(Self::Radial),
            "x-only" | "x" => Ok(Self::XOnly),
            other => Err(Error::Config(format!("unknown Burgers profile '{other}'"))),
        }
    }
}

pub const BURGERS_SIGMA: f64 = 0.1;

#[derive(Debug, Clone)]
pub struct BurgersProblem<T> {
    pub nu: T,
    pub sigma: T,
    pub profile: BurgersProfile,
    pub op: CompactLaplacian<T>,
}

impl<T: Real> BurgersProblem<T> {
    /// `[-1,1]²` with spacing `1 / points_per_unit`.
    pub fn new(nu: T, points_per_unit: usize, profile: BurgersProfile) -> Result<Self> {
        if !(nu > T::zero()) {
            return Err(Error::Config(format!("diffusivity must be positive, got {nu}")));
        }
        let grid = Grid2D::square(2 * points_per_unit, -T::one(), T::one(), BoundaryCondition::Periodic)?;
        Ok(Self {
            nu,
            sigma: T::lit(BURGERS_SIGMA),
            profile,
            op: CompactLaplacian::new(grid, nu)?,
        })
    }

    pub fn initial(&self) -> Field2D<T> {
        burgers_initial(&self.op.grid, self.sigma, self.profile)
    }
}

impl<T: Real> ImexProblem<T> for BurgersProblem<T> {
    fn grid(&self) -> &Grid2D<T> {
        &self.op.grid
    }

    fn diffusivity(&self) -> T {
        self.nu
    }

    fn weight(&self, u: &Field2D<T>) -> Result<Field2D<T>> {
        self.op.apply_weighting(u)
    }

    fn weighted_implicit(&self, u: &Field2D<T>) -> Result<Field2D<T>> {
        self.op.weighted_diffusion(u)
    }

    fn explicit(&self, u: &Field2D<T>) -> Result<Option<Field2D<T>>> {
        self.op.grid.check(&u.grid)?;
        weno5_advection(u).map(Some)
    }
}

/// `exp(-2π²νt) sin(πx) sin(πy)`
pub fn heat_exact<T: Real>(x: T, y: T, t: T, nu: T) -> T {
    let pi = T::PI();
    (T::lit(-2.0) * pi * pi * nu * t).exp() * (pi * x).sin() * (pi * y).sin()
}

pub fn heat_initial<T: Real>(grid: &Grid2D<T>) -> Field2D<T> {
    let pi = T::PI();
    Field2D::from_fn(*grid, |x, y| (pi * x).sin() * (pi * y).sin())
}

pub fn burgers_initial<T: Real>(grid: &Grid2D<T>, sigma: T, profile: BurgersProfile) -> Field2D<T> {
    let s2 = sigma * sigma;
    Field2D::from_fn(*grid, |x, y| match profile {
        BurgersProfile::Radial => (-(x * x + y * y) / s2).exp(),
        BurgersProfile::XOnly => (-(x * x) / s2).exp(),
    })
}

/// `ν Δt / h²`
pub fn diffusive_cfl<T: Real>(nu: T, dt: T, h: T) -> T {
    nu * dt / (h * h)
}
