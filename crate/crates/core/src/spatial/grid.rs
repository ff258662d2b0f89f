use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryCondition {
    /// Boundary values are zero and not part of the unknown vector.
    DirichletZero,
    Periodic,
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryCondition::DirichletZero => "dirichlet-zero",
            BoundaryCondition::Periodic => "periodic",
        })
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dirichlet-zero" | "dirichlet" => Ok(Self::DirichletZero),
            "periodic" => Ok(Self::Periodic),
            other => Err(Error::Config(format!("unknown boundary condition '{other}'"))),
        }
    }
}

/// Uniform vertex-centered 2D mesh.
///
/// For Dirichlet grids the `nx` unknowns sit strictly inside the box and the
/// spacing is `(xmax - xmin) / (nx + 1)`. Periodic grids store `nx` points
/// with the point at `xmax` identified with `xmin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D<T> {
    pub nx: usize,
    pub ny: usize,
    pub hx: T,
    pub hy: T,
    pub lower: [T; 2],
    pub upper: [T; 2],
    pub bc: BoundaryCondition,
}

impl<T: Real> Grid2D<T> {
    pub fn new(nx: usize, ny: usize, lower: [T; 2], upper: [T; 2], bc: BoundaryCondition) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidGrid(format!("{nx}x{ny} has no points")));
        }
        if !(upper[0] > lower[0] && upper[1] > lower[1]) {
            return Err(Error::InvalidGrid("empty bounding box".into()));
        }
        let intervals = |n: usize| match bc {
            BoundaryCondition::DirichletZero => T::from_usize_lossy(n + 1),
            BoundaryCondition::Periodic => T::from_usize_lossy(n),
        };
        Ok(Self {
            nx,
            ny,
            hx: (upper[0] - lower[0]) / intervals(nx),
            hy: (upper[1] - lower[1]) / intervals(ny),
            lower,
            upper,
            bc,
        })
    }

    /// Square grid with `intervals` mesh intervals per direction, so that
    /// `h = side / intervals` under both boundary conditions.
    pub fn square(intervals: usize, lower: T, upper: T, bc: BoundaryCondition) -> Result<Self> {
        let n = match bc {
            BoundaryCondition::DirichletZero => intervals
                .checked_sub(1)
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::InvalidGrid("need at least 2 intervals".into()))?,
            BoundaryCondition::Periodic => intervals,
        };
        Self::new(n, n, [lower, lower], [upper, upper], bc)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn x(&self, i: usize) -> T {
        match self.bc {
            BoundaryCondition::DirichletZero => self.lower[0] + self.hx * T::from_usize_lossy(i + 1),
            BoundaryCondition::Periodic => self.lower[0] + self.hx * T::from_usize_lossy(i),
        }
    }

    pub fn y(&self, j: usize) -> T {
        match self.bc {
            BoundaryCondition::DirichletZero => self.lower[1] + self.hy * T::from_usize_lossy(j + 1),
            BoundaryCondition::Periodic => self.lower[1] + self.hy * T::from_usize_lossy(j),
        }
    }

    /// Grid with half the points per direction over the same box.
    pub fn coarsen(&self) -> Option<Self> {
        let half = |n: usize| match self.bc {
            BoundaryCondition::DirichletZero if !n.is_multiple_of(2) && n >= 3 => Some((n - 1) / 2),
            BoundaryCondition::Periodic if n.is_multiple_of(2) && n >= 2 => Some(n / 2),
            _ => None,
        };
        let (nx, ny) = (half(self.nx)?, half(self.ny)?);
        Self::new(nx, ny, self.lower, self.upper, self.bc).ok()
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.nx == other.nx && self.ny == other.ny && self.bc == other.bc
    }

    pub(crate) fn check(&self, other: &Self) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                expected: (self.nx, self.ny),
                got: (other.nx, other.ny),
            })
        }
    }
}

/// Scalar samples on a [`Grid2D`], stored row-major (x fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D<T> {
    pub grid: Grid2D<T>,
    pub values: Vec<T>,
}

impl<T: Real> Field2D<T> {
    pub fn zeros(grid: Grid2D<T>) -> Self {
        Self::constant(grid, T::zero())
    }

    pub fn constant(grid: Grid2D<T>, c: T) -> Self {
        Self {
            grid,
            values: vec![c; grid.len()],
        }
    }

    pub fn from_values(grid: Grid2D<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "{} values for a {}x{} grid",
                values.len(),
                grid.nx,
                grid.ny
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid2D<T>, f: impl Fn(T, T) -> T) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for j in 0..grid.ny {
            let y = grid.y(j);
            for i in 0..grid.nx {
                values.push(f(grid.x(i), y));
            }
        }
        Self { grid, values }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> T {
        self.values[self.grid.index(i, j)]
    }

    pub fn max_norm(&self) -> T {
        crate::scalar::max_abs(&self.values)
    }

    /// Max-norm of `self - other`.
    pub fn max_diff(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max)
    }

    pub fn sum(&self) -> T {
        self.values.iter().copied().sum()
    }

    pub fn check_finite(&self) -> Result<()> {
        match self.values.iter().position(|v| !v.is_finite()) {
            Some(index) => Err(Error::NonFinite { index }),
            None => Ok(()),
        }
    }

    /// `self += a * x`
    pub fn axpy(&mut self, a: T, x: &Self) {
        for (s, &v) in self.values.iter_mut().zip(&x.values) {
            *s = *s + a * v;
        }
    }

    pub fn scale(&mut self, a: T) {
        for s in &mut self.values {
            *s = *s * a;
        }
    }

    /// Writes a `# key=value` header followed by one CSV row per grid row.
    pub fn write_csv<W: Write>(&self, mut w: W, time: T) -> Result<()> {
        self.write_header(&mut w, time)?;
        for row in self.values.chunks(self.grid.nx) {
            let line: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    /// Writes the text header, then the values as little-endian `f64`.
    pub fn write_binary<W: Write>(&self, mut w: W, time: T) -> Result<()> {
        self.write_header(&mut w, time)?;
        for v in &self.values {
            w.write_all(&v.to_f64_lossy().to_le_bytes())?;
        }
        Ok(())
    }

    fn write_header<W: Write>(&self, w: &mut W, time: T) -> Result<()> {
        let g = &self.grid;
        writeln!(
            w,
            "# nx={} ny={} hx={:e} hy={:e} bc={} time={:e}",
            g.nx, g.ny, g.hx, g.hy, g.bc, time
        )?;
        Ok(())
    }
}
