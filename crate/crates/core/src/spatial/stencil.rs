use crate::scalar::Real;
use crate::spatial::grid::{BoundaryCondition, Field2D, Grid2D};

/// Symmetric 9-point stencil on a square-cell grid.
///
/// `edge` multiplies the four axis neighbours and `corner` the four diagonal
/// ones. Neighbours outside a Dirichlet grid contribute nothing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil9<T> {
    pub center: T,
    pub edge: T,
    pub corner: T,
}

impl<T: Real> Stencil9<T> {
    /// `(1/(6h²)) [1 4 1; 4 -20 4; 1 4 1]`
    pub fn compact_laplacian(h: T) -> Self {
        let s = T::one() / (T::lit(6.0) * h * h);
        Self {
            center: T::lit(-20.0) * s,
            edge: T::lit(4.0) * s,
            corner: s,
        }
    }

    /// `(1/12) [0 1 0; 1 8 1; 0 1 0]`
    pub fn compact_weighting() -> Self {
        Self {
            center: T::lit(8.0) / T::lit(12.0),
            edge: T::one() / T::lit(12.0),
            corner: T::zero(),
        }
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: T, other: &Self) -> Self {
        Self {
            center: self.center + s * other.center,
            edge: self.edge + s * other.edge,
            corner: self.corner + s * other.corner,
        }
    }

    /// Value of the stencil at the point `(i, j)`.
    #[inline]
    pub(crate) fn eval_at(&self, nb: &Neighbours, u: &[T], i: usize, j: usize, nx: usize) -> T {
        let (w, e) = nb.x[i];
        let (s, n) = nb.y[j];
        let at = |ii: Option<usize>, jj: Option<usize>| match (ii, jj) {
            (Some(a), Some(b)) => u[b * nx + a],
            _ => T::zero(),
        };
        let edges = at(w, Some(j)) + at(e, Some(j)) + at(Some(i), s) + at(Some(i), n);
        let mut acc = self.center * u[j * nx + i] + self.edge * edges;
        if self.corner != T::zero() {
            acc = acc + self.corner * (at(w, s) + at(e, s) + at(w, n) + at(e, n));
        }
        acc
    }

    /// Sum of the off-centre contributions at `(i, j)`.
    #[inline]
    pub(crate) fn off_center_at(&self, nb: &Neighbours, u: &[T], i: usize, j: usize, nx: usize) -> T {
        self.eval_at(nb, u, i, j, nx) - self.center * u[j * nx + i]
    }

    pub fn apply(&self, u: &Field2D<T>) -> Field2D<T> {
        let g = u.grid;
        let nb = Neighbours::new(&g);
        let mut out = Vec::with_capacity(g.len());
        for j in 0..g.ny {
            for i in 0..g.nx {
                out.push(self.eval_at(&nb, &u.values, i, j, g.nx));
            }
        }
        Field2D { grid: g, values: out }
    }

    /// `b - self * u`
    pub fn defect(&self, nb: &Neighbours, b: &[T], u: &[T], out: &mut [T], nx: usize, ny: usize) {
        for j in 0..ny {
            for i in 0..nx {
                let k = j * nx + i;
                out[k] = b[k] - self.eval_at(nb, u, i, j, nx);
            }
        }
    }
}

/// Index of the lower and upper neighbour in each direction.
#[derive(Debug, Clone)]
pub struct Neighbours {
    pub x: Vec<(Option<usize>, Option<usize>)>,
    pub y: Vec<(Option<usize>, Option<usize>)>,
}

impl Neighbours {
    pub fn new<T: Real>(g: &Grid2D<T>) -> Self {
        Self {
            x: axis(g.nx, g.bc),
            y: axis(g.ny, g.bc),
        }
    }
}

fn axis(n: usize, bc: BoundaryCondition) -> Vec<(Option<usize>, Option<usize>)> {
    (0..n)
        .map(|i| match bc {
            BoundaryCondition::DirichletZero => (i.checked_sub(1), (i + 1 < n).then_some(i + 1)),
            BoundaryCondition::Periodic => (Some((i + n - 1) % n), Some((i + 1) % n)),
        })
        .collect()
}
