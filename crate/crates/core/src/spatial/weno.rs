//! Fifth-order WENO evaluation of the Burgers advection term `-(u u_x + u u_y)`.
//!
//! The flux `u²/2` is split with a global Lax-Friedrichs splitting
//! (`α = max|u|` per direction) and each half is reconstructed at the cell
//! faces with Jiang-Shu smoothness indicators.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spatial::grid::{BoundaryCondition, Field2D};

/// Regularisation in the nonlinear weights.
pub const WENO_EPSILON: f64 = 1e-6;

/// Reconstructs the face value at `i+1/2` from the five cell values
/// `v[i-2], ..., v[i+2]` (upwind-biased to the left).
#[inline]
fn reconstruct<T: Real>(a: T, b: T, c: T, d: T, e: T) -> T {
    let c13_12 = T::lit(13.0 / 12.0);
    let quarter = T::lit(0.25);
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    let eps = T::lit(WENO_EPSILON);

    let sq = |x: T| x * x;
    let beta0 = c13_12 * sq(a - two * b + c) + quarter * sq(a - four * b + three * c);
    let beta1 = c13_12 * sq(b - two * c + d) + quarter * sq(b - d);
    let beta2 = c13_12 * sq(c - two * d + e) + quarter * sq(three * c - four * d + e);

    let w0 = T::lit(0.1) / sq(eps + beta0);
    let w1 = T::lit(0.6) / sq(eps + beta1);
    let w2 = T::lit(0.3) / sq(eps + beta2);

    let six = T::lit(6.0);
    let p0 = (two * a - T::lit(7.0) * b + T::lit(11.0) * c) / six;
    let p1 = (-b + T::lit(5.0) * c + two * d) / six;
    let p2 = (two * c + T::lit(5.0) * d - e) / six;

    (w0 * p0 + w1 * p1 + w2 * p2) / (w0 + w1 + w2)
}

/// Adds `-(F_{i+1/2} - F_{i-1/2}) / h` along one periodic line into `out`.
fn flux_difference<T: Real>(line: &[T], alpha: T, h: T, out: &mut [T]) {
    let n = line.len();
    let half = T::lit(0.5);
    let fp: Vec<T> = line.iter().map(|&u| half * (half * u * u + alpha * u)).collect();
    let fm: Vec<T> = line.iter().map(|&u| half * (half * u * u - alpha * u)).collect();
    let at = |v: &[T], k: isize| v[k.rem_euclid(n as isize) as usize];

    let mut face = vec![T::zero(); n];
    for (i, slot) in face.iter_mut().enumerate() {
        let i = i as isize;
        let plus = reconstruct(at(&fp, i - 2), at(&fp, i - 1), at(&fp, i), at(&fp, i + 1), at(&fp, i + 2));
        let minus = reconstruct(at(&fm, i + 3), at(&fm, i + 2), at(&fm, i + 1), at(&fm, i), at(&fm, i - 1));
        *slot = plus + minus;
    }
    for i in 0..n {
        let left = face[(i + n - 1) % n];
        out[i] = out[i] - (face[i] - left) / h;
    }
}

/// Returns `-(u u_x + u u_y)` on a periodic grid.
pub fn weno5_advection<T: Real>(u: &Field2D<T>) -> Result<Field2D<T>> {
    let g = u.grid;
    if g.bc != BoundaryCondition::Periodic {
        return Err(Error::RequiresPeriodic);
    }
    let alpha = u.max_norm();
    let mut out = vec![T::zero(); g.len()];

    for (row, out_row) in u.values.chunks(g.nx).zip(out.chunks_mut(g.nx)) {
        flux_difference(row, alpha, g.hx, out_row);
    }

    let mut column = vec![T::zero(); g.ny];
    let mut col_out = vec![T::zero(); g.ny];
    for i in 0..g.nx {
        for j in 0..g.ny {
            column[j] = u.values[g.index(i, j)];
            col_out[j] = T::zero();
        }
        flux_difference(&column, alpha, g.hy, &mut col_out);
        for j in 0..g.ny {
            let k = g.index(i, j);
            out[k] = out[k] + col_out[j];
        }
    }
    Ok(Field2D { grid: g, values: out })
}
