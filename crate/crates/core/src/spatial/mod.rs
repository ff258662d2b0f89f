//! Uniform-grid spatial operators: compact Laplacian with its weighting
//! matrix, WENO5 Burgers advection, and boundary handling.

pub mod compact;
pub mod grid;
pub mod stencil;
pub mod weno;

pub use compact::CompactLaplacian;
pub use grid::{BoundaryCondition, Field2D, Grid2D};
pub use stencil::Stencil9;
pub use weno::weno5_advection;
