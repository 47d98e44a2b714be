//! Grid, angle profiles and the discrete radial operator shared by every
//! other module.

mod grid;
mod operator;
mod profile;

pub use grid::{build_grid, weighted_integral, RadialGrid, MIN_INTERVALS};
pub use operator::{cubic_remainder, radial_derivative, radial_operator, tension_field};
pub use profile::AngleProfile;
