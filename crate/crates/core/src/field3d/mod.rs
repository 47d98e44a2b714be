//! The axisymmetric fields `(u, d, P)` of the liquid-crystal flow built
//! from a radial angle profile, and their export as VTK files.

mod export;
mod fields;

pub use export::{export_trajectory, export_vtk, FieldSeries, Sampling, SeriesEntry};
pub use fields::{
    director, pressure, time_derivative, velocity, velocity_divergence, FieldSample, PressureProfile,
};
