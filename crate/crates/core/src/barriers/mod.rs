//! Analytic barrier families, the bubble-scale ODE and residual
//! certification.

mod bounds;
mod certify;
mod family;
mod lambda;

pub use bounds::{delta_bound, max_s_argmax, max_s_function, theta_cos_bound};
pub use certify::{
    certify_parameters, certify_parameters_with, is_certified, scan_residual, Certificate,
    DeltaRule, ParamRange, SampleDensity, ScanResult, SearchBox, Target, SIGN_TOL,
};
pub use family::{
    barrier_residual, barrier_value, quadratic_cap_cone_slope, BarrierKind, BarrierSpec, Jet,
};
pub use lambda::{first_vanishing_time, lambda_value, Direction, LambdaPath};
