//! Time integration with a switchable axis value, blowup detection and
//! continuation through the singularity.

mod config;
mod initial;
mod io;
mod run;
mod step;
mod trajectory;

pub use config::{SolverConfig, DEFAULT_BLOWUP_NODE};
pub use initial::{initial_profile, inspect_initial, InitialDataSpec, InitialReport};
pub(crate) use io::{ensure_dir, write_file};
pub use io::{events_csv, read_profiles, read_snapshots, snapshot_csv, write_trajectory, SCHEMA_VERSION};
pub use run::{continue_past_blowup, detect_blowup, excise_core, run_until, EXPLICIT_STIFFNESS, NEAR_PI};
pub use step::{step, step_with_source};
pub use trajectory::{Event, Trajectory};
