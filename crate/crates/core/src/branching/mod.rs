//! The nonuniqueness construction: blowup and continuation, the cone time
//! `t₂`, and the family of branches obtained by reinserting a bubble.

mod distance;
mod family;
mod io;
mod reinsert;
mod t2;

pub use distance::{branch_distance, BranchDistance};
pub use family::{
    orchestrate, run_base, spawn_branch, BranchRecord, CapCheck, FamilyPlan, FamilyRun,
};
pub use io::{write_family, BranchManifest};
pub use reinsert::{bubble_reinsertion, default_r_n};
pub use t2::{cone_excess, find_t2, T2Report, DEFAULT_CONE_SLOPE, DEFAULT_GAMMA};
