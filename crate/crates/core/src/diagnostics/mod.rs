//! Energies, the drop/jump bookkeeping at singular times, Gronwall checks
//! and numerical comparison reports.

mod energy;
mod ordering;
mod trace;

pub use energy::{cap_energy, energy, energy_lower_bound, total_energy};
pub use ordering::{ordering_report, OrderingReport, OrderingWindow, Side};
pub use trace::{
    energy_drop, energy_jump, gronwall_check, smooth_segments, DropEstimate, EnergySample, EnergyTrace,
    JumpEstimate,
};
