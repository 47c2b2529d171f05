//! Machines over rational power series: carries, windmills, vanes and
//! binary expansions.

mod expand;
mod matrix;
mod rlfsm;
mod vane;
mod windmill;

pub use expand::{expand_rlfsm, BlockComponent, EntryOrder, Expansion, ExpansionStrategy, Part};
pub use matrix::{fraction_det, fraction_solve, rational_connection, RationalConnection, RationalMatrix};
pub use rlfsm::Rlfsm;
pub use vane::{compile_vane, transfer_between, vane_length, vane_transfer};
pub use windmill::{build_windmill, windmill_interleave_check, InterleaveReport, WindmillSpec, INTERLEAVE_MAX_VANES};
