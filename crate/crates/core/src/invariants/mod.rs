pub mod bounds;
pub mod invariant;
pub mod resolvent;
pub mod tschirn;

pub use bounds::{hadamard_dual_bound, invariant_bound, powersum_bound, root_bound};
pub use invariant::{relative_invariant, verify_relative, Invariant};
pub use resolvent::{newton_from_power_sums, resolvent};
pub use tschirn::{evaluate, tschirnhausen_distinct, Tschirn};
