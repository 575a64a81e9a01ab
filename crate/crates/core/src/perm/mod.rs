pub mod group;
pub mod iso;
pub mod lattice;
pub mod permutation;
pub mod series;
pub mod table;

pub use group::{right_transversal, CosetTable, PermGroup};
pub use iso::{coset_action, is_isomorphic};
pub use lattice::{maximal_subgroups, ORDER_CAP};
pub use permutation::Perm;
pub use series::{composition_series_solvable, prime_step_below, prime_steps_between};
