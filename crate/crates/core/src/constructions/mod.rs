pub mod chain;
pub mod fixed;
pub mod radical;
pub mod split;

pub use chain::{minimal_chain, ChainPlan, ChainStep, Origin};
pub use fixed::{fixed_field, galois_quotient, galois_quotients_of_order};
pub use split::{express_roots, express_roots_at, minimal_splitting_tower, next_resolvent, roots_split, splitting_tower, SplittingTower};
pub use radical::{solve_by_radicals, solve_by_radicals_with, unity_orders, GeneratorChange, LevelTag, RadicalTower};
