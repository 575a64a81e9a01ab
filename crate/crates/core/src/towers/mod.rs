pub mod dual;
pub mod field;

pub use dual::{dual_basis_local, generators_under, reconstruct_element, LevelRecipe, LocalDual, ReconstructionContext};
pub use field::{lift_rat_poly, Level, TowerElement, TowerField, TowerPoly};

/// Add a level defined by a monic polynomial over the top of `k`.
pub fn tower_extend(k: &TowerField, g: TowerPoly) -> crate::Result<TowerField> {
    let name = format!("a{}", k.height() + 1);
    k.extend(g, &name)
}
