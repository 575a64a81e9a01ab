pub mod modp;
pub mod parse;
pub mod poly;

pub use parse::parse_poly;
pub use poly::{
    cyclotomic, discriminant, is_rational_square, normalize_monic, rat, rat_frac, resultant,
    squarefree_part, IntPoly, Normalized, Rat, RatPoly,
};
