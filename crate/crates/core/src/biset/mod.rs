//! Bisets over `S`, viewed as `S x S`-sets, and the rational Burnside ring.

mod burnside;
mod classes;
mod diagonal;
mod explicit;
mod stability;
mod stabilize;

pub use burnside::{clear_denominators, MarkCache, MarkEvaluator, VirtualGSet};
pub use classes::ClassList;
pub use diagonal::{all_twisted_diagonals, is_twisted_diagonal, TwistedDiagonal};
pub use explicit::{all_orbit_types, materialize, orbit_class, realize_explicit, ExplicitBiset};
pub use stability::{
    contains_identity_orbit, is_f_generated, is_left_stable, is_right_stable, is_stable_with,
    twist_preserves_marks, Quantifier, Side,
};
pub use stabilize::Stabilizer;
