//! Right fractions over the denominator monoid and the subalgebra X.

mod atom;
mod common;
mod conditions;
mod member;
mod multiindex;
mod ore;
mod vanish;

pub use atom::{AtomKind, DenomAtom, DenomWord};
pub use member::{membership_in_x, x_generators, Membership, XGen, XPoly};
pub use ore::{
    frac_add, frac_arith, frac_eq, frac_mul, frac_neg, frac_pow, frac_product, frac_scale, frac_star, frac_sub,
    frac_reduce, ore_atom, ore_right, right_divide, verify_ore, FracOp, Fraction, FractionReport,
};
pub use common::{common_denominator, Cofactor, CommonDenominator, CommonDenominatorReport};
pub use conditions::{check_preset_conditions, default_window, identity_holds, require_window, Condition, ConditionReport, IdentityCheck};
pub use multiindex::{check_sequence, multiindex_sequence};
pub use vanish::{quotient_vanishes, Strictness, VanishRule, Vanishing};
