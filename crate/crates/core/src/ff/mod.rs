//! Finite fields `GF(p^k)`, their towers, and univariate polynomials.

pub(crate) mod fp;
mod field;
mod nth_root;
mod order;
mod roots;
mod upoly;

pub use field::{
    build_field, embed, embeds_into, extend, same_field, unit_group_order, Fe, Field, FieldCtx,
    FieldExt,
};
pub use nth_root::{is_nth_power, nth_root, nth_root_in_degrees, nth_root_min_ext};
pub use order::{
    divisors, factor, mult_order, order_dividing, primitive_element, primitive_root_prime,
    unit_order_u128,
};
pub use roots::{distinct_degree_factors, distinct_roots, is_irreducible, poly_roots, radical, SPLIT_SEED};
pub use upoly::UPoly;
