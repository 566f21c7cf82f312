//! Compositional inverses of linearized permutation polynomials over
//! GF(2^n).
//!
//! Two routes are provided: the generic one through cofactors of the
//! Dickson matrix ([`dickson::generic_inverse`]), and closed forms for
//! `P(x) = x + x^2 + tr(x/a)` with n odd ([`special`]). The [`oracle`]
//! module checks both against exhaustive permutation tables on small
//! fields.

pub mod dickson;
pub mod error;
pub mod field;
pub mod json;
pub mod linpoly;
pub mod oracle;
pub mod special;

pub use dickson::{dickson_of, generic_inverse, is_permutation, DicksonMatrix, Matrix};
pub use error::{Error, Result};
pub use field::{make_field, Felt, FieldSpec};
pub use linpoly::{associate_product, Bin2Poly, LinPoly};
pub use oracle::{invert_table, table_of, verify_pointwise, PermTable};
pub use special::{
    ap_set, build_special, conj_prod, conj_sum, p1_inverse, p1_inverse_weighted_form, BidiagOnesRowMatrix, IndexSet,
    SpecialPP,
};
