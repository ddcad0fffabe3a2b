//! Exact polynomials and the matroid invariants built from them.

pub mod invariants;
pub mod types;

pub use invariants::{
    char_poly, char_poly_subsets, char_value, chromatic_poly, crapo_tutte_convolution,
    eval_flow_form, flow_census_from_rank_poly, flow_census_poly, flow_poly, rank_gen_poly,
    rank_gen_poly_dc, rank_gen_poly_subsets, tutte,
};
pub use types::{BiPoly, LaurentPoly, Ring, UniPoly};
