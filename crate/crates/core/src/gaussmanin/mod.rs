//! Gauss–Manin connections of one-parameter families with one-dimensional affine fibers.

pub mod family;
pub mod hermite;
pub mod routes;

pub use family::Family;
pub use hermite::{h1_basis, BasisPolicy, Class, H1Basis, ReducedForm, Reducer};
pub use routes::{
    compare_routes, compare_routes_signed, e1_cross_check, family_filtered, gm_matrix, gm_matrix_signed,
    gm_route_a, gm_route_b, gm_route_c, h0_kernel_dim, leibniz_gauge_check, picard_fuchs, render_operator,
    CompareReport, E1Report, GMMatrix, Route,
};

/// Reduce a relative 1-form given by ring elements.
pub fn hermite_reduce(fam: &Family, v: &[crate::exactalg::LocElem]) -> crate::Result<ReducedForm> {
    let rf: Vec<_> = v.iter().map(family::loc_to_ratfun).collect::<crate::Result<_>>()?;
    Reducer::new(fam)?.reduce(&rf)
}
