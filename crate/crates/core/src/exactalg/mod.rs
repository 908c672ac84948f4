//! Exact arithmetic over Q: polynomials, localized rings, univariate utilities.

pub mod field;
pub mod frac;
pub mod gcd;
pub mod loc;
pub mod mpoly;
pub mod parse;
pub mod upoly;

pub use field::{rat, rat_int, DifferentialField, Field, Rat};
pub use frac::{Frac, QFun, RatFun};
pub use gcd::{is_squarefree, mpoly_gcd, squarefree_decompose, uni_gcd_bezout};
pub use loc::{LocElem, LocRing, Ring};
pub use mpoly::{poly_arith, vars_of, ArithOp, MPoly, Mono, Vars};
pub use parse::{parse_expr, parse_loc, parse_poly, ExprTarget};
pub use upoly::{Render, UPoly};
