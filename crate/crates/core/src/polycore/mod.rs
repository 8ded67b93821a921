//! Exact coefficients, multivariate polynomials, monomial orders, Gröbner
//! bases and polynomial differential forms.

pub mod forms;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod scalar;

pub use forms::DifferentialForm;
pub use groebner::{buchberger, normal_form, Ideal, ModuleOrder};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use parse::{parse_poly, parse_polys, print_poly};
pub use poly::{same_ring_checked, MultiPoly, Poly, PolyRing};
pub use scalar::{Coeff, Exact, GaussQ, Scalar, Q};
