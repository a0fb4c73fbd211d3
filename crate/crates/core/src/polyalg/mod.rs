//! Polynomial algebra over `F_p`: dense univariate and sparse bivariate
//! polynomials, the text format, root finding, pseudo-division and
//! resultants.

mod bi;
mod parse;
mod resultant;
mod roots;
mod uni;

pub use bi::{divides, powers, pseudo_rem_y, BiPoly};
pub use parse::parse_poly;
pub use resultant::{det_fraction_free, resultant_y, singular_points};
pub use roots::{uni_roots, uni_roots_with, RootStrategy, DEFAULT_ROOT_SEED, SCAN_THRESHOLD};
pub use uni::UniPoly;

/// `dP/dx` or `dP/dy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

pub fn partial(p: &BiPoly, var: Var) -> BiPoly {
    match var {
        Var::X => p.partial_x(),
        Var::Y => p.partial_y(),
    }
}
