//! Exact arithmetic kernel.

mod json;
mod perm;
mod poly;
mod series;
mod symfun;
mod text;
mod var;

use thiserror::Error;

pub use json::{from_json_terms, to_json_terms, JsonTerm};
pub use perm::{permutations, permutations_bounded, Permutations, DEFAULT_PERMUTATION_BOUND};
pub use poly::{div_exact_int, to_integral, to_rational, Coeff, Monomial, Poly, QPoly, SPoly};
pub use series::TruncatedSeries;
pub use symfun::{complete_homogeneous, elementary_symmetric, h_super, t_range};
pub use text::{parse_qpoly, parse_spoly, render};
pub use var::{DegreeTable, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("permutations of {n} elements exceed the bound {bound}")]
    PermutationBound { n: usize, bound: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("series has no inverse")]
    NotInvertible,
}

pub fn t(i: u32) -> SPoly {
    SPoly::var(Var::T(i))
}

pub fn q() -> SPoly {
    SPoly::var(Var::Q)
}

pub fn x(i: u32) -> SPoly {
    SPoly::var(Var::X(i))
}

pub fn int(c: i64) -> SPoly {
    SPoly::from_i64(c)
}
