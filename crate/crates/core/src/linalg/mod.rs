//! Exact integer and rational linear algebra.

mod diophantine;
mod ilp;
mod lp;
mod matrix;
mod normal_form;
mod rational;

pub use diophantine::{solve_diophantine, DiophantineSolution};
pub use ilp::{a_priori_bound, ilp_feasible, ilp_feasible_with, IlpOptions};
pub use lp::{lp_feasible, LinearSystem};
pub use matrix::{dot, to_bigints, IntMatrix};
pub use normal_form::{
    canonical_lattice_basis, hermite_normal_form, integer_kernel, rank, smith_normal_form,
    HnfResult, SnfResult,
};
pub use rational::{clear_denominators, rational_kernel, rref};
