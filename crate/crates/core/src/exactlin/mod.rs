//! Exact integer and rational linear algebra.

mod block;
mod feasibility;
mod matrix;
mod normal;
mod rational;

pub use block::{block_normal_form, BlockNormalForm, UnimodularPair};
pub use feasibility::{
    positive_vector_in_rowspace, rowspace_feasibility, verify_witness, Feasibility, PositivityWitness,
};
pub use matrix::{dot, to_big, IntMatrix};
pub use normal::{
    hermite_normal_form, hermite_rank, kernel_basis, rank, saturated_row_lattice, smith_normal_form, SmithForm,
};
pub use rational::{common_denominator, primitive_integer_multiple, to_rational, RatMatrix, RatVector};
