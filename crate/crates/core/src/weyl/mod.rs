//! Graded Weyl operators `c(Pi) u_alpha` on `O(Y)`.
//!
//! Every element of `D(Y)` is written uniquely as `sum_alpha c_alpha(Pi)
//! u_alpha` with the coefficient polynomial on the left, where `u_alpha`
//! is `Q_i^{alpha_i}` or `P_i^{-alpha_i}` at an affine coordinate
//! according to the sign of `alpha_i`, and `Q_i^{alpha_i}` at a punctured
//! one. Products are normal ordered with `c(Pi) u_alpha = u_alpha
//! c(Pi + alpha)`.

mod operator;
mod parse;
mod poly;
mod witness;

pub use operator::{p_op, pi_op, q_op, u_op, Monomial, OperatorElement, ScaledMonomial};
pub use parse::parse_operator;
pub use poly::PiPoly;
pub use witness::{
    epsilon_lift_check, fixed_coordinate_witness, no_fdm_witness, simplicity_witness, FixedCoordinateWitness,
    NoFdmWitness,
};
