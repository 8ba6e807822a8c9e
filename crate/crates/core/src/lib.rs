//! Exact computations for rings of torus-invariant differential operators.
//!
//! A diagonal action of `G = (k^x)^m` on `Y = k^r x (k^x)^s` is encoded by
//! an integer weight matrix `L` whose columns are the weights of the
//! coordinates `Q_1, ..., Q_n`. From `L` alone the crate decides whether the
//! invariant ring `D(Y)^G` has enough simple finite-dimensional modules and
//! builds the objects that certify the answer:
//!
//! - [`exactlin`]: Hermite and Smith forms with unimodular transforms,
//!   integer kernels, the block normal form of the weight matrix and
//!   sign-constrained row-space feasibility with Farkas certificates.
//! - [`action`]: weights, faithfulness, transitivity on the torus factor,
//!   and the stabilizer (slice) data.
//! - [`decide`]: triviality of invariants, flip sets, and the full
//!   [`AnalysisReport`](decide::AnalysisReport).
//! - [`chars`]: weight-space dimensions, the graded dimension series, and
//!   the lattice section identifying the slice and global quotients.
//! - [`weyl`]: a symbolic engine for operators `c(Pi) u_alpha`, their action
//!   on monomials, partial Fourier transforms and obstruction witnesses.
//!
//! All arithmetic is exact. Coordinate indices in the API are zero-based.

pub mod action;
pub mod chars;
pub mod decide;
pub mod error;
pub mod exactlin;
pub mod serde_big;
pub mod weyl;

pub use action::{SliceData, TorusAction};
pub use decide::{analyze, AnalysisReport, Obstruction};
pub use error::{Error, Result};
pub use exactlin::{BlockNormalForm, IntMatrix, PositivityWitness, UnimodularPair};
pub use weyl::{Monomial, OperatorElement, ScaledMonomial};

/// Cap on the number of lattice points any single enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimit(pub u64);

impl EnumLimit {
    pub const DEFAULT: EnumLimit = EnumLimit(1_000_000);

    pub fn check(self, points: u128) -> Result<()> {
        if points > self.0 as u128 {
            Err(Error::BoxTooLarge { points, limit: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for EnumLimit {
    fn default() -> Self {
        Self::DEFAULT
    }
}
