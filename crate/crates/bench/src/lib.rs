//! Inputs shared by the benchmarks.

use num_bigint::BigInt;
use num_rational::BigRational;
use torweyl::{IntMatrix, OperatorElement, TorusAction};

/// A dense 6 x 6 integer matrix with small, mixed-sign entries.
pub fn dense_matrix() -> IntMatrix {
    let rows: Vec<Vec<i64>> =
        (0..6).map(|i| (0..6).map(|j| ((3 * i + 5 * j + i * j) % 7) as i64 - 3).collect()).collect();
    IntMatrix::from_rows(&rows).expect("rectangular")
}

pub fn mixed_action() -> TorusAction {
    TorusAction::from_rows(&[vec![1, 2, -1, 0, 1], vec![0, 1, 1, 1, 0], vec![2, 0, 1, 0, 1]], 3, 2).expect("valid")
}

pub fn graded_action() -> TorusAction {
    TorusAction::from_rows(&[vec![1, 1, 2, 0], vec![0, 1, 1, 1]], 3, 1).expect("valid")
}

pub fn bound(b: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(b))
}

/// `(Q_1 P_2 + Pi_3^2 Q_4 - Pi_1 P_3 / 2)^k` on `k^3 x k^x`.
pub fn operator(k: u32) -> OperatorElement {
    torweyl::weyl::parse_operator("Q(1)*P(2) + Pi(3)^2 * Q(4) - 1/2 * Pi(1) * P(3)", 3, 1)
        .expect("well-formed")
        .pow(k)
}
