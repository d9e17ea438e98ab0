//! Built-in presentations used by the tests, the benches and the CLI examples.
//!
//! Where a presentation has a single deformation parameter `q`, it is the
//! symbol `q1_2` and the other entries of the q-table are powers of it.

use crate::presentations::{AlgebraElement, Monomial, MonomialOrder, Presentation};
use crate::qscalar::{LaurentScalar, ParamIndex};

fn q() -> LaurentScalar {
    LaurentScalar::param(ParamIndex::new(0, 1).expect("0 < 1"))
}

fn q_inv() -> LaurentScalar {
    q().invert().expect("unit")
}

/// `S` with generic symbolic `q_ij` and `x_i^{N_i} = 0` for `i < nilpotency.len()`.
pub fn quantum_symmetric(n: usize, nilpotency: Vec<u32>) -> Presentation {
    Presentation::new(n).with_nilpotency(nilpotency)
}

/// `k[x] / (x^N)`.
pub fn truncated_polynomial(big_n: u32) -> Presentation {
    Presentation::new(1).with_nilpotency(vec![big_n])
}

/// `k<x, y | yx = q xy>`, i.e. `q_12 = q^{-1}` in the `x_i x_j = q_ij x_j x_i` convention.
pub fn quantum_plane() -> Presentation {
    Presentation::new(2).with_q(0, 1, q_inv()).expect("valid pair")
}

/// `U_q(sl_3)^+`: `x1 x2 = q x2 x1`, `x2 x3 = q x3 x2`, `x1 x3 = q^{-1} x3 x1 + x2`.
pub fn uqsl3() -> Presentation {
    Presentation::new(3)
        .with_order(MonomialOrder::Lex)
        .with_q(0, 1, q())
        .and_then(|p| p.with_q(1, 2, q()))
        .and_then(|p| p.with_q(0, 2, q_inv()))
        .and_then(|p| p.with_p(0, 2, AlgebraElement::generator(1, 3)))
        .expect("valid pairs")
}

/// `U_q(sl_3)^+` with generators reordered as `y1 = x2, y2 = x1, y3 = x3` so
/// that the central-ish generator comes first, quotiented by `y1^N`.
///
/// Relations: `y1 y2 = q^{-1} y2 y1`, `y1 y3 = q y3 y1`, `y2 y3 = q^{-1} y3 y2 + y1`.
pub fn uqsl3_truncated(big_n: u32) -> Presentation {
    Presentation::new(3)
        .with_nilpotency(vec![big_n])
        .with_q(0, 1, q_inv())
        .and_then(|p| p.with_q(0, 2, q()))
        .and_then(|p| p.with_q(1, 2, q_inv()))
        .and_then(|p| p.with_p(1, 2, AlgebraElement::generator(0, 3)))
        .expect("valid pairs")
}

/// The Heisenberg algebra `[x2, x3] = x1` with `x1, x2` nilpotent of order 2.
/// `x2^2` is not braided-central.
pub fn heisenberg() -> Presentation {
    let one = LaurentScalar::one();
    Presentation::new(3)
        .with_nilpotency(vec![2, 2])
        .with_q(0, 1, one.clone())
        .and_then(|p| p.with_q(0, 2, one.clone()))
        .and_then(|p| p.with_q(1, 2, one.clone()))
        .and_then(|p| p.with_p(1, 2, AlgebraElement::generator(0, 3)))
        .expect("valid pairs")
}

/// `[x1, x2] = x3`, `[x2, x3] = x2`, `[x1, x3] = 0`: the Jacobi identity fails,
/// so rewriting is not confluent.
pub fn non_confluent() -> Presentation {
    let one = LaurentScalar::one();
    Presentation::new(3)
        .with_q(0, 1, one.clone())
        .and_then(|p| p.with_q(0, 2, one.clone()))
        .and_then(|p| p.with_q(1, 2, one.clone()))
        .and_then(|p| p.with_p(0, 1, AlgebraElement::generator(2, 3)))
        .and_then(|p| p.with_p(1, 2, AlgebraElement::monomial(Monomial::generator(1, 3))))
        .expect("valid pairs")
}
