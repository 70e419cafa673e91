//! Dense complex matrices: the ground truth every symbolic formula is
//! checked against.

mod block;
mod engine;
pub mod gates;
mod matrix;

pub use block::{commutator_sign, realize_block, BlockRep, Sign};
pub use engine::{
    conjugate_by_pauli, extract_rep, hierarchy_level, in_level, is_pauli, level_violation,
    monomial_check, HierarchyLevel, MonomialCheck, MAX_HIERARCHY_K, MAX_HIERARCHY_QUBITS,
};
pub use matrix::{i_pow, DenseMatrix, I, ONE, TOL, ZERO};

use crate::gf2::BitVector;

/// Computational basis index of the label `x`; qubit 0 is the most
/// significant bit.
pub fn basis_index(x: &BitVector) -> usize {
    x.iter().fold(0usize, |acc, b| (acc << 1) | usize::from(b))
}

/// Inverse of [`basis_index`].
pub fn basis_label(n: usize, index: usize) -> BitVector {
    let mut x = BitVector::zeros(n);
    for k in 0..n {
        if index >> (n - 1 - k) & 1 == 1 {
            x.set(k, true);
        }
    }
    x
}

/// Product of gates applied left to right: `gates[last] · … · gates[0]`.
pub fn circuit_product<'a>(dim: usize, gates: impl IntoIterator<Item = &'a DenseMatrix>) -> DenseMatrix {
    gates
        .into_iter()
        .fold(DenseMatrix::identity(dim), |acc, g| g.matmul(&acc))
}
