//! Linear algebra over the two-element field.

mod matrix;
mod symplectic;
mod vector;

pub use matrix::{BitMatrix, Echelon};
pub use symplectic::{
    enumerate_lagrangians, half_dim, is_symplectic, j_matrix, swap_halves, symplectic_complete,
    symplectic_form, symplectic_product, Lagrangian, MAX_ENUMERATION_QUBITS,
};
pub use vector::BitVector;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
        proptest::collection::vec(any::<bool>(), rows * cols)
            .prop_map(move |bits| BitMatrix::from_fn(rows, cols, |i, j| bits[i * cols + j]))
    }

    proptest! {
        #[test]
        fn multiplication_is_associative_and_distributive(
            a in matrix(5, 7), b in matrix(7, 4), c in matrix(4, 6), d in matrix(7, 4)
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
        }

        #[test]
        fn rank_nullity(m in matrix(6, 9)) {
            let kernel = m.kernel_basis();
            prop_assert_eq!(m.rank() + kernel.len(), m.cols());
            for v in &kernel {
                prop_assert!(m.apply(v).is_zero());
            }
        }

        #[test]
        fn solve_residual_is_zero(m in matrix(6, 6), x in proptest::collection::vec(any::<bool>(), 6)) {
            let rhs = m.apply(&BitVector::from_bools(&x));
            let sol = m.solve(&rhs).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.apply(&sol), rhs);
        }

        #[test]
        fn inverse_multiplies_to_identity(m in matrix(6, 6)) {
            match m.inverse() {
                Ok(inv) => {
                    prop_assert!((&m * &inv).is_identity());
                    prop_assert!((&inv * &m).is_identity());
                }
                Err(_) => prop_assert!(m.rank() < 6),
            }
        }
    }
}
