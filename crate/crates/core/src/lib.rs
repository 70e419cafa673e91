//! Clifford operators over GF(2) and the third level of the Clifford
//! hierarchy.
//!
//! The crate represents Clifford operators by a symplectic matrix `C` and a
//! vector `h` over GF(2), puts commuting sets of symplectic involutions into
//! block upper-triangular normal form, and uses both to turn any gate of the
//! third hierarchy level into an explicit generalized semi-Clifford
//! certificate: a conjugating Clifford together with a maximal abelian group
//! of diagonal operators.
//!
//! Everything symbolic is checked against a dense complex-matrix engine
//! ([`dense`]) at small qubit counts.
//!
//! Coordinates follow one convention throughout: a Pauli label
//! `a = (v; w) ∈ Z_2^{2n}` carries the z-part `v` on top and the x-part `w`
//! below, `τ_a = Z^{v_1} X^{w_1} ⊗ … ⊗ Z^{v_n} X^{w_n}`, and qubit 0 is the
//! most significant bit of a computational basis index.

pub mod circuit;
pub mod classify;
pub mod clifford;
pub mod dense;
pub mod error;
pub mod expansion;
pub mod gf2;
pub mod normal_form;
pub mod pauli;
pub mod pipeline;
pub mod random;

pub use clifford::CliffordRep;
pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector, Lagrangian};
pub use pauli::PhasedPauli;
