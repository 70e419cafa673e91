//! The n-qubit Pauli group in `(δ, ε, a)` coordinates: the element
//! `i^δ (-1)^ε τ_a` with `a = (v; w)` and `τ_a = ⊗_k Z^{v_k} X^{w_k}`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::dense::{self, DenseMatrix};
use crate::error::{Error, Result};
use crate::gf2::{symplectic_product, BitVector};

/// Largest qubit count for which dense Pauli matrices are materialized.
pub const MAX_DENSE_QUBITS: usize = 10;

/// A power of `i`, stored as the exponent mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u32) -> Self {
        Phase((k % 4) as u8)
    }

    /// `i^δ (-1)^ε`.
    pub fn from_bits(delta: bool, epsilon: bool) -> Self {
        Phase(u8::from(delta) + 2 * u8::from(epsilon))
    }

    pub fn exponent(self) -> u32 {
        u32::from(self.0)
    }

    pub fn delta(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn epsilon(self) -> bool {
        self.0 & 2 == 2
    }

    pub fn to_complex(self) -> Complex64 {
        dense::i_pow(self.exponent())
    }

    /// Matches a unit complex number against `{±1, ±i}`.
    pub fn from_complex(z: Complex64, tol: f64) -> Option<Self> {
        (0..4).map(Phase).find(|p| (p.to_complex() - z).norm() < tol)
    }

    pub fn conj(self) -> Self {
        Phase((4 - self.0) % 4)
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// A Pauli group element `i^δ (-1)^ε τ_a`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhasedPauli {
    delta: bool,
    epsilon: bool,
    a: BitVector,
}

impl PhasedPauli {
    pub fn new(delta: bool, epsilon: bool, a: BitVector) -> Result<Self> {
        if !a.len().is_multiple_of(2) {
            return Err(Error::OddDimension(a.len()));
        }
        Ok(Self { delta, epsilon, a })
    }

    /// `τ_a` with trivial phase.
    pub fn tau(a: BitVector) -> Result<Self> {
        Self::new(false, false, a)
    }

    /// The Hermitian element `i^{a^T J a} τ_a`, i.e. the usual tensor product
    /// of `I, X, Y, Z` up to sign.
    pub fn hermitian(a: BitVector) -> Result<Self> {
        let n = a.len() / 2;
        let delta = a.slice(0, n).dot(&a.slice(n, n));
        Self::new(delta, false, a)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            delta: false,
            epsilon: false,
            a: BitVector::zeros(2 * n),
        }
    }

    /// Single-qubit Z on `qubit`.
    pub fn z(n: usize, qubit: usize) -> Self {
        Self::identity(n).with_label(BitVector::unit(2 * n, qubit))
    }

    /// Single-qubit X on `qubit`.
    pub fn x(n: usize, qubit: usize) -> Self {
        Self::identity(n).with_label(BitVector::unit(2 * n, n + qubit))
    }

    fn with_label(mut self, a: BitVector) -> Self {
        self.a = a;
        self
    }

    pub fn n(&self) -> usize {
        self.a.len() / 2
    }

    pub fn delta(&self) -> bool {
        self.delta
    }

    pub fn epsilon(&self) -> bool {
        self.epsilon
    }

    pub fn phase(&self) -> Phase {
        Phase::from_bits(self.delta, self.epsilon)
    }

    /// The label `a = (v; w)`.
    pub fn a(&self) -> &BitVector {
        &self.a
    }

    pub fn z_part(&self) -> BitVector {
        self.a.slice(0, self.n())
    }

    pub fn x_part(&self) -> BitVector {
        self.a.slice(self.n(), self.n())
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::QubitMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    /// Group product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let n = self.n();
        // a_2^T J a_1 = v_2 · w_1
        let cross = other.a.slice(0, n).dot(&self.a.slice(n, n));
        Ok(Self {
            delta: self.delta ^ other.delta,
            epsilon: self.epsilon ^ other.epsilon ^ (self.delta & other.delta) ^ cross,
            a: &self.a + &other.a,
        })
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_same_n(other)?;
        Ok(!symplectic_product(&self.a, &other.a))
    }

    /// Whether the element is Hermitian, i.e. `δ = a^T J a`.
    pub fn is_hermitian(&self) -> bool {
        let n = self.n();
        self.delta == self.a.slice(0, n).dot(&self.a.slice(n, n))
    }

    /// Action on a computational basis state `|x⟩`:
    /// `τ_a |x⟩ = (-1)^{v^T (x + w)} |x + w⟩`, times the element's phase.
    pub fn apply_basis(&self, x: &BitVector) -> Result<(Phase, BitVector)> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::QubitMismatch(n, x.len()));
        }
        let w = self.a.slice(n, n);
        let flipped = x + &w;
        let sign = Phase::from_bits(false, self.a.slice(0, n).dot(&flipped));
        Ok((self.phase() * sign, flipped))
    }

    /// Dense matrix `i^δ (-1)^ε τ_{v_1 w_1} ⊗ … ⊗ τ_{v_n w_n}`, built from
    /// the single-qubit matrices by Kronecker products.
    pub fn to_dense(&self) -> Result<DenseMatrix> {
        let n = self.n();
        if n > MAX_DENSE_QUBITS {
            return Err(Error::TooLarge {
                what: "dense Pauli",
                n,
                max: MAX_DENSE_QUBITS,
            });
        }
        let mut m = DenseMatrix::identity(1);
        for k in 0..n {
            m = m.kron(&single_qubit_tau(self.a.get(k), self.a.get(n + k)));
        }
        Ok(m.scale(self.phase().to_complex()))
    }
}

/// `τ_{00} = I`, `τ_{01} = σ_x`, `τ_{10} = σ_z`, `τ_{11} = iσ_y`.
fn single_qubit_tau(v: bool, w: bool) -> DenseMatrix {
    let rows: &[&[f64]] = match (v, w) {
        (false, false) => &[&[1.0, 0.0], &[0.0, 1.0]],
        (false, true) => &[&[0.0, 1.0], &[1.0, 0.0]],
        (true, false) => &[&[1.0, 0.0], &[0.0, -1.0]],
        (true, true) => &[&[0.0, 1.0], &[-1.0, 0.0]],
    };
    DenseMatrix::from_real(rows).expect("2x2")
}

impl fmt::Display for PhasedPauli {
    /// Renders as `±[i]τ[v|w]`, e.g. `-iτ[10|01]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}τ[{}|{}]",
            if self.epsilon { '-' } else { '+' },
            if self.delta { "i" } else { "" },
            self.z_part(),
            self.x_part()
        )
    }
}

impl fmt::Debug for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhasedPauli({self})")
    }
}

impl FromStr for PhasedPauli {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form. The sign is optional and
    /// `t` may stand in for `τ`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid Pauli {s:?}, expected e.g. -iτ[10|01]"));
        let mut rest = s.trim();
        let mut epsilon = false;
        if let Some(r) = rest.strip_prefix('-') {
            epsilon = true;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        rest = rest.trim_start();
        let delta = match rest.strip_prefix('i') {
            Some(r) => {
                rest = r.trim_start();
                true
            }
            None => false,
        };
        let body = rest
            .strip_prefix('τ')
            .or_else(|| rest.strip_prefix('t'))
            .ok_or_else(bad)?
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (v, w) = body.split_once('|').ok_or_else(bad)?;
        let (v, w) = (v.parse::<BitVector>()?, w.parse::<BitVector>()?);
        if v.len() != w.len() {
            return Err(bad());
        }
        Self::new(delta, epsilon, BitVector::concat(&v, &w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::TOL;
    use proptest::prelude::*;

    fn all_paulis(n: usize) -> Vec<PhasedPauli> {
        let mut out = Vec::new();
        for bits in 0..1u64 << (2 * n) {
            for phase in 0..4u32 {
                let p = Phase::from_exponent(phase);
                out.push(
                    PhasedPauli::new(p.delta(), p.epsilon(), BitVector::from_u64(2 * n, bits)).unwrap(),
                );
            }
        }
        out
    }

    fn dense_commutator_vanishes(a: &DenseMatrix, b: &DenseMatrix) -> bool {
        a.matmul(b).approx_eq(&b.matmul(a), TOL)
    }

    #[test]
    fn identity_is_neutral() {
        for p in all_paulis(1) {
            assert_eq!(PhasedPauli::identity(1).mul(&p).unwrap(), p);
            assert_eq!(p.mul(&PhasedPauli::identity(1)).unwrap(), p);
        }
    }

    #[test]
    fn iy_squared_is_minus_identity() {
        let iy: PhasedPauli = "τ[1|1]".parse().unwrap();
        let sq = iy.mul(&iy).unwrap();
        assert_eq!(sq, "-τ[0|0]".parse().unwrap());
        let d = iy.to_dense().unwrap();
        assert!(d.matmul(&d).approx_eq(&DenseMatrix::identity(2).scale(-dense::ONE), TOL));
    }

    #[test]
    fn z_times_x_differs_from_x_times_z_by_sign() {
        let z = PhasedPauli::z(1, 0);
        let x = PhasedPauli::x(1, 0);
        let zx = z.mul(&x).unwrap();
        let xz = x.mul(&z).unwrap();
        assert_eq!(zx.a(), xz.a());
        assert_eq!(zx.delta(), xz.delta());
        assert_ne!(zx.epsilon(), xz.epsilon());
        assert!(zx.to_dense().unwrap().approx_eq(
            &z.to_dense().unwrap().matmul(&x.to_dense().unwrap()),
            TOL
        ));
    }

    #[test]
    fn single_qubit_displays() {
        let x = PhasedPauli::x(1, 0).to_dense().unwrap();
        assert!(x.approx_eq(&DenseMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap(), TOL));
        let iy: PhasedPauli = "τ[1|1]".parse().unwrap();
        let expected = DenseMatrix::from_real(&[&[0.0, 1.0], &[-1.0, 0.0]]).unwrap();
        assert!(iy.to_dense().unwrap().approx_eq(&expected, TOL));
        assert!(PhasedPauli::identity(1).to_dense().unwrap().approx_eq(&DenseMatrix::identity(2), TOL));
    }

    #[test]
    fn commutation_examples() {
        let id = PhasedPauli::identity(1);
        for p in all_paulis(1) {
            assert!(id.commutes(&p).unwrap());
        }
        assert!(!PhasedPauli::z(1, 0).commutes(&PhasedPauli::x(1, 0)).unwrap());
        let zz: PhasedPauli = "τ[11|00]".parse().unwrap();
        let xx: PhasedPauli = "τ[00|11]".parse().unwrap();
        assert!(zz.commutes(&xx).unwrap());
        assert!(dense_commutator_vanishes(&zz.to_dense().unwrap(), &xx.to_dense().unwrap()));
    }

    #[test]
    fn basis_action_examples() {
        let zero = BitVector::zeros(1);
        let one = BitVector::unit(1, 0);
        assert_eq!(PhasedPauli::identity(1).apply_basis(&one).unwrap(), (Phase::ONE, one.clone()));
        assert_eq!(PhasedPauli::x(1, 0).apply_basis(&zero).unwrap(), (Phase::ONE, one.clone()));
        assert_eq!(PhasedPauli::z(1, 0).apply_basis(&one).unwrap(), (Phase::MINUS_ONE, one));
    }

    #[test]
    fn mismatched_qubits_are_errors() {
        let a = PhasedPauli::identity(1);
        let b = PhasedPauli::identity(2);
        assert_eq!(a.mul(&b), Err(Error::QubitMismatch(1, 2)));
        assert!(a.commutes(&b).is_err());
        assert!(a.apply_basis(&BitVector::zeros(2)).is_err());
    }

    #[test]
    fn exhaustive_homomorphism_small_n() {
        for n in 1..=2 {
            let all = all_paulis(n);
            let dense: Vec<DenseMatrix> = all.iter().map(|p| p.to_dense().unwrap()).collect();
            for (p, dp) in all.iter().zip(&dense) {
                for (q, dq) in all.iter().zip(&dense) {
                    let prod = p.mul(q).unwrap().to_dense().unwrap();
                    assert!(prod.approx_eq(&dp.matmul(dq), TOL), "{p} * {q}");
                    assert_eq!(p.commutes(q).unwrap(), dense_commutator_vanishes(dp, dq));
                }
            }
        }
    }

    #[test]
    fn hermitian_iff_delta_matches() {
        for p in all_paulis(2) {
            let d = p.to_dense().unwrap();
            assert_eq!(d.adjoint().approx_eq(&d, TOL), p.is_hermitian(), "{p}");
        }
    }

    #[test]
    fn basis_action_matches_dense_columns() {
        for p in all_paulis(2) {
            let d = p.to_dense().unwrap();
            for col in 0..4u64 {
                let x = dense::basis_label(2, col as usize);
                let (phase, y) = p.apply_basis(&x).unwrap();
                let row = dense::basis_index(&y);
                for r in 0..4 {
                    let expected = if r == row { phase.to_complex() } else { dense::ZERO };
                    assert!((d[(r, col as usize)] - expected).norm() < TOL);
                }
            }
        }
    }

    fn pauli(n: usize) -> impl Strategy<Value = PhasedPauli> {
        (any::<bool>(), any::<bool>(), proptest::collection::vec(any::<bool>(), 2 * n))
            .prop_map(|(d, e, bits)| PhasedPauli::new(d, e, BitVector::from_bools(&bits)).unwrap())
    }

    proptest! {
        #[test]
        fn homomorphism_random_three_qubits(p in pauli(3), q in pauli(3)) {
            let prod = p.mul(&q).unwrap().to_dense().unwrap();
            let expected = p.to_dense().unwrap().matmul(&q.to_dense().unwrap());
            prop_assert!(prod.approx_eq(&expected, TOL));
        }

        #[test]
        fn text_round_trip(p in pauli(3)) {
            let text = p.to_string();
            prop_assert_eq!(text.parse::<PhasedPauli>().unwrap(), p);
        }
    }
}
