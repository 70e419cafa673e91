use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{basis_index, basis_label, DenseMatrix, TOL};
use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{Phase, PhasedPauli};

/// Cost guards for [`hierarchy_level`].
pub const MAX_HIERARCHY_K: usize = 4;
pub const MAX_HIERARCHY_QUBITS: usize = 7;

/// `u τ_a u†`, using the monomial structure of `τ_a` for the first product.
pub fn conjugate_by_pauli(u: &DenseMatrix, a: &BitVector) -> DenseMatrix {
    let n = u.qubits().expect("power-of-two dimension");
    let tau = PhasedPauli::tau(a.clone()).expect("even label");
    let dim = u.dim();
    let mut u_tau = DenseMatrix::zeros(dim);
    // column x of u·τ_a is phase(x) times column (x + w) of u
    for x in 0..dim {
        let (phase, y) = tau.apply_basis(&basis_label(n, x)).expect("label length");
        let src = basis_index(&y);
        let z = phase.to_complex();
        for i in 0..dim {
            u_tau[(i, x)] = u[(i, src)] * z;
        }
    }
    u_tau.matmul(&u.adjoint())
}

/// The Pauli group element equal to `u` entrywise (within [`TOL`]), if any.
///
/// The candidate is read off `u|0⟩` (which fixes the x-part and the phase up
/// to the z-part) and `u|e_k⟩` (which fixes each z-bit), then verified on
/// every column.
pub fn is_pauli(u: &DenseMatrix) -> Option<PhasedPauli> {
    let n = u.qubits().ok()?;
    let dim = u.dim();
    let col0 = u.column(0);
    let r0 = single_support(&col0)?;
    let w = basis_label(n, r0);
    let phi0 = col0[r0];

    let mut v = BitVector::zeros(n);
    for k in 0..n {
        let x = BitVector::unit(n, k);
        let row = basis_index(&(&x + &w));
        let ratio = u[(row, basis_index(&x))] / phi0;
        if (ratio + 1.0).norm() < TOL {
            v.set(k, true);
        } else if (ratio - 1.0).norm() >= TOL {
            return None;
        }
    }
    let base_sign = if v.dot(&w) { -1.0 } else { 1.0 };
    let phase = Phase::from_complex(phi0 * base_sign, TOL)?;
    let candidate = PhasedPauli::new(phase.delta(), phase.epsilon(), BitVector::concat(&v, &w)).ok()?;

    for col in 0..dim {
        let (ph, y) = candidate.apply_basis(&basis_label(n, col)).ok()?;
        let target = basis_index(&y);
        let expected = ph.to_complex();
        for row in 0..dim {
            let want = if row == target { expected } else { super::ZERO };
            if (u[(row, col)] - want).norm() >= TOL {
                return None;
            }
        }
    }
    Some(candidate)
}

fn single_support(col: &[Complex64]) -> Option<usize> {
    let mut found = None;
    for (i, z) in col.iter().enumerate() {
        if z.norm() >= TOL {
            if found.is_some() {
                return None;
            }
            found = Some(i);
        }
    }
    found
}

/// Reads `(C, h)` off the images `u τ_{e_j} u† = i^{d_j} (-1)^{h_j} τ_{c_j}`.
/// `None` when some image is not a Pauli operator.
pub fn extract_rep(u: &DenseMatrix) -> Option<CliffordRep> {
    let n = u.qubits().ok()?;
    let mut columns = Vec::with_capacity(2 * n);
    let mut h = BitVector::zeros(2 * n);
    for j in 0..2 * n {
        let image = is_pauli(&conjugate_by_pauli(u, &BitVector::unit(2 * n, j)))?;
        // images of Hermitian generators are Hermitian: d_j = c_j^T J c_j
        if !image.is_hermitian() {
            return None;
        }
        h.set(j, image.epsilon());
        columns.push(image.a().clone());
    }
    let c = BitMatrix::from_columns(2 * n, &columns).ok()?;
    CliffordRep::new(c, h).ok()
}

/// Position of a unitary in the Clifford hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HierarchyLevel {
    /// Smallest `k` with `u ∈ C_k`.
    Level(usize),
    /// Not in `C_k` for any `k` up to the bound.
    Above(usize),
}

impl HierarchyLevel {
    pub fn level(self) -> Option<usize> {
        match self {
            HierarchyLevel::Level(k) => Some(k),
            HierarchyLevel::Above(_) => None,
        }
    }
}

/// Membership of `u` in `C_k`.
///
/// `C_1` is the Pauli group with phases `{±1, ±i}`; `C_2` is tested through
/// [`extract_rep`]; higher levels recurse on the `2n` conjugated generators.
pub fn in_level(u: &DenseMatrix, k: usize) -> bool {
    match k {
        0 => false,
        1 => is_pauli(u).is_some(),
        2 => extract_rep(u).is_some(),
        _ => {
            let Ok(n) = u.qubits() else { return false };
            (0..2 * n)
                .into_par_iter()
                .all(|j| in_level(&conjugate_by_pauli(u, &BitVector::unit(2 * n, j)), k - 1))
        }
    }
}

/// First generator index `j` for which `u τ_{e_j} u† ∉ C_{k-1}`, i.e. a
/// witness that `u ∉ C_k`. `None` means `u ∈ C_k`.
pub fn level_violation(u: &DenseMatrix, k: usize) -> Result<Option<usize>> {
    let n = u.qubits()?;
    if k < 2 {
        return Err(Error::Precondition("violation witnesses need k >= 2".into()));
    }
    Ok((0..2 * n).find(|&j| !in_level(&conjugate_by_pauli(u, &BitVector::unit(2 * n, j)), k - 1)))
}

pub fn hierarchy_level(u: &DenseMatrix, kmax: usize) -> Result<HierarchyLevel> {
    let n = u.qubits()?;
    if kmax == 0 || kmax > MAX_HIERARCHY_K {
        return Err(Error::TooLarge {
            what: "hierarchy level bound",
            n: kmax,
            max: MAX_HIERARCHY_K,
        });
    }
    if n > MAX_HIERARCHY_QUBITS {
        return Err(Error::TooLarge {
            what: "hierarchy test",
            n,
            max: MAX_HIERARCHY_QUBITS,
        });
    }
    Ok((1..=kmax)
        .find(|&k| in_level(u, k))
        .map_or(HierarchyLevel::Above(kmax), HierarchyLevel::Level))
}

/// Decomposition `u = Π Λ` of a monomial matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialCheck {
    pub is_monomial: bool,
    /// `permutation[j]` is the row holding the nonzero entry of column `j`.
    pub permutation: Vec<usize>,
    /// `phases[j]` is that entry, i.e. the diagonal of `Λ`.
    pub phases: Vec<Complex64>,
}

pub fn monomial_check(u: &DenseMatrix) -> MonomialCheck {
    let dim = u.dim();
    let not_monomial = MonomialCheck {
        is_monomial: false,
        permutation: Vec::new(),
        phases: Vec::new(),
    };
    let mut permutation = Vec::with_capacity(dim);
    let mut phases = Vec::with_capacity(dim);
    let mut row_used = vec![false; dim];
    for j in 0..dim {
        let Some(i) = single_support(&u.column(j)) else {
            return not_monomial;
        };
        if row_used[i] {
            return not_monomial;
        }
        row_used[i] = true;
        permutation.push(i);
        phases.push(u[(i, j)]);
    }
    MonomialCheck {
        is_monomial: true,
        permutation,
        phases,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::gates::embedded;

    fn gate(name: &str, qubits: &[usize], n: usize) -> DenseMatrix {
        embedded(name, qubits, n).unwrap()
    }

    #[test]
    fn is_pauli_examples() {
        let x = gate("X", &[0], 1);
        let p = is_pauli(&x).unwrap();
        assert_eq!(p, PhasedPauli::x(1, 0));
        assert!(is_pauli(&gate("H", &[0], 1)).is_none());
        let rotated = gate("Z", &[0], 1).scale(Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4));
        assert!(is_pauli(&rotated).is_none());
        let y = gate("Y", &[1], 2);
        let p = is_pauli(&y).unwrap();
        assert!(p.to_dense().unwrap().approx_eq(&y, TOL));
    }

    #[test]
    fn extract_rep_examples() {
        assert_eq!(extract_rep(&DenseMatrix::identity(4)).unwrap(), CliffordRep::identity(2));
        for bits in 0..16u64 {
            let tau = PhasedPauli::tau(BitVector::from_u64(4, bits)).unwrap();
            let rep = extract_rep(&tau.to_dense().unwrap()).unwrap();
            assert_eq!(rep, CliffordRep::from_pauli(&tau));
        }
        assert!(extract_rep(&gate("T", &[0], 1)).is_none());
    }

    #[test]
    fn hierarchy_levels_of_standard_gates() {
        let level = |u: &DenseMatrix| hierarchy_level(u, 4).unwrap();
        assert_eq!(level(&gate("X", &[0], 1)), HierarchyLevel::Level(1));
        assert_eq!(level(&gate("H", &[0], 1)), HierarchyLevel::Level(2));
        assert_eq!(level(&gate("CX", &[0, 1], 2)), HierarchyLevel::Level(2));
        assert_eq!(level(&gate("T", &[0], 1)), HierarchyLevel::Level(3));
        assert_eq!(level(&gate("CCZ", &[0, 1, 2], 3)), HierarchyLevel::Level(3));
        assert_eq!(level(&gate("CS", &[0, 1], 2)), HierarchyLevel::Level(3));
    }

    #[test]
    fn sqrt_t_sits_at_level_four() {
        let sqrt_t = DenseMatrix::diagonal(&[super::super::ONE, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_8)]);
        assert_eq!(hierarchy_level(&sqrt_t, 4).unwrap(), HierarchyLevel::Level(4));
        assert_eq!(hierarchy_level(&sqrt_t, 3).unwrap(), HierarchyLevel::Above(3));
    }

    #[test]
    fn membership_is_monotone() {
        for u in [gate("X", &[0], 1), gate("S", &[0], 1), gate("T", &[0], 1)] {
            let k = hierarchy_level(&u, 4).unwrap().level().unwrap();
            for j in k..=4 {
                assert!(in_level(&u, j));
            }
        }
    }

    #[test]
    fn hierarchy_guards() {
        assert!(hierarchy_level(&DenseMatrix::identity(2), 5).is_err());
        assert!(hierarchy_level(&DenseMatrix::identity(2), 0).is_err());
        assert!(hierarchy_level(&DenseMatrix::identity(256), 2).is_err());
        assert!(hierarchy_level(&DenseMatrix::identity(3), 2).is_err());
    }

    #[test]
    fn monomial_examples() {
        let id = monomial_check(&DenseMatrix::identity(4));
        assert!(id.is_monomial);
        assert_eq!(id.permutation, vec![0, 1, 2, 3]);
        let xz: PhasedPauli = "τ[01|10]".parse().unwrap();
        assert!(monomial_check(&xz.to_dense().unwrap()).is_monomial);
        assert!(!monomial_check(&gate("H", &[0], 1)).is_monomial);
    }
}
