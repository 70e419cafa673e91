//! Semi-Clifford and generalized semi-Clifford tests by exhaustive search
//! over Lagrangian subspaces.
//!
//! `U` is semi-Clifford when it conjugates the Pauli group of some
//! Lagrangian `L` onto the group of another. It is generalized
//! semi-Clifford when it maps the linear span of one such group onto the
//! span of another. Writing `Q_L` for a Clifford taking the z-group onto the
//! group of `L`, the span of the z-group is the diagonal algebra, so the
//! second condition holds exactly when `Q_{L'}† U Q_L` normalizes the
//! diagonal algebra, i.e. is a monomial matrix.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::CliffordRep;
use crate::dense::{conjugate_by_pauli, hierarchy_level, is_pauli, monomial_check, DenseMatrix, HierarchyLevel};
use crate::error::{Error, Result};
use crate::expansion::rep_to_dense;
use crate::gf2::{enumerate_lagrangians, symplectic_complete, BitVector, Lagrangian, MAX_ENUMERATION_QUBITS};

fn basis_strings(l: &Lagrangian) -> Vec<String> {
    l.basis().iter().map(ToString::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiCliffordWitness {
    /// Basis of `L`.
    pub source: Vec<String>,
    /// Basis of the image Lagrangian.
    pub image: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemiCliffordVerdict {
    pub holds: bool,
    pub witness: Option<SemiCliffordWitness>,
    /// Lagrangians examined; equals the full count when `holds` is false.
    pub candidates_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralizedWitness {
    pub source: Vec<String>,
    pub target: Vec<String>,
    /// `Q_target† U Q_source = Π Λ`: row of the nonzero entry in each column.
    pub permutation: Vec<usize>,
    /// Diagonal of `Λ`, as `(re, im)`.
    pub phases: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralizedVerdict {
    pub holds: bool,
    pub witness: Option<GeneralizedWitness>,
    /// Number of Lagrangian pairs in the search space.
    pub pairs_in_search_space: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub hierarchy_level: HierarchyLevel,
    /// `None` above the enumeration limit.
    pub semi_clifford: Option<SemiCliffordVerdict>,
    pub generalized_semi_clifford: Option<GeneralizedVerdict>,
}

fn check_size(u: &DenseMatrix) -> Result<usize> {
    let n = u.qubits()?;
    if n > MAX_ENUMERATION_QUBITS {
        return Err(Error::TooLarge {
            what: "Lagrangian search",
            n,
            max: MAX_ENUMERATION_QUBITS,
        });
    }
    Ok(n)
}

/// Image Lagrangian of `l` under `u`, when every basis element of its
/// group is sent to a Pauli operator.
fn image_lagrangian(u: &DenseMatrix, l: &Lagrangian) -> Option<Lagrangian> {
    let images: Option<Vec<BitVector>> = l
        .basis()
        .iter()
        .map(|b| is_pauli(&conjugate_by_pauli(u, b)).map(|p| p.a().clone()))
        .collect();
    Lagrangian::new(l.n(), &images?).ok()
}

pub fn is_semi_clifford(u: &DenseMatrix) -> Result<SemiCliffordVerdict> {
    let n = check_size(u)?;
    let lagrangians = enumerate_lagrangians(n)?;
    for (i, l) in lagrangians.iter().enumerate() {
        if let Some(image) = image_lagrangian(u, l) {
            // every group element, not just the basis, must land in the image
            for a in l.elements() {
                let ok = is_pauli(&conjugate_by_pauli(u, &a)).is_some_and(|p| image.contains(p.a()));
                if !ok {
                    return Err(Error::Invariant(format!("semi-Clifford witness fails on {a}")));
                }
            }
            return Ok(SemiCliffordVerdict {
                holds: true,
                witness: Some(SemiCliffordWitness {
                    source: basis_strings(l),
                    image: basis_strings(&image),
                }),
                candidates_checked: i + 1,
            });
        }
    }
    Ok(SemiCliffordVerdict {
        holds: false,
        witness: None,
        candidates_checked: lagrangians.len(),
    })
}

/// A dense Clifford taking the z-group onto the group of `l`.
pub fn lagrangian_clifford(l: &Lagrangian) -> Result<DenseMatrix> {
    rep_to_dense(&CliffordRep::from_symplectic(symplectic_complete(l)?)?)
}

pub fn is_generalized_semi_clifford(u: &DenseMatrix) -> Result<GeneralizedVerdict> {
    let n = check_size(u)?;
    let lagrangians = enumerate_lagrangians(n)?;
    let cliffords = lagrangians
        .iter()
        .map(lagrangian_clifford)
        .collect::<Result<Vec<_>>>()?;
    let adjoints: Vec<DenseMatrix> = cliffords.iter().map(DenseMatrix::adjoint).collect();
    let count = lagrangians.len();
    // pair index = source * count + target, so source-major RREF order
    let found = (0..count * count).into_par_iter().find_first(|&idx| {
        let (s, t) = (idx / count, idx % count);
        monomial_check(&adjoints[t].matmul(u).matmul(&cliffords[s])).is_monomial
    });
    let witness = match found {
        Some(idx) => {
            let (s, t) = (idx / count, idx % count);
            let v = adjoints[t].matmul(u).matmul(&cliffords[s]);
            let check = monomial_check(&v);
            if !check.is_monomial {
                return Err(Error::Invariant("monomial witness did not re-verify".into()));
            }
            Some(GeneralizedWitness {
                source: basis_strings(&lagrangians[s]),
                target: basis_strings(&lagrangians[t]),
                permutation: check.permutation,
                phases: check.phases.iter().map(|z| (z.re, z.im)).collect(),
            })
        }
        None => None,
    };
    Ok(GeneralizedVerdict {
        holds: witness.is_some(),
        witness,
        pairs_in_search_space: count * count,
    })
}

/// Hierarchy level (up to `kmax`) plus both span tests when `n` is small
/// enough to enumerate.
pub fn classify(u: &DenseMatrix, kmax: usize) -> Result<ClassificationReport> {
    let n = u.qubits()?;
    let level = hierarchy_level(u, kmax)?;
    let (semi, general) = if n <= MAX_ENUMERATION_QUBITS {
        (Some(is_semi_clifford(u)?), Some(is_generalized_semi_clifford(u)?))
    } else {
        (None, None)
    };
    if let (Some(s), Some(g)) = (&semi, &general) {
        if s.holds && !g.holds {
            return Err(Error::Invariant("semi-Clifford gate failed the generalized test".into()));
        }
    }
    Ok(ClassificationReport {
        n,
        hierarchy_level: level,
        semi_clifford: semi,
        generalized_semi_clifford: general,
    })
}

/// Whether `u · span(G_source) · u† ⊆ span(G_target)`, tested directly on
/// Pauli coefficients: every conjugated basis element of `source` must have
/// no weight outside `target`.
pub fn maps_span_into(u: &DenseMatrix, source: &Lagrangian, target: &Lagrangian, tol: f64) -> Result<bool> {
    for a in source.elements() {
        let image = conjugate_by_pauli(u, &a);
        for (c, r) in crate::expansion::pauli_projection(&image, tol)? {
            if r.norm() > tol && !target.contains(&c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Convenience for building witness phases back into complex numbers.
pub fn witness_phases(w: &GeneralizedWitness) -> Vec<Complex64> {
    w.phases.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{gates::embedded, TOL};
    use crate::random::{random_c3_gate, random_clifford_circuit};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn gate(name: &str, qubits: &[usize], n: usize) -> DenseMatrix {
        embedded(name, qubits, n).unwrap()
    }

    fn z_basis(n: usize) -> Vec<String> {
        basis_strings(&Lagrangian::z(n))
    }

    #[test]
    fn cliffords_and_diagonals_are_semi_clifford() {
        let mut rng = StdRng::seed_from_u64(4);
        let (_, k) = random_clifford_circuit(&mut rng, 2, 10);
        assert!(is_semi_clifford(&k).unwrap().holds);
        let t = is_semi_clifford(&gate("T", &[0], 1)).unwrap();
        assert_eq!(t.witness.unwrap().source, z_basis(1));
        let ccz = is_semi_clifford(&gate("CCZ", &[0, 1, 2], 3)).unwrap();
        assert!(ccz.holds);
        assert_eq!(ccz.witness.unwrap().image, z_basis(3));
    }

    #[test]
    fn diagonals_are_generalized_with_the_z_pair() {
        let d = DenseMatrix::diagonal(&[
            Complex64::from_polar(1.0, 0.3),
            Complex64::from_polar(1.0, 1.1),
            Complex64::from_polar(1.0, -0.7),
            Complex64::from_polar(1.0, 2.9),
        ]);
        let v = is_generalized_semi_clifford(&d).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w.source, z_basis(2));
        assert_eq!(w.target, z_basis(2));
        assert_eq!(v.pairs_in_search_space, 225);
    }

    #[test]
    fn report_examples() {
        let h = classify(&gate("H", &[0], 1), 4).unwrap();
        assert_eq!(h.hierarchy_level, HierarchyLevel::Level(2));
        assert!(h.semi_clifford.unwrap().holds);
        let t = classify(&gate("T", &[0], 1), 4).unwrap();
        assert_eq!(t.hierarchy_level, HierarchyLevel::Level(3));
        let swap = classify(&gate("SWAP", &[0, 1], 2), 4).unwrap();
        assert_eq!(swap.hierarchy_level, HierarchyLevel::Level(2));
        assert!(swap.semi_clifford.unwrap().holds);
        assert!(swap.generalized_semi_clifford.unwrap().holds);
    }

    #[test]
    fn third_level_gates_on_few_qubits_are_semi_clifford() {
        let mut rng = StdRng::seed_from_u64(12);
        for n in 1..=2 {
            for _ in 0..10 {
                let u = random_c3_gate(&mut rng, n);
                assert!(is_semi_clifford(&u).unwrap().holds);
                assert!(is_generalized_semi_clifford(&u).unwrap().holds);
            }
        }
    }

    #[test]
    fn generic_rotation_is_neither() {
        let u = gate("H", &[0], 1).matmul(&gate("T", &[0], 1)).matmul(&gate("H", &[0], 1)).matmul(&gate("T", &[0], 1));
        assert!(!is_semi_clifford(&u).unwrap().holds);
        let g = is_generalized_semi_clifford(&u).unwrap();
        assert!(!g.holds);
        assert_eq!(g.pairs_in_search_space, 9);
    }

    #[test]
    fn monomial_criterion_agrees_with_span_inclusion_on_one_qubit() {
        let lags = enumerate_lagrangians(1).unwrap();
        let gates = [
            gate("T", &[0], 1),
            gate("H", &[0], 1),
            gate("S", &[0], 1).matmul(&gate("H", &[0], 1)),
            gate("H", &[0], 1).matmul(&gate("T", &[0], 1)).matmul(&gate("H", &[0], 1)).matmul(&gate("T", &[0], 1)),
        ];
        for u in &gates {
            for (s, ls) in lags.iter().enumerate() {
                for (t, lt) in lags.iter().enumerate() {
                    let qs = lagrangian_clifford(ls).unwrap();
                    let qt = lagrangian_clifford(lt).unwrap();
                    let monomial = monomial_check(&qt.adjoint().matmul(u).matmul(&qs)).is_monomial;
                    assert_eq!(monomial, maps_span_into(u, ls, lt, 1e-9).unwrap(), "pair {s} {t}");
                }
            }
        }
    }

    #[test]
    fn lagrangian_cliffords_hit_their_lagrangian() {
        for l in enumerate_lagrangians(2).unwrap() {
            let q = lagrangian_clifford(&l).unwrap();
            assert!(maps_span_into(&q, &Lagrangian::z(2), &l, TOL).unwrap());
        }
    }

    #[test]
    fn size_guard() {
        assert!(is_semi_clifford(&DenseMatrix::identity(16)).is_err());
        let r = classify(&DenseMatrix::identity(16), 2).unwrap();
        assert!(r.semi_clifford.is_none());
    }
}
