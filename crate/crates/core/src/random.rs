//! Seeded random circuits for tests and self-checks.

use rand::seq::SliceRandom;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::clifford::{standard_gate, CliffordRep};
use crate::dense::{gates::embedded, DenseMatrix, TOL};
use crate::gf2::BitVector;
use crate::pauli::PhasedPauli;

/// One gate of a random circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateApp {
    pub name: &'static str,
    pub qubits: Vec<usize>,
}

fn random_qubits(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    all
}

/// Random gates drawn from `names` (those needing more than `n` qubits are
/// skipped).
pub fn random_gates(rng: &mut impl Rng, n: usize, depth: usize, names: &[&'static str]) -> Vec<GateApp> {
    let usable: Vec<&'static str> = names
        .iter()
        .copied()
        .filter(|g| crate::dense::gates::arity(g).is_some_and(|k| k <= n))
        .collect();
    assert!(!usable.is_empty(), "no gate fits on {n} qubits");
    (0..depth)
        .map(|_| {
            let name = *usable.choose(rng).expect("nonempty");
            let k = crate::dense::gates::arity(name).expect("known gate");
            GateApp {
                name,
                qubits: random_qubits(rng, n, k),
            }
        })
        .collect()
}

/// Dense product of gates applied first to last.
pub fn gates_to_dense(n: usize, gates: &[GateApp]) -> DenseMatrix {
    gates.iter().fold(DenseMatrix::identity(1 << n), |acc, g| {
        embedded(g.name, &g.qubits, n).expect("valid gate").matmul(&acc)
    })
}

/// A random Clifford circuit over `{H, S, CX, X, Z}` and its rep and dense
/// matrix. The rep is built symbolically, gate by gate.
pub fn random_clifford_circuit(rng: &mut impl Rng, n: usize, depth: usize) -> (CliffordRep, DenseMatrix) {
    let gates = random_gates(rng, n, depth, &["H", "S", "CX", "X", "Z"]);
    let rep = gates.iter().fold(CliffordRep::identity(n), |acc, g| {
        let step = standard_gate(g.name, &g.qubits, n).expect("valid gate");
        CliffordRep::compose(&step, &acc).expect("same size")
    });
    (rep, gates_to_dense(n, &gates))
}

/// A random diagonal gate of the third hierarchy level: a product of `T`,
/// `CS` and `CCZ` gates and their powers.
pub fn random_c3_diagonal(rng: &mut impl Rng, n: usize, depth: usize) -> DenseMatrix {
    let gates = random_gates(rng, n, depth.max(1), &["T", "TDG", "CS", "CCZ", "S", "CZ"]);
    gates_to_dense(n, &gates)
}

/// A random element of the third level, `K_1 D K_2` with Cliffords `K_i`
/// and a random third-level diagonal `D`.
pub fn random_c3_gate(rng: &mut impl Rng, n: usize) -> DenseMatrix {
    let depth = 4 * n + 4;
    let (_, k1) = random_clifford_circuit(rng, n, depth);
    let d = random_c3_diagonal(rng, n, 2 * n + 1);
    let (_, k2) = random_clifford_circuit(rng, n, depth);
    k1.matmul(&d).matmul(&k2)
}

/// Summary of [`self_check`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SelfCheckReport {
    pub seed: u64,
    pub circuits: usize,
    pub generator_checks: usize,
    pub passed: bool,
}

/// Random Clifford circuits at `n = 1..=3`, checking the symbolic
/// conjugation, composition and inverse against dense matrices.
pub fn self_check(seed: u64, per_n: usize) -> SelfCheckReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checks = 0;
    let mut passed = true;
    for n in 1..=3 {
        for _ in 0..per_n {
            let (r1, u1) = random_clifford_circuit(&mut rng, n, 12);
            let (r2, u2) = random_clifford_circuit(&mut rng, n, 12);
            let Ok(prod) = CliffordRep::compose(&r1, &r2) else {
                return SelfCheckReport { seed, circuits: 0, generator_checks: checks, passed: false };
            };
            let cases = [(prod, u1.matmul(&u2)), (r1.inverse(), u1.adjoint())];
            for (rep, u) in &cases {
                for j in 0..2 * n {
                    checks += 1;
                    let p = PhasedPauli::hermitian(BitVector::unit(2 * n, j)).expect("valid label");
                    let ok = match (rep.conjugate(&p).and_then(|q| q.to_dense()), p.to_dense()) {
                        (Ok(q), Ok(pd)) => u.matmul(&pd).matmul(&u.adjoint()).approx_eq(&q, TOL),
                        _ => false,
                    };
                    passed &= ok;
                }
            }
        }
    }
    SelfCheckReport { seed, circuits: 6 * per_n, generator_checks: checks, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::extract_rep;

    #[test]
    fn circuits_are_reproducible() {
        let a = random_clifford_circuit(&mut StdRng::seed_from_u64(5), 3, 20);
        let b = random_clifford_circuit(&mut StdRng::seed_from_u64(5), 3, 20);
        assert_eq!(a.0, b.0);
        assert!(a.1.approx_eq(&b.1, TOL));
    }

    #[test]
    fn symbolic_rep_matches_dense_extraction() {
        let mut rng = StdRng::seed_from_u64(11);
        for n in 1..=3 {
            for _ in 0..10 {
                let (rep, u) = random_clifford_circuit(&mut rng, n, 15);
                assert_eq!(extract_rep(&u).unwrap(), rep);
            }
        }
    }

    #[test]
    fn c3_gates_are_unitary() {
        let mut rng = StdRng::seed_from_u64(3);
        let u = random_c3_gate(&mut rng, 3);
        assert!(u.is_unitary(1e-9));
        assert!(random_c3_diagonal(&mut rng, 2, 5).is_diagonal(TOL));
    }

    #[test]
    fn self_check_passes() {
        let report = self_check(11, 3);
        assert!(report.passed);
        assert_eq!(report.generator_checks, 3 * 2 * (2 + 4 + 6));
    }
}
