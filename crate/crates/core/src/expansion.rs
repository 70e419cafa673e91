//! Expansion of a Clifford operator in the Hermitian Pauli basis
//! `B_a = i^{a^T J a} τ_a`.
//!
//! Writing `Q = Σ_a r_a B_a`, the relation `Q τ_b = (Q τ_b Q†) Q` ties
//! `r_a` to `r_{a + b + Cb}`. All nonzero coefficients share one modulus and
//! differ by powers of `i`, and the support is the coset
//! `P(h + α) + Im(I + C)`, where `α` linearizes the sign form on
//! `Ker(I + C)`.

use std::collections::{BTreeMap, VecDeque};

use num_complex::Complex64;
use serde::Serialize;

use crate::clifford::CliffordRep;
use crate::dense::{basis_index, basis_label, DenseMatrix};
use crate::error::{Error, Result};
use crate::gf2::{j_matrix, swap_halves, BitMatrix, BitVector};
use crate::pauli::{Phase, PhasedPauli, MAX_DENSE_QUBITS};

/// Largest `n` accepted by [`rep_to_dense`].
pub const MAX_REP_TO_DENSE_QUBITS: usize = 7;
/// Largest support dimension `2n - s` that [`expand`] will tabulate.
pub const MAX_SUPPORT_DIM: usize = 24;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionResult {
    pub n: usize,
    /// Gauge choice for the linearization of the sign form.
    #[serde(serialize_with = "ser_bits")]
    pub alpha: BitVector,
    /// Anchor `P(h + α)` of the support coset.
    #[serde(serialize_with = "ser_bits")]
    pub a0: BitVector,
    #[serde(serialize_with = "ser_bit_list")]
    pub image_basis: Vec<BitVector>,
    /// `dim Ker(I + C)`.
    pub s: usize,
    /// Common modulus `2^{-(2n-s)/2}` of every nonzero coefficient.
    pub magnitude: f64,
    /// Support vectors (ascending as integers) with their phase relative to
    /// the anchor, whose coefficient is real positive.
    #[serde(serialize_with = "ser_coeffs")]
    pub coeffs: Vec<(BitVector, Phase)>,
}

fn ser_bits<S: serde::Serializer>(v: &BitVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_bit_list<S: serde::Serializer>(vs: &[BitVector], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<String> = vs.iter().map(ToString::to_string).collect();
    serde::Serialize::serialize(&strs, s)
}

#[derive(Serialize)]
struct CoeffEntry {
    a: String,
    re: f64,
    im: f64,
}

fn ser_coeffs<S: serde::Serializer>(cs: &[(BitVector, Phase)], s: S) -> std::result::Result<S::Ok, S::Error> {
    // the magnitude is reported separately; entries carry unit phases
    let entries: Vec<CoeffEntry> = cs
        .iter()
        .map(|(a, p)| {
            let z = p.to_complex();
            CoeffEntry {
                a: a.to_string(),
                re: z.re,
                im: z.im,
            }
        })
        .collect();
    serde::Serialize::serialize(&entries, s)
}

impl ExpansionResult {
    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    /// `r_a`, zero off the support.
    pub fn coefficient(&self, a: &BitVector) -> Complex64 {
        self.coeffs
            .binary_search_by_key(&a.to_u64(), |(b, _)| b.to_u64())
            .map_or(Complex64::new(0.0, 0.0), |i| self.coeffs[i].1.to_complex() * self.magnitude)
    }

    /// Whether `a` lies in `a0 + span(image_basis)`.
    pub fn in_support_coset(&self, a: &BitVector) -> bool {
        let diff = a + &self.a0;
        if self.image_basis.is_empty() {
            return diff.is_zero();
        }
        let m = BitMatrix::from_columns(2 * self.n, &self.image_basis).expect("consistent lengths");
        m.solve(&diff).expect("consistent lengths").is_some()
    }
}

/// `a^T J a = v · w` as a bit.
fn a_j_a(a: &BitVector) -> bool {
    let n = a.len() / 2;
    a.slice(0, n).dot(&a.slice(n, n))
}

/// `b^T lows(C^T J C + d d^T) b`.
fn sign_quadratic(rep: &CliffordRep, b: &BitVector) -> bool {
    rep.sign_form().bilinear(b, b)
}

/// A vector `α` with `α^T b = b^T lows(C^T J C + d d^T) b` on `Ker(I + C)`,
/// the lexicographically least one.
///
/// The quadratic form restricted to the kernel is checked to be linear (its
/// polarization vanishes on every pair of basis vectors) before solving.
pub fn alpha_vector(rep: &CliffordRep) -> Result<BitVector> {
    let n = rep.n();
    let kernel = (&BitMatrix::identity(2 * n) + rep.c()).kernel_basis();
    let form = rep.sign_form();
    let d = rep.d_vector();
    for (i, b) in kernel.iter().enumerate() {
        if d.dot(b) {
            return Err(Error::Invariant(format!("d^T b = 1 for kernel vector {b}")));
        }
        for b2 in &kernel[i + 1..] {
            if form.bilinear(b, b2) ^ form.bilinear(b2, b) {
                return Err(Error::Invariant(format!(
                    "sign form is not linear on Ker(I + C): {b}, {b2}"
                )));
            }
        }
    }
    if kernel.is_empty() {
        return Ok(BitVector::zeros(2 * n));
    }
    let rhs = BitVector::from_bools(&kernel.iter().map(|b| sign_quadratic(rep, b)).collect::<Vec<_>>());
    let system = BitMatrix::from_rows(kernel)?;
    system
        .solve(&rhs)?
        .ok_or_else(|| Error::Invariant("no linearizing vector exists".into()))
}

/// Phase of `r_{a'} / r_a` for `a' = a + b + Cb`.
fn step_phase(rep: &CliffordRep, a: &BitVector, b: &BitVector, a_next: &BitVector, j: &BitMatrix) -> Result<Phase> {
    let image = rep.conjugate(&PhasedPauli::tau(b.clone())?)?;
    let cb = image.a();
    let lhs = Phase::from_bits(a_j_a(a), j.bilinear(b, a));
    let rhs = image.phase() * Phase::from_bits(a_j_a(a_next), j.bilinear(a_next, cb));
    Ok(lhs * rhs.conj())
}

pub fn expand(rep: &CliffordRep) -> Result<ExpansionResult> {
    let n = rep.n();
    let dim = 2 * n;
    let nil = &BitMatrix::identity(dim) + rep.c();
    let kernel = nil.kernel_basis();
    let s = kernel.len();
    if dim - s > MAX_SUPPORT_DIM {
        return Err(Error::TooLarge {
            what: "Pauli expansion support dimension",
            n: dim - s,
            max: MAX_SUPPORT_DIM,
        });
    }
    let alpha = alpha_vector(rep)?;
    let a0 = swap_halves(&(rep.h() + &alpha));
    let generators: Vec<BitVector> = nil.pivot_columns().into_iter().map(|k| BitVector::unit(dim, k)).collect();
    let image_basis: Vec<BitVector> = generators.iter().map(|b| nil.apply(b)).collect();
    let j = j_matrix(n);

    let mut phases: BTreeMap<u64, (BitVector, Phase)> = BTreeMap::new();
    phases.insert(a0.to_u64(), (a0.clone(), Phase::ONE));
    let mut queue = VecDeque::from([a0.clone()]);
    while let Some(a) = queue.pop_front() {
        let pa = phases[&a.to_u64()].1;
        for b in &generators {
            let a_next = &a + &nil.apply(b);
            let p_next = pa * step_phase(rep, &a, b, &a_next, &j)?;
            if let Some((_, known)) = phases.get(&a_next.to_u64()) {
                if *known != p_next {
                    return Err(Error::Invariant(format!("coefficient recurrence is path-dependent at {a_next}")));
                }
            } else {
                phases.insert(a_next.to_u64(), (a_next.clone(), p_next));
                queue.push_back(a_next);
            }
        }
    }
    if phases.len() != 1usize << (dim - s) {
        return Err(Error::Invariant("support has the wrong size".into()));
    }

    // every remaining edge, kernel directions included, must agree
    for (a, pa) in phases.values() {
        for k in 0..dim {
            let b = BitVector::unit(dim, k);
            let a_next = a + &nil.apply(&b);
            let expected = *pa * step_phase(rep, a, &b, &a_next, &j)?;
            match phases.get(&a_next.to_u64()) {
                Some((_, p)) if *p == expected => {}
                _ => return Err(Error::Invariant(format!("inconsistent edge {a} -> {a_next}"))),
            }
        }
        for b in &kernel {
            if (&swap_halves(a) + &(rep.h() + &alpha)).dot(b) {
                return Err(Error::Invariant(format!("{a} violates a support constraint")));
            }
        }
    }

    Ok(ExpansionResult {
        n,
        alpha,
        a0,
        image_basis,
        s,
        magnitude: 2f64.powf(-((dim - s) as f64) / 2.0),
        coeffs: phases.into_values().collect(),
    })
}

/// Adds `z · B_a` into `m`.
fn add_basis_element(m: &mut DenseMatrix, a: &BitVector, z: Complex64) -> Result<()> {
    let n = a.len() / 2;
    let element = PhasedPauli::hermitian(a.clone())?;
    for col in 0..1usize << n {
        let (ph, y) = element.apply_basis(&basis_label(n, col))?;
        m[(basis_index(&y), col)] += ph.to_complex() * z;
    }
    Ok(())
}

/// The expansion evaluated as a matrix. Independent of any gate
/// decomposition; the result is fixed up to the anchor gauge.
pub fn rep_to_dense(rep: &CliffordRep) -> Result<DenseMatrix> {
    let n = rep.n();
    if n > MAX_REP_TO_DENSE_QUBITS {
        return Err(Error::TooLarge {
            what: "rep_to_dense",
            n,
            max: MAX_REP_TO_DENSE_QUBITS,
        });
    }
    let exp = expand(rep)?;
    let mut m = DenseMatrix::zeros(1 << n);
    for (a, p) in &exp.coeffs {
        add_basis_element(&mut m, a, p.to_complex() * exp.magnitude)?;
    }
    Ok(m)
}

/// `tr(B_a† U) / 2^n` for every `a`, keeping entries above `tol`.
pub fn pauli_projection(u: &DenseMatrix, tol: f64) -> Result<Vec<(BitVector, Complex64)>> {
    let n = u.qubits()?;
    if n > MAX_DENSE_QUBITS / 2 {
        return Err(Error::TooLarge {
            what: "Pauli projection",
            n,
            max: MAX_DENSE_QUBITS / 2,
        });
    }
    let scale = 1.0 / (1usize << n) as f64;
    let mut out = Vec::new();
    for bits in 0..1u64 << (2 * n) {
        let a = BitVector::from_u64(2 * n, bits);
        let element = PhasedPauli::hermitian(a.clone())?;
        let mut tr = Complex64::new(0.0, 0.0);
        // B_a is Hermitian: tr(B_a U) = Σ_x <x|B_a|y> <y|U|x> with B_a|x> = φ|y>
        for col in 0..1usize << n {
            let (ph, y) = element.apply_basis(&basis_label(n, col))?;
            tr += ph.to_complex().conj() * u[(basis_index(&y), col)];
        }
        let r = tr * scale;
        if r.norm() > tol {
            out.push((a, r));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::standard_gate;
    use crate::dense::{extract_rep, gates::embedded, TOL};
    use crate::gf2::{enumerate_lagrangians, symplectic_complete};
    use crate::random::random_clifford_circuit;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn identity_expands_to_a_point() {
        let exp = expand(&CliffordRep::identity(2)).unwrap();
        assert_eq!(exp.support_size(), 1);
        assert!(exp.a0.is_zero());
        assert!((exp.coefficient(&exp.a0) - 1.0).norm() < TOL);
    }

    #[test]
    fn sigma_z_expands_to_itself() {
        let rep = standard_gate("Z", &[0], 1).unwrap();
        assert_eq!(rep.h().to_string(), "01");
        let exp = expand(&rep).unwrap();
        assert_eq!(exp.s, 2);
        assert_eq!(exp.a0.to_string(), "10");
        assert_eq!(exp.support_size(), 1);
        assert!((exp.magnitude - 1.0).abs() < TOL);
    }

    #[test]
    fn hadamard_has_two_terms() {
        let exp = expand(&standard_gate("H", &[0], 1).unwrap()).unwrap();
        assert_eq!(exp.s, 1);
        assert_eq!(exp.support_size(), 2);
        assert!((exp.magnitude - std::f64::consts::FRAC_1_SQRT_2).abs() < TOL);
        let h = rep_to_dense(&standard_gate("H", &[0], 1).unwrap()).unwrap();
        assert!(h.approx_eq_up_to_phase(&embedded("H", &[0], 1).unwrap(), TOL));
    }

    #[test]
    fn alpha_on_trivial_kernel_is_zero() {
        // order-three element of Sp(2, 2): I + C is invertible
        let c = BitMatrix::from_strs(&["01", "11"]).unwrap();
        let rep = CliffordRep::new(c, BitVector::from_u64(2, 1)).unwrap();
        assert!(alpha_vector(&rep).unwrap().is_zero());
        let exp = expand(&rep).unwrap();
        assert_eq!(exp.s, 0);
        assert_eq!(exp.support_size(), 4);
        assert!(rep_to_dense(&rep).unwrap().is_unitary(TOL));
    }

    #[test]
    fn alpha_linearizes_on_the_whole_kernel() {
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..30 {
            let (rep, _) = random_clifford_circuit(&mut rng, 2, 12);
            let alpha = alpha_vector(&rep).unwrap();
            let nil = &BitMatrix::identity(4) + rep.c();
            for bits in 0..16 {
                let b = BitVector::from_u64(4, bits);
                if nil.apply(&b).is_zero() {
                    assert_eq!(alpha.dot(&b), rep.sign_form().bilinear(&b, &b));
                    assert!(!rep.d_vector().dot(&b));
                }
            }
        }
    }

    #[test]
    fn s_gate_round_trips() {
        let rep = standard_gate("S", &[0], 1).unwrap();
        let u = rep_to_dense(&rep).unwrap();
        assert!(u.approx_eq_up_to_phase(&embedded("S", &[0], 1).unwrap(), TOL));
    }

    #[test]
    fn matches_literal_projection_of_random_circuits() {
        let mut rng = StdRng::seed_from_u64(21);
        for n in 1..=3 {
            for _ in 0..15 {
                let (rep, u) = random_clifford_circuit(&mut rng, n, 6 * n + 4);
                let exp = expand(&rep).unwrap();
                let proj = pauli_projection(&u, 1e-7).unwrap();
                assert_eq!(proj.len(), exp.support_size());
                let global = proj[0].1 / exp.coefficient(&proj[0].0);
                for (a, r) in &proj {
                    assert!(exp.in_support_coset(a));
                    assert!((r.norm() - exp.magnitude).abs() < 1e-9);
                    assert!((exp.coefficient(a) * global - r).norm() < 1e-9);
                }
                let dense = rep_to_dense(&rep).unwrap();
                assert!(dense.is_unitary(1e-9));
                assert!(dense.approx_eq_up_to_phase(&u, 1e-9));
                assert_eq!(extract_rep(&dense).unwrap(), rep);
            }
        }
    }

    #[test]
    fn lagrangian_completions_realize() {
        for n in 1..=2 {
            for l in enumerate_lagrangians(n).unwrap() {
                let rep = CliffordRep::from_symplectic(symplectic_complete(&l).unwrap()).unwrap();
                let u = rep_to_dense(&rep).unwrap();
                assert!(u.is_unitary(1e-9));
                assert_eq!(extract_rep(&u).unwrap(), rep);
            }
        }
    }

    #[test]
    fn rep_to_dense_guard() {
        assert!(rep_to_dense(&CliffordRep::identity(8)).is_err());
    }
}
