//! From a third-level gate to a generalized semi-Clifford certificate.
//!
//! For `U ∈ C_3` the conjugated generators `Q_i = U τ_{e_i} U†` are Clifford
//! involutions that commute up to sign. After a common symplectic change of
//! basis every `C_i` is block upper-triangular, and the map `T` sending
//! `x ∈ Z_2^{2n}` to the f-vector of `Q_1^{x_1} … Q_{2n}^{x_{2n}}` has an
//! `n`-dimensional kernel. The products indexed by that kernel are diagonal,
//! so `U` carries the span of the Pauli group of `Ker T` onto the span of a
//! Clifford-rotated z-group.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::CliffordRep;
use crate::dense::{
    commutator_sign, conjugate_by_pauli, extract_rep, gates::embedded, in_level, level_violation,
    realize_block, BlockRep, DenseMatrix, Sign, MAX_HIERARCHY_QUBITS, TOL,
};
use crate::error::{Error, Result};
use crate::expansion::rep_to_dense;
use crate::gf2::{BitMatrix, BitVector, Lagrangian};
use crate::normal_form::{commuting_set_normal_form, is_block_upper};

/// Largest `n` for which the T map is enumerated.
pub const MAX_PIPELINE_QUBITS: usize = MAX_HIERARCHY_QUBITS;

/// The `2n` conjugated generators of a gate.
#[derive(Clone, Debug)]
pub struct GeneratorFamily {
    pub n: usize,
    pub qs: Vec<CliffordRep>,
    pub dense_qs: Option<Vec<DenseMatrix>>,
}

impl GeneratorFamily {
    /// Builds and validates a family.
    pub fn new(qs: Vec<CliffordRep>, dense_qs: Option<Vec<DenseMatrix>>) -> Result<Self> {
        let n = qs.len() / 2;
        if qs.len() != 2 * n || n == 0 {
            return Err(Error::Precondition(format!("need an even, nonzero number of generators, got {}", qs.len())));
        }
        if let Some(q) = qs.iter().find(|q| q.n() != n) {
            return Err(Error::QubitMismatch(n, q.n()));
        }
        let family = Self { n, qs, dense_qs };
        family.verify()?;
        Ok(family)
    }

    /// Involutions, pairwise commuting `C`s, compatible `h`s, and the dense
    /// commutation pattern when materialized.
    pub fn verify(&self) -> Result<()> {
        for (i, q) in self.qs.iter().enumerate() {
            if !q.is_involution() {
                return Err(Error::NotInvolution(format!("generator {i}")));
            }
        }
        let m = self.qs.len();
        for i in 0..m {
            for j in i + 1..m {
                if !self.qs[i].commutes_up_to_sign(&self.qs[j]) {
                    return Err(Error::NotCommuting(i, j));
                }
            }
        }
        if let Some(dense) = &self.dense_qs {
            if dense.len() != m {
                return Err(Error::Precondition("dense family has the wrong length".into()));
            }
            let id = DenseMatrix::identity(1 << self.n);
            if let Some(i) = (0..m).into_par_iter().find_first(|&i| !dense[i].matmul(&dense[i]).approx_eq(&id, 1e-8)) {
                return Err(Error::NotInvolution(format!("dense generator {i}")));
            }
            let n = self.n;
            let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
            let bad = pairs.par_iter().find_first(|&&(i, j)| {
                let sign = if j == i + n { -1.0 } else { 1.0 };
                let ab = dense[i].matmul(&dense[j]);
                let ba = dense[j].matmul(&dense[i]).scale(Complex64::new(sign, 0.0));
                !ab.approx_eq(&ba, 1e-8)
            });
            if let Some(&(i, j)) = bad {
                return Err(Error::NotCommuting(i, j));
            }
        }
        Ok(())
    }

    pub fn c_matrices(&self) -> Vec<BitMatrix> {
        self.qs.iter().map(|q| q.c().clone()).collect()
    }

    pub fn is_block_form(&self) -> bool {
        self.qs.iter().all(|q| is_block_upper(q.c()))
    }
}

/// `Q_i = U τ_{e_i} U†` for every generator, as reps and dense matrices.
pub fn generators_from_gate(u: &DenseMatrix) -> Result<GeneratorFamily> {
    let n = u.qubits()?;
    if n > MAX_PIPELINE_QUBITS {
        return Err(Error::TooLarge {
            what: "generator family",
            n,
            max: MAX_PIPELINE_QUBITS,
        });
    }
    let dense: Vec<DenseMatrix> = (0..2 * n)
        .into_par_iter()
        .map(|i| conjugate_by_pauli(u, &BitVector::unit(2 * n, i)))
        .collect();
    let reps = dense
        .par_iter()
        .enumerate()
        .map(|(i, q)| {
            extract_rep(q).ok_or_else(|| {
                Error::NotClifford(format!("U τ_e{i} U† is not Clifford, so the gate is not in the third level"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GeneratorFamily::new(reps, Some(dense))
}

/// Rebuilds a unitary from its generator family:
/// `U|x⟩ = Q_{n+1}^{x_1+λ_1} … Q_{2n}^{x_n+λ_n} |α⟩`, with `|α⟩` a common
/// eigenvector of `Q_1 … Q_n` with eigenvalues `(-1)^{λ_i}`.
pub fn reconstruct_unitary(family: &GeneratorFamily) -> Result<DenseMatrix> {
    let dense = family
        .dense_qs
        .as_ref()
        .ok_or_else(|| Error::Precondition("dense generators are required".into()))?;
    let n = family.n;
    let dim = 1usize << n;
    let project = |lambda: usize, k: usize| {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[k] = Complex64::new(1.0, 0.0);
        for (i, q) in dense.iter().take(n).enumerate() {
            let sign = if lambda >> (n - 1 - i) & 1 == 1 { -1.0 } else { 1.0 };
            let qv = q.apply(&v);
            for (a, b) in v.iter_mut().zip(qv) {
                *a = (*a + b * sign) * 0.5;
            }
        }
        v
    };
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut found = None;
    'outer: for lambda in 0..dim {
        for k in 0..dim {
            let v = project(lambda, k);
            if norm(&v) > 1e-6 {
                found = Some((lambda, v));
                break 'outer;
            }
        }
    }
    let (lambda, mut alpha) = found.ok_or_else(|| Error::Invariant("no common eigenvector".into()))?;
    let len = norm(&alpha);
    let first = *alpha.iter().find(|z| z.norm() > TOL).expect("nonzero vector");
    let gauge = first.conj() / first.norm() / len;
    for z in &mut alpha {
        *z *= gauge;
    }

    let mut u = DenseMatrix::zeros(dim);
    for col in 0..dim {
        let mut v = alpha.clone();
        for i in (0..n).rev() {
            let x_i = col >> (n - 1 - i) & 1;
            let l_i = lambda >> (n - 1 - i) & 1;
            if (x_i ^ l_i) == 1 {
                v = dense[n + i].apply(&v);
            }
        }
        u.set_column(col, &v);
    }
    if !u.is_unitary(1e-8) {
        return Err(Error::Invariant("reconstruction is not unitary".into()));
    }
    for (i, q) in dense.iter().enumerate() {
        if !conjugate_by_pauli(&u, &BitVector::unit(2 * n, i)).approx_eq(q, 1e-8) {
            return Err(Error::Invariant(format!("reconstruction does not reproduce generator {i}")));
        }
    }
    Ok(u)
}

/// Conjugates the family into block upper-triangular form by the shared
/// symplectic `M`, lifted to the Clifford `Q_M = (M, 0)`.
pub fn normalize_family(family: &GeneratorFamily) -> Result<(GeneratorFamily, CliffordRep)> {
    let nf = commuting_set_normal_form(&family.c_matrices())?;
    let q_m = CliffordRep::from_symplectic(nf.m)?;
    let q_m_inv = q_m.inverse();
    let qs = family
        .qs
        .iter()
        .map(|q| CliffordRep::compose(&q_m, &CliffordRep::compose(q, &q_m_inv)?))
        .collect::<Result<Vec<_>>>()?;
    for (q, c) in qs.iter().zip(&nf.normalized) {
        if q.c() != c {
            return Err(Error::Invariant("rep conjugation disagrees with the normal form".into()));
        }
    }
    let dense_qs = match &family.dense_qs {
        Some(dense) if family.n <= crate::expansion::MAX_REP_TO_DENSE_QUBITS => {
            let d_m = rep_to_dense(&q_m)?;
            let d_m_adj = d_m.adjoint();
            let conj: Vec<DenseMatrix> = dense.par_iter().map(|q| d_m.matmul(q).matmul(&d_m_adj)).collect();
            // each conjugated generator is the block-form realization up to phase
            for (i, (q, d)) in qs.iter().zip(&conj).enumerate() {
                let realized = realize_block(&BlockRep::from_rep(q)?)?;
                if !realized.approx_eq_up_to_phase(d, 1e-8) {
                    return Err(Error::Invariant(format!("normalized generator {i} disagrees with its dense form")));
                }
            }
            Some(conj)
        }
        _ => None,
    };
    Ok((GeneratorFamily::new(qs, dense_qs)?, q_m))
}

/// Reps of every product `Q_x = Q_1^{x_1} … Q_{2n}^{x_{2n}}` of a
/// block-form family, indexed by `x` read as an integer (bit `i` is `x_i`).
#[derive(Clone, Debug)]
pub struct TMapState {
    pub family: GeneratorFamily,
    reps: Vec<CliffordRep>,
    kernel: Vec<BitVector>,
}

impl TMapState {
    /// Enumerates all products in Gray-code order, then computes and checks
    /// the kernel of `T`.
    pub fn build(family: GeneratorFamily) -> Result<Self> {
        let n = family.n;
        if n > MAX_PIPELINE_QUBITS {
            return Err(Error::TooLarge {
                what: "T map",
                n,
                max: MAX_PIPELINE_QUBITS,
            });
        }
        if !family.is_block_form() {
            return Err(Error::NotBlockForm("family must be normalized first".into()));
        }
        let size = 1usize << (2 * n);
        let mut reps = vec![CliffordRep::identity(n); size];
        let mut prev = 0usize;
        for k in 1..size {
            let gray = k ^ (k >> 1);
            let j = k.trailing_zeros() as usize;
            // reps are phase-blind and the generators commute up to sign,
            // so the order of factors is irrelevant
            reps[gray] = CliffordRep::compose(&reps[prev], &family.qs[j])?;
            prev = gray;
        }
        let mut state = Self {
            family,
            reps,
            kernel: Vec::new(),
        };
        state.kernel = state.compute_kernel()?;
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.family.n
    }

    fn index(&self, x: &BitVector) -> usize {
        assert_eq!(x.len(), 2 * self.n(), "T map argument length");
        x.to_u64() as usize
    }

    pub fn rep(&self, x: &BitVector) -> &CliffordRep {
        &self.reps[self.index(x)]
    }

    /// `T(x)`: the f-vector of `Q_x`.
    pub fn t(&self, x: &BitVector) -> BitVector {
        self.rep(x).f()
    }

    /// `A_x`: the upper-left block of `C_x`.
    pub fn a(&self, x: &BitVector) -> BitMatrix {
        let n = self.n();
        self.rep(x).c().block(0, 0, n, n)
    }

    pub fn kernel(&self) -> &[BitVector] {
        &self.kernel
    }

    fn compute_kernel(&self) -> Result<Vec<BitVector>> {
        let n = self.n();
        let dim = 2 * n;
        let size = self.reps.len();
        let fs: Vec<u64> = self.reps.iter().map(|r| r.f().to_u64()).collect();
        let a_t: Vec<BitMatrix> = self.reps.iter().map(|r| r.c().block(0, 0, n, n).transpose()).collect();

        // T(x + e_j) = T(x) + A_x^T T(e_j)
        let gens_f: Vec<BitVector> = (0..dim).map(|j| self.reps[1 << j].f()).collect();
        let violation = (0..size).into_par_iter().find_any(|&x| {
            (0..dim).any(|j| {
                let predicted = &BitVector::from_u64(n, fs[x]) + &a_t[x].apply(&gens_f[j]);
                predicted.to_u64() != fs[x ^ (1 << j)]
            })
        });
        if let Some(x) = violation {
            return Err(Error::Invariant(format!("T(x + e_j) != T(x) + A_x^T T(e_j) at x = {x:#b}")));
        }

        let kernel_elems: Vec<usize> = (0..size).filter(|&x| fs[x] == 0).collect();
        let image: std::collections::BTreeSet<u64> = fs.iter().copied().collect();
        if kernel_elems.len() * image.len() != size {
            return Err(Error::Invariant("|Ker T| · |Im T| != 2^{2n}".into()));
        }
        if image.len() != 1 << n {
            return Err(Error::Invariant("T is not surjective".into()));
        }
        let in_kernel = |x: usize| fs[x] == 0;
        for &x in &kernel_elems {
            for &y in &kernel_elems {
                if !in_kernel(x ^ y) {
                    return Err(Error::Invariant("Ker T is not closed under addition".into()));
                }
            }
        }
        let rows: Vec<BitVector> = kernel_elems.iter().map(|&x| BitVector::from_u64(dim, x as u64)).collect();
        let basis = if rows.is_empty() {
            Vec::new()
        } else {
            BitMatrix::from_rows(rows)?.rref().rows
        };
        if basis.len() != n {
            return Err(Error::Invariant(format!("dim Ker T = {} but n = {n}", basis.len())));
        }
        // fibres of T are kernel cosets
        let shifts: Vec<usize> = basis.iter().map(|b| b.to_u64() as usize).collect();
        if let Some(x) = (0..size).into_par_iter().find_any(|&x| shifts.iter().any(|&y| fs[x ^ y] != fs[x])) {
            return Err(Error::Invariant(format!("T(x + y) != T(x) for kernel y at x = {x:#b}")));
        }
        Ok(basis)
    }
}

pub fn t_map(state: &TMapState, x: &BitVector) -> BitVector {
    state.t(x)
}

pub fn kernel_of_t(state: &TMapState) -> Vec<BitVector> {
    state.kernel().to_vec()
}

/// The result of the pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct GscCertificate {
    pub n: usize,
    /// Normal-form conjugator `M` as `0/1` rows.
    pub m: Vec<String>,
    /// `Q_M = (M, 0)` as hex `(C, h)`.
    pub conjugator_hex: (String, String),
    #[serde(skip)]
    pub conjugator: CliffordRep,
    #[serde(skip)]
    pub conjugator_dense: Option<DenseMatrix>,
    /// Basis of `Ker T`; it is also a Lagrangian whose Pauli group `U`
    /// carries onto `H`.
    pub kernel_basis: Vec<String>,
    /// Lagrangian `M^{-1} Z` whose Pauli group spans the same algebra as `H`.
    pub target_lagrangian: Vec<String>,
    /// Diagonal entries of each generator of `Q_M H Q_M†`.
    pub diagonal_spectra: Vec<Vec<(f64, f64)>>,
    #[serde(skip)]
    pub diagonal_generators: Vec<DenseMatrix>,
    /// Rank of the `2^n` diagonal patterns of the group (full rank means the
    /// group spans the diagonal algebra).
    pub span_rank: usize,
    pub generalized_semi_clifford: bool,
}

/// Rank of a set of complex vectors, by Gaussian elimination with partial
/// pivoting.
fn complex_rank(mut rows: Vec<Vec<Complex64>>, tol: f64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).max_by(|&a, &b| rows[a][col].norm().total_cmp(&rows[b][col].norm())) else {
            break;
        };
        if rows[p][col].norm() < tol {
            continue;
        }
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in rank + 1..rows.len() {
            let factor = rows[r][col] / pivot[col];
            if factor.norm() > 0.0 {
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= factor * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Diagonal generators of `Q_M H Q_M†` from the kernel of `T`, with every
/// lemma along the way checked.
pub fn extract_certificate(state: &TMapState, conjugator: &CliffordRep) -> Result<GscCertificate> {
    let n = state.n();
    let dim = 1usize << n;
    let kernel = state.kernel();
    let mut generators = Vec::with_capacity(n);
    let mut block_reps = Vec::with_capacity(n);
    for x in kernel {
        let rep = state.rep(x);
        if !state.a(x).is_identity() {
            return Err(Error::Invariant(format!("A_x != I for kernel vector {x}")));
        }
        if !rep.f().is_zero() {
            return Err(Error::Invariant(format!("f != 0 for kernel vector {x}")));
        }
        let block = BlockRep::from_rep(rep)?;
        let d = realize_block(&block)?;
        if !d.is_diagonal(TOL) {
            return Err(Error::Invariant(format!("Q_x is not diagonal for kernel vector {x}")));
        }
        if let Some(dense) = &state.family.dense_qs {
            let product = x
                .ones()
                .fold(DenseMatrix::identity(dim), |acc, i| acc.matmul(&dense[i]));
            if !product.approx_eq_up_to_phase(&d, 1e-8) {
                return Err(Error::Invariant(format!("dense product disagrees for kernel vector {x}")));
            }
        }
        generators.push(d);
        block_reps.push(block);
    }
    for i in 0..n {
        for j in i + 1..n {
            if commutator_sign(&block_reps[i], &block_reps[j])? != Sign::Plus {
                return Err(Error::Invariant(format!("kernel products {i} and {j} anticommute")));
            }
        }
    }

    let diags: Vec<Vec<Complex64>> = generators.iter().map(DenseMatrix::diag).collect();
    let patterns: Vec<Vec<Complex64>> = (0..dim)
        .map(|y| {
            (0..dim)
                .map(|k| {
                    (0..n)
                        .filter(|&i| y >> i & 1 == 1)
                        .fold(Complex64::new(1.0, 0.0), |acc, i| acc * diags[i][k])
                })
                .collect()
        })
        .collect();
    let span_rank = complex_rank(patterns, 1e-6);
    if span_rank != dim {
        return Err(Error::Invariant(format!("diagonal group spans rank {span_rank}, expected {dim}")));
    }

    let source = Lagrangian::new(n, kernel)?;
    let m_inv = conjugator.c().inverse()?;
    let target_vectors: Vec<BitVector> = Lagrangian::z(n).basis().iter().map(|b| m_inv.apply(b)).collect();
    let target = Lagrangian::new(n, &target_vectors)?;
    let conjugator_dense = if n <= crate::expansion::MAX_REP_TO_DENSE_QUBITS {
        Some(rep_to_dense(conjugator)?)
    } else {
        None
    };

    Ok(GscCertificate {
        n,
        m: conjugator.c().to_strings(),
        conjugator_hex: conjugator.to_hex(),
        conjugator: conjugator.clone(),
        conjugator_dense,
        kernel_basis: source.basis().iter().map(ToString::to_string).collect(),
        target_lagrangian: target.basis().iter().map(ToString::to_string).collect(),
        diagonal_spectra: diags
            .iter()
            .map(|d| d.iter().map(|z| (z.re, z.im)).collect())
            .collect(),
        diagonal_generators: generators,
        span_rank,
        generalized_semi_clifford: true,
    })
}

/// Runs every stage on a gate of the third level.
pub fn run_pipeline(u: &DenseMatrix) -> Result<GscCertificate> {
    let family = generators_from_gate(u)?;
    let (normalized, conjugator) = normalize_family(&family)?;
    let state = TMapState::build(normalized)?;
    extract_certificate(&state, &conjugator)
}

/// The two seven-qubit gates of the counterexample, qubits ordered
/// `A1 A2 A3 B1 B2 B3 R`: `U` swaps `A_i` with `B_i` controlled on `R`, and
/// `V` is four CCZ gates.
pub fn gottesman_mochon() -> (DenseMatrix, DenseMatrix) {
    let n = 7;
    let g = |name: &str, q: &[usize]| embedded(name, q, n).expect("valid gate");
    let u = g("CSWAP", &[6, 0, 3]).matmul(&g("CSWAP", &[6, 1, 4])).matmul(&g("CSWAP", &[6, 2, 5]));
    let v = g("CCZ", &[0, 1, 2])
        .matmul(&g("CCZ", &[0, 4, 5]))
        .matmul(&g("CCZ", &[3, 1, 5]))
        .matmul(&g("CCZ", &[3, 4, 2]));
    (u, v)
}

/// Outcome of checking the counterexample.
#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleVerdict {
    pub uv_in_c3: bool,
    pub vu_in_c3: bool,
    /// Every generator index `j` with `(VU) τ_{e_j} (VU)† ∉ C_2`.
    pub vu_violations: Vec<usize>,
    pub certificate_produced: bool,
    pub certificate: Option<GscCertificate>,
}

pub fn verify_counterexample() -> Result<CounterexampleVerdict> {
    let (u, v) = gottesman_mochon();
    let uv = u.matmul(&v);
    let vu = v.matmul(&u);
    let uv_in_c3 = in_level(&uv, 3);
    let n = 7;
    let violations: Vec<usize> = (0..2 * n)
        .into_par_iter()
        .filter(|&j| !in_level(&conjugate_by_pauli(&vu, &BitVector::unit(2 * n, j)), 2))
        .collect();
    if level_violation(&vu, 3)? != violations.first().copied() {
        return Err(Error::Invariant("violation scan disagrees with the level test".into()));
    }
    let certificate = if uv_in_c3 { Some(run_pipeline(&uv)?) } else { None };
    Ok(CounterexampleVerdict {
        uv_in_c3,
        vu_in_c3: violations.is_empty(),
        vu_violations: violations,
        certificate_produced: certificate.is_some(),
        certificate,
    })
}
