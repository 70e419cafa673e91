//! Normal forms for symplectic involutions over GF(2).
//!
//! A single involution can be conjugated to `(I E; 0 I)` with `E`
//! symmetric. A commuting family can only be brought simultaneously to the
//! weaker block upper-triangular shape `(A E; 0 A^T)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{is_symplectic, symplectic_form, BitMatrix, BitVector};

/// Largest `n` for which [`symplectic_group`] enumerates.
pub const MAX_GROUP_ENUMERATION_QUBITS: usize = 2;

/// A conjugator `m` and the conjugated matrix `m c m^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalFormResult {
    #[serde(serialize_with = "ser_matrix")]
    pub m: BitMatrix,
    #[serde(serialize_with = "ser_matrix")]
    pub normalized: BitMatrix,
}

/// One conjugator shared by a whole family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetNormalForm {
    #[serde(serialize_with = "ser_matrix")]
    pub m: BitMatrix,
    #[serde(serialize_with = "ser_matrices")]
    pub normalized: Vec<BitMatrix>,
}

impl SetNormalForm {
    pub fn results(&self) -> Vec<NormalFormResult> {
        self.normalized
            .iter()
            .map(|c| NormalFormResult {
                m: self.m.clone(),
                normalized: c.clone(),
            })
            .collect()
    }
}

fn ser_matrix<S: serde::Serializer>(m: &BitMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&m.to_strings(), s)
}

fn ser_matrices<S: serde::Serializer>(ms: &[BitMatrix], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = ms.iter().map(BitMatrix::to_strings).collect();
    serde::Serialize::serialize(&rows, s)
}

/// `m c m^{-1}`.
pub fn conjugate(m: &BitMatrix, c: &BitMatrix) -> Result<BitMatrix> {
    let inv = m.inverse()?;
    m.try_mul(c)?.try_mul(&inv)
}

/// Validates a symplectic involution and returns `n`.
pub fn check_involution(c: &BitMatrix) -> Result<usize> {
    let n = crate::gf2::half_dim(c)?;
    if !is_symplectic(c)? {
        return Err(Error::NotSymplectic(format!("{c:?}")));
    }
    if !(c * c).is_identity() {
        return Err(Error::NotInvolution(format!("{c:?}")));
    }
    Ok(n)
}

/// Whether `c` has zero lower-left `n x n` block.
pub fn is_block_upper(c: &BitMatrix) -> bool {
    let n = c.rows() / 2;
    c.block(n, 0, n, n).is_zero()
}

/// Whether `c = (I E; 0 I)` with `E` symmetric.
pub fn is_nice_form(c: &BitMatrix) -> bool {
    let n = c.rows() / 2;
    c.block(0, 0, n, n).is_identity()
        && c.block(n, n, n, n).is_identity()
        && c.block(n, 0, n, n).is_zero()
        && c.block(0, n, n, n).is_symmetric()
}

fn quarter(c: &BitMatrix, n: usize) -> [BitMatrix; 4] {
    [
        c.block(0, 0, n, n),
        c.block(0, n, n, n),
        c.block(n, 0, n, n),
        c.block(n, n, n, n),
    ]
}

fn diag_blocks(top: &BitMatrix, bottom: &BitMatrix) -> BitMatrix {
    BitMatrix::block_diag(top, bottom)
}

/// Index of coordinate `i` of a `2k`-dimensional piece inside the full
/// `2n` space, for a piece occupying qubits `offset..offset + k`.
fn embed_index(i: usize, k: usize, offset: usize, n: usize) -> usize {
    if i < k {
        offset + i
    } else {
        n + offset + (i - k)
    }
}

/// `Φ(X, Y)`: `X` acts on qubits `0..r`, `Y` on qubits `r..n`, each with its
/// z- and x-coordinates interleaved into the full layout.
pub fn phi(x: &BitMatrix, y: &BitMatrix) -> BitMatrix {
    let r = x.rows() / 2;
    let k = y.rows() / 2;
    let n = r + k;
    let mut out = BitMatrix::zeros(2 * n, 2 * n);
    for i in 0..2 * r {
        for j in 0..2 * r {
            if x.get(i, j) {
                out.set(embed_index(i, r, 0, n), embed_index(j, r, 0, n), true);
            }
        }
    }
    for i in 0..2 * k {
        for j in 0..2 * k {
            if y.get(i, j) {
                out.set(embed_index(i, k, r, n), embed_index(j, k, r, n), true);
            }
        }
    }
    out
}

/// Restriction of `c` to the coordinates of qubits `offset..offset + k`.
fn restrict(c: &BitMatrix, k: usize, offset: usize) -> BitMatrix {
    let n = c.rows() / 2;
    BitMatrix::from_fn(2 * k, 2 * k, |i, j| {
        c.get(embed_index(i, k, offset, n), embed_index(j, k, offset, n))
    })
}

/// An invertible `R` with `R E R^T = (e 0; 0 0)`, `e` invertible of size
/// `rank(E)`, for symmetric `E`.
///
/// The last rows of `R` span the kernel of `E`; the first rows complete
/// them to a basis with unit vectors. Any entry touching a kernel row
/// vanishes because `E` is symmetric.
pub fn corner_congruence(e: &BitMatrix) -> (BitMatrix, usize) {
    let n = e.rows();
    let kernel = e.kernel_basis();
    let r = n - kernel.len();
    let mut chosen: Vec<BitVector> = Vec::with_capacity(n);
    let mut span = kernel.clone();
    for i in 0..n {
        if chosen.len() == r {
            break;
        }
        let u = BitVector::unit(n, i);
        let mut trial = span.clone();
        trial.push(u.clone());
        if BitMatrix::from_rows(trial).expect("same length").rank() == span.len() + 1 {
            span.push(u.clone());
            chosen.push(u);
        }
    }
    chosen.extend(kernel);
    (BitMatrix::from_rows(chosen).expect("same length"), r)
}

fn check_step(m: &BitMatrix, what: &str) -> Result<()> {
    if !is_symplectic(m)? {
        return Err(Error::Invariant(format!("{what} conjugator is not symplectic")));
    }
    Ok(())
}

/// Conjugator for `(A 0; 0 A^T)` with `A^2 = I`.
///
/// With `a = A^T` and `N = I + a` (so `N^2 = 0`), each pivot column `u` of `N`
/// gives a Jordan pair `(N u, u)`; the rest of a basis comes from the kernel
/// of `N`. In that basis `a` is block diagonal with `(1 1; 0 1)` blocks, and
/// swapping the z- and x-coordinate of the first qubit of each 2-block
/// finishes the job.
fn jordan_conjugator(c: &BitMatrix, n: usize) -> Result<BitMatrix> {
    let a = c.block(n, n, n, n);
    let nil = &BitMatrix::identity(n) + &a;
    let pivots = nil.pivot_columns();
    let mut basis: Vec<BitVector> = Vec::with_capacity(n);
    let mut firsts = Vec::with_capacity(pivots.len());
    for &p in &pivots {
        let u = BitVector::unit(n, p);
        firsts.push(basis.len());
        basis.push(nil.apply(&u));
        basis.push(u);
    }
    for z in nil.kernel_basis() {
        let mut trial = basis.clone();
        trial.push(z.clone());
        if BitMatrix::from_rows(trial).expect("same length").rank() == basis.len() + 1 {
            basis.push(z);
        }
    }
    if basis.len() != n {
        return Err(Error::Invariant("Jordan basis is incomplete".into()));
    }
    let b = BitMatrix::from_columns(n, &basis)?;
    let r = b.inverse()?;
    let mut m = diag_blocks(&b.transpose(), &r);
    for p in firsts {
        let swap = BitMatrix::from_fn(2 * n, 2 * n, |i, j| {
            let t = |k: usize| if k == p { p + n } else if k == p + n { p } else { k };
            t(j) == i
        });
        m = &swap * &m;
    }
    Ok(m)
}

fn normalize(c: &BitMatrix) -> Result<BitMatrix> {
    let n = c.rows() / 2;
    if c.is_identity() {
        return Ok(BitMatrix::identity(2 * n));
    }
    let [a, e, f, _] = quarter(c, n);
    let rank = e.rank();
    let m = if rank == 0 {
        if f.is_zero() {
            jordan_conjugator(c, n)?
        } else {
            // swapping halves moves F into the upper-right corner
            let p = symplectic_form(n);
            let inner = normalize(&(&(&p * c) * &p))?;
            &inner * &p
        }
    } else {
        let (rmat, r) = corner_congruence(&e);
        let m1 = diag_blocks(&rmat, &rmat.inverse()?.transpose());
        let c1 = conjugate(&m1, c)?;
        let a1 = c1.block(0, 0, n, n);
        let e_small = c1.block(0, n, r, r);
        let e_inv = e_small.inverse()?;
        let top = &e_inv * &a1.block(0, 0, r, n);
        let s = BitMatrix::from_fn(n, n, |i, j| {
            if i < r {
                top.get(i, j)
            } else if j < r {
                top.get(j, i)
            } else {
                false
            }
        });
        let m2 = BitMatrix::from_blocks(&BitMatrix::identity(n), &BitMatrix::zeros(n, n), &s, &BitMatrix::identity(n))?;
        let c2 = conjugate(&m2, &c1)?;
        let m_x = BitMatrix::from_blocks(
            &BitMatrix::identity(r),
            &BitMatrix::zeros(r, r),
            &e_inv,
            &BitMatrix::identity(r),
        )?;
        let k = n - r;
        let expected_x = BitMatrix::from_blocks(&BitMatrix::zeros(r, r), &e_small, &e_inv, &BitMatrix::zeros(r, r))?;
        let y = restrict(&c2, k, r);
        if restrict(&c2, r, 0) != expected_x || phi(&expected_x, &y) != c2 {
            return Err(Error::Invariant(format!("{a:?} did not split into (0 e; e^-1 0) and a residual block")));
        }
        let m_y = if k == 0 { BitMatrix::identity(0) } else { normalize(&y)? };
        &(&phi(&m_x, &m_y) * &m2) * &m1
    };
    check_step(&m, "partial")?;
    Ok(m)
}

/// `M` with `M C M^{-1} = (I E; 0 I)`, `E` symmetric.
pub fn involution_normal_form(c: &BitMatrix) -> Result<NormalFormResult> {
    check_involution(c)?;
    let m = normalize(c)?;
    let normalized = conjugate(&m, c)?;
    if !is_nice_form(&normalized) {
        return Err(Error::Invariant("normal form has the wrong shape".into()));
    }
    Ok(NormalFormResult { m, normalized })
}

fn check_family(cs: &[BitMatrix]) -> Result<usize> {
    let n = cs
        .first()
        .map(crate::gf2::half_dim)
        .transpose()?
        .ok_or_else(|| Error::Precondition("empty family".into()))?;
    for c in cs {
        let k = check_involution(c)?;
        if k != n {
            return Err(Error::QubitMismatch(n, k));
        }
    }
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if &cs[i] * &cs[j] != &cs[j] * &cs[i] {
                return Err(Error::NotCommuting(i, j));
            }
        }
    }
    Ok(n)
}

fn normalize_family(cs: &[BitMatrix], n: usize) -> Result<BitMatrix> {
    let Some(first) = cs.iter().find(|c| !c.is_identity()) else {
        return Ok(BitMatrix::identity(2 * n));
    };
    let m0 = normalize(first)?;
    let e = conjugate(&m0, first)?.block(0, n, n, n);
    let (rmat, r) = corner_congruence(&e);
    let m1 = diag_blocks(&rmat, &rmat.inverse()?.transpose());
    let m = &m1 * &m0;
    if r == n {
        return Ok(m);
    }
    let k = n - r;
    let mut residuals = Vec::with_capacity(cs.len());
    for c in cs {
        let c1 = conjugate(&m, c)?;
        // a3, f1 and f2 vanish because e is invertible
        let lower_left = c1.block(n, 0, n, n);
        let a3 = c1.block(r, 0, k, r);
        if !a3.is_zero() || !lower_left.block(0, 0, r, n).is_zero() {
            return Err(Error::Invariant("commuting element lost its block structure".into()));
        }
        residuals.push(restrict(&c1, k, r));
    }
    let m_d = normalize_family(&residuals, k)?;
    let lifted = &phi(&BitMatrix::identity(2 * r), &m_d) * &m;
    check_step(&lifted, "family")?;
    Ok(lifted)
}

/// One symplectic `M` putting every `C_i` into `(A_i E_i; 0 A_i^T)`.
/// The first non-identity element drives each induction step.
pub fn commuting_set_normal_form(cs: &[BitMatrix]) -> Result<SetNormalForm> {
    let n = check_family(cs)?;
    let m = normalize_family(cs, n)?;
    let normalized = cs.iter().map(|c| conjugate(&m, c)).collect::<Result<Vec<_>>>()?;
    for c in &normalized {
        if !is_block_upper(c) {
            return Err(Error::Invariant("family element is not block upper-triangular".into()));
        }
    }
    Ok(SetNormalForm { m, normalized })
}

/// `true` when `(I + C_1)(I + C_2) != 0`, which rules out bringing both to
/// `(I E; 0 I)` with one conjugator.
pub fn simultaneous_nice_form_obstruction(c1: &BitMatrix, c2: &BitMatrix) -> Result<bool> {
    check_family(&[c1.clone(), c2.clone()])?;
    let id = BitMatrix::identity(c1.rows());
    Ok(!(&(&id + c1) * &(&id + c2)).is_zero())
}

/// Every element of `Sp(2n, 2)` by brute force, for `n <= 2`.
pub fn symplectic_group(n: usize) -> Result<Vec<BitMatrix>> {
    if n > MAX_GROUP_ENUMERATION_QUBITS {
        return Err(Error::TooLarge {
            what: "symplectic group enumeration",
            n,
            max: MAX_GROUP_ENUMERATION_QUBITS,
        });
    }
    let d = 2 * n;
    let p = symplectic_form(n);
    Ok((0u64..1 << (d * d))
        .map(|bits| BitMatrix::from_fn(d, d, |i, j| bits >> (i * d + j) & 1 == 1))
        .filter(|c| &(&c.transpose() * &p) * c == p)
        .collect())
}

/// The commuting pair from the obstruction example.
pub fn counterexample_pair() -> (BitMatrix, BitMatrix) {
    let c1 = BitMatrix::from_strs(&["1001", "0110", "0010", "0001"]).expect("literal");
    let c2 = BitMatrix::from_strs(&["1100", "0100", "0010", "0011"]).expect("literal");
    (c1, c2)
}
