//! The binary symplectic form and maximal isotropic (Lagrangian) subspaces.
//!
//! Vectors of `Z_2^{2n}` are laid out as `(v; w)`: the first `n` coordinates
//! are the z-part and the last `n` the x-part.

use super::{BitMatrix, BitVector};
use crate::error::{Error, Result};

/// Largest `n` for which [`enumerate_lagrangians`] will run.
pub const MAX_ENUMERATION_QUBITS: usize = 3;

/// `J = (0 I_n; 0 0)`.
pub fn j_matrix(n: usize) -> BitMatrix {
    BitMatrix::from_fn(2 * n, 2 * n, |i, j| i < n && j == i + n)
}

/// `P = J + J^T = (0 I_n; I_n 0)`.
pub fn symplectic_form(n: usize) -> BitMatrix {
    BitMatrix::from_fn(2 * n, 2 * n, |i, j| j == (i + n) % (2 * n))
}

/// Symplectic inner product `a^T P b`.
pub fn symplectic_product(a: &BitVector, b: &BitVector) -> bool {
    assert_eq!(a.len(), b.len(), "symplectic product of unequal lengths");
    assert!(a.len().is_multiple_of(2), "symplectic product needs even length");
    let n = a.len() / 2;
    (0..n).fold(false, |acc, k| {
        acc ^ (a.get(k) & b.get(k + n)) ^ (a.get(k + n) & b.get(k))
    })
}

/// `P a`: swaps the z- and x-halves.
pub fn swap_halves(a: &BitVector) -> BitVector {
    let n = a.len() / 2;
    BitVector::concat(&a.slice(n, n), &a.slice(0, n))
}

/// Half the dimension of a `2n x 2n` matrix.
pub fn half_dim(c: &BitMatrix) -> Result<usize> {
    if !c.is_square() {
        return Err(Error::DimensionMismatch {
            op: "symplectic",
            left: c.shape(),
            right: c.shape(),
        });
    }
    if !c.rows().is_multiple_of(2) {
        return Err(Error::OddDimension(c.rows()));
    }
    Ok(c.rows() / 2)
}

/// Whether `C^T P C = P`.
pub fn is_symplectic(c: &BitMatrix) -> Result<bool> {
    let n = half_dim(c)?;
    let p = symplectic_form(n);
    Ok(&(&c.transpose() * &p) * c == p)
}

/// A maximal isotropic subspace of `Z_2^{2n}`, stored by the reduced row
/// echelon form of its basis so that equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lagrangian {
    n: usize,
    basis: Vec<BitVector>,
}

impl Lagrangian {
    /// Validates and canonicalizes a spanning set.
    pub fn new(n: usize, vectors: &[BitVector]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != 2 * n) {
            return Err(Error::NotLagrangian(format!(
                "vector {v} has length {}, expected {}",
                v.len(),
                2 * n
            )));
        }
        for (i, a) in vectors.iter().enumerate() {
            for (j, b) in vectors.iter().enumerate().skip(i + 1) {
                if symplectic_product(a, b) {
                    return Err(Error::NotLagrangian(format!(
                        "vectors {i} and {j} are not orthogonal"
                    )));
                }
            }
        }
        let m = if vectors.is_empty() {
            BitMatrix::zeros(0, 2 * n)
        } else {
            BitMatrix::from_rows(vectors.to_vec())?
        };
        let ech = m.rref();
        if ech.rows.len() != n {
            return Err(Error::NotLagrangian(format!(
                "rank {} is not maximal (expected {n})",
                ech.rows.len()
            )));
        }
        Ok(Self { n, basis: ech.rows })
    }

    /// Span of the z-generators `e_1..e_n`.
    pub fn z(n: usize) -> Self {
        Self {
            n,
            basis: (0..n).map(|i| BitVector::unit(2 * n, i)).collect(),
        }
    }

    /// Span of the x-generators `e_{n+1}..e_{2n}`.
    pub fn x(n: usize) -> Self {
        Self {
            n,
            basis: (0..n).map(|i| BitVector::unit(2 * n, n + i)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical (reduced row echelon) basis.
    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.clone());
        BitMatrix::from_rows(rows).map(|m| m.rank() == self.n).unwrap_or(false)
    }

    /// All `2^n` elements.
    pub fn elements(&self) -> Vec<BitVector> {
        (0..1u64 << self.n)
            .map(|mask| {
                let mut v = BitVector::zeros(2 * self.n);
                for (i, b) in self.basis.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        v += b;
                    }
                }
                v
            })
            .collect()
    }

    fn sort_key(&self) -> Vec<Vec<bool>> {
        self.basis.iter().map(BitVector::to_bools).collect()
    }
}

/// A symplectic `C` whose first `n` columns (the images of the z-generators)
/// span `l`.
///
/// The remaining columns are a dual basis `g_j` with `l_i^T P g_j = δ_ij`,
/// obtained as least solutions and then made mutually orthogonal by adding
/// multiples of the `l_i`.
pub fn symplectic_complete(l: &Lagrangian) -> Result<BitMatrix> {
    let n = l.n;
    let p = symplectic_form(n);
    let lagrangian = &l.basis;
    // rows l_i^T P
    let constraints = BitMatrix::from_rows(lagrangian.iter().map(|v| p.apply(v)).collect())
        .unwrap_or_else(|_| BitMatrix::zeros(0, 2 * n));
    let mut dual = Vec::with_capacity(n);
    for j in 0..n {
        let g = constraints
            .solve(&BitVector::unit(n, j))?
            .ok_or_else(|| Error::NotLagrangian("basis is not independent".into()))?;
        dual.push(g);
    }
    let original = dual.clone();
    for i in 0..n {
        for j in i + 1..n {
            if symplectic_product(&original[i], &original[j]) {
                dual[i] += &lagrangian[j];
            }
        }
    }
    let columns: Vec<BitVector> = lagrangian.iter().chain(&dual).cloned().collect();
    let c = BitMatrix::from_columns(2 * n, &columns)?;
    if !is_symplectic(&c)? {
        return Err(Error::Invariant("symplectic completion failed".into()));
    }
    Ok(c)
}

/// Every Lagrangian subspace of `Z_2^{2n}`, each exactly once, sorted by
/// canonical basis.
pub fn enumerate_lagrangians(n: usize) -> Result<Vec<Lagrangian>> {
    if n > MAX_ENUMERATION_QUBITS {
        return Err(Error::TooLarge {
            what: "Lagrangian enumeration",
            n,
            max: MAX_ENUMERATION_QUBITS,
        });
    }
    let dim = 2 * n;
    let mut out = Vec::new();
    for pivots in combinations(dim, n) {
        // free slots: positions right of each pivot that are not pivots
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                (p + 1..dim)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        for mask in 0..1u64 << slots.len() {
            let mut rows: Vec<BitVector> = pivots.iter().map(|&p| BitVector::unit(dim, p)).collect();
            for (k, &(r, c)) in slots.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    rows[r].set(c, true);
                }
            }
            let isotropic = (0..n).all(|i| (i + 1..n).all(|j| !symplectic_product(&rows[i], &rows[j])));
            if isotropic {
                out.push(Lagrangian { n, basis: rows });
            }
        }
    }
    out.sort_by_cached_key(Lagrangian::sort_key);
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
