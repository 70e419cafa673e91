//! Clifford operators represented, up to global phase, by a symplectic matrix
//! `C` and a vector `h` over GF(2).
//!
//! Conjugation by the operator `Q` represented by `(C, h)` sends a Pauli
//! element to
//!
//! ```text
//! Q i^δ (-1)^ε τ_a Q† = i^{δ + d^T a} (-1)^{ε + h^T a + a^T L a + δ d^T a} τ_{Ca}
//! ```
//!
//! where `d = diag(C^T J C)` and `L = lows(C^T J C + d d^T)`. Nothing here
//! tracks the global phase of `Q`; sign questions are answered by
//! [`crate::dense::commutator_sign`].

use std::fmt;

use crate::dense;
use crate::error::{Error, Result};
use crate::gf2::{half_dim, is_symplectic, j_matrix, swap_halves, BitMatrix, BitVector};
use crate::pauli::PhasedPauli;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordRep {
    c: BitMatrix,
    h: BitVector,
}

impl CliffordRep {
    /// Validates that `c` is symplectic and `h` has matching length.
    pub fn new(c: BitMatrix, h: BitVector) -> Result<Self> {
        let n = half_dim(&c)?;
        if h.len() != 2 * n {
            return Err(Error::DimensionMismatch {
                op: "clifford rep",
                left: c.shape(),
                right: (h.len(), 1),
            });
        }
        if !is_symplectic(&c)? {
            return Err(Error::NotSymplectic(String::new()));
        }
        Ok(Self { c, h })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            c: BitMatrix::identity(2 * n),
            h: BitVector::zeros(2 * n),
        }
    }

    /// The rep `(I, P a)` of `τ_a`. The Pauli's phase is dropped.
    pub fn from_pauli(p: &PhasedPauli) -> Self {
        let n = p.n();
        Self {
            c: BitMatrix::identity(2 * n),
            h: swap_halves(p.a()),
        }
    }

    /// A Clifford with the given symplectic matrix and `h = 0`.
    pub fn from_symplectic(c: BitMatrix) -> Result<Self> {
        let n = half_dim(&c)?;
        Self::new(c, BitVector::zeros(2 * n))
    }

    pub fn n(&self) -> usize {
        self.c.rows() / 2
    }

    pub fn c(&self) -> &BitMatrix {
        &self.c
    }

    pub fn h(&self) -> &BitVector {
        &self.h
    }

    /// Top half of `h`.
    pub fn f(&self) -> BitVector {
        self.h.slice(0, self.n())
    }

    /// Bottom half of `h`.
    pub fn g(&self) -> BitVector {
        self.h.slice(self.n(), self.n())
    }

    /// `d = diag(C^T J C)`; coordinate `j` is `c_j^T J c_j`.
    pub fn d_vector(&self) -> BitVector {
        let cjc = &(&self.c.transpose() * &j_matrix(self.n())) * &self.c;
        cjc.diag()
    }

    /// `lows(C^T J C + d d^T)`, the quadratic part of the sign update.
    pub fn sign_form(&self) -> BitMatrix {
        let cjc = &(&self.c.transpose() * &j_matrix(self.n())) * &self.c;
        let d = cjc.diag();
        (&cjc + &BitMatrix::outer(&d, &d)).lows()
    }

    fn check_same_n(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::QubitMismatch(self.n(), n));
        }
        Ok(())
    }

    /// `Q p Q†` in coordinates.
    pub fn conjugate(&self, p: &PhasedPauli) -> Result<PhasedPauli> {
        self.check_same_n(p.n())?;
        let a = p.a();
        let d = self.d_vector();
        let da = d.dot(a);
        let delta = p.delta() ^ da;
        let epsilon = p.epsilon()
            ^ self.h.dot(a)
            ^ self.sign_form().bilinear(a, a)
            ^ (p.delta() & da);
        PhasedPauli::new(delta, epsilon, self.c.apply(a))
    }

    /// The product `outer · inner` (apply `inner` first).
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        outer.check_same_n(inner.n())?;
        let (c2, c1) = (&outer.c, &inner.c);
        let d1 = inner.d_vector();
        let d2 = outer.d_vector();
        let c1t = c1.transpose();
        let quad = &(&c1t * &outer.sign_form()) * c1;
        let cross = BitMatrix::outer(&d1, &c1t.apply(&d2));
        let mut h = inner.h.clone();
        h += &c1t.apply(&outer.h);
        h += &(&quad + &cross).diag();
        Ok(Self { c: c2 * c1, h })
    }

    /// Right-to-left product of several reps: `reps[0] · reps[1] · …`.
    pub fn product<'a>(n: usize, reps: impl IntoIterator<Item = &'a Self>) -> Result<Self> {
        reps.into_iter()
            .try_fold(Self::identity(n), |acc, r| Self::compose(&acc, r))
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let c_inv = self.c.inverse().expect("symplectic matrices are invertible");
        let c_inv_t = c_inv.transpose();
        let d = self.d_vector();
        let d_prime = (&(&c_inv_t * &j_matrix(n)) * &c_inv).diag();
        let quad = &(&c_inv_t * &self.sign_form()) * &c_inv;
        let cross = BitMatrix::outer(&d_prime, &c_inv_t.apply(&d));
        let mut h = c_inv_t.apply(&self.h);
        h += &(&quad + &cross).diag();
        Self { c: c_inv, h }
    }

    /// Whether `Q^2 ∝ I`, i.e. `C^2 = I` and the square has `h = 0`.
    pub fn is_involution(&self) -> bool {
        Self::compose(self, self).is_ok_and(|sq| sq == Self::identity(self.n()))
    }

    /// Whether `Q Q' = ±Q' Q`: the `C`s commute and both orders give the
    /// same `h`.
    pub fn commutes_up_to_sign(&self, other: &Self) -> bool {
        match (Self::compose(self, other), Self::compose(other, self)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// Hex encoding of `C` (row-major) and `h`.
    pub fn to_hex(&self) -> (String, String) {
        let bits: Vec<bool> = self.c.row_vectors().iter().flat_map(BitVector::to_bools).collect();
        (bits_to_hex(&bits), bits_to_hex(&self.h.to_bools()))
    }

    pub fn from_hex(n: usize, c_hex: &str, h_hex: &str) -> Result<Self> {
        let dim = 2 * n;
        let c_bits = hex_to_bits(c_hex, dim * dim)?;
        let h_bits = hex_to_bits(h_hex, dim)?;
        let c = BitMatrix::from_fn(dim, dim, |i, j| c_bits[i * dim + j]);
        Self::new(c, BitVector::from_bools(&h_bits))
    }
}

/// Packs bits four to a hex digit, most significant first, padding the final
/// digit with zeros.
pub fn bits_to_hex(bits: &[bool]) -> String {
    bits.chunks(4)
        .map(|chunk| {
            let v = chunk
                .iter()
                .enumerate()
                .fold(0u32, |acc, (k, &b)| acc | (u32::from(b) << (3 - k)));
            char::from_digit(v, 16).expect("nibble")
        })
        .collect()
}

pub fn hex_to_bits(s: &str, len: usize) -> Result<Vec<bool>> {
    if s.len() != len.div_ceil(4) {
        return Err(Error::Parse(format!(
            "hex block {s:?} has {} digits, expected {}",
            s.len(),
            len.div_ceil(4)
        )));
    }
    let mut bits = Vec::with_capacity(s.len() * 4);
    for ch in s.chars() {
        let v = ch
            .to_digit(16)
            .ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?}")))?;
        bits.extend((0..4).map(|k| v >> (3 - k) & 1 == 1));
    }
    if bits[len..].iter().any(|&b| b) {
        return Err(Error::Parse("nonzero padding bits".into()));
    }
    bits.truncate(len);
    Ok(bits)
}

/// The rep of a named Clifford gate, extracted from its dense matrix.
///
/// Accepts `I, X, Y, Z, H, S, SDG, CX, CZ, SWAP`.
pub fn standard_gate(name: &str, qubits: &[usize], n: usize) -> Result<CliffordRep> {
    let u = dense::gates::embedded(name, qubits, n)?;
    dense::extract_rep(&u).ok_or_else(|| Error::NotClifford(format!("gate {name}")))
}

impl fmt::Debug for CliffordRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffordRep {{ c: {:?}, h: {} }}", self.c, self.h)
    }
}
