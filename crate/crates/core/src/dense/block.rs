//! Clifford involutions in block form `C = (A E; 0 A^T)`, `h = (f; g)`.
//!
//! Such an operator permutes computational basis states with phases,
//! `Q|x⟩ = λ_x |f + A^T x⟩`, and the phases obey
//!
//! ```text
//! λ_0 λ_{f+y} = i^{d_0^T y} (-1)^{d_0^T y + g^T y + y^T lows(AE + d_0 d_0^T) y}
//! ```
//!
//! with `d_0 = diag(AE)`. Writing `Λ(y)` for the right-hand side, `λ_0^2 =
//! Λ(f)`, which pins `Q` down up to an overall sign once `Q^2 = I` is
//! imposed. The same table answers whether two such operators commute or
//! anticommute without building either matrix.

use num_complex::Complex64;

use super::{basis_index, basis_label, DenseMatrix};
use crate::clifford::CliffordRep;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::Phase;

/// A Clifford rep whose `C` has zero lower-left block, split into blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRep {
    pub a: BitMatrix,
    pub e: BitMatrix,
    pub f: BitVector,
    pub g: BitVector,
    pub d0: BitVector,
}

impl BlockRep {
    /// Splits a rep, checking the lower-left block is zero, `A^2 = I`, `E`
    /// and `AE` symmetric, and `A^T f = f`.
    pub fn from_rep(rep: &CliffordRep) -> Result<Self> {
        let n = rep.n();
        let c = rep.c();
        if !c.block(n, 0, n, n).is_zero() {
            return Err(Error::NotBlockForm("lower-left block is nonzero".into()));
        }
        let a = c.block(0, 0, n, n);
        let e = c.block(0, n, n, n);
        let block = Self::from_parts(a, e, rep.f(), rep.g())?;
        if block.to_rep()? != *rep {
            return Err(Error::NotBlockForm("lower-right block is not A^T".into()));
        }
        Ok(block)
    }

    pub fn from_parts(a: BitMatrix, e: BitMatrix, f: BitVector, g: BitVector) -> Result<Self> {
        let n = a.rows();
        if !(&a * &a).is_identity() {
            return Err(Error::NotBlockForm("A^2 != I".into()));
        }
        let ae = &a * &e;
        if !e.is_symmetric() || !ae.is_symmetric() {
            return Err(Error::NotBlockForm("E or AE is not symmetric".into()));
        }
        if f.len() != n || g.len() != n {
            return Err(Error::NotBlockForm("h has the wrong length".into()));
        }
        if a.transpose().apply(&f) != f {
            return Err(Error::NotBlockForm("A^T f != f".into()));
        }
        Ok(Self {
            d0: ae.diag(),
            a,
            e,
            f,
            g,
        })
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn to_rep(&self) -> Result<CliffordRep> {
        let n = self.n();
        let c = BitMatrix::from_blocks(&self.a, &self.e, &BitMatrix::zeros(n, n), &self.a.transpose())?;
        CliffordRep::new(c, BitVector::concat(&self.f, &self.g))
    }

    /// `Λ(y) = λ_0 λ_{f+y}`.
    pub fn phase_product(&self, y: &BitVector) -> Phase {
        let ae = &self.a * &self.e;
        let form = (&ae + &BitMatrix::outer(&self.d0, &self.d0)).lows();
        let dy = self.d0.dot(y);
        let sign = dy ^ self.g.dot(y) ^ form.bilinear(y, y);
        Phase::from_bits(dy, sign)
    }
}

/// Principal square root of `i^k`, as a unit complex number.
fn principal_sqrt(p: Phase) -> Complex64 {
    Complex64::from_polar(1.0, match p.exponent() {
        0 => 0.0,
        1 => std::f64::consts::FRAC_PI_4,
        2 => std::f64::consts::FRAC_PI_2,
        _ => -std::f64::consts::FRAC_PI_4,
    })
}

/// The monomial matrix of the block-form involution, in the gauge where
/// `λ_0` is the principal square root of `Λ(f)` (so `λ_0 = 1` when `f = 0`)
/// and `Q^2 = I`.
pub fn realize_block(rep: &BlockRep) -> Result<DenseMatrix> {
    if !rep.to_rep()?.is_involution() {
        return Err(Error::Precondition("rep does not square to the identity".into()));
    }
    let n = rep.n();
    let at = rep.a.transpose();
    let lambda0 = principal_sqrt(rep.phase_product(&rep.f));
    let dim = 1usize << n;
    let mut q = DenseMatrix::zeros(dim);
    for col in 0..dim {
        let x = basis_label(n, col);
        let lambda_x = rep.phase_product(&(&x + &rep.f)).to_complex() / lambda0;
        let target = &rep.f + &at.apply(&x);
        q[(basis_index(&target), col)] = lambda_x;
    }
    Ok(q)
}

/// `+1` when `QQ' = Q'Q`, `-1` when `QQ' = -Q'Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Decides `QQ' = ±Q'Q` from the reps alone.
///
/// `Q'Q|0⟩ = λ_0 λ'_f |·⟩` and `QQ'|0⟩ = λ'_0 λ_{f'} |·⟩` land on the same
/// basis state, so the sign is `λ_0 λ'_f / (λ'_0 λ_{f'})`. Multiplying top
/// and bottom by `λ_0 λ'_0` gives the gauge-free expression
/// `Λ(f) Λ'(f + f') / (Λ'(f') Λ(f + f'))`.
pub fn commutator_sign(q: &BlockRep, q2: &BlockRep) -> Result<Sign> {
    if q.n() != q2.n() {
        return Err(Error::QubitMismatch(q.n(), q2.n()));
    }
    let (r1, r2) = (q.to_rep()?, q2.to_rep()?);
    if !r1.is_involution() || !r2.is_involution() {
        return Err(Error::Precondition("both reps must square to the identity".into()));
    }
    if (r1.c() * r2.c()) != (r2.c() * r1.c()) {
        return Err(Error::Precondition("C-matrices do not commute".into()));
    }
    if !r1.commutes_up_to_sign(&r2) {
        return Err(Error::Precondition("h-vectors are incompatible".into()));
    }
    let lhs = &q.f + &q.a.transpose().apply(&q2.f);
    let rhs = &q2.f + &q2.a.transpose().apply(&q.f);
    if lhs != rhs {
        return Err(Error::Precondition("(I + A^T) f' != (I + A'^T) f".into()));
    }
    let sum = &q.f + &q2.f;
    let top = q.phase_product(&q.f) * q2.phase_product(&sum);
    let bottom = q2.phase_product(&q2.f) * q.phase_product(&sum);
    match (top * bottom.conj()).exponent() {
        0 => Ok(Sign::Plus),
        2 => Ok(Sign::Minus),
        _ => Err(Error::Invariant("sign ratio is not real".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{extract_rep, gates::embedded, TOL};
    use crate::pauli::PhasedPauli;

    fn block_of(u: &DenseMatrix) -> BlockRep {
        BlockRep::from_rep(&extract_rep(u).unwrap()).unwrap()
    }

    #[test]
    fn identity_realizes_to_identity() {
        let id = BlockRep::from_rep(&CliffordRep::identity(2)).unwrap();
        assert!(realize_block(&id).unwrap().approx_eq(&DenseMatrix::identity(4), TOL));
    }

    #[test]
    fn z_realizes_to_diag_one_minus_one() {
        let z = BlockRep::from_rep(&CliffordRep::from_pauli(&PhasedPauli::z(1, 0))).unwrap();
        assert!(z.f.is_zero());
        assert_eq!(z.g.to_string(), "1");
        let q = realize_block(&z).unwrap();
        assert!(q.approx_eq(&embedded("Z", &[0], 1).unwrap(), TOL));
    }

    #[test]
    fn cz_realizes_to_its_diagonal() {
        let cz = embedded("CZ", &[0, 1], 2).unwrap();
        let q = realize_block(&block_of(&cz)).unwrap();
        assert!(q.approx_eq_up_to_phase(&cz, TOL));
    }

    #[test]
    fn x_realizes_up_to_phase() {
        let x = embedded("X", &[0], 2).unwrap();
        let q = realize_block(&block_of(&x)).unwrap();
        assert!(q.approx_eq_up_to_phase(&x, TOL));
        assert!(q.matmul(&q).approx_eq(&DenseMatrix::identity(4), TOL));
    }

    #[test]
    fn y_needs_an_imaginary_gauge() {
        // Y has f = g = 1; Λ(f) = -1 so λ_0 = i
        let y = embedded("Y", &[0], 1).unwrap();
        let q = realize_block(&block_of(&y)).unwrap();
        assert!(q.approx_eq_up_to_phase(&y, TOL));
        assert!(q.matmul(&q).approx_eq(&DenseMatrix::identity(2), TOL));
    }

    #[test]
    fn z_and_x_anticommute() {
        let z = BlockRep::from_rep(&CliffordRep::from_pauli(&PhasedPauli::z(1, 0))).unwrap();
        let x = BlockRep::from_rep(&CliffordRep::from_pauli(&PhasedPauli::x(1, 0))).unwrap();
        assert_eq!(commutator_sign(&z, &x).unwrap(), Sign::Minus);
        assert_eq!(commutator_sign(&z, &z).unwrap(), Sign::Plus);
    }

    #[test]
    fn rejects_non_block_and_incompatible_input() {
        let h = extract_rep(&embedded("H", &[0], 1).unwrap()).unwrap();
        assert!(BlockRep::from_rep(&h).is_err());
        let s = block_of(&embedded("S", &[0], 1).unwrap());
        assert!(realize_block(&s).is_err());
        let x = block_of(&embedded("X", &[0], 2).unwrap());
        let cz = block_of(&embedded("CZ", &[0, 1], 2).unwrap());
        assert!(commutator_sign(&x, &cz).is_err());
    }
}
