//! Dense matrices for the named gates, embedded on chosen qubits.
//!
//! For multi-qubit gates the first listed qubit is the most significant bit
//! of the gate's local index, so `CX c t` controls on `c`, `CSWAP c a b`
//! swaps `a` and `b` when `c` is set.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{basis_index, basis_label, DenseMatrix, I, ONE, ZERO};
use crate::error::{Error, Result};

/// Names accepted by [`embedded`], with their arity.
pub const GATES: &[(&str, usize)] = &[
    ("I", 1),
    ("X", 1),
    ("Y", 1),
    ("Z", 1),
    ("H", 1),
    ("S", 1),
    ("SDG", 1),
    ("T", 1),
    ("TDG", 1),
    ("CX", 2),
    ("CZ", 2),
    ("CS", 2),
    ("SWAP", 2),
    ("CCZ", 3),
    ("CSWAP", 3),
];

pub fn arity(name: &str) -> Option<usize> {
    GATES.iter().find(|(g, _)| *g == name).map(|&(_, k)| k)
}

fn t_phase() -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)
}

fn diagonal(entries: &[Complex64]) -> DenseMatrix {
    DenseMatrix::diagonal(entries)
}

/// The gate's own `2^k x 2^k` matrix.
pub fn local_matrix(name: &str) -> Result<DenseMatrix> {
    let h = FRAC_1_SQRT_2;
    let m = match name {
        "I" => DenseMatrix::identity(2),
        "X" => DenseMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]])?,
        "Y" => DenseMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]])?,
        "Z" => diagonal(&[ONE, -ONE]),
        "H" => DenseMatrix::from_real(&[&[h, h], &[h, -h]])?,
        "S" => diagonal(&[ONE, I]),
        "SDG" => diagonal(&[ONE, -I]),
        "T" => diagonal(&[ONE, t_phase()]),
        "TDG" => diagonal(&[ONE, t_phase().conj()]),
        "CX" => DenseMatrix::from_real(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])?,
        "CZ" => diagonal(&[ONE, ONE, ONE, -ONE]),
        "CS" => diagonal(&[ONE, ONE, ONE, I]),
        "SWAP" => DenseMatrix::from_real(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ])?,
        "CCZ" => {
            let mut d = vec![ONE; 8];
            d[7] = -ONE;
            diagonal(&d)
        }
        "CSWAP" => {
            // swaps |101> and |110>
            let mut m = DenseMatrix::zeros(8);
            for x in 0..8 {
                let y = match x {
                    0b101 => 0b110,
                    0b110 => 0b101,
                    other => other,
                };
                m[(y, x)] = ONE;
            }
            m
        }
        other => return Err(Error::Parse(format!("unknown gate {other:?}"))),
    };
    Ok(m)
}

/// The gate acting on `qubits` of an `n`-qubit register.
pub fn embedded(name: &str, qubits: &[usize], n: usize) -> Result<DenseMatrix> {
    let k = arity(name).ok_or_else(|| Error::Parse(format!("unknown gate {name:?}")))?;
    if qubits.len() != k {
        return Err(Error::Precondition(format!(
            "gate {name} takes {k} qubits, got {}",
            qubits.len()
        )));
    }
    if let Some(&q) = qubits.iter().find(|&&q| q >= n) {
        return Err(Error::Precondition(format!(
            "qubit {q} out of range for {n} qubits"
        )));
    }
    for (i, q) in qubits.iter().enumerate() {
        if qubits[..i].contains(q) {
            return Err(Error::Precondition(format!("gate {name} repeats qubit {q}")));
        }
    }
    let local = local_matrix(name)?;
    let dim = 1usize << n;
    let mut out = DenseMatrix::zeros(dim);
    for col in 0..dim {
        let x = basis_label(n, col);
        let local_col = qubits
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | usize::from(x.get(q)));
        for local_row in 0..1usize << k {
            let z = local[(local_row, local_col)];
            if z == ZERO {
                continue;
            }
            let mut y = x.clone();
            for (pos, &q) in qubits.iter().enumerate() {
                y.set(q, local_row >> (k - 1 - pos) & 1 == 1);
            }
            out[(basis_index(&y), col)] = z;
        }
    }
    Ok(out)
}
