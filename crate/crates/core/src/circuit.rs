//! Text formats for circuits and bit matrices.
//!
//! A circuit file starts with `qubits N` and lists one gate per line as
//! `NAME q0 [q1 [q2]]`. A bit-matrix file holds one or more matrices, each a
//! `rows cols` header followed by that many rows of `0`/`1` characters. In
//! both formats `#` starts a comment and blank lines are skipped.

use serde::Serialize;

use crate::dense::{gates, DenseMatrix};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Gate names accepted in circuit files.
pub const CIRCUIT_GATES: &[&str] = &[
    "I", "X", "Y", "Z", "H", "S", "SDG", "T", "TDG", "CX", "CZ", "SWAP", "CCZ", "CSWAP",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gate {
    pub name: String,
    pub qubits: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircuitDescription {
    pub n: usize,
    /// Applied first to last.
    pub gates: Vec<Gate>,
}

impl CircuitDescription {
    pub fn to_dense(&self) -> Result<DenseMatrix> {
        self.gates.iter().try_fold(DenseMatrix::identity(1 << self.n), |acc, g| {
            Ok(gates::embedded(&g.name, &g.qubits, self.n)?.matmul(&acc))
        })
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected {what}, found {token:?}")))
}

pub fn parse_circuit(text: &str) -> Result<CircuitDescription> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or_else(|| syntax(1, "empty circuit"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["qubits", count] => parse_usize(first, count, "a qubit count")?,
        _ => return Err(syntax(first, "first line must be `qubits N`")),
    };
    if n == 0 || n > crate::pauli::MAX_DENSE_QUBITS {
        return Err(syntax(
            first,
            format!("qubit count must be between 1 and {}", crate::pauli::MAX_DENSE_QUBITS),
        ));
    }
    let mut gates_out = Vec::new();
    for (line, content) in lines {
        let mut tokens = content.split_whitespace();
        let name = tokens.next().expect("non-empty line").to_ascii_uppercase();
        if !CIRCUIT_GATES.contains(&name.as_str()) {
            return Err(syntax(line, format!("unknown gate {name:?}")));
        }
        let qubits = tokens
            .map(|t| parse_usize(line, t, "a qubit index"))
            .collect::<Result<Vec<_>>>()?;
        let arity = gates::arity(&name).expect("listed gate");
        if qubits.len() != arity {
            return Err(syntax(line, format!("{name} takes {arity} qubit(s), got {}", qubits.len())));
        }
        if let Some(q) = qubits.iter().find(|&&q| q >= n) {
            return Err(syntax(line, format!("qubit {q} out of range for {n} qubits")));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(syntax(line, format!("qubit {q} repeated")));
            }
        }
        gates_out.push(Gate { name, qubits });
    }
    Ok(CircuitDescription { n, gates: gates_out })
}

/// Every matrix in a bit-matrix file.
pub fn parse_bit_matrices(text: &str) -> Result<Vec<BitMatrix>> {
    let mut lines = content_lines(text).peekable();
    let mut out = Vec::new();
    while let Some((line, header)) = lines.next() {
        let dims: Vec<&str> = header.split_whitespace().collect();
        let [r, c] = dims.as_slice() else {
            return Err(syntax(line, "expected a `rows cols` header"));
        };
        let rows = parse_usize(line, r, "a row count")?;
        let cols = parse_usize(line, c, "a column count")?;
        let mut data = Vec::with_capacity(rows);
        for _ in 0..rows {
            let (row_line, content) = lines
                .next()
                .ok_or_else(|| syntax(line, format!("matrix declares {rows} rows but the file ends early")))?;
            let bits: String = content.split_whitespace().collect();
            if bits.len() != cols || !bits.chars().all(|ch| ch == '0' || ch == '1') {
                return Err(syntax(row_line, format!("expected {cols} binary digits, found {content:?}")));
            }
            data.push(bits);
        }
        let strs: Vec<&str> = data.iter().map(String::as_str).collect();
        out.push(if rows == 0 { BitMatrix::zeros(0, cols) } else { BitMatrix::from_strs(&strs)? });
    }
    if out.is_empty() {
        return Err(syntax(1, "no matrices found"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{gates::embedded, TOL};

    #[test]
    fn single_t_gate() {
        let c = parse_circuit("qubits 1\nT 0\n").unwrap();
        assert_eq!(c.n, 1);
        assert_eq!(c.gates.len(), 1);
        assert!(c.to_dense().unwrap().approx_eq(&embedded("T", &[0], 1).unwrap(), TOL));
    }

    #[test]
    fn comments_and_order() {
        let c = parse_circuit("# bell prep\n\nqubits 2\nH 0 # first\nCX 0 1\n").unwrap();
        let expected = embedded("CX", &[0, 1], 2).unwrap().matmul(&embedded("H", &[0], 2).unwrap());
        assert!(c.to_dense().unwrap().approx_eq(&expected, TOL));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_circuit("qubits 2\nCX 0 2\n").unwrap_err();
        assert_eq!(err, Error::Syntax { line: 2, msg: "qubit 2 out of range for 2 qubits".into() });
        assert!(matches!(parse_circuit("qubits 2\n\nCX 0\n"), Err(Error::Syntax { line: 3, .. })));
        assert!(matches!(parse_circuit("H 0\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_circuit("qubits 1\nFOO 0\n"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_circuit("qubits 2\nCZ 1 1\n"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_circuit("qubits 1\nCS 0\n"), Err(Error::Syntax { line: 2, .. })));
    }

    #[test]
    fn matrix_files() {
        let ms = parse_bit_matrices("2 2\n10\n01\n# second\n2 2\n1 1\n0 1\n").unwrap();
        assert_eq!(ms.len(), 2);
        assert!(ms[0].is_identity());
        assert!(ms[1].get(0, 1));
        assert!(matches!(parse_bit_matrices("2 2\n10\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_bit_matrices("2 2\n10\n21\n"), Err(Error::Syntax { line: 3, .. })));
    }
}
