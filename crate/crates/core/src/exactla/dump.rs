//! Plain-text matrix dumps: a `rows cols modulus` header line followed by
//! one `row col value` triple per line.

use std::fmt::Write as _;

use super::matrix::FieldMatrix;
use super::LinalgError;
use crate::polyring::PrimeField;

pub fn write_dump(m: &FieldMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", m.rows(), m.cols(), m.field().modulus()).unwrap();
    for r in 0..m.rows() {
        for (c, v) in m.sparse_row(r) {
            writeln!(out, "{r} {c} {v}").unwrap();
        }
    }
    out
}

pub fn read_dump(text: &str) -> Result<FieldMatrix, LinalgError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(LinalgError::Dump {
        line: 1,
        message: "missing header".into(),
    })?;
    let head = numbers::<3>(hline, header)?;
    let (rows, cols) = (head[0] as usize, head[1] as usize);
    let field = PrimeField::new(head[2]).map_err(|e| LinalgError::Dump {
        line: hline,
        message: e.to_string(),
    })?;
    let mut triplets = Vec::new();
    for (line, l) in lines {
        let [r, c, v] = numbers::<3>(line, l)?;
        if r as usize >= rows || c as usize >= cols {
            return Err(LinalgError::Dump {
                line,
                message: format!("entry ({r}, {c}) outside {rows}x{cols}"),
            });
        }
        if v >= field.modulus() {
            return Err(LinalgError::Dump {
                line,
                message: format!("value {v} is not reduced modulo {}", field.modulus()),
            });
        }
        triplets.push((r as usize, c as usize, v));
    }
    Ok(FieldMatrix::from_triplets(rows, cols, field, triplets))
}

fn numbers<const N: usize>(line: usize, text: &str) -> Result<[u64; N], LinalgError> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != N {
        return Err(LinalgError::Dump {
            line,
            message: format!("expected {N} integers, found {}", parts.len()),
        });
    }
    let mut out = [0u64; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.parse().map_err(|_| LinalgError::Dump {
            line,
            message: format!("'{part}' is not a non-negative integer"),
        })?;
    }
    Ok(out)
}
