//! Exact linear algebra over prime fields.
//!
//! [`FieldMatrix::rank`] is the performance path (sparse Markowitz
//! elimination, or dense elimination for dense storage);
//! [`FieldMatrix::dense_rank_oracle`] is a deliberately plain reference used
//! to cross-check it.

mod dump;
mod echelon;
mod matrix;
mod oracle;
mod sparse;

use thiserror::Error;

pub use dump::{read_dump, write_dump};
pub use echelon::{EchelonResult, RowEchelon};
pub use matrix::{FieldMatrix, SparseRow};
pub use oracle::ORACLE_GUARD;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix {rows}x{cols} exceeds the dense oracle guard of {limit} entries")]
    SizeGuardExceeded { rows: usize, cols: usize, limit: usize },
    #[error("matrix dump line {line}: {message}")]
    Dump { line: usize, message: String },
}

impl FieldMatrix {
    /// Exact rank over the field.
    pub fn rank(&self) -> usize {
        if self.rows() == 0 || self.cols() == 0 {
            return 0;
        }
        if self.is_sparse() {
            sparse::markowitz_rank(self.field(), self.cols(), self.sparse_rows())
        } else {
            let data = (0..self.rows()).flat_map(|r| self.dense_row(r)).collect();
            sparse::dense_rank(self.field(), self.cols(), data)
        }
    }

    /// Reduced echelon form with pivots chosen leftmost-first.
    pub fn column_echelon(&self) -> EchelonResult {
        echelon::column_echelon(self)
    }

    /// A verified nonzero `v` with `M·v = 0`, if the columns are dependent.
    pub fn kernel_witness(&self) -> Option<Vec<u64>> {
        echelon::kernel_witness(self)
    }

    /// One vector per free column of the echelon form; a basis of the kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        echelon::kernel_basis(self)
    }

    pub fn dense_rank_oracle(&self) -> Result<usize, LinalgError> {
        oracle::dense_rank_oracle(self)
    }
}
