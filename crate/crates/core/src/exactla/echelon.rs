use std::collections::HashMap;

use super::matrix::{FieldMatrix, SparseRow};
use super::sparse::axpy_sparse;
use crate::polyring::PrimeField;

/// Reduced row echelon data for a matrix under the leftmost-pivot rule.
///
/// The pivot columns are exactly the columns that are not linear
/// combinations of the columns to their left, so they do not depend on
/// the order in which rows were processed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonResult {
    pub rank: usize,
    /// Strictly increasing.
    pub pivot_columns: Vec<usize>,
    /// `rank × cols`, fully reduced, one row per pivot in pivot order.
    pub reduced: FieldMatrix,
}

impl EchelonResult {
    /// Columns that are not pivots, increasing.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.reduced.cols()];
        for &c in &self.pivot_columns {
            is_pivot[c] = true;
        }
        (0..self.reduced.cols()).filter(|&c| !is_pivot[c]).collect()
    }
}

pub(crate) fn column_echelon(m: &FieldMatrix) -> EchelonResult {
    let field = m.field();
    let mut basis: Vec<SparseRow> = Vec::new();
    let mut pivot_of: HashMap<u32, usize> = HashMap::new();
    for r in 0..m.rows() {
        let mut v = m.sparse_row(r);
        while let Some(&(lead, x)) = v.first() {
            match pivot_of.get(&lead) {
                Some(&b) => v = axpy_sparse(field, &v, &basis[b], x),
                None => {
                    let inv = field.inv(x);
                    for e in v.iter_mut() {
                        e.1 = field.mul(e.1, inv);
                    }
                    pivot_of.insert(lead, basis.len());
                    basis.push(v);
                    break;
                }
            }
        }
    }

    // back-substitution, largest pivot first so reducers are already reduced
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&b| std::cmp::Reverse(basis[b][0].0));
    for &b in &order {
        let lead = basis[b][0].0;
        loop {
            let hit = basis[b].iter().skip(1).find(|e| pivot_of.contains_key(&e.0)).copied();
            let Some((c, x)) = hit else { break };
            let reducer = basis[pivot_of[&c]].clone();
            basis[b] = axpy_sparse(field, &basis[b], &reducer, x);
        }
        debug_assert_eq!(basis[b][0], (lead, 1));
    }

    basis.sort_by_key(|row| row[0].0);
    let pivot_columns: Vec<usize> = basis.iter().map(|row| row[0].0 as usize).collect();
    EchelonResult {
        rank: basis.len(),
        pivot_columns,
        reduced: FieldMatrix::from_sparse_rows(m.cols(), field, basis),
    }
}

pub(crate) fn kernel_basis(m: &FieldMatrix) -> Vec<Vec<u64>> {
    let ech = column_echelon(m);
    let field = m.field();
    ech.free_columns()
        .into_iter()
        .map(|free| {
            let mut v = vec![0u64; m.cols()];
            v[free] = 1;
            for (k, &pc) in ech.pivot_columns.iter().enumerate() {
                v[pc] = field.neg(ech.reduced.get(k, free));
            }
            v
        })
        .collect()
}

pub(crate) fn kernel_witness(m: &FieldMatrix) -> Option<Vec<u64>> {
    let v = kernel_basis(m).into_iter().next()?;
    assert!(
        m.mul_vec(&v).iter().all(|&x| x == 0),
        "kernel witness failed verification"
    );
    Some(v)
}

/// Incrementally maintained reduced row echelon form over dense rows.
///
/// Rows are kept fully reduced against each other, so reducing a new vector
/// needs a single pass over the pivots.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    row_of_col: Vec<u32>,
}

impl RowEchelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        RowEchelon {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_col: vec![u32::MAX; cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_col[col] != u32::MAX
    }

    /// The reduced row whose pivot is `col`.
    pub fn pivot_row(&self, col: usize) -> Option<&[u64]> {
        let r = self.row_of_col[col];
        (r != u32::MAX).then(|| self.rows[r as usize].as_slice())
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    /// Reduces `v` in place against the current rows.
    pub fn reduce(&self, v: &mut [u64]) {
        debug_assert_eq!(v.len(), self.cols);
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if x != 0 {
                self.field.sub_scaled(&mut v[c..], &row[c..], x);
            }
        }
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn push(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        let Some(j) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(v[j]);
        self.field.scale_slice(&mut v[j..], inv);
        for row in self.rows.iter_mut() {
            let x = row[j];
            if x != 0 {
                self.field.sub_scaled(&mut row[j..], &v[j..], x);
            }
        }
        self.row_of_col[j] = self.rows.len() as u32;
        self.pivots.push(j);
        self.rows.push(v);
        true
    }
}
