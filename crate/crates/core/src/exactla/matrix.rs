use crate::polyring::PrimeField;

/// Sparse row: `(column, value)` pairs, strictly increasing columns, no zeros.
pub type SparseRow = Vec<(u32, u64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Storage {
    Dense(Vec<u64>),
    Sparse(Vec<SparseRow>),
}

/// A matrix over a prime field, stored densely (row-major) or as sparse rows.
#[derive(Clone, Debug)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    storage: Storage,
}

impl PartialEq for FieldMatrix {
    /// Equality of the represented matrices, regardless of storage.
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.field == other.field
            && (0..self.rows).all(|r| self.sparse_row(r) == other.sparse_row(r))
    }
}

impl Eq for FieldMatrix {}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize, field: PrimeField) -> Self {
        FieldMatrix {
            rows,
            cols,
            field,
            storage: Storage::Sparse(vec![Vec::new(); rows]),
        }
    }

    pub fn identity(size: usize, field: PrimeField) -> Self {
        let rows = (0..size).map(|i| vec![(i as u32, 1u64)]).collect();
        FieldMatrix {
            rows: size,
            cols: size,
            field,
            storage: Storage::Sparse(rows),
        }
    }

    /// Row-major dense data; entries are reduced modulo the field.
    pub fn from_dense(rows: usize, cols: usize, field: PrimeField, mut data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols, "dense data has wrong length");
        for x in data.iter_mut() {
            *x = field.reduce_u64(*x);
        }
        FieldMatrix {
            rows,
            cols,
            field,
            storage: Storage::Dense(data),
        }
    }

    /// Sparse rows in any order; repeated columns are summed and zeros dropped.
    pub fn from_sparse_rows(cols: usize, field: PrimeField, rows: Vec<Vec<(u32, u64)>>) -> Self {
        let rows: Vec<SparseRow> = rows.into_iter().map(|r| normalize_row(r, cols, field)).collect();
        FieldMatrix {
            rows: rows.len(),
            cols,
            field,
            storage: Storage::Sparse(rows),
        }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        field: PrimeField,
        triplets: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Self {
        let mut buckets = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows, "row {r} out of bounds");
            buckets[r].push((c as u32, v));
        }
        let mut m = Self::from_sparse_rows(cols, field, buckets);
        m.rows = rows;
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(d) => d.iter().filter(|&&x| x != 0).count(),
            Storage::Sparse(rows) => rows.iter().map(Vec::len).sum(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        assert!(r < self.rows && c < self.cols);
        match &self.storage {
            Storage::Dense(d) => d[r * self.cols + c],
            Storage::Sparse(rows) => rows[r]
                .binary_search_by_key(&(c as u32), |e| e.0)
                .map(|i| rows[r][i].1)
                .unwrap_or(0),
        }
    }

    pub fn sparse_row(&self, r: usize) -> SparseRow {
        match &self.storage {
            Storage::Dense(d) => d[r * self.cols..(r + 1) * self.cols]
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(c, &v)| (c as u32, v))
                .collect(),
            Storage::Sparse(rows) => rows[r].clone(),
        }
    }

    pub fn dense_row(&self, r: usize) -> Vec<u64> {
        match &self.storage {
            Storage::Dense(d) => d[r * self.cols..(r + 1) * self.cols].to_vec(),
            Storage::Sparse(rows) => {
                let mut out = vec![0; self.cols];
                for &(c, v) in &rows[r] {
                    out[c as usize] = v;
                }
                out
            }
        }
    }

    pub fn to_sparse(&self) -> FieldMatrix {
        FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            storage: Storage::Sparse((0..self.rows).map(|r| self.sparse_row(r)).collect()),
        }
    }

    pub fn to_dense(&self) -> FieldMatrix {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for r in 0..self.rows {
            data.extend(self.dense_row(r));
        }
        FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            storage: Storage::Dense(data),
        }
    }

    pub fn sparse_rows(&self) -> Vec<SparseRow> {
        (0..self.rows).map(|r| self.sparse_row(r)).collect()
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut buckets = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            for (c, v) in self.sparse_row(r) {
                buckets[c as usize].push((r as u32, v));
            }
        }
        FieldMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            storage: Storage::Sparse(buckets),
        }
    }

    /// `M·v` for a column vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.sparse_row(r)
                    .iter()
                    .fold(0, |acc, &(c, x)| f.add(acc, f.mul(x, v[c as usize])))
            })
            .collect()
    }

    /// Stacks the rows of `other` below `self`.
    pub fn vstack(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.field, other.field);
        let mut rows = self.sparse_rows();
        rows.extend(other.sparse_rows());
        FieldMatrix {
            rows: rows.len(),
            cols: self.cols,
            field: self.field,
            storage: Storage::Sparse(rows),
        }
    }
}

fn normalize_row(mut row: Vec<(u32, u64)>, cols: usize, field: PrimeField) -> SparseRow {
    row.sort_unstable_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        assert!((c as usize) < cols, "column {c} out of bounds ({cols})");
        let v = field.reduce_u64(v);
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = field.add(last.1, v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn storage_independent_equality() {
        let f = PrimeField::new(7).unwrap();
        let d = FieldMatrix::from_dense(2, 3, f, vec![1, 0, 8, 0, 0, 6]);
        let s = FieldMatrix::from_triplets(2, 3, f, [(0, 0, 1), (0, 2, 1), (1, 2, 3), (1, 2, 3)]);
        assert_eq!(d, s);
        assert_eq!(s.get(1, 2), 6);
        assert_eq!(d.transpose().transpose(), s);
        assert_eq!(s.mul_vec(&[1, 1, 1]), vec![2, 6]);
        assert_eq!(s.nnz(), 3);
    }
}
