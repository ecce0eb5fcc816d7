//! Rank by sparse Gaussian elimination with a Markowitz-style pivot choice.
//!
//! The pivot row is the active row with fewest entries; within it the pivot
//! column is the one touched by the fewest active rows. This keeps fill-in
//! low on Macaulay matrices, whose rows carry only as many entries as a
//! partial derivative has terms.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::matrix::SparseRow;
use crate::polyring::PrimeField;

/// `target - factor * pivot`, merged over sorted supports.
pub(crate) fn axpy_sparse(field: PrimeField, target: &[(u32, u64)], pivot: &[(u32, u64)], factor: u64) -> SparseRow {
    let m = field.shoup(factor);
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let tc = target.get(i).map_or(u32::MAX, |e| e.0);
        let pc = pivot.get(j).map_or(u32::MAX, |e| e.0);
        if tc < pc {
            out.push(target[i]);
            i += 1;
        } else if pc < tc {
            out.push((pc, field.neg(m.mul(pivot[j].1))));
            j += 1;
        } else {
            let v = field.sub(target[i].1, m.mul(pivot[j].1));
            if v != 0 {
                out.push((tc, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn markowitz_rank(field: PrimeField, cols: usize, rows: Vec<SparseRow>) -> usize {
    let mut rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut active = vec![true; rows.len()];
    let mut col_count = vec![0u32; cols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); cols];
    let mut heap = BinaryHeap::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_count[c as usize] += 1;
            col_rows[c as usize].push(r as u32);
        }
        heap.push(Reverse((row.len(), r)));
    }

    let mut rank = 0;
    while let Some(Reverse((len, r))) = heap.pop() {
        if !active[r] || rows[r].len() != len {
            continue;
        }
        active[r] = false;
        let pivot_row = std::mem::take(&mut rows[r]);
        for &(c, _) in &pivot_row {
            col_count[c as usize] -= 1;
        }
        let &(pc, pv) = pivot_row
            .iter()
            .min_by_key(|e| (col_count[e.0 as usize], e.0))
            .expect("active rows are nonempty");
        rank += 1;
        let inv = field.inv(pv);

        let mut touched = std::mem::take(&mut col_rows[pc as usize]);
        touched.sort_unstable();
        touched.dedup();
        for s in touched {
            let s = s as usize;
            if !active[s] {
                continue;
            }
            let Ok(pos) = rows[s].binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            let factor = field.mul(rows[s][pos].1, inv);
            let old = std::mem::take(&mut rows[s]);
            let new = axpy_sparse(field, &old, &pivot_row, factor);
            // column bookkeeping: diff old vs new supports
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < new.len() {
                let oc = old.get(i).map_or(u32::MAX, |e| e.0);
                let nc = new.get(j).map_or(u32::MAX, |e| e.0);
                if oc < nc {
                    col_count[oc as usize] -= 1;
                    i += 1;
                } else if nc < oc {
                    col_count[nc as usize] += 1;
                    col_rows[nc as usize].push(s as u32);
                    j += 1;
                } else {
                    i += 1;
                    j += 1;
                }
            }
            if new.is_empty() {
                active[s] = false;
            } else {
                heap.push(Reverse((new.len(), s)));
            }
            rows[s] = new;
        }
    }
    rank
}

/// Rank of a dense row-major matrix; rows are consumed in place.
pub(crate) fn dense_rank(field: PrimeField, cols: usize, mut data: Vec<u64>) -> usize {
    if cols == 0 {
        return 0;
    }
    let nrows = data.len() / cols;
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..nrows).find(|&r| data[r * cols + c] != 0) else {
            continue;
        };
        if pr != rank {
            for k in c..cols {
                data.swap(pr * cols + k, rank * cols + k);
            }
        }
        let inv = field.inv(data[rank * cols + c]);
        let (head, tail) = data.split_at_mut((rank + 1) * cols);
        let pivot = &mut head[rank * cols + c..rank * cols + cols];
        field.scale_slice(pivot, inv);
        for r in 0..nrows - rank - 1 {
            let row = &mut tail[r * cols + c..r * cols + cols];
            let factor = row[0];
            if factor != 0 {
                field.sub_scaled(row, pivot, factor);
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}
