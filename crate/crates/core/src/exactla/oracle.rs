use super::matrix::FieldMatrix;
use super::LinalgError;

/// Largest `rows * cols` the dense oracle accepts.
pub const ORACLE_GUARD: usize = 10_000_000;

/// Textbook Gaussian elimination on a dense copy: partial search for the
/// first nonzero entry in each column, plain `%` arithmetic, no sparsity or
/// precomputed multipliers. Independent of the rank paths it checks.
pub(crate) fn dense_rank_oracle(m: &FieldMatrix) -> Result<usize, LinalgError> {
    let size = m.rows().saturating_mul(m.cols());
    if size > ORACLE_GUARD {
        return Err(LinalgError::SizeGuardExceeded {
            rows: m.rows(),
            cols: m.cols(),
            limit: ORACLE_GUARD,
        });
    }
    let p = m.field().modulus() as u128;
    let mut a: Vec<Vec<u64>> = (0..m.rows()).map(|r| m.dense_row(r)).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(pr) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = m.field().inv(a[rank][c]) as u128;
        for r in rank + 1..a.len() {
            if a[r][c] == 0 {
                continue;
            }
            let factor = (a[r][c] as u128 * inv) % p;
            for k in c..m.cols() {
                let sub = (factor * a[rank][k] as u128) % p;
                a[r][k] = ((a[r][k] as u128 + p - sub) % p) as u64;
            }
        }
        rank += 1;
    }
    Ok(rank)
}
