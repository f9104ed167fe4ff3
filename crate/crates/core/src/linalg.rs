//! Exact rank of sparse matrices over the coefficient field.

use crate::field::Coeff;

/// Pieces with at most this many rows and columns are eliminated densely.
pub const DENSE_LIMIT: usize = 512;

/// A sparse row: `(column, nonzero coefficient)` sorted by column.
pub type SparseRow = Vec<(usize, Coeff)>;

pub fn rank(rows: Vec<SparseRow>, ncols: usize) -> usize {
    if rows.len() <= DENSE_LIMIT && ncols <= DENSE_LIMIT {
        dense_rank(rows, ncols)
    } else {
        sparse_rank(rows, ncols)
    }
}

pub fn dense_rank(rows: Vec<SparseRow>, ncols: usize) -> usize {
    let Some(field) = rows.iter().flatten().map(|(_, c)| c.field()).next() else {
        return 0;
    };
    let zero = field.zero();
    let mut m: Vec<Vec<Coeff>> = rows
        .into_iter()
        .map(|r| {
            let mut dense = vec![zero.clone(); ncols];
            for (j, c) in r {
                dense[j] = c;
            }
            dense
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].inv();
        let pivot: Vec<Coeff> = m[rank].iter().map(|c| c * &inv).collect();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..ncols {
                if !pivot[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot[j]);
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

pub fn sparse_rank(rows: Vec<SparseRow>, ncols: usize) -> usize {
    // pivots[c] is a monic row whose leading column is c
    let mut pivots: Vec<Option<SparseRow>> = vec![None; ncols];
    let mut rank = 0;
    let mut rows = rows;
    // short rows first keeps fill-in down
    rows.sort_by_key(|r| r.len());
    for mut row in rows {
        while let Some((lead, c)) = row.first().cloned() {
            match &pivots[lead] {
                Some(p) => row = axpy(&row, &(-&c), p),
                None => {
                    let inv = c.inv();
                    pivots[lead] = Some(row.iter().map(|(j, d)| (*j, d * &inv)).collect());
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `a + f*b` for sorted sparse rows.
fn axpy(a: &SparseRow, f: &Coeff, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let s = &a[i].1 + &(f * &b[j].1);
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use proptest::prelude::*;

    fn to_sparse(f: FieldSpec, m: &[Vec<i64>]) -> Vec<SparseRow> {
        m.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, f.from_i64(v)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn small_ranks() {
        let q = FieldSpec::Rationals;
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(to_sparse(q, &m), 3), 2);
        assert_eq!(rank(Vec::new(), 4), 0);
        // singular mod 3 only
        let m = vec![vec![1, 1], vec![1, 4]];
        assert_eq!(rank(to_sparse(q, &m), 2), 2);
        assert_eq!(rank(to_sparse(FieldSpec::PrimeField(3), &m), 2), 1);
    }

    proptest! {
        #[test]
        fn dense_and_sparse_agree(m in proptest::collection::vec(proptest::collection::vec(-2i64..3, 6), 0..8)) {
            for f in [FieldSpec::Rationals, FieldSpec::PrimeField(5)] {
                let rows = to_sparse(f, &m);
                prop_assert_eq!(dense_rank(rows.clone(), 6), sparse_rank(rows, 6));
            }
        }
    }
}
