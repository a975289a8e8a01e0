//! Row-reduction and null spaces over the small fields of [`crate::field`].
//!
//! Everything works on dense `Vec<Felt>` rows; the matrices involved are at
//! most a handful of rows by n <= 8 columns.

use crate::field::{Felt, FieldTables, ONE, ZERO};

/// Reduced row echelon form: pivots equal one, zeros above and below each
/// pivot, zero rows dropped. The result is the canonical representative of
/// the row space.
pub fn rref(f: &FieldTables, rows: &[Vec<Felt>]) -> Vec<Vec<Felt>> {
    let mut m: Vec<Vec<Felt>> = rows.to_vec();
    if m.is_empty() {
        return m;
    }
    let ncols = m[0].len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(r) = (pivot_row..m.len()).find(|&r| m[r][col] != ZERO) else {
            continue;
        };
        m.swap(pivot_row, r);
        let scale = f.inv(m[pivot_row][col]);
        for c in col..ncols {
            m[pivot_row][c] = f.mul(m[pivot_row][c], scale);
        }
        for r in 0..m.len() {
            if r != pivot_row && m[r][col] != ZERO {
                let factor = m[r][col];
                for c in col..ncols {
                    let sub = f.mul(factor, m[pivot_row][c]);
                    m[r][c] = f.sub(m[r][c], sub);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m
}

pub fn rank(f: &FieldTables, rows: &[Vec<Felt>]) -> usize {
    rref(f, rows).len()
}

/// Basis (in RREF) of the solution space of `rows * x = 0` in GF(q)^n.
pub fn null_space(f: &FieldTables, rows: &[Vec<Felt>], n: usize) -> Vec<Vec<Felt>> {
    let reduced = rref(f, rows);
    let mut pivot_cols = Vec::new();
    for row in &reduced {
        let col = row.iter().position(|&c| c != ZERO).expect("nonzero row");
        pivot_cols.push(col);
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![ZERO; n];
        v[free] = ONE;
        for (row, &pc) in reduced.iter().zip(&pivot_cols) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(v);
    }
    rref(f, &basis)
}

/// Dot product sum_i a_i b_i.
pub fn dot(f: &FieldTables, a: &[Felt], b: &[Felt]) -> Felt {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = ZERO;
    for (&x, &y) in a.iter().zip(b) {
        acc = f.add(acc, f.mul(x, y));
    }
    acc
}

/// Matrix-vector product `m * v` with `m` given by rows.
pub fn mat_vec(f: &FieldTables, m: &[Vec<Felt>], v: &[Felt]) -> Vec<Felt> {
    m.iter().map(|row| dot(f, row, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn felts(v: &[u8]) -> Vec<Felt> {
        v.iter().map(|&x| Felt(x)).collect()
    }

    #[test]
    fn rref_canonicalizes_gf2() {
        let f = FieldTables::new(2, 1).unwrap();
        let a = vec![felts(&[1, 1, 0]), felts(&[0, 1, 1])];
        let b = vec![felts(&[1, 0, 1]), felts(&[1, 1, 0])];
        assert_eq!(rref(&f, &a), rref(&f, &b));
        assert_eq!(rank(&f, &a), 2);
    }

    #[test]
    fn null_space_dimension_and_membership() {
        let f = FieldTables::new(3, 1).unwrap();
        let m = vec![felts(&[1, 2, 0, 1]), felts(&[0, 1, 1, 2])];
        let ns = null_space(&f, &m, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                assert_eq!(dot(&f, row, v), ZERO);
            }
        }
    }

    #[test]
    fn null_space_of_full_rank_is_empty() {
        let f = FieldTables::new(5, 1).unwrap();
        let m = vec![felts(&[1, 0]), felts(&[0, 1])];
        assert!(null_space(&f, &m, 2).is_empty());
    }
}
