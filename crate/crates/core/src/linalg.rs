//! Exact Gaussian elimination over the rationals: rank, nullspace, inverse.

use crate::scalar::Rat;

/// Reduces `rows` to row echelon form in place; returns the pivot columns.
pub fn row_reduce(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot nonzero");
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.mul(&inv);
            }
        }
        for k in 0..nrows {
            if k != r && !rows[k][c].is_zero() {
                let factor = rows[k][c].clone();
                for j in 0..ncols {
                    if !rows[r][j].is_zero() {
                        let delta = factor.mul(&rows[r][j]);
                        rows[k][j] = rows[k][j].sub(&delta);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    pivots
}

pub fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    row_reduce(&mut rows).len()
}

/// Basis of the right nullspace of the matrix (rows are equations).
pub fn nullspace(mut rows: Vec<Vec<Rat>>, ncols: usize) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        rows.push(vec![Rat::zero(); ncols]);
    }
    let pivots = row_reduce(&mut rows);
    let pivot_row: std::collections::BTreeMap<usize, usize> =
        pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_row.contains_key(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (&pc, &pr) in &pivot_row {
            v[pc] = rows[pr][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix; `None` when singular.
pub fn inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|c| if c == r { Rat::one() } else { Rat::zero() }));
            v
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Matrix-vector product.
pub fn apply(m: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| {
            let mut acc = Rat::zero();
            for (a, b) in row.iter().zip(x) {
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
        .collect()
}
