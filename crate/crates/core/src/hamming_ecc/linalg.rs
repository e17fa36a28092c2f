//! Dense Gaussian elimination over a [`Field`].

use crate::gf::{Field, Symbol};

/// Row-reduces `rows` in place to reduced row echelon form and returns the
/// pivot column of each nonzero row.
pub(crate) fn rref(field: &Field, rows: &mut [Vec<Symbol>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in c..ncols {
                    let t = field.mul(factor, rows[r][j]);
                    rows[i][j] = field.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(field: &Field, rows: &[Vec<Symbol>]) -> usize {
    let mut work = rows.to_vec();
    rref(field, &mut work).len()
}

/// Inverse of a square matrix, or `None` if singular.
pub(crate) fn invert(field: &Field, mat: &[Vec<Symbol>]) -> Option<Vec<Vec<Symbol>>> {
    let n = mat.len();
    let mut aug: Vec<Vec<Symbol>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| Symbol::from(i == j)));
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Some solution of `a * u = b`, with free variables set to zero.
pub(crate) fn solve(field: &Field, a: &[Vec<Symbol>], b: &[Symbol]) -> Option<Vec<Symbol>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Symbol>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut u = vec![0; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        u[c] = aug[r][ncols];
    }
    Some(u)
}

/// `x * G` for a row vector `x`.
pub(crate) fn vec_mat(field: &Field, x: &[Symbol], g: &[Vec<Symbol>]) -> Vec<Symbol> {
    let n = g.first().map_or(0, Vec::len);
    let mut y = vec![0; n];
    for (&xi, row) in x.iter().zip(g) {
        if xi == 0 {
            continue;
        }
        for (yj, &gij) in y.iter_mut().zip(row) {
            *yj = field.add(*yj, field.mul(xi, gij));
        }
    }
    y
}

pub(crate) fn mat_mul(field: &Field, a: &[Vec<Symbol>], b: &[Vec<Symbol>]) -> Vec<Vec<Symbol>> {
    a.iter().map(|row| vec_mat(field, row, b)).collect()
}
