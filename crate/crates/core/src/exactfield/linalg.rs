//! Exact Gaussian elimination over any [`Field`].

use super::numfield::Field;

/// Solution set of an affine system `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution<E> {
    pub particular: Vec<E>,
    /// Basis of the homogeneous solution space.
    pub basis: Vec<Vec<E>>,
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(field: &F, rows: &mut [Vec<F::Elem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i == r || field.is_zero(&rows[i][c]) {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in 0..rows[i].len() {
                let delta = field.mul(&factor, &rows[r][j]);
                rows[i][j] = field.sub(&rows[i][j], &delta);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, a: &[Vec<F::Elem>], ncols: usize) -> usize {
    let mut rows = a.to_vec();
    rref(field, &mut rows, ncols).len()
}

/// Solves `A x = b`; `None` when inconsistent.
pub fn solve_affine<F: Field>(
    field: &F,
    a: &[Vec<F::Elem>],
    b: &[F::Elem],
    ncols: usize,
) -> Option<AffineSolution<F::Elem>> {
    assert_eq!(a.len(), b.len());
    let mut rows: Vec<Vec<F::Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), ncols);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut rows, ncols);
    // inconsistent if a zero row has nonzero rhs
    for row in rows.iter().skip(pivots.len()) {
        if !field.is_zero(&row[ncols]) {
            return None;
        }
    }
    let mut particular = vec![field.zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = field.neg(&rows[r][f]);
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, basis })
}

pub fn mat_vec<F: Field>(field: &F, a: &[Vec<F::Elem>], x: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|row| row.iter().zip(x).fold(field.zero(), |acc, (p, q)| field.add(&acc, &field.mul(p, q)))).collect()
}
