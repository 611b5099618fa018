use serde::Serialize;

use super::lattice::IncidenceLattice;
use crate::exactfield::Rational;

/// Double-point incidence matrix of a line arrangement.
///
/// Off the diagonal `b[j][k] = 1` iff `L_j` and `L_k` meet in a double point.
/// On the diagonal `b[j][j] = -1 + #{points of multiplicity >= 3 on L_j}`, i.e.
/// minus the self-intersection of the proper transform after blowing up those points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BMatrix {
    pub b: Vec<Vec<i64>>,
}

impl BMatrix {
    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn get(&self, j: usize, k: usize) -> i64 {
        self.b[j][k]
    }

    pub fn row_sum(&self, j: usize) -> i64 {
        self.b[j].iter().sum()
    }

    pub fn to_rational(&self) -> Vec<Vec<Rational>> {
        self.b.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()
    }
}

pub fn b_matrix(lat: &IncidenceLattice) -> BMatrix {
    let n = lat.n;
    let mut b = vec![vec![0i64; n]; n];
    for p in &lat.points {
        if p.multiplicity == 2 {
            let (j, k) = (p.lines[0], p.lines[1]);
            b[j][k] = 1;
            b[k][j] = 1;
        } else {
            for &j in &p.lines {
                b[j][j] += 1;
            }
        }
    }
    for (j, row) in b.iter_mut().enumerate() {
        row[j] -= 1;
    }
    BMatrix { b }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetricReport {
    pub is_symmetric: bool,
    pub m: Option<usize>,
    /// Number of lattice points on each line.
    pub per_line_counts: Vec<usize>,
}

/// `3m` lines, each meeting the others in exactly `m + 1` points.
pub fn symmetric_check(lat: &IncidenceLattice) -> SymmetricReport {
    let per_line_counts: Vec<usize> = lat.per_line.iter().map(Vec::len).collect();
    let m = lat.n.is_multiple_of(3).then_some(lat.n / 3);
    let is_symmetric = m.is_some_and(|m| per_line_counts.iter().all(|&c| c == m + 1));
    SymmetricReport { is_symmetric, m: m.filter(|_| is_symmetric), per_line_counts }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HirzebruchReport {
    pub n_lines: usize,
    pub sum_mu: i64,
    pub sum_mu_sq: i64,
    /// `N^2 / 3 + N`.
    pub bound: Rational,
    /// `sum mu^2 - (N^2 - N + sum mu)`, zero for every arrangement.
    pub identity_residual: Rational,
    pub max_mult: usize,
    /// Every multiplicity is below `2N/3`.
    pub applicable: bool,
    /// `sum mu >= bound`, reported only when applicable.
    pub inequality_holds: Option<bool>,
    pub equality: bool,
    /// At equality the arrangement must be symmetric with `m = N/3`.
    pub equality_symmetric: Option<bool>,
}

pub fn hirzebruch_check(lat: &IncidenceLattice) -> HirzebruchReport {
    let n = lat.n as i64;
    let sum_mu: i64 = lat.points.iter().map(|p| p.multiplicity as i64).sum();
    let sum_mu_sq: i64 = lat.points.iter().map(|p| (p.multiplicity as i64).pow(2)).sum();
    let bound = Rational::new(n * n, 3) + Rational::from(n);
    let identity_residual = Rational::from(sum_mu_sq - (n * n - n + sum_mu));
    let max_mult = lat.max_multiplicity();
    // max_mult < 2N/3  <=>  3 max_mult < 2N
    let applicable = 3 * max_mult < 2 * lat.n;
    let sum = Rational::from(sum_mu);
    let inequality_holds = applicable.then(|| sum >= bound);
    let equality = applicable && sum == bound;
    let equality_symmetric = equality.then(|| {
        let s = symmetric_check(lat);
        s.is_symmetric && s.m == Some(lat.n / 3)
    });
    HirzebruchReport {
        n_lines: lat.n,
        sum_mu,
        sum_mu_sq,
        bound,
        identity_residual,
        max_mult,
        applicable,
        inequality_holds,
        equality,
        equality_symmetric,
    }
}
