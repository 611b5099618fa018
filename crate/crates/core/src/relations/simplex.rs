//! Dense two-phase tableau simplex over Q with Bland's rule.
//!
//! Solves `maximize c.x  subject to  A x <= b, x >= 0`.

use crate::exactfield::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip().expect("pivot element is nonzero");
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs of `maximize obj.x` for the current basis.
    fn reduced_costs(&self, obj: &[Rational], allowed: &[bool]) -> Vec<Option<Rational>> {
        (0..self.ncols)
            .map(|j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return None;
                }
                let z: Rational = self.rows.iter().zip(&self.basis).map(|(row, &b)| &obj[b] * &row[j]).sum();
                Some(&obj[j] - z)
            })
            .collect()
    }

    /// Runs simplex iterations for `maximize obj.x`; returns false if unbounded.
    fn optimize(&mut self, obj: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let costs = self.reduced_costs(obj, allowed);
            // Bland: lowest-index improving column
            let Some(enter) = costs.iter().position(|c| c.as_ref().is_some_and(Rational::is_positive)) else {
                return true;
            };
            let rhs = self.ncols;
            let mut best: Option<(Rational, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let candidate = (ratio, self.basis[i], i);
                best = match best {
                    None => Some(candidate),
                    Some(b) if (&candidate.0, candidate.1) < (&b.0, b.1) => Some(candidate),
                    keep => keep,
                };
            }
            match best {
                None => return false,
                Some((_, _, r)) => self.pivot(r, enter),
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rows[i][self.ncols].clone();
            }
        }
        x
    }
}

pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m);
    // columns: x (n) | slack (m) | artificial (m) | rhs
    let ncols = n + 2 * m;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(a[i].len(), n);
        let mut row = vec![Rational::zero(); ncols + 1];
        let flip = b[i].is_negative();
        let sign = if flip { -Rational::one() } else { Rational::one() };
        for j in 0..n {
            row[j] = &a[i][j] * &sign;
        }
        row[n + i] = sign.clone();
        row[ncols] = &b[i] * &sign;
        if flip {
            row[n + m + i] = Rational::one();
            basis.push(n + m + i);
        } else {
            basis.push(n + i);
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, ncols };

    // Phase 1: maximize -sum(artificials)
    let mut phase1 = vec![Rational::zero(); ncols];
    for c in &mut phase1[(n + m)..] {
        *c = -Rational::one();
    }
    let all = vec![true; ncols];
    t.optimize(&phase1, &all);
    let infeasibility: Rational =
        t.basis.iter().enumerate().filter(|(_, &bv)| bv >= n + m).map(|(i, _)| t.rows[i][ncols].clone()).sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n + m {
            if let Some(j) = (0..n + m).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    // Phase 2 on original objective, artificials barred from entering.
    let mut obj = vec![Rational::zero(); ncols];
    obj[..n].clone_from_slice(c);
    let allowed: Vec<bool> = (0..ncols).map(|j| j < n + m).collect();
    if !t.optimize(&obj, &allowed) {
        return LpOutcome::Unbounded;
    }
    let x = t.solution(n);
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { value, x }
}
