use serde::Serialize;

use super::simplex::{maximize, LpOutcome};
use crate::arrangement::{BMatrix, IncidenceLattice};
use crate::exactfield::linalg::solve_affine;
use crate::exactfield::{Rational, Rationals};

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    /// Skip the zero-locus analysis of the Bogomolov-Gieseker form.
    pub skip_bg: bool,
}

/// `value(t) = constant + linear.t + t^T quadratic t` in the free parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticForm {
    pub constant: Rational,
    pub linear: Vec<Rational>,
    /// Symmetric matrix.
    pub quadratic: Vec<Vec<Rational>>,
}

impl QuadraticForm {
    pub fn is_identically_zero(&self) -> bool {
        self.constant.is_zero()
            && self.linear.iter().all(Rational::is_zero)
            && self.quadratic.iter().flatten().all(Rational::is_zero)
    }

    pub fn eval(&self, t: &[Rational]) -> Rational {
        let mut v = self.constant.clone();
        for (i, ti) in t.iter().enumerate() {
            v += &self.linear[i] * ti;
            for (j, tj) in t.iter().enumerate() {
                v += &self.quadratic[i][j] * ti * tj;
            }
        }
        v
    }
}

/// A root of a univariate quadratic, exact when rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    pub rational: Option<Rational>,
    /// `(a + s sqrt(D)) / c` form, always present.
    pub symbolic: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BgZeroReport {
    IdenticallyZero,
    /// No free parameters, or the form is a nonzero constant.
    Constant {
        value: Rational,
    },
    Roots {
        roots: Vec<Root>,
    },
    NoRealRoots {
        discriminant: Rational,
    },
    /// More than one free parameter and not identically zero: only the form is reported.
    FormOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSolveReport {
    /// `None` when the linear system is inconsistent.
    pub dimension: Option<usize>,
    pub particular: Option<Vec<Rational>>,
    pub basis: Vec<Vec<Rational>>,
    /// Largest uniform slack in the open constraints; the open region is nonempty iff positive.
    pub slack_optimum: Option<Rational>,
    pub interior_point: Option<Vec<Rational>>,
    pub bg_on_space: Option<QuadraticForm>,
    pub bg_zero: Option<BgZeroReport>,
}

impl WeightSolveReport {
    pub fn interior_feasible(&self) -> bool {
        self.interior_point.is_some()
    }
}

/// Solves `sum_k B_jk (beta_k - 1) = -1` for all `j` and `sum_k (beta_k - 1) = -3` exactly,
/// decides whether the open region `0 < beta < 1`, point sums `> -2` meets the solution
/// space, and restricts the Bogomolov-Gieseker quantity to it.
pub fn solve_weights(lat: &IncidenceLattice, b: &BMatrix, options: &SolveOptions) -> WeightSolveReport {
    let n = lat.n;
    let one = Rational::one();
    // unknowns beta; rows: B beta = B 1 - 1, 1.beta = n - 3
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for j in 0..n {
        let row: Vec<Rational> = (0..n).map(|k| Rational::from(b.get(j, k))).collect();
        rhs.push(Rational::from(b.row_sum(j)) - &one);
        rows.push(row);
    }
    rows.push(vec![one.clone(); n]);
    rhs.push(Rational::from(n as i64 - 3));

    let Some(sol) = solve_affine(&Rationals, &rows, &rhs, n) else {
        return WeightSolveReport {
            dimension: None,
            particular: None,
            basis: vec![],
            slack_optimum: None,
            interior_point: None,
            bg_on_space: None,
            bg_zero: None,
        };
    };
    let (slack, interior) = open_region(lat, &sol.particular, &sol.basis);
    let (form, zero) = if options.skip_bg {
        (None, None)
    } else {
        let form = bg_form(lat, b, &sol.particular, &sol.basis);
        let zero = zero_locus(&form);
        (Some(form), Some(zero))
    };
    WeightSolveReport {
        dimension: Some(sol.basis.len()),
        particular: Some(sol.particular),
        basis: sol.basis,
        slack_optimum: slack,
        interior_point: interior,
        bg_on_space: form,
        bg_zero: zero,
    }
}

fn affine_point(particular: &[Rational], basis: &[Vec<Rational>], t: &[Rational]) -> Vec<Rational> {
    let mut beta = particular.to_vec();
    for (v, ti) in basis.iter().zip(t) {
        for (b, vi) in beta.iter_mut().zip(v) {
            *b += vi * ti;
        }
    }
    beta
}

/// Maximizes `s` subject to `beta_j >= s`, `1 - beta_j >= s`, `point_sum_i + 2 >= s`, `s <= 1`
/// over the affine solution space.
fn open_region(
    lat: &IncidenceLattice,
    particular: &[Rational],
    basis: &[Vec<Rational>],
) -> (Option<Rational>, Option<Vec<Rational>>) {
    let n = lat.n;
    let d = basis.len();
    let one = Rational::one();
    // variables: t+ (d), t- (d), s+, s-
    let nv = 2 * d + 2;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let coeff_row = |coeffs: &[Rational], s_coeff: Rational| {
        let mut row = vec![Rational::zero(); nv];
        for l in 0..d {
            row[l] = coeffs[l].clone();
            row[d + l] = -&coeffs[l];
        }
        row[2 * d] = s_coeff.clone();
        row[2 * d + 1] = -s_coeff;
        row
    };
    for j in 0..n {
        let dir: Vec<Rational> = basis.iter().map(|v| v[j].clone()).collect();
        // -beta_j + s <= 0
        let neg: Vec<Rational> = dir.iter().map(|x| -x).collect();
        a.push(coeff_row(&neg, one.clone()));
        b.push(particular[j].clone());
        // beta_j + s <= 1
        a.push(coeff_row(&dir, one.clone()));
        b.push(&one - &particular[j]);
    }
    for i in lat.multiple_points() {
        let lines = &lat.points[i].lines;
        let dir: Vec<Rational> = (0..d).map(|l| lines.iter().map(|&j| &basis[l][j]).sum()).collect();
        let base: Rational = lines.iter().map(|&j| &particular[j] - &one).sum();
        // -(base + dir.t) + s <= 2  <=>  point_sum + 2 >= s
        let neg: Vec<Rational> = dir.iter().map(|x| -x).collect();
        a.push(coeff_row(&neg, one.clone()));
        b.push(base + Rational::from(2));
    }
    a.push(coeff_row(&vec![Rational::zero(); d], one.clone()));
    b.push(one.clone());
    let mut c = vec![Rational::zero(); nv];
    c[2 * d] = one.clone();
    c[2 * d + 1] = -one;
    match maximize(&c, &a, &b) {
        LpOutcome::Optimal { value, x } => {
            let t: Vec<Rational> = (0..d).map(|l| &x[l] - &x[d + l]).collect();
            let interior = value.is_positive().then(|| affine_point(particular, basis, &t));
            (Some(value), interior)
        }
        // the region is bounded in t and s <= 1, so neither case occurs for valid input
        LpOutcome::Infeasible | LpOutcome::Unbounded => (None, None),
    }
}

/// The quantity as a quadratic in the weight defects `a = beta - 1`:
/// `a^T M a - 3/2` with `M_jk = m_jk / 4 - B_jj delta_jk / 2`, where `m_jk` counts
/// points of multiplicity >= 3 on both lines.
fn defect_matrix(lat: &IncidenceLattice, b: &BMatrix) -> Vec<Vec<Rational>> {
    let n = lat.n;
    let quarter = Rational::new(1, 4);
    let mut m = vec![vec![Rational::zero(); n]; n];
    for i in lat.multiple_points() {
        for &j in &lat.points[i].lines {
            for &k in &lat.points[i].lines {
                m[j][k] += &quarter;
            }
        }
    }
    for (j, row) in m.iter_mut().enumerate() {
        row[j] -= Rational::from(b.get(j, j)) * Rational::new(1, 2);
    }
    m
}

fn bg_form(lat: &IncidenceLattice, b: &BMatrix, particular: &[Rational], basis: &[Vec<Rational>]) -> QuadraticForm {
    let m = defect_matrix(lat, b);
    let n = lat.n;
    let a0: Vec<Rational> = particular.iter().map(|x| x - Rational::one()).collect();
    let m_times =
        |v: &[Rational]| -> Vec<Rational> { (0..n).map(|j| m[j].iter().zip(v).map(|(p, q)| p * q).sum()).collect() };
    let dot = |u: &[Rational], v: &[Rational]| -> Rational { u.iter().zip(v).map(|(p, q)| p * q).sum() };
    let ma0 = m_times(&a0);
    let constant = dot(&a0, &ma0) - Rational::new(3, 2);
    let linear = basis.iter().map(|v| Rational::from(2) * dot(v, &ma0)).collect();
    let mb: Vec<Vec<Rational>> = basis.iter().map(|v| m_times(v)).collect();
    let quadratic = basis.iter().map(|u| mb.iter().map(|mv| dot(u, mv)).collect()).collect();
    QuadraticForm { constant, linear, quadratic }
}

fn zero_locus(form: &QuadraticForm) -> BgZeroReport {
    if form.is_identically_zero() {
        return BgZeroReport::IdenticallyZero;
    }
    match form.linear.len() {
        0 => BgZeroReport::Constant { value: form.constant.clone() },
        1 => solve_quadratic(&form.quadratic[0][0], &form.linear[0], &form.constant),
        _ => BgZeroReport::FormOnly,
    }
}

/// Real roots of `qa t^2 + lb t + c = 0`.
pub fn solve_quadratic(qa: &Rational, lb: &Rational, c: &Rational) -> BgZeroReport {
    if qa.is_zero() {
        if lb.is_zero() {
            return BgZeroReport::Constant { value: c.clone() };
        }
        let r = -c / lb;
        return BgZeroReport::Roots { roots: vec![Root { symbolic: r.to_string(), rational: Some(r) }] };
    }
    let disc = lb * lb - Rational::from(4) * qa * c;
    if disc.is_negative() {
        return BgZeroReport::NoRealRoots { discriminant: disc };
    }
    let denom = Rational::from(2) * qa;
    let minus_b = -lb;
    if disc.is_zero() {
        let r = &minus_b / &denom;
        return BgZeroReport::Roots { roots: vec![Root { symbolic: r.to_string(), rational: Some(r) }] };
    }
    let roots = match disc.sqrt_exact() {
        Some(s) => {
            let mut rs = vec![(&minus_b - &s) / &denom, (&minus_b + &s) / &denom];
            rs.sort();
            rs.into_iter().map(|r| Root { symbolic: r.to_string(), rational: Some(r) }).collect()
        }
        None => ["-", "+"]
            .iter()
            .map(|sign| Root { rational: None, symbolic: format!("({minus_b} {sign} sqrt({disc})) / {denom}") })
            .collect(),
    };
    BgZeroReport::Roots { roots }
}
