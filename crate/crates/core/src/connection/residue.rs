use serde::{Deserialize, Serialize};

use super::poly::{BivariatePoly, MatrixPoly, VectorPoly};
use crate::error::{Error, Result};
use crate::exactfield::linalg::solve_affine;
use crate::exactfield::{Field, FieldElement, FieldSpec, Rational};

/// The line `s z + t w = 0` through the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OriginLine {
    pub s: FieldElement,
    pub t: FieldElement,
}

impl OriginLine {
    pub fn rational(s: Rational, t: Rational) -> Self {
        let f = FieldSpec::rationals();
        OriginLine { s: f.from_rational(&s), t: f.from_rational(&t) }
    }

    /// Tangent direction `(t, -s)`.
    pub fn direction(&self, f: &FieldSpec) -> [FieldElement; 2] {
        [self.t.clone(), f.neg(&self.s)]
    }

    pub fn poly(&self, f: &FieldSpec) -> BivariatePoly {
        BivariatePoly::linear(f, &self.s, &self.t)
    }
}

/// Row-major 2x2 matrix.
pub type Matrix2 = [[FieldElement; 2]; 2];

pub fn mat_zero(f: &FieldSpec) -> Matrix2 {
    [[f.zero(), f.zero()], [f.zero(), f.zero()]]
}

pub fn mat_scalar(f: &FieldSpec, c: &FieldElement) -> Matrix2 {
    [[c.clone(), f.zero()], [f.zero(), c.clone()]]
}

pub fn mat_add(f: &FieldSpec, a: &Matrix2, b: &Matrix2) -> Matrix2 {
    std::array::from_fn(|r| std::array::from_fn(|c| f.add(&a[r][c], &b[r][c])))
}

pub fn mat_sub(f: &FieldSpec, a: &Matrix2, b: &Matrix2) -> Matrix2 {
    std::array::from_fn(|r| std::array::from_fn(|c| f.sub(&a[r][c], &b[r][c])))
}

pub fn mat_mul(f: &FieldSpec, a: &Matrix2, b: &Matrix2) -> Matrix2 {
    std::array::from_fn(|r| std::array::from_fn(|c| f.add(&f.mul(&a[r][0], &b[0][c]), &f.mul(&a[r][1], &b[1][c]))))
}

pub fn mat_vec(f: &FieldSpec, a: &Matrix2, v: &[FieldElement; 2]) -> [FieldElement; 2] {
    std::array::from_fn(|r| f.add(&f.mul(&a[r][0], &v[0]), &f.mul(&a[r][1], &v[1])))
}

pub fn mat_trace(f: &FieldSpec, a: &Matrix2) -> FieldElement {
    f.add(&a[0][0], &a[1][1])
}

fn mat_is_zero(a: &Matrix2) -> bool {
    a.iter().flatten().all(FieldElement::is_zero)
}

fn mat_inv(f: &FieldSpec, a: &Matrix2) -> Result<Matrix2> {
    let det = f.sub(&f.mul(&a[0][0], &a[1][1]), &f.mul(&a[0][1], &a[1][0]));
    let d = f.inv(&det)?;
    Ok([[f.mul(&a[1][1], &d), f.neg(&f.mul(&a[0][1], &d))], [f.neg(&f.mul(&a[1][0], &d)), f.mul(&a[0][0], &d)]])
}

/// `1 + sum (beta_i - 1) / 2`, the cone angle of a `(1,1)` point.
pub fn cone_alpha(weights: &[Rational]) -> Rational {
    let s: Rational = weights.iter().map(|b| b - Rational::one()).sum();
    Rational::one() + s * Rational::new(1, 2)
}

/// Constant residues `A_i` of `d + sum A_i dl_i / l_i` on a `(1,1)` cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueSystem {
    pub field: FieldSpec,
    pub lines: Vec<OriginLine>,
    pub weights: Vec<Rational>,
    pub matrices: Vec<Matrix2>,
    pub alpha: Rational,
}

fn rat_matrix(f: &FieldSpec, m: [[Rational; 2]; 2]) -> Matrix2 {
    m.map(|row| row.map(|x| f.from_rational(&x)))
}

/// The explicit solution for poles at `z = 0`, `w = 0`, `z + w = 0` with weights
/// `beta1`, `beta2`, `beta3` in that order.
pub fn build_three_line(beta1: &Rational, beta2: &Rational, beta3: &Rational) -> ResidueSystem {
    let f = FieldSpec::rationals();
    let one = Rational::one();
    let half = Rational::new(1, 2);
    let u = (beta2 + beta3 - beta1 - &one) * &half;
    let v = (beta1 + beta3 - beta2 - &one) * &half;
    let zero = Rational::zero;
    let a_z = [[beta1 - &one, zero()], [-&v, zero()]];
    let a_w = [[zero(), -&u], [zero(), beta2 - &one]];
    let a_zw = [[u.clone(), u], [v.clone(), v]];
    let weights = vec![beta1.clone(), beta2.clone(), beta3.clone()];
    ResidueSystem {
        lines: vec![
            OriginLine::rational(one.clone(), zero()),
            OriginLine::rational(zero(), one.clone()),
            OriginLine::rational(one.clone(), one.clone()),
        ],
        matrices: vec![rat_matrix(&f, a_z), rat_matrix(&f, a_w), rat_matrix(&f, a_zw)],
        alpha: cone_alpha(&weights),
        weights,
        field: f,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueSolution {
    pub dimension: usize,
    pub particular: ResidueSystem,
    /// Homogeneous solutions, one matrix per line.
    pub basis: Vec<Vec<Matrix2>>,
}

impl ResidueSolution {
    /// `particular + sum_l coeffs[l] basis[l]`.
    pub fn point(&self, coeffs: &[FieldElement]) -> ResidueSystem {
        let f = &self.particular.field;
        let mut sys = self.particular.clone();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (m, h) in sys.matrices.iter_mut().zip(b) {
                let scaled: Matrix2 = h.clone().map(|row| row.map(|x| f.mul(&x, c)));
                *m = mat_add(f, m, &scaled);
            }
        }
        sys
    }
}

fn cross(f: &FieldSpec, a: &OriginLine, b: &OriginLine) -> FieldElement {
    f.sub(&f.mul(&a.s, &b.t), &f.mul(&b.s, &a.t))
}

fn check_lines(f: &FieldSpec, lines: &[OriginLine]) -> Result<()> {
    for (i, l) in lines.iter().enumerate() {
        f.check(&l.s)?;
        f.check(&l.t)?;
        if l.s.is_zero() && l.t.is_zero() {
            return Err(Error::DegenerateConfiguration(format!("line {i} has s = t = 0")));
        }
        for (j, m) in lines[..i].iter().enumerate() {
            if cross(f, l, m).is_zero() {
                return Err(Error::DegenerateConfiguration(format!("lines {j} and {i} coincide")));
            }
        }
    }
    Ok(())
}

/// Solves the trace, kernel and sum conditions with the rank-one ansatz
/// `A_i = c_i (s_i, t_i)`.
pub fn solve_residues(f: &FieldSpec, lines: &[OriginLine], weights: &[Rational]) -> Result<ResidueSolution> {
    let n = lines.len();
    if n < 3 {
        return Err(Error::DegenerateConfiguration(format!("need at least 3 lines, got {n}")));
    }
    if weights.len() != n {
        return Err(Error::WeightsMissing(format!("expected {n} weights, got {}", weights.len())));
    }
    check_lines(f, lines)?;
    let alpha = cone_alpha(weights);
    let am1 = f.from_rational(&(&alpha - Rational::one()));
    let ncols = 2 * n;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (i, (l, b)) in lines.iter().zip(weights).enumerate() {
        let mut row = vec![f.zero(); ncols];
        row[2 * i] = l.s.clone();
        row[2 * i + 1] = l.t.clone();
        rows.push(row);
        rhs.push(f.from_rational(&(b - Rational::one())));
    }
    // (sum A_i)[r][c] = sum_i c_i[r] * (s_i, t_i)[c]
    for r in 0..2 {
        for c in 0..2 {
            let mut row = vec![f.zero(); ncols];
            for (i, l) in lines.iter().enumerate() {
                row[2 * i + r] = if c == 0 { l.s.clone() } else { l.t.clone() };
            }
            rows.push(row);
            rhs.push(if r == c { am1.clone() } else { f.zero() });
        }
    }
    let sol = solve_affine(f, &rows, &rhs, ncols)
        .ok_or_else(|| Error::DegenerateConfiguration("residue system is inconsistent".into()))?;
    let to_matrices = |x: &[FieldElement]| -> Vec<Matrix2> {
        lines
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let (c0, c1) = (&x[2 * i], &x[2 * i + 1]);
                [[f.mul(c0, &l.s), f.mul(c0, &l.t)], [f.mul(c1, &l.s), f.mul(c1, &l.t)]]
            })
            .collect()
    };
    let particular = ResidueSystem {
        field: f.clone(),
        lines: lines.to_vec(),
        weights: weights.to_vec(),
        matrices: to_matrices(&sol.particular),
        alpha,
    };
    Ok(ResidueSolution {
        dimension: sol.basis.len(),
        basis: sol.basis.iter().map(|v| to_matrices(v)).collect(),
        particular,
    })
}

/// Moves a 3-line system to the coordinates `Z = a l_1`, `W = b l_2` with
/// `l_3 = a l_1 + b l_2`, so its poles become `Z = 0`, `W = 0`, `Z + W = 0`.
/// The residues transform as `M A M^{-1}` with `M` the Jacobian of the change.
pub fn normalize_three_line(sys: &ResidueSystem) -> Result<ResidueSystem> {
    if sys.lines.len() != 3 {
        return Err(Error::DegenerateConfiguration("normalization needs exactly 3 lines".into()));
    }
    let f = &sys.field;
    check_lines(f, &sys.lines)?;
    let [l1, l2, l3] = [&sys.lines[0], &sys.lines[1], &sys.lines[2]];
    let det = cross(f, l1, l2);
    let a = f.div(&cross(f, l3, l2), &det)?;
    let b = f.div(&cross(f, l1, l3), &det)?;
    let m: Matrix2 = [[f.mul(&a, &l1.s), f.mul(&a, &l1.t)], [f.mul(&b, &l2.s), f.mul(&b, &l2.t)]];
    let m_inv = mat_inv(f, &m)?;
    let (one, zero) = (f.one(), f.zero());
    Ok(ResidueSystem {
        field: f.clone(),
        lines: vec![
            OriginLine { s: one.clone(), t: zero.clone() },
            OriginLine { s: zero, t: one.clone() },
            OriginLine { s: one.clone(), t: one },
        ],
        weights: sys.weights.clone(),
        matrices: sys.matrices.iter().map(|x| mat_mul(f, &mat_mul(f, &m, x), &m_inv)).collect(),
        alpha: sys.alpha.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    /// `sum A_i = (alpha - 1) Id` with the stored `alpha`.
    pub sum_ok: bool,
    /// `trace A_i = beta_i - 1`, per line.
    pub trace_ok: Vec<bool>,
    /// `A_i v_i = 0`, per line.
    pub kernel_ok: Vec<bool>,
    pub constraints_ok: bool,
    pub flat: bool,
    pub torsion_free: bool,
    /// Every summand of the torsion polynomial vanishes on its own.
    pub torsion_termwise: bool,
    /// `sum A_i = (alpha - 1) Id` with `alpha = 1 + sum (beta_i - 1) / 2`.
    pub blowup_residue_ok: bool,
    pub curvature_poly: MatrixPoly,
    pub torsion_poly: VectorPoly,
}

/// Checks the residue conditions and expands the cleared-denominator curvature
/// `sum_{i<j} [A_i, A_j] (s_i t_j - s_j t_i) prod_{k != i,j} l_k` and torsion
/// `sum_i A_i (-v_i) prod_{k != i} l_k` as polynomials.
pub fn verify_flat_torsion(sys: &ResidueSystem) -> FlatnessReport {
    let f = &sys.field;
    let n = sys.lines.len();
    let one = Rational::one();
    let total = sys.matrices.iter().fold(mat_zero(f), |acc, m| mat_add(f, &acc, m));
    let sum_ok = total == mat_scalar(f, &f.from_rational(&(&sys.alpha - &one)));
    let blowup_residue_ok = total == mat_scalar(f, &f.from_rational(&(cone_alpha(&sys.weights) - &one)));
    let trace_ok: Vec<bool> =
        sys.matrices.iter().zip(&sys.weights).map(|(m, b)| mat_trace(f, m) == f.from_rational(&(b - &one))).collect();
    let kernel_ok: Vec<bool> = sys
        .matrices
        .iter()
        .zip(&sys.lines)
        .map(|(m, l)| mat_vec(f, m, &l.direction(f)).iter().all(FieldElement::is_zero))
        .collect();
    let constraints_ok = sum_ok && trace_ok.iter().all(|&x| x) && kernel_ok.iter().all(|&x| x);

    let polys: Vec<BivariatePoly> = sys.lines.iter().map(|l| l.poly(f)).collect();
    let mut curvature = MatrixPoly::default();
    for i in 0..n {
        for j in (i + 1)..n {
            let comm = mat_sub(
                f,
                &mat_mul(f, &sys.matrices[i], &sys.matrices[j]),
                &mat_mul(f, &sys.matrices[j], &sys.matrices[i]),
            );
            if mat_is_zero(&comm) {
                continue;
            }
            let c = cross(f, &sys.lines[i], &sys.lines[j]);
            let rest = BivariatePoly::product(f, (0..n).filter(|&k| k != i && k != j).map(|k| &polys[k]));
            let scalar = rest.scale(f, &c);
            let term = MatrixPoly(std::array::from_fn(|r| std::array::from_fn(|cc| scalar.scale(f, &comm[r][cc]))));
            curvature = curvature.add(f, &term);
        }
    }
    let mut torsion = VectorPoly::default();
    let mut torsion_termwise = true;
    for i in 0..n {
        let l = &sys.lines[i];
        let minus_v = [f.neg(&l.t), l.s.clone()];
        let av = mat_vec(f, &sys.matrices[i], &minus_v);
        if av.iter().all(FieldElement::is_zero) {
            continue;
        }
        torsion_termwise = false;
        let rest = BivariatePoly::product(f, (0..n).filter(|&k| k != i).map(|k| &polys[k]));
        let term = VectorPoly([rest.scale(f, &av[0]), rest.scale(f, &av[1])]);
        torsion = torsion.add(f, &term);
    }
    FlatnessReport {
        sum_ok,
        trace_ok,
        kernel_ok,
        constraints_ok,
        flat: curvature.is_zero(),
        torsion_free: torsion.is_zero(),
        torsion_termwise,
        blowup_residue_ok,
        curvature_poly: curvature,
        torsion_poly: torsion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    #[test]
    fn three_line_half_weights() {
        let h = rat(1, 2);
        let sys = build_three_line(&h, &h, &h);
        assert_eq!(sys.alpha, rat(1, 4));
        let f = &sys.field;
        for m in &sys.matrices {
            assert_eq!(mat_trace(f, m), f.from_rational(&rat(-1, 2)));
        }
        let rep = verify_flat_torsion(&sys);
        assert!(rep.constraints_ok && rep.flat && rep.torsion_free && rep.blowup_residue_ok);
    }

    #[test]
    fn three_line_kernels() {
        let sys = build_three_line(&rat(1, 2), &rat(1, 3), &rat(2, 3));
        let f = &sys.field;
        let v = |a: i64, b: i64| [f.from_rational(&rat(a, 1)), f.from_rational(&rat(b, 1))];
        let zero = |x: [FieldElement; 2]| x.iter().all(FieldElement::is_zero);
        assert!(zero(mat_vec(f, &sys.matrices[0], &v(0, 1))));
        assert!(zero(mat_vec(f, &sys.matrices[1], &v(1, 0))));
        assert!(zero(mat_vec(f, &sys.matrices[2], &v(1, -1))));
        let rep = verify_flat_torsion(&sys);
        assert!(rep.flat && rep.torsion_free && rep.curvature_poly.is_zero());
    }

    #[test]
    fn solver_matches_three_line_on_standard_lines() {
        let w = [rat(1, 2), rat(1, 3), rat(2, 3)];
        let std = build_three_line(&w[0], &w[1], &w[2]);
        let sol = solve_residues(&std.field, &std.lines, &w).unwrap();
        assert_eq!(sol.dimension, 0);
        assert_eq!(sol.particular, std);
    }

    #[test]
    fn repeated_line_is_degenerate() {
        let f = FieldSpec::rationals();
        let lines = vec![
            OriginLine::rational(rat(1, 1), rat(0, 1)),
            OriginLine::rational(rat(2, 1), rat(0, 1)),
            OriginLine::rational(rat(1, 1), rat(1, 1)),
        ];
        let w = vec![rat(1, 2); 3];
        assert!(matches!(solve_residues(&f, &lines, &w), Err(Error::DegenerateConfiguration(_))));
    }
}
