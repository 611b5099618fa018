use serde::Serialize;

use super::bg::bg_value;
use super::system::{SingularPointData, SurfaceKind, WeightedSystem};
use crate::error::{Error, Result};
use crate::exactfield::Rational;

/// Cone angle of a `(p, q)` point from the weights of its branches.
///
/// `alpha = pq/2 (sum_k (beta_k - 1) + (beta_z - 1)/p + (beta_w - 1)/q) + (p + q)/2`,
/// regular branches counted with multiplicity; a missing axis contributes `beta = 1`.
pub fn alpha_of_point<F>(pt: &SingularPointData, weight_of: F) -> Result<Rational>
where
    F: Fn(&str) -> Option<Rational>,
{
    let p = Rational::from(pt.p as i64);
    let q = Rational::from(pt.q as i64);
    let mut inner = Rational::zero();
    for br in &pt.branches {
        let beta = weight_of(&br.curve).ok_or_else(|| Error::UnknownCurveReference(br.curve.clone()))?;
        let defect = (beta - Rational::one()) * Rational::from(br.count as i64);
        inner += match br.kind {
            super::BranchKind::Regular => defect,
            super::BranchKind::ZAxis => defect / &p,
            super::BranchKind::WAxis => defect / &q,
        };
    }
    Ok(&p * &q / Rational::from(2) * inner + (p + q) / Rational::from(2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Named {
    pub name: String,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairResidual {
    pub a: String,
    pub b: String,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintFlags {
    /// Every weight lies in the open interval (0, 1).
    pub weights_open: bool,
    /// Curves whose weight is outside (0, 1).
    pub weights_out_of_range: Vec<String>,
    /// Curves with weight exactly 0 or 1.
    pub boundary_weights: Vec<String>,
    /// `sum_j d_ij (beta_j - 1)` at each listed point.
    pub point_sums: Vec<Named>,
    /// Every point sum is `> -2`, equivalently every `alpha > 0` at `(1,1)` points.
    pub point_sums_ok: bool,
    pub alphas_positive: bool,
    pub all_strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    PkCandidateEquality,
    StrictInequality,
    Infeasible,
    LimitCusp,
    Violation,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::PkCandidateEquality => "pk_candidate_equality",
            Classification::StrictInequality => "strict_inequality",
            Classification::Infeasible => "infeasible",
            Classification::LimitCusp => "limit_cusp",
            Classification::Violation => "violation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub eq1_residuals: Vec<Named>,
    /// `None` when the surface is not the projective plane (not checked).
    pub eq2_residual: Option<Rational>,
    /// `None` unless every point has type `(1,1)`.
    pub eq3_residual: Option<Rational>,
    /// `None` when no intersection pairing is available.
    pub gjgk_residuals: Option<Vec<PairResidual>>,
    pub alphas: Vec<Named>,
    pub constraint_flags: ConstraintFlags,
    /// Line mode only.
    pub bg_value: Option<Rational>,
    pub classification: Classification,
}

impl CheckReport {
    pub fn residuals_zero(&self) -> bool {
        self.eq1_residuals.iter().all(|r| r.value.is_zero())
            && self.eq2_residual.as_ref().is_none_or(Rational::is_zero)
            && self.eq3_residual.as_ref().is_none_or(Rational::is_zero)
            && self.gjgk_residuals.as_ref().is_none_or(|v| v.iter().all(|r| r.value.is_zero()))
    }
}

pub(crate) fn eq1_residuals(sys: &WeightedSystem) -> Vec<Named> {
    let defects: Vec<Rational> = sys.curves.iter().map(|c| &c.beta - Rational::one()).collect();
    sys.curves
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let lhs: Rational = sys.b[j].iter().zip(&defects).map(|(b, a)| b * a).sum();
            let local: Rational = sys
                .points
                .iter()
                .map(|pt| {
                    let pq_sum = Rational::from(pt.p as i64 + pt.q as i64);
                    pt.d(&c.name) * pq_sum - pt.d_tilde(&c.name) * Rational::from(2)
                })
                .sum();
            let rhs = Rational::from(-2) * &c.chi - &c.k_dot - local;
            Named { name: c.name.clone(), value: lhs - rhs }
        })
        .collect()
}

fn eq2_residual(sys: &WeightedSystem) -> Option<Rational> {
    (sys.surface == SurfaceKind::Cp2).then(|| {
        let s: Rational = sys.curves.iter().map(|c| (&c.beta - Rational::one()) * &c.class_degree).sum();
        s + Rational::from(3)
    })
}

fn eq3_residual(sys: &WeightedSystem, alphas: &[Rational]) -> Option<Rational> {
    if !sys.all_simple_points() {
        return None;
    }
    let point_part: Rational = alphas.iter().map(|a| (a - Rational::one()).pow(2)).sum();
    let mut cross = Rational::zero();
    for j in 0..sys.n() {
        for k in 0..sys.n() {
            if j != k {
                cross +=
                    &sys.b[j][k] * (&sys.curves[j].beta - Rational::one()) * (&sys.curves[k].beta - Rational::one());
            }
        }
    }
    Some(&sys.c2_surface - (point_part + cross / Rational::from(2)))
}

fn gjgk_residuals(sys: &WeightedSystem) -> Option<Vec<PairResidual>> {
    if sys.surface != SurfaceKind::Cp2 {
        return None;
    }
    let mut out = Vec::new();
    for j in 0..sys.n() {
        for k in (j + 1)..sys.n() {
            let (cj, ck) = (&sys.curves[j], &sys.curves[k]);
            let local: Rational = sys.points.iter().map(|pt| pt.pq() * pt.d(&cj.name) * pt.d(&ck.name)).sum();
            let value = &cj.class_degree * &ck.class_degree - &sys.b[j][k] - local;
            out.push(PairResidual { a: cj.name.clone(), b: ck.name.clone(), value });
        }
    }
    Some(out)
}

pub(crate) fn alphas(sys: &WeightedSystem) -> Result<Vec<Rational>> {
    sys.points.iter().map(|pt| alpha_of_point(pt, |name| sys.weight_of(name).cloned())).collect()
}

pub(crate) fn constraint_flags(sys: &WeightedSystem, alphas: &[Rational]) -> ConstraintFlags {
    let zero = Rational::zero();
    let one = Rational::one();
    let weights_out_of_range: Vec<String> =
        sys.curves.iter().filter(|c| c.beta <= zero || c.beta >= one).map(|c| c.name.clone()).collect();
    let boundary_weights: Vec<String> =
        sys.curves.iter().filter(|c| c.beta == zero || c.beta == one).map(|c| c.name.clone()).collect();
    let point_sums: Vec<Named> = sys
        .points
        .iter()
        .map(|pt| Named {
            name: pt.id.clone(),
            value: sys.curves.iter().map(|c| pt.d(&c.name) * (&c.beta - Rational::one())).sum(),
        })
        .collect();
    let point_sums_ok = point_sums.iter().all(|s| s.value > Rational::from(-2));
    let alphas_positive = alphas.iter().all(Rational::is_positive);
    let weights_open = weights_out_of_range.is_empty();
    ConstraintFlags {
        weights_open,
        weights_out_of_range,
        boundary_weights,
        point_sums,
        point_sums_ok,
        alphas_positive,
        all_strict: weights_open && point_sums_ok && alphas_positive,
    }
}

/// Evaluates the Chern-number relations, the open constraints and (in line mode)
/// the Bogomolov-Gieseker quantity, and classifies the system.
pub fn verify_relations(sys: &WeightedSystem) -> Result<CheckReport> {
    sys.validate()?;
    let alphas = alphas(sys)?;
    let eq1 = eq1_residuals(sys);
    let eq2 = eq2_residual(sys);
    let eq3 = eq3_residual(sys, &alphas);
    let gjgk = gjgk_residuals(sys);
    let flags = constraint_flags(sys, &alphas);
    let bg = match sys.mode {
        super::Mode::Lines => Some(bg_value(sys)?.value),
        super::Mode::AbstractCurves => None,
    };
    let mut report = CheckReport {
        eq1_residuals: eq1,
        eq2_residual: eq2,
        eq3_residual: eq3,
        gjgk_residuals: gjgk,
        alphas: sys.points.iter().zip(&alphas).map(|(p, a)| Named { name: p.id.clone(), value: a.clone() }).collect(),
        constraint_flags: flags,
        bg_value: bg,
        classification: Classification::Violation,
    };
    report.classification = classify(&report);
    Ok(report)
}

fn classify(r: &CheckReport) -> Classification {
    let eq2_ok = r.eq2_residual.as_ref().is_none_or(Rational::is_zero);
    if !eq2_ok {
        return Classification::Violation;
    }
    let f = &r.constraint_flags;
    if !f.all_strict {
        let minus_two = Rational::from(-2);
        let weights_closed = f.weights_out_of_range.iter().all(|n| f.boundary_weights.contains(n));
        let has_cusp = f.point_sums.iter().any(|s| s.value == minus_two);
        let sums_closed = f.point_sums.iter().all(|s| s.value >= minus_two);
        if r.residuals_zero() && weights_closed && has_cusp && sums_closed {
            return Classification::LimitCusp;
        }
        return if r.residuals_zero() { Classification::Infeasible } else { Classification::Violation };
    }
    match &r.bg_value {
        Some(bg) if bg.is_positive() => Classification::Violation,
        Some(bg) if bg.is_negative() => Classification::StrictInequality,
        // bg = 0 (or abstract mode): equality case needs every relation to hold
        _ if r.residuals_zero() => Classification::PkCandidateEquality,
        Some(_) => Classification::Violation,
        None => Classification::Violation,
    }
}
