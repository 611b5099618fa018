//! Serializable report bundles shared by the command line and the C interface.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arrangement::{
    b_matrix, hirzebruch_check, symmetric_check, Arrangement, HirzebruchReport, IncidenceLattice, SymmetricReport,
};
use crate::error::{Error, Result};
use crate::exactfield::Rational;
use crate::parabolic::{parabolic_chern, stability_bounds_at, ParabolicOptions, ParabolicReport, StabilityBounds};
use crate::relations::{
    bg_doubles_as_singular, bg_value, classify_limit_cusp, double_point_convention_gap, pencil_criterion,
    solve_weights, verify_relations, BgReport, CheckReport, Classification, LimitCuspReport, PencilReport,
    SolveOptions, WeightSolveReport, WeightedSystem,
};

#[derive(Clone, Debug, Serialize)]
pub struct PointRow {
    pub index: usize,
    pub point: String,
    pub multiplicity: usize,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSummary {
    pub lines: Vec<String>,
    pub points: Vec<PointRow>,
    /// Multiplicity (as a string key) to number of points.
    pub signature: BTreeMap<String, usize>,
    pub b_matrix: Vec<Vec<i64>>,
    pub symmetric: SymmetricReport,
    pub hirzebruch: HirzebruchReport,
}

pub fn lattice_summary(arr: &Arrangement) -> Result<(IncidenceLattice, LatticeSummary)> {
    let lat = arr.lattice()?;
    let hirzebruch = hirzebruch_check(&lat);
    if !hirzebruch.identity_residual.is_zero() {
        return Err(Error::Internal(format!("sum mu^2 identity residual {}", hirzebruch.identity_residual)));
    }
    let points = lat
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| PointRow {
            index: i,
            point: p.point.to_string(),
            multiplicity: p.multiplicity,
            lines: p.lines.iter().map(|&j| arr.lines[j].name.clone()).collect(),
        })
        .collect();
    let summary = LatticeSummary {
        lines: arr.names(),
        points,
        signature: lat.signature().into_iter().map(|(m, c)| (m.to_string(), c)).collect(),
        b_matrix: b_matrix(&lat).b,
        symmetric: symmetric_check(&lat),
        hirzebruch,
    };
    Ok((lat, summary))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    /// Also evaluate the quantity with double points treated as (1,1) points.
    pub doubles_as_singular: bool,
    /// Anything short of `pk_candidate_equality` is a failure.
    pub require_equality: bool,
    /// `infeasible` and `limit_cusp` are failures.
    pub require_feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoublesReport {
    pub value: Rational,
    pub gap: Rational,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary {
    pub lines: Vec<String>,
    pub weights: Vec<Rational>,
    pub check: CheckReport,
    pub bg: BgReport,
    pub doubles_as_singular: Option<DoublesReport>,
    pub pencil: PencilReport,
    pub limit_cusp: LimitCuspReport,
    /// Reasons the run fails; empty when it passes.
    pub failures: Vec<String>,
}

impl CheckSummary {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_summary(
    arr: &Arrangement,
    weights: &[Rational],
    opts: &CheckOptions,
) -> Result<(IncidenceLattice, CheckSummary)> {
    let lat = arr.lattice()?;
    let sys = WeightedSystem::from_lines(arr, &lat, weights)?;
    let check = verify_relations(&sys)?;
    if let Some(g) = &check.gjgk_residuals {
        if g.iter().any(|r| !r.value.is_zero()) {
            return Err(Error::Internal("pairing residual nonzero for a line arrangement".into()));
        }
    }
    let bg = bg_value(&sys)?;
    let pencil = pencil_criterion(&lat);
    let limit_cusp = classify_limit_cusp(&lat, weights);
    let doubles = if opts.doubles_as_singular {
        let value = bg_doubles_as_singular(&lat, weights);
        let gap = double_point_convention_gap(&lat, weights);
        if &value - &bg.value != gap {
            return Err(Error::Internal("double-point convention gap identity failed".into()));
        }
        let agree = gap.is_zero();
        Some(DoublesReport { value, gap, agree })
    } else {
        None
    };

    let class = check.classification;
    let mut failures = Vec::new();
    if class == Classification::Violation {
        failures.push("violation".to_string());
    }
    if opts.require_equality && class != Classification::PkCandidateEquality {
        failures.push(format!("classification {} is not pk_candidate_equality", class.as_str()));
    }
    if opts.require_feasible && matches!(class, Classification::Infeasible | Classification::LimitCusp) {
        failures.push(format!("classification {} is not feasible", class.as_str()));
    }
    // A pencil failure only rules out equality candidates.
    if !pencil.all_pass && (opts.require_equality || class == Classification::PkCandidateEquality) {
        failures.push("pencil criterion fails".into());
    }
    let summary = CheckSummary {
        lines: arr.names(),
        weights: weights.to_vec(),
        check,
        bg,
        doubles_as_singular: doubles,
        pencil,
        limit_cusp,
        failures,
    };
    Ok((lat, summary))
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveSummary {
    pub lines: Vec<String>,
    pub solve: WeightSolveReport,
}

pub fn solve_summary(arr: &Arrangement) -> Result<SolveSummary> {
    let lat = arr.lattice()?;
    let solve = solve_weights(&lat, &b_matrix(&lat), &SolveOptions::default());
    Ok(SolveSummary { lines: arr.names(), solve })
}

#[derive(Clone, Debug, Serialize)]
pub struct ParabolicSummary {
    pub lines: Vec<String>,
    pub parabolic: ParabolicReport,
    /// Present for admissible weights with at least one multiple point.
    pub stability: Option<StabilityBounds>,
}

impl ParabolicSummary {
    pub fn passes(&self) -> bool {
        self.stability.as_ref().is_none_or(|b| b.all_negative)
    }
}

/// `n = None` uses the stability threshold; `diagnostic` evaluates inadmissible weights anyway.
pub fn parabolic_summary(
    arr: &Arrangement,
    weights: &[Rational],
    n: Option<i64>,
    diagnostic: bool,
) -> Result<ParabolicSummary> {
    let lat = arr.lattice()?;
    let parabolic = parabolic_chern(&lat, weights, &ParabolicOptions { n, skip_admissibility: diagnostic })?;
    let stability = if parabolic.admissible && !parabolic.blown_up.is_empty() {
        Some(stability_bounds_at(&lat, weights, n)?)
    } else {
        None
    };
    Ok(ParabolicSummary { lines: arr.names(), parabolic, stability })
}
