use serde::Serialize;

use crate::arrangement::IncidenceLattice;
use crate::exactfield::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyFailure {
    /// The other point `y`.
    pub point: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspReport {
    pub point: usize,
    pub multiplicity: usize,
    pub defect_sum: Rational,
    /// For every other point `y` of multiplicity >= 3, the line through the cusp and `y` is in the arrangement.
    pub property_a: bool,
    /// The same test run over double points as well.
    pub property_a_all_points: bool,
    /// For `mult(y) >= 3`, the defects of the lines through `y` missing the cusp sum to the defect of `[x, y]`.
    pub property_b: bool,
    pub failures: Vec<PropertyFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitCuspReport {
    pub cusps: Vec<usize>,
    /// Lines with weight exactly 0 or 1.
    pub boundary_weights: Vec<usize>,
    pub conjectural_properties: Vec<CuspReport>,
}

fn defect_sum(lat: &IncidenceLattice, point: usize, weights: &[Rational]) -> Rational {
    lat.points[point].lines.iter().map(|&j| &weights[j] - Rational::one()).sum()
}

/// Line of the arrangement through two lattice points, if any.
fn joining_line(lat: &IncidenceLattice, x: usize, y: usize) -> Option<usize> {
    lat.points[x].lines.iter().copied().find(|&j| lat.incident(y, j))
}

/// Finds the points of multiplicity >= 3 whose defect sum is exactly `-2` and checks
/// the two conjectural properties at each of them.
pub fn classify_limit_cusp(lat: &IncidenceLattice, weights: &[Rational]) -> LimitCuspReport {
    let minus_two = Rational::from(-2);
    let cusps: Vec<usize> =
        lat.multiple_points().into_iter().filter(|&i| defect_sum(lat, i, weights) == minus_two).collect();
    let boundary_weights = (0..weights.len()).filter(|&j| weights[j].is_zero() || weights[j].is_one()).collect();
    let conjectural_properties = cusps.iter().map(|&x| cusp_properties(lat, weights, x)).collect();
    LimitCuspReport { cusps, boundary_weights, conjectural_properties }
}

fn cusp_properties(lat: &IncidenceLattice, weights: &[Rational], x: usize) -> CuspReport {
    let one = Rational::one();
    let mut failures = Vec::new();
    let mut property_a = true;
    let mut property_a_all_points = true;
    let mut property_b = true;
    for (y, pt) in lat.points.iter().enumerate() {
        if y == x {
            continue;
        }
        let join = joining_line(lat, x, y);
        if join.is_none() {
            property_a_all_points = false;
            if pt.multiplicity >= 3 {
                property_a = false;
                property_b = false;
                failures.push(PropertyFailure { point: y, reason: "no arrangement line through the cusp".into() });
            }
            continue;
        }
        if pt.multiplicity < 3 {
            continue;
        }
        let l = join.unwrap();
        let away: Rational = pt.lines.iter().filter(|&&j| !lat.incident(x, j)).map(|&j| &weights[j] - &one).sum();
        let target = &weights[l] - &one;
        if away != target {
            property_b = false;
            failures.push(PropertyFailure {
                point: y,
                reason: format!("defects away from the cusp sum to {away}, joining line has {target}"),
            });
        }
    }
    CuspReport {
        point: x,
        multiplicity: lat.points[x].multiplicity,
        defect_sum: defect_sum(lat, x, weights),
        property_a,
        property_a_all_points,
        property_b,
        failures,
    }
}
