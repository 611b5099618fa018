#![allow(dead_code)]

use pkarr_core::arrangement::{are_proportional, Arrangement, ProjLine};
use pkarr_core::catalog::{catalog_build, quadrilateral_biased_weights, CatalogEntry};
use pkarr_core::exactfield::{Field, FieldElement, FieldSpec, Rational};
use rand::Rng;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn fe(f: &FieldSpec, r: Rational) -> FieldElement {
    f.from_rational(&r)
}

/// Random rational arrangement with small integer coefficients, so that many
/// non-generic concurrences occur.
pub fn random_arrangement(rng: &mut impl Rng, n: usize, range: i64) -> Arrangement {
    let f = FieldSpec::rationals();
    let mut lines: Vec<ProjLine> = Vec::new();
    while lines.len() < n {
        let c: [FieldElement; 3] = std::array::from_fn(|_| fe(&f, Rational::from(rng.gen_range(-range..=range))));
        if c.iter().all(FieldElement::is_zero) || lines.iter().any(|l| are_proportional(&f, &l.coeffs, &c)) {
            continue;
        }
        lines.push(ProjLine::new(format!("l{}", lines.len()), c));
    }
    Arrangement::new(f, lines).unwrap()
}

/// Every catalog arrangement used by the suites, with its default weights.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    let mut out = vec![
        catalog_build("triangle", &[]).unwrap(),
        catalog_build("quadrilateral", &[]).unwrap(),
        catalog_build("hesse", &[]).unwrap(),
        catalog_build("seven_lines", &[]).unwrap(),
    ];
    for n in 3..=8 {
        out.push(catalog_build("near_pencil", &[n]).unwrap());
    }
    for m in 2..=5 {
        out.push(catalog_build("ceva_ext", &[m]).unwrap());
    }
    for k in 3..=6 {
        out.push(catalog_build("polygon_mirrors", &[k]).unwrap());
    }
    out
}

/// Weighted arrangements built from the catalog: defaults plus the biased quadrilateral family.
pub fn weighted_catalog() -> Vec<(String, Arrangement, Vec<Rational>)> {
    let mut out: Vec<(String, Arrangement, Vec<Rational>)> =
        catalog_entries().into_iter().map(|e| (e.name.label(), e.arrangement, e.default_weights)).collect();
    let q = catalog_build("quadrilateral", &[]).unwrap();
    for b in [rat(1, 4), rat(1, 3), rat(2, 5), rat(3, 5)] {
        out.push((format!("quadrilateral biased {b}"), q.arrangement.clone(), quadrilateral_biased_weights(&b)));
    }
    out
}

/// 3x3 determinant over the field.
pub fn det3(f: &FieldSpec, r: [&[FieldElement; 3]; 3]) -> FieldElement {
    let m = |a: &FieldElement, b: &FieldElement| f.mul(a, b);
    let minor = |i: usize, j: usize, k: usize, l: usize| f.sub(&m(&r[1][i], &r[2][j]), &m(&r[1][k], &r[2][l]));
    let t0 = m(&r[0][0], &minor(1, 2, 2, 1));
    let t1 = m(&r[0][1], &minor(0, 2, 2, 0));
    let t2 = m(&r[0][2], &minor(0, 1, 1, 0));
    f.add(&f.sub(&t0, &t1), &t2)
}

/// Curve data for the quotient `Sym^2(CP^1)`: a conic with weight 1/2, five tangent lines
/// with weight 3/5, and the five tangency points of type (1,2) carrying one regular branch
/// of the conic and one of the line.
pub fn sym2_curve_json() -> serde_json::Value {
    use serde_json::json;
    let mut curves =
        vec![json!({"name": "C", "chi": "2", "K_dot": "-6", "self": "4", "class_deg": "2", "beta": "1/2"})];
    let mut points = Vec::new();
    let mut pairs = Vec::new();
    for i in 1..=5 {
        curves.push(
            json!({"name": format!("L{i}"), "chi": "2", "K_dot": "-3", "self": "1", "class_deg": "1", "beta": "3/5"}),
        );
        points.push(json!({"id": format!("t{i}"), "p": 1, "q": 2, "branches": [
            {"curve": "C", "kind": "regular", "count": 1},
            {"curve": format!("L{i}"), "kind": "regular", "count": 1}
        ]}));
        for j in (i + 1)..=5 {
            pairs.push(json!({"a": format!("L{i}"), "b": format!("L{j}"), "count": "1"}));
        }
    }
    json!({"surface": {"c2": "3"}, "curves": curves, "points": points, "B": {"pairs": pairs}})
}
