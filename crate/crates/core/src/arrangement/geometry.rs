use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldElement, FieldSpec};

/// The line `a x + b y + c z = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjLine {
    pub name: String,
    pub coeffs: [FieldElement; 3],
}

impl ProjLine {
    pub fn new(name: impl Into<String>, coeffs: [FieldElement; 3]) -> Self {
        ProjLine { name: name.into(), coeffs }
    }

    pub fn eval(&self, field: &FieldSpec, p: &ProjPoint) -> FieldElement {
        dot(field, &self.coeffs, &p.coords)
    }

    pub fn contains(&self, field: &FieldSpec, p: &ProjPoint) -> bool {
        self.eval(field, p).is_zero()
    }
}

/// A point of the projective plane with its first nonzero coordinate scaled to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    pub fn new(field: &FieldSpec, coords: [FieldElement; 3]) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::DegenerateConfiguration("zero vector is not a projective point".into()))?;
        let inv = field.inv(lead)?;
        let coords = coords.map(|c| field.mul(&c, &inv));
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    /// Serialized canonical coordinates; equal keys iff equal points.
    pub fn key(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(FieldElement::key).collect();
        format!("({})", parts.join(":"))
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = &self.coords;
        write!(f, "({a} : {b} : {c})")
    }
}

fn dot(field: &FieldSpec, a: &[FieldElement; 3], b: &[FieldElement; 3]) -> FieldElement {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        acc = field.add(&acc, &field.mul(x, y));
    }
    acc
}

pub(crate) fn cross(field: &FieldSpec, a: &[FieldElement; 3], b: &[FieldElement; 3]) -> [FieldElement; 3] {
    let m = |i: usize, j: usize| field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i]));
    [m(1, 2), m(2, 0), m(0, 1)]
}

pub fn are_proportional(field: &FieldSpec, a: &[FieldElement; 3], b: &[FieldElement; 3]) -> bool {
    cross(field, a, b).iter().all(FieldElement::is_zero)
}

/// Intersection point of two distinct lines, from the 2x2 minors of their coefficient matrix.
pub fn intersect_lines(field: &FieldSpec, l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint> {
    let c = cross(field, &l1.coeffs, &l2.coeffs);
    if c.iter().all(FieldElement::is_zero) {
        return Err(Error::ProportionalLines(l1.name.clone(), l2.name.clone()));
    }
    ProjPoint::new(field, c)
}

/// Coefficients of the line through two distinct points (not normalized).
pub fn line_through(field: &FieldSpec, p: &ProjPoint, q: &ProjPoint) -> Result<[FieldElement; 3]> {
    let c = cross(field, &p.coords, &q.coords);
    if c.iter().all(FieldElement::is_zero) {
        return Err(Error::DegenerateConfiguration(format!("points {} and {} coincide", p.key(), q.key())));
    }
    Ok(c)
}

/// Scales line coefficients so the first nonzero one is 1.
pub fn normalize_line(field: &FieldSpec, c: [FieldElement; 3]) -> Result<[FieldElement; 3]> {
    Ok(ProjPoint::new(field, c)?.coords)
}
