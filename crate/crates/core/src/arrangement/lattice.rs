use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::geometry::{are_proportional, intersect_lines, ProjLine, ProjPoint};
use crate::error::{Error, Result};
use crate::exactfield::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePoint {
    pub point: ProjPoint,
    pub multiplicity: usize,
    /// Sorted indices of the lines through the point.
    pub lines: Vec<usize>,
}

/// All intersection points of an arrangement with their incidences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceLattice {
    pub n: usize,
    pub points: Vec<LatticePoint>,
    /// For each line, the indices of the lattice points on it (ascending).
    pub per_line: Vec<Vec<usize>>,
}

impl IncidenceLattice {
    /// `(multiplicity, count)` histogram.
    pub fn signature(&self) -> BTreeMap<usize, usize> {
        let mut sig = BTreeMap::new();
        for p in &self.points {
            *sig.entry(p.multiplicity).or_insert(0) += 1;
        }
        sig
    }

    /// Indices of points lying on at least three lines.
    pub fn multiple_points(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| self.points[i].multiplicity >= 3).collect()
    }

    pub fn incident(&self, point: usize, line: usize) -> bool {
        self.points[point].lines.binary_search(&line).is_ok()
    }

    /// Index of the lattice point where two distinct lines meet.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        *self.per_line[a].iter().find(|&&p| self.incident(p, b)).expect("distinct lines of a lattice always meet")
    }

    pub fn max_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).max().unwrap_or(0)
    }

    /// Checks the incidence invariants; used after construction and on deserialized data.
    pub fn validate(&self) -> Result<()> {
        let pairs: usize = self.points.iter().map(|p| p.multiplicity * (p.multiplicity - 1) / 2).sum();
        if pairs != self.n * (self.n - 1) / 2 {
            return Err(Error::Internal(format!("pair count {pairs} != C({}, 2)", self.n)));
        }
        for (i, p) in self.points.iter().enumerate() {
            if p.multiplicity < 2 || p.lines.len() != p.multiplicity {
                return Err(Error::Internal(format!("point {i} has bad multiplicity")));
            }
            for &l in &p.lines {
                if !self.per_line[l].contains(&i) {
                    return Err(Error::Internal(format!("point {i} missing from line {l}")));
                }
            }
        }
        let total: usize = self.per_line.iter().map(Vec::len).sum();
        let expected: usize = self.points.iter().map(|p| p.multiplicity).sum();
        if total != expected {
            return Err(Error::Internal("per-line incidence count mismatch".into()));
        }
        Ok(())
    }
}

/// Intersects all pairs of lines and groups the results by canonical point.
///
/// Points are ordered by their serialized canonical coordinates, so the output does
/// not depend on input order except through line indices.
pub fn build_lattice(field: &FieldSpec, lines: &[ProjLine]) -> Result<IncidenceLattice> {
    let n = lines.len();
    if n < 2 {
        return Err(Error::DegenerateConfiguration("an arrangement needs at least two lines".into()));
    }
    let mut names = BTreeSet::new();
    for l in lines {
        for c in &l.coeffs {
            field.check(c)?;
        }
        if l.coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::DegenerateConfiguration(format!("line {} has zero coefficients", l.name)));
        }
        if !names.insert(l.name.as_str()) {
            return Err(Error::DuplicateLine(l.name.clone()));
        }
    }
    let mut groups: HashMap<String, (ProjPoint, BTreeSet<usize>)> = HashMap::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if are_proportional(field, &lines[a].coeffs, &lines[b].coeffs) {
                return Err(Error::DuplicateLine(format!("{} = {}", lines[a].name, lines[b].name)));
            }
            let p = intersect_lines(field, &lines[a], &lines[b])?;
            let entry = groups.entry(p.key()).or_insert_with(|| (p, BTreeSet::new()));
            entry.1.insert(a);
            entry.1.insert(b);
        }
    }
    let mut keyed: Vec<(String, ProjPoint, BTreeSet<usize>)> =
        groups.into_iter().map(|(k, (p, s))| (k, p, s)).collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0));

    let mut per_line = vec![Vec::new(); n];
    let points: Vec<LatticePoint> = keyed
        .into_iter()
        .enumerate()
        .map(|(i, (_, point, set))| {
            for &l in &set {
                per_line[l].push(i);
            }
            LatticePoint { point, multiplicity: set.len(), lines: set.into_iter().collect() }
        })
        .collect();
    let lat = IncidenceLattice { n, points, per_line };
    lat.validate()?;
    Ok(lat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Field, Rational};

    fn lines(f: &FieldSpec, cs: &[[i64; 3]]) -> Vec<ProjLine> {
        cs.iter()
            .enumerate()
            .map(|(i, c)| ProjLine::new(format!("L{i}"), c.map(|x| f.from_rational(&Rational::from(x)))))
            .collect()
    }

    #[test]
    fn near_pencil_four() {
        let f = FieldSpec::rationals();
        let ls = lines(&f, &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0], [0, 0, 1]]);
        let lat = build_lattice(&f, &ls).unwrap();
        assert_eq!(lat.signature(), BTreeMap::from([(2, 4), (4, 1)]));
    }

    #[test]
    fn duplicate_rejected() {
        let f = FieldSpec::rationals();
        let ls = lines(&f, &[[1, 0, 0], [2, 0, 0], [0, 0, 1]]);
        assert!(matches!(build_lattice(&f, &ls), Err(Error::DuplicateLine(_))));
        let mut ls = lines(&f, &[[1, 0, 0], [0, 1, 0]]);
        ls[1].name = "L0".into();
        assert!(matches!(build_lattice(&f, &ls), Err(Error::DuplicateLine(_))));
    }

    #[test]
    fn too_few_lines() {
        let f = FieldSpec::rationals();
        assert!(build_lattice(&f, &lines(&f, &[[1, 0, 0]])).is_err());
    }
}
