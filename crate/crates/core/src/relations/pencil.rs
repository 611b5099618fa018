use serde::Serialize;

use crate::arrangement::IncidenceLattice;

/// Why the double-point partners of a line are not concurrent: `line` misses the
/// point where the first two partners meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilObstruction {
    pub point: usize,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilLineReport {
    pub line: usize,
    /// Lines meeting this one at a double point.
    pub partners: Vec<usize>,
    pub passes: bool,
    /// Lattice point common to all partners, when there are at least two.
    pub witness: Option<usize>,
    pub obstruction: Option<PencilObstruction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub lines: Vec<PencilLineReport>,
    pub all_pass: bool,
}

/// For each line, decides whether the lines meeting it at double points share a point.
///
/// Two lines of the arrangement can only meet at a lattice point, so concurrence is
/// decided on the lattice alone.
pub fn pencil_criterion(lat: &IncidenceLattice) -> PencilReport {
    let lines: Vec<PencilLineReport> = (0..lat.n)
        .map(|j| {
            let partners: Vec<usize> =
                (0..lat.n).filter(|&k| k != j && lat.points[lat.meet(j, k)].multiplicity == 2).collect();
            if partners.len() < 2 {
                return PencilLineReport { line: j, partners, passes: true, witness: None, obstruction: None };
            }
            let p = lat.meet(partners[0], partners[1]);
            match partners[2..].iter().find(|&&k| !lat.incident(p, k)) {
                None => PencilLineReport { line: j, partners, passes: true, witness: Some(p), obstruction: None },
                Some(&k) => PencilLineReport {
                    line: j,
                    partners,
                    passes: false,
                    witness: None,
                    obstruction: Some(PencilObstruction { point: p, line: k }),
                },
            }
        })
        .collect();
    let all_pass = lines.iter().all(|l| l.passes);
    PencilReport { lines, all_pass }
}
