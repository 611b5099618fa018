//! Abstract curve-data files:
//!
//! ```json
//! {"surface": {"c2": "3", "kind": "cp2"},
//!  "curves": [{"name": "C", "chi": "2", "K_dot": "-6", "self": "4", "class_deg": "2", "beta": "1/2"}],
//!  "points": [{"id": "t1", "p": 1, "q": 2, "branches": [{"curve": "C", "kind": "regular", "count": 1}]}],
//!  "B": {"pairs": [{"a": "L1", "b": "L2", "count": "1"}], "diagonal": {"C": "6"}}}
//! ```
//!
//! Unlisted pairs have `B_jk = 0`. A missing diagonal entry is computed as
//! `-self + sum_i p_i q_i d_ij^2`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::system::{BranchKind, CurveData, Mode, SingularPointData, SurfaceKind, WeightedSystem};
use super::verify::eq1_residuals;
use crate::arrangement::json_error;
use crate::error::{Error, Result};
use crate::exactfield::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceData {
    pub c2: Rational,
    #[serde(default = "cp2")]
    pub kind: SurfaceKind,
}

fn cp2() -> SurfaceKind {
    SurfaceKind::Cp2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairCount {
    pub a: String,
    pub b: String,
    pub count: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BData {
    #[serde(default)]
    pub pairs: Vec<PairCount>,
    #[serde(default)]
    pub diagonal: BTreeMap<String, Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub surface: SurfaceData,
    pub curves: Vec<CurveData>,
    #[serde(default)]
    pub points: Vec<SingularPointData>,
    #[serde(rename = "B")]
    pub b: Option<BData>,
}

pub fn parse_curve_file(text: &str, source: &str) -> Result<CurveFile> {
    serde_json::from_str(text).map_err(|e| json_error(source, e))
}

impl CurveFile {
    /// Assembles the abstract system, computing missing `B_jj` from the point data.
    pub fn to_system(&self) -> Result<WeightedSystem> {
        let b = self.b.as_ref().ok_or_else(|| Error::IncompleteData("missing B".into()))?;
        let n = self.curves.len();
        let index = |name: &str| {
            self.curves.iter().position(|c| c.name == name).ok_or_else(|| Error::UnknownCurveReference(name.into()))
        };
        for (i, c) in self.curves.iter().enumerate() {
            if self.curves[..i].iter().any(|d| d.name == c.name) {
                return Err(Error::DuplicateLine(c.name.clone()));
            }
        }
        let mut points = self.points.clone();
        for (i, pt) in points.iter_mut().enumerate() {
            if pt.id.is_empty() {
                pt.id = format!("x{i}");
            }
            if pt.branches.is_empty() {
                return Err(Error::IncompleteData(format!("point {} has no branch data", pt.id)));
            }
            pt.validate()?;
            for br in &pt.branches {
                index(&br.curve)?;
            }
        }
        let mut m = vec![vec![Rational::zero(); n]; n];
        for pc in &b.pairs {
            let (j, k) = (index(&pc.a)?, index(&pc.b)?);
            if j == k {
                return Err(Error::IncompleteData(format!("pair entry {} with itself; use diagonal", pc.a)));
            }
            m[j][k] = pc.count.clone();
            m[k][j] = pc.count.clone();
        }
        for name in b.diagonal.keys() {
            index(name)?;
        }
        for (j, c) in self.curves.iter().enumerate() {
            m[j][j] = match b.diagonal.get(&c.name) {
                Some(v) => v.clone(),
                None => {
                    let local: Rational = points.iter().map(|pt| pt.pq() * pt.d(&c.name).pow(2)).sum();
                    local - &c.self_int
                }
            };
        }
        let sys = WeightedSystem {
            mode: Mode::AbstractCurves,
            curves: self.curves.clone(),
            points,
            b: m,
            c2_surface: self.surface.c2.clone(),
            surface: self.surface.kind,
            lattice_points: vec![],
        };
        sys.validate()?;
        Ok(sys)
    }
}

/// One branch-kind assignment: `(point id, branch index, kind)` for every branch at a non-`(1,1)` point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KindAssignment {
    pub kinds: Vec<(String, usize, BranchKind)>,
}

/// Upper bound on the number of assignments the search will enumerate.
pub const MAX_KIND_ASSIGNMENTS: usize = 3usize.pow(12);

/// Tries every regular / z-axis / w-axis labelling of the branches at non-`(1,1)` points
/// and returns those for which every per-curve relation residual vanishes.
pub fn search_branch_kinds(file: &CurveFile) -> Result<Vec<KindAssignment>> {
    let slots: Vec<(usize, usize)> = file
        .points
        .iter()
        .enumerate()
        .filter(|(_, p)| !(p.p == 1 && p.q == 1))
        .flat_map(|(i, p)| (0..p.branches.len()).map(move |b| (i, b)))
        .collect();
    let total = 3usize
        .checked_pow(slots.len() as u32)
        .filter(|&t| t <= MAX_KIND_ASSIGNMENTS)
        .ok_or_else(|| Error::IncompleteData(format!("{} branches is too many to search", slots.len())))?;
    const KINDS: [BranchKind; 3] = [BranchKind::Regular, BranchKind::ZAxis, BranchKind::WAxis];
    let mut found = Vec::new();
    for code in 0..total {
        let mut trial = file.clone();
        let mut c = code;
        for &(i, b) in &slots {
            trial.points[i].branches[b].kind = KINDS[c % 3];
            c /= 3;
        }
        if trial.points.iter().any(|p| p.validate().is_err()) {
            continue;
        }
        let sys = trial.to_system()?;
        if eq1_residuals(&sys).iter().all(|r| r.value.is_zero()) {
            let kinds = slots
                .iter()
                .map(|&(i, b)| {
                    let pt = &sys.points[i];
                    (pt.id.clone(), b, pt.branches[b].kind)
                })
                .collect();
            found.push(KindAssignment { kinds });
        }
    }
    Ok(found)
}
