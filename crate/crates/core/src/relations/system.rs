use serde::{Deserialize, Serialize};

use crate::arrangement::{b_matrix, Arrangement, IncidenceLattice};
use crate::error::{Error, Result};
use crate::exactfield::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Lines,
    AbstractCurves,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchKind {
    Regular,
    ZAxis,
    WAxis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub curve: String,
    pub kind: BranchKind,
    #[serde(default = "one")]
    pub count: u32,
}

fn one() -> u32 {
    1
}

/// A non-normal-crossing point of type `(p, q)` and the curve branches through it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPointData {
    #[serde(default)]
    pub id: String,
    pub p: u32,
    pub q: u32,
    pub branches: Vec<Branch>,
}

impl SingularPointData {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::IncompleteData(format!("point {}: {m}", self.id)));
        if self.p == 0 || self.q == 0 || self.p > self.q || num_integer::gcd(self.p, self.q) != 1 {
            return bad("need coprime 1 <= p <= q");
        }
        if self.branches.is_empty() {
            return bad("no branches");
        }
        for kind in [BranchKind::ZAxis, BranchKind::WAxis] {
            let c: u32 = self.branches.iter().filter(|b| b.kind == kind).map(|b| b.count).sum();
            if c > 1 {
                return bad("at most one branch per axis");
            }
        }
        if self.branches.iter().any(|b| b.count == 0) {
            return bad("branch count must be positive");
        }
        Ok(())
    }

    /// `d_ij`: branches of the curve, axis branches weighted `1/p` and `1/q`.
    pub fn d(&self, curve: &str) -> Rational {
        self.branches
            .iter()
            .filter(|b| b.curve == curve)
            .map(|b| {
                let c = Rational::from(b.count as i64);
                match b.kind {
                    BranchKind::Regular => c,
                    BranchKind::ZAxis => c / Rational::from(self.p as i64),
                    BranchKind::WAxis => c / Rational::from(self.q as i64),
                }
            })
            .sum()
    }

    /// `d~_ij`: plain branch count of the curve.
    pub fn d_tilde(&self, curve: &str) -> Rational {
        Rational::from(self.branches.iter().filter(|b| b.curve == curve).map(|b| b.count as i64).sum::<i64>())
    }

    pub fn pq(&self) -> Rational {
        Rational::from(self.p as i64 * self.q as i64)
    }
}

/// Numerical data of one curve; for lines `chi = 2`, `K.G = -3`, `G.G = 1`, degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveData {
    pub name: String,
    pub chi: Rational,
    #[serde(rename = "K_dot")]
    pub k_dot: Rational,
    #[serde(rename = "self")]
    pub self_int: Rational,
    #[serde(rename = "class_deg")]
    pub class_degree: Rational,
    pub beta: Rational,
}

impl CurveData {
    pub fn line(name: impl Into<String>, beta: Rational) -> Self {
        CurveData {
            name: name.into(),
            chi: Rational::from(2),
            k_dot: Rational::from(-3),
            self_int: Rational::one(),
            class_degree: Rational::one(),
            beta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    Cp2,
    Other,
}

/// A weighted arrangement together with everything the relations need.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedSystem {
    pub mode: Mode,
    pub curves: Vec<CurveData>,
    pub points: Vec<SingularPointData>,
    /// Normal-crossing counts off the diagonal, `B_jj` on it.
    pub b: Vec<Vec<Rational>>,
    pub c2_surface: Rational,
    pub surface: SurfaceKind,
    /// Lattice point index of each entry of `points` (line mode only).
    pub lattice_points: Vec<usize>,
}

impl WeightedSystem {
    /// Line mode: multiple points of multiplicity >= 3 become `(1,1)` points,
    /// double points are encoded in `B`.
    pub fn from_lines(arr: &Arrangement, lat: &IncidenceLattice, weights: &[Rational]) -> Result<Self> {
        if weights.len() != arr.n() {
            return Err(Error::WeightsMissing(format!("expected {} weights, got {}", arr.n(), weights.len())));
        }
        let curves: Vec<CurveData> =
            arr.lines.iter().zip(weights).map(|(l, b)| CurveData::line(l.name.clone(), b.clone())).collect();
        let multiple = lat.multiple_points();
        let points = multiple
            .iter()
            .map(|&i| SingularPointData {
                id: format!("x{i}"),
                p: 1,
                q: 1,
                branches: lat.points[i]
                    .lines
                    .iter()
                    .map(|&j| Branch { curve: arr.lines[j].name.clone(), kind: BranchKind::Regular, count: 1 })
                    .collect(),
            })
            .collect();
        Ok(WeightedSystem {
            mode: Mode::Lines,
            curves,
            points,
            b: b_matrix(lat).to_rational(),
            c2_surface: Rational::from(3),
            surface: SurfaceKind::Cp2,
            lattice_points: multiple,
        })
    }

    pub fn n(&self) -> usize {
        self.curves.len()
    }

    pub fn weights(&self) -> Vec<Rational> {
        self.curves.iter().map(|c| c.beta.clone()).collect()
    }

    pub fn with_weights(&self, w: &[Rational]) -> Self {
        let mut s = self.clone();
        for (c, b) in s.curves.iter_mut().zip(w) {
            c.beta = b.clone();
        }
        s
    }

    pub fn weight_of(&self, name: &str) -> Option<&Rational> {
        self.curves.iter().find(|c| c.name == name).map(|c| &c.beta)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.name == name)
    }

    /// All point types are `(1,1)`.
    pub fn all_simple_points(&self) -> bool {
        self.points.iter().all(|p| p.p == 1 && p.q == 1)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.b.len() != n || self.b.iter().any(|r| r.len() != n) {
            return Err(Error::IncompleteData(format!("B must be {n}x{n}")));
        }
        for pt in &self.points {
            pt.validate()?;
            for br in &pt.branches {
                if self.index_of(&br.curve).is_none() {
                    return Err(Error::UnknownCurveReference(br.curve.clone()));
                }
            }
        }
        Ok(())
    }
}
