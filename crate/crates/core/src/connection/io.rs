//! Connection files:
//! `{"field": FieldSpec, "origin_lines": [{"s": fe, "t": fe}], "weights": ["1/2", ...], "matrices": [[[fe, fe], [fe, fe]], ...]}`.
//! `field` defaults to the rationals; without `matrices` the residue system is solved.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::residue::{
    cone_alpha, solve_residues, verify_flat_torsion, FlatnessReport, Matrix2, OriginLine, ResidueSystem,
};
use crate::arrangement::json_error;
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldElement, FieldSpec, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionFile {
    #[serde(default = "FieldSpec::rationals")]
    pub field: FieldSpec,
    pub origin_lines: Vec<OriginLine>,
    pub weights: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Matrix2>>,
}

pub fn parse_connection_file(text: &str, source: &str) -> Result<ConnectionFile> {
    let mut file: ConnectionFile = serde_json::from_str(text).map_err(|e| json_error(source, e))?;
    let f = file.field.clone();
    for l in &mut file.origin_lines {
        l.s = f.conform(l.s.clone())?;
        l.t = f.conform(l.t.clone())?;
    }
    if let Some(ms) = &mut file.matrices {
        for m in ms.iter_mut() {
            for x in m.iter_mut().flatten() {
                *x = f.conform(x.clone())?;
            }
        }
    }
    Ok(file)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledFlatness {
    pub label: String,
    pub report: FlatnessReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectionVerifyReport {
    /// Dimension of the solution space of the residue conditions.
    pub dimension: usize,
    pub systems: Vec<LabeledFlatness>,
    pub all_ok: bool,
}

fn all_ok(systems: &[LabeledFlatness]) -> bool {
    systems.iter().all(|s| {
        let r = &s.report;
        r.constraints_ok && r.flat && r.torsion_free && r.blowup_residue_ok
    })
}

/// Verifies the explicit matrices if present; otherwise the particular solution and
/// the particular solution shifted by each basis vector.
pub fn verify_connection_file(file: &ConnectionFile) -> Result<ConnectionVerifyReport> {
    let f = &file.field;
    let sol = solve_residues(f, &file.origin_lines, &file.weights)?;
    let systems = match &file.matrices {
        Some(ms) => {
            if ms.len() != file.origin_lines.len() {
                return Err(Error::IncompleteData(format!(
                    "{} matrices for {} lines",
                    ms.len(),
                    file.origin_lines.len()
                )));
            }
            let sys = ResidueSystem {
                field: f.clone(),
                lines: file.origin_lines.clone(),
                weights: file.weights.clone(),
                matrices: ms.clone(),
                alpha: cone_alpha(&file.weights),
            };
            vec![LabeledFlatness { label: "given".into(), report: verify_flat_torsion(&sys) }]
        }
        None => {
            let mut out =
                vec![LabeledFlatness { label: "particular".into(), report: verify_flat_torsion(&sol.particular) }];
            for l in 0..sol.dimension {
                let mut c = vec![f.zero(); sol.dimension];
                c[l] = f.one();
                out.push(LabeledFlatness {
                    label: format!("particular+basis{l}"),
                    report: verify_flat_torsion(&sol.point(&c)),
                });
            }
            out
        }
    };
    Ok(ConnectionVerifyReport { dimension: sol.dimension, all_ok: all_ok(&systems), systems })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampledSystem {
    pub coefficients: Vec<Rational>,
    pub system: ResidueSystem,
    pub report: FlatnessReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectionSampleReport {
    pub seed: u64,
    pub dimension: usize,
    pub samples: Vec<SampledSystem>,
    pub all_ok: bool,
}

/// Random rational in `[-5, 5]` with denominator at most 4.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=4))
}

/// Verifies `count` random points of the solution space, reproducibly from `seed`.
pub fn sample_connection(file: &ConnectionFile, seed: u64, count: usize) -> Result<ConnectionSampleReport> {
    let f = &file.field;
    let sol = solve_residues(f, &file.origin_lines, &file.weights)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<SampledSystem> = (0..count)
        .map(|_| {
            let coefficients: Vec<Rational> = (0..sol.dimension).map(|_| small_rational(&mut rng)).collect();
            let c: Vec<FieldElement> = coefficients.iter().map(|r| f.from_rational(r)).collect();
            let system = sol.point(&c);
            let report = verify_flat_torsion(&system);
            SampledSystem { coefficients, system, report }
        })
        .collect();
    let all_ok = samples.iter().all(|s| s.report.constraints_ok && s.report.flat && s.report.torsion_free);
    Ok(ConnectionSampleReport { seed, dimension: sol.dimension, samples, all_ok })
}
