//! Named arrangements with their default weights and expected lattice signatures.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::arrangement::{line_through, normalize_line, symmetric_check, Arrangement, ProjLine, ProjPoint};
use crate::error::{Error, Result};
use crate::exactfield::{rat, Field, FieldElement, FieldSpec, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum CatalogName {
    Triangle,
    NearPencil { n: u32 },
    Quadrilateral,
    CevaExt { m: u32 },
    Hesse,
    SevenLines,
    PolygonMirrors { k: u32 },
}

impl CatalogName {
    pub fn parse(name: &str, params: &[i64]) -> Result<Self> {
        let one = |what: &str, min: i64| -> Result<u32> {
            match params {
                [p] if *p >= min && *p <= u32::MAX as i64 => Ok(*p as u32),
                [p] => Err(Error::ParamOutOfRange(format!("{name}: {what} = {p}, need {what} >= {min}"))),
                _ => Err(Error::ParamOutOfRange(format!("{name} takes exactly one parameter {what}"))),
            }
        };
        let none = || -> Result<()> {
            if params.is_empty() {
                Ok(())
            } else {
                Err(Error::ParamOutOfRange(format!("{name} takes no parameters")))
            }
        };
        Ok(match name {
            "triangle" => none().map(|_| CatalogName::Triangle)?,
            "near_pencil" => CatalogName::NearPencil { n: one("n", 3)? },
            "quadrilateral" => none().map(|_| CatalogName::Quadrilateral)?,
            "ceva_ext" => CatalogName::CevaExt { m: one("m", 2)? },
            "hesse" => none().map(|_| CatalogName::Hesse)?,
            "seven_lines" => none().map(|_| CatalogName::SevenLines)?,
            "polygon_mirrors" => CatalogName::PolygonMirrors { k: one("k", 3)? },
            other => return Err(Error::UnknownEntry(other.to_string())),
        })
    }

    pub fn label(&self) -> String {
        match self {
            CatalogName::Triangle => "triangle".into(),
            CatalogName::NearPencil { n } => format!("near_pencil({n})"),
            CatalogName::Quadrilateral => "quadrilateral".into(),
            CatalogName::CevaExt { m } => format!("ceva_ext({m})"),
            CatalogName::Hesse => "hesse".into(),
            CatalogName::SevenLines => "seven_lines".into(),
            CatalogName::PolygonMirrors { k } => format!("polygon_mirrors({k})"),
        }
    }
}

/// Names and parameter descriptions, for `catalog list`.
pub fn catalog_list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("triangle", "x, y, z; weight 0 (boundary)"),
        ("near_pencil", "n >= 3: n lines through (0:0:1) plus z = 0"),
        ("quadrilateral", "six lines through four generic points; weight 1/2"),
        ("ceva_ext", "m >= 2: factors of x^m-y^m, y^m-z^m, z^m-x^m plus x, y, z; weight m/(m+1)"),
        ("hesse", "12 lines through the 9 inflection points of a cubic; weight 3/4"),
        ("seven_lines", "x, y, z, x+-y+-z; weights 1/2 and w_x + w_y + w_z = 2"),
        ("polygon_mirrors", "k >= 3: sides and axes of a regular k-gon; limit-candidate weights"),
    ]
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: CatalogName,
    pub arrangement: Arrangement,
    pub expected_signature: BTreeMap<usize, usize>,
    pub default_weights: Vec<Rational>,
    /// Points per line the symmetric check must report, when the entry is symmetric.
    pub expected_points_per_line: Option<usize>,
    pub flags: Vec<String>,
}

pub fn catalog_build(name: &str, params: &[i64]) -> Result<CatalogEntry> {
    build_entry(CatalogName::parse(name, params)?)
}

pub fn catalog_validate(name: &str, params: &[i64]) -> Result<bool> {
    validate_entry(&catalog_build(name, params)?)
}

pub fn validate_entry(entry: &CatalogEntry) -> Result<bool> {
    let lat = entry.arrangement.lattice()?;
    if lat.signature() != entry.expected_signature {
        return Ok(false);
    }
    if let Some(ppl) = entry.expected_points_per_line {
        let s = symmetric_check(&lat);
        if !s.is_symmetric || s.m.map(|m| m + 1) != Some(ppl) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn build_entry(name: CatalogName) -> Result<CatalogEntry> {
    match name {
        CatalogName::Triangle => {
            let f = FieldSpec::rationals();
            let lines = rational_lines(&f, &[("x", [1, 0, 0]), ("y", [0, 1, 0]), ("z", [0, 0, 1])]);
            Ok(CatalogEntry {
                name,
                arrangement: Arrangement::new(f, lines)?,
                expected_signature: BTreeMap::from([(2, 3)]),
                default_weights: vec![Rational::zero(); 3],
                expected_points_per_line: None,
                flags: vec!["boundary weights".into()],
            })
        }
        CatalogName::NearPencil { n } => {
            let f = FieldSpec::rationals();
            let mut lines = vec![ProjLine::new("p0", ints(&f, [1, 0, 0]))];
            for i in 1..n as i64 {
                lines.push(ProjLine::new(format!("p{i}"), ints(&f, [i - 1, -1, 0])));
            }
            lines.push(ProjLine::new("z", ints(&f, [0, 0, 1])));
            let mut w = vec![Rational::one() - rat(2, n as i64); n as usize];
            w.push(Rational::zero());
            Ok(CatalogEntry {
                name,
                arrangement: Arrangement::new(f, lines)?,
                expected_signature: merge_sig(&[(n as usize, 1), (2, n as usize)]),
                default_weights: w,
                expected_points_per_line: None,
                flags: vec!["boundary weight 0 on z".into()],
            })
        }
        CatalogName::Quadrilateral => {
            let f = FieldSpec::rationals();
            Ok(CatalogEntry {
                name,
                arrangement: Arrangement::new(f.clone(), quadrilateral_lines(&f))?,
                expected_signature: BTreeMap::from([(2, 3), (3, 4)]),
                default_weights: vec![rat(1, 2); 6],
                expected_points_per_line: Some(3),
                flags: vec![],
            })
        }
        CatalogName::CevaExt { m } => ceva_ext(m),
        CatalogName::Hesse => hesse(),
        CatalogName::SevenLines => {
            let f = FieldSpec::rationals();
            let lines = rational_lines(
                &f,
                &[
                    ("x", [1, 0, 0]),
                    ("y", [0, 1, 0]),
                    ("z", [0, 0, 1]),
                    ("x+y+z", [1, 1, 1]),
                    ("x+y-z", [1, 1, -1]),
                    ("x-y+z", [1, -1, 1]),
                    ("x-y-z", [1, -1, -1]),
                ],
            );
            Ok(CatalogEntry {
                name,
                arrangement: Arrangement::new(f, lines)?,
                expected_signature: BTreeMap::from([(2, 3), (3, 6)]),
                default_weights: seven_lines_weights(&rat(2, 3), &rat(2, 3)),
                expected_points_per_line: None,
                flags: vec!["x, y, z weights are a family with w_x + w_y + w_z = 2".into()],
            })
        }
        CatalogName::PolygonMirrors { k } => polygon_mirrors(k),
    }
}

fn ints(f: &FieldSpec, c: [i64; 3]) -> [FieldElement; 3] {
    c.map(|x| f.from_rational(&Rational::from(x)))
}

fn rational_lines(f: &FieldSpec, spec: &[(&str, [i64; 3])]) -> Vec<ProjLine> {
    spec.iter().map(|(n, c)| ProjLine::new(*n, ints(f, *c))).collect()
}

fn merge_sig(parts: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &(mult, count) in parts {
        if count > 0 {
            *m.entry(mult).or_insert(0) += count;
        }
    }
    m
}

fn quadrilateral_lines(f: &FieldSpec) -> Vec<ProjLine> {
    rational_lines(
        f,
        &[
            ("x", [1, 0, 0]),
            ("y", [0, 1, 0]),
            ("z", [0, 0, 1]),
            ("x-y", [1, -1, 0]),
            ("y-z", [0, 1, -1]),
            ("x-z", [1, 0, -1]),
        ],
    )
}

/// Biased weights on the quadrilateral: `beta` on x, y, z and `1 - beta` on the
/// three lines through (1:1:1). Satisfies `sum (beta_j - 1) = -3` for every `beta`.
pub fn quadrilateral_biased_weights(beta: &Rational) -> Vec<Rational> {
    let other = Rational::one() - beta;
    vec![beta.clone(), beta.clone(), beta.clone(), other.clone(), other.clone(), other]
}

/// Weights for `seven_lines`: 1/2 on the four `x+-y+-z` lines and `(w_x, w_y, 2 - w_x - w_y)` on x, y, z.
pub fn seven_lines_weights(wx: &Rational, wy: &Rational) -> Vec<Rational> {
    let wz = Rational::from(2) - wx - wy;
    let mut w = vec![wx.clone(), wy.clone(), wz];
    w.extend(std::iter::repeat_n(rat(1, 2), 4));
    w
}

fn ceva_ext(m: u32) -> Result<CatalogEntry> {
    let f = FieldSpec::cyclotomic(m);
    let one = f.one();
    let zero = f.zero();
    let mut lines = Vec::new();
    for a in 0..m as usize {
        let r = f.neg(&f.power_of_generator(a));
        lines.push(ProjLine::new(format!("x-z{a}y"), [one.clone(), r.clone(), zero.clone()]));
        lines.push(ProjLine::new(format!("y-z{a}z"), [zero.clone(), one.clone(), r.clone()]));
        lines.push(ProjLine::new(format!("z-z{a}x"), [r.clone(), zero.clone(), one.clone()]));
    }
    lines.extend(rational_lines(&f, &[("x", [1, 0, 0]), ("y", [0, 1, 0]), ("z", [0, 0, 1])]));
    let n = 3 * (m as usize + 1);
    let m_us = m as usize;
    Ok(CatalogEntry {
        name: CatalogName::CevaExt { m },
        arrangement: Arrangement::new(f, lines)?,
        expected_signature: merge_sig(&[(2, 3 * m_us), (3, m_us * m_us), (m_us + 2, 3)]),
        default_weights: vec![rat(m as i64, m as i64 + 1); n],
        expected_points_per_line: Some(m_us + 2),
        flags: vec![],
    })
}

/// The nine inflection points `(0:1:-w^a)`, `(1:0:-w^a)`, `(1:-w^a:0)` of the Fermat cubic.
pub fn hesse_points(f: &FieldSpec) -> Result<Vec<ProjPoint>> {
    let one = f.one();
    let zero = f.zero();
    let mut pts = Vec::new();
    for a in 0..3 {
        let r = f.neg(&f.power_of_generator(a));
        pts.push(ProjPoint::new(f, [zero.clone(), one.clone(), r.clone()])?);
        pts.push(ProjPoint::new(f, [one.clone(), zero.clone(), r.clone()])?);
        pts.push(ProjPoint::new(f, [one.clone(), r.clone(), zero.clone()])?);
    }
    Ok(pts)
}

fn hesse() -> Result<CatalogEntry> {
    let f = FieldSpec::cyclotomic(3);
    let pts = hesse_points(&f)?;
    // Group the lines through pairs of inflection points; keep those with >= 3 of them.
    let mut by_line: HashMap<String, ([FieldElement; 3], Vec<usize>)> = HashMap::new();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let c = normalize_line(&f, line_through(&f, &pts[i], &pts[j])?)?;
            let key = c.iter().map(FieldElement::key).collect::<Vec<_>>().join(":");
            let e = by_line.entry(key).or_insert_with(|| (c, Vec::new()));
            for idx in [i, j] {
                if !e.1.contains(&idx) {
                    e.1.push(idx);
                }
            }
        }
    }
    let mut rich: Vec<(String, [FieldElement; 3], usize)> =
        by_line.into_iter().filter(|(_, (_, on))| on.len() >= 3).map(|(k, (c, on))| (k, c, on.len())).collect();
    rich.sort_by(|a, b| a.0.cmp(&b.0));
    if rich.len() != 12 || rich.iter().any(|r| r.2 != 3) {
        return Err(Error::Internal(format!("Hesse generator produced {} rich lines", rich.len())));
    }
    let lines = rich.into_iter().enumerate().map(|(i, (_, c, _))| ProjLine::new(format!("h{i}"), c)).collect();
    Ok(CatalogEntry {
        name: CatalogName::Hesse,
        arrangement: Arrangement::new(f, lines)?,
        expected_signature: BTreeMap::from([(2, 12), (4, 9)]),
        default_weights: vec![rat(3, 4); 12],
        expected_points_per_line: Some(5),
        flags: vec![],
    })
}

fn polygon_mirrors(k: u32) -> Result<CatalogEntry> {
    let f = FieldSpec::cyclotomic(4 * k);
    let order = 4 * k as usize;
    let zeta = |e: usize| f.power_of_generator(e % order);
    let half = f.from_rational(&rat(1, 2));
    let i_unit = zeta(k as usize);
    // cos(pi j / k) and sin(pi j / k) from zeta^{+-2j}
    let cos = |j: usize| {
        let s = f.add(&zeta(2 * j), &zeta(order - (2 * j) % order));
        f.mul(&s, &half)
    };
    let sin = |j: usize| {
        let d = f.sub(&zeta(2 * j), &zeta(order - (2 * j) % order));
        f.neg(&f.mul(&f.mul(&d, &i_unit), &half))
    };
    let k_us = k as usize;
    let mut lines = Vec::new();
    let mut weights = Vec::new();
    let c1 = cos(1);
    for j in 0..k_us {
        // normal direction at angle pi (2j+1)/k, distance cos(pi/k) from the center
        let a = 2 * j + 1;
        lines.push(ProjLine::new(format!("side{j}"), [cos(a), sin(a), f.neg(&c1)]));
        weights.push(rat(2 * k as i64 - 1, 2 * k as i64));
    }
    for j in 0..k_us {
        lines.push(ProjLine::new(format!("axis{j}"), [f.neg(&sin(j)), cos(j), f.zero()]));
        weights.push(rat(k as i64 - 1, k as i64));
    }
    Ok(CatalogEntry {
        name: CatalogName::PolygonMirrors { k },
        arrangement: Arrangement::new(f, lines)?,
        expected_signature: merge_sig(&[(2, k_us), (3, k_us * (k_us - 1) / 2), (k_us, 1)]),
        default_weights: weights,
        expected_points_per_line: None,
        flags: vec!["limit-candidate data".into()],
    })
}
