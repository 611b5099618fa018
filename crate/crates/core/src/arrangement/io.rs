//! JSON arrangement files:
//! `{"field": FieldSpec, "lines": [{"name", "coeffs": [fe, fe, fe]}], "weights": {name: "p/q"}}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::geometry::{are_proportional, ProjLine};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub field: FieldSpec,
    pub lines: Vec<ProjLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, Rational>>,
}

/// A validated set of lines over one field.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrangement {
    pub field: FieldSpec,
    pub lines: Vec<ProjLine>,
}

impl Arrangement {
    pub fn new(field: FieldSpec, lines: Vec<ProjLine>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(lines.len());
        for l in lines {
            if !seen.insert(l.name.clone()) {
                return Err(Error::DuplicateLine(l.name));
            }
            let [a, b, c] = l.coeffs;
            let coeffs = [field.conform(a)?, field.conform(b)?, field.conform(c)?];
            if coeffs.iter().all(|x| x.is_zero()) {
                return Err(Error::DegenerateConfiguration(format!("line {} has zero coefficients", l.name)));
            }
            if let Some(prev) = out.iter().find(|m: &&ProjLine| are_proportional(&field, &m.coeffs, &coeffs)) {
                return Err(Error::DuplicateLine(format!("{} = {}", prev.name, l.name)));
            }
            out.push(ProjLine { name: l.name, coeffs });
        }
        Ok(Arrangement { field, lines: out })
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.lines.iter().map(|l| l.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lines.iter().position(|l| l.name == name)
    }

    /// Orders a name-keyed weight map by line index.
    pub fn weights_from_map(&self, map: &BTreeMap<String, Rational>) -> Result<Vec<Rational>> {
        for name in map.keys() {
            if self.index_of(name).is_none() {
                return Err(Error::UnknownCurveReference(name.clone()));
            }
        }
        let missing: Vec<&str> =
            self.lines.iter().filter(|l| !map.contains_key(&l.name)).map(|l| l.name.as_str()).collect();
        if !missing.is_empty() {
            return Err(Error::WeightsMissing(missing.join(", ")));
        }
        Ok(self.lines.iter().map(|l| map[&l.name].clone()).collect())
    }

    pub fn weights_to_map(&self, w: &[Rational]) -> BTreeMap<String, Rational> {
        self.lines.iter().zip(w).map(|(l, b)| (l.name.clone(), b.clone())).collect()
    }

    pub fn to_file(&self, weights: Option<&[Rational]>) -> ArrangementFile {
        ArrangementFile {
            field: self.field.clone(),
            lines: self.lines.clone(),
            weights: weights.map(|w| self.weights_to_map(w)),
        }
    }
}

/// Wraps a serde_json error with its line and column.
pub fn json_error(source: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!("{source}:{}:{}: {e}", e.line(), e.column()))
}

pub fn parse_arrangement(text: &str, source: &str) -> Result<(Arrangement, Option<Vec<Rational>>)> {
    let file: ArrangementFile = serde_json::from_str(text).map_err(|e| json_error(source, e))?;
    let arr = Arrangement::new(file.field, file.lines)?;
    let weights = file.weights.as_ref().map(|m| arr.weights_from_map(m)).transpose()?;
    Ok((arr, weights))
}

/// Weight files hold either `{name: "p/q"}` or `{"weights": {name: "p/q"}}`.
pub fn parse_weights(text: &str, source: &str) -> Result<BTreeMap<String, Rational>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Wrapped { weights: BTreeMap<String, Rational> },
        Bare(BTreeMap<String, Rational>),
    }
    let r: Repr = serde_json::from_str(text).map_err(|e| json_error(source, e))?;
    Ok(match r {
        Repr::Wrapped { weights } | Repr::Bare(weights) => weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    #[test]
    fn parses_rational_file_with_weights() {
        let text = r#"{"field": "rational",
            "lines": [{"name": "x", "coeffs": ["1", "0", "0"]},
                      {"name": "y", "coeffs": [["0"], ["1"], ["0"]]},
                      {"name": "z", "coeffs": [0, 0, 1]}],
            "weights": {"x": "0", "y": "0", "z": "0"}}"#;
        let (arr, w) = parse_arrangement(text, "t.json").unwrap();
        assert_eq!(arr.n(), 3);
        assert_eq!(w.unwrap(), vec![rat(0, 1); 3]);
    }

    #[test]
    fn constants_are_padded_in_extensions() {
        let text = r#"{"field": {"min_poly": ["1","1","1"]},
            "lines": [{"name": "a", "coeffs": ["1", ["0","1"], "0"]},
                      {"name": "b", "coeffs": ["0", "1", "-1"]}]}"#;
        let (arr, w) = parse_arrangement(text, "t.json").unwrap();
        assert!(w.is_none());
        assert_eq!(arr.lines[1].coeffs[2].coeffs().len(), 2);
    }

    #[test]
    fn reports_position_and_duplicates() {
        let err = parse_arrangement("{\"field\": \"rational\",\n \"lines\": [}", "bad.json").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.starts_with("bad.json:2:"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let dup = r#"{"field": "rational", "lines": [
            {"name": "x", "coeffs": ["1","0","0"]}, {"name": "x", "coeffs": ["0","1","0"]}]}"#;
        assert!(matches!(parse_arrangement(dup, "d"), Err(Error::DuplicateLine(_))));
    }

    #[test]
    fn weight_errors() {
        let text = r#"{"field": "rational", "lines": [
            {"name": "x", "coeffs": ["1","0","0"]}, {"name": "y", "coeffs": ["0","1","0"]}],
            "weights": {"x": "1/2"}}"#;
        assert!(matches!(parse_arrangement(text, "w"), Err(Error::WeightsMissing(_))));
        let text = text.replace(r#""x": "1/2""#, r#""x": "1/2", "y": "1/2", "q": "1""#);
        assert!(matches!(parse_arrangement(&text, "w"), Err(Error::UnknownCurveReference(_))));
        let w = parse_weights(r#"{"weights": {"a": "1/3"}}"#, "w").unwrap();
        assert_eq!(w["a"], rat(1, 3));
        let w = parse_weights(r#"{"a": "2/3"}"#, "w").unwrap();
        assert_eq!(w["a"], rat(2, 3));
    }
}
