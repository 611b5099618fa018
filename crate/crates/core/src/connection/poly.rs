//! Sparse polynomials in `z, w` over a number field, with scalar, vector and 2x2 matrix coefficients.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::exactfield::{Field, FieldElement, FieldSpec};

/// Canonical sparse form: no zero coefficients are stored, so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    /// `(deg_z, deg_w) -> coefficient`.
    terms: BTreeMap<(u32, u32), FieldElement>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly::default()
    }

    pub fn constant(f: &FieldSpec, c: FieldElement) -> Self {
        let mut p = BivariatePoly::zero();
        p.add_term(f, (0, 0), c);
        p
    }

    /// `s z + t w`.
    pub fn linear(f: &FieldSpec, s: &FieldElement, t: &FieldElement) -> Self {
        let mut p = BivariatePoly::zero();
        p.add_term(f, (1, 0), s.clone());
        p.add_term(f, (0, 1), t.clone());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, f: &FieldSpec, zw: (u32, u32)) -> FieldElement {
        self.terms.get(&zw).cloned().unwrap_or_else(|| f.zero())
    }

    fn add_term(&mut self, f: &FieldSpec, zw: (u32, u32), c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&zw) {
            Some(old) => f.add(old, &c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&zw);
        } else {
            self.terms.insert(zw, sum);
        }
    }

    pub fn add(&self, f: &FieldSpec, other: &Self) -> Self {
        let mut out = self.clone();
        for (&zw, c) in &other.terms {
            out.add_term(f, zw, c.clone());
        }
        out
    }

    pub fn scale(&self, f: &FieldSpec, c: &FieldElement) -> Self {
        let mut out = BivariatePoly::zero();
        for (&zw, x) in &self.terms {
            out.add_term(f, zw, f.mul(x, c));
        }
        out
    }

    pub fn mul(&self, f: &FieldSpec, other: &Self) -> Self {
        let mut out = BivariatePoly::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &other.terms {
                out.add_term(f, (a + c, b + d), f.mul(x, y));
            }
        }
        out
    }

    pub fn product<'a>(f: &FieldSpec, factors: impl IntoIterator<Item = &'a BivariatePoly>) -> Self {
        factors.into_iter().fold(BivariatePoly::constant(f, f.one()), |acc, p| acc.mul(f, p))
    }
}

#[derive(Serialize)]
struct Term<'a> {
    z: u32,
    w: u32,
    c: &'a FieldElement,
}

impl Serialize for BivariatePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(&(z, w), c)| Term { z, w, c }))
    }
}

/// 2x2 matrix of polynomials, row-major.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MatrixPoly(pub [[BivariatePoly; 2]; 2]);

impl MatrixPoly {
    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(BivariatePoly::is_zero)
    }

    pub fn add(&self, f: &FieldSpec, other: &Self) -> Self {
        let mut out = self.clone();
        for r in 0..2 {
            for c in 0..2 {
                out.0[r][c] = self.0[r][c].add(f, &other.0[r][c]);
            }
        }
        out
    }
}

/// Column vector of two polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VectorPoly(pub [BivariatePoly; 2]);

impl VectorPoly {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(BivariatePoly::is_zero)
    }

    pub fn add(&self, f: &FieldSpec, other: &Self) -> Self {
        VectorPoly([self.0[0].add(f, &other.0[0]), self.0[1].add(f, &other.0[1])])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let f = FieldSpec::rationals();
        let one = f.one();
        let m1 = f.neg(&one);
        let a = BivariatePoly::linear(&f, &one, &one);
        let b = BivariatePoly::linear(&f, &one, &m1);
        let p = a.mul(&f, &b);
        assert_eq!(p.coeff(&f, (2, 0)), one);
        assert_eq!(p.coeff(&f, (0, 2)), m1);
        assert!(p.coeff(&f, (1, 1)).is_zero());
        assert_eq!(p.terms().count(), 2);
        assert!(p.add(&f, &p.scale(&f, &m1)).is_zero());
    }
}
