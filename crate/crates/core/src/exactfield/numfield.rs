//! Number fields `Q[t]/(m(t))` with elements in the power basis `1, t, ..., t^{d-1}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Exact scalar field used by the generic linear algebra and geometry code.
pub trait Field {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, r: &Rational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// The rationals as a [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_rational(&self, r: &Rational) -> Rational {
        r.clone()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Result<Rational> {
        a.recip()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
}

/// A number field given by a monic minimal polynomial.
///
/// Irreducibility of the polynomial is a precondition; see
/// [`FieldSpec::reducibility_diagnostic`] for a partial check.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    min_poly: UPoly,
}

impl FieldSpec {
    pub fn new(min_poly: Vec<Rational>) -> Result<Self> {
        let p = UPoly::new(min_poly);
        match (p.degree(), p.leading()) {
            (Some(d), Some(lc)) if d >= 1 && lc.is_one() => Ok(FieldSpec { min_poly: p }),
            (Some(d), _) if d >= 1 => Err(Error::SpecMismatch("min_poly must be monic".into())),
            _ => Err(Error::SpecMismatch("min_poly must have degree >= 1".into())),
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { min_poly: UPoly::from_ints(&[0, 1]) }
    }

    pub fn cyclotomic(n: u32) -> Self {
        FieldSpec { min_poly: super::cyclotomic::cyclotomic_upoly(n) }
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    pub fn is_rationals(&self) -> bool {
        *self == FieldSpec::rationals()
    }

    pub fn min_poly(&self) -> &[Rational] {
        self.min_poly.coeffs()
    }

    /// The generator `t` (for degree 1 this is the root of the linear polynomial).
    pub fn generator(&self) -> FieldElement {
        self.reduce(UPoly::monomial(Rational::one(), 1))
    }

    pub fn element(&self, coeffs: Vec<Rational>) -> Result<FieldElement> {
        let e = FieldElement { coeffs };
        self.check(&e)?;
        Ok(e)
    }

    pub fn from_ints(&self, c: &[i64]) -> Result<FieldElement> {
        let mut v: Vec<Rational> = c.iter().map(|&x| Rational::from(x)).collect();
        if v.len() < self.degree() {
            v.resize(self.degree(), Rational::zero());
        }
        self.element(v)
    }

    pub fn check(&self, e: &FieldElement) -> Result<()> {
        if e.coeffs.len() != self.degree() {
            return Err(Error::SpecMismatch(format!(
                "element has {} coefficients, field degree is {}",
                e.coeffs.len(),
                self.degree()
            )));
        }
        Ok(())
    }

    /// Accepts an element of the right length, or a length-1 constant which is padded.
    pub fn conform(&self, mut e: FieldElement) -> Result<FieldElement> {
        if e.coeffs.len() == 1 && self.degree() > 1 {
            e.coeffs.resize(self.degree(), Rational::zero());
        }
        self.check(&e)?;
        Ok(e)
    }

    /// `t^k` reduced into the field.
    pub fn power_of_generator(&self, k: usize) -> FieldElement {
        self.reduce(UPoly::monomial(Rational::one(), k))
    }

    fn reduce(&self, p: UPoly) -> FieldElement {
        let r = p.rem(&self.min_poly).expect("min_poly is nonzero");
        let mut coeffs = r.into_coeffs();
        coeffs.resize(self.degree(), Rational::zero());
        FieldElement { coeffs }
    }

    fn to_poly(e: &FieldElement) -> UPoly {
        UPoly::new(e.coeffs.clone())
    }

    pub fn arith(&self, op: ArithOp, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        match op {
            ArithOp::InvOfA => self.inv(a),
            _ => {
                self.check(b)?;
                Ok(match op {
                    ArithOp::Add => self.add(a, b),
                    ArithOp::Sub => self.sub(a, b),
                    ArithOp::Mul => self.mul(a, b),
                    ArithOp::InvOfA => unreachable!(),
                })
            }
        }
    }

    /// Reports obvious reducibility: rational roots or repeated factors.
    /// Returns `None` when no factor was found (which does not prove irreducibility
    /// beyond degree 3).
    pub fn reducibility_diagnostic(&self) -> Option<String> {
        let d = self.degree();
        if d == 1 {
            return None;
        }
        let coeffs = self.min_poly.coeffs();
        // Clear denominators to get an integer polynomial.
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_int(lcm.clone())).numer().clone()).collect();
        if ints[0].is_zero() {
            return Some("t divides min_poly".into());
        }
        let small_divisors = |n: &BigInt| -> Vec<BigInt> {
            let n = n.abs();
            let mut out = Vec::new();
            let mut k = BigInt::one();
            while &k * &k <= n {
                if (&n % &k).is_zero() {
                    out.push(k.clone());
                    out.push(&n / &k);
                }
                k += 1;
                if k > BigInt::from(100_000) {
                    break;
                }
            }
            out
        };
        for p in small_divisors(&ints[0]) {
            for q in small_divisors(&ints[d]) {
                for sign in [1i64, -1] {
                    let root = Rational::new(&p * sign, q.clone());
                    if self.min_poly.eval(&root).is_zero() {
                        return Some(format!("min_poly has rational root {root}"));
                    }
                }
            }
        }
        let deriv = UPoly::new(coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from(i as i64)).collect());
        let (g, _, _) = UPoly::ext_gcd(&self.min_poly, &deriv);
        if g.degree().unwrap_or(0) > 0 {
            return Some("min_poly has a repeated factor".into());
        }
        None
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rationals() {
            write!(f, "FieldSpec(rational)")
        } else {
            write!(f, "FieldSpec({:?})", self.min_poly.coeffs())
        }
    }
}

impl Field for FieldSpec {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![Rational::zero(); self.degree()] }
    }

    fn one(&self) -> FieldElement {
        self.from_rational(&Rational::one())
    }

    fn from_rational(&self, r: &Rational) -> FieldElement {
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[0] = r.clone();
        FieldElement { coeffs }
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.degree() == 1 {
            return FieldElement { coeffs: vec![&a.coeffs[0] * &b.coeffs[0]] };
        }
        self.reduce(Self::to_poly(a).mul(&Self::to_poly(b)))
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement { coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }

    fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::InversionOfZero);
        }
        if self.degree() == 1 {
            return Ok(FieldElement { coeffs: vec![a.coeffs[0].recip()?] });
        }
        let (g, s, _) = UPoly::ext_gcd(&Self::to_poly(a), &self.min_poly);
        if g.degree() != Some(0) {
            // only possible when min_poly is reducible
            return Err(Error::SpecMismatch("element is a zero divisor; min_poly is reducible".into()));
        }
        Ok(self.reduce(s))
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    InvOfA,
}

/// Exact field arithmetic on canonical representatives.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp, spec: &FieldSpec) -> Result<FieldElement> {
    spec.arith(op, a, b)
}

/// Element of a [`FieldSpec`], stored as its canonical (reduced) coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn key(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    /// Accepts an array of rationals, or a single rational meaning a constant.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Array(Vec<Rational>),
            Scalar(Rational),
        }
        match Repr::deserialize(d)? {
            Repr::Array(v) if v.is_empty() => Err(serde::de::Error::custom("empty field element")),
            Repr::Array(v) => Ok(FieldElement { coeffs: v }),
            Repr::Scalar(r) => Ok(FieldElement { coeffs: vec![r] }),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        if self.is_rationals() {
            return s.serialize_str("rational");
        }
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("min_poly", self.min_poly.coeffs())?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Name(String),
            Poly { min_poly: Vec<Rational> },
        }
        match Repr::deserialize(d)? {
            Repr::Name(n) if n == "rational" => Ok(FieldSpec::rationals()),
            Repr::Name(n) => Err(serde::de::Error::custom(format!("unknown field {n:?}"))),
            Repr::Poly { min_poly } => FieldSpec::new(min_poly).map_err(serde::de::Error::custom),
        }
    }
}
