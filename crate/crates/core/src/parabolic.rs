//! Divisor classes on the plane blown up at the multiple points, and the parabolic
//! Chern data of the tangent bundle with the weights as jump values.

use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::arrangement::{b_matrix, IncidenceLattice};
use crate::error::{Error, Result};
use crate::exactfield::Rational;

/// `h H - sum e_i E_i`-style class written as coefficients on `(H; E_1, ..., E_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
    pub h: Rational,
    pub e: Vec<Rational>,
}

impl DivisorClass {
    pub fn zero(k: usize) -> Self {
        DivisorClass { h: Rational::zero(), e: vec![Rational::zero(); k] }
    }

    pub fn hyperplane(k: usize) -> Self {
        DivisorClass { h: Rational::one(), e: vec![Rational::zero(); k] }
    }

    pub fn exceptional(k: usize, i: usize) -> Self {
        let mut e = vec![Rational::zero(); k];
        e[i] = Rational::one();
        DivisorClass { h: Rational::zero(), e }
    }

    pub fn k(&self) -> usize {
        self.e.len()
    }

    /// Intersection pairing `h h' - sum e_i e_i'`.
    pub fn pairing(&self, other: &DivisorClass) -> Rational {
        assert_eq!(self.k(), other.k(), "classes on different blow-ups");
        let mut v = &self.h * &other.h;
        for (a, b) in self.e.iter().zip(&other.e) {
            v -= a * b;
        }
        v
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DivisorClass { h: &self.h * c, e: self.e.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero() && self.e.iter().all(Rational::is_zero)
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass { h: &self.h + &o.h, e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass { h: &self.h - &o.h, e: self.e.iter().zip(&o.e).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(&-Rational::one())
    }
}

/// Proper transform of line `j`: `h - sum_i d_ij e_i` over the blown-up points.
pub fn line_class(lat: &IncidenceLattice, blown_up: &[usize], j: usize) -> DivisorClass {
    let mut c = DivisorClass::hyperplane(blown_up.len());
    for (slot, &i) in blown_up.iter().enumerate() {
        if lat.incident(i, j) {
            c.e[slot] = -Rational::one();
        }
    }
    c
}

/// Angles `alpha_i = 1 + sum_{j through x_i} (beta_j - 1) / 2` at the multiple points.
pub fn point_alphas(lat: &IncidenceLattice, weights: &[Rational]) -> Vec<Rational> {
    lat.multiple_points()
        .iter()
        .map(|&i| {
            let s: Rational = lat.points[i].lines.iter().map(|&j| &weights[j] - Rational::one()).sum();
            Rational::one() + s * Rational::new(1, 2)
        })
        .collect()
}

/// Checks `0 < beta < 1` and `0 < alpha < 1` at every multiple point.
pub fn check_admissible(lat: &IncidenceLattice, weights: &[Rational]) -> Result<()> {
    if weights.len() != lat.n {
        return Err(Error::WeightsMissing(format!("expected {} weights, got {}", lat.n, weights.len())));
    }
    let (zero, one) = (Rational::zero(), Rational::one());
    if let Some(j) = weights.iter().position(|b| *b <= zero || *b >= one) {
        return Err(Error::InadmissibleWeights(format!("weight {} of line {j} is outside (0, 1)", weights[j])));
    }
    let mult = lat.multiple_points();
    for (a, &i) in point_alphas(lat, weights).iter().zip(&mult) {
        if *a <= zero || *a >= one {
            return Err(Error::InadmissibleWeights(format!("alpha {a} at point {i} is outside (0, 1)")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicReport {
    /// Lattice indices of the blown-up points, in the order of the exceptional classes.
    pub blown_up: Vec<usize>,
    pub alphas: Vec<Rational>,
    pub par_ch1: DivisorClass,
    pub pardeg: Rational,
    pub par_ch2: Rational,
    pub nu_total: Rational,
    pub polarization_n: i64,
    pub admissible: bool,
}

#[derive(Clone, Debug, Default)]
pub struct ParabolicOptions {
    /// Polarization `L_N = N h - sum e_i`; defaults to the stability threshold (or `k + 1` without multiple points).
    pub n: Option<i64>,
    /// Evaluate the formulas even when the weights are not admissible.
    pub skip_admissibility: bool,
}

pub fn parabolic_chern(
    lat: &IncidenceLattice,
    weights: &[Rational],
    options: &ParabolicOptions,
) -> Result<ParabolicReport> {
    let admissible = check_admissible(lat, weights);
    match (&admissible, options.skip_admissibility) {
        (Err(Error::InadmissibleWeights(_)), true) => {}
        (Err(e), _) => return Err(e.clone()),
        (Ok(()), _) => {}
    }
    let blown_up = lat.multiple_points();
    let k = blown_up.len();
    let alphas = point_alphas(lat, weights);
    let one = Rational::one();

    let mut c1 = DivisorClass::hyperplane(k).scale(&Rational::from(3));
    for (j, b) in weights.iter().enumerate() {
        c1 = &c1 - &line_class(lat, &blown_up, j).scale(&(&one - b));
    }
    for (slot, a) in alphas.iter().enumerate() {
        c1 = &c1 - &DivisorClass::exceptional(k, slot).scale(&(Rational::from(2) * (&one - a)));
    }

    let polarization_n = match options.n {
        Some(n) => n,
        None if k >= 1 && admissible.is_ok() => stability_thresholds(lat, weights).n_min,
        None => k as i64 + 1,
    };
    if polarization_n <= k as i64 {
        return Err(Error::ParamOutOfRange(format!("polarization N = {polarization_n} must exceed k = {k}")));
    }
    let mut pol = DivisorClass::hyperplane(k).scale(&Rational::from(polarization_n));
    for slot in 0..k {
        pol = &pol - &DivisorClass::exceptional(k, slot);
    }
    let pardeg = c1.pairing(&pol);

    let b = b_matrix(lat);
    let half = Rational::new(1, 2);
    let mut par_ch2 = Rational::new(3, 2);
    for (j, beta) in weights.iter().enumerate() {
        let d = &one - beta;
        par_ch2 -= &d;
        par_ch2 -= &half * d.pow(2) * Rational::from(b.get(j, j));
    }
    for a in &alphas {
        par_ch2 += (&one - a).pow(2);
    }

    let mut nu_total = Rational::zero();
    for (slot, &i) in blown_up.iter().enumerate() {
        for &j in &lat.points[i].lines {
            nu_total += (&one - &weights[j]) * (&one - &alphas[slot]);
        }
    }

    Ok(ParabolicReport {
        blown_up,
        alphas,
        par_ch1: c1,
        pardeg,
        par_ch2,
        nu_total,
        polarization_n,
        admissible: admissible.is_ok(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thresholds {
    /// `k / min alpha`.
    pub from_alpha: Rational,
    /// `2k / min_{j<l} (beta_j + beta_l)`.
    pub from_pairs: Rational,
    /// `3k / (1 - max beta)`.
    pub from_max_beta: Rational,
    /// Least integer strictly above all three.
    pub n_min: i64,
}

fn stability_thresholds(lat: &IncidenceLattice, weights: &[Rational]) -> Thresholds {
    let k = Rational::from(lat.multiple_points().len() as i64);
    let alphas = point_alphas(lat, weights);
    let min_alpha = alphas.iter().min().expect("at least one multiple point").clone();
    let mut min_pair: Option<Rational> = None;
    for j in 0..weights.len() {
        for l in (j + 1)..weights.len() {
            let s = &weights[j] + &weights[l];
            if min_pair.as_ref().is_none_or(|m| s < *m) {
                min_pair = Some(s);
            }
        }
    }
    let max_beta = weights.iter().max().expect("nonempty weights").clone();
    let from_alpha = &k / &min_alpha;
    let from_pairs = Rational::from(2) * &k / min_pair.expect("at least two lines");
    let from_max_beta = Rational::from(3) * &k / (Rational::one() - max_beta);
    let top = [&from_alpha, &from_pairs, &from_max_beta].into_iter().max().unwrap().clone();
    let n_min: i64 = (top.floor() + 1u32).try_into().expect("threshold fits in i64");
    Thresholds { from_alpha, from_pairs, from_max_beta, n_min }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointMargin {
    /// Lattice index; `None` for a generic point off every line.
    pub point: Option<usize>,
    /// `sum_{j : x not on L_j} (1 - beta_j)`.
    pub missing_sum: Rational,
    pub margin: Rational,
    /// `missing_sum > 1 + 2k/N`.
    pub guard: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityBounds {
    pub k: usize,
    pub thresholds: Thresholds,
    pub n_min: i64,
    /// Polarization at which the margins are evaluated.
    pub n: i64,
    pub per_point_margin_d1: Vec<PointMargin>,
    pub margin_d0: Rational,
    pub all_negative: bool,
    pub guard_holds: bool,
}

/// Threshold and margins at `N = N_min`.
pub fn stability_bounds(lat: &IncidenceLattice, weights: &[Rational]) -> Result<StabilityBounds> {
    stability_bounds_at(lat, weights, None)
}

/// Threshold and margins at the given polarization (default `N_min`).
pub fn stability_bounds_at(lat: &IncidenceLattice, weights: &[Rational], n: Option<i64>) -> Result<StabilityBounds> {
    check_admissible(lat, weights)?;
    let k = lat.multiple_points().len();
    if k == 0 {
        return Err(Error::InadmissibleWeights("stability bounds need at least one multiple point".into()));
    }
    let thresholds = stability_thresholds(lat, weights);
    let n_min = thresholds.n_min;
    let n = n.unwrap_or(n_min);
    if n <= k as i64 {
        return Err(Error::ParamOutOfRange(format!("polarization N = {n} must exceed k = {k}")));
    }
    let one = Rational::one();
    let nr = Rational::from(n);
    let kr = Rational::from(k as i64);
    let alpha_slack: Rational = point_alphas(lat, weights).iter().map(|a| &one - a).sum();
    let guard_bound = &one + Rational::from(2) * &kr / &nr;
    let margin_of = |point: Option<usize>, missing_sum: Rational| {
        let margin = &nr + &kr - &nr * &missing_sum + &alpha_slack;
        let guard = missing_sum > guard_bound;
        PointMargin { point, missing_sum, margin, guard }
    };
    let mut per_point: Vec<PointMargin> = (0..lat.points.len())
        .map(|i| {
            let s: Rational = (0..lat.n).filter(|&j| !lat.incident(i, j)).map(|j| &one - &weights[j]).sum();
            margin_of(Some(i), s)
        })
        .collect();
    let full: Rational = weights.iter().map(|b| &one - b).sum();
    per_point.push(margin_of(None, full));
    let max_beta = weights.iter().max().unwrap();
    let margin_d0 = Rational::from(2) * &kr - &nr * (&one - max_beta) + &alpha_slack;
    let all_negative = margin_d0.is_negative() && per_point.iter().all(|m| m.margin.is_negative());
    let guard_holds = per_point.iter().all(|m| m.guard);
    Ok(StabilityBounds {
        k,
        thresholds,
        n_min,
        n,
        per_point_margin_d1: per_point,
        margin_d0,
        all_negative,
        guard_holds,
    })
}
