use serde::Serialize;

use super::system::{Mode, WeightedSystem};
use super::verify::alphas;
use crate::arrangement::IncidenceLattice;
use crate::error::{Error, Result};
use crate::exactfield::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BgReport {
    /// `sum_i (alpha_i - 1)^2 - sum_j (1 - beta_j)^2 B_jj / 2 - 3/2`.
    pub value: Rational,
    /// `d value / d beta_j` with `alpha_i` depending on the weights.
    pub partials: Vec<Rational>,
    /// Projection of `partials` onto the plane `sum delta_j = 0`.
    pub gradient: Vec<Rational>,
}

fn half() -> Rational {
    Rational::new(1, 2)
}

/// The Bogomolov-Gieseker quantity of a weighted line arrangement and its in-plane gradient.
pub fn bg_value(sys: &WeightedSystem) -> Result<BgReport> {
    if sys.mode != Mode::Lines || !sys.all_simple_points() {
        return Err(Error::IncompleteData("bg_value is defined for line arrangements".into()));
    }
    let alphas = alphas(sys)?;
    let one = Rational::one();
    let mut value: Rational = alphas.iter().map(|a| (a - &one).pow(2)).sum();
    for (j, c) in sys.curves.iter().enumerate() {
        value -= half() * (&one - &c.beta).pow(2) * &sys.b[j][j];
    }
    value -= Rational::new(3, 2);

    let partials: Vec<Rational> = sys
        .curves
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let from_points: Rational = sys.points.iter().zip(&alphas).map(|(pt, a)| pt.d(&c.name) * (a - &one)).sum();
            from_points - (&c.beta - &one) * &sys.b[j][j]
        })
        .collect();
    let mean: Rational = partials.iter().sum::<Rational>() / Rational::from(partials.len() as i64);
    let gradient = partials.iter().map(|p| p - &mean).collect();
    Ok(BgReport { value, partials, gradient })
}

/// Same quantity with every double point treated as a `(1,1)` point and `B_jj`
/// counting all points on `L_j`.
pub fn bg_doubles_as_singular(lat: &IncidenceLattice, weights: &[Rational]) -> Rational {
    let one = Rational::one();
    let defects: Vec<Rational> = weights.iter().map(|b| b - &one).collect();
    let mut value = Rational::zero();
    for p in &lat.points {
        let s: Rational = p.lines.iter().map(|&j| &defects[j]).sum();
        value += (s * half()).pow(2);
    }
    for (j, a) in defects.iter().enumerate() {
        let bjj = Rational::from(lat.per_line[j].len() as i64 - 1);
        value -= half() * a.pow(2) * bjj;
    }
    value - Rational::new(3, 2)
}

/// `bg_doubles_as_singular - bg_value = -sum over double points of (a_j - a_k)^2 / 4`, `a = beta - 1`.
/// Zero exactly when the two lines through every double point carry equal weights.
pub fn double_point_convention_gap(lat: &IncidenceLattice, weights: &[Rational]) -> Rational {
    let mut gap = Rational::zero();
    for p in lat.points.iter().filter(|p| p.multiplicity == 2) {
        let d = &weights[p.lines[0]] - &weights[p.lines[1]];
        gap -= d.pow(2) * Rational::new(1, 4);
    }
    gap
}

/// Closed form of the quantity at uniform weights `1 - 3/N`: `(3N^2 + 9N - 9 sum mu) / (4N^2)`.
pub fn uniform_bg_closed_form(lat: &IncidenceLattice) -> Rational {
    let n = lat.n as i64;
    let sum_mu: i64 = lat.points.iter().map(|p| p.multiplicity as i64).sum();
    Rational::new(3 * n * n + 9 * n - 9 * sum_mu, 4 * n * n)
}
