//! Curve analysis: cubic fits around stationary points, well depths,
//! barriers and pointwise comparison of two curves.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{CliError, Result};
use vqechem::units::HARTREE_TO_KCAL_PER_MOL;

/// Points used in each local cubic fit.
pub const FIT_WINDOW: usize = 5;

/// One sample of a one-dimensional curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub label: String,
    pub coordinate: Option<f64>,
    pub energy: f64,
}

impl CurvePoint {
    pub fn new(label: impl Into<String>, coordinate: f64, energy: f64) -> Self {
        Self { label: label.into(), coordinate: Some(coordinate), energy }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stationary {
    pub coordinate: f64,
    pub energy: f64,
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Minimum,
    Maximum,
}

fn coordinates(points: &[CurvePoint]) -> Result<Vec<(f64, f64)>> {
    let mut xy = points
        .iter()
        .map(|p| {
            p.coordinate
                .map(|x| (x, p.energy))
                .ok_or_else(|| CliError::Usage(format!("point {} has no coordinate", p.label)))
        })
        .collect::<Result<Vec<_>>>()?;
    xy.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(xy)
}

/// Least-squares cubic through `xy[lo..hi]`, expanded about `x0`, and the
/// stationary point of the requested kind closest to `x0`.
fn cubic_stationary(xy: &[(f64, f64)], x0: f64, kind: Kind) -> Option<Stationary> {
    let n = xy.len();
    let a = DMatrix::from_fn(n, 4, |i, j| (xy[i].0 - x0).powi(j as i32));
    let b = DVector::from_iterator(n, xy.iter().map(|p| p.1));
    let coef = a.svd(true, true).solve(&b, 1e-14).ok()?;
    let (c0, c1, c2, c3) = (coef[0], coef[1], coef[2], coef[3]);
    // roots of c1 + 2 c2 t + 3 c3 t², in the cancellation-free form
    let disc = c2 * c2 - 3.0 * c1 * c3;
    if disc < 0.0 {
        return None;
    }
    let q = -(c2 + c2.signum() * disc.sqrt());
    let mut roots = Vec::new();
    if q != 0.0 {
        roots.push(c1 / q);
    }
    if c3 != 0.0 {
        roots.push(q / (3.0 * c3));
    }
    let (lo, hi) = (xy[0].0 - x0, xy[n - 1].0 - x0);
    roots
        .into_iter()
        .filter(|t| {
            let curvature = 2.0 * c2 + 6.0 * c3 * t;
            let right_kind = match kind {
                Kind::Minimum => curvature > 0.0,
                Kind::Maximum => curvature < 0.0,
            };
            right_kind && *t >= lo && *t <= hi
        })
        .min_by(|a, b| a.abs().total_cmp(&b.abs()))
        .map(|t| Stationary { coordinate: x0 + t, energy: c0 + t * (c1 + t * (c2 + t * c3)) })
}

/// The `FIT_WINDOW` points of `xy[range]` nearest to index `center`.
fn window(xy: &[(f64, f64)], center: usize, range: std::ops::Range<usize>) -> &[(f64, f64)] {
    let k = FIT_WINDOW.min(range.len());
    let lo = center.saturating_sub(k / 2).max(range.start).min(range.end - k);
    &xy[lo..lo + k]
}

fn fit_at(xy: &[(f64, f64)], center: usize, range: std::ops::Range<usize>, kind: Kind) -> Result<Stationary> {
    let w = window(xy, center, range);
    cubic_stationary(w, xy[center].0, kind)
        .ok_or_else(|| CliError::NoBracket(format!("cubic fit near {} has no stationary point in range", xy[center].0)))
}

/// Cubic least-squares fit over the points nearest the discrete minimum.
/// Returns the fitted minimum position and energy.
pub fn fit_equilibrium(points: &[CurvePoint]) -> Result<Stationary> {
    if points.len() < 4 {
        return Err(CliError::InsufficientPoints { needed: 4, got: points.len() });
    }
    let xy = coordinates(points)?;
    let i = argmin(&xy);
    if i == 0 || i == xy.len() - 1 {
        return Err(CliError::NoBracket(format!("lowest point at the edge of the scan ({})", xy[i].0)));
    }
    fit_at(&xy, i, 0..xy.len(), Kind::Minimum)
}

fn argmin(xy: &[(f64, f64)]) -> usize {
    (0..xy.len()).min_by(|&a, &b| xy[a].1.total_cmp(&xy[b].1)).unwrap_or(0)
}

/// Energy at the largest coordinate minus the fitted minimum, in kcal/mol.
pub fn dissociation_energy(points: &[CurvePoint]) -> Result<f64> {
    let xy = coordinates(points)?;
    if xy.len() >= 2 && xy.iter().all(|p| p.1 == xy[0].1) {
        return Ok(0.0);
    }
    let min = fit_equilibrium(points)?;
    let asymptote = xy.last().expect("nonempty").1;
    Ok((asymptote - min.energy) * HARTREE_TO_KCAL_PER_MOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Barrier {
    pub reactant: Stationary,
    pub saddle: Stationary,
    /// kcal/mol
    pub activation_energy: f64,
}

/// Barrier height from the reactant (lower-coordinate) minimum to the
/// highest interior maximum, both located by local cubic fits.
pub fn activation_energy(points: &[CurvePoint]) -> Result<Barrier> {
    if points.len() < 3 {
        return Err(CliError::InsufficientPoints { needed: 3, got: points.len() });
    }
    let xy = coordinates(points)?;
    let n = xy.len();
    let peak = (1..n - 1)
        .filter(|&i| xy[i].1 > xy[i - 1].1 && xy[i].1 >= xy[i + 1].1)
        .max_by(|&a, &b| xy[a].1.total_cmp(&xy[b].1))
        .ok_or(CliError::NoBarrier)?;
    let saddle = fit_at(&xy, peak, 0..n, Kind::Maximum)?;
    let left = argmin(&xy[..peak]);
    let reactant = if left == 0 {
        Stationary { coordinate: xy[0].0, energy: xy[0].1 }
    } else {
        fit_at(&xy, left, 0..peak + 1, Kind::Minimum)?
    };
    Ok(Barrier {
        reactant,
        saddle,
        activation_energy: (saddle.energy - reactant.energy) * HARTREE_TO_KCAL_PER_MOL,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftRow {
    pub label: String,
    pub energy_a: f64,
    pub energy_b: f64,
    /// energy_a − energy_b
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftReport {
    pub rows: Vec<ShiftRow>,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl ShiftReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,energy_a,energy_b,delta\n");
        for r in &self.rows {
            out.push_str(&format!("{},{:.10},{:.10},{:.10}\n", r.label, r.energy_a, r.energy_b, r.delta));
        }
        out
    }

    pub fn delta(&self, label: &str) -> Option<f64> {
        self.rows.iter().find(|r| r.label == label).map(|r| r.delta)
    }
}

/// Pointwise `a − b` over curves carrying the same set of labels.
pub fn compare_curves(a: &[CurvePoint], b: &[CurvePoint]) -> Result<ShiftReport> {
    if a.is_empty() || a.len() != b.len() {
        return Err(CliError::Alignment(format!("{} points vs {}", a.len(), b.len())));
    }
    let mut rows = Vec::with_capacity(a.len());
    for p in a {
        let q = b
            .iter()
            .find(|q| q.label == p.label)
            .ok_or_else(|| CliError::Alignment(format!("label {} missing from the second curve", p.label)))?;
        rows.push(ShiftRow { label: p.label.clone(), energy_a: p.energy, energy_b: q.energy, delta: p.energy - q.energy });
    }
    let mean = rows.iter().map(|r| r.delta).sum::<f64>() / rows.len() as f64;
    let min = rows.iter().map(|r| r.delta).fold(f64::INFINITY, f64::min);
    let max = rows.iter().map(|r| r.delta).fold(f64::NEG_INFINITY, f64::max);
    Ok(ShiftReport { rows, mean, min, max })
}
