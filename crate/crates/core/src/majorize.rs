//! The majorisation partial order on probability vectors, and the spectral
//! conditions it induces for spin working media.
//!
//! x is majorised by y (written x < y) when every tail sum of the
//! descending-sorted vectors satisfies sum_{k=m..n} x_k >= sum_{k=m..n} y_k,
//! with equality at m = 1 by normalization. A cycle whose hot ensemble is
//! majorised by its cold ensemble extracts nonnegative work, so the reports
//! here keep every tail margin rather than short-circuiting: the margin
//! curves themselves are the diagnostic.

use crate::error::{Error, Result};
use crate::spectra::Medium;
use crate::thermo::ThermalDistribution;
use std::cmp::Ordering;

/// Default absolute tolerance on each tail margin; margins are sums of at
/// most a dozen doubles.
pub const DEFAULT_MARGIN_TOL: f64 = 1e-12;

/// Input vectors must sum to one within this before margins mean anything.
const NORMALIZATION_TOL: f64 = 1e-10;

/// Outcome of a majorisation test x < y with the full margin vector.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorisationReport {
    /// True when every margin clears -tolerance.
    pub holds: bool,
    /// Tail margins in scan order m = n, n-1, .., 2: `margins[i]` is the
    /// margin for m = n - i on descending-sorted inputs.
    pub margins: Vec<f64>,
    /// The m = 1 margin; zero up to normalization error.
    pub normalization_margin: f64,
    /// First m (scanning m = n down to 2) whose margin fell below -tolerance.
    pub first_violated_m: Option<usize>,
    pub tolerance: f64,
}

impl MajorisationReport {
    /// Margin for a specific tail start 2 <= m <= n.
    pub fn margin_for(&self, m: usize) -> Option<f64> {
        let n = self.margins.len() + 1;
        if m < 2 || m > n {
            return None;
        }
        Some(self.margins[n - m])
    }
}

/// Tests x < y at the given margin tolerance.
///
/// Inputs are sorted descending internally, ties broken by original label in
/// ascending order so degenerate probabilities produce deterministic margins.
pub fn majorises(x: &[f64], y: &[f64], tol: f64) -> Result<MajorisationReport> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    check_normalized(x)?;
    check_normalized(y)?;

    let xd = sort_descending(x);
    let yd = sort_descending(y);
    let n = xd.len();

    let mut margins = Vec::with_capacity(n.saturating_sub(1));
    let mut tail_x = 0.0;
    let mut tail_y = 0.0;
    for m in (2..=n).rev() {
        tail_x += xd[m - 1];
        tail_y += yd[m - 1];
        margins.push(tail_x - tail_y);
    }
    let normalization_margin = if n == 0 {
        0.0
    } else {
        tail_x + xd[0] - (tail_y + yd[0])
    };

    let mut first_violated_m = None;
    for (i, &g) in margins.iter().enumerate() {
        if g < -tol {
            first_violated_m = Some(n - i);
            break;
        }
    }

    Ok(MajorisationReport {
        holds: first_violated_m.is_none(),
        margins,
        normalization_margin,
        first_violated_m,
        tolerance: tol,
    })
}

/// For a lone spin, every majorisation inequality between the hot and cold
/// canonical ensembles reduces to the single ratio condition B2/T2 >= B1/T1.
/// All arguments must be positive.
pub fn single_spin_majorisation_condition(b1: f64, b2: f64, t1: f64, t2: f64) -> bool {
    b2 / t2 >= b1 / t1
}

/// The componentwise extreme case: descending-sorted P_k >= P'_k for every
/// k >= 2. Strictly stronger than majorisation (the tail sums are then sums
/// of nonnegative terms).
pub fn extreme_case_holds(x: &[f64], y: &[f64]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    check_normalized(x)?;
    check_normalized(y)?;
    let xd = sort_descending(x);
    let yd = sort_descending(y);
    Ok(xd
        .iter()
        .zip(yd.iter())
        .skip(1)
        .all(|(&a, &b)| a >= b - DEFAULT_MARGIN_TOL))
}

/// The spectral-range condition implied by the m = n and m = 2 margins:
/// (e'_n - e'_1)/T2 >= (e_n - e_1)/T1 on the attached spectra.
pub fn gap_ratio_condition(hot: &ThermalDistribution, cold: &ThermalDistribution) -> bool {
    cold.spectrum().range() / cold.temperature() >= hot.spectrum().range() / hot.temperature()
}

/// The lone-spin work functional X = sum_{k=2..n} (k-1)(P_k - P'_k); the
/// extracted work is 2(B1 - B2) X, so X >= 0 is the engine condition.
pub fn single_spin_work_functional(hot: &ThermalDistribution, cold: &ThermalDistribution) -> Result<f64> {
    if hot.len() != cold.len() {
        return Err(Error::LengthMismatch { left: hot.len(), right: cold.len() });
    }
    if hot.spectrum().medium() != Medium::Single || cold.spectrum().medium() != Medium::Single {
        return Err(Error::MismatchedSpectra(
            "the lone-spin work functional needs single-medium ensembles".into(),
        ));
    }
    Ok(hot
        .probs()
        .iter()
        .zip(cold.probs())
        .enumerate()
        .skip(1)
        .map(|(k, (&p, &pp))| k as f64 * (p - pp))
        .sum())
}

fn check_normalized(v: &[f64]) -> Result<()> {
    let sum: f64 = v.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL || !sum.is_finite() {
        return Err(Error::Normalization { sum });
    }
    Ok(())
}

fn sort_descending(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&i, &j| {
        v[j].partial_cmp(&v[i])
            .unwrap_or(Ordering::Equal)
            .then(i.cmp(&j))
    });
    idx.into_iter().map(|i| v[i]).collect()
}
