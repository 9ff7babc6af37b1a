//! Canonical ensembles, entropies, divergences, and the Otto-cycle
//! bookkeeping shared by both working media.
//!
//! The cycle runs hot isochore -> adiabat -> cold isochore -> adiabat. With
//! occupations frozen per label on the adiabats, the heats are
//!
//! ```text
//!   Q1 = sum_k e_k  (P_k  - P'_k)        (hot spectrum e, hot ensemble P)
//!   Q2 = sum_k e'_k (P'_k - P_k)         (cold spectrum e', cold ensemble P')
//!   |W| = Q1 + Q2
//! ```
//!
//! and the same quantities have a second, purely information-theoretic route
//! through Shannon entropies and Kullback-Leibler divergences:
//!
//! ```text
//!   Q1  = T1 (S1 - S2) - T1 D(P'||P)
//!   Q2  = -T2 (S1 - S2) - T2 D(P||P')
//!   |W| = (T1 - T2)(S1 - S2) - T1 D(P'||P) - T2 D(P||P')
//! ```
//!
//! Both routes are kept and tested against each other; the total entropy
//! produced per cycle is the symmetric divergence sum D(P||P') + D(P'||P).

use crate::error::{Error, Result};
use crate::numeric::boltzmann_probabilities;
use crate::spectra::EnergySpectrum;

/// Canonical occupation probabilities over a spectrum's labels.
#[derive(Debug, Clone)]
pub struct ThermalDistribution {
    probs: Vec<f64>,
    temperature: f64,
    spectrum: EnergySpectrum,
}

impl ThermalDistribution {
    /// Probabilities indexed by label - 1.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn spectrum(&self) -> &EnergySpectrum {
        &self.spectrum
    }

    pub fn shannon_entropy(&self) -> f64 {
        shannon_entropy(&self.probs)
    }
}

/// Gibbs weights P_k = exp(-e_k/T) / Z over the spectrum labels, evaluated
/// with shifted exponents so extreme temperatures neither overflow nor NaN.
pub fn canonical_distribution(spectrum: &EnergySpectrum, temperature: f64) -> Result<ThermalDistribution> {
    if temperature <= 0.0 {
        return Err(Error::NonPositiveTemperature(temperature));
    }
    Ok(ThermalDistribution {
        probs: boltzmann_probabilities(spectrum.levels(), temperature),
        temperature,
        spectrum: spectrum.clone(),
    })
}

/// Shannon entropy -sum p ln p with the 0 ln 0 = 0 convention.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum()
}

/// Kullback-Leibler divergence D(x||y) = sum x_k ln(x_k / y_k).
///
/// Nonnegative, zero only when the distributions coincide. Fails with
/// `AbsoluteContinuity` when x puts weight where y has none; canonical
/// distributions at finite temperature are strictly positive, so that error
/// can only arrive with hand-built inputs.
pub fn relative_entropy(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let mut total = 0.0;
    for (index, (&xi, &yi)) in x.iter().zip(y.iter()).enumerate() {
        if xi > 0.0 {
            if yi <= 0.0 {
                return Err(Error::AbsoluteContinuity { index, x: xi });
            }
            total += xi * (xi.ln() - yi.ln());
        }
    }
    Ok(total)
}

/// How a parameter point operates once the cycle's signs are inspected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperationMode {
    /// Heat in from the hot bath, net work out (Q1 > 0, |W| >= 0).
    Engine,
    /// Work in, heat pumped from cold to hot (Q1 < 0, Q2 > 0, W < 0).
    Refrigerator,
    /// Anything else; work is wasted as heat.
    Dud,
}

impl OperationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            OperationMode::Engine => "engine",
            OperationMode::Refrigerator => "refrigerator",
            OperationMode::Dud => "dud",
        }
    }
}

/// Every derived quantity of one quasi-static Otto cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleReport {
    /// Q1, heat absorbed from the hot reservoir.
    pub heat_hot: f64,
    /// Q2, heat exchanged with the cold reservoir (negative for an engine).
    pub heat_cold: f64,
    /// |W| = Q1 + Q2, net extracted work (negative when the cycle consumes work).
    pub work: f64,
    /// |W| / Q1, defined only in engine mode.
    pub efficiency: Option<f64>,
    /// Shannon entropy at the hot reservoir.
    pub entropy_hot: f64,
    /// Shannon entropy at the cold reservoir.
    pub entropy_cold: f64,
    /// D(P || P'), entropy generated on the cold isochore.
    pub divergence_hot_cold: f64,
    /// D(P' || P), entropy generated on the hot isochore.
    pub divergence_cold_hot: f64,
    /// Total entropy production -Q2/T2 - Q1/T1.
    pub entropy_production: f64,
    pub mode: OperationMode,
}

/// Runs one cycle between `hot` (at `t_hot`) and `cold` (at `t_cold`).
///
/// The spectra must describe the same medium at the same coupling so the
/// adiabatic label pairing is physical, and both must be free of level
/// crossings.
pub fn otto_cycle(hot: &EnergySpectrum, cold: &EnergySpectrum, t_hot: f64, t_cold: f64) -> Result<CycleReport> {
    if t_cold <= 0.0 {
        return Err(Error::NonPositiveTemperature(t_cold));
    }
    if t_hot <= t_cold {
        return Err(Error::TemperatureOrder { t_hot, t_cold });
    }
    let p_hot = canonical_distribution(hot, t_hot)?;
    let p_cold = canonical_distribution(cold, t_cold)?;
    cycle_from_distributions(&p_hot, &p_cold)
}

/// Same as [`otto_cycle`] but starting from already-built ensembles; useful
/// when the caller also needs the distributions for majorisation checks.
pub fn cycle_from_distributions(hot: &ThermalDistribution, cold: &ThermalDistribution) -> Result<CycleReport> {
    check_cycle_pair(hot, cold)?;
    let e_hot = hot.spectrum().levels();
    let e_cold = cold.spectrum().levels();
    let p = hot.probs();
    let pp = cold.probs();

    let mut heat_hot = 0.0;
    let mut heat_cold = 0.0;
    for k in 0..p.len() {
        let dp = p[k] - pp[k];
        heat_hot += e_hot[k] * dp;
        heat_cold -= e_cold[k] * dp;
    }
    let work = heat_hot + heat_cold;

    let entropy_hot = shannon_entropy(p);
    let entropy_cold = shannon_entropy(pp);
    let divergence_hot_cold = relative_entropy(p, pp)?;
    let divergence_cold_hot = relative_entropy(pp, p)?;
    let entropy_production = -heat_cold / cold.temperature() - heat_hot / hot.temperature();

    let mode = if heat_hot > 0.0 && work >= 0.0 {
        OperationMode::Engine
    } else if heat_hot < 0.0 && heat_cold > 0.0 && work < 0.0 {
        OperationMode::Refrigerator
    } else {
        OperationMode::Dud
    };
    let efficiency = match mode {
        OperationMode::Engine => Some(work / heat_hot),
        _ => None,
    };

    Ok(CycleReport {
        heat_hot,
        heat_cold,
        work,
        efficiency,
        entropy_hot,
        entropy_cold,
        divergence_hot_cold,
        divergence_cold_hot,
        entropy_production,
        mode,
    })
}

/// Divergence-form heats (Q1, Q2); must reproduce the label-sum heats of
/// [`otto_cycle`] to 1e-10 relative whenever both inputs are canonical.
pub fn heats_via_divergence(hot: &ThermalDistribution, cold: &ThermalDistribution) -> Result<(f64, f64)> {
    check_cycle_pair(hot, cold)?;
    let s1 = hot.shannon_entropy();
    let s2 = cold.shannon_entropy();
    let d_cold_hot = relative_entropy(cold.probs(), hot.probs())?;
    let d_hot_cold = relative_entropy(hot.probs(), cold.probs())?;
    let t1 = hot.temperature();
    let t2 = cold.temperature();
    let q1 = t1 * (s1 - s2) - t1 * d_cold_hot;
    let q2 = -t2 * (s1 - s2) - t2 * d_hot_cold;
    Ok((q1, q2))
}

/// Divergence-form net work (T1 - T2)(S1 - S2) - T1 D(P'||P) - T2 D(P||P').
pub fn work_via_divergence(hot: &ThermalDistribution, cold: &ThermalDistribution) -> Result<f64> {
    let (q1, q2) = heats_via_divergence(hot, cold)?;
    Ok(q1 + q2)
}

fn check_cycle_pair(hot: &ThermalDistribution, cold: &ThermalDistribution) -> Result<()> {
    let sh = hot.spectrum();
    let sc = cold.spectrum();
    if sh.len() != sc.len() {
        return Err(Error::MismatchedSpectra(format!(
            "label counts differ: {} vs {}",
            sh.len(),
            sc.len()
        )));
    }
    if !sh.same_medium(sc) {
        return Err(Error::MismatchedSpectra(format!(
            "media differ: ({:?}, s = {}, J = {}) vs ({:?}, s = {}, J = {})",
            sh.medium(),
            sh.spin(),
            sh.coupling(),
            sc.medium(),
            sc.spin(),
            sc.coupling()
        )));
    }
    if hot.temperature() <= cold.temperature() {
        return Err(Error::TemperatureOrder {
            t_hot: hot.temperature(),
            t_cold: cold.temperature(),
        });
    }
    sh.require_ordered()?;
    sc.require_ordered()
}
