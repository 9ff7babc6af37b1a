//! Centralized tolerance policy and small numeric helpers.
//!
//! Equality of derived quantities (heats, works, marginals) is judged at
//! 1e-10 relative with a 1e-12 absolute floor: the log-sum-exp ensemble paths
//! carry a few ulps per term over at most 12 levels, so anything looser than
//! machine precision but far tighter than physical scales works here.

/// Relative tolerance for cross-path equality checks.
pub const REL_TOL: f64 = 1e-10;

/// Absolute floor under [`REL_TOL`] for quantities that pass through zero.
pub const ABS_TOL: f64 = 1e-12;

/// True when `a` and `b` agree within the central tolerance policy.
pub fn approx_eq(a: f64, b: f64) -> bool {
    within(a, b, REL_TOL, ABS_TOL)
}

/// True when `a` and `b` agree within `rel` relative or `abs` absolute.
pub fn within(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    let diff = (a - b).abs();
    diff <= abs || diff <= rel * a.abs().max(b.abs())
}

/// Shift-stabilized Boltzmann weights for a set of energies at temperature
/// `t`: exponents are rebased on the minimum energy before exponentiation so
/// arbitrarily low temperatures cannot overflow.
pub fn boltzmann_probabilities(energies: &[f64], t: f64) -> Vec<f64> {
    let max_exponent = energies
        .iter()
        .map(|e| -e / t)
        .fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = energies.iter().map(|e| (-e / t - max_exponent).exp()).collect();
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}
