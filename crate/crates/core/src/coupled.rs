//! Everything specific to the exchange-coupled (1/2, s) engine: the X/Y/Z
//! probability functionals, the critical-coupling family, reduced single-spin
//! states, the local work split, and the coupling-tightened efficiency bound.
//!
//! With label differences D_k = P_k - P'_k between the hot and cold
//! ensembles, and n = 2(2s+1):
//!
//! ```text
//!   X = sum_{k=1..(n-2)/2} k (D_{2k} + D_{2k+1}) + (n/2) D_n
//!   Y = sum_{k=1..(n-2)/2} D_{2k}
//!   Z = sum_{k=1..K} (n/2 - 2k)(D_{2k} - D_{n-2k}),
//!       K = n/4 - 1/2  (integer s),   K = n/4 - 1  (half-integer s)
//! ```
//!
//! Heats and work decompose exactly through them: Q1 = 2 B1 X - 4(2s+1) J Y,
//! |W| = 2(B1 - B2) X, and the two spins' local works are
//! (2/(2s+1))(B1 - B2)(X + Z) and (2/(2s+1))(B1 - B2)(2s X - Z).

use crate::error::{Error, Result};
use crate::majorize::{majorises, DEFAULT_MARGIN_TOL};
use crate::spectra::{coupled_spectrum, Medium};
use crate::spin::SpinMagnitude;
use crate::thermo::{canonical_distribution, ThermalDistribution};

/// The label-indexed probability functionals of one coupled cycle.
/// X scales the global work, Y the coupling-held heat, Z the asymmetry
/// between the two spins' local works. All vanish when P = P'.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Functionals {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Computes X, Y, Z from label-indexed (never sorted) differences.
pub fn functionals(hot: &ThermalDistribution, cold: &ThermalDistribution, spin: SpinMagnitude) -> Result<Functionals> {
    let n = spin.coupled_levels();
    check_coupled_pair(hot, cold, spin)?;

    let d: Vec<f64> = hot
        .probs()
        .iter()
        .zip(cold.probs())
        .map(|(&p, &pp)| p - pp)
        .collect();
    // Label L lives at index L - 1.
    let at = |label: usize| d[label - 1];

    let mut x = 0.0;
    let mut y = 0.0;
    for k in 1..=(n - 2) / 2 {
        x += k as f64 * (at(2 * k) + at(2 * k + 1));
        y += at(2 * k);
    }
    x += (n / 2) as f64 * at(n);

    let fold_limit = if spin.is_integer() { (n - 2) / 4 } else { n / 4 - 1 };
    let mut z = 0.0;
    for k in 1..=fold_limit {
        z += (n / 2 - 2 * k) as f64 * (at(2 * k) - at(n - 2 * k));
    }

    Ok(Functionals { x, y, z })
}

/// The temperature-field threshold Phi = (B2/T2 - B1/T1) / (1/T2 - 1/T1),
/// equivalently (B2 - B1 theta)/(1 - theta) with theta = T2/T1.
/// Phi/(2(2s+1)) marks where Z changes sign and where the efficiency bound
/// meets Carnot.
pub fn phi(b1: f64, b2: f64, t1: f64, t2: f64) -> Result<f64> {
    if b1 <= 0.0 || b2 <= 0.0 {
        return Err(Error::NonPositiveField(b1.min(b2)));
    }
    if t1 <= 0.0 || t2 <= 0.0 {
        return Err(Error::NonPositiveTemperature(t1.min(t2)));
    }
    if t1 == t2 {
        return Err(Error::Domain(
            "phi is undefined at T1 = T2 (vanishing 1/T2 - 1/T1)".into(),
        ));
    }
    Ok((b2 / t2 - b1 / t1) / (1.0 / t2 - 1.0 / t1))
}

/// Which subsystem's sufficient coupling threshold to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalKind {
    /// All majorisation inequalities between the hot and cold ensembles.
    Global,
    /// Positive local work for the spin-1/2 (X + Z >= 0).
    Half,
    /// Positive local work for the spin-s (2sX - Z >= 0).
    Spin,
}

/// Two closed-form families are provided. `Standard` is the family that
/// reduces exactly to the validated s = 1 expressions and tracks the
/// bisection solver; `Alternate` is an alternative series parameterization
/// retained for cross-checking (it agrees with `Standard` at s = 1 for the
/// global and spin kinds and diverges elsewhere — the solver arbitrates).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormVariant {
    Standard,
    Alternate,
}

/// Sufficient coupling thresholds in closed form:
///
/// ```text
///   J_c = Phi/(2(2s+1)) + [4(2s+1)]^-1 (1/T2 - 1/T1)^-1 ln( g(B1,T1) / g(B2,T2) )
/// ```
///
/// where the series g depends on the kind; for `Standard`,
/// g = 1 + sum_{m=1..2s-1} e^{-2mB/T} (global),
/// g = 2s + sum (2s-m) e^{-2mB/T} (half),
/// g = 1 + sum (2ms+2m+1) e^{-2mB/T} (spin).
/// Requires the engine-regime preconditions B1 > B2 > 0, T1 > T2 > 0 and the
/// ratio condition B2/T2 >= B1/T1 (otherwise Phi < 0 and the sufficiency
/// construction is vacuous).
pub fn critical_coupling_closed_form(
    kind: CriticalKind,
    variant: ClosedFormVariant,
    spin: SpinMagnitude,
    b1: f64,
    b2: f64,
    t1: f64,
    t2: f64,
) -> Result<f64> {
    check_engine_regime(b1, b2, t1, t2)?;
    let m = spin.multiplicity() as f64; // 2s + 1
    let base = phi(b1, b2, t1, t2)? / (2.0 * m);
    let prefactor = 1.0 / (4.0 * m * (1.0 / t2 - 1.0 / t1));
    let g = |b: f64, t: f64| series_g(kind, variant, spin, b, t);
    Ok(base + prefactor * (g(b1, t1) / g(b2, t2)).ln())
}

fn series_g(kind: CriticalKind, variant: ClosedFormVariant, spin: SpinMagnitude, b: f64, t: f64) -> f64 {
    let twice_s = i64::from(spin.twice_s());
    match variant {
        ClosedFormVariant::Standard => {
            let mut g = match kind {
                CriticalKind::Global | CriticalKind::Spin => 1.0,
                CriticalKind::Half => twice_s as f64,
            };
            for m in 1..twice_s {
                let coeff = match kind {
                    CriticalKind::Global => 1.0,
                    CriticalKind::Half => (twice_s - m) as f64,
                    CriticalKind::Spin => (m * twice_s + 2 * m + 1) as f64,
                };
                g += coeff * (-2.0 * m as f64 * b / t).exp();
            }
            g
        }
        ClosedFormVariant::Alternate => {
            // Series with an upper limit of floor(s) and shifted exponents;
            // half-integer s truncates the limit downward.
            let floor_s = twice_s / 2;
            let mut g = match kind {
                CriticalKind::Global | CriticalKind::Spin => 1.0,
                CriticalKind::Half => (twice_s + 1) as f64,
            };
            for m in 1..=floor_s {
                let (coeff, exponent) = match kind {
                    CriticalKind::Global => (1.0, -((m + 1) as f64) * b / t),
                    CriticalKind::Half => ((twice_s - m + 1) as f64, -((m + 2) as f64) * b / t),
                    CriticalKind::Spin => ((m * twice_s + 2 * m + 1) as f64, -((m + 1) as f64) * b / t),
                };
                g += coeff * exponent.exp();
            }
            g
        }
    }
}

/// The exact predicate a bisection root certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BisectPredicate {
    /// Every majorisation margin >= 0 between the hot and cold ensembles.
    GlobalMajorisation,
    /// Global positive work: X >= 0.
    GlobalPwc,
    /// Spin-1/2 positive local work: X + Z >= 0.
    HalfPwc,
    /// Spin-s positive local work: 2sX - Z >= 0.
    SpinPwc,
}

/// Root of a coupling-threshold predicate located by grid scan + bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectionRoot {
    /// Largest certified-holding coupling (the true boundary lies within
    /// `tolerance` above it).
    pub coupling: f64,
    /// Number of predicate sign changes seen on the scan grid; anything
    /// above 1 means the single-threshold picture failed.
    pub sign_changes: usize,
    /// False when multiple sign changes were detected; `coupling` is then
    /// the first one.
    pub monotone: bool,
    pub tolerance: f64,
}

const BISECT_GRID: usize = 1024;
const BISECT_MAX_ITER: usize = 200;

/// Finds the largest J in [0, B2/(2(2s+1))) at which `predicate` still holds,
/// by scanning a 1024-interval grid for the first failure and bisecting the
/// bracketing cell. The predicate must hold at J = 0 (guaranteed under the
/// ratio condition); if it never fails below the level-crossing bound there
/// is nothing to solve and `NoBracket` is returned.
pub fn critical_coupling_bisect(
    predicate: BisectPredicate,
    spin: SpinMagnitude,
    b1: f64,
    b2: f64,
    t1: f64,
    t2: f64,
    tol: f64,
) -> Result<BisectionRoot> {
    if tol <= 0.0 {
        return Err(Error::Domain(format!("bisection tolerance must be positive, got {tol}")));
    }
    if b2 <= 0.0 || b1 <= b2 {
        return Err(Error::Domain(format!("need B1 > B2 > 0, got B1 = {b1}, B2 = {b2}")));
    }
    if t2 <= 0.0 || t1 <= t2 {
        return Err(Error::Domain(format!("need T1 > T2 > 0, got T1 = {t1}, T2 = {t2}")));
    }

    let holds = |j: f64| -> Result<bool> { predicate_holds(predicate, spin, b1, b2, t1, t2, j) };
    if !holds(0.0)? {
        return Err(Error::Domain(
            "the predicate already fails at J = 0; no threshold to certify".into(),
        ));
    }

    // Stay strictly inside the no-crossing window at the cold field.
    let j_hi = b2 / (2.0 * spin.multiplicity() as f64) * (1.0 - 1e-9);

    let mut sign_changes = 0usize;
    let mut first_flip: Option<(f64, f64)> = None;
    let mut prev_j = 0.0;
    let mut prev_holds = true;
    for i in 1..=BISECT_GRID {
        let j = j_hi * i as f64 / BISECT_GRID as f64;
        let h = holds(j)?;
        if h != prev_holds {
            sign_changes += 1;
            if first_flip.is_none() && prev_holds {
                first_flip = Some((prev_j, j));
            }
        }
        prev_j = j;
        prev_holds = h;
    }

    let (mut lo, mut hi) = first_flip.ok_or_else(|| {
        Error::NoBracket(format!(
            "predicate {predicate:?} never fails up to the level-crossing bound J < {j_hi}"
        ))
    })?;

    for _ in 0..BISECT_MAX_ITER {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if holds(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    Ok(BisectionRoot {
        coupling: lo,
        sign_changes,
        monotone: sign_changes <= 1,
        tolerance: tol,
    })
}

fn predicate_holds(
    predicate: BisectPredicate,
    spin: SpinMagnitude,
    b1: f64,
    b2: f64,
    t1: f64,
    t2: f64,
    j: f64,
) -> Result<bool> {
    let hot = canonical_distribution(&coupled_spectrum(spin, b1, j)?, t1)?;
    let cold = canonical_distribution(&coupled_spectrum(spin, b2, j)?, t2)?;
    Ok(match predicate {
        BisectPredicate::GlobalMajorisation => {
            majorises(hot.probs(), cold.probs(), DEFAULT_MARGIN_TOL)?.holds
        }
        BisectPredicate::GlobalPwc => functionals(&hot, &cold, spin)?.x >= -ZERO_SLACK,
        BisectPredicate::HalfPwc => {
            let f = functionals(&hot, &cold, spin)?;
            f.x + f.z >= -ZERO_SLACK
        }
        BisectPredicate::SpinPwc => {
            let f = functionals(&hot, &cold, spin)?;
            f64::from(spin.twice_s()) * f.x - f.z >= -ZERO_SLACK
        }
    })
}

/// Slack absorbing roundoff when a functional sits exactly on its boundary.
const ZERO_SLACK: f64 = 1e-14;

/// The full critical-coupling summary: Phi and, for each kind, the standard
/// closed form next to the bisection root of its exact predicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalCouplings {
    pub phi: f64,
    pub j_c_global: f64,
    pub j_c_half: f64,
    pub j_c_spin: f64,
    pub j_bisect_global: f64,
    pub j_bisect_half: f64,
    pub j_bisect_spin: f64,
}

/// Evaluates all closed forms and bisection roots for one parameter set.
pub fn critical_couplings(
    spin: SpinMagnitude,
    b1: f64,
    b2: f64,
    t1: f64,
    t2: f64,
    tol: f64,
) -> Result<CriticalCouplings> {
    let closed = |kind| critical_coupling_closed_form(kind, ClosedFormVariant::Standard, spin, b1, b2, t1, t2);
    let root = |p| critical_coupling_bisect(p, spin, b1, b2, t1, t2, tol).map(|r| r.coupling);
    Ok(CriticalCouplings {
        phi: phi(b1, b2, t1, t2)?,
        j_c_global: closed(CriticalKind::Global)?,
        j_c_half: closed(CriticalKind::Half)?,
        j_c_spin: closed(CriticalKind::Spin)?,
        j_bisect_global: root(BisectPredicate::GlobalMajorisation)?,
        j_bisect_half: root(BisectPredicate::HalfPwc)?,
        j_bisect_spin: root(BisectPredicate::SpinPwc)?,
    })
}

/// Marginal occupations of one coupled ensemble: the spin-1/2 pair (ground,
/// excited) and the spin-s ladder r_1..r_{2s+1} ordered ground first.
///
/// The mixing weights come from the total-angular-momentum eigenstates: the
/// state at label 2k (lower multiplet) or 2k+1 (upper multiplet) splits its
/// weight k : (2s+1-k) between the two spin-1/2 orientations, and the
/// analogous Clebsch-Gordan squares drive the spin-s ladder.
pub fn reduced_distributions(p: &ThermalDistribution, spin: SpinMagnitude) -> Result<([f64; 2], Vec<f64>)> {
    let n = spin.coupled_levels();
    if p.len() != n || p.spectrum().medium() != Medium::Coupled {
        return Err(Error::Dimension { got: p.len(), expected: n });
    }
    p.spectrum().require_ordered()?;

    let probs = p.probs();
    let at = |label: usize| probs[label - 1];
    let m = spin.multiplicity() as f64; // 2s + 1
    let twice_s = spin.twice_s() as usize;

    let mut q_ground = at(1);
    let mut q_excited = at(n);
    for k in 1..=twice_s {
        q_ground += (k as f64 * at(2 * k) + (m - k as f64) * at(2 * k + 1)) / m;
        q_excited += ((m - k as f64) * at(2 * k) + k as f64 * at(2 * k + 1)) / m;
    }

    let mut r = vec![0.0; spin.multiplicity()];
    r[0] = at(1) + (twice_s as f64 * at(2) + at(3)) / m;
    for jj in 2..=twice_s {
        let j = jj as f64;
        r[jj - 1] = ((j - 1.0) * at(2 * jj - 2)
            + (m + 1.0 - j) * at(2 * jj - 1)
            + (m - j) * at(2 * jj)
            + j * at(2 * jj + 1))
            / m;
    }
    r[twice_s] = (twice_s as f64 * at(n - 2) + at(n - 1)) / m + at(n);

    Ok(([q_ground, q_excited], r))
}

/// The per-spin split of one cycle's work.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalWorkReport {
    /// Work extracted through the spin-1/2, (2/(2s+1))(B1-B2)(X + Z).
    pub work_half: f64,
    /// Work extracted through the spin-s, (2/(2s+1))(B1-B2)(2sX - Z).
    pub work_spin: f64,
    /// Hot-side spin-1/2 marginal (ground, excited).
    pub q_half: [f64; 2],
    /// Hot-side spin-s marginal, ground first.
    pub r_spin: Vec<f64>,
}

/// Splits the global work into the two spins' local contributions. The
/// functional route and the marginal-population route are both evaluated and
/// must agree; their sum is exactly the global work 2(B1-B2)X.
pub fn local_work(
    hot: &ThermalDistribution,
    cold: &ThermalDistribution,
    spin: SpinMagnitude,
    b1: f64,
    b2: f64,
) -> Result<LocalWorkReport> {
    let f = functionals(hot, cold, spin)?;
    let m = spin.multiplicity() as f64;
    let work_half = 2.0 / m * (b1 - b2) * (f.x + f.z);
    let work_spin = 2.0 / m * (b1 - b2) * (f64::from(spin.twice_s()) * f.x - f.z);

    let (q_hot, r_hot) = reduced_distributions(hot, spin)?;
    let (q_cold, r_cold) = reduced_distributions(cold, spin)?;

    // Marginal-population route: local Zeeman ladders 2Bm with m = -1/2, 1/2
    // and m = -s .. s.
    let half_marginal = 2.0 * (b1 - b2) * (q_hot[1] - q_cold[1]);
    let mut spin_marginal = 0.0;
    let s_val = spin.value();
    for (idx, (rh, rc)) in r_hot.iter().zip(&r_cold).enumerate() {
        spin_marginal += 2.0 * (b1 - b2) * (idx as f64 - s_val) * (rh - rc);
    }
    debug_assert!(
        (work_half - half_marginal).abs() <= 1e-12 * work_half.abs().max(1.0),
        "spin-1/2 work routes disagree: {work_half} vs {half_marginal}"
    );
    debug_assert!(
        (work_spin - spin_marginal).abs() <= 1e-12 * work_spin.abs().max(1.0),
        "spin-s work routes disagree: {work_spin} vs {spin_marginal}"
    );

    Ok(LocalWorkReport {
        work_half,
        work_spin,
        q_half: q_hot,
        r_spin: r_hot,
    })
}

/// Efficiency of the coupled engine and its bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyReport {
    /// eta = eta0 / (1 - 2(2s+1) J Y / (B1 X)).
    pub eta: f64,
    /// Uncoupled Otto efficiency 1 - B2/B1.
    pub eta0: f64,
    /// Coupling-tightened bound eta0 / (1 - 2(2s+1) J / B1); stays below
    /// Carnot for J <= Phi/(2(2s+1)) and meets it exactly there.
    pub eta_ub: f64,
}

/// Evaluates eta, eta0, eta_ub. Engine mode (X > 0) is required, and the
/// field must dominate the exchange term so the denominators stay positive.
pub fn efficiency_and_bound(
    spin: SpinMagnitude,
    b1: f64,
    b2: f64,
    j: f64,
    x: f64,
    y: f64,
) -> Result<EfficiencyReport> {
    if x <= 0.0 {
        return Err(Error::Mode(x));
    }
    let gap_term = 2.0 * spin.multiplicity() as f64 * j;
    if gap_term >= b1 {
        return Err(Error::Singularity { gap_term, field: b1 });
    }
    let eta0 = 1.0 - b2 / b1;
    Ok(EfficiencyReport {
        eta: eta0 / (1.0 - gap_term * y / (b1 * x)),
        eta0,
        eta_ub: eta0 / (1.0 - gap_term / b1),
    })
}

fn check_engine_regime(b1: f64, b2: f64, t1: f64, t2: f64) -> Result<()> {
    if b2 <= 0.0 || b1 <= b2 {
        return Err(Error::Domain(format!("need B1 > B2 > 0, got B1 = {b1}, B2 = {b2}")));
    }
    if t2 <= 0.0 || t1 <= t2 {
        return Err(Error::Domain(format!("need T1 > T2 > 0, got T1 = {t1}, T2 = {t2}")));
    }
    if b2 / t2 < b1 / t1 {
        return Err(Error::Domain(format!(
            "ratio condition violated: B2/T2 = {} < B1/T1 = {}",
            b2 / t2,
            b1 / t1
        )));
    }
    Ok(())
}

fn check_coupled_pair(hot: &ThermalDistribution, cold: &ThermalDistribution, spin: SpinMagnitude) -> Result<()> {
    let n = spin.coupled_levels();
    if hot.len() != n || cold.len() != n {
        return Err(Error::Dimension {
            got: if hot.len() != n { hot.len() } else { cold.len() },
            expected: n,
        });
    }
    if hot.spectrum().medium() != Medium::Coupled || cold.spectrum().medium() != Medium::Coupled {
        return Err(Error::MismatchedSpectra("coupled-medium ensembles required".into()));
    }
    if !hot.spectrum().same_medium(cold.spectrum()) {
        return Err(Error::MismatchedSpectra(
            "hot and cold ensembles must share spin and coupling".into(),
        ));
    }
    hot.spectrum().require_ordered()?;
    cold.spectrum().require_ordered()
}
