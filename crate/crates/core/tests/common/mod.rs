//! Shared random-draw helpers for the cross-check suites.

use otto_core::spectra::{coupled_spectrum, ordering_threshold, single_spin_spectrum, EnergySpectrum};
use otto_core::{SpinMagnitude, ThermalDistribution};
use rand::rngs::StdRng;
use rand::Rng;

#[derive(Debug, Clone, Copy)]
pub struct Draw {
    pub spin: SpinMagnitude,
    pub coupled: bool,
    pub b1: f64,
    pub b2: f64,
    pub t1: f64,
    pub t2: f64,
    pub j: f64,
}

pub fn spin_from(rng: &mut StdRng) -> SpinMagnitude {
    SpinMagnitude::from_twice_s(rng.random_range(1..=5)).unwrap()
}

/// Any thermodynamically valid cycle: T1 > T2, positive fields in either
/// order, coupling kept below the crossing bound at both fields.
pub fn any_cycle_draw(rng: &mut StdRng, coupled: bool) -> Draw {
    let spin = spin_from(rng);
    let b1: f64 = rng.random_range(0.8..5.0);
    let b2: f64 = rng.random_range(0.8..5.0);
    let t2: f64 = rng.random_range(0.4..4.0);
    let t1 = t2 * rng.random_range(1.05..3.0);
    let j = if coupled {
        rng.random_range(0.0..0.92) * b1.min(b2) / ordering_threshold(spin, 1.0)
    } else {
        0.0
    };
    Draw { spin, coupled, b1, b2, t1, t2, j }
}

/// Engine-regime draw: B1 > B2 > 0, T1 > T2 > 0, and B2/T2 >= B1/T1.
pub fn engine_draw(rng: &mut StdRng, coupled: bool) -> Draw {
    let spin = spin_from(rng);
    let b2: f64 = rng.random_range(0.8..4.0);
    let b1 = b2 * rng.random_range(1.05..2.5);
    let t2: f64 = rng.random_range(0.5..4.0);
    let t1 = t2 * (b1 / b2) * rng.random_range(1.01..2.0);
    let j: f64 = if coupled {
        rng.random_range(0.0..0.92) * b2 / ordering_threshold(spin, 1.0)
    } else {
        0.0
    };
    Draw { spin, coupled, b1, b2, t1, t2, j }
}

pub fn spectra_for(d: &Draw) -> (EnergySpectrum, EnergySpectrum) {
    if d.coupled {
        (
            coupled_spectrum(d.spin, d.b1, d.j).unwrap(),
            coupled_spectrum(d.spin, d.b2, d.j).unwrap(),
        )
    } else {
        (
            single_spin_spectrum(d.spin, d.b1).unwrap(),
            single_spin_spectrum(d.spin, d.b2).unwrap(),
        )
    }
}

pub fn ensembles_for(d: &Draw) -> (ThermalDistribution, ThermalDistribution) {
    let (hot, cold) = spectra_for(d);
    (
        otto_core::canonical_distribution(&hot, d.t1).unwrap(),
        otto_core::canonical_distribution(&cold, d.t2).unwrap(),
    )
}

/// Relative agreement with an absolute floor, for quantities that cross zero.
#[allow(dead_code)] // not every suite uses every helper
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    otto_core::numeric::within(a, b, rel, 1e-12)
}
