//! Analytic energy spectra for the two working media, and the dense
//! Hamiltonian matrix consumed by the verification oracle.
//!
//! Labels are canonical and ascend with energy whenever the field exceeds the
//! level-crossing threshold, so occupation probabilities can be paired by
//! label across the two adiabatic strokes. Level formulas are assembled from
//! exact integer coefficients times B and J; no level comparison ever hinges
//! on accumulated floating-point noise.
//!
//! Single spin-s in field B (gyromagnetic ratio 2):
//!
//! ```text
//!   e_k = 2 (k - s - 1) B,              k = 1 .. 2s+1
//! ```
//!
//! Spin-1/2 coupled to spin-s by isotropic exchange J, n = 2(2s+1) levels,
//! with the constant 4sJ absorbed into the stored offset so the upper
//! multiplet is J-free:
//!
//! ```text
//!   e_1      = -(2s+1) B
//!   e_{2k}   = (2k - (2s+1)) B - 4(2s+1) J      k = 1 .. (n-2)/2
//!   e_{2k+1} = (2k - (2s+1)) B
//!   e_n      =  (2s+1) B
//! ```
//!
//! The stored `shift` is the constant added to the bare eigenvalues of the
//! Hamiltonian to produce these levels (`-4sJ` for the coupled pair), so the
//! oracle comparison `eig(H) + shift == levels` is unambiguous.

use crate::error::{Error, Result};
use crate::spin::SpinMagnitude;

/// Which working medium a spectrum (or distribution) describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Medium {
    /// A lone spin-s in a field.
    Single,
    /// Spin-1/2 exchange-coupled to spin-s.
    Coupled,
}

/// A label-ordered energy spectrum for one working medium at fixed (s, B, J).
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySpectrum {
    medium: Medium,
    spin: SpinMagnitude,
    field: f64,
    coupling: f64,
    shift: f64,
    levels: Vec<f64>,
    ordered: bool,
}

impl EnergySpectrum {
    /// Level energies indexed by label - 1 (labels run 1..=n).
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn medium(&self) -> Medium {
        self.medium
    }

    pub fn spin(&self) -> SpinMagnitude {
        self.spin
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// Constant offset already applied to the bare eigenvalues.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// True when label order coincides with energy order (no level crossing).
    /// For the coupled medium this requires B > 2(2s+1)J; at J = 0 the pair
    /// degeneracies are field-independent, so no crossing can occur.
    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    /// Spectral range, max level minus min level.
    pub fn range(&self) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &e in &self.levels {
            lo = lo.min(e);
            hi = hi.max(e);
        }
        hi - lo
    }

    pub(crate) fn require_ordered(&self) -> Result<()> {
        if self.ordered {
            Ok(())
        } else {
            Err(Error::UnorderedSpectrum {
                field: self.field,
                threshold: ordering_threshold(self.spin, self.coupling),
            })
        }
    }

    /// True when `other` describes the same medium, spin, and coupling, so the
    /// two spectra can sit on opposite ends of an adiabatic stroke.
    pub fn same_medium(&self, other: &EnergySpectrum) -> bool {
        self.medium == other.medium && self.spin == other.spin && self.coupling == other.coupling
    }
}

/// Zeeman spectrum of a lone spin-s: e_k = 2(k - s - 1)B, k = 1..=2s+1.
pub fn single_spin_spectrum(spin: SpinMagnitude, field: f64) -> Result<EnergySpectrum> {
    if field <= 0.0 {
        return Err(Error::NonPositiveField(field));
    }
    let twice_s = i64::from(spin.twice_s());
    let levels = (1..=spin.multiplicity() as i64)
        .map(|k| (2 * k - twice_s - 2) as f64 * field)
        .collect();
    Ok(EnergySpectrum {
        medium: Medium::Single,
        spin,
        field,
        coupling: 0.0,
        shift: 0.0,
        levels,
        ordered: true,
    })
}

/// Spectrum of the exchange-coupled (1/2, s) pair with the 4sJ offset applied.
pub fn coupled_spectrum(spin: SpinMagnitude, field: f64, coupling: f64) -> Result<EnergySpectrum> {
    if field <= 0.0 {
        return Err(Error::NonPositiveField(field));
    }
    if coupling < 0.0 {
        return Err(Error::NegativeCoupling(coupling));
    }
    let m = spin.multiplicity() as i64; // 2s + 1
    let n = spin.coupled_levels();
    let mut levels = Vec::with_capacity(n);
    levels.push(-(m as f64) * field);
    for k in 1..=(n as i64 - 2) / 2 {
        let zeeman = (2 * k - m) as f64 * field;
        levels.push(zeeman - (4 * m) as f64 * coupling);
        levels.push(zeeman);
    }
    levels.push(m as f64 * field);

    let ordered = coupling == 0.0 || field > ordering_threshold(spin, coupling);
    Ok(EnergySpectrum {
        medium: Medium::Coupled,
        spin,
        field,
        coupling,
        shift: -2.0 * f64::from(spin.twice_s()) * coupling, // -4sJ
        levels,
        ordered,
    })
}

/// Minimum field strictly above which the coupled labels are also energy
/// ordered: 2(2s+1)J. The lone spin never crosses, so its threshold is 0.
pub fn ordering_threshold(spin: SpinMagnitude, coupling: f64) -> f64 {
    2.0 * spin.multiplicity() as f64 * coupling
}

/// Dense real-symmetric Hamiltonian of the coupled pair in the product basis,
/// used only by the verification oracle (the analytic paths above never touch
/// it):
///
/// ```text
///   H = 2B (s_z x I + I x s_z) + 8J (s_x x s_x + s_y x s_y + s_z x s_z)
/// ```
///
/// Basis order is (half x spin) with magnetic quantum numbers descending, so
/// index a*(2s+1)+j holds m1 = 1/2 - a and m2 = s - j.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHamiltonian {
    dim: usize,
    entries: Vec<f64>,
}

impl DenseHamiltonian {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    /// Largest |H_ij - H_ji| relative to the largest entry magnitude.
    pub fn symmetry_defect(&self) -> f64 {
        let scale = self
            .entries
            .iter()
            .fold(0.0f64, |acc, &x| acc.max(x.abs()))
            .max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max((self.at(i, j) - self.at(j, i)).abs());
            }
        }
        worst / scale
    }

}

/// Builds H = 2B(s_z x I + I x s_z) + 8J(s_x x s_x + s_y x s_y + s_z x s_z)
/// for the (1/2, s) pair. Any real B is accepted; the oracle probes negative
/// and zero fields that the analytic constructors reject.
pub fn hamiltonian_matrix(spin: SpinMagnitude, field: f64, coupling: f64) -> DenseHamiltonian {
    let half = SpinOps::new(1);
    let other = SpinOps::new(spin.twice_s());
    let da = half.dim;
    let db = other.dim;
    let n = da * db;
    let mut h = vec![0.0; n * n];

    // Zeeman: 2B (s_z x I + I x s_z). Both s_z are diagonal.
    for a in 0..da {
        for b in 0..db {
            let i = a * db + b;
            h[i * n + i] += 2.0 * field * (half.mz(a) + other.mz(b));
        }
    }

    // Exchange: 8J [ (s+ x s- + s- x s+)/2 + s_z x s_z ].
    for a in 0..da {
        for b in 0..db {
            let row = a * db + b;
            h[row * n + row] += 8.0 * coupling * half.mz(a) * other.mz(b);
            // s+ x s-: raises m1 (index a -> a-1), lowers m2 (index b -> b+1).
            if a > 0 && b + 1 < db {
                let col_row = (a - 1) * db + (b + 1);
                let amp = 4.0 * coupling * half.raise_amp(a) * other.lower_amp(b);
                h[col_row * n + row] += amp;
                h[row * n + col_row] += amp;
            }
        }
    }

    DenseHamiltonian { dim: n, entries: h }
}

/// Zeeman Hamiltonian 2B s_z of a lone spin-s, for the single-medium oracle.
pub fn single_zeeman_matrix(spin: SpinMagnitude, field: f64) -> DenseHamiltonian {
    let ops = SpinOps::new(spin.twice_s());
    let n = ops.dim;
    let mut h = vec![0.0; n * n];
    for i in 0..n {
        h[i * n + i] = 2.0 * field * ops.mz(i);
    }
    DenseHamiltonian { dim: n, entries: h }
}

/// Ladder-operator matrix elements for one spin, basis ordered by descending
/// magnetic quantum number. Amplitudes are computed from integer products of
/// 2j and 2m, so they are exact before the final square root.
struct SpinOps {
    twice_j: i64,
    dim: usize,
}

impl SpinOps {
    fn new(twice_j: u32) -> Self {
        Self {
            twice_j: i64::from(twice_j),
            dim: twice_j as usize + 1,
        }
    }

    /// m at basis index i (descending: m = j - i).
    fn mz(&self, i: usize) -> f64 {
        (self.twice_j - 2 * i as i64) as f64 / 2.0
    }

    /// <m+1| s+ |m> at index i: sqrt(j(j+1) - m(m+1)).
    fn raise_amp(&self, i: usize) -> f64 {
        let tm = self.twice_j - 2 * i as i64;
        let num = self.twice_j * (self.twice_j + 2) - tm * (tm + 2);
        (num as f64).sqrt() / 2.0
    }

    /// <m-1| s- |m> at index i: sqrt(j(j+1) - m(m-1)).
    fn lower_amp(&self, i: usize) -> f64 {
        let tm = self.twice_j - 2 * i as i64;
        let num = self.twice_j * (self.twice_j + 2) - tm * (tm - 2);
        (num as f64).sqrt() / 2.0
    }
}
