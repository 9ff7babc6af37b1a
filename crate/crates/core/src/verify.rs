//! The independent brute-force oracle: dense diagonalization, matrix-form
//! thermal states, partial traces, and direct-sum cycle bookkeeping.
//!
//! Nothing here reuses the analytic spectra, functional identities, or the
//! ensemble code in [`crate::thermo`]; entropies, divergences, and Boltzmann
//! weights are recomputed locally so that agreement between this module and
//! the analytic paths is a genuine cross-check, not a tautology. Dimensions
//! stay at or below 12 for s <= 5/2, so a cyclic Jacobi sweep is accurate to
//! machine precision and needs no external solver.

use crate::error::{Error, Result};
use crate::spectra::{hamiltonian_matrix, single_zeeman_matrix, DenseHamiltonian};
use crate::spin::SpinMagnitude;
use crate::thermo::{CycleReport, OperationMode};

/// A real symmetric density matrix in the product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl DensityMatrix {
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

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }
}

/// Eigenvalues (ascending) and the matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    dim: usize,
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Row-major matrix whose column k is the eigenvector of `values[k]`.
    vectors: Vec<f64>,
}

impl Eigensystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Component i of eigenvector k.
    pub fn vector_component(&self, k: usize, i: usize) -> f64 {
        self.vectors[i * self.dim + k]
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self.vector_component(k, i)).collect()
    }
}

const JACOBI_MAX_SWEEPS: usize = 64;

/// Full eigendecomposition of a real symmetric matrix by cyclic Jacobi
/// rotations. The result is post-verified: per-pair residuals must stay
/// within 1e-10 of the matrix norm and the eigenvector matrix orthonormal to
/// 1e-12, otherwise `Convergence` is returned.
pub fn diagonalize(h: &DenseHamiltonian) -> Result<Eigensystem> {
    let n = h.dim();
    let mut a = h.entries().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let frob: f64 = h.entries().iter().map(|x| x * x).sum::<f64>().sqrt();
    let off_tol = 1e-15 * frob.max(f64::MIN_POSITIVE);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= off_tol {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = a[p * n + j];
                    let aqj = a[q * n + j];
                    a[p * n + j] = c * apj - s * aqj;
                    a[q * n + j] = s * apj + c * aqj;
                }
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::Convergence(JACOBI_MAX_SWEEPS));
    }

    // Sort ascending, carrying eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values: Vec<f64> = order.iter().map(|&k| a[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_k, &old_k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + new_k] = v[i * n + old_k];
        }
    }
    let eig = Eigensystem { dim: n, values, vectors };

    // Residual ||Hv - lambda v|| per pair.
    for k in 0..n {
        let mut res = 0.0;
        for i in 0..n {
            let mut hv = 0.0;
            for j in 0..n {
                hv += h.at(i, j) * eig.vector_component(k, j);
            }
            let r = hv - eig.values[k] * eig.vector_component(k, i);
            res += r * r;
        }
        if res.sqrt() > 1e-10 * frob.max(1e-300) {
            return Err(Error::Convergence(JACOBI_MAX_SWEEPS));
        }
    }
    // Orthonormality.
    for k in 0..n {
        for l in k..n {
            let mut dot = 0.0;
            for i in 0..n {
                dot += eig.vector_component(k, i) * eig.vector_component(l, i);
            }
            let want = if k == l { 1.0 } else { 0.0 };
            if (dot - want).abs() > 1e-12 {
                return Err(Error::Convergence(JACOBI_MAX_SWEEPS));
            }
        }
    }
    Ok(eig)
}

/// Gibbs state exp(-H/T)/Z assembled from the eigendecomposition with
/// shift-stabilized weights.
pub fn thermal_density_matrix(h: &DenseHamiltonian, temperature: f64) -> Result<DensityMatrix> {
    if temperature <= 0.0 {
        return Err(Error::NonPositiveTemperature(temperature));
    }
    let eig = diagonalize(h)?;
    let weights = gibbs_weights(&eig.values, temperature);
    let n = h.dim();
    let mut rho = vec![0.0; n * n];
    for (k, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        for i in 0..n {
            let vi = eig.vector_component(k, i);
            for j in 0..n {
                rho[i * n + j] += w * vi * eig.vector_component(k, j);
            }
        }
    }
    Ok(DensityMatrix { dim: n, entries: rho })
}

/// Which factor of the (1/2, s) product to keep when tracing out the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    Half,
    Spin,
}

/// Diagonal of a reduced density matrix in the local energy basis (ground
/// state first), plus the largest off-diagonal magnitude seen. Cycle states
/// are diagonal in the coupled eigenbasis, so their reduced off-diagonals
/// vanish to roundoff; the value is reported so tests can enforce that.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDiagonal {
    pub probs: Vec<f64>,
    pub max_off_diagonal: f64,
}

/// Partial trace of a (1/2, s) state over the complementary factor. The
/// product basis is (half x spin) with magnetic numbers descending, so the
/// local energy basis (ascending) is the reversed diagonal.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem, spin: SpinMagnitude) -> Result<ReducedDiagonal> {
    let d_spin = spin.multiplicity();
    let n = 2 * d_spin;
    if rho.dim() != n {
        return Err(Error::Dimension { got: rho.dim(), expected: n });
    }
    let dim = match keep {
        Subsystem::Half => 2,
        Subsystem::Spin => d_spin,
    };
    let mut reduced = vec![0.0; dim * dim];
    match keep {
        Subsystem::Half => {
            for a in 0..2 {
                for b in 0..2 {
                    let mut sum = 0.0;
                    for j in 0..d_spin {
                        sum += rho.at(a * d_spin + j, b * d_spin + j);
                    }
                    reduced[a * 2 + b] = sum;
                }
            }
        }
        Subsystem::Spin => {
            for i in 0..d_spin {
                for j in 0..d_spin {
                    let mut sum = 0.0;
                    for a in 0..2 {
                        sum += rho.at(a * d_spin + i, a * d_spin + j);
                    }
                    reduced[i * d_spin + j] = sum;
                }
            }
        }
    }

    let mut max_off = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                max_off = max_off.max(reduced[i * dim + j].abs());
            }
        }
    }
    // Basis index runs over descending m; ascending local energy reverses it.
    let probs = (0..dim).rev().map(|i| reduced[i * dim + i]).collect();
    Ok(ReducedDiagonal { probs, max_off_diagonal: max_off })
}

/// Runs one full cycle exclusively through matrix paths: build H at both
/// fields, diagonalize, weight, and sum. Must agree with the analytic
/// [`crate::thermo::otto_cycle`] to 1e-10 relative.
pub fn brute_force_cycle(
    spin: SpinMagnitude,
    coupled: bool,
    b1: f64,
    b2: f64,
    t1: f64,
    t2: f64,
    j: f64,
) -> Result<CycleReport> {
    if b1 <= 0.0 || b2 <= 0.0 {
        return Err(Error::NonPositiveField(b1.min(b2)));
    }
    if j < 0.0 {
        return Err(Error::NegativeCoupling(j));
    }
    if t2 <= 0.0 {
        return Err(Error::NonPositiveTemperature(t2));
    }
    if t1 <= t2 {
        return Err(Error::TemperatureOrder { t_hot: t1, t_cold: t2 });
    }
    let (h_hot, h_cold) = if coupled {
        (hamiltonian_matrix(spin, b1, j), hamiltonian_matrix(spin, b2, j))
    } else {
        (single_zeeman_matrix(spin, b1), single_zeeman_matrix(spin, b2))
    };
    let eig_hot = diagonalize(&h_hot)?;
    let eig_cold = diagonalize(&h_cold)?;
    let p = gibbs_weights(&eig_hot.values, t1);
    let pp = gibbs_weights(&eig_cold.values, t2);

    let mut heat_hot = 0.0;
    let mut heat_cold = 0.0;
    for k in 0..p.len() {
        let dp = p[k] - pp[k];
        heat_hot += eig_hot.values[k] * dp;
        heat_cold -= eig_cold.values[k] * dp;
    }
    let work = heat_hot + heat_cold;
    let entropy_hot = entropy(&p);
    let entropy_cold = entropy(&pp);
    let divergence_hot_cold = kl(&p, &pp)?;
    let divergence_cold_hot = kl(&pp, &p)?;
    let entropy_production = -heat_cold / t2 - heat_hot / t1;
    let mode = if heat_hot > 0.0 && work >= 0.0 {
        OperationMode::Engine
    } else if heat_hot < 0.0 && heat_cold > 0.0 && work < 0.0 {
        OperationMode::Refrigerator
    } else {
        OperationMode::Dud
    };
    Ok(CycleReport {
        heat_hot,
        heat_cold,
        work,
        efficiency: match mode {
            OperationMode::Engine => Some(work / heat_hot),
            _ => None,
        },
        entropy_hot,
        entropy_cold,
        divergence_hot_cold,
        divergence_cold_hot,
        entropy_production,
        mode,
    })
}

// Local copies of the ensemble primitives, deliberately not shared with the
// analytic modules.

fn gibbs_weights(energies: &[f64], t: f64) -> Vec<f64> {
    let top = energies.iter().map(|e| -e / t).fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = energies.iter().map(|e| (-e / t - top).exp()).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|x| x / z).collect()
}

fn entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum()
}

fn kl(x: &[f64], y: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for (index, (&xi, &yi)) in x.iter().zip(y).enumerate() {
        if xi > 0.0 {
            if yi <= 0.0 {
                return Err(Error::AbsoluteContinuity { index, x: xi });
            }
            total += xi * (xi / yi).ln();
        }
    }
    Ok(total)
}
