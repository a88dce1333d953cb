//! Benchmark state families with closed-form reference quantities.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{max_entangled, CMatrix, CVector, DensityMatrix, Ket};

/// Below this inverse temperature the `beta = 0` limits are used.
pub const BETA_ZERO: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsotropicParams {
    pub d: usize,
    pub p: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermalParams {
    pub d: usize,
    pub beta: f64,
    pub p: f64,
}

fn check_noise(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "noise ratio {p} outside [0, 1]"
        )));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "inverse temperature {beta} must be >= 0"
        )));
    }
    Ok(())
}

/// `(1 - p)|Phi+><Phi+| + p 1/d^2`.
pub fn isotropic(d: usize, p: f64) -> Result<DensityMatrix> {
    check_noise(p)?;
    let phi = max_entangled(d, &CMatrix::identity(d, d))?;
    DensityMatrix::with_white_noise(d, &phi, p)
}

/// Schmidt amplitudes `e^{-beta n / 2} / sqrt(Z)`, `Z = sum_n e^{-beta n}`.
pub fn thermal_amplitudes(d: usize, beta: f64) -> Vec<f64> {
    let w: Vec<f64> = (0..d).map(|n| (-beta * n as f64 / 2.0).exp()).collect();
    let z: f64 = w.iter().map(|x| x * x).sum();
    w.into_iter().map(|x| x / z.sqrt()).collect()
}

pub fn thermal_ket(d: usize, beta: f64) -> Result<Ket> {
    check_beta(beta)?;
    let amps = thermal_amplitudes(d, beta);
    Ket::new(CVector::from_fn(d * d, |idx, _| {
        if idx / d == idx % d {
            Complex64::new(amps[idx / d], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// `(1 - p)|psi_th><psi_th| + p 1/d^2`.
pub fn purified_thermal(d: usize, beta: f64, p: f64) -> Result<DensityMatrix> {
    check_noise(p)?;
    if d < 2 {
        return Err(Error::InvalidParameter(format!("dimension {d} < 2")));
    }
    DensityMatrix::with_white_noise(d, &thermal_ket(d, beta)?, p)
}

/// Exact Schmidt number of the isotropic state: the largest `s` with
/// `p < d (d - s + 1) / (d^2 - 1)`.
pub fn schmidt_number_isotropic(d: usize, p: f64) -> usize {
    let df = d as f64;
    (1..=d)
        .rev()
        .find(|&s| p < df * (df - s as f64 + 1.0) / (df * df - 1.0))
        .unwrap_or(1)
}

/// `p_iso^(k) = d (d - k) / (d^2 - 1)`.
pub fn p_iso(d: usize, k: usize) -> f64 {
    let df = d as f64;
    df * (df - k as f64) / (df * df - 1.0)
}

/// `S = p m / d + (1 - p) m`.
pub fn witness_closed_isotropic(d: usize, p: f64, m: usize) -> f64 {
    let mf = m as f64;
    p * mf / d as f64 + (1.0 - p) * mf
}

/// `1 - p + p / d^2`.
pub fn ent_fidelity_isotropic(d: usize, p: f64) -> f64 {
    1.0 - p + p / (d * d) as f64
}

/// `tanh(d beta / 4) / (d tanh(beta / 4))`, equal to 1 at `beta = 0`.
fn tanh_ratio(d: usize, beta: f64) -> f64 {
    if beta < BETA_ZERO {
        return 1.0;
    }
    let df = d as f64;
    (df * beta / 4.0).tanh() / (df * (beta / 4.0).tanh())
}

/// Noise-free witness value of the purified thermal state on the prime
/// triple: `m` at `beta = 0`, otherwise `1 + (m - 1) tanh(d beta/4) / (d tanh(beta/4))`.
pub fn tau_thermal(d: usize, beta: f64, m: usize) -> f64 {
    if beta < BETA_ZERO {
        return m as f64;
    }
    1.0 + (m as f64 - 1.0) * tanh_ratio(d, beta)
}

/// Entanglement fidelity of the noisy purified thermal state.
pub fn ent_fidelity_thermal(d: usize, beta: f64, p: f64) -> f64 {
    if beta < BETA_ZERO {
        return ent_fidelity_isotropic(d, p);
    }
    (1.0 - p) * tanh_ratio(d, beta) + p / (d * d) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{reduced_state, Party};

    #[test]
    fn isotropic_limits() {
        let rho = isotropic(3, 0.5).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        let mixed = isotropic(4, 1.0).unwrap();
        assert_eq!(mixed, DensityMatrix::maximally_mixed(4).unwrap());
        let ra = reduced_state(&isotropic(3, 0.37).unwrap(), Party::A);
        assert!(crate::qcore::identity_deviation(&(ra * Complex64::new(3.0, 0.0))) < 1e-12);
    }

    #[test]
    fn thermal_limits() {
        let a = purified_thermal(4, 0.0, 0.3).unwrap();
        let b = isotropic(4, 0.3).unwrap();
        assert!((a.matrix() - b.matrix()).camax() < 1e-12);
        let g = purified_thermal(3, 50.0, 0.0).unwrap();
        assert!((g.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
        let rho = purified_thermal(2, 1.0, 0.0).unwrap();
        let rb = reduced_state(&rho, Party::B);
        let z = 1.0 + (-1.0f64).exp();
        assert!((rb[(0, 0)].re - 1.0 / z).abs() < 1e-12);
        assert!((rb[(1, 1)].re - (-1.0f64).exp() / z).abs() < 1e-12);
        assert!(rb[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn schmidt_number_examples() {
        assert_eq!(schmidt_number_isotropic(5, 0.0), 5);
        assert_eq!(schmidt_number_isotropic(5, 5.0 / 24.0 - 1e-9), 5);
        assert_eq!(schmidt_number_isotropic(5, 5.0 / 24.0), 4);
        assert_eq!(schmidt_number_isotropic(5, 0.9), 1);
        assert_eq!(schmidt_number_isotropic(5, 5.0 / 6.0 - 1e-9), 2);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(witness_closed_isotropic(5, 0.0, 3), 3.0);
        assert!((witness_closed_isotropic(5, 1.0, 3) - 0.6).abs() < 1e-15);
        assert!((witness_closed_isotropic(5, 0.3, 3) - 2.28).abs() < 1e-12);
        assert!((ent_fidelity_isotropic(5, 0.2) - 0.808).abs() < 1e-12);
        assert_eq!(tau_thermal(5, 0.0, 3), 3.0);
        assert!((tau_thermal(5, 200.0, 3) - 1.4).abs() < 1e-12);
        assert!((ent_fidelity_thermal(5, 0.0, 0.2) - 0.808).abs() < 1e-12);
        assert!((ent_fidelity_thermal(5, 1.0, 1.0) - 0.04).abs() < 1e-15);
        let expected = 1.25f64.tanh() / (5.0 * 0.25f64.tanh());
        assert!((ent_fidelity_thermal(5, 1.0, 0.0) - expected).abs() < 1e-15);
        assert!((expected - 0.6927064).abs() < 1e-7);
    }
}
