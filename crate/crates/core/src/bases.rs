//! Constructors for every measurement-basis family.
//!
//! Vectors are stored as matrix columns; row `j` of column `a` is the
//! amplitude `<j|e_a>`. Phases written in turns are multiplied by `2 pi`
//! inside the exponent.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, unit_phase, validate_mub_modulus};
use crate::qcore::{Basis, BasisSet, CMatrix, CVector};

/// A real phase profile `f(j)` in turns.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseFunction {
    values: Vec<f64>,
}

impl PhaseFunction {
    pub fn zero(d: usize) -> Self {
        PhaseFunction {
            values: vec![0.0; d],
        }
    }

    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite phase {v}")));
        }
        Ok(PhaseFunction { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn phase(&self, j: usize) -> Complex64 {
        let t = self.values[j].rem_euclid(1.0);
        Complex64::from_polar(1.0, 2.0 * PI * t)
    }

    fn check_len(&self, d: usize) -> Result<()> {
        if self.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "phase function has {} entries, expected {d}",
                self.len()
            )));
        }
        Ok(())
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("dimension {d} < 2")));
    }
    Ok(())
}

fn inv_sqrt(d: usize) -> f64 {
    1.0 / (d as f64).sqrt()
}

pub fn computational(d: usize) -> Result<Basis> {
    check_dim(d)?;
    Basis::from_columns(CMatrix::identity(d, d), "computational")
}

/// Vector `a` has amplitude `exp(2 pi i (a j / d + f(j))) / sqrt(d)` at row `j`.
pub fn fourier(d: usize, f: &PhaseFunction) -> Result<Basis> {
    check_dim(d)?;
    f.check_len(d)?;
    let s = inv_sqrt(d);
    let di = d as i128;
    let m = CMatrix::from_fn(d, d, |j, a| {
        unit_phase((a * j) as i128, di) * f.phase(j) * s
    });
    Basis::from_columns(m, "fourier")
}

/// Vector `a` has amplitude
/// `exp(2 pi i ((d - p_r) j^2 / (2d) + a j / d + f(j))) / sqrt(d)` at row `j`.
pub fn quadratic_mub(d: usize, p_r: u64, f: &PhaseFunction) -> Result<Basis> {
    check_dim(d)?;
    validate_mub_modulus(d as u64, p_r)?;
    f.check_len(d)?;
    let s = inv_sqrt(d);
    let (di, q) = (d as i128, d as i128 - p_r as i128);
    let m = CMatrix::from_fn(d, d, |j, a| {
        let (j, a) = (j as i128, a as i128);
        unit_phase(q * j * j + 2 * a * j, 2 * di) * f.phase(j as usize) * s
    });
    Basis::from_columns(m, format!("quadratic-{p_r}"))
}

/// Computational, Fourier and quadratic bases: three mutually unbiased bases
/// in any dimension. The same phase profile is used for the last two.
pub fn three_mubs(d: usize, p_r: u64, f: &PhaseFunction) -> Result<BasisSet> {
    BasisSet::new(vec![
        computational(d)?,
        fourier(d, f)?,
        quadratic_mub(d, p_r, f)?,
    ])
}

/// Prime-dimension basis with amplitudes `omega^(j k + alpha k^2) / sqrt(d)`.
fn prime_quadratic(d: usize, alpha: usize) -> Result<Basis> {
    let s = inv_sqrt(d);
    let di = d as i128;
    let al = alpha as i128;
    let m = CMatrix::from_fn(d, d, |k, j| {
        let (k, j) = (k as i128, j as i128);
        unit_phase(j * k + al * k * k, di) * s
    });
    Basis::from_columns(m, format!("prime-quadratic-{alpha}"))
}

/// Vector `j` has amplitude `omega^(j k + k^2) / sqrt(d)` at row `k`, for odd prime `d`.
pub fn ivonovic_quadratic(d: usize) -> Result<Basis> {
    if d.is_multiple_of(2) || !is_prime(d as u64) {
        return Err(Error::NotOddPrime(d as u64));
    }
    Ok(prime_quadratic(d, 1)?.with_label("ivonovic"))
}

/// Multiplies row `alpha` of every vector by `exp(i theta)`.
pub fn phase_drift(b: &Basis, alpha: usize, theta: f64) -> Result<Basis> {
    let d = b.dim();
    if alpha >= d {
        return Err(Error::IndexOutOfRange {
            index: alpha,
            dim: d,
        });
    }
    if !theta.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite angle {theta}")));
    }
    let mut m = b.matrix().clone();
    let phase = Complex64::from_polar(1.0, theta);
    m.row_mut(alpha).iter_mut().for_each(|z| *z *= phase);
    Basis::from_columns(m, format!("{}-drift", b.label()))
}

/// Computational, Fourier and the phase-drifted prime quadratic basis, for odd prime `d`.
pub fn drifted_triple(d: usize, alpha: usize, theta: f64) -> Result<BasisSet> {
    let third = phase_drift(&ivonovic_quadratic(d)?, alpha, theta)?;
    BasisSet::new(vec![
        computational(d)?,
        fourier(d, &PhaseFunction::zero(d))?,
        third,
    ])
}

/// `(c_-, c_+) = ((sqrt(d) -+ 2|sin(theta/2)|)^2 / d^2)`, the extreme squared
/// overlaps between the Fourier basis and the drifted quadratic basis.
pub fn drift_overlap_bounds(d: usize, theta: f64) -> (f64, f64) {
    let sd = (d as f64).sqrt();
    let s = 2.0 * (theta / 2.0).sin().abs();
    let d2 = (d * d) as f64;
    ((sd - s).powi(2) / d2, (sd + s).powi(2) / d2)
}

/// A complete set of `d + 1` mutually unbiased bases for `d = 2` or odd prime `d`.
pub fn complete_mubs(d: usize) -> Result<BasisSet> {
    if d == 2 {
        return three_mubs(2, 1, &PhaseFunction::zero(2));
    }
    if d.is_multiple_of(2) || !is_prime(d as u64) {
        return Err(Error::NotOddPrime(d as u64));
    }
    let mut bases = vec![computational(d)?];
    for alpha in 0..d {
        bases.push(prime_quadratic(d, alpha)?);
    }
    BasisSet::new(bases)
}

fn amub_phase(z: usize, j: usize, p_eff: f64) -> f64 {
    let num = (z * j * j) as u128;
    if p_eff.fract() == 0.0 && p_eff < 2f64.powi(52) {
        let p = p_eff as u128;
        (num % p) as f64 / p_eff
    } else {
        (num as f64 / p_eff).rem_euclid(1.0)
    }
}

/// Standard basis plus the `d` bases with amplitudes
/// `exp(2 pi i (z j^2 / p_eff + a j / d)) / sqrt(d)`, `j = 1..=d` on row `j - 1`.
pub fn amub_set(d: usize, p_eff: f64) -> Result<BasisSet> {
    check_dim(d)?;
    if !(p_eff.is_finite() && p_eff > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "p_eff = {p_eff} must be positive"
        )));
    }
    let s = inv_sqrt(d);
    let di = d as i128;
    let mut bases = vec![computational(d)?.with_label("amub-0")];
    for z in 1..=d {
        let m = CMatrix::from_fn(d, d, |row, a| {
            let j = row + 1;
            let quad = Complex64::from_polar(1.0, 2.0 * PI * amub_phase(z, j, p_eff));
            quad * unit_phase((a * j) as i128, di) * s
        });
        bases.push(Basis::from_columns(m, format!("amub-{z}"))?);
    }
    BasisSet::new(bases)
}

/// One tilted measurement family `{|j_alpha>}_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct TiltedFamily {
    pub alpha: usize,
    pub vectors: Vec<CVector>,
    /// False whenever the Schmidt vector is non-uniform.
    pub orthogonal: bool,
}

impl TiltedFamily {
    pub fn to_basis(&self) -> Result<Basis> {
        let d = self.vectors.len();
        let mut m = CMatrix::zeros(d, d);
        for (j, v) in self.vectors.iter().enumerate() {
            m.set_column(j, v);
        }
        Basis::from_columns(m, format!("tilted-{}", self.alpha))
    }
}

pub fn check_schmidt_vector(lambda: &[f64]) -> Result<()> {
    if lambda.len() < 2 {
        return Err(Error::BadSchmidtVector(format!(
            "length {} < 2",
            lambda.len()
        )));
    }
    if lambda.iter().any(|&l| !(l.is_finite() && l >= 0.0)) {
        return Err(Error::BadSchmidtVector(
            "entries must be finite and non-negative".into(),
        ));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::BadSchmidtVector(
            "entries must be sorted descending".into(),
        ));
    }
    let norm2: f64 = lambda.iter().map(|l| l * l).sum();
    if (norm2 - 1.0).abs() > 1e-9 {
        return Err(Error::BadSchmidtVector(format!(
            "sum of squares {norm2} != 1"
        )));
    }
    Ok(())
}

/// Vectors `|j_alpha> = sum_n omega^(j n + alpha n^2) sqrt(lambda_n) |n> / sqrt(sum_i lambda_i)`
/// for `j = 0..d`, with `lambda` in computational index order.
pub fn tilted_vectors(lambda: &[f64], alpha: usize) -> Vec<CVector> {
    let d = lambda.len();
    let total: f64 = lambda.iter().sum();
    let weights: Vec<f64> = lambda.iter().map(|l| (l / total).sqrt()).collect();
    let (di, al) = (d as i128, alpha as i128);
    (0..di)
        .map(|j| {
            CVector::from_fn(d, |n, _| {
                unit_phase(j * n as i128 + al * (n * n) as i128, di) * weights[n]
            })
        })
        .collect()
}

/// Tilted families `alpha = 0..count` for a descending Schmidt vector.
pub fn tilted_bases(lambda: &[f64], count: usize) -> Result<Vec<TiltedFamily>> {
    check_schmidt_vector(lambda)?;
    let d = lambda.len();
    if count == 0 || count > d {
        return Err(Error::InvalidParameter(format!(
            "family count {count} outside 1..={d}"
        )));
    }
    let orthogonal = lambda[0] - lambda[d - 1] <= 1e-12;
    Ok((0..count)
        .map(|alpha| TiltedFamily {
            alpha,
            vectors: tilted_vectors(lambda, alpha),
            orthogonal,
        })
        .collect())
}

/// Haar-random unitary from a complex Gaussian matrix orthonormalised by
/// modified Gram-Schmidt (two passes). Gram-Schmidt leaves every pivot real
/// and positive, which makes the result Haar distributed.
pub fn random_unitary_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let mut m: CMatrix = DMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let data = m.as_mut_slice();
    for _ in 0..2 {
        for k in 0..d {
            let (done, rest) = data.split_at_mut(k * d);
            let ck = &mut rest[..d];
            for qi in done.chunks_exact(d) {
                let proj: Complex64 = qi.iter().zip(ck.iter()).map(|(q, c)| q.conj() * c).sum();
                ck.iter_mut().zip(qi).for_each(|(c, q)| *c -= q * proj);
            }
            let norm = ck.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            ck.iter_mut().for_each(|c| *c /= norm);
        }
    }
    m
}

pub fn random_basis_with<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Basis> {
    check_dim(d)?;
    Basis::from_columns(random_unitary_with(d, rng), "random")
}

/// Deterministic Haar-random basis for a given seed.
pub fn random_basis(d: usize, seed: u64) -> Result<Basis> {
    random_basis_with(d, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_unitary(d: usize, seed: u64) -> CMatrix {
    random_unitary_with(d, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::overlap_table;

    fn max_cross_deviation(bs: &BasisSet) -> f64 {
        let t = overlap_table(bs);
        let target = 1.0 / bs.dim() as f64;
        t.ordered_pairs()
            .into_iter()
            .flat_map(|(z, zp)| t.pair_block(z, zp).to_vec())
            .map(|x| (x - target).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn computational_and_fourier() {
        let z = computational(5).unwrap();
        assert_eq!(z.matrix(), &CMatrix::identity(5, 5));
        let h = fourier(2, &PhaseFunction::zero(2)).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((h.matrix()[(1, 1)] - Complex64::new(-s, 0.0)).norm() < 1e-15);
        let bs = BasisSet::new(vec![z, fourier(5, &PhaseFunction::zero(5)).unwrap()]).unwrap();
        assert!(max_cross_deviation(&bs) < 1e-12);
    }

    #[test]
    fn three_mub_examples() {
        let f = |d| PhaseFunction::zero(d);
        assert!(max_cross_deviation(&three_mubs(6, 1, &f(6)).unwrap()) < 1e-9);
        assert!(max_cross_deviation(&three_mubs(2, 1, &f(2)).unwrap()) < 1e-9);
        assert!(max_cross_deviation(&three_mubs(10, 3, &f(10)).unwrap()) < 1e-9);
        assert!(max_cross_deviation(&three_mubs(4, 3, &f(4)).unwrap()) < 1e-9);
        assert!(matches!(
            quadratic_mub(9, 3, &f(9)),
            Err(Error::BadModulusParameter(_))
        ));
    }

    #[test]
    fn prime_families() {
        assert!(matches!(ivonovic_quadratic(4), Err(Error::NotOddPrime(4))));
        let bs = drifted_triple(5, 0, 0.0).unwrap();
        assert!(max_cross_deviation(&bs) < 1e-9);
        for d in [2, 3, 5, 7] {
            let bs = complete_mubs(d).unwrap();
            assert_eq!(bs.len(), d + 1);
            assert!(max_cross_deviation(&bs) < 1e-9);
        }
    }

    #[test]
    fn drift_extremes() {
        let bs = drifted_triple(5, 0, PI).unwrap();
        let s = overlap_table(&bs).pair_summary(1, 2);
        let (lo, hi) = drift_overlap_bounds(5, PI);
        assert!(s.c_max <= hi + 1e-9 && s.c_min >= lo - 1e-9);
        assert!((hi - (5f64.sqrt() + 2.0).powi(2) / 25.0).abs() < 1e-15);
        let b = ivonovic_quadratic(5).unwrap();
        assert_eq!(phase_drift(&b, 0, 0.0).unwrap().matrix(), b.matrix());
        assert!(matches!(
            phase_drift(&b, 5, 0.1),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn tilted_uniform_reproduces_fourier_and_prime_quadratic() {
        let u = vec![1.0 / 5f64.sqrt(); 5];
        let fam = tilted_bases(&u, 1).unwrap();
        assert!(fam[0].orthogonal);
        let four = fourier(5, &PhaseFunction::zero(5)).unwrap();
        assert!((fam[0].to_basis().unwrap().matrix() - four.matrix()).norm() < 1e-12);
        let u3 = vec![1.0 / 3f64.sqrt(); 3];
        let fam = tilted_bases(&u3, 2).unwrap();
        let iv = ivonovic_quadratic(3).unwrap();
        assert!((fam[1].to_basis().unwrap().matrix() - iv.matrix()).norm() < 1e-12);
    }

    #[test]
    fn tilted_degenerate_and_errors() {
        let fam = tilted_bases(&[1.0, 0.0, 0.0], 2).unwrap();
        assert!(!fam[0].orthogonal);
        for f in &fam {
            for v in &f.vectors {
                assert!((v[0].norm() - 1.0).abs() < 1e-15 && v[1].norm() == 0.0);
            }
        }
        assert!(matches!(
            tilted_bases(&[0.6, 0.8], 1),
            Err(Error::BadSchmidtVector(_))
        ));
        assert!(matches!(
            tilted_bases(&[0.8, 0.5], 1),
            Err(Error::BadSchmidtVector(_))
        ));
    }

    #[test]
    fn random_basis_deterministic_and_orthonormal() {
        let a = random_basis(7, 42).unwrap();
        let b = random_basis(7, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_basis(7, 43).unwrap());
        let g = a.matrix().adjoint() * a.matrix();
        assert!(crate::qcore::identity_deviation(&g) < 1e-10);
    }

    #[test]
    fn amub_unbiased_to_standard() {
        let bs = amub_set(6, 7.0).unwrap();
        assert_eq!(bs.len(), 7);
        let t = overlap_table(&bs);
        for z in 1..7 {
            assert!(t
                .pair_block(0, z)
                .iter()
                .all(|x| (x - 1.0 / 6.0).abs() < 1e-12));
        }
    }
}
