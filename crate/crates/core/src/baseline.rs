//! Fidelity-based comparison witness: a target state with Schmidt
//! coefficients read off the matching-outcome diagonal, measured in the
//! computational basis plus `M` tilted families.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bases::tilted_vectors;
use crate::error::{Error, Result};
use crate::numtheory::is_prime;
use crate::qcore::{kron, CMatrix, DensityMatrix};
use crate::states::{thermal_amplitudes, BETA_ZERO};
use crate::witness::certified_k;

pub const MAX_BASELINE_DIM: usize = 12;

/// Target Schmidt coefficients `lambda_i = sqrt(<ii|rho|ii> / sum_j <jj|rho|jj>)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetCoefficients {
    /// Coefficients in computational index order.
    pub by_index: Vec<f64>,
    /// The same coefficients sorted descending.
    pub sorted: Vec<f64>,
    /// `sorted[r] = by_index[permutation[r]]`.
    pub permutation: Vec<usize>,
}

pub fn target_coefficients(rho: &DensityMatrix) -> Result<TargetCoefficients> {
    let d = rho.local_dim();
    let diag: Vec<f64> = (0..d).map(|i| rho.diag(i, i).max(0.0)).collect();
    let total: f64 = diag.iter().sum();
    if total <= 1e-300 {
        return Err(Error::ZeroDiagonal);
    }
    let by_index: Vec<f64> = diag.iter().map(|x| (x / total).sqrt()).collect();
    let mut permutation: Vec<usize> = (0..d).collect();
    permutation.sort_by(|&a, &b| by_index[b].total_cmp(&by_index[a]).then(a.cmp(&b)));
    let sorted = permutation.iter().map(|&i| by_index[i]).collect();
    Ok(TargetCoefficients {
        by_index,
        sorted,
        permutation,
    })
}

/// `|sum_{alpha<M} omega^(alpha q)| = |sin(pi M q / d)| / |sin(pi q / d)|`,
/// with the removable singularity `q = 0 (mod d)` evaluated as `M`.
pub fn dirichlet_kernel(q: i64, m: usize, d: usize) -> f64 {
    let di = d as i64;
    let r = q.rem_euclid(di);
    if r == 0 {
        return m as f64;
    }
    let mr = (m as i64 * r).rem_euclid(di);
    if mr == 0 {
        return 0.0;
    }
    let s = |x: i64| (PI_F * x as f64 / d as f64).sin().abs();
    s(mr) / s(r)
}

const PI_F: f64 = std::f64::consts::PI;

/// Index quadruples `(m, m', n, n')` entering the off-diagonal correction:
/// `m != m'`, `m != n`, `n != n'`, `n' != m'` and `m - m' - n + n' = 0 (mod d)`.
fn quadruples(d: usize) -> impl Iterator<Item = [usize; 4]> {
    let di = d as i64;
    (0..d).flat_map(move |m| {
        (0..d).flat_map(move |mp| {
            (0..d).filter_map(move |n| {
                let np = (mp as i64 + n as i64 - m as i64).rem_euclid(di) as usize;
                (m != mp && m != n && n != np && np != mp).then_some([m, mp, n, np])
            })
        })
    })
}

fn quad_q([m, mp, n, np]: [usize; 4]) -> i64 {
    let sq = |x: usize| (x * x) as i64;
    sq(m) - sq(mp) - sq(n) + sq(np)
}

/// `D_d^(M)`: sum of Dirichlet kernels over the constrained quadruples.
pub fn dirichlet_sum_d(d: usize, m: usize) -> f64 {
    quadruples(d)
        .map(|q| dirichlet_kernel(quad_q(q), m, d))
        .sum()
}

/// Same sum weighted by `sqrt(lambda_m lambda_n lambda_m' lambda_n')`.
pub fn dirichlet_sum_weighted(lambda: &[f64], m: usize) -> f64 {
    let d = lambda.len();
    quadruples(d)
        .map(|q @ [a, b, c, e]| {
            (lambda[a] * lambda[b] * lambda[c] * lambda[e]).sqrt()
                * dirichlet_kernel(quad_q(q), m, d)
        })
        .sum()
}

/// `B~_k = sum_{i<k} lambda_i^2` for descending `lambda`.
pub fn baseline_bk(lambda: &[f64], k: usize) -> f64 {
    lambda.iter().take(k).map(|l| l * l).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineReport {
    #[serde(rename = "M")]
    pub m: usize,
    /// Descending target coefficients.
    pub lambda: Vec<f64>,
    #[serde(rename = "F1")]
    pub f1: f64,
    #[serde(rename = "Sigma")]
    pub sigma: f64,
    #[serde(rename = "F2_tilde")]
    pub f2_tilde: f64,
    #[serde(rename = "F_tilde")]
    pub f_tilde: f64,
    /// `B~_1 ..= B~_d`.
    #[serde(rename = "B_tilde")]
    pub b_tilde: Vec<f64>,
    pub certified_k_lower: usize,
}

/// Assembles `F~ = F1 + F~2` from matrix elements of `rho`.
pub fn baseline_fidelity_bound(rho: &DensityMatrix, m: usize) -> Result<BaselineReport> {
    let d = rho.local_dim();
    if d > MAX_BASELINE_DIM {
        return Err(Error::DimensionTooLarge {
            dim: d,
            max: MAX_BASELINE_DIM,
        });
    }
    if m == 0 || m > d {
        return Err(Error::InvalidParameter(format!("M = {m} outside 1..={d}")));
    }
    let target = target_coefficients(rho)?;
    let lam = &target.by_index;
    let diag = |i: usize, j: usize| rho.diag(i, j).max(0.0);

    let f1: f64 = (0..d).map(|n| lam[n] * lam[n] * diag(n, n)).sum();

    let mut sigma = 0.0;
    for alpha in 0..m {
        for v in tilted_vectors(lam, alpha) {
            let col = CMatrix::from_column_slice(d, 1, v.as_slice());
            let w = kron(&col, &col.map(|z: Complex64| z.conj()));
            sigma += rho.expectation(&w.column(0).into_owned()).re;
        }
    }
    sigma /= m as f64;

    let lam_sum: f64 = lam.iter().sum();
    let cross: f64 = (0..d)
        .flat_map(|a| (0..d).map(move |b| (a, b)))
        .map(|(a, b)| lam[a] * lam[b] * diag(a, b))
        .sum();
    let gamma_term: f64 = quadruples(d)
        .map(|q @ [a, ap, b, bp]| {
            let gamma = (lam[a] * lam[b] * lam[ap] * lam[bp]).sqrt() / m as f64
                * dirichlet_kernel(quad_q(q), m, d);
            gamma * (diag(ap, bp) * diag(a, b)).sqrt()
        })
        .sum();
    let f2_tilde = lam_sum * lam_sum / d as f64 * sigma - cross - gamma_term;
    let f_tilde = f1 + f2_tilde;
    let b_tilde: Vec<f64> = (1..=d).map(|k| baseline_bk(&target.sorted, k)).collect();
    Ok(BaselineReport {
        m,
        lambda: target.sorted,
        f1,
        sigma,
        f2_tilde,
        certified_k_lower: certified_k(f_tilde, &b_tilde),
        f_tilde,
        b_tilde,
    })
}

/// `d (d - k) / (d^2 - 1 + D_d^(M) / (M d))`.
pub fn p_tilde_iso(d: usize, k: usize, m: usize) -> f64 {
    let df = d as f64;
    df * (df - k as f64) / (df * df - 1.0 + dirichlet_sum_d(d, m) / (m as f64 * df))
}

/// `1 - p + p/d^2 - p D_d^(M) / (M d^3)`.
pub fn f_tilde_iso(d: usize, p: f64, m: usize) -> f64 {
    let df = d as f64;
    1.0 - p + p / (df * df) - p * dirichlet_sum_d(d, m) / (m as f64 * df.powi(3))
}

/// Target coefficients of the noisy purified thermal state, descending.
pub fn thermal_target_lambda(d: usize, beta: f64, p: f64) -> Vec<f64> {
    let df = d as f64;
    let norm = 1.0 - p + p / df;
    thermal_amplitudes(d, beta)
        .iter()
        .map(|a| (((1.0 - p) * a * a + p / (df * df)) / norm).sqrt())
        .collect()
}

/// `(p/d^2)(1 - Dbar/M) + (1 - p) kappa` with
/// `kappa = (sum_n lambda_n e^{-beta n/2})^2 / Z`.
pub fn f_tilde_thermal(d: usize, beta: f64, p: f64, m: usize) -> f64 {
    let lam = thermal_target_lambda(d, beta, p);
    let amps = thermal_amplitudes(d, beta);
    let kappa = lam
        .iter()
        .zip(&amps)
        .map(|(l, a)| l * a)
        .sum::<f64>()
        .powi(2);
    let d_bar = dirichlet_sum_weighted(&lam, m);
    p / (d * d) as f64 * (1.0 - d_bar / m as f64) + (1.0 - p) * kappa
}

/// `(1/N)[(1 - p)(1 - e^{-k beta})/(1 - e^{-d beta}) + p k / d^2]`, `N = 1 - p + p/d`.
pub fn b_tilde_thermal(d: usize, beta: f64, p: f64, k: usize) -> f64 {
    let (df, kf) = (d as f64, k as f64);
    let geometric = if beta < BETA_ZERO {
        kf / df
    } else {
        (-(kf * beta)).exp_m1() / (-(df * beta)).exp_m1()
    };
    ((1.0 - p) * geometric + p * kf / (df * df)) / (1.0 - p + p / df)
}

/// Supremum of noise ratios `p` for which `F~(p) > B~_k(p)` on the thermal
/// family, located by 64 coarse samples and bisection to `1e-9`.
///
/// Returns 1 when the inequality holds on the whole interval and
/// [`Error::NonBracketed`] when it already fails at `p = 0`.
pub fn p_tilde_thermal(d: usize, k: usize, beta: f64, m: usize) -> Result<f64> {
    if d.is_multiple_of(2) || !is_prime(d as u64) {
        return Err(Error::NotOddPrime(d as u64));
    }
    if !(beta.is_finite() && beta >= 0.0) || k == 0 || k >= d || m == 0 || m > d {
        return Err(Error::InvalidParameter(format!(
            "need beta >= 0, 1 <= k < d, 1 <= M <= d; got beta={beta}, k={k}, M={m}"
        )));
    }
    let g = |p: f64| f_tilde_thermal(d, beta, p, m) - b_tilde_thermal(d, beta, p, k);
    if g(0.0) <= 0.0 {
        return Err(Error::NonBracketed(format!(
            "F~ <= B~_{k} already at p = 0 (d={d}, beta={beta}, M={m})"
        )));
    }
    const SAMPLES: usize = 64;
    let mut lo = 0.0;
    let mut hi = None;
    for i in 1..=SAMPLES {
        let p = i as f64 / SAMPLES as f64;
        if g(p) > 0.0 {
            lo = p;
        } else {
            hi = Some(p);
            break;
        }
    }
    let Some(mut hi) = hi else {
        return Ok(1.0);
    };
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
