//! Noise thresholds, bias tolerances, Welch and Lévy diagnostics, the
//! quartic row optimiser with its brute-force oracle, and scan tables.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bases::{drift_overlap_bounds, random_unitary_with};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::numtheory::is_prime;
use crate::qcore::{CVector, PairSummary};
use crate::states::tau_thermal;
use crate::witness::{loose_bounds, quartic_cap};

/// A threshold clamped to `[0, 1]`; `clamped` records whether the analytic
/// value fell outside.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub value: f64,
    pub raw: f64,
    pub clamped: bool,
}

impl Threshold {
    fn new(raw: f64) -> Self {
        let value = raw.clamp(0.0, 1.0);
        Threshold {
            value,
            raw,
            clamped: value != raw,
        }
    }
}

/// Largest isotropic noise ratio for which `S > B_k`:
/// `(m - T)(d - k) / (m (d - 1))`.
pub fn p_threshold_iso(d: usize, k: usize, m: usize, t: f64) -> Threshold {
    let (df, kf, mf) = (d as f64, k as f64, m as f64);
    Threshold::new((mf - t) * (df - kf) / (mf * (df - 1.0)))
}

fn check_cmin(d: usize, c_min: f64) -> Result<()> {
    if !(0.0..=1.0 / d as f64 + 1e-12).contains(&c_min) {
        return Err(Error::InvalidParameter(format!(
            "c_min = {c_min} outside [0, 1/d]"
        )));
    }
    Ok(())
}

/// Loosened `T` when every pair has `c_min` and the largest compatible
/// `c_max = 1 - (d - 1) c_min`.
pub fn worst_case_t(d: usize, m: usize, c_min: f64) -> Result<f64> {
    check_cmin(d, c_min)?;
    let c_max = (1.0 - (d as f64 - 1.0) * c_min).max(1.0 / d as f64);
    let summaries = vec![PairSummary { c_max, c_min }; m * (m - 1)];
    Ok(loose_bounds(&summaries, d, m)?.t_bar)
}

/// `c_min` at or below which worst-case bases give `T = m` for every `m`:
/// `(3d - 1 - sqrt(d^2 + 10d - 7)) / (2d(d - 1))`.
pub fn cmin_no_witness_bound(d: usize) -> f64 {
    let df = d as f64;
    (3.0 * df - 1.0 - (df * df + 10.0 * df - 7.0).sqrt()) / (2.0 * df * (df - 1.0))
}

/// Smallest `c_min` of worst-case bases above which `m` measurements certify
/// Schmidt number `k + 1` for the isotropic state with noise `p`.
///
/// With `T* = m - p m (d-1)/(d-k)` the certification condition is
/// `T_bar(c) < T*`, i.e. `2 - (3d-1) c + d(d-1) c^2 < R` with
/// `R = ((2T* - 1)^2 - 1) / (2 d m (m-1))`; the bound is the smaller root.
pub fn cmin_tolerance_iso(d: usize, k: usize, m: usize, p: f64) -> Result<f64> {
    let (df, kf, mf) = (d as f64, k as f64, m as f64);
    if d < 2 || k == 0 || k >= d || m < 2 {
        return Err(Error::InvalidParameter(format!(
            "need d >= 2, 1 <= k < d, m >= 2; got d={d}, k={k}, m={m}"
        )));
    }
    if p < 0.0 {
        return Err(Error::InvalidParameter(format!("noise ratio {p} < 0")));
    }
    let limit = (mf - 1.0) * (df - kf) / (mf * (df - 1.0));
    if p >= limit {
        return Err(Error::InfeasibleNoise { p, limit });
    }
    let t_star = mf - p * mf * (df - 1.0) / (df - kf);
    let r = ((2.0 * t_star - 1.0).powi(2) - 1.0) / (2.0 * df * mf * (mf - 1.0));
    let disc = (df + 1.0).powi(2) + 4.0 * df * (df - 1.0) * r;
    Ok((3.0 * df - 1.0 - disc.sqrt()) / (2.0 * df * (df - 1.0)))
}

/// Noise threshold of the purified thermal state on the drifted prime triple,
/// `m = 2` (computational, Fourier) or `m = 3` (all three).
pub fn p_threshold_thermal(
    d: usize,
    k: usize,
    m: usize,
    beta: f64,
    theta: f64,
) -> Result<Threshold> {
    if d.is_multiple_of(2) || !is_prime(d as u64) {
        return Err(Error::NotOddPrime(d as u64));
    }
    if !(m == 2 || m == 3) {
        return Err(Error::InvalidParameter(format!("m = {m}, expected 2 or 3")));
    }
    if k == 0 || k >= d {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..d")));
    }
    let t_bar = thermal_t_bar(d, m, theta)?;
    let (df, kf, mf) = (d as f64, k as f64, m as f64);
    let tau = tau_thermal(d, beta, m);
    Ok(Threshold::new(
        (tau * df - kf * mf - (df - kf) * t_bar) / (tau * df - mf),
    ))
}

/// Loosened `T` of the first `m` bases of the drifted prime triple. Pairs with
/// the computational basis are unbiased; the remaining pair uses the drift
/// bounds, with `c_+` capped at 1.
pub fn thermal_t_bar(d: usize, m: usize, theta: f64) -> Result<f64> {
    let mub = PairSummary {
        c_max: 1.0 / d as f64,
        c_min: 1.0 / d as f64,
    };
    let (lo, hi) = drift_overlap_bounds(d, theta);
    let drift = PairSummary {
        c_max: hi.min(1.0),
        c_min: lo.min(1.0 / d as f64),
    };
    let summaries: Vec<PairSummary> = (0..m)
        .flat_map(|z| (0..m).filter(move |&zp| zp != z).map(move |zp| (z, zp)))
        .map(|(z, zp)| if z.min(zp) >= 1 { drift } else { mub })
        .collect();
    Ok(loose_bounds(&summaries, d, m)?.t_bar)
}

/// Upper bound on the number of bases compatible with a given `lambda(C)`:
/// `(d + 1)/2 (1 + sqrt(1 + 8 lambda (lambda - 1) / (d^2 - 1)))`.
pub fn max_bases_bound(d: usize, lambda: f64) -> f64 {
    let df = d as f64;
    (df + 1.0) / 2.0 * (1.0 + (1.0 + 8.0 * lambda * (lambda - 1.0) / (df * df - 1.0)).sqrt())
}

/// `sum_ij |<psi_i|psi_j>|^(2k) - M^2 / binom(d + k - 1, k)`; non-negative
/// for any set of unit vectors.
pub fn welch_check(vectors: &[CVector], k: u32) -> Result<f64> {
    let Some(first) = vectors.first() else {
        return Ok(0.0);
    };
    let d = first.len();
    if vectors.iter().any(|v| v.len() != d) {
        return Err(Error::DimensionMismatch("vectors of unequal length".into()));
    }
    let binom = match k {
        1 => d as f64,
        2 => (d * (d + 1) / 2) as f64,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "Welch order {k} not in {{1, 2}}"
            )))
        }
    };
    let mut total = 0.0;
    for u in vectors {
        for v in vectors {
            total += u.dotc(v).norm_sqr().powi(k as i32);
        }
    }
    let n = vectors.len() as f64;
    Ok(total - n * n / binom)
}

/// `min(1, 2 exp(-d eps^2 / (18 pi^3 ln 2)))`.
pub fn levy_bound(d: usize, eps: f64) -> f64 {
    let c = 18.0 * PI.powi(3) * std::f64::consts::LN_2;
    (2.0 * (-(d as f64) * eps * eps / c).exp()).min(1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationResult {
    pub d: usize,
    pub trials: usize,
    pub eps: Vec<f64>,
    /// Fraction of squared overlaps with `|x - 1/d| > eps`, per `eps`.
    pub empirical_rate: Vec<f64>,
    pub bound: Vec<f64>,
    pub mean_overlap: f64,
    pub std_error: f64,
}

/// Samples `trials` pairs of Haar-random bases (trial `t` uses stream `t` of
/// the seeded generator) and collects every squared cross overlap.
pub fn concentration_experiment(
    d: usize,
    trials: usize,
    eps: &[f64],
    seed: u64,
    exec: Exec,
) -> Result<ConcentrationResult> {
    if d < 2 || trials == 0 {
        return Err(Error::InvalidParameter(format!(
            "need d >= 2 and trials >= 1, got d={d}, trials={trials}"
        )));
    }
    let target = 1.0 / d as f64;
    let per_trial = exec.map_indices(trials, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        // A^dagger B is Haar distributed whenever A and B are, so one draw
        // gives the overlap matrix of an independent Haar pair.
        let overlaps = random_unitary_with(d, &mut rng);
        let mut exceed = vec![0usize; eps.len()];
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for z in overlaps.iter() {
            let x = z.norm_sqr();
            sum += x;
            sum_sq += x * x;
            for (e, count) in eps.iter().zip(exceed.iter_mut()) {
                if (x - target).abs() > *e {
                    *count += 1;
                }
            }
        }
        (exceed, sum, sum_sq)
    });
    let n = (trials * d * d) as f64;
    let mut exceed = vec![0usize; eps.len()];
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for (e, s, s2) in per_trial {
        exceed.iter_mut().zip(e).for_each(|(acc, x)| *acc += x);
        sum += s;
        sum_sq += s2;
    }
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0);
    Ok(ConcentrationResult {
        d,
        trials,
        eps: eps.to_vec(),
        empirical_rate: exceed.iter().map(|&c| c as f64 / n).collect(),
        bound: eps.iter().map(|&e| levy_bound(d, e)).collect(),
        mean_overlap: mean,
        std_error: (var / n).sqrt(),
    })
}

fn check_box(d: usize, c_min: f64, c_max: f64) -> Result<()> {
    let df = d as f64;
    if c_min < 0.0 || c_max > 1.0 || c_min > c_max {
        return Err(Error::Infeasible(format!(
            "box [{c_min}, {c_max}] is not inside [0, 1]"
        )));
    }
    if c_max * df < 1.0 - 1e-12 || c_min * df > 1.0 + 1e-12 {
        return Err(Error::Infeasible(format!(
            "no row of {d} entries in [{c_min}, {c_max}] sums to 1"
        )));
    }
    Ok(())
}

/// `d * max sum_i x_i^2` over rows `x` in `[c_min, c_max]^d` with `sum x = 1`.
pub fn prop3_closed_form(d: usize, c_min: f64, c_max: f64) -> Result<f64> {
    check_box(d, c_min, c_max)?;
    let (_, omega) = quartic_cap(d, c_min, c_max).map_err(|e| Error::Infeasible(e.to_string()))?;
    Ok(d as f64 * omega)
}

/// Grid search for the same maximum: the first `d - 1` coordinates run over a
/// grid that includes both box endpoints, the last is fixed by the row sum.
/// Two local refinements follow, each with a ten times finer step.
pub fn prop3_brute_oracle(d: usize, c_min: f64, c_max: f64, grid_step: f64) -> Result<f64> {
    if !(2..=4).contains(&d) {
        return Err(Error::InvalidParameter(format!(
            "oracle supports d in 2..=4, got {d}"
        )));
    }
    if !(grid_step > 0.0 && grid_step <= 1e-2) {
        return Err(Error::InvalidParameter(format!(
            "grid step {grid_step} outside (0, 1e-2]"
        )));
    }
    check_box(d, c_min, c_max)?;
    let coarse = axis(c_min, c_max, c_min, c_max, grid_step);
    let axes = vec![coarse; d - 1];
    let (mut best, mut point) = grid_max(&axes, c_min, c_max)
        .ok_or_else(|| Error::Infeasible("grid search found no feasible point".into()))?;
    let mut step = grid_step;
    for _ in 0..2 {
        let fine = step / 10.0;
        let axes: Vec<Vec<f64>> = point
            .iter()
            .map(|&x| {
                axis(
                    (x - step).max(c_min),
                    (x + step).min(c_max),
                    c_min,
                    c_max,
                    fine,
                )
            })
            .collect();
        if let Some((v, p)) = grid_max(&axes, c_min, c_max) {
            if v > best {
                best = v;
                point = p;
            }
        }
        step = fine;
    }
    Ok(d as f64 * best)
}

/// Grid from `lo` to `hi` with spacing `step`, plus the box endpoints when
/// they fall in range.
fn axis(lo: f64, hi: f64, c_min: f64, c_max: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).floor() as usize;
    let mut v: Vec<f64> = (0..=n).map(|i| lo + i as f64 * step).collect();
    v.push(hi);
    for e in [c_min, c_max] {
        if e >= lo && e <= hi {
            v.push(e);
        }
    }
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn grid_max(axes: &[Vec<f64>], c_min: f64, c_max: f64) -> Option<(f64, Vec<f64>)> {
    fn rec(
        axes: &[Vec<f64>],
        prefix: &mut Vec<f64>,
        sum: f64,
        sq: f64,
        c: (f64, f64),
        best: &mut Option<(f64, Vec<f64>)>,
    ) {
        if prefix.len() == axes.len() {
            let last = 1.0 - sum;
            if last >= c.0 - 1e-12 && last <= c.1 + 1e-12 {
                let v = sq + last * last;
                if best.as_ref().is_none_or(|(b, _)| v > *b) {
                    *best = Some((v, prefix.clone()));
                }
            }
            return;
        }
        for &x in &axes[prefix.len()] {
            if sum + x > 1.0 + 1e-12 {
                break;
            }
            prefix.push(x);
            rec(axes, prefix, sum + x, sq + x * x, c, best);
            prefix.pop();
        }
    }
    let mut best = None;
    rec(
        axes,
        &mut Vec::with_capacity(axes.len()),
        0.0,
        0.0,
        (c_min, c_max),
        &mut best,
    );
    best
}

/// One independent variable sampled on strictly increasing values, plus fixed
/// parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub variable: String,
    pub values: Vec<f64>,
    pub fixed: BTreeMap<String, f64>,
}

impl ScanGrid {
    pub fn new(variable: &str, values: Vec<f64>, fixed: BTreeMap<String, f64>) -> Result<Self> {
        if !matches!(variable, "p" | "theta" | "beta" | "eps_min" | "d" | "eps") {
            return Err(Error::InvalidParameter(format!(
                "unknown scan variable '{variable}'"
            )));
        }
        if values.is_empty()
            || values.windows(2).any(|w| w[0] >= w[1])
            || values.iter().any(|v| !v.is_finite())
        {
            return Err(Error::InvalidParameter(
                "scan values must be finite and strictly increasing".into(),
            ));
        }
        Ok(ScanGrid {
            variable: variable.to_string(),
            values,
            fixed,
        })
    }

    /// `n >= 2` evenly spaced values from `lo` to `hi` inclusive.
    pub fn linspace(variable: &str, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 grid points, got {n}"
            )));
        }
        let values = (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect();
        Self::new(variable, values, BTreeMap::new())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Empty,
}

/// Named columns and rows of scan output.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ScanTable {
    fn new(columns: &[&str]) -> Self {
        ScanTable {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

/// Isotropic threshold against the bias `eps_min = 1/d - c_min` of worst-case bases.
pub fn scan_fig1(
    d: usize,
    ms: &[usize],
    ks: &[usize],
    grid: &ScanGrid,
    exec: Exec,
) -> Result<ScanTable> {
    let mut table = ScanTable::new(&["eps_min", "m", "k", "p_threshold"]);
    let df = d as f64;
    let cases: Vec<(usize, usize, f64)> = ms
        .iter()
        .flat_map(|&m| {
            ks.iter()
                .flat_map(move |&k| grid.values.iter().map(move |&e| (m, k, e)))
        })
        .collect();
    let rows = exec.map_slice(&cases, |&(m, k, eps)| -> Result<Vec<Cell>> {
        let t = worst_case_t(d, m, (1.0 / df - eps).max(0.0))?;
        let p = p_threshold_iso(d, k, m, t).value;
        Ok(vec![
            Cell::Real(eps),
            Cell::Int(m as i64),
            Cell::Int(k as i64),
            Cell::Real(p),
        ])
    });
    table.rows = rows.into_iter().collect::<Result<_>>()?;
    Ok(table)
}

/// Rescaled bias tolerance `d eps_min = 1 - d c_min` against `d`, at noise
/// `p` and at `p = 0`.
pub fn scan_fig_a1(dims: &[usize], m: usize, p: f64, exec: Exec) -> Result<ScanTable> {
    let mut table = ScanTable::new(&["d", "k", "p", "d_eps_min", "d_eps_min_p0"]);
    let cases: Vec<(usize, usize)> = dims
        .iter()
        .flat_map(|&d| (1..d).map(move |k| (d, k)))
        .collect();
    let rows = exec.map_slice(&cases, |&(d, k)| -> Result<Vec<Cell>> {
        let df = d as f64;
        let at_p = match cmin_tolerance_iso(d, k, m, p) {
            Ok(c) => Cell::Real(1.0 - df * c),
            Err(Error::InfeasibleNoise { .. }) => Cell::Empty,
            Err(e) => return Err(e),
        };
        let at_zero = 1.0 - df * cmin_tolerance_iso(d, k, m, 0.0)?;
        Ok(vec![
            Cell::Int(d as i64),
            Cell::Int(k as i64),
            Cell::Real(p),
            at_p,
            Cell::Real(at_zero),
        ])
    });
    table.rows = rows.into_iter().collect::<Result<_>>()?;
    Ok(table)
}

/// Thermal thresholds for `m = 2, 3` and `k = 1..d` against the grid variable
/// (`theta` at fixed `beta`, or `beta` at fixed `theta`).
pub fn scan_thermal(
    d: usize,
    grid: &ScanGrid,
    beta: f64,
    theta: f64,
    exec: Exec,
) -> Result<ScanTable> {
    let var = grid.variable.as_str();
    if var != "theta" && var != "beta" {
        return Err(Error::InvalidParameter(format!(
            "thermal scans vary theta or beta, not '{var}'"
        )));
    }
    let mut table = ScanTable::new(&[var, "m", "k", "p_threshold"]);
    let cases: Vec<(usize, usize, f64)> = [2usize, 3]
        .iter()
        .flat_map(|&m| (1..d).flat_map(move |k| grid.values.iter().map(move |&x| (m, k, x))))
        .collect();
    let rows = exec.map_slice(&cases, |&(m, k, x)| -> Result<Vec<Cell>> {
        let (b, th) = if var == "theta" {
            (beta, x)
        } else {
            (x, theta)
        };
        let p = p_threshold_thermal(d, k, m, b, th)?.value;
        Ok(vec![
            Cell::Real(x),
            Cell::Int(m as i64),
            Cell::Int(k as i64),
            Cell::Real(p),
        ])
    });
    table.rows = rows.into_iter().collect::<Result<_>>()?;
    Ok(table)
}

pub fn scan_cmin_bound(dims: &[usize]) -> ScanTable {
    let mut table = ScanTable::new(&["d", "c_min_bound", "eps_min"]);
    for &d in dims {
        let c = cmin_no_witness_bound(d);
        table.rows.push(vec![
            Cell::Int(d as i64),
            Cell::Real(c),
            Cell::Real(1.0 / d as f64 - c),
        ]);
    }
    table
}

/// Lévy bound against `eps`; with `trials > 0` the empirical deviation rate
/// of Haar-random bases is added.
pub fn scan_levy(
    d: usize,
    grid: &ScanGrid,
    trials: usize,
    seed: Option<u64>,
    exec: Exec,
) -> Result<ScanTable> {
    let mut table = ScanTable::new(&["eps", "levy_bound", "empirical_rate"]);
    let empirical = if trials > 0 {
        let seed =
            seed.ok_or_else(|| Error::InvalidParameter("a seed is required for sampling".into()))?;
        Some(concentration_experiment(
            d,
            trials,
            &grid.values,
            seed,
            exec,
        )?)
    } else {
        None
    };
    for (i, &eps) in grid.values.iter().enumerate() {
        let rate = empirical
            .as_ref()
            .map_or(Cell::Empty, |r| Cell::Real(r.empirical_rate[i]));
        table
            .rows
            .push(vec![Cell::Real(eps), Cell::Real(levy_bound(d, eps)), rate]);
    }
    Ok(table)
}
