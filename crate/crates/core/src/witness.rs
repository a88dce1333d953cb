//! Witness value, tight and loosened Schmidt-number bounds, fidelity lower
//! bounds and certification over basis subsets.
//!
//! Pair sums run over ordered pairs `z != z'`. The pair terms are symmetric, so
//! every unordered pair contributes twice.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::qcore::{
    frame_conjugate, hermitian_eigenvalues, kron, max_entangled, overlap_table, BasisSet, CMatrix,
    DensityMatrix, MeasuredCounts, OverlapTable, PairSummary,
};

/// Largest basis count accepted by the exhaustive subset search.
pub const MAX_SUBSET_BASES: usize = 12;
/// Largest local dimension for which dense `d^2 x d^2` operators are built.
pub const MAX_OPERATOR_DIM: usize = 12;
/// Largest local dimension for the operator inequality check.
pub const MAX_INEQUALITY_DIM: usize = 8;
/// `S` must exceed a bound by this much to count as a violation.
pub const VIOLATION_MARGIN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    Tight,
    Loose,
}

impl std::str::FromStr for BoundMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tight" => Ok(BoundMode::Tight),
            "loose" => Ok(BoundMode::Loose),
            other => Err(Error::InvalidParameter(format!(
                "unknown bound mode '{other}'"
            ))),
        }
    }
}

/// `B_k = k (m - T) / d + T` for `k = 1..=d`.
pub fn bound_vector(d: usize, m: usize, t: f64) -> Vec<f64> {
    let (df, mf) = (d as f64, m as f64);
    (1..=d).map(|k| k as f64 * (mf - t) / df + t).collect()
}

/// `1/2 (1 + sqrt(1 + 2 d sum G))`.
pub fn lambda_from_pair_sum(d: usize, g_sum: f64) -> f64 {
    0.5 * (1.0 + (1.0 + 2.0 * d as f64 * g_sum.max(0.0)).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairTerm {
    pub z: usize,
    pub z_prime: usize,
    pub g: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightBoundReport {
    pub pair_terms: Vec<PairTerm>,
    pub lambda: f64,
    pub t: f64,
    /// `B_1 ..= B_d`.
    pub bounds: Vec<f64>,
}

pub fn tight_bounds(table: &OverlapTable) -> Result<TightBoundReport> {
    let (d, m) = (table.dim(), table.m());
    if m < 2 {
        return Err(Error::TooFewBases { needed: 2, got: m });
    }
    let df = d as f64;
    let pair_terms: Vec<PairTerm> = table
        .ordered_pairs()
        .into_iter()
        .map(|(z, zp)| {
            let c_min = table.pair_summary(z, zp).c_min;
            let g = 1.0 - (df + 1.0) * c_min + table.quartic_sum(z, zp) / df;
            PairTerm { z, z_prime: zp, g }
        })
        .collect();
    let lambda = lambda_from_pair_sum(d, pair_terms.iter().map(|p| p.g).sum());
    let t = lambda.min(m as f64);
    Ok(TightBoundReport {
        pair_terms,
        lambda,
        t,
        bounds: bound_vector(d, m, t),
    })
}

/// Maximiser data of `sum_i x_i^2` over a row `x` with `sum x = 1` and
/// `c_min <= x_i <= c_max`: the number `L` of entries at `c_max` and the
/// optimum `Omega`.
pub fn quartic_cap(d: usize, c_min: f64, c_max: f64) -> Result<(usize, f64)> {
    let df = d as f64;
    if !(c_min.is_finite() && c_max.is_finite()) || c_min < 0.0 || c_max > 1.0 + 1e-12 {
        return Err(Error::InvalidOverlapSummary(format!(
            "overlaps must lie in [0, 1], got ({c_min}, {c_max})"
        )));
    }
    if c_max < c_min {
        return Err(Error::InvalidOverlapSummary(format!(
            "c_max {c_max} < c_min {c_min}"
        )));
    }
    if c_min > 1.0 / df + 1e-12 {
        return Err(Error::InvalidOverlapSummary(format!("c_min {c_min} > 1/d")));
    }
    if c_max < 1.0 / df - 1e-12 {
        return Err(Error::InvalidOverlapSummary(format!("c_max {c_max} < 1/d")));
    }
    let l = if c_max - c_min < 1e-12 {
        d
    } else {
        let raw = ((1.0 - c_min * df + 1e-12) / (c_max - c_min)).floor();
        (raw.max(0.0) as usize).min(d)
    };
    let lf = l as f64;
    let rest = df - lf - 1.0;
    let remainder = 1.0 - lf * c_max - rest * c_min;
    Ok((
        l,
        lf * c_max * c_max + rest * c_min * c_min + remainder * remainder,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoosePairTerm {
    pub z: usize,
    pub z_prime: usize,
    pub c_max: f64,
    pub c_min: f64,
    pub l: usize,
    pub omega: f64,
    pub g_bar: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LooseBoundReport {
    pub pair_terms: Vec<LoosePairTerm>,
    pub lambda_bar: f64,
    pub t_bar: f64,
    /// `Bbar_1 ..= Bbar_d`.
    pub bounds: Vec<f64>,
}

fn ordered_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m)
        .flat_map(|z| (0..m).filter(move |&zp| zp != z).map(move |zp| (z, zp)))
        .collect()
}

/// Loosened bounds from per-pair `(c_max, c_min)` summaries, listed for the
/// ordered pairs `(z, z')`, `z != z'`, in lexicographic order.
pub fn loose_bounds(summaries: &[PairSummary], d: usize, m: usize) -> Result<LooseBoundReport> {
    if m < 2 {
        return Err(Error::TooFewBases { needed: 2, got: m });
    }
    if d < 2 {
        return Err(Error::InvalidParameter(format!("dimension {d} < 2")));
    }
    let pairs = ordered_pairs(m);
    if summaries.len() != pairs.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} pair summaries for {} ordered pairs",
            summaries.len(),
            pairs.len()
        )));
    }
    let df = d as f64;
    let mut pair_terms = Vec::with_capacity(pairs.len());
    for (&(z, zp), s) in pairs.iter().zip(summaries) {
        let (l, omega) = quartic_cap(d, s.c_min, s.c_max)?;
        pair_terms.push(LoosePairTerm {
            z,
            z_prime: zp,
            c_max: s.c_max,
            c_min: s.c_min,
            l,
            omega,
            g_bar: 1.0 - (df + 1.0) * s.c_min + omega,
        });
    }
    let lambda_bar = lambda_from_pair_sum(d, pair_terms.iter().map(|p| p.g_bar).sum());
    let t_bar = lambda_bar.min(m as f64);
    Ok(LooseBoundReport {
        pair_terms,
        lambda_bar,
        t_bar,
        bounds: bound_vector(d, m, t_bar),
    })
}

pub fn loose_bounds_from_table(table: &OverlapTable) -> Result<LooseBoundReport> {
    let summaries: Vec<PairSummary> = table
        .ordered_pairs()
        .into_iter()
        .map(|(z, zp)| table.pair_summary(z, zp))
        .collect();
    loose_bounds(&summaries, table.dim(), table.m())
}

/// `max(0, (S - T) / (m - T))`, zero when `T = m`.
pub fn fidelity_lower(s: f64, m: usize, t: f64) -> f64 {
    let gap = m as f64 - t;
    if gap <= 1e-12 {
        return 0.0;
    }
    ((s - t) / gap).clamp(0.0, 1.0)
}

/// Largest `k + 1` with `S > B_k`, or 1 when no bound is violated.
pub fn certified_k(s: f64, bounds: &[f64]) -> usize {
    bounds
        .iter()
        .enumerate()
        .rev()
        .find(|&(_, &b)| s > b + VIOLATION_MARGIN)
        .map_or(1, |(i, _)| (i + 2).min(bounds.len()))
}

fn check_dims(rho: &DensityMatrix, bs: &BasisSet) -> Result<()> {
    if rho.local_dim() != bs.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state has local dimension {}, bases have {}",
            rho.local_dim(),
            bs.dim()
        )));
    }
    Ok(())
}

/// Matching-outcome probability `sum_a <e_a, e~_a*|rho|e_a, e~_a*>` of every basis.
pub fn witness_terms(rho: &DensityMatrix, bs: &BasisSet) -> Result<Vec<f64>> {
    check_dims(rho, bs)?;
    let d = bs.dim();
    let mut terms = Vec::with_capacity(bs.len());
    for basis in bs.bases() {
        let partner = frame_conjugate(basis, bs.frame())?;
        let mut total = num_complex::Complex64::new(0.0, 0.0);
        for a in 0..d {
            let v = kron(
                &basis.matrix().columns(a, 1).into_owned(),
                &partner.matrix().columns(a, 1).into_owned(),
            );
            total += rho.expectation(&v.column(0).into_owned());
        }
        if total.im.abs() > 1e-10 {
            return Err(Error::NumericalInconsistency(format!(
                "imaginary residue {:.3e} in basis '{}'",
                total.im,
                basis.label()
            )));
        }
        terms.push(total.re);
    }
    Ok(terms)
}

pub fn witness_value(rho: &DensityMatrix, bs: &BasisSet) -> Result<f64> {
    Ok(witness_terms(rho, bs)?.iter().sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

/// Per-basis empirical matching probability `n_z(a, a) / N_z` and its
/// binomial variance.
fn empirical_terms(counts: &MeasuredCounts) -> Result<Vec<(f64, f64)>> {
    let d = counts.dim();
    (0..counts.len())
        .map(|z| {
            let n: u64 = counts.table(z).iter().sum();
            if n == 0 {
                return Err(Error::EmptyCounts(counts.labels()[z].clone()));
            }
            let hits: u64 = (0..d).map(|a| counts.count(z, a, a)).sum();
            let p = hits as f64 / n as f64;
            Ok((p, p * (1.0 - p) / n as f64))
        })
        .collect()
}

pub fn witness_value_empirical(counts: &MeasuredCounts) -> Result<Estimate> {
    let terms = empirical_terms(counts)?;
    Ok(Estimate {
        value: terms.iter().map(|t| t.0).sum(),
        std_error: terms.iter().map(|t| t.1).sum::<f64>().sqrt(),
    })
}

/// Evidence a certificate is computed from.
#[derive(Clone, Copy, Debug)]
pub enum Evidence<'a> {
    State(&'a DensityMatrix),
    /// Count tables matched to bases by label.
    Counts(&'a MeasuredCounts),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    #[serde(rename = "S_value")]
    pub s_value: f64,
    /// Standard error of `S_value` when computed from counts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_std_error: Option<f64>,
    pub bound_mode: BoundMode,
    pub bounds: Vec<f64>,
    #[serde(rename = "T")]
    pub t: f64,
    pub certified_k_lower: usize,
    pub fidelity_lower: f64,
    /// Indices into the basis set.
    pub subset: Vec<usize>,
    pub subset_labels: Vec<String>,
}

struct SubsetOutcome {
    subset: Vec<usize>,
    s: f64,
    var: f64,
    t: f64,
    bounds: Vec<f64>,
    k: usize,
    margin: f64,
    fidelity: f64,
}

fn evaluate_subset(
    subset: Vec<usize>,
    terms: &[(f64, f64)],
    table: &OverlapTable,
    mode: BoundMode,
) -> Result<SubsetOutcome> {
    let sub = table.restrict(&subset);
    let (t, bounds) = match mode {
        BoundMode::Tight => {
            let r = tight_bounds(&sub)?;
            (r.t, r.bounds)
        }
        BoundMode::Loose => {
            let r = loose_bounds_from_table(&sub)?;
            (r.t_bar, r.bounds)
        }
    };
    let s: f64 = subset.iter().map(|&i| terms[i].0).sum();
    let var: f64 = subset.iter().map(|&i| terms[i].1).sum();
    let k = certified_k(s, &bounds);
    let margin = s - bounds[k.max(2) - 2];
    let fidelity = fidelity_lower(s, subset.len(), t);
    Ok(SubsetOutcome {
        subset,
        s,
        var,
        t,
        bounds,
        k,
        margin,
        fidelity,
    })
}

/// `true` when `a` should be preferred over `b`: larger certified `k`, then
/// larger `S - B_k*`, then fewer bases, then lexicographically smaller indices.
fn better(a: &SubsetOutcome, b: &SubsetOutcome) -> bool {
    use std::cmp::Ordering::*;
    match a.k.cmp(&b.k) {
        Greater => return true,
        Less => return false,
        Equal => {}
    }
    match a.margin.total_cmp(&b.margin) {
        Greater => return true,
        Less => return false,
        Equal => {}
    }
    match a.subset.len().cmp(&b.subset.len()) {
        Less => return true,
        Greater => return false,
        Equal => {}
    }
    a.subset < b.subset
}

pub fn certify(evidence: Evidence<'_>, bs: &BasisSet, mode: BoundMode) -> Result<WitnessReport> {
    certify_with(evidence, bs, mode, Exec::default())
}

/// Exhaustive search over every subset of at least two bases. The reported
/// subset is the best one under the tie-break of [`better`]; the fidelity
/// bound is the maximum over all subsets.
pub fn certify_with(
    evidence: Evidence<'_>,
    bs: &BasisSet,
    mode: BoundMode,
    exec: Exec,
) -> Result<WitnessReport> {
    let (indices, terms): (Vec<usize>, Vec<(f64, f64)>) = match evidence {
        Evidence::State(rho) => {
            let t = witness_terms(rho, bs)?;
            (
                (0..bs.len()).collect(),
                t.into_iter().map(|s| (s, 0.0)).collect(),
            )
        }
        Evidence::Counts(counts) => {
            if counts.dim() != bs.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "counts have dimension {}, bases have {}",
                    counts.dim(),
                    bs.dim()
                )));
            }
            let mut idx = Vec::with_capacity(counts.len());
            for label in counts.labels() {
                let z = bs
                    .bases()
                    .iter()
                    .position(|b| b.label() == label)
                    .ok_or_else(|| Error::UnknownBasisLabel(label.clone()))?;
                idx.push(z);
            }
            (idx, empirical_terms(counts)?)
        }
    };
    let n = indices.len();
    if n > MAX_SUBSET_BASES {
        return Err(Error::TooManyBases {
            max: MAX_SUBSET_BASES,
            got: n,
        });
    }
    if n < 2 {
        return Err(Error::TooFewBases { needed: 2, got: n });
    }
    let table = overlap_table(&bs.subset(&indices)?);
    let masks: Vec<u32> = (1u32..(1 << n)).filter(|m| m.count_ones() >= 2).collect();
    let outcomes = exec.map_slice(&masks, |&mask| {
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        evaluate_subset(subset, &terms, &table, mode)
    });
    let outcomes: Vec<SubsetOutcome> = outcomes.into_iter().collect::<Result<_>>()?;
    let fidelity = outcomes.iter().map(|o| o.fidelity).fold(0.0, f64::max);
    let best = outcomes
        .into_iter()
        .reduce(|acc, o| if better(&o, &acc) { o } else { acc })
        .expect("at least one subset");
    let subset: Vec<usize> = best.subset.iter().map(|&i| indices[i]).collect();
    Ok(WitnessReport {
        s_value: best.s,
        s_std_error: matches!(evidence, Evidence::Counts(_)).then(|| best.var.sqrt()),
        bound_mode: mode,
        bounds: best.bounds,
        t: best.t,
        certified_k_lower: best.k,
        fidelity_lower: fidelity,
        subset_labels: subset
            .iter()
            .map(|&z| bs.basis(z).label().to_string())
            .collect(),
        subset,
    })
}

/// `W = sum_z sum_a |e_a><e_a| (x) |e~_a*><e~_a*|`.
pub fn witness_operator(bs: &BasisSet) -> Result<CMatrix> {
    let d = bs.dim();
    if d > MAX_OPERATOR_DIM {
        return Err(Error::DimensionTooLarge {
            dim: d,
            max: MAX_OPERATOR_DIM,
        });
    }
    let mut w = CMatrix::zeros(d * d, d * d);
    for basis in bs.bases() {
        let partner = frame_conjugate(basis, bs.frame())?;
        for a in 0..d {
            let v = kron(
                &basis.matrix().columns(a, 1).into_owned(),
                &partner.matrix().columns(a, 1).into_owned(),
            );
            w += &v * v.adjoint();
        }
    }
    Ok(w)
}

/// Largest eigenvalue of `W - (m - T)|Phi~+><Phi~+| - T 1`; non-positive up to
/// round-off for every valid basis set.
pub fn operator_inequality_check(bs: &BasisSet) -> Result<f64> {
    let d = bs.dim();
    if d > MAX_INEQUALITY_DIM {
        return Err(Error::DimensionTooLarge {
            dim: d,
            max: MAX_INEQUALITY_DIM,
        });
    }
    let t = tight_bounds(&overlap_table(bs))?.t;
    let phi = max_entangled(d, bs.frame())?;
    let m = bs.len() as f64;
    let n = d * d;
    let op = witness_operator(bs)?
        - phi.projector() * num_complex::Complex64::new(m - t, 0.0)
        - CMatrix::identity(n, n) * num_complex::Complex64::new(t, 0.0);
    Ok(*hermitian_eigenvalues(&op)
        .last()
        .expect("non-empty operator"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{complete_mubs, computational, random_basis, three_mubs, PhaseFunction};
    use crate::states::isotropic;

    #[test]
    fn mub_bounds() {
        let bs = complete_mubs(5).unwrap().subset(&[0, 1]).unwrap();
        let r = tight_bounds(&overlap_table(&bs)).unwrap();
        assert!((r.t - 1.0).abs() < 1e-12);
        assert!((r.bounds[0] - 1.2).abs() < 1e-12);
        assert!((r.bounds[3] - 1.8).abs() < 1e-12);
    }

    #[test]
    fn identical_bases_tight() {
        let z = computational(3).unwrap();
        let bs = BasisSet::new(vec![z.clone(), z]).unwrap();
        let r = tight_bounds(&overlap_table(&bs)).unwrap();
        assert!(r.pair_terms.iter().all(|p| (p.g - 2.0).abs() < 1e-15));
        // two ordered pairs, each G = 2
        assert!((r.lambda - 0.5 * (1.0 + (1.0 + 2.0 * 3.0 * 4.0f64).sqrt())).abs() < 1e-12);
        assert_eq!(r.t, 2.0);
    }

    #[test]
    fn quartic_cap_examples() {
        let (l, omega) = quartic_cap(5, 0.1, 0.3).unwrap();
        assert_eq!(l, 2);
        assert!((omega - 0.24).abs() < 1e-12);
        let (l, omega) = quartic_cap(4, 0.25, 0.25).unwrap();
        assert_eq!(l, 4);
        assert!((omega - 0.25).abs() < 1e-15);
        assert!(quartic_cap(5, 0.3, 0.1).is_err());
        assert!(quartic_cap(5, 0.25, 0.3).is_err());
        assert!(quartic_cap(5, 0.0, 0.15).is_err());
    }

    #[test]
    fn loose_mub_collapses() {
        let s = PairSummary {
            c_max: 0.2,
            c_min: 0.2,
        };
        let r = loose_bounds(&[s, s], 5, 2).unwrap();
        assert!(r.pair_terms[0].g_bar.abs() < 1e-12);
        assert!((r.t_bar - 1.0).abs() < 1e-9);
    }

    #[test]
    fn fidelity_cases() {
        assert_eq!(fidelity_lower(3.0, 3, 1.0), 1.0);
        assert_eq!(fidelity_lower(0.5, 3, 1.0), 0.0);
        assert_eq!(fidelity_lower(3.0, 3, 3.0), 0.0);
        let s = crate::states::witness_closed_isotropic(5, 0.2, 6);
        assert!((fidelity_lower(s, 6, 1.0) - 0.808).abs() < 1e-12);
    }

    #[test]
    fn certified_k_convention() {
        let b = bound_vector(5, 6, 1.0);
        assert_eq!(certified_k(6.0, &b), 5);
        assert_eq!(certified_k(0.5, &b), 1);
        assert_eq!(certified_k(b[1] + 1e-6, &b), 3);
        assert_eq!(certified_k(b[1], &b), 2);
    }

    #[test]
    fn witness_examples() {
        let bs = complete_mubs(5).unwrap().subset(&[0, 1, 2]).unwrap();
        let s = witness_value(&isotropic(5, 0.3).unwrap(), &bs).unwrap();
        assert!((s - 2.28).abs() < 1e-9);
        let bs4 = three_mubs(4, 1, &PhaseFunction::zero(4))
            .unwrap()
            .subset(&[0, 1])
            .unwrap();
        let s = witness_value(&DensityMatrix::maximally_mixed(4).unwrap(), &bs4).unwrap();
        assert!((s - 0.5).abs() < 1e-12);
    }

    #[test]
    fn certify_pure_and_mixed() {
        let bs = complete_mubs(5).unwrap();
        let r = certify(
            Evidence::State(&isotropic(5, 0.0).unwrap()),
            &bs,
            BoundMode::Tight,
        )
        .unwrap();
        assert_eq!(r.certified_k_lower, 5);
        assert!((r.fidelity_lower - 1.0).abs() < 1e-9);
        assert_eq!(r.subset.len(), 6);
        let mixed = DensityMatrix::maximally_mixed(5).unwrap();
        let r = certify(Evidence::State(&mixed), &bs, BoundMode::Loose).unwrap();
        assert_eq!(r.certified_k_lower, 1);
        assert!((r.fidelity_lower - 0.04).abs() < 1e-12);
    }

    #[test]
    fn certify_limits() {
        let z = computational(2).unwrap();
        let bs = BasisSet::new(vec![z.clone(); 13]).unwrap();
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(matches!(
            certify(Evidence::State(&rho), &bs, BoundMode::Tight),
            Err(Error::TooManyBases { .. })
        ));
        let one = BasisSet::new(vec![z]).unwrap();
        assert!(matches!(
            certify(Evidence::State(&rho), &one, BoundMode::Tight),
            Err(Error::TooFewBases { .. })
        ));
    }

    #[test]
    fn empirical_examples() {
        let diag = vec![5, 0, 0, 0, 5, 0, 0, 0, 5];
        let c =
            MeasuredCounts::new(3, vec!["a".into(), "b".into()], vec![diag.clone(), diag]).unwrap();
        let e = witness_value_empirical(&c).unwrap();
        assert_eq!((e.value, e.std_error), (2.0, 0.0));
        let uniform = vec![100; 9];
        let c = MeasuredCounts::new(
            3,
            vec!["a".into(), "b".into()],
            vec![uniform.clone(), uniform],
        )
        .unwrap();
        assert!((witness_value_empirical(&c).unwrap().value - 2.0 / 3.0).abs() < 1e-12);
        let c = MeasuredCounts::new(3, vec!["a".into()], vec![vec![0; 9]]).unwrap();
        assert!(matches!(
            witness_value_empirical(&c),
            Err(Error::EmptyCounts(_))
        ));
    }

    #[test]
    fn operator_identities() {
        let bs = complete_mubs(3).unwrap().subset(&[0, 1]).unwrap();
        let w = witness_operator(&bs).unwrap();
        assert!((w.trace().re - 6.0).abs() < 1e-12);
        let rho = isotropic(3, 0.4).unwrap();
        let tr = (&w * rho.matrix()).trace().re;
        assert!((tr - witness_value(&rho, &bs).unwrap()).abs() < 1e-12);
        assert!(operator_inequality_check(&bs).unwrap() <= 1e-10);
        let z = computational(3).unwrap();
        let same = BasisSet::new(vec![z.clone(), z]).unwrap();
        assert!(operator_inequality_check(&same).unwrap() <= 1e-10);
    }

    #[test]
    fn operator_inequality_random() {
        for seed in 0..10 {
            let bases = (0..3)
                .map(|i| random_basis(4, seed * 3 + i).unwrap())
                .collect();
            let bs =
                BasisSet::with_frame(bases, crate::bases::random_unitary(4, 1000 + seed)).unwrap();
            assert!(operator_inequality_check(&bs).unwrap() <= 1e-8);
        }
    }
}
