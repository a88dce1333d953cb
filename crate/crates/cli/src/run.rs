//! Command execution.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use swcert_core::analysis::{
    scan_cmin_bound, scan_fig1, scan_fig_a1, scan_levy, scan_thermal, ScanTable,
};
use swcert_core::baseline::{baseline_fidelity_bound, BaselineReport};
use swcert_core::bases::{
    amub_set, complete_mubs, computational, drifted_triple, fourier, ivonovic_quadratic,
    random_basis_with, three_mubs, tilted_bases, PhaseFunction,
};
use swcert_core::json::{BasisJson, BasisSetJson, DensityMatrixJson};
use swcert_core::numtheory::smallest_prime_geq;
use swcert_core::states::{isotropic, purified_thermal};
use swcert_core::witness::{
    certify, BoundMode, Evidence as Source, WitnessReport, MAX_SUBSET_BASES,
};
use swcert_core::{BasisSet, DensityMatrix, Exec};

use crate::args::{BasesFamily, BasesSpec, Command, Evidence, RunConfig, StateFamily, StateSpec};
use crate::counts::load_counts;
use crate::output::{csv_text, emit, emit_json, read_json};
use crate::params::ScanSpec;
use crate::{check, CliError, CliResult};

/// Side-by-side output of `compare`.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct Comparison {
    pub baseline: BaselineReport,
    pub witness: WitnessReport,
}

pub fn load_state(path: &std::path::Path) -> CliResult<DensityMatrix> {
    Ok(read_json::<DensityMatrixJson>(path)?.to_state()?)
}

pub fn load_bases(path: &std::path::Path) -> CliResult<BasisSet> {
    Ok(read_json::<BasisSetJson>(path)?.to_set()?)
}

pub fn run(cfg: &RunConfig) -> CliResult<()> {
    let out = cfg.output_path.as_ref();
    match &cfg.command {
        Command::Certify {
            evidence,
            bases,
            mode,
        } => {
            let bs = load_bases(bases)?;
            let report = match evidence {
                Evidence::State(p) => {
                    let rho = load_state(p)?;
                    certify(Source::State(&rho), &bs, *mode)?
                }
                Evidence::Counts(p) => {
                    let counts = load_counts(p)?;
                    certify(Source::Counts(&counts), &bs, *mode)?
                }
            };
            emit_json(&report, out)
        }
        Command::GenBases(spec) => emit_json(&generate_bases(spec, cfg.seed)?, out),
        Command::GenState(spec) => {
            emit_json(&DensityMatrixJson::from_state(&generate_state(spec)?), out)
        }
        Command::Scan(spec) => emit(&csv_text(&run_scan(spec, cfg.seed)?)?, out),
        Command::Compare { state, m, bases } => {
            let rho = load_state(state)?;
            let bs = match bases {
                Some(p) => load_bases(p)?,
                None => default_compare_bases(rho.local_dim(), *m)?,
            };
            let comparison = Comparison {
                baseline: baseline_fidelity_bound(&rho, *m)?,
                witness: certify(Source::State(&rho), &bs, BoundMode::Tight)?,
            };
            emit_json(&comparison, out)
        }
        Command::Check => {
            let results = check::run_checks(cfg.seed)?;
            let mut text = String::new();
            for r in &results {
                text.push_str(&format!(
                    "{} {}: {}\n",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                ));
            }
            emit(&text, None)?;
            match results.iter().filter(|r| !r.passed).count() {
                0 => Ok(()),
                n => Err(CliError::CheckFailed(n)),
            }
        }
    }
}

/// The first `M + 1` bases of a complete MUB set when `d` is 2 or an odd
/// prime, otherwise the three-basis construction with modulus 1.
pub fn default_compare_bases(d: usize, m: usize) -> CliResult<BasisSet> {
    let full = match complete_mubs(d) {
        Ok(bs) => bs,
        Err(_) => three_mubs(d, 1, &PhaseFunction::zero(d))?,
    };
    let n = (m + 1).clamp(2, full.len().min(MAX_SUBSET_BASES));
    Ok(full.subset(&(0..n).collect::<Vec<_>>())?)
}

pub fn generate_bases(spec: &BasesSpec, seed: Option<u64>) -> CliResult<BasisSetJson> {
    let d = spec.dim;
    let set = match spec.family {
        BasesFamily::ThreeMubs => {
            let pr = spec
                .pr
                .ok_or_else(|| CliError::MissingRequired("--pr".into()))?;
            three_mubs(d, pr, &PhaseFunction::zero(d))?
        }
        BasesFamily::Amub => {
            let p_eff = match spec.p_eff {
                Some(p) => p,
                None => smallest_prime_geq(d as u64)? as f64,
            };
            amub_set(d, p_eff)?
        }
        BasesFamily::Random => {
            let seed = seed.ok_or_else(|| CliError::MissingRequired("--seed".into()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bases = (0..spec.count.unwrap_or(2))
                .map(|i| Ok(random_basis_with(d, &mut rng)?.with_label(format!("random-{i}"))))
                .collect::<CliResult<Vec<_>>>()?;
            BasisSet::new(bases)?
        }
        BasesFamily::Ivonovic => {
            if spec.theta == 0.0 && spec.alpha == 0 {
                BasisSet::new(vec![
                    computational(d)?,
                    fourier(d, &PhaseFunction::zero(d))?,
                    ivonovic_quadratic(d)?,
                ])?
            } else {
                drifted_triple(d, spec.alpha, spec.theta)?
            }
        }
        BasesFamily::Tilted => {
            let lambda = spec
                .lambda
                .clone()
                .unwrap_or_else(|| vec![1.0 / (d as f64).sqrt(); d]);
            let families = tilted_bases(&lambda, spec.count.unwrap_or(d))?;
            let mut bases = vec![BasisJson::from_basis(&computational(d)?)];
            bases.extend(families.iter().map(BasisJson::from_tilted));
            return Ok(BasisSetJson {
                dim: d,
                bases,
                frame: None,
            });
        }
    };
    Ok(BasisSetJson::from_set(&set))
}

pub fn generate_state(spec: &StateSpec) -> CliResult<DensityMatrix> {
    Ok(match spec.family {
        StateFamily::Isotropic => isotropic(spec.dim, spec.p)?,
        StateFamily::Thermal => purified_thermal(spec.dim, spec.beta, spec.p)?,
    })
}

pub fn run_scan(spec: &ScanSpec, seed: Option<u64>) -> CliResult<ScanTable> {
    let exec = Exec::default();
    Ok(match spec {
        ScanSpec::Fig1 { dim, ms, ks, grid } => scan_fig1(*dim, ms, ks, grid, exec)?,
        ScanSpec::FigA1 { dims, m, p } => scan_fig_a1(dims, *m, *p, exec)?,
        ScanSpec::FigA3 { dim, beta, grid } => scan_thermal(*dim, grid, *beta, 0.0, exec)?,
        ScanSpec::FigA4 { dim, theta, grid } => scan_thermal(*dim, grid, 0.0, *theta, exec)?,
        ScanSpec::CminBound { dims } => scan_cmin_bound(dims),
        ScanSpec::Levy { dim, trials, grid } => scan_levy(*dim, grid, *trials, seed, exec)?,
    })
}
