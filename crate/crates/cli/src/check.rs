//! Built-in consistency suite run by `swcert check`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swcert_core::analysis::welch_check;
use swcert_core::bases::{
    amub_set, complete_mubs, drifted_triple, random_basis_with, random_unitary_with, three_mubs,
    PhaseFunction,
};
use swcert_core::numtheory::{
    gauss_sum_closed, gauss_sum_direct, gcd, quadratic_mub_sum_magnitude, smallest_prime_geq,
    validate_mub_modulus,
};
use swcert_core::qcore::overlap_table;
use swcert_core::witness::operator_inequality_check;
use swcert_core::{BasisSet, CVector};

use crate::CliResult;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn result(name: &'static str, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name,
        passed,
        detail,
    }
}

/// Deterministic basis families used by the operator and Welch checks.
fn families() -> CliResult<Vec<BasisSet>> {
    let mut sets = Vec::new();
    for d in [2, 3, 5, 7] {
        sets.push(complete_mubs(d)?);
    }
    for d in 2..=8usize {
        for p_r in [1u64, 3, 5] {
            if validate_mub_modulus(d as u64, p_r).is_ok() {
                sets.push(three_mubs(d, p_r, &PhaseFunction::zero(d))?);
            }
        }
    }
    for d in 2..=6usize {
        sets.push(amub_set(d, smallest_prime_geq(d as u64)? as f64)?);
    }
    sets.push(amub_set(6, 7.2)?);
    for d in [3, 5] {
        for theta in [0.5, std::f64::consts::PI] {
            sets.push(drifted_triple(d, 0, theta)?);
        }
    }
    Ok(sets)
}

fn operator_check(sets: &[BasisSet], seed: Option<u64>) -> CliResult<CheckResult> {
    let mut worst = f64::NEG_INFINITY;
    let mut count = 0;
    for bs in sets {
        worst = worst.max(operator_inequality_check(bs)?);
        count += 1;
    }
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..30 {
            let d = rng.random_range(2..=5);
            let m = rng.random_range(2..=4);
            let bases = (0..m)
                .map(|_| random_basis_with(d, &mut rng))
                .collect::<Result<Vec<_>, _>>()?;
            let bs = BasisSet::with_frame(bases, random_unitary_with(d, &mut rng))?;
            worst = worst.max(operator_inequality_check(&bs)?);
            count += 1;
        }
    }
    Ok(result(
        "operator inequality",
        worst <= 1e-8,
        format!("{count} basis sets, largest eigenvalue {worst:.2e}"),
    ))
}

fn unbiasedness_check() -> CliResult<CheckResult> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for d in 2..=30usize {
        for p_r in [1u64, 3, 5, 7] {
            if validate_mub_modulus(d as u64, p_r).is_err() {
                continue;
            }
            let table = overlap_table(&three_mubs(d, p_r, &PhaseFunction::zero(d))?);
            for (z, zp) in table.ordered_pairs() {
                let dev = table
                    .pair_block(z, zp)
                    .iter()
                    .map(|x| (x - 1.0 / d as f64).abs())
                    .fold(0.0, f64::max);
                worst = worst.max(dev);
            }
            count += 1;
        }
    }
    Ok(result(
        "three-basis unbiasedness",
        worst <= 1e-9,
        format!("{count} (d, p_r) cases, max deviation {worst:.2e}"),
    ))
}

fn gauss_check() -> CliResult<CheckResult> {
    let (mut worst_mod, mut worst_closed, mut worst_quad) = (0.0f64, 0.0f64, 0.0f64);
    for c in (1..=61i64).step_by(2) {
        let sc = (c as f64).sqrt();
        for a in 1..=c {
            if gcd(a as i128, c as i128) != 1 {
                continue;
            }
            for b in -c..=c {
                let g = gauss_sum_direct(a, b, c)?;
                worst_mod = worst_mod.max((g.norm() - sc).abs());
                worst_closed = worst_closed.max((g - gauss_sum_closed(a, b, c)?.value).norm() / sc);
            }
        }
    }
    for d in 2..=40u64 {
        for p_r in [1u64, 3, 5, 7] {
            if validate_mub_modulus(d, p_r).is_err() {
                continue;
            }
            for k in 0..d as i64 {
                let mag = quadratic_mub_sum_magnitude(d, k, p_r)?;
                worst_quad = worst_quad.max((mag - (d as f64).sqrt()).abs());
            }
        }
    }
    Ok(result(
        "gauss sum magnitudes",
        worst_mod <= 1e-9 && worst_closed <= 1e-9 && worst_quad <= 1e-9,
        format!(
            "modulus {worst_mod:.1e}, closed form {worst_closed:.1e}, quadratic {worst_quad:.1e}"
        ),
    ))
}

fn welch(sets: &[BasisSet]) -> CliResult<CheckResult> {
    let mut worst = f64::INFINITY;
    for bs in sets {
        let vectors: Vec<CVector> = bs.bases().iter().flat_map(|b| b.vectors()).collect();
        for k in [1, 2] {
            worst = worst.min(welch_check(&vectors, k)?);
        }
    }
    Ok(result(
        "welch bound",
        worst >= -1e-9,
        format!("{} families, smallest slack {worst:.2e}", sets.len()),
    ))
}

/// Runs every check; random operator checks are added when a seed is given.
pub fn run_checks(seed: Option<u64>) -> CliResult<Vec<CheckResult>> {
    let sets = families()?;
    Ok(vec![
        operator_check(&sets, seed)?,
        unbiasedness_check()?,
        gauss_check()?,
        welch(&sets)?,
    ])
}
