//! Exact integer arithmetic and quadratic Gauss sums.
//!
//! Every complex exponential is evaluated from a rational phase whose
//! numerator has been reduced exactly modulo its denominator, so the
//! floating-point argument never exceeds `2 pi`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const PRIME_SEARCH_LIMIT: u64 = 1_000_000;

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m > 0` by the extended Euclidean algorithm.
pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    if m <= 0 {
        return None;
    }
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1 || m == 1).then(|| s0.rem_euclid(m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// `n = p^r` with `p` an odd prime and `r >= 1`.
pub fn is_odd_prime_power(n: u64) -> bool {
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    let mut p = 3;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 2;
    }
    if p * p > n {
        return true;
    }
    let mut rest = n;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    rest == 1
}

pub fn smallest_prime_geq(n: u64) -> Result<u64> {
    if !(2..=PRIME_SEARCH_LIMIT).contains(&n) {
        return Err(Error::RangeExceeded(n));
    }
    Ok((n..).find(|&k| is_prime(k)).expect("primes are unbounded"))
}

/// `exp(2 pi i num / den)` with `num` reduced exactly modulo `den`.
pub fn unit_phase(num: i128, den: i128) -> Complex64 {
    assert!(den != 0, "zero denominator");
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    let r = num.rem_euclid(den);
    // Centre the residue so the angle lies in (-pi, pi].
    let centred = if 2 * r > den { r - den } else { r };
    let (s, c) = (2.0 * PI * centred as f64 / den as f64).sin_cos();
    Complex64::new(c, s)
}

/// Table of the `den`-th roots of unity for repeated sums over one modulus.
#[derive(Clone, Debug)]
pub struct RootTable {
    den: i128,
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let den = den as i128;
        RootTable {
            den,
            roots: (0..den).map(|k| unit_phase(k, den)).collect(),
        }
    }

    pub fn get(&self, num: i128) -> Complex64 {
        self.roots[num.rem_euclid(self.den) as usize]
    }

    /// `sum_{n<c} exp(2 pi i (a n^2 + b n) / c)` with `c` the table modulus.
    pub fn gauss_sum(&self, a: i128, b: i128) -> Complex64 {
        let c = self.den;
        (0..c).map(|n| self.get((a * n % c) * n + b * n)).sum()
    }
}

pub fn jacobi_symbol(a: i64, c: i64) -> Result<i8> {
    if c < 1 || c % 2 == 0 {
        return Err(Error::EvenModulus(c));
    }
    let mut a = a.rem_euclid(c);
    let mut n = c;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// `G(a, b, c) = sum_{n=0}^{c-1} exp(2 pi i (a n^2 + b n) / c)` by direct summation.
pub fn gauss_sum_direct(a: i64, b: i64, c: i64) -> Result<Complex64> {
    if c < 1 {
        return Err(Error::InvalidParameter(format!(
            "Gauss sum modulus {c} < 1"
        )));
    }
    let (a, b, c) = (a as i128, b as i128, c as i128);
    Ok((0..c).map(|n| unit_phase(a * n * n + b * n, c)).sum())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussSumResult {
    pub value: Complex64,
    /// Expected modulus `sqrt(c)`.
    pub modulus_magnitude: f64,
    pub closed_form_used: bool,
}

/// Closed form `eps_c sqrt(c) (a/c) exp(-2 pi i psi b^2 / c)` with
/// `4 psi a = 1 (mod c)`.
pub fn gauss_sum_closed(a: i64, b: i64, c: i64) -> Result<GaussSumResult> {
    if c < 1 || c % 2 == 0 {
        return Err(Error::EvenModulus(c));
    }
    if gcd(a as i128, c as i128) != 1 {
        return Err(Error::NotCoprime(a, c));
    }
    let (ci, bi) = (c as i128, b as i128);
    let psi = mod_inverse(4 * a as i128, ci).expect("4a is invertible for odd c coprime to a");
    let eps = if c % 4 == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    };
    let sqrt_c = (c as f64).sqrt();
    let b2 = (bi * bi).rem_euclid(ci);
    let value = eps * sqrt_c * f64::from(jacobi_symbol(a, c)?) * unit_phase(-(psi * b2), ci);
    Ok(GaussSumResult {
        value,
        modulus_magnitude: sqrt_c,
        closed_form_used: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReciprocityCheck {
    /// `S(a, b, c)` by direct summation.
    pub value: Complex64,
    /// `sqrt|c/a| exp(i pi (|ac| - b^2)/(4ac)) S(-c, -b, a)`.
    pub reciprocal: Complex64,
    pub residual: f64,
}

fn half_gauss_direct(a: i128, b: i128, c: i128) -> Complex64 {
    // exp(i pi (a n^2 + b n) / c) = exp(2 pi i (a n^2 + b n) / (2c))
    (0..c.abs())
        .map(|n| unit_phase(a * n * n + b * n, 2 * c))
        .sum()
}

/// `S(a, b, c) = sum_{n=0}^{|c|-1} exp(i pi (a n^2 + b n) / c)` together with
/// the reciprocity identity evaluated on both sides.
pub fn generalized_gauss_sum(a: i64, b: i64, c: i64) -> Result<ReciprocityCheck> {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    if a * c == 0 {
        return Err(Error::ZeroProduct);
    }
    if (a * c + b).rem_euclid(2) != 0 {
        return Err(Error::ParityViolation);
    }
    let value = half_gauss_direct(a, b, c);
    let scale = ((c.abs() as f64) / (a.abs() as f64)).sqrt();
    let prefactor = unit_phase((a * c).abs() - b * b, 8 * a * c);
    let reciprocal = prefactor * scale * half_gauss_direct(-c, -b, a);
    Ok(ReciprocityCheck {
        value,
        reciprocal,
        residual: (value - reciprocal).norm(),
    })
}

/// Checks the modulus `p_r` used by the quadratic mutually unbiased basis:
/// `p_r` is 1 or an odd prime power, coprime to `d`, and smaller than `d`.
pub fn validate_mub_modulus(d: u64, p_r: u64) -> Result<()> {
    if p_r != 1 && !is_odd_prime_power(p_r) {
        return Err(Error::BadModulusParameter(format!(
            "{p_r} is neither 1 nor an odd prime power"
        )));
    }
    if gcd(d as i128, p_r as i128) != 1 {
        return Err(Error::BadModulusParameter(format!("gcd({d}, {p_r}) != 1")));
    }
    if d <= p_r {
        return Err(Error::BadModulusParameter(format!(
            "need d > p_r, got d = {d}, p_r = {p_r}"
        )));
    }
    Ok(())
}

/// `|sum_{j<d} exp(2 pi i ((d - p_r) j^2 / (2d) + k j / d))|`, which equals
/// `sqrt(d)` for every admissible modulus.
pub fn quadratic_mub_sum_magnitude(d: u64, k: i64, p_r: u64) -> Result<f64> {
    validate_mub_modulus(d, p_r)?;
    let (di, ki, q) = (d as i128, k as i128, d as i128 - p_r as i128);
    let table = RootTable::new(2 * d);
    let sum: Complex64 = (0..di).map(|j| table.get(q * j * j + 2 * ki * j)).sum();
    Ok(sum.norm())
}

/// Parity-dependent coprimality used by the quadratic construction:
/// odd `d` needs `gcd(d, (d - p^r)/2) = 1`, even `d` needs
/// `gcd(d - p^r, d/2) = 1`.
pub fn half_difference_coprime(d: u64, p: u64, r: u32) -> bool {
    let Some(pr) = p.checked_pow(r) else {
        return false;
    };
    let diff = d as i128 - pr as i128;
    if d % 2 == 1 {
        gcd(d as i128, diff / 2) == 1
    } else {
        gcd(diff, d as i128 / 2) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_symbol(1, 3).unwrap(), 1);
        assert_eq!(jacobi_symbol(2, 15).unwrap(), 1);
        assert_eq!(jacobi_symbol(3, 9).unwrap(), 0);
        assert_eq!(jacobi_symbol(2, 3).unwrap(), -1);
        assert_eq!(jacobi_symbol(-1, 7).unwrap(), -1);
        assert_eq!(jacobi_symbol(5, 1).unwrap(), 1);
        assert!(matches!(jacobi_symbol(1, 4), Err(Error::EvenModulus(4))));
    }

    #[test]
    fn jacobi_matches_euler_criterion_for_primes() {
        for p in [3i64, 5, 7, 11, 13, 101] {
            for a in 0..p {
                let euler = (0..(p - 1) / 2).fold(1i64, |acc, _| acc * a % p);
                let expected = match euler {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                };
                assert_eq!(jacobi_symbol(a, p).unwrap() as i64, expected, "({a}/{p})");
            }
        }
    }

    #[test]
    fn direct_examples() {
        assert!(close(
            gauss_sum_direct(1, 0, 3).unwrap(),
            Complex64::new(0.0, 3f64.sqrt()),
            1e-12
        ));
        assert!(close(
            gauss_sum_direct(1, 0, 1).unwrap(),
            Complex64::new(1.0, 0.0),
            1e-15
        ));
        assert!((gauss_sum_direct(2, 5, 9).unwrap().norm() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn closed_examples() {
        let g = gauss_sum_closed(1, 0, 3).unwrap();
        assert!(close(g.value, Complex64::new(0.0, 3f64.sqrt()), 1e-12));
        let g = gauss_sum_closed(1, 0, 5).unwrap();
        assert!(close(g.value, Complex64::new(5f64.sqrt(), 0.0), 1e-12));
        let g = gauss_sum_closed(2, 4, 9).unwrap();
        assert!(close(
            g.value,
            gauss_sum_direct(2, 4, 9).unwrap(),
            1e-9 * 3.0
        ));
        assert!(matches!(
            gauss_sum_closed(3, 1, 9),
            Err(Error::NotCoprime(3, 9))
        ));
        assert!(matches!(
            gauss_sum_closed(1, 1, 8),
            Err(Error::EvenModulus(8))
        ));
    }

    #[test]
    fn root_table_agrees_with_direct() {
        let t = RootTable::new(15);
        for b in 0..15 {
            assert!(close(
                t.gauss_sum(2, b),
                gauss_sum_direct(2, b as i64, 15).unwrap(),
                1e-12
            ));
        }
    }

    #[test]
    fn reciprocity_examples() {
        let r = generalized_gauss_sum(2, 0, 1).unwrap();
        assert!(close(r.value, Complex64::new(1.0, 0.0), 1e-15));
        let r = generalized_gauss_sum(1, 1, 1).unwrap();
        assert!(close(r.value, Complex64::new(1.0, 0.0), 1e-15));
        assert!(generalized_gauss_sum(1, 2, 6).unwrap().residual <= 1e-12);
        assert!(matches!(
            generalized_gauss_sum(1, 1, 2),
            Err(Error::ParityViolation)
        ));
        assert!(matches!(
            generalized_gauss_sum(0, 2, 2),
            Err(Error::ZeroProduct)
        ));
    }

    #[test]
    fn quadratic_sum_examples() {
        assert!((quadratic_mub_sum_magnitude(6, 0, 1).unwrap() - 6f64.sqrt()).abs() < 1e-9);
        assert!((quadratic_mub_sum_magnitude(7, 3, 1).unwrap() - 7f64.sqrt()).abs() < 1e-9);
        assert!((quadratic_mub_sum_magnitude(10, -4, 3).unwrap() - 10f64.sqrt()).abs() < 1e-9);
        assert!(matches!(
            quadratic_mub_sum_magnitude(9, 0, 3),
            Err(Error::BadModulusParameter(_))
        ));
    }

    #[test]
    fn modulus_validation() {
        assert!(validate_mub_modulus(4, 3).is_ok());
        assert!(validate_mub_modulus(10, 9).is_ok());
        assert!(validate_mub_modulus(9, 3).is_err());
        assert!(validate_mub_modulus(3, 3).is_err());
        assert!(validate_mub_modulus(20, 15).is_err());
        assert!(validate_mub_modulus(20, 2).is_err());
    }

    #[test]
    fn primes() {
        assert_eq!(smallest_prime_geq(6).unwrap(), 7);
        assert_eq!(smallest_prime_geq(22).unwrap(), 23);
        assert_eq!(smallest_prime_geq(7).unwrap(), 7);
        assert_eq!(smallest_prime_geq(10).unwrap(), 11);
        assert_eq!(smallest_prime_geq(14).unwrap(), 17);
        assert!(matches!(
            smallest_prime_geq(1_000_001),
            Err(Error::RangeExceeded(_))
        ));
        assert!(is_odd_prime_power(27) && is_odd_prime_power(5) && !is_odd_prime_power(15));
        assert!(!is_odd_prime_power(1) && !is_odd_prime_power(8));
    }

    #[test]
    fn coprimality_examples() {
        assert!(half_difference_coprime(9, 5, 1));
        assert!(half_difference_coprime(6, 5, 0));
        assert!(half_difference_coprime(15, 7, 1));
    }

    #[test]
    fn inverse() {
        assert_eq!(mod_inverse(4, 9), Some(7));
        assert_eq!(mod_inverse(3, 9), None);
        assert_eq!(mod_inverse(-4, 9), Some(2));
    }
}
