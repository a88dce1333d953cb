//! Complex linear algebra primitives, bipartite-state utilities, basis
//! validation and overlap tables.
//!
//! Bipartite index convention: `|i>_A (x) |j>_B` sits at index `i * d + j`,
//! which is also the layout produced by [`kron`].

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Tolerance for objects the crate constructs itself.
pub const CONSTRUCTION_TOL: f64 = 1e-10;
/// Tolerance for user-supplied bases and frames.
pub const INPUT_TOL: f64 = 1e-8;
/// Lowest eigenvalue accepted for a density matrix.
pub const PSD_TOL: f64 = 1e-9;

/// `max |M - 1|` entrywise.
pub fn identity_deviation(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((m[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// `max |U^dagger U - 1|` entrywise.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    identity_deviation(&(u.adjoint() * u))
}

pub fn check_unitary(u: &CMatrix, dim: usize, tol: f64) -> Result<()> {
    if u.nrows() != dim || u.ncols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "expected a {dim}x{dim} unitary, got {}x{}",
            u.nrows(),
            u.ncols()
        )));
    }
    let dev = unitarity_deviation(u);
    if dev > tol {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(h.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

pub fn hermiticity_deviation(h: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..h.nrows() {
        for j in i..h.ncols() {
            worst = worst.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    worst
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    amplitudes: CVector,
}

impl Ket {
    pub fn new(amplitudes: CVector) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch("empty ket".into()));
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::InvalidParameter(format!("ket norm {norm} is not 1")));
        }
        Ok(Ket { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Ket) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn projector(&self) -> CMatrix {
        &self.amplitudes * self.amplitudes.adjoint()
    }
}

/// An orthonormal basis stored as the columns of a `d x d` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    label: String,
    matrix: CMatrix,
}

impl Basis {
    /// Wraps a matrix whose columns must be orthonormal within the
    /// construction tolerance.
    pub fn from_columns(matrix: CMatrix, label: impl Into<String>) -> Result<Self> {
        Self::validated(matrix, label.into(), CONSTRUCTION_TOL)
    }

    fn validated(matrix: CMatrix, label: String, tol: f64) -> Result<Self> {
        let d = matrix.nrows();
        if d < 2 || matrix.ncols() != d {
            return Err(Error::DimensionMismatch(format!(
                "basis needs d >= 2 columns of length d, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let dev = identity_deviation(&(matrix.adjoint() * &matrix));
        if dev > tol {
            return Err(Error::NotOrthonormal(format!(
                "basis '{label}': Gram deviation {dev:.3e}"
            )));
        }
        Ok(Basis { label, matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn vector(&self, a: usize) -> CVector {
        self.matrix.column(a).into_owned()
    }

    pub fn vectors(&self) -> Vec<CVector> {
        (0..self.dim()).map(|a| self.vector(a)).collect()
    }

    pub fn kets(&self) -> Vec<Ket> {
        self.vectors()
            .into_iter()
            .map(|amplitudes| Ket { amplitudes })
            .collect()
    }
}

/// Builds a basis from user-supplied vectors. A Gram matrix within `1e-8` of
/// the identity is accepted as given; anything else is rejected rather than
/// repaired.
pub fn make_basis(vectors: &[CVector], label: &str) -> Result<Basis> {
    let d = vectors.len();
    if d < 2 {
        return Err(Error::DimensionMismatch(format!(
            "need at least 2 vectors, got {d}"
        )));
    }
    let mut matrix = CMatrix::zeros(d, d);
    for (a, v) in vectors.iter().enumerate() {
        if v.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "vector {a} has length {}, expected {d}",
                v.len()
            )));
        }
        matrix.set_column(a, v);
    }
    Basis::validated(matrix, label.to_string(), INPUT_TOL)
}

/// Returns the basis with vectors `U conj(e_a)`, conjugation taken in the
/// computational basis.
pub fn frame_conjugate(b: &Basis, u: &CMatrix) -> Result<Basis> {
    check_unitary(u, b.dim(), CONSTRUCTION_TOL)?;
    Ok(Basis {
        label: format!("{}*", b.label),
        matrix: u * b.matrix.conjugate(),
    })
}

/// `(1 (x) U) |Phi+>`.
pub fn max_entangled(d: usize, u: &CMatrix) -> Result<Ket> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d = {d} < 2")));
    }
    check_unitary(u, d, CONSTRUCTION_TOL)?;
    let s = 1.0 / (d as f64).sqrt();
    let amplitudes = CVector::from_fn(d * d, |idx, _| u[(idx % d, idx / d)] * s);
    Ok(Ket { amplitudes })
}

/// `max |(A (x) 1)|Phi+> - (1 (x) A^T)|Phi+>|`.
pub fn bell_symmetry_check(a: &CMatrix, d: usize) -> Result<f64> {
    if a.nrows() != d || a.ncols() != d || d == 0 {
        return Err(Error::DimensionMismatch(format!(
            "expected {d}x{d}, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let s = 1.0 / (d as f64).sqrt();
    let phi = CVector::from_fn(d * d, |idx, _| {
        if idx / d == idx % d {
            Complex64::new(s, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let id = CMatrix::identity(d, d);
    let lhs = kron(a, &id) * &phi;
    let rhs = kron(&id, &a.transpose()) * &phi;
    Ok((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Whether every eigenvalue of `|psi><phi| + |phi><psi|` lies within
/// `+-(|<psi|phi>| + 1)`.
pub fn rank_one_sum_eig_bound_check(psi: &Ket, phi: &Ket) -> Result<bool> {
    if psi.dim() != phi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            psi.dim(),
            phi.dim()
        )));
    }
    let h = &psi.amplitudes * phi.amplitudes.adjoint() + &phi.amplitudes * psi.amplitudes.adjoint();
    let bound = psi.inner(phi).norm() + 1.0;
    Ok(hermitian_eigenvalues(&h)
        .iter()
        .all(|&e| e.abs() <= bound + 1e-10))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Party {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    d: usize,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(d: usize, matrix: CMatrix) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("local dimension {d} < 2")));
        }
        if matrix.nrows() != d * d || matrix.ncols() != d * d {
            return Err(Error::DimensionMismatch(format!(
                "expected {0}x{0}, got {1}x{2}",
                d * d,
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = hermiticity_deviation(&matrix);
        if herm > CONSTRUCTION_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {herm:.3e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > CONSTRUCTION_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let min_ev = hermitian_eigenvalues(&matrix)[0];
        if min_ev < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_ev:.3e}"
            )));
        }
        Ok(DensityMatrix { d, matrix })
    }

    pub fn from_ket(d: usize, ket: &Ket) -> Result<Self> {
        if ket.dim() != d * d {
            return Err(Error::DimensionMismatch(format!(
                "ket length {} != d^2",
                ket.dim()
            )));
        }
        Self::new(d, ket.projector())
    }

    pub fn maximally_mixed(d: usize) -> Result<Self> {
        let n = d * d;
        Self::new(
            d,
            CMatrix::identity(n, n) * Complex64::new(1.0 / n as f64, 0.0),
        )
    }

    /// `(1 - p) |psi><psi| + p 1/d^2`.
    pub fn with_white_noise(d: usize, ket: &Ket, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "noise ratio {p} outside [0, 1]"
            )));
        }
        let n = d * d;
        let m = ket.projector() * Complex64::new(1.0 - p, 0.0)
            + CMatrix::identity(n, n) * Complex64::new(p / n as f64, 0.0);
        Self::new(d, m)
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `<v|rho|v>` for a vector of length `d^2`, real part.
    pub fn expectation(&self, v: &CVector) -> Complex64 {
        v.dotc(&(&self.matrix * v))
    }

    /// `<ij|rho|ij>`.
    pub fn diag(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i * self.d + j, i * self.d + j)].re
    }
}

pub fn reduced_state(rho: &DensityMatrix, party: Party) -> CMatrix {
    let d = rho.d;
    let m = &rho.matrix;
    CMatrix::from_fn(d, d, |r, c| {
        (0..d)
            .map(|t| match party {
                Party::A => m[(r * d + t, c * d + t)],
                Party::B => m[(t * d + r, t * d + c)],
            })
            .sum()
    })
}

/// Partial transpose on party B.
pub fn partial_transpose_b(rho: &DensityMatrix) -> CMatrix {
    let d = rho.d;
    let m = &rho.matrix;
    CMatrix::from_fn(d * d, d * d, |r, c| {
        let (i, j) = (r / d, r % d);
        let (k, l) = (c / d, c % d);
        m[(i * d + l, k * d + j)]
    })
}

pub fn negativity(rho: &DensityMatrix) -> f64 {
    hermitian_eigenvalues(&partial_transpose_b(rho))
        .into_iter()
        .filter(|&e| e < 0.0)
        .map(f64::abs)
        .sum()
}

/// `m >= 1` bases of a common dimension plus the relative frame `U`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisSet {
    dim: usize,
    bases: Vec<Basis>,
    frame: CMatrix,
}

impl BasisSet {
    pub fn new(bases: Vec<Basis>) -> Result<Self> {
        let dim = bases.first().map(Basis::dim).unwrap_or(0);
        Self::with_frame(bases, CMatrix::identity(dim, dim))
    }

    pub fn with_frame(bases: Vec<Basis>, frame: CMatrix) -> Result<Self> {
        let Some(first) = bases.first() else {
            return Err(Error::TooFewBases { needed: 1, got: 0 });
        };
        let dim = first.dim();
        if let Some(bad) = bases.iter().find(|b| b.dim() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "basis '{}' has dimension {}, expected {dim}",
                bad.label(),
                bad.dim()
            )));
        }
        check_unitary(&frame, dim, CONSTRUCTION_TOL)?;
        Ok(BasisSet { dim, bases, frame })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn basis(&self, z: usize) -> &Basis {
        &self.bases[z]
    }

    pub fn frame(&self) -> &CMatrix {
        &self.frame
    }

    pub fn subset(&self, indices: &[usize]) -> Result<BasisSet> {
        let mut bases = Vec::with_capacity(indices.len());
        for &z in indices {
            let b = self.bases.get(z).ok_or(Error::IndexOutOfRange {
                index: z,
                dim: self.len(),
            })?;
            bases.push(b.clone());
        }
        BasisSet::with_frame(bases, self.frame.clone())
    }

    pub fn replace_frame(&self, frame: CMatrix) -> Result<BasisSet> {
        BasisSet::with_frame(self.bases.clone(), frame)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairSummary {
    pub c_max: f64,
    pub c_min: f64,
}

/// All squared overlaps `|<e^z_a|e^z'_a'>|^2` plus per-pair extremes.
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapTable {
    dim: usize,
    m: usize,
    overlaps: Vec<f64>,
}

impl OverlapTable {
    fn offset(&self, z: usize, zp: usize) -> usize {
        (z * self.m + zp) * self.dim * self.dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn overlap(&self, z: usize, zp: usize, a: usize, ap: usize) -> f64 {
        self.overlaps[self.offset(z, zp) + a * self.dim + ap]
    }

    /// Row-major `d x d` block of the pair `(z, z')`, indexed `[a * d + a']`.
    pub fn pair_block(&self, z: usize, zp: usize) -> &[f64] {
        let o = self.offset(z, zp);
        &self.overlaps[o..o + self.dim * self.dim]
    }

    pub fn pair_summary(&self, z: usize, zp: usize) -> PairSummary {
        let block = self.pair_block(z, zp);
        PairSummary {
            c_max: block.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            c_min: block.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }

    /// `sum_{a,a'} |<e^z_a|e^z'_a'>|^4`.
    pub fn quartic_sum(&self, z: usize, zp: usize) -> f64 {
        self.pair_block(z, zp).iter().map(|x| x * x).sum()
    }

    /// Ordered pairs `z != z'` in lexicographic order.
    pub fn ordered_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.m;
        (0..m)
            .flat_map(|z| (0..m).filter(move |&zp| zp != z).map(move |zp| (z, zp)))
            .collect()
    }

    pub fn restrict(&self, indices: &[usize]) -> OverlapTable {
        let m = indices.len();
        let dd = self.dim * self.dim;
        let mut overlaps = Vec::with_capacity(m * m * dd);
        for &z in indices {
            for &zp in indices {
                overlaps.extend_from_slice(self.pair_block(z, zp));
            }
        }
        OverlapTable {
            dim: self.dim,
            m,
            overlaps,
        }
    }
}

pub fn overlap_table(bs: &BasisSet) -> OverlapTable {
    let d = bs.dim();
    let m = bs.len();
    let mut overlaps = Vec::with_capacity(m * m * d * d);
    for bz in bs.bases() {
        for bzp in bs.bases() {
            let p = bz.matrix().adjoint() * bzp.matrix();
            for a in 0..d {
                for ap in 0..d {
                    overlaps.push(p[(a, ap)].norm_sqr().min(1.0));
                }
            }
        }
    }
    OverlapTable {
        dim: d,
        m,
        overlaps,
    }
}

/// Joint outcome counts `n_z(a, b)` for bases measured on both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasuredCounts {
    dim: usize,
    labels: Vec<String>,
    tables: Vec<Vec<u64>>,
}

impl MeasuredCounts {
    /// `tables[z]` is row-major `d x d`, indexed `[a * d + b]`.
    pub fn new(dim: usize, labels: Vec<String>, tables: Vec<Vec<u64>>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter(format!("dimension {dim} < 2")));
        }
        if labels.len() != tables.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} count tables",
                labels.len(),
                tables.len()
            )));
        }
        for (label, t) in labels.iter().zip(&tables) {
            if t.len() != dim * dim {
                return Err(Error::DimensionMismatch(format!(
                    "table '{label}' has {} entries, expected {}",
                    t.len(),
                    dim * dim
                )));
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate basis label '{l}'"
                )));
            }
        }
        Ok(MeasuredCounts {
            dim,
            labels,
            tables,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self, z: usize) -> &[u64] {
        &self.tables[z]
    }

    pub fn count(&self, z: usize, a: usize, b: usize) -> u64 {
        self.tables[z][a * self.dim + b]
    }

    pub fn subset(&self, indices: &[usize]) -> MeasuredCounts {
        MeasuredCounts {
            dim: self.dim,
            labels: indices.iter().map(|&z| self.labels[z].clone()).collect(),
            tables: indices.iter().map(|&z| self.tables[z].clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn hadamard_columns() -> Vec<CVector> {
        let s = 1.0 / 2f64.sqrt();
        vec![
            CVector::from_vec(vec![c(s, 0.0), c(s, 0.0)]),
            CVector::from_vec(vec![c(s, 0.0), c(-s, 0.0)]),
        ]
    }

    #[test]
    fn make_basis_accepts_identity_and_hadamard() {
        let id: Vec<CVector> = (0..3)
            .map(|a| CVector::from_fn(3, |j, _| if j == a { c(1.0, 0.0) } else { c(0.0, 0.0) }))
            .collect();
        assert_eq!(make_basis(&id, "z").unwrap().dim(), 3);
        assert!(make_basis(&hadamard_columns(), "x").is_ok());
    }

    #[test]
    fn make_basis_rejects_repeated_vector() {
        let v = hadamard_columns();
        let err = make_basis(&[v[0].clone(), v[0].clone()], "bad").unwrap_err();
        assert!(matches!(err, Error::NotOrthonormal(_)));
    }

    #[test]
    fn make_basis_rejects_wrong_length() {
        let v = vec![
            CVector::from_element(2, c(std::f64::consts::FRAC_1_SQRT_2, 0.0)),
            CVector::from_element(3, c(0.0, 0.0)),
        ];
        assert!(matches!(
            make_basis(&v, "bad"),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn make_basis_keeps_small_errors_and_rejects_large() {
        let mut v = hadamard_columns();
        v[0] *= c(1.0 + 2e-9, 0.0);
        let b = make_basis(&v, "x").unwrap();
        assert_eq!(b.vector(0), v[0]);
        v[0] *= c(1.0 + 1e-6, 0.0);
        assert!(matches!(make_basis(&v, "x"), Err(Error::NotOrthonormal(_))));
    }

    #[test]
    fn identical_bases_overlap_is_delta() {
        let id = Basis::from_columns(CMatrix::identity(3, 3), "z").unwrap();
        let t = overlap_table(&BasisSet::new(vec![id.clone(), id]).unwrap());
        let s = t.pair_summary(0, 1);
        assert_eq!((s.c_max, s.c_min), (1.0, 0.0));
        assert_eq!(t.overlap(0, 1, 2, 2), 1.0);
        assert_eq!(t.overlap(0, 1, 2, 1), 0.0);
    }

    #[test]
    fn max_entangled_layout() {
        let k = max_entangled(3, &CMatrix::identity(3, 3)).unwrap();
        for (idx, amp) in k.amplitudes().iter().enumerate() {
            let expected = if [0, 4, 8].contains(&idx) {
                1.0 / 3f64.sqrt()
            } else {
                0.0
            };
            assert!((amp - c(expected, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn max_entangled_rejects_non_unitary() {
        let m = CMatrix::identity(2, 2) * c(2.0, 0.0);
        assert!(matches!(max_entangled(2, &m), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn bell_symmetry_diagonal() {
        let a = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0)]));
        assert_eq!(bell_symmetry_check(&a, 2).unwrap(), 0.0);
        assert!(bell_symmetry_check(&a, 3).is_err());
    }

    #[test]
    fn rank_one_sum_extremes() {
        let e0 = Ket::new(CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
        let e1 = Ket::new(CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)])).unwrap();
        assert!(rank_one_sum_eig_bound_check(&e0, &e0).unwrap());
        assert!(rank_one_sum_eig_bound_check(&e0, &e1).unwrap());
    }

    #[test]
    fn bell_state_reduced_and_negativity() {
        let k = max_entangled(2, &CMatrix::identity(2, 2)).unwrap();
        let rho = DensityMatrix::from_ket(2, &k).unwrap();
        let ra = reduced_state(&rho, Party::A);
        let rb = reduced_state(&rho, Party::B);
        assert!(identity_deviation(&(ra * c(2.0, 0.0))) < 1e-15);
        assert!(identity_deviation(&(rb * c(2.0, 0.0))) < 1e-15);
        assert!((negativity(&rho) - 0.5).abs() < 1e-12);
        assert!(negativity(&DensityMatrix::maximally_mixed(4).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn density_matrix_validation() {
        let bad = CMatrix::identity(4, 4);
        assert!(matches!(
            DensityMatrix::new(2, bad),
            Err(Error::InvalidState(_))
        ));
        let mut neg = CMatrix::zeros(4, 4);
        neg[(0, 0)] = c(1.5, 0.0);
        neg[(1, 1)] = c(-0.5, 0.0);
        assert!(matches!(
            DensityMatrix::new(2, neg),
            Err(Error::InvalidState(_))
        ));
        assert!(matches!(
            DensityMatrix::new(2, CMatrix::identity(3, 3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn eigen_residual_within_contract() {
        let h = CMatrix::from_fn(6, 6, |i, j| {
            let re = ((i + 2 * j) as f64).sin() + ((j + 2 * i) as f64).sin();
            let im = if i == j {
                0.0
            } else {
                ((i * j) as f64).cos() * (i as f64 - j as f64).signum()
            };
            c(re, im)
        });
        let eig = SymmetricEigen::new(h.clone());
        let scale = h.norm();
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            let v = eig.eigenvectors.column(k);
            let r = &h * v - v * c(lambda, 0.0);
            assert!(r.norm() <= 1e-9 * scale);
        }
    }

    #[test]
    fn counts_shape_checks() {
        assert!(MeasuredCounts::new(2, vec!["a".into()], vec![vec![1, 0, 0]]).is_err());
        assert!(MeasuredCounts::new(
            2,
            vec!["a".into(), "a".into()],
            vec![vec![1; 4], vec![1; 4]]
        )
        .is_err());
        assert!(MeasuredCounts::new(2, vec!["a".into()], vec![vec![1; 4]]).is_ok());
    }
}
