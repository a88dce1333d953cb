//! JSON formats for bases, basis sets and density matrices, and a writer
//! that prints every float with 17 significant digits.
//!
//! Complex numbers are `[re, im]` pairs. Basis vectors are listed one per
//! entry of `vectors`; matrices are listed row by row.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::bases::TiltedFamily;
use crate::error::{Error, Result};
use crate::qcore::{make_basis, Basis, BasisSet, CMatrix, CVector, DensityMatrix};
use num_complex::Complex64;

pub type ComplexPair = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisJson {
    pub dim: usize,
    pub label: String,
    pub vectors: Vec<Vec<ComplexPair>>,
    /// Present for tilted families, which need not be orthonormal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orthonormal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisSetJson {
    pub dim: usize,
    pub bases: Vec<BasisJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<Vec<ComplexPair>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrixJson {
    pub d: usize,
    pub matrix: Vec<Vec<ComplexPair>>,
}

fn pair(z: Complex64) -> ComplexPair {
    [z.re, z.im]
}

fn complex(p: &ComplexPair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn rows_of(m: &CMatrix) -> Vec<Vec<ComplexPair>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect())
        .collect()
}

fn matrix_from_rows(rows: &[Vec<ComplexPair>], n: usize, what: &str) -> Result<CMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("{what} must be {n}x{n}")));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| complex(&rows[i][j])))
}

impl BasisJson {
    pub fn from_basis(b: &Basis) -> Self {
        BasisJson {
            dim: b.dim(),
            label: b.label().to_string(),
            vectors: b
                .vectors()
                .iter()
                .map(|v| v.iter().copied().map(pair).collect())
                .collect(),
            orthonormal: None,
        }
    }

    pub fn from_tilted(f: &TiltedFamily) -> Self {
        BasisJson {
            dim: f.vectors.len(),
            label: format!("tilted-{}", f.alpha),
            vectors: f
                .vectors
                .iter()
                .map(|v| v.iter().copied().map(pair).collect())
                .collect(),
            orthonormal: Some(f.orthogonal),
        }
    }

    pub fn to_basis(&self) -> Result<Basis> {
        if self.vectors.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "basis '{}' lists {} vectors for dimension {}",
                self.label,
                self.vectors.len(),
                self.dim
            )));
        }
        let vectors: Vec<CVector> = self
            .vectors
            .iter()
            .map(|v| CVector::from_iterator(v.len(), v.iter().map(complex)))
            .collect();
        make_basis(&vectors, &self.label)
    }
}

impl BasisSetJson {
    pub fn from_set(bs: &BasisSet) -> Self {
        let identity = CMatrix::identity(bs.dim(), bs.dim());
        BasisSetJson {
            dim: bs.dim(),
            bases: bs.bases().iter().map(BasisJson::from_basis).collect(),
            frame: (bs.frame() != &identity).then(|| rows_of(bs.frame())),
        }
    }

    pub fn to_set(&self) -> Result<BasisSet> {
        let bases = self
            .bases
            .iter()
            .map(BasisJson::to_basis)
            .collect::<Result<Vec<_>>>()?;
        if let Some(b) = bases.iter().find(|b| b.dim() != self.dim) {
            return Err(Error::DimensionMismatch(format!(
                "basis '{}' has dimension {}, set declares {}",
                b.label(),
                b.dim(),
                self.dim
            )));
        }
        match &self.frame {
            None => BasisSet::new(bases),
            Some(rows) => BasisSet::with_frame(bases, matrix_from_rows(rows, self.dim, "frame")?),
        }
    }
}

impl DensityMatrixJson {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        DensityMatrixJson {
            d: rho.local_dim(),
            matrix: rows_of(rho.matrix()),
        }
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(
            self.d,
            matrix_from_rows(&self.matrix, self.d * self.d, "density matrix")?,
        )
    }
}

/// Formats a float with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Pretty printer identical to serde_json's except for float formatting.
struct PreciseFormatter<'a>(PrettyFormatter<'a>);

impl Formatter for PreciseFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Pretty JSON with 17-digit floats and a trailing newline.
pub fn to_string_precise<T: Serialize + ?Sized>(
    value: &T,
) -> std::result::Result<String, serde_json::Error> {
    let mut out = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut out, PreciseFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}
