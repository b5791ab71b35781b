//! Algebra files: JSON with fields `dim`, `basis`, `table`, `unit`,
//! `derivations` and `builtin`.

use std::fmt;
use std::fs;
use std::path::Path;

use diffpi_core::algebra::{builtin, Algebra, Derivation, LAlgebra};
use diffpi_core::exact::{parse_scalar, Matrix, Scalar};
use serde::Deserialize;
use sha2::{Digest, Sha256};

/// A coefficient as written in the file: `"p/q"` or a bare integer.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

impl Coefficient {
    fn value(&self) -> Option<Scalar> {
        match self {
            Coefficient::Int(v) => Some(Scalar::from_integer((*v).into())),
            Coefficient::Text(s) => parse_scalar(s),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Int(v) => write!(f, "{v}"),
            Coefficient::Text(s) => write!(f, "{s:?}"),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct DerivationEntry {
    pub name: String,
    /// `matrix[i][j]` is the coefficient of `b_i` in `δ(b_j)`.
    pub matrix: Vec<Vec<Coefficient>>,
}

/// `(i, j, [(k, c), …])`: `b_i · b_j = Σ c b_k`.
pub type TableEntry = (usize, usize, Vec<(usize, Coefficient)>);

/// The on-disk form. Indices are 0-based.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub basis: Vec<String>,
    #[serde(default)]
    pub table: Vec<TableEntry>,
    #[serde(default)]
    pub unit: Option<Vec<Coefficient>>,
    #[serde(default)]
    pub derivations: Vec<DerivationEntry>,
    #[serde(default)]
    pub builtin: Option<String>,
}

/// Problems found while turning a file into an algebra.
#[derive(Debug)]
pub enum LoadError {
    Io(String),
    /// Malformed JSON or a field of the wrong shape.
    Parse(String),
    /// Well-formed input describing something invalid.
    Invalid(diffpi_core::Error),
    Coefficient(String),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(m) | LoadError::Parse(m) => f.write_str(m),
            LoadError::Invalid(e) => write!(f, "{e}"),
            LoadError::Coefficient(m) => write!(f, "bad coefficient: {m}"),
        }
    }
}

/// A loaded input: the raw algebra, derivations that are not yet checked,
/// and the digest of the source bytes.
pub struct Loaded {
    pub algebra: Algebra,
    pub derivations: Vec<(String, Derivation)>,
    pub unit: Option<Vec<Scalar>>,
    pub digest_source: Vec<u8>,
}

impl Loaded {
    /// Attaches the derivations, checking the Leibniz rule and
    /// associativity.
    pub fn l_algebra(&self) -> Result<LAlgebra, diffpi_core::Error> {
        if let Some((i, j, k)) = self.algebra.associativity_witness() {
            return Err(diffpi_core::Error::NotAssociative(i, j, k));
        }
        LAlgebra::new(self.algebra.clone(), self.derivations.clone())
    }
}

/// Reads `builtin:NAME` or a JSON file.
pub fn load(source: &str) -> Result<Loaded, LoadError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return from_builtin(name, source.as_bytes().to_vec());
    }
    let bytes = fs::read(Path::new(source)).map_err(|e| LoadError::Io(format!("{source}: {e}")))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| LoadError::Parse(format!("{source}: not UTF-8")))?;
    let file: AlgebraFile = serde_json::from_str(&text).map_err(|e| {
        LoadError::Parse(format!(
            "{source}:{}:{}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    from_file(&file, bytes)
}

fn from_builtin(name: &str, digest_source: Vec<u8>) -> Result<Loaded, LoadError> {
    let l = builtin(name).map_err(LoadError::Invalid)?;
    Ok(Loaded {
        algebra: l.algebra,
        derivations: l.action.generators().to_vec(),
        unit: None,
        digest_source,
    })
}

fn scalar(c: &Coefficient, at: &str) -> Result<Scalar, LoadError> {
    c.value()
        .ok_or_else(|| LoadError::Coefficient(format!("{c} in {at}")))
}

pub fn from_file(file: &AlgebraFile, digest_source: Vec<u8>) -> Result<Loaded, LoadError> {
    if let Some(name) = &file.builtin {
        return from_builtin(name, digest_source);
    }
    let dim = file.dim.unwrap_or(file.basis.len());
    let labels = if file.basis.is_empty() {
        (1..=dim).map(|i| format!("b{i}")).collect()
    } else {
        file.basis.clone()
    };
    if labels.len() != dim {
        return Err(LoadError::Invalid(diffpi_core::Error::DimensionMismatch {
            expected: dim,
            found: labels.len(),
        }));
    }
    let mut products = Vec::new();
    for (i, j, terms) in &file.table {
        let mut v = Vec::new();
        for (k, c) in terms {
            v.push((*k, scalar(c, &format!("table entry ({i}, {j})"))?));
        }
        products.push((*i, *j, v));
    }
    let algebra = Algebra::new(labels, products).map_err(LoadError::Invalid)?;
    let mut derivations = Vec::new();
    for d in &file.derivations {
        if d.matrix.len() != dim || d.matrix.iter().any(|r| r.len() != dim) {
            return Err(LoadError::Invalid(diffpi_core::Error::DimensionMismatch {
                expected: dim,
                found: d.matrix.iter().map(Vec::len).find(|&l| l != dim).unwrap_or(d.matrix.len()),
            }));
        }
        let mut m = Matrix::zeros(dim, dim);
        for (i, row) in d.matrix.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                m.set(i, j, scalar(c, &format!("derivation {}", d.name))?);
            }
        }
        derivations.push((d.name.clone(), Derivation::new(m)));
    }
    let unit = match &file.unit {
        None => None,
        Some(u) if u.len() != dim => {
            return Err(LoadError::Invalid(diffpi_core::Error::DimensionMismatch {
                expected: dim,
                found: u.len(),
            }))
        }
        Some(u) => Some(
            u.iter()
                .map(|c| scalar(c, "unit"))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    Ok(Loaded {
        algebra,
        derivations,
        unit,
        digest_source,
    })
}

/// Hex SHA-256 over the given chunks, each prefixed by its length.
pub fn digest(chunks: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for c in chunks {
        h.update((c.len() as u64).to_le_bytes());
        h.update(c);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
