//! JSON file formats: algebras (`liesc-v1`) and decomposition certificates.
//!
//! Scalars are always written as decimal strings, indices are 1-based, and
//! only brackets `[e_i, e_j]` with `i < j` are stored.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::decomposition::{Case, DecompositionCertificate, ExtractionStep, VerificationReport};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linear::{zero_vector, Subspace, Vector};
use crate::scalar::{Domain, Scalar, DEFAULT_PRIME_CAP};

pub const FORMAT_TAG: &str = "liesc-v1";
pub const CERTIFICATE_TAG: &str = "liesc-certificate-v1";

/// Largest dimension accepted from a file.
pub const MAX_FILE_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DomainSpec {
    Prime { p: u32 },
    Rational,
}

impl From<Domain> for DomainSpec {
    fn from(d: Domain) -> Self {
        match d {
            Domain::Prime(p) => DomainSpec::Prime { p },
            Domain::Rational => DomainSpec::Rational,
        }
    }
}

impl DomainSpec {
    pub fn to_domain(&self, prime_cap: u32) -> Result<Domain> {
        match *self {
            DomainSpec::Prime { p } => {
                let d = Domain::prime(p)?;
                if p > prime_cap {
                    return Err(Error::InvalidDomain(format!("prime {p} exceeds the cap {prime_cap}")));
                }
                Ok(d)
            }
            DomainSpec::Rational => Ok(Domain::Rational),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub k: usize,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format: String,
    pub field: DomainSpec,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    pub brackets: Vec<BracketEntry>,
}

impl AlgebraFile {
    pub fn from_algebra(l: &LieAlgebra) -> AlgebraFile {
        let brackets = l
            .brackets()
            .map(|((i, j), v)| BracketEntry {
                i: i + 1,
                j: j + 1,
                terms: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| Term {
                        k: k + 1,
                        c: c.to_string(),
                    })
                    .collect(),
            })
            .collect();
        AlgebraFile {
            format: FORMAT_TAG.to_string(),
            field: l.domain().into(),
            dim: l.dim(),
            basis_names: l.names().map(|n| n.to_vec()),
            brackets,
        }
    }

    pub fn to_algebra(&self, prime_cap: u32) -> Result<LieAlgebra> {
        if self.format != FORMAT_TAG {
            return Err(Error::Parse(format!(
                "unsupported format {:?}, expected {FORMAT_TAG:?}",
                self.format
            )));
        }
        let domain = self.field.to_domain(prime_cap)?;
        let n = self.dim;
        if n > MAX_FILE_DIM {
            return Err(Error::TooLarge(format!("dimension {n} exceeds {MAX_FILE_DIM}")));
        }
        let in_range = |x: usize, what: &str| {
            if x == 0 || x > n {
                Err(Error::IndexOutOfRange(format!("{what} = {x} outside 1..={n}")))
            } else {
                Ok(x - 1)
            }
        };
        let mut seen = BTreeSet::new();
        let mut entries = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            let (i, j) = (in_range(b.i, "i")?, in_range(b.j, "j")?);
            if i >= j {
                return Err(Error::Parse(format!("bracket ({}, {}) must have i < j", b.i, b.j)));
            }
            if !seen.insert((i, j)) {
                return Err(Error::Parse(format!("bracket ({}, {}) listed twice", b.i, b.j)));
            }
            let mut v = zero_vector(domain, n);
            let mut ks = BTreeSet::new();
            for t in &b.terms {
                let k = in_range(t.k, "k")?;
                if !ks.insert(k) {
                    return Err(Error::Parse(format!(
                        "bracket ({}, {}) lists e{} twice",
                        b.i, b.j, t.k
                    )));
                }
                v[k] = Scalar::parse(domain, &t.c)?;
            }
            entries.push(((i, j), v));
        }
        let l = LieAlgebra::new(domain, n, entries)?;
        match &self.basis_names {
            Some(names) => {
                if names.len() != n {
                    return Err(Error::Parse(format!(
                        "{} basis names for dimension {n}",
                        names.len()
                    )));
                }
                l.with_names(names.clone())
            }
            None => Ok(l),
        }
    }
}

/// Loader settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    pub prime_cap: u32,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            prime_cap: DEFAULT_PRIME_CAP,
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<LieAlgebra> {
    parse_algebra_with(text, LoadOptions::default())
}

pub fn parse_algebra_with(text: &str, opts: LoadOptions) -> Result<LieAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_algebra(opts.prime_cap)
}

pub fn algebra_to_string(l: &LieAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&AlgebraFile::from_algebra(l)).expect("serializable");
    s.push('\n');
    s
}

pub fn load(path: impl AsRef<Path>) -> Result<LieAlgebra> {
    parse_algebra(&std::fs::read_to_string(path)?)
}

pub fn load_with(path: impl AsRef<Path>, opts: LoadOptions) -> Result<LieAlgebra> {
    parse_algebra_with(&std::fs::read_to_string(path)?, opts)
}

pub fn save(l: &LieAlgebra, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, algebra_to_string(l))?;
    Ok(())
}

type Rows = Vec<Vec<String>>;

fn rows_of(s: &Subspace) -> Rows {
    s.basis()
        .iter()
        .map(|v| v.iter().map(|c| c.to_string()).collect())
        .collect()
}

fn subspace_of(domain: Domain, n: usize, rows: &Rows) -> Result<Subspace> {
    let mut vs: Vec<Vector> = Vec::with_capacity(rows.len());
    for r in rows {
        if r.len() != n {
            return Err(Error::MalformedCertificate(format!(
                "row of length {} in a {n}-dimensional algebra",
                r.len()
            )));
        }
        vs.push(r.iter().map(|c| Scalar::parse(domain, c)).collect::<Result<_>>()?);
    }
    Subspace::span(domain, n, vs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFile {
    pub m: Rows,
    pub n: Rows,
    pub factor: Rows,
    pub remainder: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObligationFile {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationFile {
    pub passed: bool,
    pub obligations: Vec<ObligationFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl From<&VerificationReport> for VerificationFile {
    fn from(r: &VerificationReport) -> Self {
        VerificationFile {
            passed: r.passed(),
            obligations: r
                .obligations
                .iter()
                .map(|o| ObligationFile {
                    name: o.name.clone(),
                    pass: o.pass,
                })
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub format: String,
    pub field: DomainSpec,
    pub dim: usize,
    pub case: String,
    pub center_dim: usize,
    pub factors: Vec<Rows>,
    pub trace: Vec<StepFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nested: Option<Box<CertificateFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationFile>,
}

impl CertificateFile {
    pub fn from_certificate(
        l: &LieAlgebra,
        cert: &DecompositionCertificate,
        verification: Option<&VerificationReport>,
    ) -> CertificateFile {
        CertificateFile {
            format: CERTIFICATE_TAG.to_string(),
            field: l.domain().into(),
            dim: l.dim(),
            case: cert.case.as_str().to_string(),
            center_dim: cert.center_dim,
            factors: cert.factors.iter().map(rows_of).collect(),
            trace: cert
                .trace
                .iter()
                .map(|s| StepFile {
                    m: rows_of(&s.m),
                    n: rows_of(&s.n),
                    factor: rows_of(&s.factor),
                    remainder: rows_of(&s.remainder),
                })
                .collect(),
            nested: cert
                .nested
                .as_ref()
                .map(|c| Box::new(CertificateFile::from_certificate(l, c, None))),
            verification: verification.map(VerificationFile::from),
        }
    }

    /// Rebuilds the certificate for `l`; the embedded verification, if any, is ignored.
    pub fn to_certificate(&self, l: &LieAlgebra) -> Result<DecompositionCertificate> {
        if self.format != CERTIFICATE_TAG {
            return Err(Error::MalformedCertificate(format!(
                "unsupported format {:?}",
                self.format
            )));
        }
        let domain = l.domain();
        if self.field != DomainSpec::from(domain) || self.dim != l.dim() {
            return Err(Error::MalformedCertificate(
                "certificate was issued for a different field or dimension".into(),
            ));
        }
        let case = match self.case.as_str() {
            "one" => Case::One,
            "two" => Case::Two,
            other => return Err(Error::MalformedCertificate(format!("unknown case {other:?}"))),
        };
        let n = l.dim();
        let sub = |rows: &Rows| subspace_of(domain, n, rows);
        Ok(DecompositionCertificate {
            case,
            factors: self.factors.iter().map(sub).collect::<Result<_>>()?,
            trace: self
                .trace
                .iter()
                .map(|s| {
                    Ok(ExtractionStep {
                        m: sub(&s.m)?,
                        n: sub(&s.n)?,
                        factor: sub(&s.factor)?,
                        remainder: sub(&s.remainder)?,
                    })
                })
                .collect::<Result<_>>()?,
            center_dim: self.center_dim,
            nested: match &self.nested {
                Some(c) => Some(Box::new(c.to_certificate(l)?)),
                None => None,
            },
        })
    }
}

pub fn certificate_to_string(
    l: &LieAlgebra,
    cert: &DecompositionCertificate,
    verification: Option<&VerificationReport>,
) -> String {
    let file = CertificateFile::from_certificate(l, cert, verification);
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_certificate(l: &LieAlgebra, text: &str) -> Result<DecompositionCertificate> {
    let file: CertificateFile =
        serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    file.to_certificate(l)
}
