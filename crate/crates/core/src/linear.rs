//! Exact linear algebra over a [`Domain`]: matrices, canonical subspaces and
//! the subspace lattice.
//!
//! Vectors are coordinate rows (`Vec<Scalar>`) over a fixed basis. A
//! [`Subspace`] stores its basis in reduced row echelon form with leading
//! coefficient 1, so two subspaces are equal exactly when their stored bases
//! are equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Domain, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(domain: Domain, n: usize) -> Vector {
    vec![Scalar::zero(domain); n]
}

/// The `i`th standard basis vector of length `n`.
pub fn unit_vector(domain: Domain, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(domain, n);
    v[i] = Scalar::one(domain);
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * v`
pub(crate) fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

pub(crate) fn scale(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

fn check_vector(domain: Domain, n: usize, v: &[Scalar]) -> Result<()> {
    if v.len() != n {
        return Err(Error::AmbientMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if let Some(x) = v.iter().find(|x| x.domain() != domain) {
        return Err(Error::DomainMismatch(domain, x.domain()));
    }
    Ok(())
}

/// A dense matrix whose entries all live in one domain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    domain: Domain,
    cols: usize,
    rows: Vec<Vector>,
}

impl Matrix {
    pub fn new(domain: Domain, cols: usize, rows: Vec<Vector>) -> Result<Matrix> {
        for r in &rows {
            check_vector(domain, cols, r)?;
        }
        Ok(Matrix { domain, cols, rows })
    }

    pub fn zero(domain: Domain, rows: usize, cols: usize) -> Matrix {
        Matrix {
            domain,
            cols,
            rows: vec![zero_vector(domain, cols); rows],
        }
    }

    pub fn identity(domain: Domain, n: usize) -> Matrix {
        Matrix {
            domain,
            cols: n,
            rows: (0..n).map(|i| unit_vector(domain, n, i)).collect(),
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vector> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.rows[r][c]
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols)
            .map(|c| self.rows.iter().map(|r| r[c].clone()).collect())
            .collect();
        Matrix {
            domain: self.domain,
            cols: self.rows.len(),
            rows,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(self.domain, other.domain));
        }
        if self.cols != other.nrows() {
            return Err(Error::AmbientMismatch {
                expected: self.cols,
                found: other.nrows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = zero_vector(self.domain, other.cols);
                for (c, row) in r.iter().zip(&other.rows) {
                    add_scaled(&mut out, c, row);
                }
                out
            })
            .collect();
        Ok(Matrix {
            domain: self.domain,
            cols: other.cols,
            rows,
        })
    }

    /// `v * self` for a row vector `v`.
    pub fn apply_row(&self, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.domain, self.cols);
        for (c, row) in v.iter().zip(&self.rows) {
            add_scaled(&mut out, c, row);
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self.cols, self.rows.clone()).1.len()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix over {} ({}x{})", self.domain, self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {}", format_vector(r))?;
        }
        Ok(())
    }
}

pub fn format_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Gauss-Jordan elimination. Returns the nonzero rows of the reduced row
/// echelon form and their pivot columns.
pub(crate) fn rref(cols: usize, mut rows: Vec<Vector>) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].inverse().expect("pivot is nonzero");
        if !inv.is_one() {
            let scaled = scale(&inv, &rows[r]);
            rows[r] = scaled;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = -&row[c];
                add_scaled(row, &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{c : sum_i c_i * rows_i = 0}`, as vectors of length `rows.len()`.
pub(crate) fn left_kernel(domain: Domain, width: usize, rows: &[Vector]) -> Vec<Vector> {
    let m = rows.len();
    let augmented: Vec<Vector> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend(unit_vector(domain, m, i));
            row
        })
        .collect();
    let (reduced, _) = rref(width + m, augmented);
    reduced
        .into_iter()
        .filter(|r| is_zero_vector(&r[..width]))
        .map(|r| r[width..].to_vec())
        .collect()
}

/// A subspace of `domain^n` held in canonical reduced row echelon form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    domain: Domain,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(domain: Domain, ambient: usize) -> Subspace {
        Subspace {
            domain,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(domain: Domain, ambient: usize) -> Subspace {
        Subspace {
            domain,
            ambient,
            basis: Matrix::identity(domain, ambient).into_rows(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `vectors`, canonicalized.
    pub fn canonicalize(vectors: &Matrix) -> Subspace {
        Subspace::from_rows_unchecked(vectors.domain, vectors.cols, vectors.rows.clone())
    }

    /// Span of the given vectors; validates widths and domains.
    pub fn span<I>(domain: Domain, ambient: usize, vectors: I) -> Result<Subspace>
    where
        I: IntoIterator<Item = Vector>,
    {
        let rows: Vec<Vector> = vectors.into_iter().collect();
        for r in &rows {
            check_vector(domain, ambient, r)?;
        }
        Ok(Subspace::from_rows_unchecked(domain, ambient, rows))
    }

    pub(crate) fn from_rows_unchecked(domain: Domain, ambient: usize, rows: Vec<Vector>) -> Subspace {
        let (basis, pivots) = rref(ambient, rows);
        Subspace {
            domain,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            domain: self.domain,
            cols: self.ambient,
            rows: self.basis.clone(),
        }
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(self.domain, other.domain));
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        check_vector(self.domain, self.ambient, v)
    }

    /// Smallest subspace containing both.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_full() {
            return Ok(other.clone());
        }
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subspace::from_rows_unchecked(self.domain, self.ambient, rows))
    }

    /// Largest subspace contained in both, via the left kernel of the stacked bases.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        let stacked: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        let k = self.dim();
        let rows = left_kernel(self.domain, self.ambient, &stacked)
            .into_iter()
            .map(|c| self.combine(&c[..k]))
            .collect();
        Ok(Subspace::from_rows_unchecked(self.domain, self.ambient, rows))
    }

    /// Canonical representative of `v` modulo this subspace: zero in every
    /// pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if !out[c].is_zero() {
                let factor = -&out[c];
                add_scaled(&mut out, &factor, row);
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool> {
        self.check_vector(v)?;
        Ok(is_zero_vector(&self.reduce(v)))
    }

    /// Subspace inclusion `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(other.basis.iter().all(|v| is_zero_vector(&self.reduce(v))))
    }

    /// Coefficients of `v` in the canonical basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Vector> {
        if !self.contains_vector(v)? {
            return Err(Error::NotContained);
        }
        Ok(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    /// `sum_i coeffs_i * basis_i`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.domain, self.ambient);
        for (c, row) in coeffs.iter().zip(&self.basis) {
            add_scaled(&mut out, c, row);
        }
        out
    }

    /// Vectors of `outer` extending a basis of `self` to a basis of `outer`,
    /// chosen greedily from the canonical basis of `outer`.
    pub fn complement_basis(&self, outer: &Subspace) -> Result<Vec<Vector>> {
        if !outer.contains(self)? {
            return Err(Error::NotContained);
        }
        let mut acc = self.clone();
        let mut out = Vec::new();
        for v in &outer.basis {
            if !is_zero_vector(&acc.reduce(v)) {
                out.push(v.clone());
                let mut rows = acc.basis.clone();
                rows.push(v.clone());
                acc = Subspace::from_rows_unchecked(self.domain, self.ambient, rows);
            }
        }
        Ok(out)
    }
}

/// `v ∈ U`.
pub fn member(v: &[Scalar], space: &Subspace) -> Result<bool> {
    space.contains_vector(v)
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|r| format_vector(r)).collect();
        write!(f, "span{{{}}} <= {}^{}", rows.join(", "), self.domain, self.ambient)
    }
}
