//! Lie algebras given by structure constants, and their standard invariants:
//! central series, centers, centralizers, the Frattini subalgebra and
//! generated subalgebras.
//!
//! Everything is expressed through [`Subspace`]s of the ambient coordinate
//! space, so a subalgebra is handled in the coordinates of the algebra that
//! contains it.

use crate::error::{Error, Result};
use crate::linear::{add_scaled, is_zero_vector, left_kernel, unit_vector, zero_vector, Subspace, Vector};
use crate::scalar::{Domain, Scalar};

/// A finite-dimensional Lie algebra on a fixed basis `e_1..e_n`.
///
/// Only the brackets `[e_i, e_j]` with `i < j` are stored; `[e_i, e_i] = 0`
/// and antisymmetry are structural. The Jacobi identity is checked on
/// construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    domain: Domain,
    dim: usize,
    table: Vec<Vector>,
    names: Option<Vec<String>>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl LieAlgebra {
    /// Builds an algebra from the nonzero brackets `[e_i, e_j]`, `i < j`,
    /// with 0-based indices. Pairs that are absent bracket to zero.
    pub fn new<I>(domain: Domain, dim: usize, brackets: I) -> Result<LieAlgebra>
    where
        I: IntoIterator<Item = ((usize, usize), Vector)>,
    {
        let domain = domain.validate()?;
        let pairs = dim * dim.saturating_sub(1) / 2;
        let mut table = vec![zero_vector(domain, dim); pairs];
        let mut seen = vec![false; pairs];
        for ((i, j), v) in brackets {
            if i >= dim || j >= dim {
                return Err(Error::IndexOutOfRange(format!(
                    "bracket ({}, {}) in an algebra of dimension {dim}",
                    i + 1,
                    j + 1
                )));
            }
            if i >= j {
                return Err(Error::InvalidBracket(format!(
                    "pair ({}, {}) must satisfy i < j",
                    i + 1,
                    j + 1
                )));
            }
            if v.len() != dim {
                return Err(Error::AmbientMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if let Some(x) = v.iter().find(|x| x.domain() != domain) {
                return Err(Error::DomainMismatch(domain, x.domain()));
            }
            let idx = pair_index(dim, i, j);
            if seen[idx] {
                return Err(Error::InvalidBracket(format!(
                    "pair ({}, {}) given twice",
                    i + 1,
                    j + 1
                )));
            }
            seen[idx] = true;
            table[idx] = v;
        }
        let algebra = LieAlgebra {
            domain,
            dim,
            table,
            names: None,
        };
        algebra.check_jacobi()?;
        Ok(algebra)
    }

    /// Attaches display names for the basis vectors.
    pub fn with_names(mut self, names: Vec<String>) -> Result<LieAlgebra> {
        if names.len() != self.dim {
            return Err(Error::AmbientMismatch {
                expected: self.dim,
                found: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero structure constants as `((i, j), [e_i, e_j])`, `i < j`, 0-based.
    pub fn brackets(&self) -> impl Iterator<Item = ((usize, usize), &Vector)> + '_ {
        (0..self.dim)
            .flat_map(move |i| (i + 1..self.dim).map(move |j| (i, j)))
            .map(move |(i, j)| ((i, j), &self.table[pair_index(self.dim, i, j)]))
            .filter(|(_, v)| !is_zero_vector(v))
    }

    /// `[e_i, e_j]` for any `i, j`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.table[pair_index(self.dim, i, j)].clone(),
            std::cmp::Ordering::Greater => self.table[pair_index(self.dim, j, i)]
                .iter()
                .map(|x| -x)
                .collect(),
            std::cmp::Ordering::Equal => zero_vector(self.domain, self.dim),
        }
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket_raw(&self.basis_bracket(i, j), &unit_vector(self.domain, n, k));
                    let b = self.bracket_raw(&self.basis_bracket(j, k), &unit_vector(self.domain, n, i));
                    let c = self.bracket_raw(&self.basis_bracket(k, i), &unit_vector(self.domain, n, j));
                    let sum: Vector = a.iter().zip(&b).zip(&c).map(|((x, y), z)| &(x + y) + z).collect();
                    if !is_zero_vector(&sum) {
                        return Err(Error::JacobiViolation(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(())
    }

    fn check(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::AmbientMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        if let Some(x) = v.iter().find(|x| x.domain() != self.domain) {
            return Err(Error::DomainMismatch(self.domain, x.domain()));
        }
        Ok(())
    }

    fn check_space(&self, s: &Subspace) -> Result<()> {
        if s.domain() != self.domain {
            return Err(Error::DomainMismatch(self.domain, s.domain()));
        }
        if s.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch {
                expected: self.dim,
                found: s.ambient_dim(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.bracket_raw(x, y))
    }

    pub(crate) fn bracket_raw(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim;
        let mut out = zero_vector(self.domain, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if i == j || yj.is_zero() {
                    continue;
                }
                let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
                let v = &self.table[pair_index(n, a, b)];
                if is_zero_vector(v) {
                    continue;
                }
                let mut c = xi * yj;
                if sign {
                    c = -c;
                }
                add_scaled(&mut out, &c, v);
            }
        }
        out
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.domain, self.dim)
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.domain, self.dim)
    }

    /// `span{[u, w] : u in basis(U), w in basis(W)}`.
    pub fn bracket_spaces(&self, u: &Subspace, w: &Subspace) -> Result<Subspace> {
        self.check_space(u)?;
        self.check_space(w)?;
        let mut rows = Vec::new();
        for a in u.basis() {
            for b in w.basis() {
                let c = self.bracket_raw(a, b);
                if !is_zero_vector(&c) {
                    rows.push(c);
                }
            }
        }
        Ok(Subspace::from_rows_unchecked(self.domain, self.dim, rows))
    }

    /// `L^2 = [L, L]`.
    pub fn derived(&self) -> Subspace {
        let full = self.full();
        self.bracket_spaces(&full, &full).expect("same ambient")
    }

    /// `{x in within : [x, s] in modulo for every s in basis(of)}`.
    pub fn relative_centralizer(&self, within: &Subspace, of: &Subspace, modulo: &Subspace) -> Result<Subspace> {
        self.check_space(within)?;
        self.check_space(of)?;
        self.check_space(modulo)?;
        if of.is_zero() || within.is_zero() {
            return Ok(within.clone());
        }
        let rows: Vec<Vector> = within
            .basis()
            .iter()
            .map(|u| {
                of.basis()
                    .iter()
                    .flat_map(|s| modulo.reduce(&self.bracket_raw(u, s)))
                    .collect()
            })
            .collect();
        let width = of.dim() * self.dim;
        let kernel = left_kernel(self.domain, width, &rows);
        Ok(Subspace::from_rows_unchecked(
            self.domain,
            self.dim,
            kernel.iter().map(|c| within.combine(c)).collect(),
        ))
    }

    /// `C_L(S) = {x : [x, s] = 0 for all s in S}`.
    pub fn centralizer(&self, s: &Subspace) -> Result<Subspace> {
        self.relative_centralizer(&self.full(), s, &self.zero_space())
    }

    /// `C_U(S)`, the centralizer of `S` inside the subspace `U`.
    pub fn centralizer_in(&self, within: &Subspace, s: &Subspace) -> Result<Subspace> {
        self.relative_centralizer(within, s, &self.zero_space())
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full()).expect("same ambient")
    }

    /// Center `Z(M) = M ∩ C_L(M)` of a subalgebra `M`.
    pub fn subalgebra_center(&self, m: &Subspace) -> Result<Subspace> {
        if !self.is_subalgebra(m)? {
            return Err(Error::NotASubalgebra);
        }
        self.centralizer_in(m, m)
    }

    /// `L^1 = L`, `L^{i+1} = [L, L^i]`, until the series stabilizes.
    pub fn lower_central_series(&self) -> SeriesReport {
        let full = self.full();
        let mut terms = vec![full.clone()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.is_zero() {
                break;
            }
            let next = self.bracket_spaces(&full, last).expect("same ambient");
            if &next == last {
                break;
            }
            terms.push(next);
        }
        let class = terms.last().filter(|t| t.is_zero()).map(|_| terms.len() - 1);
        SeriesReport {
            kind: SeriesKind::Lower,
            terms,
            class,
        }
    }

    /// `Z_0 = 0`, `Z_{i+1} = {x : [x, L] ⊆ Z_i}`, until the series stabilizes.
    pub fn upper_central_series(&self) -> SeriesReport {
        let full = self.full();
        let mut terms = vec![self.zero_space()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.is_full() {
                break;
            }
            let next = self
                .relative_centralizer(&full, &full, last)
                .expect("same ambient");
            if &next == last {
                break;
            }
            terms.push(next);
        }
        let class = terms.last().filter(|t| t.is_full()).map(|_| terms.len() - 1);
        SeriesReport {
            kind: SeriesKind::Upper,
            terms,
            class,
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().class.is_some()
    }

    pub fn nilpotency_class(&self) -> Option<usize> {
        self.lower_central_series().class
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| is_zero_vector(v))
    }

    pub(crate) fn require_nilpotent(&self) -> Result<()> {
        if self.is_nilpotent() {
            Ok(())
        } else {
            Err(Error::NotNilpotent)
        }
    }

    /// The Frattini subalgebra. For nilpotent algebras it equals `L^2`.
    pub fn frattini(&self) -> Result<Subspace> {
        self.require_nilpotent()?;
        Ok(self.derived())
    }

    /// `[U, U] ⊆ U`.
    pub fn is_subalgebra(&self, u: &Subspace) -> Result<bool> {
        let b = self.bracket_spaces(u, u)?;
        u.contains(&b)
    }

    /// `[L, U] ⊆ U`.
    pub fn is_ideal(&self, u: &Subspace) -> Result<bool> {
        let b = self.bracket_spaces(&self.full(), u)?;
        u.contains(&b)
    }

    /// Smallest subalgebra containing `gens`.
    pub fn generated_subalgebra(&self, gens: &[Vector]) -> Result<Subspace> {
        for g in gens {
            self.check(g)?;
        }
        let mut current = Subspace::from_rows_unchecked(self.domain, self.dim, gens.to_vec());
        // each round either grows the dimension or stops
        for _ in 0..=self.dim {
            let next = current.sum(&self.bracket_spaces(&current, &current)?)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
        Err(Error::InternalAssertionFailed(
            "subalgebra closure did not stabilize".into(),
        ))
    }

    /// Display name of basis vector `i` (0-based).
    pub fn basis_name(&self, i: usize) -> String {
        match &self.names {
            Some(names) => names[i].clone(),
            None => format!("e{}", i + 1),
        }
    }

    /// Renders a vector as a linear combination of named basis vectors.
    pub fn format_element(&self, v: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = self.basis_name(i);
            if c.is_one() {
                parts.push(name);
            } else {
                parts.push(format!("{c}*{name}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    pub fn format_subspace(&self, s: &Subspace) -> String {
        let items: Vec<String> = s.basis().iter().map(|v| self.format_element(v)).collect();
        format!("span{{{}}}", items.join(", "))
    }
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra(dim {} over {}", self.dim, self.domain)?;
        for ((i, j), v) in self.brackets() {
            write!(
                f,
                "; [{}, {}] = {}",
                self.basis_name(i),
                self.basis_name(j),
                self.format_element(v)
            )?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Lower,
    Upper,
}

/// Terms of a central series up to stabilization.
///
/// `class` is the nilpotency class, `None` when the series stabilizes before
/// reaching `0` (lower) or `L` (upper).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub class: Option<usize>,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}
