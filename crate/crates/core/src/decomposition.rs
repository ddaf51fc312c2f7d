//! Central-product decomposition of Frattinian nilpotent Lie algebras.
//!
//! [`decompose`] repeatedly splits off a nonabelian ideal `E_k = Z(M) + Z(N)`
//! of dimension `2 + dim Z(L)` and continues in its centralizer. When the
//! remainder collapses to the center the result is a central product of the
//! extracted factors (case one); otherwise the remainder is covered by a
//! minimal supplement `F` of the center and `L = E + F` with
//! `E = Z(L) + E_1 + .. + E_n` (case two).
//!
//! Every identity the construction relies on is re-checked at run time, and
//! the final certificate is replayed through [`verify_certificate`] before it
//! is returned. [`verify_certificate`] looks only at the algebra and the factor
//! subspaces, never at the trace.

use crate::error::{Error, Result};
use crate::frattinian::{is_frattinian_in, minimal_supplement_in};
use crate::lie::LieAlgebra;
use crate::linear::Subspace;
use crate::maximal::enumerate_maximal_in;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    One,
    Two,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::One => "one",
            Case::Two => "two",
        }
    }
}

/// One extraction: maximal subalgebras `M`, `N` of the current algebra, the
/// factor `E = Z(M) + Z(N)` and the remainder `C(E) = M ∩ N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionStep {
    pub m: Subspace,
    pub n: Subspace,
    pub factor: Subspace,
    pub remainder: Subspace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub case: Case,
    /// Case one: the factors `E_i`. Case two: exactly `[E, F]`.
    pub factors: Vec<Subspace>,
    pub trace: Vec<ExtractionStep>,
    pub center_dim: usize,
    /// Case two with `E != Z(L)`: a case-one certificate for `E`.
    pub nested: Option<Box<DecompositionCertificate>>,
}

pub fn decompose(l: &LieAlgebra) -> Result<DecompositionCertificate> {
    decompose_in(l, &l.full())
}

fn assertion(msg: impl Into<String>) -> Error {
    Error::InternalAssertionFailed(msg.into())
}

/// Decomposes the subalgebra `U` of `L`; all subspaces stay in the
/// coordinates of `L`.
pub fn decompose_in(l: &LieAlgebra, u: &Subspace) -> Result<DecompositionCertificate> {
    if !l.domain().is_finite() {
        return Err(Error::InfiniteDomain);
    }
    if !l.is_subalgebra(u)? {
        return Err(Error::NotASubalgebra);
    }
    l.require_nilpotent()?;
    if l.bracket_spaces(u, u)?.is_zero() {
        return Err(Error::AbelianInput);
    }
    if !is_frattinian_in(l, u)?.is_frattinian {
        return Err(Error::NotFrattinian);
    }

    let z = l.centralizer_in(u, u)?;
    let bound = (u.dim() - z.dim()) / 2;
    let mut current = u.clone();
    let mut trace: Vec<ExtractionStep> = Vec::new();

    while current != z {
        let Some(step) = extract(l, u, &current, &z)? else {
            break;
        };
        if trace.len() == bound {
            return Err(assertion(format!("more than {bound} extraction steps")));
        }
        current = step.remainder.clone();
        trace.push(step);
    }

    let cert = if current == z {
        DecompositionCertificate {
            case: Case::One,
            factors: trace.iter().map(|s| s.factor.clone()).collect(),
            trace,
            center_dim: z.dim(),
            nested: None,
        }
    } else {
        let supplement = minimal_supplement_in(l, &current)?;
        let f = supplement.supplement;
        let mut e = z.clone();
        for s in &trace {
            e = e.sum(&s.factor)?;
        }
        if l.centralizer_in(u, &f)? != e {
            return Err(assertion("C(F) differs from the sum of the extracted factors"));
        }
        let nested = if e == z {
            None
        } else {
            let inner = decompose_in(l, &e)?;
            if inner.case != Case::One {
                return Err(assertion("the centralizer of F does not split as in case one"));
            }
            Some(Box::new(inner))
        };
        DecompositionCertificate {
            case: Case::Two,
            factors: vec![e, f],
            trace,
            center_dim: z.dim(),
            nested,
        }
    };

    let report = verify_certificate_in(l, u, &cert)?;
    if !report.passed() {
        let failed: Vec<&str> = report.failures().map(|o| o.name.as_str()).collect();
        let mut msg = format!("certificate obligations failed: {}", failed.join("; "));
        for n in &report.notes {
            msg.push_str(&format!(" ({n})"));
        }
        return Err(assertion(msg));
    }
    Ok(cert)
}

/// One extraction step inside `current`, or `None` when no maximal
/// subalgebra `M ⊇ Z` has `Z(M) ⊄ Z + current^2`.
fn extract(
    l: &LieAlgebra,
    top: &Subspace,
    current: &Subspace,
    z: &Subspace,
) -> Result<Option<ExtractionStep>> {
    let maximal = enumerate_maximal_in(l, current)?;
    let centers: Vec<Subspace> = maximal
        .items
        .iter()
        .map(|m| l.centralizer_in(m, m))
        .collect::<Result<_>>()?;
    let target = z.sum(&l.bracket_spaces(current, current)?)?;

    let mut chosen = None;
    for (i, m) in maximal.items.iter().enumerate() {
        if m.contains(z)? && !target.contains(&centers[i])? {
            chosen = Some(i);
            break;
        }
    }
    let Some(i) = chosen else {
        return Ok(None);
    };
    let (m, z_m) = (&maximal.items[i], &centers[i]);

    let mut partner = None;
    for (j, n) in maximal.items.iter().enumerate() {
        let z_n = &centers[j];
        if n.contains(z)?
            && !n.contains(z_m)?
            && &z_m.intersect(n)? == z
            && &z_n.intersect(m)? == z
        {
            partner = Some(j);
            break;
        }
    }
    let j = partner.ok_or_else(|| {
        assertion(format!(
            "no maximal N with Z(N) ∩ M = Z(M) ∩ N = Z(L) for M = {m:?}"
        ))
    })?;
    let (n, z_n) = (&maximal.items[j], &centers[j]);

    let factor = z_m.sum(z_n)?;
    if factor.dim() != z.dim() + 2 {
        return Err(assertion(format!(
            "extracted factor has dimension {}, expected {}",
            factor.dim(),
            z.dim() + 2
        )));
    }
    if l.bracket_spaces(&factor, &factor)?.is_zero() {
        return Err(assertion("extracted factor is abelian"));
    }
    if &l.centralizer_in(&factor, &factor)? != z {
        return Err(assertion("center of the extracted factor differs from Z(L)"));
    }
    if !ideal_in(l, top, &factor)? {
        return Err(assertion("extracted factor is not an ideal"));
    }
    let remainder = l.centralizer_in(current, &factor)?;
    if remainder != m.intersect(n)? {
        return Err(assertion("C(E) differs from M ∩ N"));
    }
    let split = verify_central_product_in(l, current, &factor, &remainder)?;
    if !split.passed() {
        return Err(assertion("current algebra is not E ∔ C(E)"));
    }
    if &l.centralizer_in(&remainder, &remainder)? != z {
        return Err(assertion("center of the remainder differs from Z(L)"));
    }
    if !is_frattinian_in(l, &remainder)?.is_frattinian {
        return Err(assertion("remainder is not Frattinian"));
    }
    Ok(Some(ExtractionStep {
        m: m.clone(),
        n: n.clone(),
        factor,
        remainder,
    }))
}

/// `[U, A] ⊆ A`.
fn ideal_in(l: &LieAlgebra, u: &Subspace, a: &Subspace) -> Result<bool> {
    Ok(u.contains(a)? && a.contains(&l.bracket_spaces(u, a)?)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obligation {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub obligations: Vec<Obligation>,
    /// Observations that are reported but not required.
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.obligations.push(Obligation {
            name: name.into(),
            pass,
        });
    }

    pub fn passed(&self) -> bool {
        self.obligations.iter().all(|o| o.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Obligation> {
        self.obligations.iter().filter(|o| !o.pass)
    }
}

pub fn verify_certificate(l: &LieAlgebra, cert: &DecompositionCertificate) -> Result<VerificationReport> {
    verify_certificate_in(l, &l.full(), cert)
}

/// Re-derives every claimed identity of `cert` for the subalgebra `U` from the
/// factor subspaces alone.
pub fn verify_certificate_in(
    l: &LieAlgebra,
    u: &Subspace,
    cert: &DecompositionCertificate,
) -> Result<VerificationReport> {
    for f in &cert.factors {
        if f.domain() != l.domain() || f.ambient_dim() != l.dim() {
            return Err(Error::MalformedCertificate(
                "factor does not live in the algebra's coordinate space".into(),
            ));
        }
    }
    match cert.case {
        Case::One if cert.factors.is_empty() => {
            return Err(Error::MalformedCertificate("case one needs at least one factor".into()))
        }
        Case::One if cert.nested.is_some() => {
            return Err(Error::MalformedCertificate("case one carries no nested certificate".into()))
        }
        Case::Two if cert.factors.len() != 2 => {
            return Err(Error::MalformedCertificate("case two needs exactly [E, F]".into()))
        }
        _ => {}
    }
    if !l.is_subalgebra(u)? {
        return Err(Error::NotASubalgebra);
    }

    let mut report = VerificationReport::default();
    let z = l.centralizer_in(u, u)?;
    report.check("center dimension matches", z.dim() == cert.center_dim);
    for (i, f) in cert.factors.iter().enumerate() {
        report.check(format!("factor {} lies in L", i + 1), u.contains(f)?);
    }
    if !report.passed() {
        return Ok(report);
    }

    match cert.case {
        Case::One => {
            let mut total = l.zero_space();
            for (i, f) in cert.factors.iter().enumerate() {
                let i = i + 1;
                report.check(format!("factor {i} is an ideal"), ideal_in(l, u, f)?);
                report.check(
                    format!("factor {i} has dimension 2 + dim Z(L)"),
                    f.dim() == 2 + z.dim(),
                );
                let sub = l.is_subalgebra(f)?;
                report.check(
                    format!("factor {i} is nonabelian"),
                    !l.bracket_spaces(f, f)?.is_zero(),
                );
                report.check(
                    format!("Z(factor {i}) = Z(L)"),
                    sub && l.centralizer_in(f, f)? == z,
                );
                total = total.sum(f)?;
            }
            report.check("sum of factors = L", &total == u);
            for i in 0..cert.factors.len() {
                for j in i + 1..cert.factors.len() {
                    report.check(
                        format!("[factor {}, factor {}] = 0", i + 1, j + 1),
                        l.bracket_spaces(&cert.factors[i], &cert.factors[j])?.is_zero(),
                    );
                }
            }
            report.check(
                "dim L = 2 * factors + dim Z(L)",
                u.dim() == 2 * cert.factors.len() + z.dim(),
            );
        }
        Case::Two => {
            let (e, f) = (&cert.factors[0], &cert.factors[1]);
            let e_sub = l.is_subalgebra(e)?;
            let f_sub = l.is_subalgebra(f)?;
            report.check("E is an ideal", ideal_in(l, u, e)?);
            report.check("F is an ideal", ideal_in(l, u, f)?);
            report.check("[E, F] = 0", l.bracket_spaces(e, f)?.is_zero());
            report.check("E + F = L", &e.sum(f)? == u);
            report.check("E = C_L(F)", &l.centralizer_in(u, f)? == e);
            report.check("E^2 <= Z(L)", z.contains(&l.bracket_spaces(e, e)?)?);
            let f2 = l.bracket_spaces(f, f)?;
            let z_f2 = l.centralizer_in(&f2, &f2)?;
            report.check(
                "C_F(Z(F^2)) = F^2",
                f_sub && l.centralizer_in(f, &z_f2)? == f2,
            );
            let literal = l.centralizer_in(u, &z_f2)? == f2;
            report.check("C_L(Z(F^2)) = F^2", literal);
            if !literal {
                let rest = l.centralizer_in(u, e)?;
                let relative = l.centralizer_in(&rest, &z_f2)? == f2;
                report.notes.push(format!(
                    "C_L(Z(F^2)) contains E + F^2; inside C_L(E) the identity {}",
                    if relative { "holds" } else { "also fails" }
                ));
            }
            report.check(
                "E is Frattinian",
                e_sub && is_frattinian_in(l, e)?.is_frattinian,
            );
            report.check(
                "F is Frattinian",
                f_sub && is_frattinian_in(l, f)?.is_frattinian,
            );
            match &cert.nested {
                None => report.check("E = Z(L) or E splits as in case one", e == &z),
                Some(inner) => {
                    let ok = inner.case == Case::One
                        && e_sub
                        && verify_certificate_in(l, e, inner)?.passed();
                    report.check("E = Z(L) or E splits as in case one", ok);
                }
            }
            let derived = l.bracket_spaces(u, u)?;
            report.check(
                "C_L(F^2) = C_L(L^2)",
                l.centralizer_in(u, &f2)? == l.centralizer_in(u, &derived)?,
            );
            report.check("Z(L) + F^2 = Z(L) + L^2", z.sum(&f2)? == z.sum(&derived)?);
            if e.intersect(f)? != z {
                report
                    .notes
                    .push("E ∩ F is strictly smaller than Z(L): central product in the weak sense".into());
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralProductReport {
    pub checks: Vec<Obligation>,
}

impl CentralProductReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.pass)
    }
}

pub fn verify_central_product(l: &LieAlgebra, a: &Subspace, b: &Subspace) -> Result<CentralProductReport> {
    verify_central_product_in(l, &l.full(), a, b)
}

/// Checks that the subalgebra `U` is the central product `A ∔ B`, plus the two
/// center identities every central product satisfies.
pub fn verify_central_product_in(
    l: &LieAlgebra,
    u: &Subspace,
    a: &Subspace,
    b: &Subspace,
) -> Result<CentralProductReport> {
    let mut checks = Vec::new();
    let mut check = |name: &str, pass: bool| {
        checks.push(Obligation {
            name: name.to_string(),
            pass,
        })
    };
    let z = l.centralizer_in(u, u)?;
    let meet = a.intersect(b)?;
    check("A is an ideal", ideal_in(l, u, a)?);
    check("B is an ideal", ideal_in(l, u, b)?);
    check("A + B = L", &a.sum(b)? == u);
    check("[A, B] = 0", l.bracket_spaces(a, b)?.is_zero());
    check("A ∩ B = Z(L)", meet == z);
    let (z_a, z_b) = if l.is_subalgebra(a)? && l.is_subalgebra(b)? {
        (Some(l.centralizer_in(a, a)?), Some(l.centralizer_in(b, b)?))
    } else {
        (None, None)
    };
    match (z_a, z_b) {
        (Some(z_a), Some(z_b)) => {
            check("Z(A) ∩ Z(B) = A ∩ B", z_a.intersect(&z_b)? == meet);
            check("Z(L) = Z(A) + Z(B)", z_a.sum(&z_b)? == z);
        }
        _ => {
            check("Z(A) ∩ Z(B) = A ∩ B", false);
            check("Z(L) = Z(A) + Z(B)", false);
        }
    }
    Ok(CentralProductReport { checks })
}
