//! The Frattinian predicate, minimal supplements of the center, and an
//! executable audit of the structural facts about maximal subalgebras that
//! the decomposition relies on.
//!
//! A nilpotent algebra `L` is Frattinian when `Z(M) != Z(L)` for every
//! maximal subalgebra `M`. Abelian algebras are Frattinian without
//! enumeration; otherwise the base field must be finite.

use crate::constructions::restrict;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linear::Subspace;
use crate::maximal::{enumerate_maximal, enumerate_maximal_in};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrattinianVerdict {
    pub is_frattinian: bool,
    /// First maximal subalgebra (canonical order) with `Z(M) = Z(L)`.
    pub witness: Option<Subspace>,
    pub checked_count: usize,
}

pub fn is_frattinian(l: &LieAlgebra) -> Result<FrattinianVerdict> {
    is_frattinian_in(l, &l.full())
}

/// Frattinian test for the subalgebra `U` of `L`.
pub fn is_frattinian_in(l: &LieAlgebra, u: &Subspace) -> Result<FrattinianVerdict> {
    if !l.is_subalgebra(u)? {
        return Err(Error::NotASubalgebra);
    }
    l.require_nilpotent()?;
    if l.bracket_spaces(u, u)?.is_zero() {
        return Ok(FrattinianVerdict {
            is_frattinian: true,
            witness: None,
            checked_count: 0,
        });
    }
    let center = l.centralizer_in(u, u)?;
    let maximal = enumerate_maximal_in(l, u)?;
    for (i, m) in maximal.items.iter().enumerate() {
        if l.centralizer_in(m, m)? == center {
            return Ok(FrattinianVerdict {
                is_frattinian: false,
                witness: Some(m.clone()),
                checked_count: i + 1,
            });
        }
    }
    Ok(FrattinianVerdict {
        is_frattinian: true,
        witness: None,
        checked_count: maximal.count(),
    })
}

/// Every maximal subalgebra `M ⊇ Z(U)` of `U` has `Z(M) ⊆ Z(U) + U^2`.
/// Together with "Frattinian and nonabelian" this is the hypothesis under
/// which the minimal supplement of the center is self-contained.
pub fn centers_within_derived_in(l: &LieAlgebra, u: &Subspace) -> Result<bool> {
    let z = l.centralizer_in(u, u)?;
    let bound = z.sum(&l.bracket_spaces(u, u)?)?;
    for m in enumerate_maximal_in(l, u)?.items {
        if m.contains(&z)? && !bound.contains(&l.centralizer_in(&m, &m)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full hypothesis: `U` Frattinian, nonabelian, and
/// [`centers_within_derived_in`].
pub fn supplement_hypothesis_in(l: &LieAlgebra, u: &Subspace) -> Result<bool> {
    if l.bracket_spaces(u, u)?.is_zero() {
        return Ok(false);
    }
    if !is_frattinian_in(l, u)?.is_frattinian {
        return Ok(false);
    }
    centers_within_derived_in(l, u)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityCheck {
    /// A maximal subalgebra `X` of the supplement, in ambient coordinates.
    pub maximal: Subspace,
    /// Whether `X + Z` still covers the whole algebra (must be false).
    pub covers: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conclusion {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupplementResult {
    pub supplement: Subspace,
    pub minimal: bool,
    pub minimality_checks: Vec<MinimalityCheck>,
    /// `None` when the hypothesis cannot be decided (infinite field).
    pub hypothesis_met: Option<bool>,
    pub conclusions: Vec<Conclusion>,
}

impl SupplementResult {
    pub fn conclusion(&self, name: &str) -> Option<bool> {
        self.conclusions.iter().find(|c| c.name == name).map(|c| c.holds)
    }
}

pub const CENTER_IN_DERIVED: &str = "Z(F) <= F^2";
pub const CENTRALIZER_IS_CENTER: &str = "C_L(F) = Z(L)";
pub const DERIVED_CENTER_SELF_CENTRALIZING: &str = "C_L(Z(F^2)) = F^2";
pub const DERIVED_CENTER_SELF_CENTRALIZING_IN_F: &str = "C_F(Z(F^2)) = F^2";
pub const SUPPLEMENT_FRATTINIAN: &str = "F Frattinian";

pub fn minimal_supplement(l: &LieAlgebra) -> Result<SupplementResult> {
    minimal_supplement_in(l, &l.full())
}

/// A minimal subalgebra `F` of `U` with `F + Z(U) = U`, generated by a
/// complement of `Z(U) + U^2` in `U`.
pub fn minimal_supplement_in(l: &LieAlgebra, u: &Subspace) -> Result<SupplementResult> {
    if !l.is_subalgebra(u)? {
        return Err(Error::NotASubalgebra);
    }
    l.require_nilpotent()?;
    let z = l.centralizer_in(u, u)?;
    let derived = l.bracket_spaces(u, u)?;
    let base = z.sum(&derived)?;
    let gens = base.complement_basis(u)?;
    let f = l.generated_subalgebra(&gens)?;
    if &f.sum(&z)? != u {
        return Err(Error::InternalAssertionFailed(
            "generated supplement does not cover the algebra".into(),
        ));
    }

    // any supplement contains U^2 and maps onto U / (Z(U) + U^2)
    let least_dim = u.dim() - base.dim() + derived.dim();
    let by_dimension = f.dim() == least_dim;

    let mut minimality_checks = Vec::new();
    let finite = l.domain().is_finite();
    if finite && !f.is_zero() {
        let (restricted, inclusion) = restrict(l, &f)?;
        for x in enumerate_maximal(&restricted)?.items {
            let image = Subspace::span(
                l.domain(),
                l.dim(),
                x.basis().iter().map(|r| inclusion.apply_row(r)),
            )?;
            let covers = &image.sum(&z)? == u;
            minimality_checks.push(MinimalityCheck {
                maximal: image,
                covers,
            });
        }
    }
    let by_scan = minimality_checks.iter().all(|c| !c.covers);
    if finite && by_scan != by_dimension {
        return Err(Error::InternalAssertionFailed(
            "minimality scan disagrees with the dimension count".into(),
        ));
    }

    let f_derived = l.bracket_spaces(&f, &f)?;
    let z_f = l.centralizer_in(&f, &f)?;
    let z_f_derived = l.centralizer_in(&f_derived, &f_derived)?;
    let mut conclusions = vec![
        Conclusion {
            name: CENTER_IN_DERIVED,
            holds: f_derived.contains(&z_f)?,
        },
        Conclusion {
            name: CENTRALIZER_IS_CENTER,
            holds: l.centralizer_in(u, &f)? == z,
        },
        Conclusion {
            name: DERIVED_CENTER_SELF_CENTRALIZING,
            holds: l.centralizer_in(u, &z_f_derived)? == f_derived,
        },
        Conclusion {
            name: DERIVED_CENTER_SELF_CENTRALIZING_IN_F,
            holds: l.centralizer_in(&f, &z_f_derived)? == f_derived,
        },
    ];
    let hypothesis_met = if finite {
        conclusions.push(Conclusion {
            name: SUPPLEMENT_FRATTINIAN,
            holds: is_frattinian_in(l, &f)?.is_frattinian,
        });
        Some(supplement_hypothesis_in(l, u)?)
    } else {
        None
    };
    Ok(SupplementResult {
        supplement: f,
        minimal: by_dimension,
        minimality_checks,
        hypothesis_met,
        conclusions,
    })
}

/// Identifiers of the audited facts, in the order they are checked.
pub mod checks {
    /// `C_L(M) = Z(M)`, or `C_L(M) = Z(L)` and `C_L(M) + M = L`.
    pub const CENTRALIZER_DICHOTOMY: &str = "centralizer-dichotomy";
    /// `Z(L) ⊄ M ⇒ C_L(M) = Z(L)`, `Z(L) ⊆ M ⇒ C_L(M) = Z(M)`.
    pub const CENTRALIZER_BY_CENTER_POSITION: &str = "centralizer-by-center-position";
    /// `Z(M) ⊄ Z(L) ⇒ C_L(Z(M)) = M`.
    pub const CENTER_CENTRALIZER: &str = "center-centralizer";
    /// Under the supplement hypothesis, `C_L(Z(L^2)) = Z(L) + L^2`.
    pub const DERIVED_CENTER_CENTRALIZER: &str = "derived-center-centralizer";
    /// A complementary maximal `N` with `Z(N) ∩ M = Z(M) ∩ N = Z(L)` exists.
    pub const COMPLEMENTARY_MAXIMAL: &str = "complementary-maximal";
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub lemma_id: &'static str,
    pub algebra_id: String,
    pub maximal_basis: Option<Subspace>,
    pub pass: bool,
    pub witness_subspaces: Vec<(String, Subspace)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaSuiteReport {
    pub algebra_id: String,
    pub maximal_count: usize,
    pub frattinian: bool,
    pub supplement_hypothesis: bool,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaSuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &LemmaCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs every per-maximal-subalgebra check on `L`.
pub fn lemma_suite(l: &LieAlgebra, algebra_id: &str) -> Result<LemmaSuiteReport> {
    let maximal = enumerate_maximal(l)?;
    let full = l.full();
    let z = l.center();
    let derived = l.derived();
    let z_plus_derived = z.sum(&derived)?;
    let nonabelian = !derived.is_zero();
    let frattinian = is_frattinian(l)?.is_frattinian;
    let centers: Vec<Subspace> = maximal
        .items
        .iter()
        .map(|m| l.centralizer_in(m, m))
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    let mut record = |lemma_id, m: Option<&Subspace>, pass, witness: Vec<(&str, Subspace)>| {
        out.push(LemmaCheck {
            lemma_id,
            algebra_id: algebra_id.to_string(),
            maximal_basis: m.cloned(),
            pass,
            witness_subspaces: witness.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        });
    };

    let mut hypothesis = frattinian && nonabelian;
    for (m, z_m) in maximal.items.iter().zip(&centers) {
        let c = l.centralizer(m)?;
        let contains_center = m.contains(&z)?;

        let pass = &c == z_m || (c == z && c.sum(m)? == full);
        record(
            checks::CENTRALIZER_DICHOTOMY,
            Some(m),
            pass,
            vec![("C_L(M)", c.clone()), ("Z(M)", z_m.clone()), ("Z(L)", z.clone())],
        );

        let expected = if contains_center { z_m } else { &z };
        record(
            checks::CENTRALIZER_BY_CENTER_POSITION,
            Some(m),
            &c == expected,
            vec![("C_L(M)", c.clone()), ("expected", expected.clone())],
        );

        if !z.contains(z_m)? {
            let cz = l.centralizer(z_m)?;
            record(
                checks::CENTER_CENTRALIZER,
                Some(m),
                &cz == m,
                vec![("C_L(Z(M))", cz), ("Z(M)", z_m.clone())],
            );
        }

        let outside = contains_center && !z_plus_derived.contains(z_m)?;
        if outside {
            hypothesis = false;
        }
        if frattinian && nonabelian && outside {
            let partner = maximal.items.iter().zip(&centers).find_map(|(n, z_n)| {
                let ok = (|| -> Result<bool> {
                    Ok(n.contains(&z)?
                        && !n.contains(z_m)?
                        && z_n.intersect(m)? == z
                        && z_m.intersect(n)? == z)
                })();
                match ok {
                    Ok(true) => Some(Ok(n.clone())),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                }
            });
            let partner = partner.transpose()?;
            let mut witness = vec![("Z(M)", z_m.clone())];
            if let Some(n) = &partner {
                witness.push(("N", n.clone()));
            }
            record(checks::COMPLEMENTARY_MAXIMAL, Some(m), partner.is_some(), witness);
        }
    }

    if hypothesis {
        let z_derived = l.subalgebra_center(&derived)?;
        let c = l.centralizer(&z_derived)?;
        record(
            checks::DERIVED_CENTER_CENTRALIZER,
            None,
            c == z_plus_derived,
            vec![
                ("C_L(Z(L^2))", c),
                ("Z(L^2)", z_derived),
                ("Z(L)+L^2", z_plus_derived.clone()),
            ],
        );
    }

    Ok(LemmaSuiteReport {
        algebra_id: algebra_id.to_string(),
        maximal_count: maximal.count(),
        frattinian,
        supplement_hypothesis: hypothesis,
        checks: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{abelian, direct_sum, filiform_standard, heisenberg};
    use crate::linear::Vector;
    use crate::scalar::{Domain, Scalar};

    const F2: Domain = Domain::Prime(2);
    const F3: Domain = Domain::Prime(3);

    fn v(d: Domain, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_i64(d, x)).collect()
    }

    fn sp(d: Domain, n: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::span(d, n, rows.iter().map(|r| v(d, r))).unwrap()
    }

    #[test]
    fn heisenberg_is_frattinian() {
        for d in [F2, F3] {
            for m in 1..=2 {
                let verdict = is_frattinian(&heisenberg(m, d).unwrap()).unwrap();
                assert!(verdict.is_frattinian);
                assert!(verdict.witness.is_none());
            }
        }
    }

    #[test]
    fn filiform_is_not() {
        let l = filiform_standard(4, F2).unwrap();
        let verdict = is_frattinian(&l).unwrap();
        assert!(!verdict.is_frattinian);
        let w = verdict.witness.unwrap();
        assert_eq!(w.dim(), 3);
        assert_eq!(l.subalgebra_center(&w).unwrap(), l.center());
    }

    #[test]
    fn abelian_short_circuits() {
        let v = is_frattinian(&abelian(3, Domain::Rational)).unwrap();
        assert!(v.is_frattinian);
        assert_eq!(v.checked_count, 0);
        assert_eq!(
            is_frattinian(&heisenberg(1, Domain::Rational).unwrap()).unwrap_err(),
            Error::InfiniteDomain
        );
    }

    #[test]
    fn supplement_examples() {
        let a = abelian(3, F3);
        assert!(minimal_supplement(&a).unwrap().supplement.is_zero());

        let h1 = heisenberg(1, F2).unwrap();
        let s = minimal_supplement(&h1).unwrap();
        assert_eq!(s.supplement, h1.full());
        assert!(s.minimal);

        let l = direct_sum(&heisenberg(1, F3).unwrap(), &abelian(1, F3)).unwrap();
        let s = minimal_supplement(&l).unwrap();
        assert_eq!(s.supplement, sp(F3, 4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]));
        assert!(s.minimal);
        assert_eq!(s.minimality_checks.len(), 4);
        assert!(s.minimality_checks.iter().all(|c| !c.covers));
        assert_eq!(s.supplement.sum(&l.center()).unwrap(), l.full());
    }

    #[test]
    fn supplement_over_rationals_uses_dimension_count() {
        let l = direct_sum(&heisenberg(1, Domain::Rational).unwrap(), &abelian(2, Domain::Rational)).unwrap();
        let s = minimal_supplement(&l).unwrap();
        assert!(s.minimal);
        assert_eq!(s.supplement.dim(), 3);
        assert_eq!(s.hypothesis_met, None);
        assert!(s.minimality_checks.is_empty());
    }

    #[test]
    fn suite_on_heisenberg() {
        let h1 = heisenberg(1, F2).unwrap();
        let report = lemma_suite(&h1, "H(1)").unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
        let m = sp(F2, 3, &[&[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(h1.centralizer(&m).unwrap(), m);
        assert_eq!(h1.subalgebra_center(&m).unwrap(), m);

        let h2 = heisenberg(2, F2).unwrap();
        let report = lemma_suite(&h2, "H(2)").unwrap();
        assert!(report.all_pass());
        let pairs: Vec<_> = report
            .checks
            .iter()
            .filter(|c| c.lemma_id == checks::COMPLEMENTARY_MAXIMAL)
            .collect();
        assert_eq!(pairs.len(), 15);
        for c in pairs {
            let m = c.maximal_basis.as_ref().unwrap();
            let n = &c.witness_subspaces.iter().find(|(k, _)| k == "N").unwrap().1;
            let (zm, zn) = (h2.subalgebra_center(m).unwrap(), h2.subalgebra_center(n).unwrap());
            assert_eq!(zm.intersect(n).unwrap(), h2.center());
            assert_eq!(zn.intersect(m).unwrap(), h2.center());
        }
    }
}
