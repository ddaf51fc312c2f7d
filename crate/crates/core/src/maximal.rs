//! Maximal subalgebras of nilpotent Lie algebras over finite fields.
//!
//! In a nilpotent algebra the maximal subalgebras are exactly the
//! codimension-one subspaces containing the derived algebra, so they are
//! enumerated as hyperplanes of `L / L^2`. [`brute_force_maximal`] is an
//! independent oracle for tiny cases.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linear::{zero_vector, Subspace, Vector};
use crate::scalar::{Domain, Scalar};

/// Maximal subalgebras in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalEnumeration {
    pub items: Vec<Subspace>,
    /// `dim U / U^2` for the enumerated algebra `U`.
    pub quotient_dim: usize,
}

impl MaximalEnumeration {
    pub fn count(&self) -> usize {
        self.items.len()
    }
}

/// `(p^d - 1) / (p - 1)`, the number of hyperplanes of `F_p^d`.
pub fn hyperplane_count(p: u32, d: usize) -> u64 {
    (0..d).map(|i| u64::from(p).pow(i as u32)).sum()
}

/// All maximal subalgebras of `L`.
pub fn enumerate_maximal(l: &LieAlgebra) -> Result<MaximalEnumeration> {
    enumerate_maximal_in(l, &l.full())
}

/// All maximal subalgebras of the subalgebra `U` of `L`, as subspaces of `L`.
pub fn enumerate_maximal_in(l: &LieAlgebra, u: &Subspace) -> Result<MaximalEnumeration> {
    let p = match l.domain() {
        Domain::Prime(p) => p,
        Domain::Rational => return Err(Error::InfiniteDomain),
    };
    if !l.is_subalgebra(u)? {
        return Err(Error::NotASubalgebra);
    }
    l.require_nilpotent()?;
    if u.is_zero() {
        return Err(Error::ZeroAlgebra);
    }
    let d = l.domain();
    let k = u.dim();
    let derived = l.bracket_spaces(u, u)?;
    // U^2 in the coordinates of U's canonical basis
    let derived_coords = Subspace::span(
        d,
        k,
        derived.basis().iter().map(|v| u.coordinates(v)).collect::<Result<Vec<_>>>()?,
    )?;
    let kept: Vec<usize> = (0..k).filter(|c| !derived_coords.pivots().contains(c)).collect();
    let qd = kept.len();

    let mut items = Vec::new();
    for normal in normalized_vectors(p, qd) {
        let lead = normal.iter().position(|x| !x.is_zero()).expect("normalized");
        let mut rows: Vec<Vector> = derived_coords.basis().to_vec();
        for j in (0..qd).filter(|&j| j != lead) {
            // e_j - f_j e_lead lies in the kernel of f since f_lead = 1
            let mut w = zero_vector(d, k);
            w[kept[j]] = Scalar::one(d);
            w[kept[lead]] = -&normal[j];
            rows.push(w);
        }
        let lifted = rows.iter().map(|c| u.combine(c));
        items.push(Subspace::span(d, l.dim(), lifted)?);
    }
    items.sort();
    Ok(MaximalEnumeration {
        items,
        quotient_dim: qd,
    })
}

/// Vectors of `F_p^d` whose first nonzero coordinate is 1, in lexicographic order.
fn normalized_vectors(p: u32, d: usize) -> Vec<Vector> {
    let dom = Domain::Prime(p);
    let mut out = Vec::new();
    for lead in (0..d).rev() {
        // positions before `lead` are zero, `lead` is one, the rest is free
        let free = d - lead - 1;
        let total = u64::from(p).pow(free as u32);
        for code in 0..total {
            let mut v = zero_vector(dom, d);
            v[lead] = Scalar::one(dom);
            let mut c = code;
            for pos in (lead + 1..d).rev() {
                v[pos] = Scalar::from_i64(dom, (c % u64::from(p)) as i64);
                c /= u64::from(p);
            }
            out.push(v);
        }
    }
    out
}

/// Hard limits for [`brute_force_maximal_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceCaps {
    pub max_dim: usize,
    pub max_p: u32,
}

impl Default for BruteForceCaps {
    fn default() -> Self {
        BruteForceCaps { max_dim: 4, max_p: 2 }
    }
}

/// Maximal subalgebras found by listing every subspace, keeping the proper
/// subalgebras, and taking the inclusion-maximal ones.
pub fn brute_force_maximal(l: &LieAlgebra) -> Result<Vec<Subspace>> {
    brute_force_maximal_with(l, BruteForceCaps::default())
}

pub fn brute_force_maximal_with(l: &LieAlgebra, caps: BruteForceCaps) -> Result<Vec<Subspace>> {
    let p = match l.domain() {
        Domain::Prime(p) => p,
        Domain::Rational => return Err(Error::InfiniteDomain),
    };
    if l.dim() == 0 {
        return Err(Error::ZeroAlgebra);
    }
    if l.dim() > caps.max_dim || p > caps.max_p {
        return Err(Error::TooLarge(format!(
            "brute force limited to dim <= {} and p <= {}, got dim {} over F{p}",
            caps.max_dim,
            caps.max_p,
            l.dim()
        )));
    }
    let vectors = all_vectors(l.domain(), l.dim())?;
    let mut seen: BTreeSet<Subspace> = BTreeSet::new();
    let mut frontier = vec![l.zero_space()];
    seen.insert(l.zero_space());
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            if s.contains_vector(v)? {
                continue;
            }
            let t = s.sum(&Subspace::span(l.domain(), l.dim(), [v.clone()])?)?;
            if seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    let mut proper = Vec::new();
    for s in seen {
        if s.dim() < l.dim() && l.is_subalgebra(&s)? {
            proper.push(s);
        }
    }
    let mut out = Vec::new();
    for s in &proper {
        let mut dominated = false;
        for t in &proper {
            if t.dim() > s.dim() && t.contains(s)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            out.push(s.clone());
        }
    }
    out.sort();
    Ok(out)
}

fn all_vectors(domain: Domain, n: usize) -> Result<Vec<Vector>> {
    let elems = domain.elements()?;
    let mut out: Vec<Vector> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x.clone());
                    w
                })
            })
            .collect();
    }
    Ok(out)
}
