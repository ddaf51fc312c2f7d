//! Builders for the standard families (abelian, Heisenberg, filiform), direct
//! and central products, restriction to subalgebras, and a deterministic
//! test catalog.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linear::{is_zero_vector, unit_vector, zero_vector, Matrix, Subspace, Vector};
use crate::scalar::{Domain, Scalar};

/// `A(n)`: all brackets zero.
pub fn abelian(n: usize, domain: Domain) -> LieAlgebra {
    LieAlgebra::new(domain, n, std::iter::empty()).expect("abelian algebra is valid")
}

/// `H(m)` on the basis `x_1, .., x_{2m}, x` (in that order) with
/// `[x_{2i-1}, x_{2i}] = x`.
pub fn heisenberg(m: usize, domain: Domain) -> Result<LieAlgebra> {
    if m == 0 {
        return Err(Error::InvalidArgument("heisenberg needs m >= 1".into()));
    }
    let n = 2 * m + 1;
    let brackets = (0..m).map(|i| ((2 * i, 2 * i + 1), unit_vector(domain, n, n - 1)));
    let mut names: Vec<String> = (1..=2 * m).map(|i| format!("x{i}")).collect();
    names.push("x".into());
    LieAlgebra::new(domain, n, brackets)?.with_names(names)
}

/// The model filiform algebra: `[e_1, e_i] = e_{i+1}` for `2 <= i <= n-1`.
pub fn filiform_standard(n: usize, domain: Domain) -> Result<LieAlgebra> {
    if n < 3 {
        return Err(Error::InvalidArgument("filiform needs n >= 3".into()));
    }
    let brackets = (1..n - 1).map(|i| ((0, i), unit_vector(domain, n, i + 1)));
    LieAlgebra::new(domain, n, brackets)
}

pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> Result<LieAlgebra> {
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch(a.domain(), b.domain()));
    }
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let d = a.domain();
    let mut brackets = Vec::new();
    for ((i, j), v) in a.brackets() {
        let mut w = v.clone();
        w.extend(zero_vector(d, nb));
        brackets.push(((i, j), w));
    }
    for ((i, j), v) in b.brackets() {
        let mut w = zero_vector(d, na);
        w.extend(v.iter().cloned());
        brackets.push(((na + i, na + j), w));
    }
    LieAlgebra::new(d, n, brackets)
}

/// Two algebras glued along a linear isomorphism between central subspaces.
///
/// `identification` is given by images of a basis: `left_basis[i]` (a central
/// vector of `left`) is identified with `right_images[i]` (central in `right`).
#[derive(Debug, Clone)]
pub struct CentralProductSpec {
    pub left: LieAlgebra,
    pub right: LieAlgebra,
    pub left_basis: Vec<Vector>,
    pub right_images: Vec<Vector>,
}

impl CentralProductSpec {
    /// Identifies the full centers of both algebras along their canonical
    /// bases. Requires centers of equal dimension.
    pub fn identify_centers(left: LieAlgebra, right: LieAlgebra) -> Result<CentralProductSpec> {
        let zl = left.center();
        let zr = right.center();
        if zl.dim() != zr.dim() {
            return Err(Error::InvalidArgument(format!(
                "centers have different dimensions ({} and {})",
                zl.dim(),
                zr.dim()
            )));
        }
        Ok(CentralProductSpec {
            left_basis: zl.basis().to_vec(),
            right_images: zr.basis().to_vec(),
            left,
            right,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CentralProduct {
    pub algebra: LieAlgebra,
    /// Rows are the images of the left basis vectors.
    pub left_embedding: Matrix,
    pub right_embedding: Matrix,
    /// Image of the identified central subspace.
    pub identified: Subspace,
    /// Set when `img(left) ∩ img(right)` is strictly smaller than the center,
    /// i.e. the output is a central product only in the weak sense.
    pub weak: bool,
}

impl CentralProduct {
    pub fn left_image(&self) -> Subspace {
        Subspace::canonicalize(&self.left_embedding)
    }

    pub fn right_image(&self) -> Subspace {
        Subspace::canonicalize(&self.right_embedding)
    }
}

/// Quotient of `left ⊕ right` by the graph `{(z, -φ(z))}`, on the canonical
/// complement basis of the graph.
pub fn central_product(spec: &CentralProductSpec) -> Result<CentralProduct> {
    let (a, b) = (&spec.left, &spec.right);
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch(a.domain(), b.domain()));
    }
    let d = a.domain();
    if spec.left_basis.len() != spec.right_images.len() {
        return Err(Error::NotInvertible);
    }
    let k = spec.left_basis.len();
    let za = a.center();
    let zb = b.center();
    for v in &spec.left_basis {
        if !za.contains_vector(v)? {
            return Err(Error::IdentificationNotCentral("left vector outside the center".into()));
        }
    }
    for v in &spec.right_images {
        if !zb.contains_vector(v)? {
            return Err(Error::IdentificationNotCentral("right vector outside the center".into()));
        }
    }
    if Subspace::span(d, a.dim(), spec.left_basis.clone())?.dim() != k
        || Subspace::span(d, b.dim(), spec.right_images.clone())?.dim() != k
    {
        return Err(Error::NotInvertible);
    }

    let sum = direct_sum(a, b)?;
    let n = sum.dim();
    let graph_rows = spec.left_basis.iter().zip(&spec.right_images).map(|(z, w)| {
        let mut row = z.clone();
        row.extend(w.iter().map(|x| -x));
        row
    });
    let graph = Subspace::span(d, n, graph_rows)?;
    let kept: Vec<usize> = (0..n).filter(|c| !graph.pivots().contains(c)).collect();
    let project = |v: &[Scalar]| -> Vector {
        let r = graph.reduce(v);
        kept.iter().map(|&c| r[c].clone()).collect()
    };
    let m = kept.len();
    let mut brackets = Vec::new();
    for s in 0..m {
        for t in s + 1..m {
            let w = project(&sum.basis_bracket(kept[s], kept[t]));
            if !is_zero_vector(&w) {
                brackets.push(((s, t), w));
            }
        }
    }
    let algebra = LieAlgebra::new(d, m, brackets)?;
    let left_embedding = Matrix::new(
        d,
        m,
        (0..a.dim()).map(|i| project(&unit_vector(d, n, i))).collect(),
    )?;
    let right_embedding = Matrix::new(
        d,
        m,
        (0..b.dim()).map(|j| project(&unit_vector(d, n, a.dim() + j))).collect(),
    )?;
    let identified = Subspace::span(
        d,
        m,
        spec.left_basis.iter().map(|z| left_embedding.apply_row(z)),
    )?;

    let product = CentralProduct {
        weak: false,
        left_embedding,
        right_embedding,
        identified,
        algebra,
    };
    let img_a = product.left_image();
    let img_b = product.right_image();
    let l = &product.algebra;
    let fail = |what: &str| Err(Error::InternalAssertionFailed(format!("central product: {what}")));
    if !l.bracket_spaces(&img_a, &img_b)?.is_zero() {
        return fail("[A, B] != 0");
    }
    let meet = img_a.intersect(&img_b)?;
    if meet != product.identified {
        return fail("A ∩ B differs from the identified subspace");
    }
    let center = l.center();
    let (z_a, z_b) = (l.subalgebra_center(&img_a)?, l.subalgebra_center(&img_b)?);
    if z_a.sum(&z_b)? != center {
        return fail("Z(L) != Z(A) + Z(B)");
    }
    if z_a.intersect(&z_b)? != meet {
        return fail("Z(A) ∩ Z(B) != A ∩ B");
    }
    let weak = meet != center;
    Ok(CentralProduct { weak, ..product })
}

/// The algebra structure on a subalgebra `U`, in the canonical basis of `U`.
/// The returned matrix maps that basis back into `L` (rows are images).
pub fn restrict(l: &LieAlgebra, u: &Subspace) -> Result<(LieAlgebra, Matrix)> {
    if !l.is_subalgebra(u)? {
        return Err(Error::NotASubalgebra);
    }
    let basis = u.basis();
    let k = basis.len();
    let mut brackets = Vec::new();
    for s in 0..k {
        for t in s + 1..k {
            let w = l.bracket(&basis[s], &basis[t])?;
            if !is_zero_vector(&w) {
                brackets.push(((s, t), u.coordinates(&w)?));
            }
        }
    }
    Ok((LieAlgebra::new(l.domain(), k, brackets)?, u.to_matrix()))
}

/// Strictly upper triangular `k x k` matrices, basis `E_ij` (i < j) in
/// row-major order.
pub fn strictly_upper_triangular(k: usize, domain: Domain) -> LieAlgebra {
    let index: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let n = index.len();
    let pos = |i: usize, j: usize| index.iter().position(|&p| p == (i, j));
    let mut brackets = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
            let ((i, j), (a, b)) = (index[s], index[t]);
            let mut w = zero_vector(domain, n);
            if j == a {
                let p = pos(i, b).expect("upper");
                w[p] = &w[p] + &Scalar::one(domain);
            }
            if b == i {
                let p = pos(a, j).expect("upper");
                w[p] = &w[p] - &Scalar::one(domain);
            }
            if !is_zero_vector(&w) {
                brackets.push(((s, t), w));
            }
        }
    }
    LieAlgebra::new(domain, n, brackets).expect("matrix commutators satisfy Jacobi")
}

/// A nilpotent algebra obtained as the subalgebra of strictly upper
/// triangular matrices generated by a few random matrices.
pub fn random_nilpotent<R: Rng + ?Sized>(
    domain: Domain,
    matrix_size: usize,
    generators: usize,
    rng: &mut R,
) -> Result<LieAlgebra> {
    let ambient = strictly_upper_triangular(matrix_size, domain);
    let gens: Vec<Vector> = (0..generators)
        .map(|_| (0..ambient.dim()).map(|_| Scalar::random(domain, rng)).collect())
        .collect();
    let sub = ambient.generated_subalgebra(&gens)?;
    Ok(restrict(&ambient, &sub)?.0)
}

pub const DEFAULT_CATALOG_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
}

/// [`catalog_with_seed`] with [`DEFAULT_CATALOG_SEED`].
pub fn catalog(domain: Domain, max_dim: usize) -> Result<Vec<CatalogEntry>> {
    catalog_with_seed(domain, max_dim, DEFAULT_CATALOG_SEED)
}

/// Deterministic test corpus of nilpotent algebras of dimension `<= max_dim`:
/// the named families, some direct and central products of them, and seeded
/// random nilpotent algebras.
pub fn catalog_with_seed(domain: Domain, max_dim: usize, seed: u64) -> Result<Vec<CatalogEntry>> {
    if !domain.validate()?.is_finite() {
        return Err(Error::InfiniteDomain);
    }
    if max_dim > 8 {
        return Err(Error::TooLarge(format!("catalog dimension {max_dim} exceeds 8")));
    }
    let d = domain;
    let mut out: Vec<CatalogEntry> = Vec::new();
    let mut push = |name: String, algebra: LieAlgebra| {
        if (1..=max_dim).contains(&algebra.dim()) {
            out.push(CatalogEntry { name, algebra });
        }
    };

    for n in 1..=max_dim {
        push(format!("A({n})"), abelian(n, d));
    }
    for m in (1..).take_while(|m| 2 * m < max_dim) {
        push(format!("H({m})"), heisenberg(m, d)?);
    }
    for n in 3..=max_dim {
        push(format!("filiform({n})"), filiform_standard(n, d)?);
    }

    let h1 = heisenberg(1, d)?;
    let mut named: Vec<(String, LieAlgebra)> = vec![("H(1)".into(), h1.clone())];
    if max_dim >= 5 {
        named.push(("H(2)".into(), heisenberg(2, d)?));
    }
    for n in 4..=max_dim.min(5) {
        named.push((format!("filiform({n})"), filiform_standard(n, d)?));
    }
    for (name, x) in &named {
        for k in 1..=3 {
            if x.dim() + k <= max_dim {
                push(format!("{name}+A({k})"), direct_sum(x, &abelian(k, d))?);
            }
        }
    }
    if max_dim >= 6 {
        push("H(1)+H(1)".into(), direct_sum(&h1, &h1)?);
    }
    if max_dim >= 7 {
        push("H(1)+filiform(4)".into(), direct_sum(&h1, &filiform_standard(4, d)?)?);
    }

    let glue = |x: &LieAlgebra, y: &LieAlgebra| -> Result<LieAlgebra> {
        Ok(central_product(&CentralProductSpec::identify_centers(x.clone(), y.clone())?)?.algebra)
    };
    let f4 = filiform_standard(4, d)?;
    let h1a1 = direct_sum(&h1, &abelian(1, d))?;
    if max_dim >= 5 {
        push("H(1)*H(1)".into(), glue(&h1, &h1)?);
    }
    if max_dim >= 6 {
        push("H(1)*filiform(4)".into(), glue(&h1, &f4)?);
        // identify only the derived line of H(1)+A(1) with the center of H(1)
        let spec = CentralProductSpec {
            left: h1a1.clone(),
            right: h1.clone(),
            left_basis: vec![unit_vector(d, 4, 2)],
            right_images: vec![unit_vector(d, 3, 2)],
        };
        push("(H(1)+A(1))*H(1)".into(), central_product(&spec)?.algebra);
    }
    if max_dim >= 7 {
        let h1h1 = glue(&h1, &h1)?;
        push("H(1)*H(1)*H(1)".into(), glue(&h1h1, &h1)?);
        push("filiform(4)*filiform(4)".into(), glue(&f4, &f4)?);
        push("(H(1)+A(1))*(H(1)+A(1))".into(), glue(&h1a1, &h1a1)?);
    }
    if max_dim >= 8 {
        push("H(1)*filiform(5)".into(), glue(&h1, &filiform_standard(5, d)?)?);
    }

    if d == Domain::Prime(2) && max_dim >= 6 {
        let g = two_generated_six()?;
        if max_dim >= 7 {
            push("G6+A(1)".into(), direct_sum(&g, &abelian(1, d))?);
        }
        push("G6".into(), g);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(d.order().unwrap_or(0)));
    let wanted = 24;
    let mut found = 0;
    for _ in 0..600 {
        if found == wanted {
            break;
        }
        let size = rng.gen_range(3..=5);
        let gens = rng.gen_range(2..=4);
        let x = random_nilpotent(d, size, gens, &mut rng)?;
        if x.is_abelian() || x.dim() > max_dim {
            continue;
        }
        found += 1;
        let name = format!("random-{found}(n{size},g{gens})");
        for k in 1..=3 {
            if x.dim() + k <= max_dim {
                push(format!("{name}+A({k})"), direct_sum(&x, &abelian(k, d))?);
            }
        }
        push(name, x);
    }
    Ok(out)
}

/// A six-dimensional two-generated algebra over `F_2` with one-dimensional
/// center inside `L^2`. It is Frattinian.
pub fn two_generated_six() -> Result<LieAlgebra> {
    let d = Domain::Prime(2);
    let e = |k: usize| unit_vector(d, 6, k - 1);
    let brackets = [
        ((0, 1), e(3)),
        ((0, 3), e(2)),
        ((0, 4), e(3)),
        ((0, 5), {
            let mut w = e(4);
            w[4] = Scalar::one(d);
            w
        }),
        ((1, 5), e(3)),
        ((3, 5), e(5)),
    ];
    LieAlgebra::new(d, 6, brackets)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: Domain = Domain::Prime(2);
    const F3: Domain = Domain::Prime(3);

    fn v(d: Domain, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_i64(d, x)).collect()
    }

    fn sp(d: Domain, n: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::span(d, n, rows.iter().map(|r| v(d, r))).unwrap()
    }

    /// Structural fingerprint used to compare algebras up to basis change.
    fn shape(l: &LieAlgebra) -> (usize, usize, Option<usize>, usize, Vec<usize>) {
        (
            l.dim(),
            l.center().dim(),
            l.nilpotency_class(),
            l.derived().dim(),
            l.upper_central_series().dims(),
        )
    }

    #[test]
    fn abelian_examples() {
        assert_eq!(abelian(0, F2).dim(), 0);
        let a3 = abelian(3, F2);
        assert_eq!(a3.center(), a3.full());
        assert!(a3.derived().is_zero());
    }

    #[test]
    fn heisenberg_examples() {
        let h1 = heisenberg(1, F3).unwrap();
        assert_eq!(h1.basis_bracket(0, 1), v(F3, &[0, 0, 1]));
        for m in 1..=3 {
            let h = heisenberg(m, F2).unwrap();
            assert_eq!(h.dim(), 2 * m + 1);
            assert_eq!(h.derived(), h.center());
            assert_eq!(h.center().dim(), 1);
            assert_eq!(h.dim() - h.derived().dim(), 2 * m);
            assert_eq!(h.nilpotency_class(), Some(2));
        }
        assert!(heisenberg(0, F2).is_err());
    }

    #[test]
    fn filiform_examples() {
        assert_eq!(shape(&filiform_standard(3, F2).unwrap()), shape(&heisenberg(1, F2).unwrap()));
        let f4 = filiform_standard(4, F2).unwrap();
        assert_eq!(f4.derived(), sp(F2, 4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]));
        assert_eq!(f4.center(), sp(F2, 4, &[&[0, 0, 0, 1]]));
        assert_eq!(filiform_standard(5, F3).unwrap().lower_central_series().dims(), vec![5, 3, 2, 1, 0]);
        assert!(filiform_standard(2, F2).is_err());
    }

    #[test]
    fn filiform_profile() {
        for d in [F2, F3, Domain::Rational] {
            for n in 3..=8 {
                let l = filiform_standard(n, d).unwrap();
                let lower = l.lower_central_series();
                let upper = l.upper_central_series();
                assert_eq!(n - lower.terms[1].dim(), 2);
                for i in 1..n - 1 {
                    assert_eq!(lower.terms[i].dim() - lower.terms[i + 1].dim(), 1);
                }
                // Z_i = L^{n-i}; terms are 0-based (terms[k] = L^{k+1})
                for i in 1..n {
                    assert_eq!(upper.terms[i], lower.terms[n - i - 1]);
                }
            }
        }
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum(&abelian(1, F2), &abelian(2, F2)).unwrap(), abelian(3, F2));
        let h = direct_sum(&heisenberg(1, F3).unwrap(), &abelian(1, F3)).unwrap();
        assert_eq!(h.center().dim(), 2);
        let f = direct_sum(&filiform_standard(5, F3).unwrap(), &heisenberg(1, F3).unwrap()).unwrap();
        assert_eq!(f.nilpotency_class(), Some(4));
        assert!(matches!(
            direct_sum(&abelian(1, F2), &abelian(1, F3)),
            Err(Error::DomainMismatch(..))
        ));
    }

    #[test]
    fn central_product_of_heisenbergs() {
        let h1 = heisenberg(1, F3).unwrap();
        let cp = central_product(&CentralProductSpec::identify_centers(h1.clone(), h1).unwrap()).unwrap();
        assert_eq!(cp.algebra.dim(), 5);
        assert!(!cp.weak);
        assert_eq!(shape(&cp.algebra), shape(&heisenberg(2, F3).unwrap()));
        let (a, b) = (cp.left_image(), cp.right_image());
        let l = &cp.algebra;
        assert!(l.bracket_spaces(&a, &b).unwrap().is_zero());
        assert_eq!(a.intersect(&b).unwrap(), l.center());
        assert!(l.is_ideal(&a).unwrap() && l.is_ideal(&b).unwrap());
    }

    #[test]
    fn central_product_degenerate_and_errors() {
        let h1 = heisenberg(1, F2).unwrap();
        let f4 = filiform_standard(4, F2).unwrap();
        let spec = CentralProductSpec {
            left: h1.clone(),
            right: f4.clone(),
            left_basis: vec![],
            right_images: vec![],
        };
        let cp = central_product(&spec).unwrap();
        assert_eq!(cp.algebra, direct_sum(&h1, &f4).unwrap());
        assert!(cp.weak);
        let bad = CentralProductSpec {
            left: h1.clone(),
            right: f4.clone(),
            left_basis: vec![v(F2, &[1, 0, 0])],
            right_images: vec![v(F2, &[0, 0, 0, 1])],
        };
        assert!(matches!(central_product(&bad), Err(Error::IdentificationNotCentral(_))));
        let singular = CentralProductSpec {
            left: h1.clone(),
            right: f4,
            left_basis: vec![v(F2, &[0, 0, 1])],
            right_images: vec![v(F2, &[0, 0, 0, 0])],
        };
        assert_eq!(central_product(&singular).unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn restrict_examples() {
        let h2 = heisenberg(2, F3).unwrap();
        let u = sp(F3, 5, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 0, 0, 1]]);
        let (r, inc) = restrict(&h2, &u).unwrap();
        assert_eq!(r.dim(), 3);
        assert_eq!(r.brackets().count(), 1);
        assert_eq!(r.basis_bracket(0, 1), v(F3, &[0, 0, 1]));
        assert_eq!(Subspace::canonicalize(&inc), u);
        let (whole, _) = restrict(&h2, &h2.full()).unwrap();
        assert_eq!(shape(&whole), shape(&h2));
        assert!(restrict(&h2, &h2.center()).unwrap().0.is_abelian());
        let not_sub = sp(F3, 5, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]]);
        assert_eq!(restrict(&h2, &not_sub).unwrap_err(), Error::NotASubalgebra);
    }

    #[test]
    fn catalog_contents() {
        let c = catalog(F2, 3).unwrap();
        let names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        for want in ["A(1)", "A(2)", "A(3)", "H(1)"] {
            assert!(names.contains(&want), "{want} missing from {names:?}");
        }
        let big = catalog(F3, 6).unwrap();
        assert!(big.iter().all(|e| e.algebra.is_nilpotent() && e.algebra.dim() <= 6));
        assert!(big.iter().filter(|e| e.name.starts_with("random")).count() > 0);
        assert_eq!(catalog(F3, 6).unwrap(), big);
        assert_eq!(catalog(Domain::Rational, 3).unwrap_err(), Error::InfiniteDomain);
        assert!(catalog(F2, 9).is_err());
    }

    #[test]
    fn upper_triangular_is_nilpotent() {
        for k in 2..=5 {
            let n = strictly_upper_triangular(k, F3);
            assert_eq!(n.dim(), k * (k - 1) / 2);
            assert_eq!(n.nilpotency_class(), Some(k - 1));
        }
    }
}
