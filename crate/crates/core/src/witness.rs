//! Constructive witnesses for (A4) on each geometry, and the rank-one step
//! formula for Hermitian matrices. Callers are expected to re-verify every
//! output against the distance index; nothing here is trusted on its own.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Involution};
use crate::matrix::Matrix;
use crate::space::{grass_intersection_dim, rref_bases, GrassmannPoint, PointSet};

/// Every vector of `F^len`, in lexicographic order of encodings.
fn all_vectors(field: &FieldSpec, len: usize) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let q = field.order();
    let total = q.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![FieldElement::ZERO; len];
        for slot in v.iter_mut().rev() {
            *slot = FieldElement::from_raw((code % q) as u8);
            code /= q;
        }
        v
    })
}

fn in_row_span(rows: &Matrix, v: &[FieldElement]) -> bool {
    let base = rows.rank();
    let row = Matrix::row_vector(rows.field(), v);
    rows.vstack(&row).expect("same width").rank() == base
}

fn others(m: &Matrix, skip: usize) -> Matrix {
    let idx: Vec<usize> = (0..m.rows()).filter(|&r| r != skip).collect();
    m.select_rows(&idx)
}

/// (A4) witness on rectangular matrices, normalized to `Z = 0`: `X` and `Y`
/// are distinct of full rank `min(m, n)`. Returns `W` of rank 1 with
/// `rank(X − W) = min(m, n) − 1` and `rank(Y − W) = min(m, n)`.
///
/// For `m ≤ n` the construction picks a row index `i` whose affine
/// subspaces `x_i + span(other rows of X)` and `y_i + span(other rows of Y)`
/// differ, takes `w` in the first but not the second, and puts it in row
/// `i` of `W`. For `m > n` it works on columns via transposition.
pub fn witness_a4_rect(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    if (x.rows(), x.cols()) != (y.rows(), y.cols()) || !x.field().same_field(y.field()) {
        return Err(Error::DimensionMismatch("X and Y must share shape and field".into()));
    }
    if x.rows() > x.cols() {
        return witness_a4_rect(&x.transpose(), &y.transpose()).map(|w| w.transpose());
    }
    let m = x.rows();
    if x == y {
        return Err(Error::Precondition("X = Y".into()));
    }
    if x.rank() != m || y.rank() != m {
        return Err(Error::Precondition(format!("X and Y need rank {m} (distance {m} from Z = 0)")));
    }
    let f = x.field();
    for i in 0..m {
        let (dx, dy) = (others(x, i), others(y, i));
        let same_direction = (0..dx.rows()).all(|r| in_row_span(&dy, dx.row(r)));
        let offset: Vec<FieldElement> = x.row(i).iter().zip(y.row(i)).map(|(&a, &b)| f.sub(a, b)).collect();
        if same_direction && in_row_span(&dy, &offset) {
            continue;
        }
        for coeffs in all_vectors(f, m - 1) {
            let mut w: Vec<FieldElement> = x.row(i).to_vec();
            for (r, &c) in coeffs.iter().enumerate() {
                for (j, slot) in w.iter_mut().enumerate() {
                    *slot = f.add(*slot, f.mul(c, dx.get(r, j)));
                }
            }
            let diff: Vec<FieldElement> = w.iter().zip(y.row(i)).map(|(&a, &b)| f.sub(a, b)).collect();
            if !in_row_span(&dy, &diff) {
                let mut out = Matrix::zeros(f, m, x.cols());
                for (j, &v) in w.iter().enumerate() {
                    out.set(i, j, v);
                }
                return Ok(out);
            }
        }
        return Err(Error::Internal(format!("affine subspaces at row {i} differ but no w separates them")));
    }
    Err(Error::Internal("all row affine subspaces of X and Y coincide".into()))
}

/// `x M σ(x)ᵗ` for a row vector `x`.
fn hermitian_form(m: &Matrix, x: &[FieldElement], sigma: &Involution) -> FieldElement {
    let f = m.field();
    let n = m.rows();
    let mut acc = FieldElement::ZERO;
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            acc = f.add(acc, f.mul(f.mul(x[i], m.get(i, j)), sigma.apply(x[j])));
        }
    }
    acc
}

/// `σ(u)ᵗ c⁻¹ u` for a row vector `u` and nonzero scalar `c`.
fn rank_one_from(u: &Matrix, c: FieldElement, sigma: &Involution) -> Result<Matrix> {
    let inv = u.field().inv(c)?;
    u.conj_transpose(sigma).scale(inv).mul(u)
}

fn require_hermitian(m: &Matrix, sigma: &Involution, name: &str) -> Result<()> {
    if !m.field().same_field(sigma.field()) {
        return Err(Error::MixedFields(m.field().to_string(), sigma.field().to_string()));
    }
    if !m.is_hermitian(sigma)? {
        return Err(Error::Precondition(format!("{name} is not Hermitian")));
    }
    Ok(())
}

/// (A4) witness on Hermitian matrices, normalized to `Z = 0`: `X ≠ Y` both
/// invertible Hermitian. Searches `v` in lexicographic order with
/// `v X σ(v)ᵗ ≠ 0` and `v (X − X Y⁻¹ X) σ(v)ᵗ ≠ 0`, then returns
/// `W = σ(vX)ᵗ (v X σ(v)ᵗ)⁻¹ (vX)`.
pub fn witness_a4_herm(x: &Matrix, y: &Matrix, sigma: &Involution) -> Result<Matrix> {
    require_hermitian(x, sigma, "X")?;
    require_hermitian(y, sigma, "Y")?;
    if x.rows() != y.rows() {
        return Err(Error::DimensionMismatch("X and Y must have the same size".into()));
    }
    let n = x.rows();
    if x == y {
        return Err(Error::Precondition("X = Y, so X − X Y⁻¹ X = 0".into()));
    }
    if x.rank() != n {
        return Err(Error::Precondition(format!("X needs rank {n}")));
    }
    let y_inv = y.inverse()?;
    let b = x.sub(&x.mul(&y_inv)?.mul(x)?)?;
    let f = x.field();
    for v in all_vectors(f, n).skip(1) {
        let s1 = hermitian_form(x, &v, sigma);
        if s1.is_zero() || hermitian_form(&b, &v, sigma).is_zero() {
            continue;
        }
        let vx = Matrix::row_vector(f, &v).mul(x)?;
        return rank_one_from(&vx, s1, sigma);
    }
    Err(Error::Internal("no vector v with v X σ(v)ᵗ ≠ 0 and v B σ(v)ᵗ ≠ 0".into()))
}

/// The rank-one matrices `B = σ(xA)ᵗ (x A σ(x)ᵗ)⁻¹ (xA)` over every `x` with
/// `x A σ(x)ᵗ ≠ 0`, sorted and deduplicated.
pub fn rank1_step_neighbors(a: &Matrix, sigma: &Involution) -> Result<Vec<Matrix>> {
    require_hermitian(a, sigma, "A")?;
    if a.is_zero() {
        return Err(Error::Precondition("A = 0 has no rank-one step neighbours".into()));
    }
    let f = a.field();
    let mut out = Vec::new();
    for x in all_vectors(f, a.rows()).skip(1) {
        let c = hermitian_form(a, &x, sigma);
        if c.is_zero() {
            continue;
        }
        let xa = Matrix::row_vector(f, &x).mul(a)?;
        out.push(rank_one_from(&xa, c, sigma)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `{ B in the space : rank(B) = 1 ∧ rank(A − B) = rank(A) − 1 }`, by scanning
/// every point.
pub fn rank1_step_neighbors_brute(a: &Matrix, space: &PointSet) -> Vec<Matrix> {
    let k1 = a.rank();
    if k1 == 0 {
        return Vec::new();
    }
    space
        .points()
        .iter()
        .filter(|b| b.rank() == 1 && a.sub(b).map(|d| d.rank() == k1 - 1).unwrap_or(false))
        .cloned()
        .collect()
}

/// (A4) witness on a Grassmann space with `m ≤ n`: `X ≠ Y`, both meeting `Z`
/// trivially. Picks the first `a ∈ X \ Y`, then the first `(m−1)`-subspace
/// `S ⊂ Z` with `S ∩ span(a, Y) = 0`, and returns `span(a, S)`.
pub fn witness_a4_grass(x: &GrassmannPoint, y: &GrassmannPoint, z: &GrassmannPoint) -> Result<GrassmannPoint> {
    let m = x.dim();
    let total = x.ambient_dim();
    if y.dim() != m || z.dim() != m || y.ambient_dim() != total || z.ambient_dim() != total {
        return Err(Error::DimensionMismatch("X, Y, Z must be subspaces of one Grassmann space".into()));
    }
    if m > total - m {
        return Err(Error::Precondition(format!("needs m <= n, got m = {m}, n = {}", total - m)));
    }
    if x == y {
        return Err(Error::Precondition("X = Y".into()));
    }
    if grass_intersection_dim(x, z)? != 0 || grass_intersection_dim(y, z)? != 0 {
        return Err(Error::Precondition(format!("d(X,Z) and d(Y,Z) must both equal {m}")));
    }
    let f = x.basis().field().clone();
    let a = all_vectors(&f, m)
        .skip(1)
        .map(|c| Matrix::row_vector(&f, &c).mul(x.basis()).expect("shapes agree"))
        .find(|v| !y.contains_vector(v.entries()))
        .ok_or_else(|| Error::Internal("X ⊆ Y although X ≠ Y".into()))?;
    let a_y = a.vstack(y.basis())?;
    let a_y_rank = a_y.rank();
    for coeffs in rref_bases(&f, m - 1, m) {
        let s = coeffs.mul(z.basis())?;
        // S ∩ span(a, Y) = 0  ⇔  rank(S ; a ; Y) = dim S + dim span(a, Y).
        if s.vstack(&a_y)?.rank() != (m - 1) + a_y_rank {
            continue;
        }
        return GrassmannPoint::from_basis(&a.vstack(&s)?);
    }
    Err(Error::Internal("no (m-1)-subspace of Z avoids span(a, Y)".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{enumerate_space, SpaceDescriptor};

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    fn mat(f: &FieldSpec, s: &str) -> Matrix {
        Matrix::parse(f, s).unwrap()
    }

    fn check_rect(x: &Matrix, y: &Matrix) {
        let w = witness_a4_rect(x, y).unwrap();
        let k = x.rows().min(x.cols());
        assert_eq!(w.rank(), 1);
        assert_eq!(x.sub(&w).unwrap().rank(), k - 1);
        assert_eq!(y.sub(&w).unwrap().rank(), k);
    }

    #[test]
    fn rect_examples() {
        let f3 = gf(3);
        check_rect(&mat(&f3, "1,0;0,1"), &mat(&f3, "2,0;0,2"));
        check_rect(&mat(&f3, "1,0;0,1"), &mat(&f3, "1,1;0,1"));
        check_rect(&mat(&f3, "1,0,0;0,1,0"), &mat(&f3, "0,0,1;0,1,0"));
        check_rect(&mat(&f3, "1,0;0,1;0,0"), &mat(&f3, "1,0;0,0;0,1"));
        let i = mat(&f3, "1,0;0,1");
        assert!(matches!(witness_a4_rect(&i, &i), Err(Error::Precondition(_))));
        assert!(matches!(witness_a4_rect(&i, &mat(&f3, "1,0;0,0")), Err(Error::Precondition(_))));
    }

    #[test]
    fn rect_exhaustive_on_small_space() {
        let f3 = gf(3);
        let full: Vec<Matrix> = enumerate_space(&SpaceDescriptor::rectangular(2, 2, &f3).unwrap())
            .unwrap()
            .points()
            .iter()
            .filter(|p| p.rank() == 2)
            .cloned()
            .collect();
        for x in &full {
            for y in full.iter().filter(|y| *y != x) {
                check_rect(x, y);
            }
        }
    }

    #[test]
    fn herm_examples() {
        let f5 = gf(5);
        let id = Involution::identity(&f5);
        let x = mat(&f5, "1,0;0,1");
        let y = mat(&f5, "2,0;0,3");
        let w = witness_a4_herm(&x, &y, &id).unwrap();
        assert!(w.is_hermitian(&id).unwrap());
        assert_eq!(w.rank(), 1);
        assert_eq!(x.sub(&w).unwrap().rank(), 1);
        assert_eq!(y.sub(&w).unwrap().rank(), 2);
        assert!(matches!(witness_a4_herm(&x, &x, &id), Err(Error::Precondition(_))));
        assert!(matches!(witness_a4_herm(&x, &mat(&f5, "1,0;0,0"), &id), Err(Error::Singular)));
        assert!(witness_a4_herm(&mat(&f5, "1,2;0,1"), &y, &id).is_err());

        let f16 = gf(16);
        let frob = Involution::frobenius(&f16).unwrap();
        let g = *frob.fixed_subfield().iter().find(|a| a.value() > 1).unwrap();
        let x = Matrix::identity(&f16, 2);
        let y = Matrix::diagonal(&f16, &[g, g]);
        let w = witness_a4_herm(&x, &y, &frob).unwrap();
        assert!(w.is_hermitian(&frob).unwrap());
        assert_eq!(w.rank(), 1);
        assert_eq!(x.sub(&w).unwrap().rank(), 1);
        assert_eq!(y.sub(&w).unwrap().rank(), 2);
    }

    #[test]
    fn rank_one_step_examples() {
        let f5 = gf(5);
        let id = Involution::identity(&f5);
        let space = enumerate_space(&SpaceDescriptor::symmetric(2, &f5).unwrap()).unwrap();
        let e11 = Matrix::unit(&f5, 2, 2, 0, 0);
        assert_eq!(rank1_step_neighbors(&e11, &id).unwrap(), vec![e11.clone()]);
        assert_eq!(rank1_step_neighbors_brute(&e11, &space), vec![e11]);
        let i2 = Matrix::identity(&f5, 2);
        assert_eq!(rank1_step_neighbors(&i2, &id).unwrap(), rank1_step_neighbors_brute(&i2, &space));
        assert!(matches!(rank1_step_neighbors(&Matrix::zeros(&f5, 2, 2), &id), Err(Error::Precondition(_))));
    }

    #[test]
    fn grass_examples() {
        let f2 = gf(2);
        let pt = |s: &str| GrassmannPoint::from_basis(&mat(&f2, s)).unwrap();
        let x = pt("1,0,0,0;0,1,0,0");
        let y = pt("1,0,1,0;0,1,0,1");
        let z = pt("0,0,1,0;0,0,0,1");
        let w = witness_a4_grass(&x, &y, &z).unwrap();
        assert_eq!(grass_intersection_dim(&z, &w).unwrap(), 1);
        assert_eq!(grass_intersection_dim(&x, &w).unwrap(), 1);
        assert_eq!(grass_intersection_dim(&y, &w).unwrap(), 0);
        assert!(matches!(witness_a4_grass(&x, &x, &z), Err(Error::Precondition(_))));
        let near = pt("1,0,0,0;0,0,1,0");
        assert!(matches!(witness_a4_grass(&x, &y, &near), Err(Error::Precondition(_))));
    }
}
