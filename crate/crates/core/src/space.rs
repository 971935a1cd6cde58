//! Point sets of the three geometries: rectangular matrices, Hermitian
//! (symmetric) matrices and Grassmann spaces, each enumerated in canonical
//! order with an adjacency oracle.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Involution, InvolutionKind};
use crate::matrix::{rank_of, rank_of_difference, Matrix};

/// Default cap on the number of enumerated points.
pub const DEFAULT_POINT_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Rectangular,
    Hermitian,
    Grassmann,
}

/// Which geometry, and over what.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceDescriptor {
    /// `m×n` matrices.
    Rectangular { m: usize, n: usize, field: FieldSpec },
    /// Hermitian `n×n` matrices; symmetric when the involution is the identity.
    Hermitian { n: usize, involution: Involution },
    /// `m`-subspaces of an `(m+n)`-dimensional space.
    Grassmann { m: usize, n: usize, field: FieldSpec },
}

impl SpaceDescriptor {
    pub fn rectangular(m: usize, n: usize, field: &FieldSpec) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::InvalidSpace(format!("rectangular space needs m, n >= 2, got {m}x{n}")));
        }
        Ok(SpaceDescriptor::Rectangular { m, n, field: field.clone() })
    }

    pub fn hermitian(n: usize, involution: &Involution) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpace(format!("hermitian space needs n >= 2, got {n}")));
        }
        Ok(SpaceDescriptor::Hermitian { n, involution: involution.clone() })
    }

    pub fn symmetric(n: usize, field: &FieldSpec) -> Result<Self> {
        Self::hermitian(n, &Involution::identity(field))
    }

    /// `G(m, total; F)` with `total = m + n`.
    pub fn grassmann(m: usize, total: usize, field: &FieldSpec) -> Result<Self> {
        if m < 2 || total < m + 2 {
            return Err(Error::InvalidSpace(format!("grassmann space needs m, n >= 2, got G({m},{total})")));
        }
        Ok(SpaceDescriptor::Grassmann { m, n: total - m, field: field.clone() })
    }

    pub fn kind(&self) -> SpaceKind {
        match self {
            SpaceDescriptor::Rectangular { .. } => SpaceKind::Rectangular,
            SpaceDescriptor::Hermitian { .. } => SpaceKind::Hermitian,
            SpaceDescriptor::Grassmann { .. } => SpaceKind::Grassmann,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        match self {
            SpaceDescriptor::Rectangular { field, .. } | SpaceDescriptor::Grassmann { field, .. } => field,
            SpaceDescriptor::Hermitian { involution, .. } => involution.field(),
        }
    }

    pub fn involution(&self) -> Option<&Involution> {
        match self {
            SpaceDescriptor::Hermitian { involution, .. } => Some(involution),
            _ => None,
        }
    }

    /// Shape of the matrices that represent points.
    pub fn point_shape(&self) -> (usize, usize) {
        match *self {
            SpaceDescriptor::Rectangular { m, n, .. } => (m, n),
            SpaceDescriptor::Hermitian { n, .. } => (n, n),
            SpaceDescriptor::Grassmann { m, n, .. } => (m, m + n),
        }
    }

    /// Closed-form point count.
    pub fn point_count(&self) -> u128 {
        let q = self.field().order() as u128;
        match self {
            SpaceDescriptor::Rectangular { m, n, .. } => checked_pow(q, (m * n) as u32),
            SpaceDescriptor::Hermitian { n, involution } => {
                let qf = involution.fixed_subfield().len() as u128;
                checked_pow(qf, *n as u32).saturating_mul(checked_pow(q, (n * (n - 1) / 2) as u32))
            }
            SpaceDescriptor::Grassmann { m, n, .. } => gaussian_binomial(m + n, *m, q),
        }
    }

    /// The diameter the geometry is known to have, where that is a closed
    /// form: `min(m, n)` for rectangular and Grassmann, `n` for Hermitian
    /// spaces under both restrictions, `n + 1` for symmetric matrices in
    /// characteristic 2 with even `n`.
    pub fn expected_diameter(&self) -> Option<usize> {
        match self {
            SpaceDescriptor::Rectangular { m, n, .. } | SpaceDescriptor::Grassmann { m, n, .. } => Some(*m.min(n)),
            SpaceDescriptor::Hermitian { n, involution } => {
                if involution.check_restrictions().both() {
                    Some(*n)
                } else if self.is_char2_symmetric() && n % 2 == 0 {
                    Some(n + 1)
                } else {
                    None
                }
            }
        }
    }

    pub fn is_char2_symmetric(&self) -> bool {
        matches!(self, SpaceDescriptor::Hermitian { involution, .. }
            if involution.is_identity() && involution.field().characteristic() == 2)
    }

    /// Whether `a` is a valid point representation (shape, field, predicate).
    pub fn contains(&self, a: &Matrix) -> bool {
        if !a.field().same_field(self.field()) || (a.rows(), a.cols()) != self.point_shape() {
            return false;
        }
        match self {
            SpaceDescriptor::Rectangular { .. } => true,
            SpaceDescriptor::Hermitian { involution, .. } => a.is_hermitian(involution).unwrap_or(false),
            SpaceDescriptor::Grassmann { m, .. } => is_rref_full_rank(a, *m),
        }
    }

    /// Checked adjacency: anti-reflexive, symmetric.
    pub fn adjacency(&self, a: &Matrix, b: &Matrix) -> Result<bool> {
        for p in [a, b] {
            if !self.contains(p) {
                return Err(Error::NotInSpace(format!("{p} not in {self}")));
            }
        }
        Ok(self.adjacent_unchecked(a, b))
    }

    /// Adjacency for points already known to be in the space.
    pub fn adjacent_unchecked(&self, a: &Matrix, b: &Matrix) -> bool {
        match self {
            SpaceDescriptor::Grassmann { m, .. } => stacked_rank(a, b) == m + 1,
            _ => rank_of_difference(a, b) == 1,
        }
    }

    /// The closed distance formula: `rank(a − b)` for matrix spaces,
    /// `m − dim(a ∩ b)` for Grassmann spaces.
    pub fn formula_distance(&self, a: &Matrix, b: &Matrix) -> usize {
        match self {
            SpaceDescriptor::Grassmann { m, .. } => stacked_rank(a, b) - m,
            _ => rank_of_difference(a, b),
        }
    }
}

fn checked_pow(base: u128, exp: u32) -> u128 {
    base.checked_pow(exp).unwrap_or(u128::MAX)
}

/// Gaussian binomial `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(checked_pow(q, (n - i) as u32) - 1);
        den = den.saturating_mul(checked_pow(q, (i + 1) as u32) - 1);
    }
    num / den
}

fn stacked_rank(a: &Matrix, b: &Matrix) -> usize {
    let mut buf: Vec<FieldElement> = Vec::with_capacity(a.entries().len() + b.entries().len());
    buf.extend_from_slice(a.entries());
    buf.extend_from_slice(b.entries());
    rank_of(a.field(), a.rows() + b.rows(), a.cols(), &mut buf)
}

fn is_rref_full_rank(a: &Matrix, m: usize) -> bool {
    let (r, pivots) = a.rref();
    pivots.len() == m && &r == a
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::Rectangular { m, n, field } => write!(f, "rect:{m}x{n}:{field}"),
            SpaceDescriptor::Hermitian { n, involution } if involution.is_identity() => {
                write!(f, "sym:{n}:{}", involution.field())
            }
            SpaceDescriptor::Hermitian { n, involution } => {
                write!(f, "herm:{n}:{}:{}", involution.field(), involution.kind())
            }
            SpaceDescriptor::Grassmann { m, n, field } => write!(f, "grass:{m}:{}:{field}", m + n),
        }
    }
}

impl FromStr for SpaceDescriptor {
    type Err = Error;

    /// Accepts `rect:MxN:GF(q)` (also `×`), `herm:N:GF(q):frob|id`,
    /// `sym:N:GF(q)` and `grass:M:TOTAL:GF(q)` (TOTAL may be parenthesized).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad space descriptor {s:?}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| -> Result<usize> {
            t.trim().trim_start_matches('(').trim_end_matches(')').parse().map_err(|_| bad())
        };
        match parts.as_slice() {
            ["rect", dims, field] => {
                let (m, n) = dims.split_once(['x', '×']).ok_or_else(bad)?;
                SpaceDescriptor::rectangular(num(m)?, num(n)?, &field.parse()?)
            }
            ["sym", n, field] => SpaceDescriptor::symmetric(num(n)?, &field.parse()?),
            ["herm", n, field, inv] => {
                let field: FieldSpec = field.parse()?;
                let kind: InvolutionKind = inv.parse()?;
                SpaceDescriptor::hermitian(num(n)?, &Involution::new(&field, kind)?)
            }
            ["herm", n, field] => {
                let field: FieldSpec = field.parse()?;
                SpaceDescriptor::hermitian(num(n)?, &Involution::frobenius(&field)?)
            }
            ["grass", m, total, field] => SpaceDescriptor::grassmann(num(m)?, num(total)?, &field.parse()?),
            _ => Err(bad()),
        }
    }
}

/// An `m`-subspace given by its reduced-row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrassmannPoint(Matrix);

impl GrassmannPoint {
    /// Canonicalizes any full-row-rank basis matrix.
    pub fn from_basis(basis: &Matrix) -> Result<Self> {
        let (r, pivots) = basis.rref();
        if pivots.len() != basis.rows() {
            return Err(Error::Precondition(format!("basis {basis} does not have full row rank")));
        }
        Ok(GrassmannPoint(r))
    }

    /// Spans the given vectors (rows); they need not be independent.
    pub fn span(field: &FieldSpec, vectors: &[Vec<FieldElement>]) -> Result<Self> {
        let cols = vectors.first().map_or(0, |v| v.len());
        let data: Vec<FieldElement> = vectors.iter().flatten().copied().collect();
        let m = Matrix::new(field, vectors.len(), cols, data)?;
        let (r, pivots) = m.rref();
        Ok(GrassmannPoint(r.select_rows(&(0..pivots.len()).collect::<Vec<_>>())))
    }

    pub fn basis(&self) -> &Matrix {
        &self.0
    }

    pub fn into_basis(self) -> Matrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.cols()
    }

    /// Whether the row vector `v` lies in the subspace.
    pub fn contains_vector(&self, v: &[FieldElement]) -> bool {
        let row = Matrix::row_vector(self.0.field(), v);
        self.0.vstack(&row).map(|s| s.rank() == self.dim()).unwrap_or(false)
    }
}

/// `dim(a ∩ b) = rank(a) + rank(b) − rank(stack)`.
pub fn grass_intersection_dim(a: &GrassmannPoint, b: &GrassmannPoint) -> Result<usize> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions {} and {}",
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    let stack = a.0.vstack(&b.0)?;
    Ok(a.dim() + b.dim() - stack.rank())
}

/// An enumerated space: points in lexicographic order of their canonical
/// row-major encoding, vertex id = position.
#[derive(Clone, Debug)]
pub struct PointSet {
    descriptor: SpaceDescriptor,
    points: Vec<Matrix>,
}

impl PointSet {
    pub fn descriptor(&self) -> &SpaceDescriptor {
        &self.descriptor
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Matrix] {
        &self.points
    }

    pub fn point(&self, v: usize) -> &Matrix {
        &self.points[v]
    }

    /// Vertex id of a point. Grassmann bases are canonicalized first.
    pub fn index_of(&self, a: &Matrix) -> Option<usize> {
        if (a.rows(), a.cols()) != self.descriptor.point_shape() || !a.field().same_field(self.descriptor.field()) {
            return None;
        }
        let key = match self.descriptor {
            SpaceDescriptor::Grassmann { .. } => GrassmannPoint::from_basis(a).ok()?.into_basis(),
            _ => a.clone(),
        };
        let v = self.points.binary_search_by(|p| p.entries().cmp(key.entries())).ok()?;
        Some(v)
    }

    pub fn require_index(&self, a: &Matrix) -> Result<usize> {
        self.index_of(a).ok_or_else(|| Error::NotInSpace(format!("{a} not in {}", self.descriptor)))
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.descriptor.adjacent_unchecked(&self.points[u], &self.points[v])
    }

    pub fn formula_distance(&self, u: usize, v: usize) -> usize {
        self.descriptor.formula_distance(&self.points[u], &self.points[v])
    }

    pub fn label(&self, v: usize) -> String {
        self.points[v].to_string()
    }
}

pub fn enumerate_space(d: &SpaceDescriptor) -> Result<PointSet> {
    enumerate_space_with_cap(d, DEFAULT_POINT_CAP)
}

pub fn enumerate_space_with_cap(d: &SpaceDescriptor, cap: usize) -> Result<PointSet> {
    let count = d.point_count();
    if count > cap as u128 {
        return Err(Error::PointCapExceeded { count, cap });
    }
    let mut points = match d {
        SpaceDescriptor::Rectangular { m, n, field } => all_matrices(field, *m, *n),
        SpaceDescriptor::Hermitian { n, involution } => hermitian_matrices(*n, involution),
        SpaceDescriptor::Grassmann { m, n, field } => rref_bases(field, *m, m + n),
    };
    points.sort_unstable();
    debug_assert_eq!(points.len() as u128, count);
    Ok(PointSet { descriptor: d.clone(), points })
}

/// Every `rows×cols` matrix, already in lexicographic order.
fn all_matrices(field: &FieldSpec, rows: usize, cols: usize) -> Vec<Matrix> {
    let len = rows * cols;
    let q = field.order();
    let total = q.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; len];
    for _ in 0..total {
        let data = digits.iter().map(|&d| FieldElement::from_raw(d as u8)).collect();
        out.push(Matrix::from_raw_parts(field, rows, cols, data));
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    out
}

fn hermitian_matrices(n: usize, sigma: &Involution) -> Vec<Matrix> {
    let field = sigma.field();
    let fixed = sigma.fixed_subfield();
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let q = field.order();
    let diag_count = fixed.len().pow(n as u32);
    let upper_count = q.pow(upper.len() as u32);
    let mut out = Vec::with_capacity(diag_count * upper_count);
    for dcode in 0..diag_count {
        let mut base = Matrix::zeros(field, n, n);
        let mut c = dcode;
        for i in 0..n {
            base.set(i, i, fixed[c % fixed.len()]);
            c /= fixed.len();
        }
        for ucode in 0..upper_count {
            let mut a = base.clone();
            let mut c = ucode;
            for &(i, j) in &upper {
                let v = FieldElement::from_raw((c % q) as u8);
                c /= q;
                a.set(i, j, v);
                a.set(j, i, sigma.apply(v));
            }
            out.push(a);
        }
    }
    out
}

/// Every `m×total` RREF matrix with `m` pivots.
pub(crate) fn rref_bases(field: &FieldSpec, m: usize, total: usize) -> Vec<Matrix> {
    let q = field.order();
    let mut out = Vec::new();
    for pivots in combinations(total, m) {
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| {
                let pv = &pivots;
                (pv[i] + 1..total).filter(move |j| !pv.contains(j)).map(move |j| (i, j))
            })
            .collect();
        let mut base = Matrix::zeros(field, m, total);
        for (i, &p) in pivots.iter().enumerate() {
            base.set(i, p, FieldElement::ONE);
        }
        let count = q.pow(free.len() as u32);
        for code in 0..count {
            let mut a = base.clone();
            let mut c = code;
            for &(i, j) in &free {
                a.set(i, j, FieldElement::from_raw((c % q) as u8));
                c /= q;
            }
            out.push(a);
        }
    }
    out
}

/// All `k`-subsets of `0..n`, as increasing vectors.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    fn space(s: &str) -> PointSet {
        enumerate_space(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn descriptor_parsing() {
        let d: SpaceDescriptor = "rect:2x3:GF(3)".parse().unwrap();
        assert_eq!(d.point_shape(), (2, 3));
        assert_eq!(d.to_string(), "rect:2x3:GF(3)");
        let d: SpaceDescriptor = "rect:2×2:GF(3)".parse().unwrap();
        assert_eq!(d.to_string(), "rect:2x2:GF(3)");
        let d: SpaceDescriptor = "herm:2:GF(16):frob".parse().unwrap();
        assert_eq!(d.to_string(), "herm:2:GF(16):frob");
        let d: SpaceDescriptor = "sym:2:GF(3)".parse().unwrap();
        assert_eq!(d.to_string(), "sym:2:GF(3)");
        assert_eq!("herm:2:GF(5):id".parse::<SpaceDescriptor>().unwrap().to_string(), "sym:2:GF(5)");
        let d: SpaceDescriptor = "grass:2:(4):GF(2)".parse().unwrap();
        assert_eq!(d.to_string(), "grass:2:4:GF(2)");

        for bad in ["rect:1x2:GF(3)", "sym:1:GF(3)", "grass:2:3:GF(2)", "herm:2:GF(3):frob", "cube:3", "rect:2x2:GF(6)"]
        {
            assert!(bad.parse::<SpaceDescriptor>().is_err(), "{bad}");
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(space("sym:2:GF(3)").len(), 27);
        assert_eq!(space("sym:2:GF(2)").len(), 8);
        assert_eq!(space("grass:2:4:GF(2)").len(), 35);
    }

    #[test]
    fn point_cap_is_enforced() {
        let d: SpaceDescriptor = "rect:3x3:GF(5)".parse().unwrap();
        assert!(matches!(enumerate_space(&d), Err(Error::PointCapExceeded { .. })));
        let d: SpaceDescriptor = "sym:2:GF(3)".parse().unwrap();
        assert!(matches!(enumerate_space_with_cap(&d, 26), Err(Error::PointCapExceeded { count: 27, .. })));
    }

    #[test]
    fn counts_match_closed_forms() {
        for s in [
            "rect:2x2:GF(2)",
            "rect:2x2:GF(3)",
            "rect:2x3:GF(3)",
            "rect:3x2:GF(2)",
            "sym:2:GF(2)",
            "sym:3:GF(2)",
            "sym:2:GF(5)",
            "herm:2:GF(4):frob",
            "herm:2:GF(16):frob",
            "herm:3:GF(4):frob",
            "grass:2:4:GF(2)",
            "grass:2:5:GF(2)",
            "grass:2:4:GF(3)",
            "grass:3:5:GF(2)",
        ] {
            let ps = space(s);
            assert_eq!(ps.len() as u128, ps.descriptor().point_count(), "{s}");
            let uniq: BTreeSet<_> = ps.points().iter().map(|p| p.entries().to_vec()).collect();
            assert_eq!(uniq.len(), ps.len(), "{s} has duplicates");
            assert!(ps.points().windows(2).all(|w| w[0].entries() < w[1].entries()), "{s} not sorted");
            assert!(ps.points().iter().all(|p| ps.descriptor().contains(p)), "{s}");
        }
        assert_eq!("herm:2:GF(16):frob".parse::<SpaceDescriptor>().unwrap().point_count(), 256);
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(5, 2, 2), 155);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(gaussian_binomial(5, 0, 7), 1);
        assert_eq!(gaussian_binomial(3, 4, 2), 0);
    }

    /// Independent count: RREF every full-rank `m×total` matrix and dedup.
    #[test]
    fn grassmann_enumeration_matches_brute_force() {
        for (m, total, q) in [(2, 4, 2u64), (2, 5, 2)] {
            let f = gf(q);
            let brute: BTreeSet<Vec<FieldElement>> = all_matrices(&f, m, total)
                .into_iter()
                .filter(|a| a.rank() == m)
                .map(|a| a.rref().0.entries().to_vec())
                .collect();
            let ps = enumerate_space(&SpaceDescriptor::grassmann(m, total, &f).unwrap()).unwrap();
            let ours: BTreeSet<Vec<FieldElement>> = ps.points().iter().map(|p| p.entries().to_vec()).collect();
            assert_eq!(brute, ours);
        }
    }

    #[test]
    fn adjacency_examples() {
        let f3 = gf(3);
        let d = SpaceDescriptor::rectangular(2, 2, &f3).unwrap();
        let zero = Matrix::zeros(&f3, 2, 2);
        let e11 = Matrix::unit(&f3, 2, 2, 0, 0);
        assert!(d.adjacency(&zero, &e11).unwrap());
        assert!(!d.adjacency(&e11, &e11).unwrap());
        assert!(d.adjacency(&zero, &Matrix::zeros(&f3, 2, 3)).is_err());

        let f2 = gf(2);
        let g = SpaceDescriptor::grassmann(2, 4, &f2).unwrap();
        let w1 = Matrix::parse(&f2, "1,0,0,0;0,1,0,0").unwrap();
        let w2 = Matrix::parse(&f2, "1,0,0,0;0,0,1,0").unwrap();
        assert!(g.adjacency(&w1, &w2).unwrap());
        assert!(!g.adjacency(&w1, &w1).unwrap());
        // Not in RREF.
        let bad = Matrix::parse(&f2, "0,1,0,0;1,0,0,0").unwrap();
        assert!(g.adjacency(&w1, &bad).is_err());
    }

    #[test]
    fn intersection_dim_examples() {
        let f2 = gf(2);
        let pt = |s: &str| GrassmannPoint::from_basis(&Matrix::parse(&f2, s).unwrap()).unwrap();
        let w = pt("1,0,0,0;0,1,0,0");
        assert_eq!(grass_intersection_dim(&w, &w).unwrap(), 2);
        assert_eq!(grass_intersection_dim(&w, &pt("0,0,1,0;0,0,0,1")).unwrap(), 0);
        assert_eq!(grass_intersection_dim(&w, &pt("1,0,0,0;0,0,1,0")).unwrap(), 1);
        let other = pt("1,0,0,0,0;0,1,0,0,0");
        assert!(grass_intersection_dim(&w, &other).is_err());
    }

    #[test]
    fn adjacency_is_symmetric_and_antireflexive() {
        for s in ["rect:2x2:GF(3)", "sym:2:GF(2)", "herm:2:GF(4):frob", "grass:2:4:GF(2)"] {
            let ps = space(s);
            for u in 0..ps.len() {
                assert!(!ps.adjacent(u, u));
                for v in 0..u {
                    assert_eq!(ps.adjacent(u, v), ps.adjacent(v, u), "{s}");
                }
            }
        }
    }

    #[test]
    fn index_lookup() {
        let ps = space("grass:2:4:GF(2)");
        let f2 = gf(2);
        let unreduced = Matrix::parse(&f2, "1,1,0,0;1,0,0,0").unwrap();
        let v = ps.index_of(&unreduced).unwrap();
        assert_eq!(ps.point(v), &Matrix::parse(&f2, "1,0,0,0;0,1,0,0").unwrap());
        assert_eq!(ps.index_of(&Matrix::zeros(&f2, 2, 4)), None);
        let ps = space("sym:2:GF(3)");
        assert_eq!(ps.index_of(&Matrix::zeros(&gf(3), 2, 2)), Some(0));
        assert_eq!(ps.index_of(&Matrix::parse(&gf(3), "0,1;0,0").unwrap()), None);
    }
}
