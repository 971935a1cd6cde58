//! Point maps between spaces: the transformation groups as generators,
//! the diameter-pair preservation test, the isomorphism test, and the two
//! counterexample constructions (antipodal swap, alternate shift).

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceIndex, Graph};
use crate::matrix::Matrix;
use crate::space::{GrassmannPoint, PointSet, SpaceDescriptor};

/// `table[i]` is the image of source vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    table: Vec<u32>,
    target_len: usize,
}

impl PointMap {
    pub fn new(table: Vec<u32>, target_len: usize) -> Result<Self> {
        if let Some((i, &t)) = table.iter().enumerate().find(|(_, &t)| t as usize >= target_len) {
            return Err(Error::MapFile(format!("vertex {i} maps to {t}, outside 0..{target_len}")));
        }
        Ok(PointMap { table, target_len })
    }

    pub fn identity(n: usize) -> Self {
        PointMap { table: (0..n as u32).collect(), target_len: n }
    }

    /// The permutation exchanging `a` and `b` on `0..n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut m = Self::identity(n);
        m.table.swap(a, b);
        m
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn source_len(&self) -> usize {
        self.table.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    #[inline]
    pub fn image(&self, v: usize) -> usize {
        self.table[v] as usize
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &PointMap) -> Result<PointMap> {
        if self.target_len != then.source_len() {
            return Err(Error::DimensionMismatch("maps do not compose".into()));
        }
        Ok(PointMap {
            table: self.table.iter().map(|&v| then.table[v as usize]).collect(),
            target_len: then.target_len,
        })
    }

    fn hit_counts(&self) -> Vec<u32> {
        let mut hits = vec![0u32; self.target_len];
        for &t in &self.table {
            hits[t as usize] += 1;
        }
        hits
    }

    pub fn is_injective(&self) -> bool {
        self.hit_counts().iter().all(|&h| h <= 1)
    }

    pub fn is_surjective(&self) -> bool {
        self.hit_counts().iter().all(|&h| h >= 1)
    }

    pub fn is_bijective(&self) -> bool {
        self.source_len() == self.target_len && self.hit_counts().iter().all(|&h| h == 1)
    }
}

fn map_points(space: &PointSet, f: impl Fn(&Matrix) -> Result<Matrix> + Sync) -> Result<PointMap> {
    let table = space
        .points()
        .par_iter()
        .map(|x| {
            let y = f(x)?;
            space
                .index_of(&y)
                .map(|v| v as u32)
                .ok_or_else(|| Error::Internal(format!("image {y} of {x} left {}", space.descriptor())))
        })
        .collect::<Result<Vec<u32>>>()?;
    PointMap::new(table, space.len())
}

fn require_invertible(p: &Matrix, size: usize, name: &str) -> Result<()> {
    if p.rows() != size || p.cols() != size {
        return Err(Error::DimensionMismatch(format!("{name} must be {size}x{size}")));
    }
    if p.rank() != size {
        return Err(Error::Singular);
    }
    Ok(())
}

/// `X ↦ P X Q + R` on a rectangular space.
pub fn make_rect_transform(p: &Matrix, q: &Matrix, r: &Matrix, space: &PointSet) -> Result<PointMap> {
    let SpaceDescriptor::Rectangular { m, n, .. } = *space.descriptor() else {
        return Err(Error::InvalidSpace("rectangular transform on a non-rectangular space".into()));
    };
    require_invertible(p, m, "P")?;
    require_invertible(q, n, "Q")?;
    if !space.descriptor().contains(r) {
        return Err(Error::NotInSpace(format!("R = {r}")));
    }
    map_points(space, |x| p.mul(x)?.mul(q)?.add(r))
}

/// `X ↦ P X σ(P)ᵗ + H` on a Hermitian space.
pub fn make_herm_transform(p: &Matrix, h: &Matrix, space: &PointSet) -> Result<PointMap> {
    let SpaceDescriptor::Hermitian { n, ref involution } = *space.descriptor() else {
        return Err(Error::InvalidSpace("hermitian transform on a non-hermitian space".into()));
    };
    require_invertible(p, n, "P")?;
    if (h.rows(), h.cols()) != (n, n) || !h.field().same_field(involution.field()) {
        return Err(Error::DimensionMismatch(format!("H must be {n}x{n} over {}", involution.field())));
    }
    if !h.is_hermitian(involution)? {
        return Err(Error::NotHermitian);
    }
    let pt = p.conj_transpose(involution);
    map_points(space, |x| p.mul(x)?.mul(&pt)?.add(h))
}

/// `X ↦ rowspace(X P)` on a Grassmann space, `P ∈ GL(m + n)`.
pub fn make_grass_transform(p: &Matrix, space: &PointSet) -> Result<PointMap> {
    let SpaceDescriptor::Grassmann { m, n, .. } = *space.descriptor() else {
        return Err(Error::InvalidSpace("grassmann transform on a non-grassmann space".into()));
    };
    require_invertible(p, m + n, "P")?;
    map_points(space, |x| Ok(GrassmannPoint::from_basis(&x.mul(p)?)?.into_basis()))
}

/// A pair on which a map breaks the property being tested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairViolation {
    pub x: usize,
    pub y: usize,
    pub d_src: u8,
    pub d_tgt: u8,
}

#[derive(Clone, Debug, Serialize)]
pub struct DmTreuVerdict {
    pub holds: bool,
    pub first_violation: Option<PairViolation>,
}

/// `d(x, y) = diam ⇔ d(xφ, yφ) = diam′` over all ordered pairs; both
/// directions checked without assuming the map is a bijection.
pub fn check_dm_treu(map: &PointMap, src: &DistanceIndex, tgt: &DistanceIndex) -> Result<DmTreuVerdict> {
    if map.source_len() != src.len() || map.target_len() != tgt.len() {
        return Err(Error::DimensionMismatch("map does not match the indices".into()));
    }
    let (ds, dt) = (src.diameter() as u8, tgt.diameter() as u8);
    let n = src.len();
    let first_violation = (0..n).into_par_iter().find_map_first(|x| {
        let fx = map.image(x);
        let src_row = src.row(x);
        let tgt_row = tgt.row(fx);
        (0..n).find_map(|y| {
            let a = src_row[y];
            let b = tgt_row[map.image(y)];
            ((a == ds) != (b == dt)).then_some(PairViolation { x, y, d_src: a, d_tgt: b })
        })
    });
    Ok(DmTreuVerdict { holds: first_violation.is_none(), first_violation })
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoVerdict {
    pub holds: bool,
    pub bijective: bool,
    /// Pair whose adjacency is not preserved; distances are 1 for adjacent
    /// and 0 otherwise.
    pub first_violation: Option<PairViolation>,
}

/// Bijective and `x ~ y ⇔ xφ ~ yφ` for all pairs.
pub fn is_isomorphism(map: &PointMap, src: &Graph, tgt: &Graph) -> Result<IsoVerdict> {
    if map.source_len() != src.len() || map.target_len() != tgt.len() {
        return Err(Error::DimensionMismatch("map does not match the graphs".into()));
    }
    let bijective = map.is_bijective();
    let n = src.len();
    let first_violation = (0..n).into_par_iter().find_map_first(|x| {
        let fx = map.image(x);
        (0..n).find_map(|y| {
            let a = src.is_adjacent(x, y);
            let b = tgt.is_adjacent(fx, map.image(y));
            (a != b).then_some(PairViolation { x, y, d_src: a as u8, d_tgt: b as u8 })
        })
    });
    Ok(IsoVerdict { holds: bijective && first_violation.is_none(), bijective, first_violation })
}

/// The transposition of `a` with its unique antipode `a*`, valid when
/// `a*` is the only vertex at diameter distance from `a` and vice versa.
pub fn antipodal_swap(index: &DistanceIndex, a: usize) -> Result<PointMap> {
    let diam = index.diameter();
    let shell = index.shell(a, diam);
    let [star] = shell[..] else {
        return Err(Error::Precondition(format!(
            "vertex {a} has {} vertices at distance {diam}, need exactly one",
            shell.len()
        )));
    };
    if index.shell(star, diam) != [a] {
        return Err(Error::Precondition(format!("antipode {star} of {a} has other antipodes")));
    }
    Ok(PointMap::transposition(index.len(), a, star))
}

/// `X ↦ X + K` on alternate `X`, identity elsewhere, on a symmetric space
/// of even size in characteristic 2. `K` must be alternate and nonzero.
pub fn alternate_shift(space: &PointSet, k: &Matrix) -> Result<PointMap> {
    let d = space.descriptor();
    let SpaceDescriptor::Hermitian { n, .. } = *d else {
        return Err(Error::Precondition("alternate shift needs a symmetric space".into()));
    };
    if !d.is_char2_symmetric() {
        return Err(Error::Precondition("alternate shift needs symmetric matrices in characteristic 2".into()));
    }
    if n % 2 != 0 {
        return Err(Error::Precondition(format!("alternate shift needs even n, got {n}")));
    }
    if !d.contains(k) {
        return Err(Error::NotInSpace(format!("K = {k}")));
    }
    if !k.is_alternate()? || k.is_zero() {
        return Err(Error::Precondition("K must be alternate and nonzero".into()));
    }
    map_points(space, |x| if x.is_alternate()? { x.add(k) } else { Ok(x.clone()) })
}

/// Line-oriented map file: `source <descriptor>`, `target <descriptor>`,
/// then one `src,dst` pair per line. `#` starts a comment.
pub fn render_map(map: &PointMap, source: &SpaceDescriptor, target: &SpaceDescriptor) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "source {source}");
    let _ = writeln!(out, "target {target}");
    for (i, &t) in map.table.iter().enumerate() {
        let _ = writeln!(out, "{i},{t}");
    }
    out
}

pub fn save_map(path: &Path, map: &PointMap, source: &SpaceDescriptor, target: &SpaceDescriptor) -> Result<()> {
    std::fs::write(path, render_map(map, source, target))?;
    Ok(())
}

/// Parses a map file against the spaces it claims to connect.
pub fn parse_map(text: &str, src: &PointSet, tgt: &PointSet) -> Result<PointMap> {
    let mut source: Option<SpaceDescriptor> = None;
    let mut target: Option<SpaceDescriptor> = None;
    let mut table: Vec<Option<u32>> = vec![None; src.len()];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::MapFile(format!("line {}: {msg}", lineno + 1));
        if let Some(rest) = line.strip_prefix("source") {
            source = Some(rest.trim().parse().map_err(|e| err(format!("{e}")))?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("target") {
            target = Some(rest.trim().parse().map_err(|e| err(format!("{e}")))?);
            continue;
        }
        if source.is_none() || target.is_none() {
            return Err(err("entries before the source/target header".into()));
        }
        let (a, b) = line.split_once(',').ok_or_else(|| err(format!("expected src,dst, got {line:?}")))?;
        let a: usize = a.trim().parse().map_err(|_| err(format!("bad source index {a:?}")))?;
        let b: u32 = b.trim().parse().map_err(|_| err(format!("bad target index {b:?}")))?;
        if a >= src.len() {
            return Err(err(format!("source index {a} out of range 0..{}", src.len())));
        }
        if b as usize >= tgt.len() {
            return Err(err(format!("target index {b} out of range 0..{}", tgt.len())));
        }
        if table[a].replace(b).is_some() {
            return Err(err(format!("source index {a} assigned twice")));
        }
    }
    match (&source, &target) {
        (Some(s), Some(t)) => {
            if s != src.descriptor() || t != tgt.descriptor() {
                return Err(Error::MapFile(format!(
                    "header names {s} -> {t}, expected {} -> {}",
                    src.descriptor(),
                    tgt.descriptor()
                )));
            }
        }
        _ => return Err(Error::MapFile("missing source/target header".into())),
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(i, t)| t.ok_or_else(|| Error::MapFile(format!("source vertex {i} has no image"))))
        .collect::<Result<Vec<u32>>>()?;
    PointMap::new(table, tgt.len())
}

pub fn load_map(path: &Path, src: &PointSet, tgt: &PointSet) -> Result<PointMap> {
    parse_map(&std::fs::read_to_string(path)?, src, tgt)
}

/// Full verdict for one map, as reported by the map tester.
#[derive(Clone, Debug, Serialize)]
pub struct MapReport {
    pub map_source: String,
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
    pub dm_treu: bool,
    pub isomorphism: bool,
    pub first_violation: Option<PairViolation>,
    pub first_adjacency_violation: Option<PairViolation>,
}

pub fn test_map(map_source: &str, map: &PointMap, src: &DistanceIndex, tgt: &DistanceIndex) -> Result<MapReport> {
    let dm = check_dm_treu(map, src, tgt)?;
    let iso = is_isomorphism(map, src.graph(), tgt.graph())?;
    Ok(MapReport {
        map_source: map_source.to_string(),
        injective: map.is_injective(),
        surjective: map.is_surjective(),
        bijective: iso.bijective,
        dm_treu: dm.holds,
        isomorphism: iso.holds,
        first_violation: dm.first_violation,
        first_adjacency_violation: iso.first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::graph::build_index;
    use crate::space::enumerate_space;

    fn setup(s: &str) -> (PointSet, DistanceIndex) {
        let ps = enumerate_space(&s.parse().unwrap()).unwrap();
        let idx = build_index(&ps).unwrap();
        (ps, idx)
    }

    fn mat(f: &FieldSpec, s: &str) -> Matrix {
        Matrix::parse(f, s).unwrap()
    }

    #[test]
    fn rect_transform_examples() {
        let (ps, idx) = setup("rect:2x2:GF(3)");
        let f3 = ps.descriptor().field().clone();
        let i = Matrix::identity(&f3, 2);
        let zero = Matrix::zeros(&f3, 2, 2);
        assert_eq!(make_rect_transform(&i, &i, &zero, &ps).unwrap(), PointMap::identity(81));

        let t = make_rect_transform(&i, &i, &Matrix::unit(&f3, 2, 2, 0, 0), &ps).unwrap();
        assert!(t.is_bijective());
        assert!((0..81).all(|v| t.image(v) != v));

        let s = make_rect_transform(&mat(&f3, "2,0;0,1"), &i, &zero, &ps).unwrap();
        assert!(s.is_bijective());
        assert!(is_isomorphism(&s, idx.graph(), idx.graph()).unwrap().holds);
        assert!(check_dm_treu(&s, &idx, &idx).unwrap().holds);

        assert!(matches!(make_rect_transform(&mat(&f3, "1,1;1,1"), &i, &zero, &ps), Err(Error::Singular)));
        assert!(make_rect_transform(&Matrix::identity(&f3, 3), &i, &zero, &ps).is_err());
    }

    #[test]
    fn herm_transform_examples() {
        let (ps, idx) = setup("sym:2:GF(5)");
        let f5 = ps.descriptor().field().clone();
        let i = Matrix::identity(&f5, 2);
        let zero = Matrix::zeros(&f5, 2, 2);
        assert_eq!(make_herm_transform(&i, &zero, &ps).unwrap(), PointMap::identity(125));
        let t = make_herm_transform(&i, &Matrix::unit(&f5, 2, 2, 0, 0), &ps).unwrap();
        assert!(t.is_bijective());
        assert!(is_isomorphism(&t, idx.graph(), idx.graph()).unwrap().holds);
        assert!(matches!(make_herm_transform(&i, &mat(&f5, "0,1;0,0"), &ps), Err(Error::NotHermitian)));
        assert!(matches!(make_herm_transform(&mat(&f5, "1,2;2,4"), &zero, &ps), Err(Error::Singular)));
    }

    #[test]
    fn dm_treu_rejects_adjacent_transposition() {
        let (_, idx) = setup("rect:2x2:GF(3)");
        let b = idx.graph().neighbors(0)[0] as usize;
        let t = PointMap::transposition(idx.len(), 0, b);
        let v = check_dm_treu(&t, &idx, &idx).unwrap();
        assert!(!v.holds);
        let pv = v.first_violation.unwrap();
        assert_ne!(pv.d_src == 2, pv.d_tgt == 2);
    }

    #[test]
    fn antipodal_swap_examples() {
        let (ps, idx) = setup("sym:2:GF(2)");
        let f2 = ps.descriptor().field().clone();
        let k = ps.index_of(&mat(&f2, "0,1;1,0")).unwrap();
        let swap = antipodal_swap(&idx, 0).unwrap();
        assert_eq!(swap, PointMap::transposition(8, 0, k));
        assert!(check_dm_treu(&swap, &idx, &idx).unwrap().holds);
        assert!(!is_isomorphism(&swap, idx.graph(), idx.graph()).unwrap().holds);

        let e11 = ps.index_of(&Matrix::unit(&f2, 2, 2, 0, 0)).unwrap();
        let swap = antipodal_swap(&idx, e11).unwrap();
        let star = swap.image(e11);
        assert_eq!(idx.d(e11, star), 3);

        let (_, idx3) = setup("sym:2:GF(3)");
        assert!(matches!(antipodal_swap(&idx3, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn alternate_shift_examples() {
        let (ps, idx) = setup("sym:2:GF(2)");
        let f2 = ps.descriptor().field().clone();
        let k = mat(&f2, "0,1;1,0");
        let phi = alternate_shift(&ps, &k).unwrap();
        let kv = ps.index_of(&k).unwrap();
        assert_eq!(phi, PointMap::transposition(8, 0, kv));
        assert!(check_dm_treu(&phi, &idx, &idx).unwrap().holds);
        assert!(!is_isomorphism(&phi, idx.graph(), idx.graph()).unwrap().holds);

        assert!(matches!(alternate_shift(&ps, &Matrix::zeros(&f2, 2, 2)), Err(Error::Precondition(_))));
        assert!(alternate_shift(&ps, &Matrix::unit(&f2, 2, 2, 0, 0)).is_err());
        let (ps3, _) = setup("sym:3:GF(2)");
        let k3 = mat(&f2, "0,1,0;1,0,0;0,0,0");
        assert!(matches!(alternate_shift(&ps3, &k3), Err(Error::Precondition(_))));
        let (ps5, _) = setup("sym:2:GF(5)");
        let f5 = ps5.descriptor().field().clone();
        assert!(matches!(alternate_shift(&ps5, &mat(&f5, "0,1;4,0")), Err(Error::Precondition(_))));
    }

    #[test]
    fn map_files() {
        let (ps, idx) = setup("sym:2:GF(2)");
        let swap = antipodal_swap(&idx, 0).unwrap();
        let text = render_map(&swap, ps.descriptor(), ps.descriptor());
        assert!(text.starts_with("source sym:2:GF(2)\ntarget sym:2:GF(2)\n"));
        assert_eq!(parse_map(&text, &ps, &ps).unwrap(), swap);

        let id = render_map(&PointMap::identity(8), ps.descriptor(), ps.descriptor());
        assert_eq!(parse_map(&id, &ps, &ps).unwrap(), PointMap::identity(8));

        let mut bad = String::from("source sym:2:GF(2)\ntarget sym:2:GF(2)\n");
        for i in 0..8 {
            bad.push_str(&format!("{i},{}\n", if i == 1 { 0 } else { i }));
        }
        let m = parse_map(&bad, &ps, &ps).unwrap();
        assert!(!m.is_injective() && !m.is_surjective());

        let missing = "source sym:2:GF(2)\ntarget sym:2:GF(2)\n0,0\n";
        assert!(matches!(parse_map(missing, &ps, &ps), Err(Error::MapFile(_))));
        let out_of_range = format!("{id}0,8\n").replacen("0,0\n", "", 1);
        assert!(matches!(parse_map(&out_of_range, &ps, &ps), Err(Error::MapFile(_))));
        assert!(matches!(parse_map("0,1\n", &ps, &ps), Err(Error::MapFile(_))));
        let twice = format!("{id}3,3\n");
        assert!(matches!(parse_map(&twice, &ps, &ps), Err(Error::MapFile(_))));
        let wrong_header = id.replace("source sym:2:GF(2)", "source sym:2:GF(3)");
        assert!(matches!(parse_map(&wrong_header, &ps, &ps), Err(Error::MapFile(_))));
    }
}
