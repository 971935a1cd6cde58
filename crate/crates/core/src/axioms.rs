//! Exhaustive checkers for the geodesic axioms (A1)–(A5) and the
//! distance-only adjacency criterion.
//!
//! All checkers read a frozen [`DistanceIndex`]. Quantifiers are scanned in
//! vertex order; the reported counterexample is the first failure in that
//! order regardless of how the scan is scheduled.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DistanceIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    A1,
    A2,
    A3,
    A4,
    A5,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4, Axiom::A5];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" => Ok(Axiom::A1),
            "A2" => Ok(Axiom::A2),
            "A3" => Ok(Axiom::A3),
            "A4" => Ok(Axiom::A4),
            "A5" => Ok(Axiom::A5),
            other => Err(Error::Parse(format!("unknown axiom {other:?}"))),
        }
    }
}

/// Parses `"A1..A5"`, `"A1,A3"`, `"A2-A4"` or `"all"`.
pub fn parse_axiom_set(s: &str) -> Result<Vec<Axiom>> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("all") {
        return Ok(Axiom::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let range = part.split_once("..").or_else(|| part.split_once('-'));
        match range {
            Some((a, b)) => {
                let (a, b): (Axiom, Axiom) = (a.parse()?, b.parse()?);
                out.extend(Axiom::ALL.iter().copied().filter(|x| *x >= a && *x <= b));
            }
            None => out.push(part.parse()?),
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A vertex with the role it plays in an axiom's quantifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoleVertex {
    pub role: &'static str,
    pub vertex: usize,
}

fn roles(pairs: &[(&'static str, usize)]) -> Vec<RoleVertex> {
    pairs.iter().map(|&(role, vertex)| RoleVertex { role, vertex }).collect()
}

/// Verdict of one axiom on one graph. When `holds` is false the witness is
/// the first counterexample tuple; otherwise it is empty.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub holds: bool,
    pub witness: Vec<RoleVertex>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl AxiomResult {
    fn new(axiom: Axiom, started: Instant, counterexample: Option<Vec<RoleVertex>>) -> Self {
        AxiomResult {
            axiom,
            holds: counterexample.is_none(),
            witness: counterexample.unwrap_or_default(),
            elapsed: started.elapsed(),
        }
    }

    pub fn vertex(&self, role: &str) -> Option<usize> {
        self.witness.iter().find(|r| r.role == role).map(|r| r.vertex)
    }
}

fn require_connected(index: &DistanceIndex, axiom: Axiom) -> Result<()> {
    if index.is_connected() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{axiom} needs a connected graph")))
    }
}

/// Connected with finite diameter.
pub fn check_a1(index: &DistanceIndex) -> AxiomResult {
    let t = Instant::now();
    let n = index.len();
    let bad = (0..n).find_map(|x| {
        (0..n).find(|&y| index.d(x, y) == crate::graph::UNREACHABLE).map(|y| roles(&[("x", x), ("y", y)]))
    });
    AxiomResult::new(Axiom::A1, t, bad)
}

/// Every geodesic extends to one of length `diam`.
pub fn check_a2(index: &DistanceIndex) -> Result<AxiomResult> {
    require_connected(index, Axiom::A2)?;
    let t = Instant::now();
    let n = index.len();
    let diam = index.diameter();
    let shells: Vec<Vec<usize>> = (0..n).map(|x| index.shell(x, diam)).collect();
    let bad = (0..n).into_par_iter().find_map_first(|x| {
        (0..n).find_map(|y| {
            let need = diam - index.d(x, y) as usize;
            let ok = shells[x].iter().any(|&z| index.d(y, z) as usize == need);
            (!ok).then(|| roles(&[("x", x), ("y", y)]))
        })
    });
    Ok(AxiomResult::new(Axiom::A2, t, bad))
}

fn a3_fails(index: &DistanceIndex, common: &[usize], z: usize) -> bool {
    !common.iter().any(|&w| index.d(z, w) == 2)
}

/// For `x, y` at distance 2 and any common neighbour `z` there is another
/// common neighbour `w` with `d(z, w) = 2`.
pub fn check_a3(index: &DistanceIndex) -> Result<AxiomResult> {
    require_connected(index, Axiom::A3)?;
    let t = Instant::now();
    let n = index.len();
    let bad = (0..n).into_par_iter().find_map_first(|x| {
        (0..n).filter(|&y| index.d(x, y) == 2).find_map(|y| {
            let common = index.common_neighbors(x, y);
            common.iter().find(|&&z| a3_fails(index, &common, z)).map(|&z| roles(&[("x", x), ("y", y), ("z", z)]))
        })
    });
    Ok(AxiomResult::new(Axiom::A3, t, bad))
}

fn a4_has_w(index: &DistanceIndex, x: usize, y: usize, z: usize, diam: usize) -> bool {
    index
        .graph()
        .neighbors(z)
        .iter()
        .any(|&w| index.d(x, w as usize) as usize + 1 == diam && index.d(y, w as usize) as usize == diam)
}

/// Whether `(x, y, z)` violates (A4): both at distance `diam` from `z`,
/// distinct, and no neighbour `w` of `z` sits at distance `diam − 1` from
/// `x` and `diam` from `y`.
pub fn a4_triple_fails(index: &DistanceIndex, x: usize, y: usize, z: usize) -> bool {
    let diam = index.diameter();
    x != y && index.d(x, z) as usize == diam && index.d(y, z) as usize == diam && !a4_has_w(index, x, y, z, diam)
}

/// Penultimate-point property for diameter pairs, scanned per `z` over its
/// diameter shell.
pub fn check_a4(index: &DistanceIndex) -> Result<AxiomResult> {
    require_connected(index, Axiom::A4)?;
    let t = Instant::now();
    let n = index.len();
    let diam = index.diameter();
    let bad = (0..n).into_par_iter().find_map_first(|z| {
        let shell = index.shell(z, diam);
        shell.iter().find_map(|&x| {
            shell
                .iter()
                .find(|&&y| y != x && !a4_has_w(index, x, y, z, diam))
                .map(|&y| roles(&[("x", x), ("y", y), ("z", z)]))
        })
    });
    Ok(AxiomResult::new(Axiom::A4, t, bad))
}

/// Every edge `(a, b)` admits a point `p` satisfying the adjacency criterion.
pub fn check_a5(index: &DistanceIndex) -> Result<AxiomResult> {
    check_a5_with(&CriterionOracle::new(index))
}

pub fn check_a5_with(oracle: &CriterionOracle<'_>) -> Result<AxiomResult> {
    let index = oracle.index;
    require_connected(index, Axiom::A5)?;
    let t = Instant::now();
    let n = index.len();
    let bad = (0..n).into_par_iter().find_map_first(|a| {
        index
            .graph()
            .neighbors(a)
            .iter()
            .map(|&b| b as usize)
            .filter(|&b| b > a)
            .find(|&b| oracle.find_p(a, b).is_none())
            .map(|b| roles(&[("a", a), ("b", b)]))
    });
    Ok(AxiomResult::new(Axiom::A5, t, bad))
}

pub fn check_axiom(index: &DistanceIndex, axiom: Axiom) -> Result<AxiomResult> {
    match axiom {
        Axiom::A1 => Ok(check_a1(index)),
        Axiom::A2 => check_a2(index),
        Axiom::A3 => check_a3(index),
        Axiom::A4 => check_a4(index),
        Axiom::A5 => check_a5(index),
    }
}

/// Runs the listed axioms. On a disconnected graph only (A1) is evaluated;
/// the others have no meaning without a finite diameter.
pub fn check_axioms(index: &DistanceIndex, axioms: &[Axiom]) -> Vec<AxiomResult> {
    if !index.is_connected() {
        return axioms.iter().filter(|&&a| a == Axiom::A1).map(|_| check_a1(index)).collect();
    }
    let mut oracle = None;
    axioms
        .iter()
        .map(|&a| match a {
            Axiom::A5 => {
                let o = oracle.get_or_insert_with(|| CriterionOracle::new(index));
                check_a5_with(o).expect("connected")
            }
            _ => check_axiom(index, a).expect("connected"),
        })
        .collect()
}

/// Re-checks a reported counterexample by direct scan, independently of the
/// checker that produced it. Returns `true` if the tuple genuinely violates
/// the axiom.
pub fn confirm_counterexample(index: &DistanceIndex, result: &AxiomResult) -> bool {
    if result.holds {
        return false;
    }
    let n = index.len();
    let diam = index.diameter();
    let d = |u: usize, v: usize| index.d(u, v) as usize;
    let v = |role: &str| result.vertex(role);
    match result.axiom {
        Axiom::A1 => match (v("x"), v("y")) {
            (Some(x), Some(y)) => index.d(x, y) == crate::graph::UNREACHABLE,
            _ => false,
        },
        Axiom::A2 => match (v("x"), v("y")) {
            (Some(x), Some(y)) => !(0..n).any(|z| d(x, z) == diam && d(x, y) + d(y, z) == diam),
            _ => false,
        },
        Axiom::A3 => match (v("x"), v("y"), v("z")) {
            (Some(x), Some(y), Some(z)) => {
                d(x, z) == 1
                    && d(y, z) == 1
                    && d(x, y) == 2
                    && !(0..n).any(|w| d(x, w) == 1 && d(y, w) == 1 && d(z, w) == 2)
            }
            _ => false,
        },
        Axiom::A4 => match (v("x"), v("y"), v("z")) {
            (Some(x), Some(y), Some(z)) => {
                x != y
                    && d(x, z) == diam
                    && d(y, z) == diam
                    && !(0..n).any(|w| d(z, w) == 1 && d(x, w) + 1 == diam && d(y, w) == diam)
            }
            _ => false,
        },
        Axiom::A5 => match (v("a"), v("b")) {
            (Some(a), Some(b)) => d(a, b) == 1 && criterion_points_brute(index, a, b).is_empty(),
            _ => false,
        },
    }
}

/// Every `p ∉ {a, b}` with `d(x, p) = diam ⇒ d(x, a) = diam ∨ d(x, b) = diam`
/// for all `x`, by plain triple loop. Slow; meant as an oracle.
pub fn criterion_points_brute(index: &DistanceIndex, a: usize, b: usize) -> Vec<usize> {
    let n = index.len();
    let diam = index.diameter() as u8;
    (0..n)
        .filter(|&p| p != a && p != b)
        .filter(|&p| (0..n).all(|x| index.d(x, p) != diam || index.d(x, a) == diam || index.d(x, b) == diam))
        .collect()
}

/// Bitset form of the diameter shells, for fast evaluation of the
/// criterion `shell(p) ⊆ shell(a) ∪ shell(b)`.
pub struct CriterionOracle<'a> {
    index: &'a DistanceIndex,
    words: usize,
    shells: Vec<u64>,
    shell_sizes: Vec<usize>,
    /// `p` grouped by the smallest member of its shell.
    by_first: Vec<Vec<u32>>,
    empty_shell: Vec<u32>,
}

impl<'a> CriterionOracle<'a> {
    pub fn new(index: &'a DistanceIndex) -> Self {
        let n = index.len();
        let words = n.div_ceil(64).max(1);
        let diam = index.diameter() as u8;
        let mut shells = vec![0u64; n * words];
        let mut shell_sizes = vec![0; n];
        let mut by_first = vec![Vec::new(); n];
        let mut empty_shell = Vec::new();
        for p in 0..n {
            let mut first = None;
            for (x, &d) in index.row(p).iter().enumerate() {
                if d == diam {
                    shells[p * words + x / 64] |= 1 << (x % 64);
                    shell_sizes[p] += 1;
                    first.get_or_insert(x);
                }
            }
            match first {
                Some(x) => by_first[x].push(p as u32),
                None => empty_shell.push(p as u32),
            }
        }
        CriterionOracle { index, words, shells, shell_sizes, by_first, empty_shell }
    }

    pub fn index(&self) -> &DistanceIndex {
        self.index
    }

    fn shell(&self, v: usize) -> &[u64] {
        &self.shells[v * self.words..(v + 1) * self.words]
    }

    fn subset_of(&self, p: usize, union: &[u64]) -> bool {
        self.shell(p).iter().zip(union).all(|(s, u)| s & !u == 0)
    }

    /// The first `p` (in vertex order) satisfying the criterion for `(a, b)`.
    pub fn find_p(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.index.len();
        let union: Vec<u64> = self.shell(a).iter().zip(self.shell(b)).map(|(x, y)| x | y).collect();
        let in_union: usize = union.iter().map(|w| w.count_ones() as usize).sum();
        let outside = n - in_union;

        let valid = |p: usize| p != a && p != b;
        if in_union <= outside {
            // Any valid p has its shell inside the union, so its first shell
            // member is in the union (or its shell is empty).
            let mut best: Option<usize> = None;
            let candidates = self.empty_shell.iter().copied().chain(
                (0..n).filter(|&x| union[x / 64] >> (x % 64) & 1 == 1).flat_map(|x| self.by_first[x].iter().copied()),
            );
            for p in candidates {
                let p = p as usize;
                if valid(p) && best.is_none_or(|b| p < b) && self.subset_of(p, &union) {
                    best = Some(p);
                }
            }
            best
        } else {
            // p is valid iff no x outside the union has p in its shell.
            let mut blocked = vec![0u64; self.words];
            for x in (0..n).filter(|&x| union[x / 64] >> (x % 64) & 1 == 0) {
                if self.shell_sizes[x] == 0 {
                    continue;
                }
                for (b, s) in blocked.iter_mut().zip(self.shell(x)) {
                    *b |= s;
                }
            }
            (0..n).find(|&p| valid(p) && blocked[p / 64] >> (p % 64) & 1 == 0)
        }
    }
}

/// The first `p ∉ {a, b}` satisfying the adjacency criterion, if any.
pub fn lemma21_find_p(index: &DistanceIndex, a: usize, b: usize) -> Option<usize> {
    CriterionOracle::new(index).find_p(a, b)
}

/// Unordered pairs `a < b` for which some criterion point exists.
pub fn criterion_pairs(oracle: &CriterionOracle<'_>) -> Vec<(usize, usize)> {
    let n = oracle.index.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|a| ((a + 1)..n).filter(move |&b| oracle.find_p(a, b).is_some()).map(move |b| (a, b)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionExhibit {
    pub a: usize,
    pub b: usize,
    pub p: usize,
    pub distance: u8,
}

/// Outcome of running the criterion over every pair.
#[derive(Clone, Debug, Serialize)]
pub struct Lemma21Report {
    /// (A1)–(A4) all hold on this graph.
    pub precondition_holds: bool,
    pub failed_axioms: Vec<Axiom>,
    pub pairs_checked: u64,
    pub criterion_pairs: u64,
    /// Edges with no criterion point (exactly the (A5) failures).
    pub edges_without_p: u64,
    /// Pairs satisfying the criterion without being adjacent.
    pub violation_count: u64,
    /// The first few violations in pair order.
    pub violations: Vec<CriterionExhibit>,
}

impl Lemma21Report {
    /// Passes when the precondition holds and no violation was found.
    pub fn pass(&self) -> bool {
        self.precondition_holds && self.violation_count == 0
    }
}

const MAX_LISTED_VIOLATIONS: usize = 32;

/// Runs the criterion over every unordered pair. Still runnable when
/// (A1)–(A4) fail; the report then flags the precondition and lists the
/// criterion-without-adjacency exhibits.
pub fn lemma21_validate(index: &DistanceIndex) -> Lemma21Report {
    let failed_axioms: Vec<Axiom> = if index.is_connected() {
        [Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4]
            .into_iter()
            .filter(|&a| !check_axiom(index, a).expect("connected").holds)
            .collect()
    } else {
        vec![Axiom::A1]
    };
    let oracle = CriterionOracle::new(index);
    let n = index.len();
    let per_a: Vec<(u64, u64, Vec<CriterionExhibit>)> = (0..n)
        .into_par_iter()
        .map(|a| {
            let (mut found, mut edges_without, mut bad) = (0u64, 0u64, Vec::new());
            for b in (a + 1)..n {
                match oracle.find_p(a, b) {
                    Some(p) => {
                        found += 1;
                        if index.d(a, b) != 1 {
                            bad.push(CriterionExhibit { a, b, p, distance: index.d(a, b) });
                        }
                    }
                    None if index.d(a, b) == 1 => edges_without += 1,
                    None => {}
                }
            }
            (found, edges_without, bad)
        })
        .collect();
    let mut report = Lemma21Report {
        precondition_holds: failed_axioms.is_empty(),
        failed_axioms,
        pairs_checked: (n * n.saturating_sub(1) / 2) as u64,
        criterion_pairs: 0,
        edges_without_p: 0,
        violation_count: 0,
        violations: Vec::new(),
    };
    for (found, edges_without, bad) in per_a {
        report.criterion_pairs += found;
        report.edges_without_p += edges_without;
        report.violation_count += bad.len() as u64;
        let room = MAX_LISTED_VIOLATIONS.saturating_sub(report.violations.len());
        report.violations.extend(bad.into_iter().take(room));
    }
    report
}
