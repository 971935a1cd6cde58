//! Named reproductions of the worked examples, each a list of steps with a
//! literal expectation and the observed value.

use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::axioms::{
    a4_triple_fails, check_a4, check_axioms, criterion_points_brute, lemma21_find_p, lemma21_validate, Axiom,
};
use crate::error::{Error, Result};
use crate::field::Involution;
use crate::graph::{build_index, DistanceIndex};
use crate::maps::{alternate_shift, antipodal_swap, check_dm_treu, is_isomorphism};
use crate::matrix::Matrix;
use crate::space::{enumerate_space, PointSet, SpaceDescriptor};
use crate::witness::{rank1_step_neighbors, rank1_step_neighbors_brute, witness_a4_herm};

pub const SCENARIOS: [&str; 5] = ["s2f3-a4", "s2f2-a5", "alt-shift:<n>", "lemma21", "herm-witness"];

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub steps: Vec<Step>,
    pub pass: bool,
}

#[derive(Default)]
struct Steps(Vec<Step>);

impl Steps {
    fn expect(&mut self, name: &str, expected: impl Display, actual: impl Display) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        self.0.push(Step { name: name.to_string(), expected, actual, pass });
    }

    fn finish(self, name: &str) -> ScenarioReport {
        let pass = self.0.iter().all(|s| s.pass);
        ScenarioReport { name: name.to_string(), steps: self.0, pass }
    }
}

fn build(s: &str) -> Result<(PointSet, DistanceIndex)> {
    let ps = enumerate_space(&s.parse::<SpaceDescriptor>()?)?;
    let idx = build_index(&ps)?;
    Ok((ps, idx))
}

fn vertex(ps: &PointSet, s: &str) -> Result<usize> {
    let m = Matrix::parse(ps.descriptor().field(), s)?;
    ps.require_index(&m)
}

fn labels(ps: &PointSet, vs: &[usize]) -> String {
    let mut ls: Vec<String> = vs.iter().map(|&v| ps.label(v)).collect();
    ls.sort();
    format!("{{{}}}", ls.join(" "))
}

fn opt_label(ps: &PointSet, v: Option<usize>) -> String {
    v.map_or_else(|| "none".to_string(), |v| ps.label(v))
}

fn verdicts(idx: &DistanceIndex) -> String {
    check_axioms(idx, &Axiom::ALL)
        .iter()
        .map(|r| format!("{}={}", r.axiom, if r.holds { "holds" } else { "fails" }))
        .collect::<Vec<_>>()
        .join(" ")
}

fn edges_among(idx: &DistanceIndex, named: &[(&str, usize)]) -> String {
    let mut out = Vec::new();
    for (i, &(a, u)) in named.iter().enumerate() {
        for &(b, v) in &named[i + 1..] {
            if idx.graph().is_adjacent(u, v) {
                out.push(format!("{a}{b}"));
            }
        }
    }
    out.join(" ")
}

/// The pair `X, Y` both at distance 2 from `Z = 0` whose two geodesics to
/// `Z` pass through the common neighbours of `Y`.
fn s2f3_a4() -> Result<ScenarioReport> {
    let (ps, idx) = build("sym:2:GF(3)")?;
    let x = vertex(&ps, "1,0;0,2")?;
    let y = vertex(&ps, "2,2;2,1")?;
    let u = vertex(&ps, "1,0;0,0")?;
    let v = vertex(&ps, "0,0;0,2")?;
    let z = vertex(&ps, "0,0;0,0")?;
    let mut s = Steps::default();
    s.expect("points", 27, ps.len());
    s.expect("diameter", 2, idx.diameter());
    s.expect(
        "edges among X,Y,U,V,Z",
        "XU XV YU YV UZ VZ",
        edges_among(&idx, &[("X", x), ("Y", y), ("U", u), ("V", v), ("Z", z)]),
    );
    s.expect("common_neighbors(X,Z)", labels(&ps, &[u, v]), labels(&ps, &idx.common_neighbors(x, z)));
    s.expect("axioms", "A1=holds A2=holds A3=holds A4=fails A5=holds", verdicts(&idx));
    let a4 = check_a4(&idx)?;
    s.expect("A4 counterexample z", ps.label(z), opt_label(&ps, a4.vertex("z")));
    s.expect("A4 fails on (X,Y,Z)", true, a4_triple_fails(&idx, x, y, z));
    let criterion = criterion_points_brute(&idx, x, z);
    s.expect("criterion points for (X,Z)", "{2,1;1,1 2,2;2,1}", labels(&ps, &criterion));
    s.expect("Y is a criterion point for (X,Z)", true, criterion.contains(&y));
    s.expect(
        "lemma21_find_p(X,Z) is the first",
        opt_label(&ps, criterion.first().copied()),
        opt_label(&ps, lemma21_find_p(&idx, x, z)),
    );
    s.expect("d(X,Z)", 2, idx.d(x, z));
    Ok(s.finish("s2f3-a4"))
}

/// The cube on `S₂(F₂)` and its antipodal swap.
fn s2f2_a5() -> Result<ScenarioReport> {
    let (ps, idx) = build("sym:2:GF(2)")?;
    let cube = [
        ("0,0;0,0", "1,0;0,0"),
        ("0,0;0,0", "1,1;1,1"),
        ("0,0;0,0", "0,0;0,1"),
        ("1,0;0,0", "0,1;1,1"),
        ("1,0;0,0", "1,0;0,1"),
        ("1,1;1,1", "0,1;1,1"),
        ("1,1;1,1", "1,1;1,0"),
        ("0,1;1,1", "0,1;1,0"),
        ("0,0;0,1", "1,0;0,1"),
        ("0,0;0,1", "1,1;1,0"),
        ("1,0;0,1", "0,1;1,0"),
        ("1,1;1,0", "0,1;1,0"),
    ];
    let mut expected =
        cube.iter().map(|&(a, b)| Ok(ordered(vertex(&ps, a)?, vertex(&ps, b)?))).collect::<Result<Vec<_>>>()?;
    expected.sort_unstable();
    let actual: Vec<(usize, usize)> = idx.graph().edges().collect();
    let mut s = Steps::default();
    s.expect("points", 8, ps.len());
    s.expect("diameter", 3, idx.diameter());
    let degrees: Vec<usize> = (0..ps.len()).map(|v| idx.graph().degree(v)).collect();
    s.expect("3-regular", true, degrees.iter().all(|&d| d == 3));
    s.expect("edges", format!("{expected:?}"), format!("{actual:?}"));
    s.expect("axioms", "A1=holds A2=holds A3=holds A4=holds A5=fails", verdicts(&idx));
    let swap = antipodal_swap(&idx, 0)?;
    s.expect("antipode of 0", "0,1;1,0", ps.label(swap.image(0)));
    s.expect("swap dm-treu", true, check_dm_treu(&swap, &idx, &idx)?.holds);
    s.expect("swap isomorphism", false, is_isomorphism(&swap, idx.graph(), idx.graph())?.holds);
    Ok(s.finish("s2f2-a5"))
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Every nonzero alternate matrix of size `n`, over `F₂`.
pub fn nonzero_alternates(ps: &PointSet) -> Vec<usize> {
    (0..ps.len()).filter(|&v| ps.point(v).is_alternate().unwrap_or(false) && !ps.point(v).is_zero()).collect()
}

/// The shift by `K = E₁₂ + E₂₁` on `Sₙ(F₂)`.
fn alt_shift(n: usize) -> Result<ScenarioReport> {
    let (ps, idx) = build(&format!("sym:{n}:GF(2)"))?;
    let f = ps.descriptor().field().clone();
    let mut k = Matrix::zeros(&f, n, n);
    k.set(0, 1, f.one());
    k.set(1, 0, f.one());
    let e11 = ps.require_index(&Matrix::unit(&f, n, n, 0, 0))?;
    let kv = ps.require_index(&k)?;
    let mut s = Steps::default();
    s.expect("diameter", n + 1, idx.diameter());
    let diam = (n + 1) as u8;
    let diameter_pairs_alternate_full_rank = (0..ps.len()).all(|a| {
        (0..ps.len()).all(|b| {
            let d = ps.point(a).sub(ps.point(b)).expect("same space");
            let special = d.rank() == n && d.is_alternate().expect("square");
            (idx.d(a, b) == diam) == special
        })
    });
    s.expect("distance n+1 ⇔ alternate of rank n", true, diameter_pairs_alternate_full_rank);
    let phi = alternate_shift(&ps, &k)?;
    s.expect("shift dm-treu", true, check_dm_treu(&phi, &idx, &idx)?.holds);
    s.expect("shift isomorphism", false, is_isomorphism(&phi, idx.graph(), idx.graph())?.holds);
    s.expect("d(E11,0)", 1, idx.d(e11, 0));
    s.expect("d(E11^φ,0^φ)", 2, idx.d(phi.image(e11), phi.image(0)));
    s.expect("0^φ", ps.label(kv), ps.label(phi.image(0)));
    Ok(s.finish(&format!("alt-shift:{n}")))
}

/// The criterion on a space where (A1)–(A4) hold, and its breakdown on
/// `S₂(F₃)`.
fn lemma21() -> Result<ScenarioReport> {
    let mut s = Steps::default();
    let (_, idx) = build("rect:2x2:GF(3)")?;
    let r = lemma21_validate(&idx);
    s.expect("rect:2x2:GF(3) precondition", true, r.precondition_holds);
    s.expect("rect:2x2:GF(3) criterion pairs", idx.graph().edge_count(), r.criterion_pairs);
    s.expect("rect:2x2:GF(3) violations", 0, r.violation_count);

    let (ps, idx) = build("sym:2:GF(3)")?;
    let x = vertex(&ps, "1,0;0,2")?;
    let y = vertex(&ps, "2,2;2,1")?;
    let r = lemma21_validate(&idx);
    s.expect("sym:2:GF(3) failed axioms", "[A4]", format!("{:?}", r.failed_axioms));
    let exhibit = r.violations.iter().find(|e| (e.a, e.b) == (0, x) || (e.a, e.b) == (x, 0));
    s.expect("(X,Z) listed as criterion without adjacency", true, exhibit.is_some());
    s.expect("Y is a criterion point for (X,Z)", true, criterion_points_brute(&idx, x, 0).contains(&y));
    Ok(s.finish("lemma21"))
}

/// Sampled (A4) witnesses and rank-one step sets on `H₂(GF(16))`.
fn herm_witness(seed: u64) -> Result<ScenarioReport> {
    let (ps, idx) = build("herm:2:GF(16):frob")?;
    let sigma = ps.descriptor().involution().cloned().ok_or_else(|| Error::Internal("no involution".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Steps::default();
    s.expect("restrictions", "R1 R2", restrictions(&sigma));

    let invertible: Vec<usize> = (0..ps.len()).filter(|&v| ps.point(v).rank() == 2).collect();
    let mut verified = 0;
    let mut failures = Vec::new();
    for _ in 0..64 {
        let (zi, xi, yi) = loop {
            let z = rng.gen_range(0..ps.len());
            let x = invertible[rng.gen_range(0..invertible.len())];
            let y = invertible[rng.gen_range(0..invertible.len())];
            if x != y {
                break (z, x, y);
            }
        };
        let zm = ps.point(zi);
        let x = ps.point(xi).add(zm)?;
        let y = ps.point(yi).add(zm)?;
        let w = witness_a4_herm(ps.point(xi), ps.point(yi), &sigma)?.add(zm)?;
        let (xv, yv, wv) = (ps.require_index(&x)?, ps.require_index(&y)?, ps.require_index(&w)?);
        if idx.d(zi, wv) == 1 && idx.d(xv, wv) == 1 && idx.d(yv, wv) == 2 {
            verified += 1;
        } else {
            failures.push(ps.label(wv));
        }
    }
    s.expect("witness post-conditions verified", "64/64", format!("{verified}/64"));
    s.expect("witness failures", "[]", format!("{failures:?}"));

    let mut agree = 0;
    for rank in 1..=2 {
        let pool: Vec<usize> = (0..ps.len()).filter(|&v| ps.point(v).rank() == rank).collect();
        for _ in 0..20 {
            let a = ps.point(pool[rng.gen_range(0..pool.len())]);
            agree += (rank1_step_neighbors(a, &sigma)? == rank1_step_neighbors_brute(a, &ps)) as usize;
        }
    }
    s.expect("rank-one step sets match brute force", "40/40", format!("{agree}/40"));
    Ok(s.finish("herm-witness"))
}

fn restrictions(sigma: &Involution) -> String {
    let r = sigma.check_restrictions();
    [(r.r1, "R1"), (r.r2, "R2")].iter().filter(|(ok, _)| *ok).map(|(_, n)| *n).collect::<Vec<_>>().join(" ")
}

pub fn run_scenario(name: &str, seed: u64) -> Result<ScenarioReport> {
    match name {
        "s2f3-a4" => s2f3_a4(),
        "s2f2-a5" => s2f2_a5(),
        "lemma21" => lemma21(),
        "herm-witness" => herm_witness(seed),
        _ => match name.strip_prefix("alt-shift:").map(str::parse::<usize>) {
            Some(Ok(n)) if n >= 2 && n % 2 == 0 => alt_shift(n),
            Some(_) => Err(Error::UnknownScenario(format!("{name}: n must be an even integer >= 2"))),
            None => Err(Error::UnknownScenario(format!("{name}; known: {}", SCENARIOS.join(", ")))),
        },
    }
}
