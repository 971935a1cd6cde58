//! Seeded populations of point maps for falsifying the main theorem:
//! group transforms, their compositions, and permutation perturbations of
//! them. On a space satisfying all five axioms, no map in the population
//! may preserve diameter pairs without being an isomorphism.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Involution};
use crate::graph::DistanceIndex;
use crate::maps::{
    check_dm_treu, is_isomorphism, make_grass_transform, make_herm_transform, make_rect_transform, PointMap,
};
use crate::matrix::Matrix;
use crate::space::{PointSet, SpaceDescriptor};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

fn random_element(f: &FieldSpec, rng: &mut impl Rng) -> FieldElement {
    FieldElement::from_raw(rng.gen_range(0..f.order()) as u8)
}

pub fn random_matrix(f: &FieldSpec, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    let data = (0..rows * cols).map(|_| random_element(f, rng)).collect();
    Matrix::new(f, rows, cols, data).expect("entries are in range")
}

/// Rejection sampling; the invertible fraction is at least about 0.28.
pub fn random_invertible(f: &FieldSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let m = random_matrix(f, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn random_hermitian(sigma: &Involution, n: usize, rng: &mut impl Rng) -> Matrix {
    let f = sigma.field();
    let fixed = sigma.fixed_subfield();
    let mut m = Matrix::zeros(f, n, n);
    for i in 0..n {
        m.set(i, i, *fixed.choose(rng).expect("fixed subfield contains 0"));
        for j in i + 1..n {
            let a = random_element(f, rng);
            m.set(i, j, a);
            m.set(j, i, sigma.apply(a));
        }
    }
    m
}

/// A random element of the space's transformation group.
pub fn random_group_transform(space: &PointSet, rng: &mut impl Rng) -> Result<PointMap> {
    match space.descriptor() {
        SpaceDescriptor::Rectangular { m, n, field } => {
            let p = random_invertible(field, *m, rng);
            let q = random_invertible(field, *n, rng);
            let r = random_matrix(field, *m, *n, rng);
            make_rect_transform(&p, &q, &r, space)
        }
        SpaceDescriptor::Hermitian { n, involution } => {
            let p = random_invertible(involution.field(), *n, rng);
            let h = random_hermitian(involution, *n, rng);
            make_herm_transform(&p, &h, space)
        }
        SpaceDescriptor::Grassmann { m, n, field } => {
            let p = random_invertible(field, m + n, rng);
            make_grass_transform(&p, space)
        }
    }
}

pub fn sample_group_transforms(space: &PointSet, count: usize, seed: u64) -> Result<Vec<PointMap>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_group_transform(space, &mut rng)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Perturbation {
    /// Composition of two group transforms.
    Group,
    /// A group transform followed by a random transposition.
    Transposition,
    /// A group transform followed by a random 3-cycle.
    ThreeCycle,
    /// A group transform followed by swapping two vertices with equal
    /// diameter shells, or a vertex with one of its antipodes if no such
    /// twins exist.
    TwinSwap,
}

impl Perturbation {
    fn for_slot(i: usize) -> Self {
        match i % 10 {
            0 => Perturbation::Group,
            1..=5 => Perturbation::Transposition,
            6..=8 => Perturbation::ThreeCycle,
            _ => Perturbation::TwinSwap,
        }
    }
}

/// A map passing the diameter-pair test and failing the isomorphism test.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremViolation {
    pub sample: usize,
    pub kind: Perturbation,
    pub table: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FalsificationReport {
    pub space: String,
    pub seed: u64,
    pub maps_tested: usize,
    pub by_kind: Vec<(Perturbation, usize)>,
    pub twin_pairs: usize,
    pub dm_treu_passed: usize,
    pub isomorphisms: usize,
    /// Pure group maps that failed either test; nonzero means a defect in
    /// the transforms or the checkers.
    pub group_failures: usize,
    pub violations: usize,
    pub first_violation: Option<TheoremViolation>,
}

impl FalsificationReport {
    pub fn pass(&self) -> bool {
        self.violations == 0 && self.group_failures == 0
    }
}

/// Unordered pairs of distinct vertices with identical diameter shells.
pub fn diameter_twins(index: &DistanceIndex) -> Vec<(usize, usize)> {
    let diam = index.diameter();
    let mut groups: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for v in 0..index.len() {
        groups.entry(index.shell(v, diam)).or_default().push(v);
    }
    let mut twins: Vec<(usize, usize)> = groups
        .values()
        .flat_map(|vs| vs.iter().enumerate().flat_map(move |(i, &a)| vs[i + 1..].iter().map(move |&b| (a, b))))
        .collect();
    twins.sort_unstable();
    twins
}

fn perturb(
    base: PointMap,
    kind: Perturbation,
    space: &PointSet,
    index: &DistanceIndex,
    twins: &[(usize, usize)],
    rng: &mut ChaCha8Rng,
) -> Result<PointMap> {
    let n = index.len();
    let distinct = |rng: &mut ChaCha8Rng, k: usize| -> Vec<usize> { rand::seq::index::sample(rng, n, k).into_vec() };
    match kind {
        Perturbation::Group => base.then(&random_group_transform(space, rng)?),
        Perturbation::Transposition => {
            let v = distinct(rng, 2);
            base.then(&PointMap::transposition(n, v[0], v[1]))
        }
        Perturbation::ThreeCycle => {
            let v = distinct(rng, 3);
            let mut table: Vec<u32> = (0..n as u32).collect();
            table[v[0]] = v[1] as u32;
            table[v[1]] = v[2] as u32;
            table[v[2]] = v[0] as u32;
            base.then(&PointMap::new(table, n)?)
        }
        Perturbation::TwinSwap => {
            let (a, b) = match twins.choose(rng) {
                Some(&pair) => pair,
                None => {
                    let a = rng.gen_range(0..n);
                    let shell = index.shell(a, index.diameter());
                    (a, *shell.choose(rng).ok_or_else(|| Error::Internal("empty diameter shell".into()))?)
                }
            };
            base.then(&PointMap::transposition(n, a, b))
        }
    }
}

/// Builds `samples` maps from `seed` and tests each one. Generation is
/// sequential and evaluation parallel, so the outcome depends only on the
/// seed.
pub fn falsify_theorem(
    space: &PointSet,
    index: &DistanceIndex,
    samples: usize,
    seed: u64,
) -> Result<FalsificationReport> {
    if space.len() != index.len() {
        return Err(Error::DimensionMismatch("space and index differ in size".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let twins = diameter_twins(index);
    let mut population = Vec::with_capacity(samples);
    for i in 0..samples {
        let kind = Perturbation::for_slot(i);
        let base = random_group_transform(space, &mut rng)?;
        population.push((kind, perturb(base, kind, space, index, &twins, &mut rng)?));
    }

    let verdicts = population
        .par_iter()
        .map(|(_, map)| {
            let dm = check_dm_treu(map, index, index)?.holds;
            let iso = is_isomorphism(map, index.graph(), index.graph())?.holds;
            Ok((dm, iso))
        })
        .collect::<Result<Vec<(bool, bool)>>>()?;

    let mut by_kind: Vec<(Perturbation, usize)> = Vec::new();
    for (kind, _) in &population {
        match by_kind.iter_mut().find(|(k, _)| k == kind) {
            Some((_, c)) => *c += 1,
            None => by_kind.push((*kind, 1)),
        }
    }
    let mut report = FalsificationReport {
        space: space.descriptor().to_string(),
        seed,
        maps_tested: samples,
        by_kind,
        twin_pairs: twins.len(),
        dm_treu_passed: 0,
        isomorphisms: 0,
        group_failures: 0,
        violations: 0,
        first_violation: None,
    };
    for (i, ((kind, map), &(dm, iso))) in population.iter().zip(&verdicts).enumerate() {
        report.dm_treu_passed += dm as usize;
        report.isomorphisms += iso as usize;
        if *kind == Perturbation::Group && !(dm && iso) {
            report.group_failures += 1;
        }
        if dm && !iso {
            report.violations += 1;
            if report.first_violation.is_none() {
                report.first_violation = Some(TheoremViolation { sample: i, kind: *kind, table: map.table().to_vec() });
            }
        }
    }
    Ok(report)
}
