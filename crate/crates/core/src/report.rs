//! Serializable reports and graph export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::axioms::AxiomResult;
use crate::graph::DistanceIndex;
use crate::space::PointSet;

#[derive(Clone, Debug, Serialize)]
pub struct WitnessEntry {
    pub role: &'static str,
    pub vertex: usize,
    pub point: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub space: String,
    pub axiom: String,
    pub holds: bool,
    pub witness: Vec<WitnessEntry>,
    pub elapsed_ms: f64,
}

pub fn axiom_report(space: &PointSet, result: &AxiomResult) -> AxiomReport {
    AxiomReport {
        space: space.descriptor().to_string(),
        axiom: result.axiom.to_string(),
        holds: result.holds,
        witness: result
            .witness
            .iter()
            .map(|r| WitnessEntry { role: r.role, vertex: r.vertex, point: space.label(r.vertex) })
            .collect(),
        elapsed_ms: result.elapsed.as_secs_f64() * 1e3,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
}

/// Keys of `distribution` are distances; values count ordered pairs,
/// including the `N` pairs at distance 0.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    pub space: String,
    pub points: usize,
    pub edges: usize,
    pub degree: DegreeStats,
    pub connected: bool,
    pub diameter: Option<usize>,
    pub distribution: BTreeMap<String, u64>,
    pub unreachable_pairs: u64,
}

pub fn distance_report(space: &PointSet, index: &DistanceIndex) -> DistanceReport {
    let g = index.graph();
    let degrees: Vec<usize> = (0..g.len()).map(|v| g.degree(v)).collect();
    let degree = DegreeStats {
        min: degrees.iter().copied().min().unwrap_or(0),
        max: degrees.iter().copied().max().unwrap_or(0),
        mean: if degrees.is_empty() { 0.0 } else { degrees.iter().sum::<usize>() as f64 / degrees.len() as f64 },
    };
    let connected = index.is_connected();
    DistanceReport {
        space: space.descriptor().to_string(),
        points: space.len(),
        edges: g.edge_count(),
        degree,
        connected,
        diameter: connected.then(|| index.diameter()),
        distribution: index.histogram().into_iter().map(|(d, c)| (d.to_string(), c)).collect(),
        unreachable_pairs: index.unreachable_pairs(),
    }
}

/// Undirected Graphviz source; vertices in index order, edges sorted.
pub fn to_dot(space: &PointSet, index: &DistanceIndex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", space.descriptor());
    for v in 0..space.len() {
        let _ = writeln!(out, "  v{v} [label=\"{}\"];", space.label(v));
    }
    for (a, b) in index.graph().edges() {
        let _ = writeln!(out, "  v{a} -- v{b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_a4;
    use crate::graph::build_index;
    use crate::space::enumerate_space;

    fn setup(s: &str) -> (PointSet, DistanceIndex) {
        let ps = enumerate_space(&s.parse().unwrap()).unwrap();
        let idx = build_index(&ps).unwrap();
        (ps, idx)
    }

    #[test]
    fn dot_for_cube() {
        let (ps, idx) = setup("sym:2:GF(2)");
        let dot = to_dot(&ps, &idx);
        assert_eq!(dot.matches(" -- ").count(), 12);
        assert_eq!(dot.matches("[label=").count(), 8);
        assert!(dot.starts_with("graph \"sym:2:GF(2)\" {\n  v0 [label=\"0,0;0,0\"];"));
        assert_eq!(dot, to_dot(&ps, &idx));
    }

    #[test]
    fn distance_report_census() {
        let (ps, idx) = setup("sym:2:GF(3)");
        let r = distance_report(&ps, &idx);
        assert_eq!(r.points, 27);
        assert_eq!(r.diameter, Some(2));
        assert_eq!(r.distribution["0"], 27);
        assert_eq!(r.distribution["1"] + r.distribution["2"], 27 * 26);
        assert_eq!(r.distribution["1"], 2 * r.edges as u64);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["distribution"]["0"], 27);
    }

    #[test]
    fn axiom_report_labels_witness() {
        let (ps, idx) = setup("sym:2:GF(3)");
        let r = axiom_report(&ps, &check_a4(&idx).unwrap());
        assert_eq!(r.axiom, "A4");
        assert!(!r.holds);
        let z = r.witness.iter().find(|w| w.role == "z").unwrap();
        assert_eq!(z.point, "0,0;0,0");
    }
}
