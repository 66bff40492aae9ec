//! Certification of stick complexes: self-avoidance, junction audit, graph
//! reconstruction and stick counting.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::arc_presentation::VertexLabel;
use crate::bounds;
use crate::geometry::{contact, Axis, Contact, Dir, Point3};
use crate::graph_model::{derive_edges, GraphCensus, SpatialGraphSpec};
use crate::lattice::StickComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContactKind {
    Crossing,
    Overlap,
    TContact,
    UnjustifiedEndpoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactViolation {
    pub sticks: (usize, usize),
    pub kind: ContactKind,
    pub point: Point3,
}

impl fmt::Display for ContactViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} between sticks {} and {} at {}", self.kind, self.sticks.0, self.sticks.1, self.point)
    }
}

fn interior_occurrences(complex: &StickComplex) -> Vec<BTreeMap<&Point3, usize>> {
    complex
        .traces
        .iter()
        .map(|t| {
            let mut m = BTreeMap::new();
            if t.points.len() > 2 {
                for p in &t.points[1..t.points.len() - 1] {
                    *m.entry(p).or_insert(0) += 1;
                }
            }
            m
        })
        .collect()
}

/// Every stick pair meeting anywhere other than a legitimate shared endpoint.
///
/// A shared endpoint is legitimate at a vertex marker, at a listed junction of a
/// raw complex, or between consecutive sticks of one edge trace.
pub fn check_self_avoiding(complex: &StickComplex) -> Vec<ContactViolation> {
    let bends = interior_occurrences(complex);
    let mut out = Vec::new();
    let marker_points: BTreeSet<&Point3> = complex.markers.values().collect();
    for i in 0..complex.sticks.len() {
        for j in i + 1..complex.sticks.len() {
            let Some(c) = contact(&complex.sticks[i], &complex.sticks[j]) else {
                continue;
            };
            let kind = match &c {
                Contact::Overlap(_) => ContactKind::Overlap,
                Contact::Interior(p) => {
                    if complex.sticks[i].is_endpoint(p) || complex.sticks[j].is_endpoint(p) {
                        ContactKind::TContact
                    } else {
                        ContactKind::Crossing
                    }
                }
                Contact::SharedEndpoint(p) => {
                    let same_trace = match (complex.owners[i], complex.owners[j]) {
                        (Some(a), Some(b)) if a == b => bends[a].get(p) == Some(&1),
                        _ => false,
                    };
                    if marker_points.contains(p) || complex.junctions.contains(p) || same_trace {
                        continue;
                    }
                    ContactKind::UnjustifiedEndpoint
                }
            };
            out.push(ContactViolation { sticks: (i, j), kind, point: c.point().clone() });
        }
    }
    out
}

fn end_directions(complex: &StickComplex) -> BTreeMap<Point3, Vec<Dir>> {
    let mut ends: BTreeMap<Point3, Vec<Dir>> = BTreeMap::new();
    for s in &complex.sticks {
        let (a, b) = (s.start(), s.end());
        ends.entry(a.clone()).or_default().push(s.dir_from(&a));
        ends.entry(b.clone()).or_default().push(s.dir_from(&b));
    }
    ends
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JunctionAudit {
    /// Points where three or more stick ends meet without a marker.
    pub unmarked_junctions: Vec<Point3>,
    /// `(vertex, expected degree, stick ends found)`.
    pub incidence_mismatches: Vec<(VertexLabel, usize, usize)>,
    /// Vertices with two incident sticks leaving in the same direction.
    pub repeated_directions: Vec<VertexLabel>,
    /// Markers lying inside a stick rather than at its end.
    pub buried_markers: Vec<VertexLabel>,
}

impl JunctionAudit {
    pub fn is_clean(&self) -> bool {
        self.unmarked_junctions.is_empty()
            && self.incidence_mismatches.is_empty()
            && self.repeated_directions.is_empty()
            && self.buried_markers.is_empty()
    }
}

pub fn audit_junctions(complex: &StickComplex, degrees: &BTreeMap<VertexLabel, usize>) -> JunctionAudit {
    let ends = end_directions(complex);
    let marker_points: BTreeSet<&Point3> = complex.markers.values().collect();
    let mut audit = JunctionAudit::default();
    for (p, dirs) in &ends {
        if dirs.len() >= 3 && !marker_points.contains(p) {
            audit.unmarked_junctions.push(p.clone());
        }
    }
    for (label, p) in &complex.markers {
        let dirs = ends.get(p).cloned().unwrap_or_default();
        if let Some(&d) = degrees.get(label) {
            if d != dirs.len() {
                audit.incidence_mismatches.push((label.clone(), d, dirs.len()));
            }
        }
        let distinct: BTreeSet<Dir> = dirs.iter().copied().collect();
        if distinct.len() != dirs.len() {
            audit.repeated_directions.push(label.clone());
        }
        if complex.sticks.iter().any(|s| s.contains(p) && !s.is_endpoint(p)) {
            audit.buried_markers.push(label.clone());
        }
    }
    audit
}

/// Incident stick directions at a marker, sorted.
pub fn marker_directions(complex: &StickComplex, label: &str) -> Vec<Dir> {
    let Some(p) = complex.markers.get(label) else {
        return Vec::new();
    };
    let mut dirs = end_directions(complex).remove(p).unwrap_or_default();
    dirs.sort();
    dirs
}

/// Abstract multigraph: vertex labels and edges as sorted label pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbstractGraph {
    pub vertices: BTreeSet<VertexLabel>,
    pub edges: Vec<(VertexLabel, VertexLabel)>,
}

impl AbstractGraph {
    fn push_edge(&mut self, a: &str, b: &str) {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.edges.push((a.to_string(), b.to_string()));
    }

    fn sorted(mut self) -> Self {
        self.edges.sort();
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReconstructionError {
    #[error("path from {from} stops at unmarked point {at} with {ends} stick ends")]
    Dangling { from: VertexLabel, at: Point3, ends: usize },
    #[error("{0} sticks lie on closed loops without any vertex")]
    FreeCycle(usize),
    #[error("reconstructed graph differs from the input: {0}")]
    ReconstructionMismatch(String),
}

/// Rebuilds the abstract graph from sticks and markers alone.
pub fn reconstruct_graph(complex: &StickComplex) -> Result<AbstractGraph, ReconstructionError> {
    let mut at_point: BTreeMap<Point3, Vec<usize>> = BTreeMap::new();
    for (i, s) in complex.sticks.iter().enumerate() {
        at_point.entry(s.start()).or_default().push(i);
        at_point.entry(s.end()).or_default().push(i);
    }
    let by_point: BTreeMap<&Point3, &VertexLabel> = complex.markers.iter().map(|(l, p)| (p, l)).collect();
    let mut used = vec![false; complex.sticks.len()];
    let mut graph = AbstractGraph { vertices: complex.markers.keys().cloned().collect(), edges: Vec::new() };
    for (label, p) in &complex.markers {
        let incident = at_point.get(p).cloned().unwrap_or_default();
        for first in incident {
            if used[first] {
                continue;
            }
            let mut stick = first;
            let mut here = p.clone();
            loop {
                used[stick] = true;
                let s = &complex.sticks[stick];
                let next = if s.start() == here { s.end() } else { s.start() };
                if let Some(end_label) = by_point.get(&next) {
                    graph.push_edge(label, end_label);
                    break;
                }
                let ends = &at_point[&next];
                let onward: Vec<usize> = ends.iter().copied().filter(|&k| k != stick).collect();
                if ends.len() != 2 || used[onward[0]] {
                    return Err(ReconstructionError::Dangling { from: label.clone(), at: next, ends: ends.len() });
                }
                stick = onward[0];
                here = next;
            }
        }
    }
    let leftover = used.iter().filter(|u| !**u).count();
    if leftover > 0 {
        return Err(ReconstructionError::FreeCycle(leftover));
    }
    Ok(graph.sorted())
}

/// The abstract graph the input describes, with edges derived from arc walks.
pub fn expected_graph(spec: &SpatialGraphSpec) -> AbstractGraph {
    let mut g = AbstractGraph::default();
    for c in &spec.components {
        for (_, l) in c.presentation.vertex_labels() {
            g.vertices.insert(l.clone());
        }
        for e in derive_edges(c).unwrap_or_default() {
            g.push_edge(&e.start, &e.end);
        }
    }
    g.sorted()
}

pub fn compare_graphs(found: &AbstractGraph, expected: &AbstractGraph) -> Result<(), ReconstructionError> {
    if found == expected {
        return Ok(());
    }
    let mut diff = Vec::new();
    if found.vertices != expected.vertices {
        diff.push(format!("vertices {:?} vs {:?}", found.vertices, expected.vertices));
    }
    if found.edges != expected.edges {
        diff.push(format!("edges {:?} vs {:?}", found.edges, expected.edges));
    }
    Err(ReconstructionError::ReconstructionMismatch(diff.join("; ")))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StickCounts {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub total: usize,
}

/// Counts maximal straight runs; collinear sticks fuse only through unmarked
/// points where exactly two stick ends meet.
pub fn count_sticks(complex: &StickComplex) -> StickCounts {
    let n = complex.sticks.len();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut i: usize) -> usize {
        while uf[i] != i {
            uf[i] = uf[uf[i]];
            i = uf[i];
        }
        i
    }
    let mut at_point: BTreeMap<Point3, Vec<usize>> = BTreeMap::new();
    for (i, s) in complex.sticks.iter().enumerate() {
        at_point.entry(s.start()).or_default().push(i);
        at_point.entry(s.end()).or_default().push(i);
    }
    let markers: BTreeSet<&Point3> = complex.markers.values().collect();
    for (p, ends) in &at_point {
        if ends.len() != 2 || markers.contains(p) {
            continue;
        }
        let (a, b) = (&complex.sticks[ends[0]], &complex.sticks[ends[1]]);
        if a.axis == b.axis && a.fixed == b.fixed {
            let (ra, rb) = (find(&mut uf, ends[0]), find(&mut uf, ends[1]));
            uf[ra] = rb;
        }
    }
    let mut counts = StickCounts::default();
    for i in 0..n {
        if find(&mut uf, i) == i {
            match complex.sticks[i].axis {
                Axis::X => counts.x += 1,
                Axis::Y => counts.y += 1,
                Axis::Z => counts.z += 1,
            }
        }
    }
    counts.total = counts.x + counts.y + counts.z;
    counts
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub total: usize,
    pub construction_bound: i64,
    /// Present when a crossing count was declared and the arc count respects the arc index bound.
    pub theorem_bound: Option<i64>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("stick count {total} exceeds the {which} bound {bound}")]
pub struct BoundViolated {
    pub total: usize,
    pub bound: i64,
    pub which: &'static str,
}

pub fn check_bound(
    counts: &StickCounts,
    census: &GraphCensus,
    declared_crossings: Option<u64>,
) -> Result<BoundReport, BoundViolated> {
    let (e, v, s, b, k) = (census.e as i64, census.v as i64, census.s as i64, census.b as i64, census.k as i64);
    let construction = bounds::construction_count_raw(census.alpha_total as i64, e, v, s, k);
    if counts.total as i64 > construction {
        return Err(BoundViolated { total: counts.total, bound: construction, which: "construction" });
    }
    let theorem = declared_crossings.and_then(|c| {
        let c = c as i64;
        (census.alpha_total as i64 <= bounds::arc_index_upper(c, e, b)).then(|| bounds::main_upper(c, e, v, s, b, k))
    });
    if let Some(t) = theorem {
        if counts.total as i64 > t {
            return Err(BoundViolated { total: counts.total, bound: t, which: "crossing-number" });
        }
    }
    Ok(BoundReport { total: counts.total, construction_bound: construction, theorem_bound: theorem })
}

/// Combined certificate for one complex against its input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub self_avoiding: bool,
    pub violations: Vec<ContactViolation>,
    pub junctions: JunctionAudit,
    pub reconstruction: Result<(), ReconstructionError>,
    pub counts: StickCounts,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.self_avoiding && self.junctions.is_clean() && self.reconstruction.is_ok()
    }

    /// Short name of the first failing check.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(v) = self.violations.first() {
            return Some(format!("self-avoidance: {v}"));
        }
        if let Some(p) = self.junctions.unmarked_junctions.first() {
            return Some(format!("junction: unmarked junction at {p}"));
        }
        if let Some((l, want, got)) = self.junctions.incidence_mismatches.first() {
            return Some(format!("junction: vertex {l} has {got} incident sticks, expected {want}"));
        }
        if let Some(l) = self.junctions.repeated_directions.first() {
            return Some(format!("junction: vertex {l} repeats a direction"));
        }
        if let Some(l) = self.junctions.buried_markers.first() {
            return Some(format!("junction: vertex {l} lies inside a stick"));
        }
        if let Err(e) = &self.reconstruction {
            return Some(format!("reconstruction: {e}"));
        }
        None
    }
}

pub fn audit(complex: &StickComplex, spec: &SpatialGraphSpec) -> AuditReport {
    let violations = check_self_avoiding(complex);
    let junctions = audit_junctions(complex, &spec.total_degrees());
    let reconstruction = reconstruct_graph(complex).and_then(|g| compare_graphs(&g, &expected_graph(spec)));
    AuditReport {
        self_avoiding: violations.is_empty(),
        violations,
        junctions,
        reconstruction,
        counts: count_sticks(complex),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{q, Stick};
    use crate::lattice::TracePath;

    fn p(x: i64, y: i64, z: i64) -> Point3 {
        Point3::from_ints(x, y, z)
    }

    fn rectangle() -> StickComplex {
        StickComplex::from_traces(
            vec![TracePath {
                id: "e0".into(),
                component: "k".into(),
                start: "v".into(),
                end: "v".into(),
                points: vec![p(0, 0, 0), p(0, 1, 0), p(0, 1, 1), p(0, 0, 1), p(0, 0, 0)],
            }],
            BTreeMap::from([("v".to_string(), p(0, 0, 0))]),
        )
        .unwrap()
    }

    #[test]
    fn rectangle_is_clean_and_counts_four() {
        let r = rectangle();
        assert!(check_self_avoiding(&r).is_empty());
        assert_eq!(count_sticks(&r).total, 4);
        let g = reconstruct_graph(&r).unwrap();
        assert_eq!(g.edges, vec![("v".to_string(), "v".to_string())]);
        let audit = audit_junctions(&r, &BTreeMap::from([("v".to_string(), 2)]));
        assert!(audit.is_clean());
    }

    #[test]
    fn overlap_and_crossing_reported() {
        let a = Stick::between(&p(0, 0, 0), &p(2, 0, 0)).unwrap();
        let b = Stick::between(&p(1, 0, 0), &p(3, 0, 0)).unwrap();
        let c = Stick::between(&p(1, 0, -1), &p(1, 0, 1)).unwrap();
        let cx = StickComplex::raw(vec![a, b.clone()], BTreeMap::new(), BTreeSet::new());
        assert_eq!(check_self_avoiding(&cx)[0].kind, ContactKind::Overlap);
        let cx = StickComplex::raw(
            vec![Stick::between(&p(0, 0, 0), &p(2, 0, 0)).unwrap(), c],
            BTreeMap::new(),
            BTreeSet::new(),
        );
        assert_eq!(check_self_avoiding(&cx)[0].kind, ContactKind::Crossing);
    }

    #[test]
    fn marker_splits_straight_column() {
        let s1 = Stick::between(&p(0, 0, 1), &p(0, 0, 2)).unwrap();
        let s2 = Stick::between(&p(0, 0, 2), &p(0, 0, 3)).unwrap();
        let unmarked = StickComplex::raw(vec![s1.clone(), s2.clone()], BTreeMap::new(), BTreeSet::new());
        assert_eq!(count_sticks(&unmarked).total, 1);
        let marked = StickComplex::raw(vec![s1, s2], BTreeMap::from([("v".into(), p(0, 0, 2))]), BTreeSet::new());
        assert_eq!(count_sticks(&marked).total, 2);
    }

    #[test]
    fn deleted_stick_breaks_reconstruction() {
        let mut r = rectangle();
        r.sticks.remove(1);
        r.owners.remove(1);
        assert!(reconstruct_graph(&r).is_err());
    }

    #[test]
    fn count_invariant_under_scaling() {
        let r = rectangle();
        let scaled = r.transformed(&q(3), &p(5, -2, 7));
        assert_eq!(count_sticks(&scaled), count_sticks(&r));
        assert!(check_self_avoiding(&scaled).is_empty());
    }

    #[test]
    fn unmarked_triple_point_flagged() {
        let a = Stick::between(&p(0, 0, 0), &p(0, 0, 1)).unwrap();
        let b = Stick::between(&p(0, 0, 1), &p(0, 0, 2)).unwrap();
        let c = Stick::between(&p(0, 0, 1), &p(1, 0, 1)).unwrap();
        let cx = StickComplex::raw(vec![a, b, c], BTreeMap::new(), BTreeSet::from([p(0, 0, 1)]));
        let audit = audit_junctions(&cx, &BTreeMap::new());
        assert_eq!(audit.unmarked_junctions, vec![p(0, 0, 1)]);
    }
}
