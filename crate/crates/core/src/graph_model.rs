//! The abstract spatial graph: cut-components, their attachment tree and the
//! counts every bound is phrased in.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::arc_presentation::{validate_presentation, ArcPresentation, EdgeTrace, PresentationError, VertexLabel};
use crate::report::{ValidationReport, ViolationKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSpec {
    pub id: String,
    pub presentation: ArcPresentation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutAttachment {
    pub stem: String,
    pub branch: String,
    pub cut_vertex: VertexLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpatialGraphSpec {
    pub components: Vec<ComponentSpec>,
    pub attachments: Vec<CutAttachment>,
    /// Crossing count of some diagram of the graph, an upper bound on its crossing number.
    pub declared_crossings: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentClass {
    Arc,
    ThetaN(usize),
    Bouquet,
    Knot,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCensus {
    pub e: usize,
    pub v: usize,
    pub s: usize,
    pub b: usize,
    pub k: usize,
    pub alpha_total: usize,
    pub degrees: BTreeMap<VertexLabel, usize>,
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid spatial graph:\n{0}")]
    Invalid(ValidationReport),
    #[error("no admissible root among components {0:?}")]
    NoValidRoot(Vec<String>),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Cut-components re-indexed by a depth-first linear extension of the attachment forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutTree {
    /// `order[i]` is the position in `SpatialGraphSpec::components` of the component with tree index `i`.
    pub order: Vec<usize>,
    /// Stem tree index and cut vertex for every non-root component.
    pub parent: Vec<Option<(usize, VertexLabel)>>,
    pub roots: Vec<usize>,
}

impl CutTree {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn children(&self, idx: usize) -> Vec<(usize, &VertexLabel)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(j, p)| match p {
                Some((i, c)) if *i == idx => Some((j, c)),
                _ => None,
            })
            .collect()
    }

    /// Tree indices of `idx` and all of its descendants.
    pub fn subtree(&self, idx: usize) -> Vec<usize> {
        let mut out = vec![idx];
        let mut k = 0;
        while k < out.len() {
            let cur = out[k];
            out.extend(self.children(cur).into_iter().map(|(j, _)| j));
            k += 1;
        }
        out.sort_unstable();
        out
    }
}

pub fn derive_edges(component: &ComponentSpec) -> Result<Vec<EdgeTrace>, PresentationError> {
    component.presentation.trace_edges()
}

/// Classifies a component; `attached` says whether it meets any other component.
///
/// A single vertex with a single loop is a knot component only when it stands
/// alone; attached, it is a one-loop bouquet.
pub fn classify_component(component: &ComponentSpec, attached: bool) -> Result<ComponentClass, PresentationError> {
    let edges = derive_edges(component)?;
    let v = component.presentation.labeled_count();
    let e = edges.len();
    let class = if v == 2 && e == 1 && !edges[0].is_loop() {
        ComponentClass::Arc
    } else if v == 1 && e == 1 && !attached {
        ComponentClass::Knot
    } else if v == 1 {
        ComponentClass::Bouquet
    } else if v == 2 && e >= 2 && edges.iter().all(|t| !t.is_loop()) {
        ComponentClass::ThetaN(e)
    } else {
        ComponentClass::General
    };
    Ok(class)
}

impl SpatialGraphSpec {
    pub fn component_index(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    pub fn is_attached(&self, idx: usize) -> bool {
        let id = &self.components[idx].id;
        self.attachments.iter().any(|a| &a.stem == id || &a.branch == id)
    }

    pub fn classify(&self, idx: usize) -> Result<ComponentClass, PresentationError> {
        classify_component(&self.components[idx], self.is_attached(idx))
    }

    /// Total degree of every vertex label, summed over components.
    pub fn total_degrees(&self) -> BTreeMap<VertexLabel, usize> {
        let mut deg = BTreeMap::new();
        for c in &self.components {
            for (bp, label) in c.presentation.vertex_labels() {
                *deg.entry(label.clone()).or_insert(0) += c.presentation.degree(bp);
            }
        }
        deg
    }
}

/// Every inconsistency of the input; an empty report means the spec is buildable.
pub fn validate_spec(spec: &SpatialGraphSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut ids = BTreeSet::new();
    for c in &spec.components {
        if !ids.insert(c.id.as_str()) {
            report.push(ViolationKind::DuplicateComponent, c.id.clone());
        }
        for mut v in validate_presentation(&c.presentation).violations {
            v.detail = format!("component {}: {}", c.id, v.detail);
            report.violations.push(v);
        }
    }
    if !report.is_clean() {
        return report;
    }

    let mut stems_of: BTreeMap<&str, usize> = BTreeMap::new();
    let mut siblings: BTreeMap<(&str, &str), &str> = BTreeMap::new();
    let mut parent_uf: Vec<usize> = (0..spec.components.len()).collect();
    fn find(uf: &mut [usize], mut i: usize) -> usize {
        while uf[i] != i {
            uf[i] = uf[uf[i]];
            i = uf[i];
        }
        i
    }
    for a in &spec.attachments {
        let (Some(si), Some(bi)) = (spec.component_index(&a.stem), spec.component_index(&a.branch)) else {
            report.push(ViolationKind::UnknownComponent, format!("{} -> {}", a.stem, a.branch));
            continue;
        };
        if si == bi {
            report.push(ViolationKind::SelfAttachment, a.stem.clone());
            continue;
        }
        for idx in [si, bi] {
            if spec.components[idx].presentation.vertex_binding(&a.cut_vertex).is_none() {
                report.push(
                    ViolationKind::CutVertexMissing,
                    format!("{} not in component {}", a.cut_vertex, spec.components[idx].id),
                );
            }
        }
        *stems_of.entry(a.branch.as_str()).or_insert(0) += 1;
        if let Some(other) = siblings.insert((a.stem.as_str(), a.cut_vertex.as_str()), a.branch.as_str()) {
            report.push(
                ViolationKind::SiblingsShareCutVertex,
                format!("{} and {} under {} at {}", other, a.branch, a.stem, a.cut_vertex),
            );
        }
        let (ri, rj) = (find(&mut parent_uf, si), find(&mut parent_uf, bi));
        if ri == rj {
            report.push(ViolationKind::AttachmentCycle, format!("{} -> {}", a.stem, a.branch));
        } else {
            parent_uf[ri] = rj;
        }
    }
    for (branch, n) in stems_of {
        if n > 1 {
            report.push(ViolationKind::MultipleStems, format!("{branch} has {n} stems"));
        }
    }

    // A label in several components must be tied together by attachments at that label.
    let mut holders: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, c) in spec.components.iter().enumerate() {
        for (_, l) in c.presentation.vertex_labels() {
            holders.entry(l.as_str()).or_default().push(i);
        }
    }
    for (label, comps) in &holders {
        if comps.len() < 2 {
            continue;
        }
        let mut reached = BTreeSet::from([comps[0]]);
        let mut changed = true;
        while changed {
            changed = false;
            for a in spec.attachments.iter().filter(|a| a.cut_vertex == *label) {
                if let (Some(si), Some(bi)) = (spec.component_index(&a.stem), spec.component_index(&a.branch)) {
                    if reached.contains(&si) != reached.contains(&bi) {
                        reached.insert(si);
                        reached.insert(bi);
                        changed = true;
                    }
                }
            }
        }
        if comps.iter().any(|c| !reached.contains(c)) {
            report.push(ViolationKind::SharedVertexWithoutAttachment, label.to_string());
        }
    }

    for (label, d) in spec.total_degrees() {
        let lone_knot = holders.get(label.as_str()).is_some_and(|h| {
            h.len() == 1 && matches!(spec.classify(h[0]), Ok(ComponentClass::Knot))
        });
        let ok = (3..=6).contains(&d) || (d == 2 && lone_knot);
        if !ok {
            report.push(ViolationKind::DegreeOutOfRange, format!("vertex {label} has degree {d}"));
        }
    }
    report
}

fn check_clean(spec: &SpatialGraphSpec) -> Result<(), GraphError> {
    let report = validate_spec(spec);
    if report.is_clean() {
        Ok(())
    } else {
        Err(GraphError::Invalid(report))
    }
}

pub fn census(spec: &SpatialGraphSpec) -> Result<GraphCensus, GraphError> {
    check_clean(spec)?;
    let mut e = 0;
    let mut b = 0;
    let mut k = 0;
    for (i, c) in spec.components.iter().enumerate() {
        e += derive_edges(c)?.len();
        match spec.classify(i)? {
            ComponentClass::Knot => {
                b += 1;
                k += 1;
            }
            ComponentClass::Bouquet => b += 1,
            _ => {}
        }
    }
    let degrees = spec.total_degrees();
    Ok(GraphCensus {
        e,
        v: degrees.len(),
        s: spec.components.len(),
        b,
        k,
        alpha_total: spec.components.iter().map(|c| c.presentation.alpha()).sum(),
        degrees,
    })
}

pub fn build_cut_tree(spec: &SpatialGraphSpec) -> Result<CutTree, GraphError> {
    check_clean(spec)?;
    let n = spec.components.len();
    let mut adj: Vec<Vec<(usize, VertexLabel)>> = vec![Vec::new(); n];
    for a in &spec.attachments {
        let si = spec.component_index(&a.stem).expect("validated");
        let bi = spec.component_index(&a.branch).expect("validated");
        adj[si].push((bi, a.cut_vertex.clone()));
        adj[bi].push((si, a.cut_vertex.clone()));
    }
    for list in &mut adj {
        list.sort();
    }

    let mut tree = CutTree { order: Vec::new(), parent: Vec::new(), roots: Vec::new() };
    let mut assigned = vec![false; n];
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        let mut members = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for (d, _) in &adj[c] {
                if members.insert(*d) {
                    stack.push(*d);
                }
            }
        }
        let mut oriented = None;
        for &root in &members {
            if matches!(spec.classify(root)?, ComponentClass::Arc) {
                continue;
            }
            let (order, parent) = orient(&adj, root);
            if siblings_distinct(&parent) {
                oriented = Some((order, parent));
                break;
            }
        }
        let Some((order, parent)) = oriented else {
            return Err(GraphError::NoValidRoot(
                members.iter().map(|&i| spec.components[i].id.clone()).collect(),
            ));
        };
        let base = tree.order.len();
        tree.roots.push(base);
        let local: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &c)| (c, base + i)).collect();
        for (c, p) in order.iter().zip(parent) {
            assigned[*c] = true;
            tree.order.push(*c);
            tree.parent.push(p.map(|(pc, label)| (local[&pc], label)));
        }
    }
    Ok(tree)
}

type Oriented = (Vec<usize>, Vec<Option<(usize, VertexLabel)>>);

fn orient(adj: &[Vec<(usize, VertexLabel)>], root: usize) -> Oriented {
    let mut order = Vec::new();
    let mut parent = Vec::new();
    let mut stack = vec![(root, None::<(usize, VertexLabel)>)];
    let mut seen = BTreeSet::new();
    while let Some((c, p)) = stack.pop() {
        if !seen.insert(c) {
            continue;
        }
        order.push(c);
        parent.push(p);
        for (d, label) in adj[c].iter().rev() {
            if !seen.contains(d) {
                stack.push((*d, Some((c, label.clone()))));
            }
        }
    }
    (order, parent)
}

fn siblings_distinct(parent: &[Option<(usize, VertexLabel)>]) -> bool {
    let mut seen = BTreeSet::new();
    parent.iter().flatten().all(|(p, l)| seen.insert((*p, l.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn knot_component_census() {
        let spec = fixtures::unknot();
        let c = census(&spec).unwrap();
        assert_eq!((c.e, c.v, c.s, c.b, c.k), (1, 1, 1, 1, 1));
        assert_eq!(spec.classify(0).unwrap(), ComponentClass::Knot);
    }

    #[test]
    fn theta_census_and_class() {
        let spec = fixtures::theta_planar();
        let c = census(&spec).unwrap();
        assert_eq!((c.e, c.v, c.s, c.b, c.k), (3, 2, 1, 0, 0));
        assert_eq!(spec.classify(0).unwrap(), ComponentClass::ThetaN(3));
    }

    #[test]
    fn theta_with_trefoil_loop_census() {
        let spec = fixtures::theta_trefoil_loop();
        let c = census(&spec).unwrap();
        assert_eq!((c.e, c.v, c.s, c.b, c.k), (4, 2, 2, 1, 0));
        assert_eq!(spec.classify(1).unwrap(), ComponentClass::Bouquet);
        let sum: usize = c.degrees.values().sum();
        assert_eq!(sum, 2 * c.e);
    }

    #[test]
    fn arc_class() {
        let spec = fixtures::theta_arc_theta();
        assert_eq!(spec.classify(1).unwrap(), ComponentClass::Arc);
    }

    #[test]
    fn degree_eight_rejected() {
        let mut spec = fixtures::bouquet3();
        // a fourth loop through two fresh binding points raises the vertex to degree 8
        let p = &mut spec.components[0].presentation;
        let beta = p.binding_points.len();
        p.binding_points.push(None);
        let alpha = p.arcs.len() as u32;
        p.arcs.push(crate::arc_presentation::Arc::new(alpha + 1, 1, beta + 1));
        p.arcs.push(crate::arc_presentation::Arc::new(alpha + 2, 1, beta + 1));
        let r = validate_spec(&spec);
        assert!(r.has(ViolationKind::DegreeOutOfRange), "{r}");
    }

    #[test]
    fn siblings_sharing_cut_vertex_rejected() {
        let mut spec = fixtures::theta_composite();
        let mut extra = spec.components[1].clone();
        extra.id = "loop2".into();
        spec.components.push(extra);
        spec.attachments.push(CutAttachment {
            stem: spec.components[0].id.clone(),
            branch: "loop2".into(),
            cut_vertex: spec.attachments[0].cut_vertex.clone(),
        });
        assert!(validate_spec(&spec).has(ViolationKind::SiblingsShareCutVertex));
    }

    #[test]
    fn lone_knot_degree_two_valid() {
        assert!(validate_spec(&fixtures::unknot()).is_clean());
    }

    #[test]
    fn composite_tree_rooted_at_theta() {
        let spec = fixtures::theta_composite();
        let t = build_cut_tree(&spec).unwrap();
        assert_eq!(t.roots, vec![0]);
        assert_eq!(spec.components[t.order[0]].id, "theta");
        assert_eq!(t.children(0).len(), 1);
    }

    #[test]
    fn chain_rerooted_from_arc() {
        // declare the arc as stem of both thetas; the tree must be re-rooted at a theta
        let mut spec = fixtures::theta_arc_theta();
        spec.components.swap(0, 1);
        spec.attachments = vec![
            CutAttachment { stem: "arc".into(), branch: "t1".into(), cut_vertex: "v2".into() },
            CutAttachment { stem: "arc".into(), branch: "t2".into(), cut_vertex: "v3".into() },
        ];
        let t = build_cut_tree(&spec).unwrap();
        let ids: Vec<&str> = t.order.iter().map(|&i| spec.components[i].id.as_str()).collect();
        assert_eq!(ids, vec!["t1", "arc", "t2"]);
        assert_eq!(t.parent[1], Some((0, "v2".to_string())));
        assert_eq!(t.parent[2], Some((1, "v3".to_string())));
    }

    #[test]
    fn splittable_input_is_a_forest() {
        let spec = fixtures::two_trees();
        let t = build_cut_tree(&spec).unwrap();
        assert_eq!(t.roots.len(), 2);
        let attachments = t.parent.iter().flatten().count();
        assert_eq!(attachments, t.len() - t.roots.len());
    }

    #[test]
    fn unattached_shared_label_rejected() {
        let mut spec = fixtures::theta_composite();
        spec.attachments.clear();
        assert!(validate_spec(&spec).has(ViolationKind::SharedVertexWithoutAttachment));
    }
}
