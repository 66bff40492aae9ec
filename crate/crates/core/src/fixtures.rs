//! Named example graphs.

use crate::arc_presentation::{Arc, ArcPresentation};
use crate::graph_model::{ComponentSpec, CutAttachment, SpatialGraphSpec};

/// Names accepted by the `demo` command.
pub const DEMO_NAMES: [&str; 6] = ["unknot", "trefoil", "figure8", "theta-planar", "bouquet3", "theta-composite"];

pub fn presentation(labels: &[Option<&str>], arcs: &[(u32, usize, usize)]) -> ArcPresentation {
    ArcPresentation {
        binding_points: labels.iter().map(|l| l.map(str::to_string)).collect(),
        arcs: arcs.iter().map(|&(p, a, b)| Arc::new(p, a, b)).collect(),
    }
}

fn component(id: &str, labels: &[Option<&str>], arcs: &[(u32, usize, usize)]) -> ComponentSpec {
    ComponentSpec { id: id.to_string(), presentation: presentation(labels, arcs) }
}

fn attach(stem: &str, branch: &str, cut: &str) -> CutAttachment {
    CutAttachment { stem: stem.into(), branch: branch.into(), cut_vertex: cut.into() }
}

fn single(c: ComponentSpec, crossings: Option<u64>) -> SpatialGraphSpec {
    SpatialGraphSpec { components: vec![c], attachments: Vec::new(), declared_crossings: crossings }
}

const TREFOIL_ARCS: [(u32, usize, usize); 5] = [(1, 1, 3), (3, 3, 5), (5, 2, 5), (2, 2, 4), (4, 1, 4)];
const FIGURE8_ARCS: [(u32, usize, usize); 6] = [(1, 1, 3), (4, 3, 5), (2, 2, 5), (6, 2, 6), (3, 4, 6), (5, 1, 4)];
const BOUQUET3_ARCS: [(u32, usize, usize); 6] = [(1, 1, 2), (2, 1, 2), (3, 1, 3), (4, 1, 3), (5, 1, 4), (6, 1, 4)];

pub fn by_name(name: &str) -> Option<SpatialGraphSpec> {
    Some(match name {
        "unknot" => unknot(),
        "trefoil" => trefoil(),
        "figure8" => figure8(),
        "theta-planar" => theta_planar(),
        "bouquet3" => bouquet3(),
        "theta-composite" => theta_composite(),
        _ => return None,
    })
}

/// Knot component on two binding points.
pub fn unknot() -> SpatialGraphSpec {
    single(component("unknot", &[Some("v"), None], &[(1, 1, 2), (2, 1, 2)]), Some(0))
}

pub fn trefoil() -> SpatialGraphSpec {
    single(component("trefoil", &[Some("v"), None, None, None, None], &TREFOIL_ARCS), Some(3))
}

pub fn figure8() -> SpatialGraphSpec {
    single(component("figure8", &[Some("v"), None, None, None, None, None], &FIGURE8_ARCS), Some(4))
}

/// Three parallel edges between two vertices.
pub fn theta_planar() -> SpatialGraphSpec {
    single(component("theta", &[Some("v1"), Some("v2")], &[(1, 1, 2), (2, 1, 2), (3, 1, 2)]), Some(0))
}

/// One vertex carrying three loops.
pub fn bouquet3() -> SpatialGraphSpec {
    single(component("bouquet", &[Some("v"), None, None, None], &BOUQUET3_ARCS), Some(0))
}

/// A theta-curve with an unknotted loop hung on one vertex.
pub fn theta_composite() -> SpatialGraphSpec {
    SpatialGraphSpec {
        components: vec![
            component("theta", &[Some("v1"), Some("v2")], &[(1, 1, 2), (2, 1, 2), (3, 1, 2)]),
            component("loop", &[Some("v1"), None, None], &[(1, 1, 2), (2, 2, 3), (3, 1, 3)]),
        ],
        attachments: vec![attach("theta", "loop", "v1")],
        declared_crossings: Some(0),
    }
}

/// A theta-curve with a trefoil-knotted loop hung on one vertex.
pub fn theta_trefoil_loop() -> SpatialGraphSpec {
    SpatialGraphSpec {
        components: vec![
            component("theta", &[Some("v1"), Some("v2")], &[(1, 1, 2), (2, 1, 2), (3, 1, 2)]),
            component("loop", &[Some("v1"), None, None, None, None], &TREFOIL_ARCS),
        ],
        attachments: vec![attach("theta", "loop", "v1")],
        declared_crossings: Some(3),
    }
}

/// Two theta-curves joined by an edge.
pub fn theta_arc_theta() -> SpatialGraphSpec {
    SpatialGraphSpec {
        components: vec![
            component("t1", &[Some("v1"), Some("v2"), None], &[(1, 1, 2), (2, 1, 2), (3, 1, 3), (4, 2, 3)]),
            component("arc", &[Some("v2"), Some("v3")], &[(1, 1, 2)]),
            component("t2", &[Some("v3"), Some("v4")], &[(1, 1, 2), (2, 1, 2), (3, 1, 2)]),
        ],
        attachments: vec![attach("t1", "arc", "v2"), attach("arc", "t2", "v3")],
        declared_crossings: Some(0),
    }
}

/// A split pair: an unknot next to a theta-curve.
pub fn two_trees() -> SpatialGraphSpec {
    SpatialGraphSpec {
        components: vec![
            component("knot", &[Some("u"), None], &[(1, 1, 2), (2, 1, 2)]),
            component("theta", &[Some("v1"), Some("v2")], &[(1, 1, 2), (2, 1, 2), (3, 1, 2)]),
        ],
        attachments: Vec::new(),
        declared_crossings: Some(0),
    }
}

/// Every named graph, including the ones without a demo name.
pub fn all() -> Vec<(&'static str, SpatialGraphSpec)> {
    let mut out: Vec<(&'static str, SpatialGraphSpec)> =
        DEMO_NAMES.iter().map(|n| (*n, by_name(n).expect("demo name"))).collect();
    out.push(("theta-trefoil-loop", theta_trefoil_loop()));
    out.push(("theta-arc-theta", theta_arc_theta()));
    out.push(("two-trees", two_trees()));
    out
}
