//! Stacking component presentations along the cut tree and rendering the
//! combined complex.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arc_presentation::{EdgeTrace, VertexLabel};
use crate::geometry::{q, q_frac, Dir, Point3, Stick, Q};
use crate::graph_model::{ComponentClass, CutTree};
use crate::lattice::complex::{ComplexError, StickComplex, TracePath};
use crate::lattice::component::{ComponentLayout, Planar};
use crate::validate::{check_self_avoiding, ContactViolation};

/// A component layout placed by `global = scale * local + (shift, lift)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placed {
    pub layout: ComponentLayout,
    pub class: ComponentClass,
    pub scale: Q,
    pub shift: Planar,
    pub lift: Q,
    /// Stem tree index and cut vertex.
    pub parent: Option<(usize, VertexLabel)>,
    pub straightened: bool,
}

/// Arc end at a vertex: `(component tree index, arc index, is the lo end)`.
pub type PortKey = (usize, usize, bool);

/// One horizontal (or, once straightened, vertical) attachment of an arc to a vertex column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Port {
    pub key: PortKey,
    pub z: Q,
    /// Outward direction of the arc's first stick, seen from the column.
    pub dir: Dir,
    /// Whether that first stick ends at a corner whose next stick is horizontal.
    pub elbow: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    /// Slide the segment of the stick next to the column down to the pivot.
    DropDown,
    /// Translate the stick sideways and stretch its neighbour.
    Translate,
    /// Extend the stick through the column and drop from the far side.
    Extend,
}

/// How a merged arc end reaches the pivot: a short horizontal stick along
/// `pivot_dir` of length `offset`, then a vertical stick up to the arc level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub pivot_dir: Dir,
    pub offset: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalEdge {
    pub id: String,
    pub comp: usize,
    pub trace: EdgeTrace,
}

#[derive(Debug, Error)]
pub enum AssemblyError {
    #[error("assembled components intersect: {0}")]
    AssemblyCollision(ContactViolation),
    #[error("edge tracing failed: {0}")]
    Trace(#[from] crate::arc_presentation::PresentationError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    pub tree: CutTree,
    pub comps: Vec<Placed>,
    pub edges: Vec<GlobalEdge>,
    pub moves: BTreeMap<PortKey, Move>,
}

fn at(p: &Planar, z: &Q) -> Point3 {
    Point3::new(p.0.clone(), p.1.clone(), z.clone())
}

fn half_powers_below(limit: &Q) -> Q {
    let mut s = Q::one();
    while s > *limit {
        s /= q(2);
    }
    s
}

/// Stacks components in tree order; each branch is shrunk into a thin prism
/// around the column of its cut vertex in the stem and joined by a vertical connector.
pub fn assemble(tree: &CutTree, layouts: Vec<(ComponentLayout, ComponentClass)>) -> Result<Assembly, AssemblyError> {
    let mut comps: Vec<Placed> = Vec::with_capacity(layouts.len());
    let mut top = Q::zero();
    for (idx, (layout, class)) in layouts.into_iter().enumerate() {
        let parent = tree.parent[idx].clone();
        let (scale, shift) = match &parent {
            None => (Q::one(), (Q::zero(), Q::zero())),
            Some((stem, cut)) => {
                let stem = &comps[*stem];
                let stem_bp = stem.layout.presentation.vertex_binding(cut).expect("validated cut vertex");
                let radius = &stem.scale * stem.layout.min_axis_separation() / q(4);
                let bp = layout.presentation.vertex_binding(cut).expect("validated cut vertex");
                let extent = layout.extent_from(bp);
                let scale = half_powers_below(&(radius / (q(2) * extent)));
                let target = stem.global_planar(stem.layout.axis(stem_bp));
                let local = layout.axis(bp);
                let shift = (&target.0 - &scale * &local.0, &target.1 - &scale * &local.1);
                (scale, shift)
            }
        };
        let lift = top.clone();
        top = &lift + &scale * q(layout.presentation.alpha() as i64);
        comps.push(Placed { layout, class, scale, shift, lift, parent, straightened: false });
    }
    let mut edges = Vec::new();
    for (idx, c) in comps.iter().enumerate() {
        for (n, trace) in c.layout.presentation.trace_edges()?.into_iter().enumerate() {
            edges.push(GlobalEdge { id: format!("{}/e{}", c.layout.id, n), comp: idx, trace });
        }
    }
    let assembly = Assembly { tree: tree.clone(), comps, edges, moves: BTreeMap::new() };
    if let Some(v) = check_self_avoiding(&assembly.raw_complex()).into_iter().next() {
        return Err(AssemblyError::AssemblyCollision(v));
    }
    Ok(assembly)
}

impl Placed {
    pub fn global_planar(&self, p: &Planar) -> Planar {
        (&self.scale * &p.0 + &self.shift.0, &self.scale * &p.1 + &self.shift.1)
    }

    pub fn global_level(&self, arc: usize) -> Q {
        &self.scale * self.layout.level(arc) + &self.lift
    }

    pub fn global_path(&self, arc: usize) -> Vec<Point3> {
        let z = self.global_level(arc);
        self.layout.paths[arc].iter().map(|p| at(&self.global_planar(p), &z)).collect()
    }

    pub fn contains_vertex(&self, label: &str) -> Option<usize> {
        self.layout.presentation.vertex_binding(label)
    }
}

impl Assembly {
    pub fn vertex_labels(&self) -> BTreeSet<VertexLabel> {
        self.comps
            .iter()
            .flat_map(|c| c.layout.presentation.vertex_labels().map(|(_, l)| l.clone()))
            .collect()
    }

    /// Global column position of a vertex.
    pub fn vertex_axis(&self, label: &str) -> Planar {
        let (idx, c) = self
            .comps
            .iter()
            .enumerate()
            .find(|(_, c)| c.contains_vertex(label).is_some())
            .expect("known vertex");
        if c.straightened {
            let (_, a) = c.parent.as_ref().expect("straightened arcs have a stem");
            debug_assert!(idx > 0);
            return self.vertex_axis(a);
        }
        c.global_planar(c.layout.axis(c.contains_vertex(label).expect("checked")))
    }

    /// Arc ends at the vertex, sorted bottom to top.
    pub fn ports(&self, label: &str) -> Vec<Port> {
        let mut out = Vec::new();
        for (ci, c) in self.comps.iter().enumerate() {
            let Some(bp) = c.contains_vertex(label) else { continue };
            for arc in c.layout.presentation.incident_arcs(bp) {
                let at_lo = c.layout.presentation.arcs[arc].lo == bp;
                let mut path = c.layout.paths[arc].clone();
                if !at_lo {
                    path.reverse();
                }
                let p0 = at(&path[0], &Q::zero());
                let p1 = at(&path[1], &Q::zero());
                let dir = p0.dir_to(&p1).expect("arc paths are axis-parallel");
                out.push(Port { key: (ci, arc, at_lo), z: c.global_level(arc), dir, elbow: path.len() >= 3 });
            }
        }
        out.sort_by(|a, b| a.z.cmp(&b.z));
        out
    }

    pub fn degree(&self, label: &str) -> usize {
        self.ports(label).len()
    }

    /// Vertex position: lowest port for degree at most 2, else the second port (the pivot).
    pub fn marker(&self, label: &str) -> Point3 {
        let ports = self.ports(label);
        let z = if ports.len() <= 2 { &ports[0].z } else { &ports[1].z };
        at(&self.vertex_axis(label), z)
    }

    /// Half the smallest component scale among the components meeting the vertex.
    pub fn merge_unit(&self, label: &str) -> Q {
        self.comps
            .iter()
            .filter(|c| c.contains_vertex(label).is_some())
            .map(|c| c.scale.clone())
            .min()
            .expect("known vertex")
            * q_frac(1, 2)
    }

    /// Intermediate complex with every vertex still smeared along its column.
    pub fn raw_complex(&self) -> StickComplex {
        let mut sticks = Vec::new();
        let mut junctions = BTreeSet::new();
        for c in &self.comps {
            if !c.straightened {
                for arc in 0..c.layout.paths.len() {
                    let path = c.global_path(arc);
                    for w in path.windows(2) {
                        sticks.push(Stick::between(&w[0], &w[1]).expect("axis-parallel arc"));
                    }
                    for p in &path[1..path.len() - 1] {
                        junctions.insert(p.clone());
                    }
                }
            }
            for bp in 1..=c.layout.presentation.beta() {
                if c.straightened {
                    break;
                }
                let axis = c.global_planar(c.layout.axis(bp));
                let levels: Vec<Q> = c
                    .layout
                    .presentation
                    .incident_arcs(bp)
                    .into_iter()
                    .map(|a| c.global_level(a))
                    .collect();
                for z in &levels {
                    junctions.insert(at(&axis, z));
                }
                for w in levels.windows(2) {
                    sticks.push(Stick::between(&at(&axis, &w[0]), &at(&axis, &w[1])).expect("distinct levels"));
                }
            }
        }
        for (_, low, high) in self.connectors() {
            junctions.insert(low.clone());
            junctions.insert(high.clone());
            sticks.push(Stick::between(&low, &high).expect("connector is vertical"));
        }
        let markers = self.vertex_labels().into_iter().map(|l| {
            let m = self.marker(&l);
            (l, m)
        });
        StickComplex::raw(sticks, markers.collect(), junctions)
    }

    fn column_levels(&self, comp: usize, label: &str) -> (Planar, Vec<Q>) {
        let c = &self.comps[comp];
        let bp = c.contains_vertex(label).expect("vertex in component");
        let levels = c.layout.presentation.incident_arcs(bp).into_iter().map(|a| c.global_level(a)).collect();
        let axis = if c.straightened { self.vertex_axis(label) } else { c.global_planar(c.layout.axis(bp)) };
        (axis, levels)
    }

    /// Vertical sticks joining each stem column top to its branch column bottom.
    pub fn connectors(&self) -> Vec<(usize, Point3, Point3)> {
        self.comps
            .iter()
            .enumerate()
            .filter_map(|(idx, c)| {
                let (stem, cut) = c.parent.as_ref()?;
                Some((idx, self.column_top(*stem, cut), self.column_bottom(idx, cut)))
            })
            .collect()
    }

    /// Global column axis of a vertex inside one component.
    pub fn column_axis(&self, comp: usize, label: &str) -> Planar {
        self.column_levels(comp, label).0
    }

    pub fn column_top(&self, comp: usize, label: &str) -> Point3 {
        let (axis, levels) = self.column_levels(comp, label);
        at(&axis, levels.last().expect("nonempty column"))
    }

    pub fn column_bottom(&self, comp: usize, label: &str) -> Point3 {
        let (axis, levels) = self.column_levels(comp, label);
        at(&axis, &levels[0])
    }

    fn arc_points(&self, comp: usize, arc: usize) -> Vec<Point3> {
        let mut pts = self.comps[comp].global_path(arc);
        let n = pts.len();
        for (at_lo, near, far) in [(true, 0, 1), (false, n - 1, n - 2)] {
            if let Some(m) = self.moves.get(&(comp, arc, at_lo)) {
                if m.kind == MoveKind::Translate {
                    pts[near] = pts[near].step(m.pivot_dir, &m.offset);
                    pts[far] = pts[far].step(m.pivot_dir, &m.offset);
                }
            }
        }
        pts
    }

    /// Points from the vertex marker to where the arc end leaves its column.
    fn route(&self, label: &str, key: &PortKey) -> Vec<Point3> {
        let marker = self.marker(label);
        let axis = self.vertex_axis(label);
        let (comp, arc, _) = *key;
        let z = self.comps[comp].global_level(arc);
        match self.moves.get(key) {
            None => vec![marker, at(&axis, &z)],
            Some(m) => {
                let off = marker.step(m.pivot_dir, &m.offset);
                let top = at(&axis, &z).step(m.pivot_dir, &m.offset);
                vec![marker, off, top]
            }
        }
    }

    pub fn edge_points(&self, edge: &GlobalEdge) -> Vec<Point3> {
        let c = edge.comp;
        let steps = &edge.trace.steps;
        let (first_arc, first_fwd) = steps[0];
        let (last_arc, last_fwd) = *steps.last().expect("nonempty trace");
        let mut pts = self.route(&edge.trace.start, &(c, first_arc, first_fwd));
        let mut tail = self.route(&edge.trace.end, &(c, last_arc, !last_fwd));
        tail.reverse();
        if !self.comps[c].straightened {
            let n = steps.len();
            for (i, &(arc, fwd)) in steps.iter().enumerate() {
                let mut arc_pts = self.arc_points(c, arc);
                if !fwd {
                    arc_pts.reverse();
                }
                let from = usize::from(i == 0);
                let to = arc_pts.len() - usize::from(i == n - 1);
                if from < to {
                    pts.extend_from_slice(&arc_pts[from..to]);
                }
            }
        }
        pts.extend(tail);
        pts
    }

    /// Complex built edge by edge from the current merge moves.
    pub fn traced_complex(&self) -> Result<StickComplex, ComplexError> {
        let traces = self
            .edges
            .iter()
            .map(|e| TracePath {
                id: e.id.clone(),
                component: self.comps[e.comp].layout.id.clone(),
                start: e.trace.start.clone(),
                end: e.trace.end.clone(),
                points: self.edge_points(e),
            })
            .collect();
        let markers = self.vertex_labels().into_iter().map(|l| {
            let m = self.marker(&l);
            (l, m)
        });
        StickComplex::from_traces(traces, markers.collect())
    }
}
