//! Lattice presentation of one cut-component in its own integer frame.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arc_presentation::ArcPresentation;
use crate::geometry::{q, Point3, Stick, Q};
use crate::graph_model::ComponentClass;
use crate::lattice::complex::StickComplex;
use crate::validate::check_self_avoiding;

/// Point in the horizontal plane of a component frame.
pub type Planar = (Q, Q);

/// Arcs drawn as horizontal elbows below the diagonal, optionally joined by columns.
///
/// Binding point `i` starts at `(i, i)`; the arc on page `l` between `p < q`
/// is the x-stick `y = p, x in [p, q]` followed by the y-stick `x = q, y in [p, q]`,
/// both at height `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLayout {
    pub id: String,
    pub presentation: ArcPresentation,
    /// Column position of each binding point (index `bp - 1`).
    pub axes: Vec<Planar>,
    /// Horizontal path of each arc from its `lo` axis to its `hi` axis.
    pub paths: Vec<Vec<Planar>>,
    pub columns: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlideSide {
    First,
    Last,
}

impl std::fmt::Display for SlideSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SlideSide::First => "first",
            SlideSide::Last => "last",
        })
    }
}

/// A side-slide that was skipped because it would degenerate the component.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("side-slide at the {side} binding point of {component} blocked: {reason}")]
pub struct SlideBlocked {
    pub component: String,
    pub side: SlideSide,
    pub reason: String,
}

pub fn build_arc_diagram(id: &str, pres: &ArcPresentation) -> ComponentLayout {
    let axes = (1..=pres.beta() as i64).map(|i| (q(i), q(i))).collect();
    let paths = pres
        .arcs
        .iter()
        .map(|a| {
            let (p, h) = (q(a.lo as i64), q(a.hi as i64));
            vec![(p.clone(), p.clone()), (h.clone(), p), (h.clone(), h)]
        })
        .collect();
    ComponentLayout { id: id.to_string(), presentation: pres.clone(), axes, paths, columns: false }
}

pub fn add_columns(mut layout: ComponentLayout) -> ComponentLayout {
    layout.columns = true;
    layout
}

fn at(p: &Planar, z: &Q) -> Point3 {
    Point3::new(p.0.clone(), p.1.clone(), z.clone())
}

impl ComponentLayout {
    pub fn level(&self, arc: usize) -> Q {
        q(self.presentation.arcs[arc].page as i64)
    }

    pub fn axis(&self, bp: usize) -> &Planar {
        &self.axes[bp - 1]
    }

    /// Sorted heights of the arcs meeting `bp`.
    pub fn levels(&self, bp: usize) -> Vec<Q> {
        self.presentation.incident_arcs(bp).into_iter().map(|i| self.level(i)).collect()
    }

    /// Marker height for a labeled binding point: lowest level for degree <= 2,
    /// otherwise the second level from the bottom.
    pub fn marker_level(&self, bp: usize) -> Q {
        let levels = self.levels(bp);
        if levels.len() <= 2 {
            levels[0].clone()
        } else {
            levels[1].clone()
        }
    }

    pub fn arc_sticks(&self) -> Vec<Stick> {
        let mut out = Vec::new();
        for (i, path) in self.paths.iter().enumerate() {
            let z = self.level(i);
            for w in path.windows(2) {
                if let Some(s) = Stick::between(&at(&w[0], &z), &at(&w[1], &z)) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Largest L-infinity distance from the axis of `bp` to any drawn point.
    pub fn extent_from(&self, bp: usize) -> Q {
        let (cx, cy) = self.axis(bp).clone();
        let mut best = Q::zero();
        for p in self.paths.iter().flatten().chain(self.axes.iter()) {
            let dx = (&p.0 - &cx).abs();
            let dy = (&p.1 - &cy).abs();
            best = best.max(dx).max(dy);
        }
        best
    }

    /// Smallest L-infinity distance between two distinct column axes.
    pub fn min_axis_separation(&self) -> Q {
        let mut best: Option<Q> = None;
        for (i, a) in self.axes.iter().enumerate() {
            for b in &self.axes[i + 1..] {
                let d = (&a.0 - &b.0).abs().max((&a.1 - &b.1).abs());
                best = Some(match best {
                    Some(x) if x <= d => x,
                    _ => d,
                });
            }
        }
        best.unwrap_or_else(|| q(1))
    }

    pub fn complex(&self) -> StickComplex {
        let mut sticks = self.arc_sticks();
        let mut markers = BTreeMap::new();
        let mut junctions = BTreeSet::new();
        if self.columns {
            for bp in 1..=self.presentation.beta() {
                let levels = self.levels(bp);
                let axis = self.axis(bp);
                for z in &levels {
                    junctions.insert(at(axis, z));
                }
                for w in levels.windows(2) {
                    sticks.push(Stick::between(&at(axis, &w[0]), &at(axis, &w[1])).expect("distinct pages"));
                }
                if let Some(label) = self.presentation.label(bp) {
                    markers.insert(label.clone(), at(axis, &self.marker_level(bp)));
                }
            }
        }
        // Arc corners are junctions between the two sticks of one arc.
        for (i, path) in self.paths.iter().enumerate() {
            let z = self.level(i);
            for p in &path[1..path.len().saturating_sub(1)] {
                junctions.insert(at(p, &z));
            }
        }
        StickComplex::raw(sticks, markers, junctions)
    }

    fn has_degenerate_path(&self) -> bool {
        self.paths.iter().any(|p| p.len() < 2)
    }

    fn slide(&mut self, side: SlideSide) -> Result<(), String> {
        let pres = &self.presentation;
        let beta = pres.beta();
        let (bp, arcs) = match side {
            SlideSide::First => (1, pres.incident_arcs(1)),
            SlideSide::Last => (beta, pres.incident_arcs(beta)),
        };
        let target: Planar = match side {
            SlideSide::First => {
                let nearest = arcs.iter().map(|&i| pres.arcs[i].hi).min().ok_or("no arcs")?;
                (q(nearest as i64), self.axis(bp).1.clone())
            }
            SlideSide::Last => {
                let nearest = arcs.iter().map(|&i| pres.arcs[i].lo).max().ok_or("no arcs")?;
                (self.axis(bp).0.clone(), q(nearest as i64))
            }
        };
        if self.axes.contains(&target) {
            return Err(format!("target column ({}, {}) already occupied", target.0, target.1));
        }
        self.axes[bp - 1] = target.clone();
        for &i in &arcs {
            let path = &mut self.paths[i];
            match side {
                SlideSide::First => path[0] = target.clone(),
                SlideSide::Last => *path.last_mut().expect("nonempty") = target.clone(),
            }
            path.dedup();
        }
        if self.has_degenerate_path() {
            return Err("an arc would shrink to a point".into());
        }
        let audit = check_self_avoiding(&self.complex());
        if !audit.is_empty() {
            return Err(format!("{} contacts, first at {}", audit.len(), audit[0].point));
        }
        Ok(())
    }
}

/// Slides the first column in `+x` and the last column in `-y` until the shortest
/// incident horizontal stick vanishes. Arc components are left alone.
pub fn side_slide(layout: ComponentLayout, class: ComponentClass) -> (ComponentLayout, Vec<SlideBlocked>) {
    let mut blocked = Vec::new();
    if matches!(class, ComponentClass::Arc) {
        return (layout, blocked);
    }
    let mut current = layout;
    for side in [SlideSide::First, SlideSide::Last] {
        let mut trial = current.clone();
        match trial.slide(side) {
            Ok(()) => current = trial,
            Err(reason) => blocked.push(SlideBlocked { component: current.id.clone(), side, reason }),
        }
    }
    (current, blocked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc_presentation::Arc;
    use crate::geometry::Axis;
    use crate::validate::check_self_avoiding;

    fn pres(labels: &[Option<&str>], arcs: &[(u32, usize, usize)]) -> ArcPresentation {
        ArcPresentation {
            binding_points: labels.iter().map(|l| l.map(str::to_string)).collect(),
            arcs: arcs.iter().map(|&(p, a, b)| Arc::new(p, a, b)).collect(),
        }
    }

    fn stick(a: (i64, i64, i64), b: (i64, i64, i64)) -> Stick {
        Stick::between(&Point3::from_ints(a.0, a.1, a.2), &Point3::from_ints(b.0, b.1, b.2)).unwrap()
    }

    #[test]
    fn single_arc_elbow() {
        let p = pres(&[Some("a"), None, Some("b")], &[(1, 1, 2), (2, 1, 3), (3, 2, 3)]);
        let d = build_arc_diagram("c", &p);
        let s = d.complex().sticks;
        assert!(s.contains(&stick((1, 1, 2), (3, 1, 2))));
        assert!(s.contains(&stick((3, 1, 2), (3, 3, 2))));
    }

    #[test]
    fn diagram_has_alpha_sticks_per_axis() {
        let u2 = pres(&[Some("v"), None], &[(1, 1, 2), (2, 1, 2)]);
        let c = build_arc_diagram("u", &u2).complex();
        assert_eq!(c.sticks.len(), 4);
        assert_eq!(c.axis_count(Axis::X), 2);
        assert_eq!(c.axis_count(Axis::Y), 2);
        let th3 = pres(&[Some("a"), Some("b")], &[(1, 1, 2), (2, 1, 2), (3, 1, 2)]);
        let c = build_arc_diagram("t", &th3).complex();
        assert_eq!(c.sticks.len(), 6);
        assert!(c.sticks.iter().all(|s| s.length() == q(1)));
    }

    #[test]
    fn columns_join_consecutive_levels() {
        let u2 = pres(&[Some("v"), None], &[(1, 1, 2), (2, 1, 2)]);
        let c = add_columns(build_arc_diagram("u", &u2)).complex();
        assert_eq!(c.sticks.len(), 6);
        assert!(c.sticks.contains(&stick((1, 1, 1), (1, 1, 2))));
        assert!(c.sticks.contains(&stick((2, 2, 1), (2, 2, 2))));
        assert!(check_self_avoiding(&c).is_empty());

        let th3 = pres(&[Some("a"), Some("b")], &[(1, 1, 2), (2, 1, 2), (3, 1, 2)]);
        let c = add_columns(build_arc_diagram("t", &th3)).complex();
        assert!(c.sticks.contains(&stick((1, 1, 1), (1, 1, 2))));
        assert!(c.sticks.contains(&stick((1, 1, 2), (1, 1, 3))));
    }

    #[test]
    fn degree_one_point_has_no_column() {
        let arc = pres(&[Some("a"), Some("b")], &[(1, 1, 2)]);
        let c = add_columns(build_arc_diagram("a", &arc)).complex();
        assert_eq!(c.axis_count(Axis::Z), 0);
    }

    #[test]
    fn unknot_slides_to_rectangle() {
        let u2 = pres(&[Some("v"), None], &[(1, 1, 2), (2, 1, 2)]);
        let (l, blocked) = side_slide(add_columns(build_arc_diagram("u", &u2)), ComponentClass::Knot);
        assert_eq!(blocked.len(), 1);
        assert_eq!(blocked[0].side, SlideSide::Last);
        let mut s = l.complex().sticks;
        s.sort();
        let mut want = vec![
            stick((2, 1, 1), (2, 1, 2)),
            stick((2, 1, 1), (2, 2, 1)),
            stick((2, 1, 2), (2, 2, 2)),
            stick((2, 2, 1), (2, 2, 2)),
        ];
        want.sort();
        assert_eq!(s, want);
    }

    #[test]
    fn theta_absorbs_all_x_sticks() {
        let th3 = pres(&[Some("a"), Some("b")], &[(1, 1, 2), (2, 1, 2), (3, 1, 2)]);
        let (l, blocked) = side_slide(add_columns(build_arc_diagram("t", &th3)), ComponentClass::ThetaN(3));
        assert_eq!(blocked.len(), 1);
        let c = l.complex();
        assert_eq!(c.axis_count(Axis::X), 0);
        assert_eq!(c.axis_count(Axis::Y), 3);
    }

    #[test]
    fn unique_shortest_removes_one() {
        // first point meets 2 and 4; only the arc to 2 is absorbed
        let p = pres(
            &[Some("v"), None, None, None],
            &[(1, 1, 2), (2, 2, 3), (3, 3, 4), (4, 1, 4)],
        );
        let before = add_columns(build_arc_diagram("k", &p));
        let x_before = before.complex().axis_count(Axis::X);
        let mut l = before.clone();
        l.slide(SlideSide::First).unwrap();
        assert_eq!(l.complex().axis_count(Axis::X), x_before - 1);
    }
}
