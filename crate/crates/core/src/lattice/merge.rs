//! Vertex merging: collapsing the degree-3 surrogates of a high-degree vertex
//! onto its pivot.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::arc_presentation::VertexLabel;
use crate::geometry::{q, Dir, Point3, Q};
use crate::lattice::assemble::{Assembly, Move, MoveKind, Port, PortKey};
use crate::lattice::complex::ComplexError;
use crate::validate::check_self_avoiding;

/// A choice of kept top port and of a move for every other port above the pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    /// Index (bottom to top) of the port that keeps the upward column.
    pub kept_top: usize,
    /// `(port index, move kind, pivot direction)`, ordered by port index.
    pub targets: Vec<(usize, MoveKind, Dir)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMerge {
    pub vertex: VertexLabel,
    pub pivot: Point3,
    pub ports: Vec<PortKey>,
    pub pivot_dir: Dir,
    pub unit: Q,
    /// Candidate assignments, most preferred first.
    pub options: Vec<Assignment>,
    pub chosen: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MergePlan {
    pub vertices: Vec<VertexMerge>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MergeError {
    #[error("vertex {0}: no assignment of distinct free horizontal directions exists")]
    NoFreeDirection(VertexLabel),
    #[error("vertex {vertex}: every merge option collides ({detail})")]
    MergeCollision { vertex: VertexLabel, detail: String },
    #[error(transparent)]
    Trace(#[from] ComplexError),
}

const HORIZONTAL: [Dir; 4] = [Dir::PX, Dir::NX, Dir::PY, Dir::NY];

fn candidates(port: &Port, idx: usize, kept_top: usize) -> Vec<(MoveKind, Dir)> {
    let mut out = vec![(MoveKind::DropDown, port.dir)];
    if port.elbow {
        for w in port.dir.horizontal_perpendiculars() {
            out.push((MoveKind::Translate, w));
        }
    }
    if idx > kept_top {
        out.push((MoveKind::Extend, port.dir.opposite()));
    }
    out
}

/// All combinations with pairwise distinct directions avoiding `used`, in
/// lexicographic preference order.
fn combine(ports: &[Port], targets: &[usize], kept_top: usize, used: &[Dir]) -> Vec<Vec<(usize, MoveKind, Dir)>> {
    let Some((&first, rest)) = targets.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for (kind, dir) in candidates(&ports[first], first, kept_top) {
        if used.contains(&dir) {
            continue;
        }
        let mut next = used.to_vec();
        next.push(dir);
        for tail in combine(ports, rest, kept_top, &next) {
            let mut v = vec![(first, kind, dir)];
            v.extend(tail);
            out.push(v);
        }
    }
    out
}

/// Assignments for ports sorted bottom to top; the pivot is port 1.
pub fn assignments(ports: &[Port]) -> Vec<Assignment> {
    let d = ports.len();
    if d < 4 {
        return vec![Assignment { kept_top: d.saturating_sub(1), targets: Vec::new() }];
    }
    let pivot = ports[1].dir;
    let mut out: Vec<Assignment> = Vec::new();
    let push = |a: Assignment, out: &mut Vec<Assignment>| {
        if !out.contains(&a) {
            out.push(a);
        }
    };
    if d == 6 {
        for lower in combine(ports, &[2, 3], 5, &[pivot]) {
            let taken: Vec<Dir> = std::iter::once(pivot).chain(lower.iter().map(|t| t.2)).collect();
            let v = HORIZONTAL.into_iter().find(|h| !taken.contains(h)).expect("one direction is free");
            let (target, top) = if ports[4].dir != v.opposite() { (4, 5) } else { (5, 4) };
            for (kind, dir) in candidates(&ports[target], target, top) {
                if dir == v {
                    let mut targets = lower.clone();
                    targets.push((target, kind, dir));
                    targets.sort_by_key(|t| t.0);
                    push(Assignment { kept_top: top, targets }, &mut out);
                }
            }
        }
    } else {
        let targets: Vec<usize> = (2..d - 1).collect();
        for combo in combine(ports, &targets, d - 1, &[pivot]) {
            push(Assignment { kept_top: d - 1, targets: combo }, &mut out);
        }
    }
    // Other choices of the port that keeps the upward column.
    for top in (2..d).rev() {
        let targets: Vec<usize> = (2..d).filter(|&i| i != top).collect();
        for combo in combine(ports, &targets, top, &[pivot]) {
            push(Assignment { kept_top: top, targets: combo }, &mut out);
        }
    }
    out
}

impl VertexMerge {
    pub fn moves(&self, option: usize) -> Vec<(PortKey, Move)> {
        let a = &self.options[option];
        let m = a.targets.len() as i64;
        a.targets
            .iter()
            .enumerate()
            .map(|(n, &(idx, kind, dir))| {
                let offset = &self.unit * q(n as i64 + 1) / q(m + 1);
                (self.ports[idx], Move { kind, pivot_dir: dir, offset })
            })
            .collect()
    }

    pub fn chosen_moves(&self) -> Vec<(PortKey, Move)> {
        self.moves(self.chosen)
    }

    pub fn degree(&self) -> usize {
        self.ports.len()
    }
}

impl MergePlan {
    pub fn merge_count(&self) -> usize {
        self.vertices.iter().map(|v| v.options[v.chosen].targets.len()).sum()
    }

    pub fn moves(&self) -> BTreeMap<PortKey, Move> {
        self.vertices.iter().flat_map(|v| v.chosen_moves()).collect()
    }
}

/// Preferred assignment for every vertex of degree at least 4.
pub fn plan_merges(assembly: &Assembly) -> Result<MergePlan, MergeError> {
    let mut vertices = Vec::new();
    for label in assembly.vertex_labels() {
        let ports = assembly.ports(&label);
        if ports.len() < 4 {
            continue;
        }
        let options = assignments(&ports);
        if options.is_empty() {
            return Err(MergeError::NoFreeDirection(label));
        }
        vertices.push(VertexMerge {
            pivot: assembly.marker(&label),
            pivot_dir: ports[1].dir,
            unit: assembly.merge_unit(&label),
            ports: ports.iter().map(|p| p.key).collect(),
            vertex: label,
            options,
            chosen: 0,
        });
    }
    Ok(MergePlan { vertices })
}

fn violations(assembly: &Assembly) -> Option<usize> {
    let complex = assembly.traced_complex().ok()?;
    Some(check_self_avoiding(&complex).len())
}

/// Applies the plan, moving each vertex in turn to the first option whose
/// rendering is self-avoiding.
pub fn apply_merges(mut assembly: Assembly, mut plan: MergePlan) -> Result<(Assembly, MergePlan), MergeError> {
    assembly.moves = plan.moves();
    for vi in 0..plan.vertices.len() {
        let mut best: Option<(usize, usize)> = None;
        for option in 0..plan.vertices[vi].options.len() {
            plan.vertices[vi].chosen = option;
            assembly.moves = plan.moves();
            let Some(n) = violations(&assembly) else { continue };
            if best.is_none_or(|(_, b)| n < b) {
                best = Some((option, n));
            }
            if n == 0 {
                break;
            }
        }
        plan.vertices[vi].chosen = best.map_or(0, |b| b.0);
        assembly.moves = plan.moves();
    }
    let complex = assembly.traced_complex()?;
    if let Some(v) = check_self_avoiding(&complex).first() {
        let vertex = plan
            .vertices
            .iter()
            .min_by_key(|m| {
                let d = (&m.pivot.x - &v.point.x, &m.pivot.y - &v.point.y);
                use num_traits::Signed;
                d.0.abs().max(d.1.abs())
            })
            .map_or_else(String::new, |m| m.vertex.clone());
        return Err(MergeError::MergeCollision { vertex, detail: v.to_string() });
    }
    Ok((assembly, plan))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn port(z: i64, dir: Dir, elbow: bool) -> Port {
        Port { key: (0, z as usize, true), z: q(z), dir, elbow }
    }

    #[test]
    fn same_direction_translates_positive_first() {
        let ports = [port(1, Dir::NX, true), port(2, Dir::PX, true), port(3, Dir::PX, true), port(4, Dir::PY, true)];
        let a = &assignments(&ports)[0];
        assert_eq!(a.kept_top, 3);
        assert_eq!(a.targets, vec![(2, MoveKind::Translate, Dir::PY)]);
    }

    #[test]
    fn free_direction_drops_down() {
        let ports = [port(1, Dir::NX, true), port(2, Dir::PX, true), port(3, Dir::NY, true), port(4, Dir::PY, true)];
        let a = &assignments(&ports)[0];
        assert_eq!(a.targets, vec![(2, MoveKind::DropDown, Dir::NY)]);
    }

    #[test]
    fn six_swaps_when_free_direction_opposes_fifth() {
        // Pivot +x, e3 -x, e4 +y leave v = -y; e5 points +y = -v.
        let ports = [
            port(1, Dir::PX, true),
            port(2, Dir::PX, true),
            port(3, Dir::NX, true),
            port(4, Dir::PY, true),
            port(5, Dir::PY, true),
            port(6, Dir::PX, true),
        ];
        let a = &assignments(&ports)[0];
        assert_eq!(a.kept_top, 4);
        assert_eq!(a.targets.last(), Some(&(5, MoveKind::Translate, Dir::NY)));
        let dirs: Vec<Dir> = a.targets.iter().map(|t| t.2).collect();
        assert!(!dirs.contains(&Dir::PX));
        assert_eq!(dirs.len(), 3);
    }

    #[test]
    fn six_keeps_fifth_target_otherwise() {
        let ports = [
            port(1, Dir::PX, true),
            port(2, Dir::PX, true),
            port(3, Dir::NX, true),
            port(4, Dir::PY, true),
            port(5, Dir::NY, true),
            port(6, Dir::PX, true),
        ];
        let a = &assignments(&ports)[0];
        assert_eq!(a.kept_top, 5);
        assert_eq!(a.targets, vec![
            (2, MoveKind::DropDown, Dir::NX),
            (3, MoveKind::DropDown, Dir::PY),
            (4, MoveKind::DropDown, Dir::NY),
        ]);
    }

    #[test]
    fn extension_only_above_kept_top() {
        let ports = [port(1, Dir::NX, false), port(2, Dir::PX, false), port(3, Dir::PX, false), port(4, Dir::PY, false)];
        let opts = assignments(&ports);
        assert!(opts.iter().all(|a| a.targets.iter().all(|&(i, k, _)| k != MoveKind::Extend || i > a.kept_top)));
        assert!(opts.iter().all(|a| a.targets.iter().all(|t| t.2 != Dir::PX)));
    }

    #[test]
    fn directions_distinct_in_every_option() {
        let ports = [
            port(1, Dir::PY, true),
            port(2, Dir::PX, true),
            port(3, Dir::PX, true),
            port(4, Dir::PX, true),
            port(5, Dir::PX, true),
        ];
        for a in assignments(&ports) {
            let mut dirs: Vec<Dir> = a.targets.iter().map(|t| t.2).collect();
            dirs.push(Dir::PX);
            let n = dirs.len();
            dirs.sort();
            dirs.dedup();
            assert_eq!(dirs.len(), n);
        }
    }
}
