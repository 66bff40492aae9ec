//! Arc presentations of a single cut-component: pages, binding points and the
//! edges recovered by walking arcs through unlabeled binding points.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::report::{ValidationReport, ViolationKind};

pub type VertexLabel = String;

/// One page of the open book: a single arc between two binding points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub page: u32,
    pub lo: usize,
    pub hi: usize,
}

impl Arc {
    pub fn new(page: u32, a: usize, b: usize) -> Self {
        Arc { page, lo: a.min(b), hi: a.max(b) }
    }

    pub fn other_end(&self, bp: usize) -> usize {
        if bp == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcPresentation {
    /// Binding point `i` (1-based) is `binding_points[i - 1]`, optionally a vertex.
    pub binding_points: Vec<Option<VertexLabel>>,
    pub arcs: Vec<Arc>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("binding point {0} does not exist")]
    UnknownBindingPoint(usize),
    #[error("walk ends at unlabeled binding point {bp} with {degree} arcs")]
    UnlabeledEndpoint { bp: usize, degree: usize },
    #[error("closed cycle through binding point {0} carries no vertex")]
    UnlabeledCycle(usize),
}

/// An edge of the abstract graph as a walk through consecutive arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeTrace {
    /// `(arc index, forward)`; forward means the arc is traversed from `lo` to `hi`.
    pub steps: Vec<(usize, bool)>,
    pub start_bp: usize,
    pub end_bp: usize,
    pub start: VertexLabel,
    pub end: VertexLabel,
}

impl EdgeTrace {
    pub fn is_loop(&self) -> bool {
        self.start == self.end
    }
}

impl ArcPresentation {
    pub fn alpha(&self) -> usize {
        self.arcs.len()
    }

    pub fn beta(&self) -> usize {
        self.binding_points.len()
    }

    pub fn label(&self, bp: usize) -> Option<&VertexLabel> {
        self.binding_points.get(bp.checked_sub(1)?)?.as_ref()
    }

    pub fn labeled_count(&self) -> usize {
        self.binding_points.iter().filter(|b| b.is_some()).count()
    }

    pub fn vertex_binding(&self, label: &str) -> Option<usize> {
        self.binding_points
            .iter()
            .position(|b| b.as_deref() == Some(label))
            .map(|i| i + 1)
    }

    pub fn vertex_labels(&self) -> impl Iterator<Item = (usize, &VertexLabel)> {
        self.binding_points
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.as_ref().map(|l| (i + 1, l)))
    }

    /// Indices of arcs incident to `bp`, ordered by page.
    pub fn incident_arcs(&self, bp: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.arcs.len())
            .filter(|&i| self.arcs[i].lo == bp || self.arcs[i].hi == bp)
            .collect();
        v.sort_by_key(|&i| self.arcs[i].page);
        v
    }

    pub fn degree(&self, bp: usize) -> usize {
        self.arcs.iter().filter(|a| a.lo == bp || a.hi == bp).count()
    }

    /// Sorted page numbers of the arcs meeting `bp`.
    pub fn incident_levels(&self, bp: usize) -> Result<Vec<u32>, PresentationError> {
        if bp == 0 || bp > self.beta() {
            return Err(PresentationError::UnknownBindingPoint(bp));
        }
        Ok(self.incident_arcs(bp).into_iter().map(|i| self.arcs[i].page).collect())
    }

    /// Recovers edges by walking from every vertex through degree-2 binding points.
    pub fn trace_edges(&self) -> Result<Vec<EdgeTrace>, PresentationError> {
        let mut used = vec![false; self.arcs.len()];
        let mut traces = Vec::new();
        for (bp, label) in self.vertex_labels() {
            for start_arc in self.incident_arcs(bp) {
                if used[start_arc] {
                    continue;
                }
                let mut steps = Vec::new();
                let mut at = bp;
                let mut arc = start_arc;
                loop {
                    used[arc] = true;
                    let a = &self.arcs[arc];
                    steps.push((arc, a.lo == at));
                    at = a.other_end(at);
                    if self.label(at).is_some() {
                        break;
                    }
                    let next: Vec<usize> = self
                        .incident_arcs(at)
                        .into_iter()
                        .filter(|&i| i != arc)
                        .collect();
                    let degree = next.len() + 1;
                    if degree != 2 {
                        return Err(PresentationError::UnlabeledEndpoint { bp: at, degree });
                    }
                    arc = next[0];
                    if used[arc] {
                        return Err(PresentationError::UnlabeledCycle(at));
                    }
                }
                traces.push(EdgeTrace {
                    steps,
                    start_bp: bp,
                    end_bp: at,
                    start: label.clone(),
                    end: self.label(at).cloned().unwrap_or_default(),
                });
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(PresentationError::UnlabeledCycle(self.arcs[i].lo));
        }
        Ok(traces)
    }

    /// True if the arcs link all binding points into one piece.
    pub fn is_connected(&self) -> bool {
        let n = self.beta();
        if n == 0 {
            return false;
        }
        let mut seen = BTreeSet::from([1usize]);
        let mut stack = vec![1usize];
        while let Some(bp) = stack.pop() {
            for &i in &self.incident_arcs(bp) {
                let other = self.arcs[i].other_end(bp);
                if seen.insert(other) {
                    stack.push(other);
                }
            }
        }
        seen.len() == n
    }
}

/// Structural checks plus the binding point count law for one presentation.
pub fn validate_presentation(pres: &ArcPresentation) -> ValidationReport {
    let mut report = ValidationReport::default();
    let alpha = pres.alpha();
    let beta = pres.beta();

    let pages: BTreeSet<u32> = pres.arcs.iter().map(|a| a.page).collect();
    let expected: BTreeSet<u32> = (1..=alpha as u32).collect();
    if pages != expected || pages.len() != alpha {
        report.push(
            ViolationKind::PagesNotBijection,
            format!("pages {:?} for {alpha} arcs", pres.arcs.iter().map(|a| a.page).collect::<Vec<_>>()),
        );
    }
    let mut range_ok = true;
    for a in &pres.arcs {
        if a.lo == a.hi {
            report.push(ViolationKind::SelfLoopArc, format!("page {} at binding point {}", a.page, a.lo));
            range_ok = false;
        }
        if a.lo == 0 || a.hi > beta {
            report.push(
                ViolationKind::BindingOutOfRange,
                format!("page {} joins {}-{} with {beta} binding points", a.page, a.lo, a.hi),
            );
            range_ok = false;
        }
    }
    let mut labels: BTreeMap<&str, usize> = BTreeMap::new();
    for (bp, label) in pres.vertex_labels() {
        if let Some(prev) = labels.insert(label.as_str(), bp) {
            report.push(
                ViolationKind::DuplicateVertexLabel,
                format!("{label} at binding points {prev} and {bp}"),
            );
        }
    }
    for bp in 1..=beta {
        let d = pres.degree(bp);
        if d == 0 {
            report.push(ViolationKind::IsolatedBindingPoint, format!("binding point {bp}"));
        } else if pres.label(bp).is_none() && d != 2 {
            report.push(ViolationKind::UnlabeledDegree, format!("binding point {bp} has {d} arcs"));
        }
    }
    if !range_ok || !report.is_clean() {
        return report;
    }
    if !pres.is_connected() {
        report.push(ViolationKind::Disconnected, "arcs do not link every binding point");
    }

    let v = pres.labeled_count();
    let labeled_degree: usize = pres.vertex_labels().map(|(bp, _)| pres.degree(bp)).sum();
    if 2 * alpha != 2 * (beta - v) + labeled_degree {
        report.push(
            ViolationKind::DegreeIdentityMismatch,
            format!("2*{alpha} != 2*({beta}-{v}) + {labeled_degree}"),
        );
    }
    match pres.trace_edges() {
        Ok(edges) => {
            let e = edges.len();
            if beta as i64 != alpha as i64 + v as i64 - e as i64 {
                report.push(
                    ViolationKind::BindingLawMismatch,
                    format!("beta {beta} != alpha {alpha} + v {v} - e {e}"),
                );
            }
        }
        Err(PresentationError::UnlabeledCycle(bp)) => {
            report.push(ViolationKind::UnlabeledCycle, format!("through binding point {bp}"));
        }
        Err(err) => report.push(ViolationKind::UnlabeledDegree, err.to_string()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(labels: &[Option<&str>], arcs: &[(u32, usize, usize)]) -> ArcPresentation {
        ArcPresentation {
            binding_points: labels.iter().map(|l| l.map(str::to_string)).collect(),
            arcs: arcs.iter().map(|&(p, a, b)| Arc::new(p, a, b)).collect(),
        }
    }

    fn u2() -> ArcPresentation {
        pres(&[Some("v"), None], &[(1, 1, 2), (2, 1, 2)])
    }

    fn th3() -> ArcPresentation {
        pres(&[Some("a"), Some("b")], &[(1, 1, 2), (2, 1, 2), (3, 1, 2)])
    }

    #[test]
    fn knot_lemma_holds() {
        assert!(validate_presentation(&u2()).is_clean());
    }

    #[test]
    fn six_arcs_two_vertices_three_edges() {
        // theta curve: v1 at 1, v2 at 5, each edge through unlabeled points
        let p = pres(
            &[Some("a"), None, None, None, Some("b")],
            &[(1, 1, 2), (2, 2, 5), (3, 1, 3), (4, 3, 5), (5, 1, 4), (6, 4, 5)],
        );
        let r = validate_presentation(&p);
        assert!(r.is_clean(), "{r}");
        assert_eq!(p.trace_edges().unwrap().len(), 3);
        assert_eq!(p.beta(), 6 + 2 - 3);
    }

    #[test]
    fn duplicate_page_reported() {
        let p = pres(&[Some("a"), Some("b")], &[(1, 1, 2), (3, 1, 2), (3, 1, 2)]);
        assert!(validate_presentation(&p).has(ViolationKind::PagesNotBijection));
    }

    #[test]
    fn incident_levels_examples() {
        assert_eq!(th3().incident_levels(1).unwrap(), vec![1, 2, 3]);
        assert_eq!(u2().incident_levels(2).unwrap(), vec![1, 2]);
        assert_eq!(u2().incident_levels(3), Err(PresentationError::UnknownBindingPoint(3)));
        assert_eq!(u2().incident_levels(0), Err(PresentationError::UnknownBindingPoint(0)));
    }

    #[test]
    fn traces_knot_and_theta() {
        let t = u2().trace_edges().unwrap();
        assert_eq!(t.len(), 1);
        assert!(t[0].is_loop());
        assert_eq!(t[0].steps.len(), 2);
        let t = th3().trace_edges().unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.iter().all(|e| e.steps.len() == 1 && !e.is_loop()));
    }

    #[test]
    fn unlabeled_branch_point_rejected() {
        let p = pres(&[Some("a"), None, Some("b")], &[(1, 1, 2), (2, 2, 3), (3, 2, 3)]);
        assert!(matches!(
            p.trace_edges(),
            Err(PresentationError::UnlabeledEndpoint { bp: 2, degree: 3 })
        ));
        assert!(validate_presentation(&p).has(ViolationKind::UnlabeledDegree));
    }

    #[test]
    fn first_and_last_points_are_one_sided() {
        let p = th3();
        for a in &p.arcs {
            assert!(a.lo >= 1 && a.hi <= p.beta());
        }
        assert!(p.incident_arcs(1).iter().all(|&i| p.arcs[i].lo == 1));
        assert!(p.incident_arcs(2).iter().all(|&i| p.arcs[i].hi == 2));
    }
}
