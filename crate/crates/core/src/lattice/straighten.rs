//! Replacing single-arc cut-components by a vertical stick.

use std::fmt;

use crate::graph_model::ComponentClass;
use crate::lattice::assemble::Assembly;
use crate::validate::check_self_avoiding;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StraightenWarning {
    /// The arc component has several arcs and may be locally knotted.
    LocallyKnotted { component: String, arcs: usize },
    /// The arc end at its stem is not on top of the stem column.
    NotOnTop { component: String },
    /// Other branches hang off the arc at its stem vertex.
    Crowded { component: String },
    /// The straightened complex self-intersects; the arc was kept.
    StraightenCollision { component: String, detail: String },
}

impl fmt::Display for StraightenWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LocallyKnotted { component, arcs } => {
                write!(f, "arc component {component} has {arcs} arcs and was left as is")
            }
            Self::NotOnTop { component } => write!(f, "arc component {component} does not leave its stem column at the top"),
            Self::Crowded { component } => write!(f, "arc component {component} carries other branches at its stem vertex"),
            Self::StraightenCollision { component, detail } => {
                write!(f, "straightening {component} collides ({detail}); kept unstraightened")
            }
        }
    }
}

/// Moves the subtree below each single-arc component onto the stem column so the
/// arc becomes one vertical stick between its two vertices.
pub fn straighten_arcs(mut assembly: Assembly) -> (Assembly, Vec<StraightenWarning>) {
    let mut warnings = Vec::new();
    for idx in 0..assembly.comps.len() {
        if assembly.comps[idx].class != ComponentClass::Arc {
            continue;
        }
        let comp = &assembly.comps[idx];
        let id = comp.layout.id.clone();
        let alpha = comp.layout.presentation.alpha();
        if alpha > 1 {
            warnings.push(StraightenWarning::LocallyKnotted { component: id, arcs: alpha });
            continue;
        }
        let Some((_, a)) = comp.parent.clone() else { continue };
        let bp_a = comp.contains_vertex(&a).expect("cut vertex in arc");
        let key = (idx, 0, comp.layout.presentation.arcs[0].lo == bp_a);
        let ports = assembly.ports(&a);
        if ports.last().map(|p| p.key) != Some(key) || assembly.moves.contains_key(&key) {
            warnings.push(StraightenWarning::NotOnTop { component: id });
            continue;
        }
        let children = assembly.tree.children(idx);
        if children.iter().any(|(_, c)| **c == a) {
            warnings.push(StraightenWarning::Crowded { component: id });
            continue;
        }
        let b = comp
            .layout
            .presentation
            .vertex_labels()
            .map(|(_, l)| l.clone())
            .find(|l| *l != a)
            .expect("arc has two vertices");
        let target = assembly.vertex_axis(&a);
        let current = assembly.vertex_axis(&b);
        let delta = (&target.0 - &current.0, &target.1 - &current.1);
        let mut trial = assembly.clone();
        trial.comps[idx].straightened = true;
        for d in assembly.tree.subtree(idx) {
            if d != idx {
                let s = &mut trial.comps[d].shift;
                s.0 += &delta.0;
                s.1 += &delta.1;
            }
        }
        let verdict = trial
            .traced_complex()
            .map_err(|e| e.to_string())
            .and_then(|c| match check_self_avoiding(&c).first() {
                Some(v) => Err(v.to_string()),
                None => Ok(()),
            });
        match verdict {
            Ok(()) => assembly = trial,
            Err(detail) => warnings.push(StraightenWarning::StraightenCollision { component: id, detail }),
        }
    }
    (assembly, warnings)
}
