//! The construction: per-component arc diagrams, cut-tree assembly, vertex
//! merging, arc straightening and normalization.

pub mod assemble;
pub mod complex;
pub mod component;
pub mod merge;
pub mod straighten;

use thiserror::Error;

pub use assemble::{assemble, Assembly, AssemblyError, Move, MoveKind, Port, PortKey};
pub use complex::{
    normalize, ComplexError, LatticeEmbedding, LatticePoint, LatticeStick, LatticeTrace, NormalizeError, StickComplex,
    TracePath,
};
pub use component::{add_columns, build_arc_diagram, side_slide, ComponentLayout, SlideBlocked, SlideSide};
pub use merge::{apply_merges, plan_merges, MergeError, MergePlan, VertexMerge};
pub use straighten::{straighten_arcs, StraightenWarning};

use crate::graph_model::{build_cut_tree, census, GraphCensus, GraphError, SpatialGraphSpec};
use crate::validate::{audit, check_bound, AuditReport, BoundReport, BoundViolated, StickCounts};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error(transparent)]
    Merge(#[from] MergeError),
    #[error(transparent)]
    Trace(#[from] ComplexError),
    #[error("built embedding fails the audit: {0}")]
    Audit(String),
    #[error(transparent)]
    Bound(#[from] BoundViolated),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

/// Everything produced by one run of the construction.
#[derive(Clone, Debug)]
pub struct BuildOutput {
    pub embedding: LatticeEmbedding,
    pub complex: StickComplex,
    pub census: GraphCensus,
    pub counts: StickCounts,
    pub bounds: BoundReport,
    pub audit: AuditReport,
    pub plan: MergePlan,
    pub slides_blocked: Vec<SlideBlocked>,
    pub straighten_warnings: Vec<StraightenWarning>,
    pub assembly: Assembly,
}

/// Assembled and merged complex before straightening, for inspection.
pub fn build_merged(spec: &SpatialGraphSpec) -> Result<(Assembly, MergePlan, Vec<SlideBlocked>), BuildError> {
    let tree = build_cut_tree(spec)?;
    let mut layouts = Vec::with_capacity(tree.len());
    let mut blocked = Vec::new();
    for &ci in &tree.order {
        let comp = &spec.components[ci];
        let class = spec.classify(ci).map_err(GraphError::from)?;
        let layout = add_columns(build_arc_diagram(&comp.id, &comp.presentation));
        let (layout, b) = side_slide(layout, class);
        blocked.extend(b);
        layouts.push((layout, class));
    }
    let assembly = assemble(&tree, layouts)?;
    let plan = plan_merges(&assembly)?;
    let (assembly, plan) = apply_merges(assembly, plan)?;
    Ok((assembly, plan, blocked))
}

pub fn build_full(spec: &SpatialGraphSpec) -> Result<BuildOutput, BuildError> {
    let census = census(spec)?;
    let (assembly, plan, slides_blocked) = build_merged(spec)?;
    let (assembly, straighten_warnings) = straighten_arcs(assembly);
    let complex = assembly.traced_complex()?;
    let report = audit(&complex, spec);
    if let Some(failure) = report.first_failure() {
        return Err(BuildError::Audit(failure));
    }
    let counts = report.counts;
    let bounds = check_bound(&counts, &census, spec.declared_crossings)?;
    let embedding = normalize(&complex)?;
    Ok(BuildOutput {
        embedding,
        complex,
        census,
        counts,
        bounds,
        audit: report,
        plan,
        slides_blocked,
        straighten_warnings,
        assembly,
    })
}
