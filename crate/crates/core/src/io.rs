//! JSON documents for inputs and built embeddings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arc_presentation::{Arc, ArcPresentation};
use crate::geometry::Axis;
use crate::graph_model::{ComponentSpec, CutAttachment, GraphCensus, SpatialGraphSpec};
use crate::lattice::{BuildOutput, LatticeEmbedding, LatticePoint, LatticeStick, LatticeTrace};
use crate::validate::{BoundReport, StickCounts};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("component {component}: binding point indices must be 1..={count} without gaps or repeats")]
    BindingIndices { component: String, count: usize },
    #[error("unknown axis {0:?}")]
    Axis(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BindingPointDoc {
    pub index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcDoc {
    pub page: u32,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub id: String,
    pub binding_points: Vec<BindingPointDoc>,
    pub arcs: Vec<ArcDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttachmentDoc {
    pub stem: String,
    pub branch: String,
    pub cut_vertex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub components: Vec<ComponentDoc>,
    #[serde(default)]
    pub attachments: Vec<AttachmentDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram_crossings: Option<u64>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_spec(&self) -> Result<SpatialGraphSpec, DocumentError> {
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let n = c.binding_points.len();
            let mut labels = vec![None; n];
            let mut seen = vec![false; n];
            for bp in &c.binding_points {
                if bp.index == 0 || bp.index > n || seen[bp.index - 1] {
                    return Err(DocumentError::BindingIndices { component: c.id.clone(), count: n });
                }
                seen[bp.index - 1] = true;
                labels[bp.index - 1] = bp.vertex.clone();
            }
            components.push(ComponentSpec {
                id: c.id.clone(),
                presentation: ArcPresentation {
                    binding_points: labels,
                    arcs: c.arcs.iter().map(|a| Arc::new(a.page, a.from, a.to)).collect(),
                },
            });
        }
        Ok(SpatialGraphSpec {
            components,
            attachments: self
                .attachments
                .iter()
                .map(|a| CutAttachment { stem: a.stem.clone(), branch: a.branch.clone(), cut_vertex: a.cut_vertex.clone() })
                .collect(),
            declared_crossings: self.diagram_crossings,
        })
    }

    pub fn from_spec(spec: &SpatialGraphSpec) -> Self {
        InputDocument {
            components: spec
                .components
                .iter()
                .map(|c| ComponentDoc {
                    id: c.id.clone(),
                    binding_points: c
                        .presentation
                        .binding_points
                        .iter()
                        .enumerate()
                        .map(|(i, v)| BindingPointDoc { index: i + 1, vertex: v.clone() })
                        .collect(),
                    arcs: c.presentation.arcs.iter().map(|a| ArcDoc { page: a.page, from: a.lo, to: a.hi }).collect(),
                })
                .collect(),
            attachments: spec
                .attachments
                .iter()
                .map(|a| AttachmentDoc { stem: a.stem.clone(), branch: a.branch.clone(), cut_vertex: a.cut_vertex.clone() })
                .collect(),
            diagram_crossings: spec.declared_crossings,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StickDoc {
    pub axis: String,
    pub start: LatticePoint,
    pub end: LatticePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    pub position: LatticePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub component: String,
    pub start: String,
    pub end: String,
    pub polyline: Vec<LatticePoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountsDoc {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusDoc {
    pub e: usize,
    pub v: usize,
    pub s: usize,
    pub b: usize,
    pub k: usize,
    pub alpha_total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDoc {
    pub total: usize,
    pub construction_bound: i64,
    pub theorem_bound: Option<i64>,
    pub census: CensusDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDocument {
    pub sticks: Vec<StickDoc>,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    pub counts: CountsDoc,
    pub bounds_report: BoundsDoc,
}

fn parse_axis(s: &str) -> Result<Axis, DocumentError> {
    match s {
        "x" => Ok(Axis::X),
        "y" => Ok(Axis::Y),
        "z" => Ok(Axis::Z),
        other => Err(DocumentError::Axis(other.to_string())),
    }
}

impl From<&StickCounts> for CountsDoc {
    fn from(c: &StickCounts) -> Self {
        CountsDoc { x: c.x, y: c.y, z: c.z, total: c.total }
    }
}

impl From<&GraphCensus> for CensusDoc {
    fn from(c: &GraphCensus) -> Self {
        CensusDoc { e: c.e, v: c.v, s: c.s, b: c.b, k: c.k, alpha_total: c.alpha_total }
    }
}

impl EmbeddingDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: EmbeddingDocument = serde_json::from_str(text)?;
        for s in &doc.sticks {
            parse_axis(&s.axis)?;
        }
        Ok(doc)
    }

    pub fn new(embedding: &LatticeEmbedding, counts: &StickCounts, bounds: &BoundReport, census: &GraphCensus) -> Self {
        EmbeddingDocument {
            sticks: embedding
                .sticks
                .iter()
                .map(|s| StickDoc { axis: s.axis.name().to_string(), start: s.start, end: s.end })
                .collect(),
            vertices: embedding.vertices.iter().map(|(id, p)| VertexDoc { id: id.clone(), position: *p }).collect(),
            edges: embedding
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    component: e.component.clone(),
                    start: e.start.clone(),
                    end: e.end.clone(),
                    polyline: e.polyline.clone(),
                })
                .collect(),
            counts: counts.into(),
            bounds_report: BoundsDoc {
                total: bounds.total,
                construction_bound: bounds.construction_bound,
                theorem_bound: bounds.theorem_bound,
                census: census.into(),
            },
        }
    }

    pub fn from_build(out: &BuildOutput) -> Self {
        Self::new(&out.embedding, &out.counts, &out.bounds, &out.census)
    }

    pub fn embedding(&self) -> Result<LatticeEmbedding, DocumentError> {
        let sticks = self
            .sticks
            .iter()
            .map(|s| Ok(LatticeStick { axis: parse_axis(&s.axis)?, start: s.start, end: s.end }))
            .collect::<Result<Vec<_>, DocumentError>>()?;
        let mut bbox = [0i64; 3];
        for p in sticks.iter().flat_map(|s| [s.start, s.end]) {
            for i in 0..3 {
                bbox[i] = bbox[i].max(p[i]);
            }
        }
        Ok(LatticeEmbedding {
            sticks,
            vertices: self.vertices.iter().map(|v| (v.id.clone(), v.position)).collect::<BTreeMap<_, _>>(),
            edges: self
                .edges
                .iter()
                .map(|e| LatticeTrace {
                    id: e.id.clone(),
                    component: e.component.clone(),
                    start: e.start.clone(),
                    end: e.end.clone(),
                    polyline: e.polyline.clone(),
                })
                .collect(),
            bounding_box: bbox,
        })
    }
}

/// Wavefront OBJ: distinct points in first-use order, then one line element per stick.
pub fn to_obj(embedding: &LatticeEmbedding) -> String {
    let mut index: BTreeMap<LatticePoint, usize> = BTreeMap::new();
    let mut points = Vec::new();
    let mut lines = Vec::new();
    for s in &embedding.sticks {
        let mut ids = [0usize; 2];
        for (k, p) in [s.start, s.end].into_iter().enumerate() {
            ids[k] = *index.entry(p).or_insert_with(|| {
                points.push(p);
                points.len()
            });
        }
        lines.push(ids);
    }
    let mut out = String::new();
    for p in points {
        out.push_str(&format!("v {} {} {}\n", p[0], p[1], p[2]));
    }
    for [a, b] in lines {
        out.push_str(&format!("l {a} {b}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn input_round_trip() {
        for (_, spec) in fixtures::all() {
            let doc = InputDocument::from_spec(&spec);
            let text = serde_json::to_string(&doc).unwrap();
            let back = InputDocument::parse(&text).unwrap().to_spec().unwrap();
            assert_eq!(back, spec);
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"components": [], "attachments": [], "colour": 1}"#;
        assert!(matches!(InputDocument::parse(text), Err(DocumentError::Json(_))));
    }

    #[test]
    fn repeated_binding_index_rejected() {
        let text = r#"{"components": [{"id": "k", "binding_points": [{"index": 1}, {"index": 1}], "arcs": []}]}"#;
        let doc = InputDocument::parse(text).unwrap();
        assert!(matches!(doc.to_spec(), Err(DocumentError::BindingIndices { .. })));
    }

    #[test]
    fn obj_rectangle() {
        let emb = LatticeEmbedding {
            sticks: vec![
                LatticeStick { axis: Axis::X, start: [0, 0, 0], end: [1, 0, 0] },
                LatticeStick { axis: Axis::Y, start: [1, 0, 0], end: [1, 1, 0] },
                LatticeStick { axis: Axis::X, start: [0, 1, 0], end: [1, 1, 0] },
                LatticeStick { axis: Axis::Y, start: [0, 0, 0], end: [0, 1, 0] },
            ],
            vertices: BTreeMap::new(),
            edges: vec![],
            bounding_box: [1, 1, 0],
        };
        assert_eq!(
            to_obj(&emb),
            "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nl 1 2\nl 2 3\nl 4 3\nl 1 4\n"
        );
    }
}
