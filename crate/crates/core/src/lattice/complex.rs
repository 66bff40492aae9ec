use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::arc_presentation::VertexLabel;
use crate::geometry::{denominator_lcm, simplify_polyline, Axis, Point3, Stick, Q};

/// One edge of the graph realized as an axis-parallel polyline between vertex markers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracePath {
    pub id: String,
    pub component: String,
    pub start: VertexLabel,
    pub end: VertexLabel,
    pub points: Vec<Point3>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("edge {0} doubles back on itself or leaves the axis directions")]
    DegenerateTrace(String),
    #[error("edge {0} has fewer than two distinct points")]
    EmptyTrace(String),
}

/// Working embedding: sticks in exact rational coordinates with vertex markers.
///
/// Complexes built from traces know which edge owns each stick. Raw complexes
/// (intermediate stages where a vertex is still smeared along a column) list
/// `junctions`, the points where sticks may legitimately meet.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StickComplex {
    pub sticks: Vec<Stick>,
    pub owners: Vec<Option<usize>>,
    pub markers: BTreeMap<VertexLabel, Point3>,
    pub traces: Vec<TracePath>,
    pub junctions: BTreeSet<Point3>,
}

impl StickComplex {
    pub fn raw(sticks: Vec<Stick>, markers: BTreeMap<VertexLabel, Point3>, junctions: BTreeSet<Point3>) -> Self {
        let owners = vec![None; sticks.len()];
        StickComplex { sticks, owners, markers, traces: Vec::new(), junctions }
    }

    /// Splits every trace into maximal straight runs; each run becomes one stick.
    pub fn from_traces(traces: Vec<TracePath>, markers: BTreeMap<VertexLabel, Point3>) -> Result<Self, ComplexError> {
        let mut sticks = Vec::new();
        let mut owners = Vec::new();
        let mut clean = Vec::with_capacity(traces.len());
        for (i, mut t) in traces.into_iter().enumerate() {
            let pts = simplify_polyline(&t.points).ok_or_else(|| ComplexError::DegenerateTrace(t.id.clone()))?;
            if pts.len() < 2 {
                return Err(ComplexError::EmptyTrace(t.id.clone()));
            }
            for w in pts.windows(2) {
                sticks.push(Stick::between(&w[0], &w[1]).expect("simplified polylines are axis-parallel"));
                owners.push(Some(i));
            }
            t.points = pts;
            clean.push(t);
        }
        Ok(StickComplex { sticks, owners, markers, traces: clean, junctions: BTreeSet::new() })
    }

    pub fn is_traced(&self) -> bool {
        !self.traces.is_empty()
    }

    pub fn all_coordinates(&self) -> impl Iterator<Item = &Q> {
        let sticks = self.sticks.iter().flat_map(|s| [&s.fixed.0, &s.fixed.1, &s.span.0, &s.span.1]);
        let markers = self.markers.values().flat_map(|p| [&p.x, &p.y, &p.z]);
        let traces = self.traces.iter().flat_map(|t| t.points.iter().flat_map(|p| [&p.x, &p.y, &p.z]));
        sticks.chain(markers).chain(traces)
    }

    pub fn transformed(&self, scale: &Q, shift: &Point3) -> StickComplex {
        let map = |p: &Point3| crate::geometry::affine(p, scale, shift);
        StickComplex {
            sticks: self.sticks.iter().map(|s| s.transformed(scale, shift)).collect(),
            owners: self.owners.clone(),
            markers: self.markers.iter().map(|(k, p)| (k.clone(), map(p))).collect(),
            traces: self
                .traces
                .iter()
                .map(|t| TracePath { points: t.points.iter().map(map).collect(), ..t.clone() })
                .collect(),
            junctions: self.junctions.iter().map(map).collect(),
        }
    }

    pub fn axis_count(&self, axis: Axis) -> usize {
        self.sticks.iter().filter(|s| s.axis == axis).count()
    }
}

/// Integer point of a normalized embedding.
pub type LatticePoint = [i64; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeStick {
    pub axis: Axis,
    pub start: LatticePoint,
    pub end: LatticePoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTrace {
    pub id: String,
    pub component: String,
    pub start: VertexLabel,
    pub end: VertexLabel,
    pub polyline: Vec<LatticePoint>,
}

/// Integer embedding with every coordinate nonnegative and each axis touching 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEmbedding {
    pub sticks: Vec<LatticeStick>,
    pub vertices: BTreeMap<VertexLabel, LatticePoint>,
    pub edges: Vec<LatticeTrace>,
    pub bounding_box: LatticePoint,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("coordinate {0} does not fit in 64 bits after scaling")]
    Overflow(String),
    #[error("empty complex")]
    Empty,
}

fn to_lattice(p: &Point3, scale: &BigInt, min: &[Q; 3]) -> Result<LatticePoint, NormalizeError> {
    let mut out = [0i64; 3];
    for (i, (c, m)) in [&p.x, &p.y, &p.z].into_iter().zip(min).enumerate() {
        let v = (c - m) * Q::from_integer(scale.clone());
        debug_assert!(v.is_integer());
        out[i] = v.to_integer().to_i64().ok_or_else(|| NormalizeError::Overflow(v.to_string()))?;
    }
    Ok(out)
}

/// Scales by the least common denominator and translates minima to the origin.
pub fn normalize(complex: &StickComplex) -> Result<LatticeEmbedding, NormalizeError> {
    if complex.sticks.is_empty() {
        return Err(NormalizeError::Empty);
    }
    let scale = denominator_lcm(complex.all_coordinates());
    let mut min = [complex.sticks[0].start().x.clone(), complex.sticks[0].start().y.clone(), complex.sticks[0].start().z.clone()];
    for s in &complex.sticks {
        let p = s.start();
        for (m, c) in min.iter_mut().zip([p.x, p.y, p.z]) {
            if c < *m {
                *m = c;
            }
        }
    }
    let sticks = complex
        .sticks
        .iter()
        .map(|s| {
            Ok(LatticeStick {
                axis: s.axis,
                start: to_lattice(&s.start(), &scale, &min)?,
                end: to_lattice(&s.end(), &scale, &min)?,
            })
        })
        .collect::<Result<Vec<_>, NormalizeError>>()?;
    let vertices = complex
        .markers
        .iter()
        .map(|(k, p)| Ok((k.clone(), to_lattice(p, &scale, &min)?)))
        .collect::<Result<BTreeMap<_, _>, NormalizeError>>()?;
    let edges = complex
        .traces
        .iter()
        .map(|t| {
            Ok(LatticeTrace {
                id: t.id.clone(),
                component: t.component.clone(),
                start: t.start.clone(),
                end: t.end.clone(),
                polyline: t.points.iter().map(|p| to_lattice(p, &scale, &min)).collect::<Result<_, _>>()?,
            })
        })
        .collect::<Result<Vec<_>, NormalizeError>>()?;
    let mut bbox = [0i64; 3];
    for s in &sticks {
        for i in 0..3 {
            bbox[i] = bbox[i].max(s.end[i]);
        }
    }
    Ok(LatticeEmbedding { sticks, vertices, edges, bounding_box: bbox })
}

fn point_of(p: &LatticePoint) -> Point3 {
    Point3::from_ints(p[0], p[1], p[2])
}

impl LatticeEmbedding {
    /// Back to an exact complex; traced if edges are present.
    pub fn to_complex(&self) -> Result<StickComplex, ComplexError> {
        let markers: BTreeMap<_, _> = self.vertices.iter().map(|(k, p)| (k.clone(), point_of(p))).collect();
        if self.edges.is_empty() {
            let sticks = self
                .sticks
                .iter()
                .filter_map(|s| Stick::between(&point_of(&s.start), &point_of(&s.end)))
                .collect();
            return Ok(StickComplex::raw(sticks, markers, BTreeSet::new()));
        }
        let traces = self
            .edges
            .iter()
            .map(|e| TracePath {
                id: e.id.clone(),
                component: e.component.clone(),
                start: e.start.clone(),
                end: e.end.clone(),
                points: e.polyline.iter().map(point_of).collect(),
            })
            .collect();
        StickComplex::from_traces(traces, markers)
    }

    /// Sticks as listed, independent of the edge polylines.
    pub fn listed_sticks(&self) -> Vec<Option<Stick>> {
        self.sticks
            .iter()
            .map(|s| {
                let st = Stick::between(&point_of(&s.start), &point_of(&s.end))?;
                (st.axis == s.axis && !st.length().is_zero()).then_some(st)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::q_frac;

    fn trace(points: Vec<Point3>) -> TracePath {
        TracePath { id: "e".into(), component: "c".into(), start: "v".into(), end: "v".into(), points }
    }

    #[test]
    fn quarter_denominators_scale_by_four() {
        let p = |x: Q, y: Q, z: Q| Point3::new(x, y, z);
        let c = StickComplex::from_traces(
            vec![trace(vec![
                p(q_frac(1, 4), q_frac(0, 1), q_frac(0, 1)),
                p(q_frac(1, 1), q_frac(0, 1), q_frac(0, 1)),
                p(q_frac(1, 1), q_frac(1, 1), q_frac(0, 1)),
                p(q_frac(1, 4), q_frac(1, 1), q_frac(0, 1)),
                p(q_frac(1, 4), q_frac(0, 1), q_frac(0, 1)),
            ])],
            BTreeMap::from([("v".to_string(), p(q_frac(1, 4), q_frac(0, 1), q_frac(0, 1)))]),
        )
        .unwrap();
        let emb = normalize(&c).unwrap();
        assert_eq!(emb.vertices["v"], [0, 0, 0]);
        assert_eq!(emb.bounding_box, [3, 4, 0]);
    }

    #[test]
    fn integral_input_only_translates() {
        let c = StickComplex::from_traces(
            vec![trace(vec![
                Point3::from_ints(2, 3, 5),
                Point3::from_ints(4, 3, 5),
                Point3::from_ints(4, 3, 7),
                Point3::from_ints(2, 3, 7),
                Point3::from_ints(2, 3, 5),
            ])],
            BTreeMap::from([("v".to_string(), Point3::from_ints(2, 3, 5))]),
        )
        .unwrap();
        let emb = normalize(&c).unwrap();
        assert_eq!(emb.bounding_box, [2, 0, 2]);
        assert_eq!(emb.sticks.len(), 4);
    }

    #[test]
    fn nested_scales_use_lcm() {
        let pts = [Point3::new(q_frac(1, 8), q_frac(0, 1), q_frac(0, 1)),
            Point3::new(q_frac(1, 64), q_frac(0, 1), q_frac(0, 1))];
        assert_eq!(denominator_lcm(pts.iter().flat_map(|p| [&p.x, &p.y, &p.z])), BigInt::from(64));
    }
}
