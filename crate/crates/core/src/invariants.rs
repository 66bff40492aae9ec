//! Generic planar projections, Gauss data and knot determinants.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::geometry::{Point3, Q};
use crate::lattice::StickComplex;

/// Largest strand count accepted by [`p_coloring_count`].
pub const MAX_COLORING_STRANDS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("component {0} is not a single closed cycle")]
    NotACycle(String),
    #[error("no component named {0}")]
    UnknownComponent(String),
    #[error("{0} strands exceed the brute-force limit of {MAX_COLORING_STRANDS}")]
    TooLarge(usize),
    #[error("no generic projection found; the embedding overlaps itself")]
    Degenerate,
}

/// A projected segment, remembering its 3D endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub trace: usize,
    pub index: usize,
    pub from: Point3,
    pub to: Point3,
    pub a: (Q, Q),
    pub b: (Q, Q),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub over: usize,
    pub under: usize,
    /// Positions along the over and under segments, in `(0, 1)`.
    pub over_at: Q,
    pub under_at: Q,
    pub point: (Q, Q),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDiagram {
    /// Shear parameter: `x' = x + z/N`, `y' = y + z/N^2`.
    pub shear: BigInt,
    pub segments: Vec<Segment>,
    pub crossings: Vec<Crossing>,
    /// Trace ids included, in order.
    pub traces: Vec<String>,
    pub components: Vec<String>,
    /// Endpoints (start vertex, end vertex) per included trace.
    pub ends: Vec<(String, String)>,
}

/// Cyclic sequence of `(crossing, passes over)` along one knot cycle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaussData {
    pub visits: Vec<(usize, bool)>,
}

fn cross(a: &(Q, Q), b: &(Q, Q)) -> Q {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn sub(a: &(Q, Q), b: &(Q, Q)) -> (Q, Q) {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn coordinate_range(complex: &StickComplex) -> Q {
    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    for t in &complex.traces {
        for p in &t.points {
            for c in [&p.x, &p.y, &p.z] {
                if lo.as_ref().is_none_or(|l| c < l) {
                    lo = Some(c.clone());
                }
                if hi.as_ref().is_none_or(|h| c > h) {
                    hi = Some(c.clone());
                }
            }
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => h - l,
        _ => Q::zero(),
    }
}

enum Pair {
    Disjoint,
    Cross(Q, Q),
    NotGeneric,
}

fn intersect(s: &Segment, t: &Segment) -> Pair {
    let r = sub(&s.b, &s.a);
    let u = sub(&t.b, &t.a);
    let w = sub(&t.a, &s.a);
    let denom = cross(&r, &u);
    if denom.is_zero() {
        if !cross(&w, &r).is_zero() {
            return Pair::Disjoint;
        }
        // Collinear: compare parameters along r.
        let rr = &r.0 * &r.0 + &r.1 * &r.1;
        let p0 = (&w.0 * &r.0 + &w.1 * &r.1) / &rr;
        let w1 = sub(&t.b, &s.a);
        let p1 = (&w1.0 * &r.0 + &w1.1 * &r.1) / &rr;
        let (lo, hi) = if p0 < p1 { (p0, p1) } else { (p1, p0) };
        if hi < Q::zero() || lo > Q::one() {
            return Pair::Disjoint;
        }
        return Pair::NotGeneric;
    }
    let ts = cross(&w, &u) / &denom;
    let tt = cross(&w, &r) / &denom;
    let inside = |v: &Q| *v >= Q::zero() && *v <= Q::one();
    if !inside(&ts) || !inside(&tt) {
        return Pair::Disjoint;
    }
    let open = |v: &Q| *v > Q::zero() && *v < Q::one();
    if open(&ts) && open(&tt) {
        Pair::Cross(ts, tt)
    } else {
        Pair::NotGeneric
    }
}

fn lerp(a: &Q, b: &Q, t: &Q) -> Q {
    a + (b - a) * t
}

fn picked_traces(complex: &StickComplex, component: Option<&str>) -> Result<Vec<usize>, InvariantError> {
    let picked: Vec<usize> = (0..complex.traces.len())
        .filter(|&i| component.is_none_or(|c| complex.traces[i].component == c))
        .collect();
    match component {
        Some(c) if picked.is_empty() => Err(InvariantError::UnknownComponent(c.to_string())),
        _ => Ok(picked),
    }
}

/// Projection with a fixed shear parameter; `None` if it is not generic.
pub fn project_with(complex: &StickComplex, component: Option<&str>, n: &BigInt) -> Result<Option<GraphDiagram>, InvariantError> {
    Ok(try_project(complex, &picked_traces(complex, component)?, n))
}

fn try_project(complex: &StickComplex, picked: &[usize], n: &BigInt) -> Option<GraphDiagram> {
    let nq = Q::from_integer(n.clone());
    let n2 = &nq * &nq;
    let shear = |p: &Point3| (&p.x + &p.z / &nq, &p.y + &p.z / &n2);
    let mut segments = Vec::new();
    for &ti in picked {
        for (i, w) in complex.traces[ti].points.windows(2).enumerate() {
            segments.push(Segment {
                trace: ti,
                index: i,
                from: w[0].clone(),
                to: w[1].clone(),
                a: shear(&w[0]),
                b: shear(&w[1]),
            });
        }
    }
    let mut crossings = Vec::new();
    let mut points = BTreeSet::new();
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            let (s, t) = (&segments[i], &segments[j]);
            let adjacent = s.from == t.from || s.from == t.to || s.to == t.from || s.to == t.to;
            if adjacent {
                continue;
            }
            match intersect(s, t) {
                Pair::Disjoint => {}
                Pair::NotGeneric => return None,
                Pair::Cross(ts, tt) => {
                    let point = (lerp(&s.a.0, &s.b.0, &ts), lerp(&s.a.1, &s.b.1, &ts));
                    if !points.insert(point.clone()) {
                        return None;
                    }
                    let zs = lerp(&s.from.z, &s.to.z, &ts);
                    let zt = lerp(&t.from.z, &t.to.z, &tt);
                    if zs == zt {
                        return None;
                    }
                    crossings.push(if zs > zt {
                        Crossing { over: i, under: j, over_at: ts, under_at: tt, point }
                    } else {
                        Crossing { over: j, under: i, over_at: tt, under_at: ts, point }
                    });
                }
            }
        }
    }
    Some(GraphDiagram {
        shear: n.clone(),
        segments,
        crossings,
        traces: picked.iter().map(|&t| complex.traces[t].id.clone()).collect(),
        components: picked.iter().map(|&t| complex.traces[t].component.clone()).collect(),
        ends: picked.iter().map(|&t| (complex.traces[t].start.clone(), complex.traces[t].end.clone())).collect(),
    })
}

/// Shears and projects along z, doubling `N` until the projection is generic.
pub fn project_generic(complex: &StickComplex, component: Option<&str>) -> Result<GraphDiagram, InvariantError> {
    let picked = picked_traces(complex, component)?;
    let range = coordinate_range(complex);
    let mut n = BigInt::one();
    while Q::from_integer(n.clone()) <= range {
        n *= 2;
    }
    n *= 2;
    for _ in 0..64 {
        if let Some(d) = try_project(complex, &picked, &n) {
            return Ok(d);
        }
        n *= 2;
    }
    Err(InvariantError::Degenerate)
}

pub fn crossing_count(diagram: &GraphDiagram) -> usize {
    diagram.crossings.len()
}

/// Gauss sequence of the diagram, which must consist of one closed cycle.
pub fn extract_knot_cycle(diagram: &GraphDiagram, name: &str) -> Result<GaussData, InvariantError> {
    let not_cycle = || InvariantError::NotACycle(name.to_string());
    // Vertex degrees within the selection.
    let mut degree: BTreeMap<&str, usize> = BTreeMap::new();
    for (a, b) in &diagram.ends {
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    if diagram.ends.is_empty() || degree.values().any(|&d| d != 2) {
        return Err(not_cycle());
    }
    // Chain the traces into one closed walk.
    let k = diagram.ends.len();
    let mut used = vec![false; k];
    let mut walk: Vec<(usize, bool)> = vec![(0, true)];
    used[0] = true;
    let mut at = diagram.ends[0].1.clone();
    while walk.len() < k {
        let next = (0..k).find(|&i| !used[i] && (diagram.ends[i].0 == at || diagram.ends[i].1 == at));
        let Some(i) = next else { return Err(not_cycle()) };
        used[i] = true;
        let forward = diagram.ends[i].0 == at;
        at = if forward { diagram.ends[i].1.clone() } else { diagram.ends[i].0.clone() };
        walk.push((i, forward));
    }
    if at != diagram.ends[0].0 {
        return Err(not_cycle());
    }
    let trace_ids: Vec<usize> = {
        let mut ids: Vec<usize> = diagram.segments.iter().map(|s| s.trace).collect();
        ids.dedup();
        ids
    };
    // Visits on each segment: (position along segment, crossing, over).
    let mut on_segment: Vec<Vec<(Q, usize, bool)>> = vec![Vec::new(); diagram.segments.len()];
    for (c, x) in diagram.crossings.iter().enumerate() {
        on_segment[x.over].push((x.over_at.clone(), c, true));
        on_segment[x.under].push((x.under_at.clone(), c, false));
    }
    let mut visits = Vec::new();
    for (local, forward) in walk {
        let trace = trace_ids[local];
        let mut segs: Vec<usize> = (0..diagram.segments.len()).filter(|&s| diagram.segments[s].trace == trace).collect();
        if !forward {
            segs.reverse();
        }
        for s in segs {
            let mut v = on_segment[s].clone();
            v.sort_by(|a, b| a.0.cmp(&b.0));
            if !forward {
                v.reverse();
            }
            visits.extend(v.into_iter().map(|(_, c, o)| (c, o)));
        }
    }
    Ok(GaussData { visits })
}

/// `(over, under in, under out)` strand indices per crossing; strands are the
/// stretches between consecutive undercrossings.
pub fn crossing_strands(gauss: &GaussData) -> Vec<(usize, usize, usize)> {
    let n = gauss.visits.iter().filter(|v| !v.1).count();
    if n == 0 {
        return Vec::new();
    }
    let crossings = gauss.visits.iter().map(|v| v.0).max().map_or(0, |m| m + 1);
    let mut over = vec![0; crossings];
    let mut under = vec![(0, 0); crossings];
    let mut strand = 0;
    for &(c, is_over) in &gauss.visits {
        if is_over {
            over[c] = strand % n;
        } else {
            under[c] = (strand % n, (strand + 1) % n);
            strand += 1;
        }
    }
    (0..crossings).map(|c| (over[c], under[c].0, under[c].1)).collect()
}

pub fn strand_count(gauss: &GaussData) -> usize {
    gauss.visits.iter().filter(|v| !v.1).count()
}

/// Coloring matrix: one row per crossing, `2 over - in - out`.
pub fn coloring_matrix(gauss: &GaussData) -> Vec<Vec<i64>> {
    let n = strand_count(gauss);
    crossing_strands(gauss)
        .into_iter()
        .map(|(o, i, u)| {
            let mut row = vec![0i64; n];
            row[o] += 2;
            row[i] -= 1;
            row[u] -= 1;
            row
        })
        .collect()
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(matrix: &[Vec<i64>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Absolute value of a first minor of the coloring matrix; 1 without crossings.
pub fn knot_determinant(gauss: &GaussData) -> u64 {
    let m = coloring_matrix(gauss);
    let n = m.len();
    if n <= 1 {
        return 1;
    }
    let minor: Vec<Vec<i64>> = m[..n - 1].iter().map(|r| r[..n - 1].to_vec()).collect();
    determinant(&minor).abs().to_u64().expect("determinant fits in 64 bits")
}

/// Number of Fox `p`-colorings by exhaustive search, constant ones included.
pub fn p_coloring_count(gauss: &GaussData, p: u64) -> Result<u64, InvariantError> {
    let n = strand_count(gauss);
    if n > MAX_COLORING_STRANDS {
        return Err(InvariantError::TooLarge(n));
    }
    if n == 0 {
        return Ok(p);
    }
    let rules = crossing_strands(gauss);
    // A rule can be checked once its largest strand index is assigned.
    let mut due: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for r in rules {
        due[r.0.max(r.1).max(r.2)].push(r);
    }
    let p = p as i64;
    let mut colors = vec![0i64; n];
    fn search(k: usize, colors: &mut Vec<i64>, due: &[Vec<(usize, usize, usize)>], p: i64) -> u64 {
        if k == colors.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..p {
            colors[k] = c;
            if due[k].iter().all(|&(o, i, u)| (2 * colors[o] - colors[i] - colors[u]).rem_euclid(p) == 0) {
                total += search(k + 1, colors, due, p);
            }
        }
        total
    }
    // Colorings are invariant under adding a constant, so fix the first strand.
    Ok(search(1, &mut colors, &due, p) * p as u64)
}

/// Determinant of the knot cycle of one component of a traced complex.
pub fn component_determinant(complex: &StickComplex, component: &str) -> Result<(usize, u64), InvariantError> {
    let d = project_generic(complex, Some(component))?;
    let g = extract_knot_cycle(&d, component)?;
    Ok((crossing_count(&d), knot_determinant(&g)))
}
