//! Enumerates small arc presentations and reports the first ones whose built
//! embeddings meet the fixture requirements.
//!
//! `cargo run --release --example fixture_search -- <trefoil|figure8|bouquet3|composite|chain> [max sticks]`

use latstick::arc_presentation::{Arc, ArcPresentation};
use latstick::graph_model::{ComponentSpec, CutAttachment, SpatialGraphSpec};
use latstick::invariants::component_determinant;
use latstick::lattice::build_full;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Cyclic orders of `1..=n` starting at 1, one per reflection pair.
fn cycles(n: usize) -> Vec<Vec<usize>> {
    permutations(n - 1)
        .into_iter()
        .map(|p| std::iter::once(1).chain(p.into_iter().map(|i| i + 2)).collect::<Vec<_>>())
        .filter(|c| n < 3 || c[1] < c[n - 1])
        .collect()
}

fn with_pages(pairs: &[(usize, usize)], perm: &[usize]) -> Vec<Arc> {
    pairs.iter().zip(perm).map(|(&(a, b), &p)| Arc::new(p as u32 + 1, a, b)).collect()
}

fn knot(alpha: usize, want_det: u64, max_count: usize) {
    for cyc in cycles(alpha) {
        let pairs: Vec<(usize, usize)> = (0..alpha).map(|i| (cyc[i], cyc[(i + 1) % alpha])).collect();
        for perm in permutations(alpha) {
            let mut labels = vec![None; alpha];
            labels[0] = Some("v".to_string());
            let pres = ArcPresentation { binding_points: labels, arcs: with_pages(&pairs, &perm) };
            let spec = SpatialGraphSpec {
                components: vec![ComponentSpec { id: "k".into(), presentation: pres.clone() }],
                attachments: vec![],
                declared_crossings: None,
            };
            let Ok(out) = build_full(&spec) else { continue };
            let Ok((_, det)) = component_determinant(&out.complex, "k") else { continue };
            if det == want_det && out.counts.total <= max_count {
                let arcs: Vec<_> = pres.arcs.iter().map(|a| (a.page, a.lo, a.hi)).collect();
                println!("count {} det {det} arcs {arcs:?}", out.counts.total);
                return;
            }
        }
    }
    println!("none found");
}

fn bouquet3() {
    for vpos in 1..=4usize {
        let others: Vec<usize> = (1..=4).filter(|&i| i != vpos).collect();
        let pairs: Vec<(usize, usize)> = others.iter().flat_map(|&o| [(vpos, o), (vpos, o)]).collect();
        for perm in permutations(6) {
            let mut labels = vec![None; 4];
            labels[vpos - 1] = Some("v".to_string());
            let pres = ArcPresentation { binding_points: labels, arcs: with_pages(&pairs, &perm) };
            let spec = SpatialGraphSpec {
                components: vec![ComponentSpec { id: "b".into(), presentation: pres.clone() }],
                attachments: vec![],
                declared_crossings: None,
            };
            let Ok(out) = build_full(&spec) else { continue };
            let v = &out.plan.vertices[0];
            let a = &v.options[v.chosen];
            let swapped = a.kept_top == 4 && a.targets.iter().any(|t| t.0 == 5);
            if swapped && out.counts.total <= 21 && out.straighten_warnings.is_empty() {
                let arcs: Vec<_> = pres.arcs.iter().map(|a| (a.page, a.lo, a.hi)).collect();
                println!("count {} option {} arcs {arcs:?} labels {:?}", out.counts.total, v.chosen, pres.binding_points);
                return;
            }
        }
    }
    println!("none found");
}

fn th3() -> ComponentSpec {
    ComponentSpec {
        id: "theta".into(),
        presentation: ArcPresentation {
            binding_points: vec![Some("v1".into()), Some("v2".into())],
            arcs: vec![Arc::new(1, 1, 2), Arc::new(2, 1, 2), Arc::new(3, 1, 2)],
        },
    }
}

fn composite() {
    for n in 2..=4usize {
        for cyc in cycles(n) {
            let pairs: Vec<(usize, usize)> = (0..n).map(|i| (cyc[i], cyc[(i + 1) % n])).collect();
            for vpos in 1..=n {
                for perm in permutations(n) {
                    let mut labels = vec![None; n];
                    labels[vpos - 1] = Some("v1".to_string());
                    let pres = ArcPresentation { binding_points: labels, arcs: with_pages(&pairs, &perm) };
                    let spec = SpatialGraphSpec {
                        components: vec![th3(), ComponentSpec { id: "loop".into(), presentation: pres.clone() }],
                        attachments: vec![CutAttachment { stem: "theta".into(), branch: "loop".into(), cut_vertex: "v1".into() }],
                        declared_crossings: None,
                    };
                    let Ok(out) = build_full(&spec) else { continue };
                    let arcs: Vec<_> = pres.arcs.iter().map(|a| (a.page, a.lo, a.hi)).collect();
                    println!(
                        "count {} bound {} arcs {arcs:?} labels {:?}",
                        out.counts.total, out.bounds.construction_bound, pres.binding_points
                    );
                    return;
                }
            }
        }
    }
    println!("none found");
}

/// Thetas with one subdivided edge: vertices and the subdivision point placed on three binding points.
fn theta4(id: &str, a: &str, b: &str) -> Vec<ComponentSpec> {
    let mut out = Vec::new();
    for order in permutations(3) {
        let (pa, pb, pu) = (order[0] + 1, order[1] + 1, order[2] + 1);
        let pairs = [(pa, pb), (pa, pb), (pa, pu), (pu, pb)];
        for perm in permutations(4) {
            let mut labels = vec![None; 3];
            labels[pa - 1] = Some(a.to_string());
            labels[pb - 1] = Some(b.to_string());
            out.push(ComponentSpec {
                id: id.into(),
                presentation: ArcPresentation { binding_points: labels, arcs: with_pages(&pairs, &perm) },
            });
        }
    }
    out
}

fn chain() {
    let arc = ComponentSpec {
        id: "arc".into(),
        presentation: ArcPresentation {
            binding_points: vec![Some("v2".into()), Some("v3".into())],
            arcs: vec![Arc::new(1, 1, 2)],
        },
    };
    let t2 = ComponentSpec {
        id: "t2".into(),
        presentation: ArcPresentation {
            binding_points: vec![Some("v3".into()), Some("v4".into())],
            arcs: vec![Arc::new(1, 1, 2), Arc::new(2, 1, 2), Arc::new(3, 1, 2)],
        },
    };
    let mut t1s = vec![{
        let mut t = th3();
        t.id = "t1".into();
        t.presentation.binding_points = vec![Some("v1".into()), Some("v2".into())];
        t
    }];
    t1s.extend(theta4("t1", "v1", "v2"));
    for t1 in t1s {
        let spec = SpatialGraphSpec {
            components: vec![t1.clone(), arc.clone(), t2.clone()],
            attachments: vec![
                CutAttachment { stem: "t1".into(), branch: "arc".into(), cut_vertex: "v2".into() },
                CutAttachment { stem: "arc".into(), branch: "t2".into(), cut_vertex: "v3".into() },
            ],
            declared_crossings: None,
        };
        let Ok(out) = build_full(&spec) else { continue };
        if out.straighten_warnings.is_empty() {
            let arcs: Vec<_> = t1.presentation.arcs.iter().map(|a| (a.page, a.lo, a.hi)).collect();
            println!(
                "count {} bound {} t1 arcs {arcs:?} labels {:?}",
                out.counts.total, out.bounds.construction_bound, t1.presentation.binding_points
            );
            return;
        }
    }
    println!("none found");
}

fn main() {
    let cap: Option<usize> = std::env::args().nth(2).and_then(|s| s.parse().ok());
    match std::env::args().nth(1).as_deref() {
        Some("trefoil") => knot(5, 3, cap.unwrap_or(13)),
        Some("figure8") => knot(6, 5, cap.unwrap_or(16)),
        Some("bouquet3") => bouquet3(),
        Some("composite") => composite(),
        Some("chain") => chain(),
        _ => eprintln!("usage: fixture_search <trefoil|figure8|bouquet3|composite|chain>"),
    }
}
