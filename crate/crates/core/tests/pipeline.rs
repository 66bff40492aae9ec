use latstick::fixtures::{self, presentation};
use latstick::graph_model::{ComponentSpec, CutAttachment, SpatialGraphSpec};
use latstick::invariants::component_determinant;
use latstick::lattice::{build_merged, StraightenWarning};
use latstick::validate::count_sticks;
use latstick::{build_full, BuildError};

fn comp(id: &str, labels: &[Option<&str>], arcs: &[(u32, usize, usize)]) -> ComponentSpec {
    ComponentSpec { id: id.into(), presentation: presentation(labels, arcs) }
}

fn attach(stem: &str, branch: &str, cut: &str) -> CutAttachment {
    CutAttachment { stem: stem.into(), branch: branch.into(), cut_vertex: cut.into() }
}

fn small_loop(id: &str, v: &str) -> ComponentSpec {
    comp(id, &[Some(v), None, None], &[(1, 1, 2), (2, 2, 3), (3, 1, 3)])
}

fn theta(id: &str, a: &str, b: &str) -> ComponentSpec {
    comp(id, &[Some(a), Some(b)], &[(1, 1, 2), (2, 1, 2), (3, 1, 2)])
}

#[test]
fn merging_adds_one_stick_per_merge() {
    for (name, spec) in fixtures::all() {
        let (merged, plan, _) = build_merged(&spec).unwrap();
        let mut raw = merged.clone();
        raw.moves.clear();
        let before = count_sticks(&raw.raw_complex()).total;
        let after = count_sticks(&merged.traced_complex().unwrap()).total;
        assert_eq!(after, before + plan.merge_count(), "{name}");
    }
}

#[test]
fn merge_counts_follow_degree() {
    // d - 3 merges at every vertex of degree at least 4
    for (name, spec) in fixtures::all() {
        let out = build_full(&spec).unwrap();
        let want: usize = spec.total_degrees().values().map(|&d| d.saturating_sub(3)).sum();
        assert_eq!(out.plan.merge_count(), want, "{name}");
    }
}

#[test]
fn branches_at_two_cut_vertices() {
    let spec = SpatialGraphSpec {
        components: vec![theta("theta", "v1", "v2"), small_loop("l1", "v1"), small_loop("l2", "v2")],
        attachments: vec![attach("theta", "l1", "v1"), attach("theta", "l2", "v2")],
        declared_crossings: Some(0),
    };
    let out = build_full(&spec).unwrap();
    let a = &out.assembly;
    assert_eq!(a.connectors().len(), 2);
    // stacked depth first, each branch strictly above its stem
    let tops: Vec<_> = a.comps.iter().map(|c| &c.lift + &c.scale * latstick::geometry::q(c.layout.presentation.alpha() as i64)).collect();
    for i in 1..a.comps.len() {
        assert!(a.comps[i].lift >= tops[i - 1]);
    }
    let axes: Vec<_> = a.connectors().iter().map(|(_, low, _)| (low.x.clone(), low.y.clone())).collect();
    assert_ne!(axes[0], axes[1]);
    assert!(out.counts.total as i64 <= out.bounds.construction_bound);
    assert_eq!(out.plan.merge_count(), 4);
}

#[test]
fn split_components_are_stacked_without_connectors() {
    let out = build_full(&fixtures::two_trees()).unwrap();
    assert!(out.assembly.connectors().is_empty());
    assert_eq!(out.census.s, 2);
    assert_eq!(out.counts.total, 4 + 7);
}

#[test]
fn single_arc_component_is_straightened() {
    let spec = fixtures::theta_arc_theta();
    let out = build_full(&spec).unwrap();
    assert!(out.straighten_warnings.is_empty());
    let arc = out.assembly.comps.iter().find(|c| c.layout.id == "arc").unwrap();
    assert!(arc.straightened);
    let (merged, _, _) = build_merged(&spec).unwrap();
    let unstraightened = count_sticks(&merged.traced_complex().unwrap()).total;
    assert!(unstraightened >= out.counts.total + 2, "{unstraightened} vs {}", out.counts.total);
}

#[test]
fn knotted_arc_component_is_left_alone() {
    let spec = SpatialGraphSpec {
        components: vec![
            comp("t1", &[Some("v1"), Some("v2"), None], &[(1, 1, 2), (2, 1, 2), (3, 1, 3), (4, 2, 3)]),
            comp("arc", &[Some("v2"), None, None, Some("v3")], &[(1, 1, 3), (2, 2, 3), (3, 2, 4)]),
            theta("t2", "v3", "v4"),
        ],
        attachments: vec![attach("t1", "arc", "v2"), attach("arc", "t2", "v3")],
        declared_crossings: None,
    };
    let out = build_full(&spec).unwrap();
    assert!(matches!(&out.straighten_warnings[..], [StraightenWarning::LocallyKnotted { arcs: 3, .. }]));
    assert!(out.counts.total as i64 <= out.bounds.construction_bound);
}

#[test]
fn knotted_loop_keeps_its_type() {
    let out = build_full(&fixtures::theta_trefoil_loop()).unwrap();
    assert_eq!(component_determinant(&out.complex, "loop").unwrap().1, 3);
    assert_eq!(out.bounds.theorem_bound, Some(24));
}

#[test]
fn normalized_embedding_touches_each_coordinate_plane() {
    for (name, spec) in fixtures::all() {
        let out = build_full(&spec).unwrap();
        let pts: Vec<[i64; 3]> = out.embedding.sticks.iter().flat_map(|s| [s.start, s.end]).collect();
        for axis in 0..3 {
            assert_eq!(pts.iter().map(|p| p[axis]).min(), Some(0), "{name}");
            assert_eq!(pts.iter().map(|p| p[axis]).max(), Some(out.embedding.bounding_box[axis]), "{name}");
        }
        let back = out.embedding.to_complex().unwrap();
        assert_eq!(count_sticks(&back), out.counts, "{name}");
    }
}

#[test]
fn invalid_inputs_are_refused() {
    let arcs: Vec<(u32, usize, usize)> = (1..=7).map(|p| (p, 1, 2)).collect();
    let th7 = SpatialGraphSpec {
        components: vec![comp("th7", &[Some("a"), Some("b")], &arcs)],
        attachments: vec![],
        declared_crossings: None,
    };
    assert!(matches!(build_full(&th7), Err(BuildError::Graph(_))));

    let unattached = SpatialGraphSpec {
        components: vec![theta("theta", "v1", "v2"), small_loop("loop", "v1")],
        attachments: vec![],
        declared_crossings: None,
    };
    assert!(build_full(&unattached).is_err());
}
