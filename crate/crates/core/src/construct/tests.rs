use super::*;
use crate::certify::{verify, VerifyOptions};
use crate::graph::{degeneracy, is_forest, is_matching, named};
use crate::oracle::{eulerian_diff, is_acyclic};
use crate::planar::planar_embed;

fn embed(g: &Graph) -> crate::planar::PlaneEmbedding {
    planar_embed(g).unwrap().embedding().expect("planar")
}

fn arcs_of(c: &PieceCertificate) -> BTreeSet<(usize, usize)> {
    c.orientation.arcs().iter().map(|a| (a.tail, a.head)).collect()
}

fn removed_of(c: &PieceCertificate) -> Vec<(usize, usize)> {
    c.removed().members().iter().map(|e| e.endpoints()).collect()
}

const LEVELS: [Level; 3] = [Level::Five, Level::Four, Level::Three];

#[test]
fn k5_bases() {
    let k5 = named::complete(5);
    let c = k5_base(&k5, Level::Five, 0, 1).unwrap();
    assert_eq!(c.orientation.out_degrees(), &[0, 1, 2, 3, 4]);
    assert_eq!(eulerian_diff(&c.orientation).unwrap().diff, 1);
    let c = k5_base(&k5, Level::Four, 0, 1).unwrap();
    assert_eq!(removed_of(&c), vec![(0, 1), (3, 4)]);
    assert_eq!(c.orientation.out_degrees(), &[0, 0, 2, 3, 3]);
    let c = k5_base(&k5, Level::Three, 0, 1).unwrap();
    assert_eq!(removed_of(&c), vec![(0, 1), (1, 3), (2, 4), (3, 4)]);
    assert_eq!(c.orientation.out_degrees(), &[0, 0, 2, 2, 2]);
    assert!(is_acyclic(&c.orientation));
    assert!(k5_base(&named::complete(4), Level::Five, 0, 1).is_err());
}

#[test]
fn k5_base_relabels_the_pin() {
    let k5 = named::complete(5);
    let c = k5_base(&k5, Level::Five, 3, 1).unwrap();
    // order 3, 1, 0, 2, 4
    assert_eq!(c.orientation.out_degrees(), &[2, 1, 3, 0, 4]);
}

#[test]
fn k33_bases() {
    let k = named::complete_bipartite(3, 3);
    let c = k33_base(&k, Level::Five, 0, 3).unwrap();
    assert_eq!((c.orientation.out_degree(0), c.orientation.out_degree(3)), (0, 1));
    assert_eq!(c.orientation.max_out_degree(), 3);
    let c = k33_base(&k, Level::Four, 0, 3).unwrap();
    assert_eq!(removed_of(&c), vec![(0, 3), (1, 4), (2, 5)]);
    assert_eq!(c.orientation.max_out_degree(), 2);
    let c = k33_base(&k, Level::Three, 0, 3).unwrap();
    assert_eq!(removed_of(&c), vec![(0, 3), (0, 4), (1, 4), (1, 5), (2, 5)]);
    assert_eq!(arcs_of(&c), BTreeSet::from([(5, 0), (1, 3), (2, 3), (2, 4)]));
    for l in LEVELS {
        let c = k33_base(&k, l, 4, 1).unwrap();
        assert!(is_acyclic(&c.orientation));
    }
}

#[test]
fn planar_triangle_path_and_edge() {
    let tri = named::cycle(3);
    let c = planar_base(&embed(&tri), Level::Five, 0, 1).unwrap();
    assert_eq!(arcs_of(&c), BTreeSet::from([(1, 0), (2, 0), (2, 1)]));
    assert_eq!(c.evidence, Evidence::Diff(DiffResult::acyclic()));

    let edge = named::path(2);
    let c = planar_base(&embed(&edge), Level::Four, 0, 1).unwrap();
    assert_eq!(removed_of(&c), vec![(0, 1)]);
    assert!(c.orientation.arcs().is_empty());

    let path = named::path(3);
    let c = planar_base(&embed(&path), Level::Three, 0, 1).unwrap();
    assert_eq!(removed_of(&c), vec![(0, 1)]);
    assert_eq!(arcs_of(&c), BTreeSet::from([(2, 1)]));
    let p = promote_edge(&c, 0, 1).unwrap();
    assert!(p.removed().is_empty());
    assert_eq!(arcs_of(&p), BTreeSet::from([(2, 1), (1, 0)]));
}

#[test]
fn promotion_on_k5() {
    let k5 = named::complete(5);
    let c = promote_edge(&k5_base(&k5, Level::Four, 0, 1).unwrap(), 0, 1).unwrap();
    assert_eq!(removed_of(&c), vec![(3, 4)]);
    assert_eq!(c.orientation.out_degree(1), 1);
    let c = promote_edge(&k5_base(&k5, Level::Three, 0, 1).unwrap(), 0, 1).unwrap();
    assert_eq!(removed_of(&c), vec![(1, 3), (2, 4), (3, 4)]);
    assert!(is_acyclic(&c.orientation));
    assert!(promote_edge(&c, 3, 4).is_err());
    assert!(promote_edge(&k5_base(&k5, Level::Five, 0, 1).unwrap(), 0, 1).is_err());
}

#[test]
fn two_triangles_on_an_edge() {
    let tri = named::cycle(3);
    let c1 = planar_base(&embed(&tri), Level::Five, 0, 1).unwrap();
    let c2 = planar_base(&embed(&tri), Level::Five, 0, 1).unwrap();
    let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
    let sum = CliqueSum {
        graph: g,
        left_map: vec![0, 1, 2],
        right_map: vec![0, 1, 3],
        clique: vec![0, 1],
    };
    let c = compose_cliquesum(&c1, &c2, &sum).unwrap();
    assert_eq!(c.orientation.arcs().len(), 5);
    assert_eq!(eulerian_diff(&c.orientation).unwrap().diff, 1);
    assert_eq!(c.evidence.diff().unwrap().diff, 1);
}

#[test]
fn composition_rejects_a_broken_ladder() {
    let tri = named::cycle(3);
    let c1 = planar_base(&embed(&tri), Level::Five, 0, 1).unwrap();
    let c2 = planar_base(&embed(&tri), Level::Five, 1, 0).unwrap();
    let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
    let sum = CliqueSum {
        graph: g,
        left_map: vec![0, 1, 2],
        right_map: vec![0, 1, 3],
        clique: vec![0, 1],
    };
    assert!(matches!(compose_cliquesum(&c1, &c2, &sum), Err(Error::Domain(_))));
    let c3 = k5_base(&named::complete(5), Level::Four, 0, 1).unwrap();
    assert!(compose_cliquesum(&c1, &c3, &sum).is_err());
}

#[test]
fn k5s_sharing_a_vertex_keep_left_degrees() {
    let k5 = named::complete(5);
    let c1 = k5_base(&k5, Level::Five, 0, 1).unwrap();
    let c2 = k5_base(&k5, Level::Five, 0, 1).unwrap();
    let mut edges: Vec<(usize, usize)> = k5.edges().iter().map(|e| e.endpoints()).collect();
    let right_map = vec![0, 5, 6, 7, 8];
    edges.extend(k5.edges().iter().map(|e| (right_map[e.lo()], right_map[e.hi()])));
    let sum = CliqueSum {
        graph: Graph::from_edges(9, edges).unwrap(),
        left_map: vec![0, 1, 2, 3, 4],
        right_map,
        clique: vec![0],
    };
    let c = compose_cliquesum(&c1, &c2, &sum).unwrap();
    assert_eq!(c.orientation.max_out_degree(), 4);
    assert_eq!(&c.orientation.out_degrees()[..5], c1.orientation.out_degrees());
}

fn check_construction(g: &Graph, level: Level, pinned: Option<(usize, usize)>, family: Family) -> PieceCertificate {
    let c = construct_piece(g, level, pinned, family, &SearchLimits::default()).unwrap();
    let d = &c.orientation;
    assert!(d.max_out_degree() <= level.out_cap());
    if let Some((u, v)) = pinned {
        assert_eq!(c.pinned, Some((u, v)));
        assert_eq!((d.out_degree(u), d.out_degree(v)), level.pinned_degrees());
    }
    match level {
        Level::Five => assert!(d.removed().is_empty()),
        Level::Four => assert!(is_matching(g, d.removed()).unwrap()),
        Level::Three => {
            assert!(is_forest(g, d.removed()).unwrap());
            assert!(is_acyclic(d));
            assert!(degeneracy(&g.without_edges(d.removed().members())) <= 2);
        }
    }
    if d.arcs().len() <= 22 && level != Level::Three {
        let r = eulerian_diff(d).unwrap();
        assert!(r.is_nonzero());
        assert_eq!(Some(r), c.evidence.diff());
    }
    let cert = Certificate::from_construction(g, family, &c).unwrap();
    let report = verify(&cert, &VerifyOptions::default());
    assert!(report.accepted(), "{report:?}");
    c
}

#[test]
fn k5_pinned_is_the_base() {
    let k5 = named::complete(5);
    let c = check_construction(&k5, Level::Five, Some((0, 1)), Family::K33);
    assert_eq!(c.orientation, k5_base(&k5, Level::Five, 0, 1).unwrap().orientation);
}

#[test]
fn glued_graphs_at_every_level() {
    let graphs = [
        named::two_k5_sharing_edge(),
        named::disjoint_union(&named::complete(5), &named::cycle(4)),
        named::cycle(6),
        named::path(5),
        named::wheel(5),
        named::complete_bipartite(2, 4),
        Graph::empty(3),
    ];
    for g in &graphs {
        for level in LEVELS {
            for e in g.edges().iter().take(4) {
                check_construction(g, level, Some((e.hi(), e.lo())), Family::K33);
            }
            check_construction(g, level, None, Family::K33);
        }
    }
}

#[test]
fn k33_needs_the_extended_family() {
    let k = named::complete_bipartite(3, 3);
    let err = construct_piece(&k, Level::Five, None, Family::K33, &SearchLimits::default()).unwrap_err();
    assert!(matches!(err, Error::NotInFamily { .. }));
    for level in LEVELS {
        check_construction(&k, level, Some((1, 4)), Family::K33e);
    }
    assert!(construct_piece(&named::petersen(), Level::Five, None, Family::K33e, &SearchLimits::default()).is_err());
}

#[test]
fn missing_pin_is_a_domain_error() {
    let err = construct_piece(&named::cycle(4), Level::Five, Some((0, 2)), Family::K33, &SearchLimits::default());
    assert!(matches!(err, Err(Error::Domain(_))));
}
