use atk33::certify::{apply_mutation, mutations, verify, verify_json, Certificate, Verdict, VerifyOptions};
use atk33::construct::{construct, Level};
use atk33::decompose::Family;
use atk33::graph::{named, Arc, Graph};
use atk33::Error;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LEVELS: [Level; 3] = [Level::Five, Level::Four, Level::Three];

fn sample_graphs() -> Vec<(Graph, Family)> {
    vec![
        (named::complete(5), Family::K33),
        (named::two_k5_sharing_edge(), Family::K33),
        (named::wheel(5), Family::K33),
        (named::octahedron(), Family::K33),
        (named::complete_bipartite(3, 3), Family::K33e),
        (named::disjoint_union(&named::complete(5), &named::cycle(4)), Family::K33),
        (named::cycle(7), Family::K33),
    ]
}

#[test]
fn round_trip_through_json() {
    for (g, family) in sample_graphs() {
        for level in LEVELS {
            let c = construct(&g, level, None, family).unwrap();
            let text = c.to_json();
            let back = Certificate::from_json(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.to_json(), text);
            let report = verify_json(&text, &VerifyOptions::default()).unwrap();
            assert_eq!(report.verdict, Verdict::Accept, "{report:?}");
        }
    }
}

#[test]
fn field_order_is_fixed() {
    let c = construct(&named::complete(5), Level::Four, Some((0, 1)), Family::K33).unwrap();
    let text = c.to_json();
    let keys = ["\"format_version\"", "\"graph\"", "\"family\"", "\"level\"", "\"pinned\"", "\"removed\"", "\"arcs\"", "\"pieces\""];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    assert!(text.contains("\"atk33-1\""));
}

#[test]
fn reversed_pin_arc_fails_the_pinned_check() {
    let mut c = construct(&named::complete(5), Level::Five, Some((0, 1)), Family::K33).unwrap();
    let i = c.arcs.iter().position(|a| *a == Arc::new(1, 0)).unwrap();
    c.arcs[i] = Arc::new(0, 1);
    let report = verify(&c, &VerifyOptions::default());
    assert_eq!(report.verdict, Verdict::Reject);
    assert!(report.failure_detail.unwrap().starts_with("pinned-degrees"));
}

#[test]
fn schema_errors_carry_a_path() {
    let c = construct(&named::complete(5), Level::Five, None, Family::K33).unwrap();
    let text = c.to_json().replacen("\"level\": 5", "\"level\": 7", 1);
    match Certificate::from_json(&text) {
        Err(Error::Schema { path, .. }) => assert_eq!(path, "level"),
        other => panic!("{other:?}"),
    }
    let text = c.to_json().replacen("\"atk33-1\"", "\"atk33-0\"", 1);
    assert!(matches!(Certificate::from_json(&text), Err(Error::Schema { .. })));
    let text = c.to_json().replacen("\"arcs\": [", "\"arcs\": [\"x\", ", 1);
    match Certificate::from_json(&text) {
        Err(Error::Schema { path, .. }) => assert!(path.starts_with("arcs"), "{path}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn no_trace_and_small_cap_is_inconclusive() {
    let mut c = construct(&named::two_k5_sharing_edge(), Level::Five, None, Family::K33).unwrap();
    c.pieces.clear();
    let report = verify(&c, &VerifyOptions { diff_cap: 10 });
    assert_eq!(report.verdict, Verdict::Inconclusive);
    assert!(verify(&c, &VerifyOptions::default()).accepted());
}

#[test]
fn trace_alone_accepts_when_the_graph_exceeds_the_cap() {
    for level in LEVELS {
        let c = construct(&named::two_k5_sharing_edge(), level, None, Family::K33).unwrap();
        let report = verify(&c, &VerifyOptions { diff_cap: 12 });
        assert!(report.accepted(), "{report:?}");
        assert!(report.checks.iter().all(|k| k.name != "diff"));
    }
}

#[test]
fn single_field_mutations_are_never_accepted() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let certs: Vec<Certificate> = sample_graphs()
        .iter()
        .flat_map(|(g, f)| LEVELS.map(|l| construct(g, l, None, *f).unwrap()))
        .collect();
    let mut tried = 0;
    while tried < 1200 {
        let c = certs.choose(&mut rng).unwrap();
        let all = mutations(c);
        let m = *all.choose(&mut rng).unwrap();
        let bad = apply_mutation(c, m);
        let report = verify(&bad, &VerifyOptions::default());
        assert_ne!(report.verdict, Verdict::Accept, "{m:?} accepted on {}", c.graph);
        tried += 1;
    }
}
