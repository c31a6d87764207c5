//! The bundled C3~1 reference data against the generated crystals.

use kr_core::cartan::Weight;
use kr_core::golden::{self, GoldenCase};

#[test]
fn b21_graph_matches_edge_for_edge() {
    let g = golden::compare_graph().unwrap();
    assert_eq!(g.vertices, 14);
    assert_eq!(g.zero_arrows, 4);
    assert!(g.missing.is_empty(), "{:?}", g.missing);
    assert!(g.extra.is_empty(), "{:?}", g.extra);
}

#[test]
fn b22_table_rows_are_the_raising_zero_arrows() {
    let rows = golden::compare_f0().unwrap();
    assert_eq!(rows.len(), 17);
    assert_eq!(rows.iter().filter(|r| r.expected.is_none()).count(), 10);
    for r in &rows {
        assert!(r.e0_matches(), "{}", r.element);
    }
}

#[test]
fn minimal_tables() {
    for (case, level, sizes) in [
        (GoldenCase::B21, 1, vec![1, 2, 2, 1]),
        (GoldenCase::B22, 1, vec![1, 1, 1, 1]),
        (GoldenCase::B23, 2, vec![1, 3, 5, 3, 3, 5, 5, 3, 3, 1]),
    ] {
        let m = golden::compare_minimal(case).unwrap();
        assert_eq!(m.min_level, level, "{case}");
        assert_eq!(m.class_sizes(), sizes, "{case}");
        for row in &m.rows {
            assert!(row.matches(), "{case} {}", row.weight);
        }
    }
}

#[test]
fn b23_designated_images() {
    let images = golden::compare_images().unwrap();
    assert_eq!(images.len(), 2);
    for im in images {
        assert_eq!(im.found, im.expected);
        assert_eq!(im.ambient_epsilon, Weight(vec![0, 0, 1, 1, 0]));
    }
}

#[test]
fn reports_serialize() {
    for case in GoldenCase::ALL {
        let r = golden::run(case).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["case"], case.to_string());
        assert_eq!(r.matches(), case != GoldenCase::B22);
    }
}
