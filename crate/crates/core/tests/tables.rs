use std::path::PathBuf;

use cohom1::catalog::GroupSpec;
use cohom1::classify::{
    classify, matches_paper_row, paper_rows, theorem_b_table, theorem_c_table, ClassificationRow, Filter, Provenance,
    DEFAULT_BOUND,
};

/// Compare with `tests/golden/<name>`; `BLESS=1` rewrites the file.
fn golden(name: &str, actual: &str) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    if std::env::var_os("BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden file {name} differs; rerun with BLESS=1 after review");
}

fn members(r: &ClassificationRow) -> impl Iterator<Item = &cohom1::diagram::GroupDiagram> {
    std::iter::once(&r.diagram).chain(&r.members)
}

#[test]
fn dimension_three() {
    let t = theorem_b_table().unwrap();
    assert_eq!(t.groups, vec![GroupSpec::Torus(2), GroupSpec::SO3]);
    let singular: Vec<_> = t.rows.iter().filter(|r| !r.manifold).collect();
    assert_eq!(singular.len(), 1);
    assert_eq!(singular[0].realization.to_string(), "Σ(RP^2)");
    golden("dim3.txt", &t.to_string());
}

#[test]
fn dimension_four_non_manifolds() {
    let t = theorem_c_table().unwrap();
    assert_eq!(t.rows.len(), 15);
    golden("dim4_non_manifold.txt", &t.to_string());
    golden("dim4_non_manifold.json", &(serde_json::to_string_pretty(&t).unwrap() + "\n"));
}

#[test]
fn dimension_four_all() {
    let t = classify(4, Filter::All, DEFAULT_BOUND).unwrap();
    assert_eq!(t.non_manifold().len(), 15);
    golden("dim4_all.txt", &t.to_string());
}

#[test]
fn rows_match_published_rows_both_ways() {
    let published = paper_rows();
    for table in [theorem_b_table().unwrap(), theorem_c_table().unwrap()] {
        for r in table.non_manifold() {
            let hit = published.iter().find(|p| {
                p.dimension == table.dimension && members(r).any(|d| matches_paper_row(d, &p.diagram, DEFAULT_BOUND))
            });
            let p = hit.unwrap_or_else(|| panic!("{} has no published row", r.diagram));
            assert_eq!(r.provenance, Provenance::PaperRow(p.label.to_string()));
            if p.label.ends_with("D(SO(3)/Z_n)") {
                // Misprinted base; the diagram gives Z_{2n}.
                assert_eq!(r.realization.to_string(), "C(SO(3)/Z_n) ∪_{SO(3)/Z_n} D(SO(3)/Z_{2n})");
                assert!(!r.realization.notes().is_empty());
            } else {
                assert_eq!(r.realization.to_string(), p.label, "{}", r.diagram);
            }
        }
    }
    let c = theorem_c_table().unwrap();
    for p in published.iter().filter(|p| p.dimension == 4) {
        assert!(
            c.rows.iter().any(|r| members(r).any(|d| matches_paper_row(d, &p.diagram, DEFAULT_BOUND))),
            "published row {} not enumerated",
            p.diagram
        );
    }
}

#[test]
fn out_of_scope_dimension() {
    assert!(classify(5, Filter::All, DEFAULT_BOUND).is_err());
    assert!(classify(2, Filter::All, DEFAULT_BOUND).is_err());
}
