mod common;

use cohom1::catalog::spherical::Cover;
use common::lattice_oracle;

#[test]
fn so3_subgroup_calculus_matches_oracle() {
    let report = lattice_oracle::run(Cover::SO3);
    assert!(report.mismatches.is_empty(), "{:#?}", report.mismatches);
}

#[test]
fn su2_subgroup_calculus_matches_oracle() {
    let report = lattice_oracle::run(Cover::SU2);
    assert!(report.mismatches.is_empty(), "{:#?}", report.mismatches);
}
