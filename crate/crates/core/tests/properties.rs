mod common;

use proptest::prelude::*;

use cohom1::diagram::canonical_form;
use cohom1::document::{parse_document, parse_inline, serialize, DiagramDocument};
use cohom1::topology::{fiber_catalog, join, JoinSpace};

use common::{invariants, torus_oracle};

fn join_space() -> impl Strategy<Value = JoinSpace> {
    let catalog = fiber_catalog();
    prop_oneof![
        (-1i64..5).prop_map(JoinSpace::SphereJ),
        (0..catalog.len()).prop_map(move |i| JoinSpace::named(catalog[i].clone())),
    ]
}

const SO3_TOKENS: [&str; 16] =
    ["e", "Z2", "Z3", "Z4", "Z6", "D2", "D3", "D4", "T", "O", "I", "SO2", "O2", "SO3", "Z2@i", "O2@j"];
const SU2_TOKENS: [&str; 13] = ["e", "Z2", "Z4", "Z6", "Z8", "<i>", "Q8", "D*3", "T*", "O*", "S1", "Pin2", "SU2"];

const SO3XS1_TOKENS: [&str; 9] = ["e", "O2", "SO3", "O2xZ2", "O2xS1", "SO3xS1", "SO2xZ3", "diag(1,2)", "Z2xS1"];
const SO4_TOKENS: [&str; 5] = ["e", "Z2", "SO3", "O3", "SO4"];

fn sph_diagram() -> impl Strategy<Value = String> {
    let so3 = prop::array::uniform3(0..SO3_TOKENS.len())
        .prop_map(|ix| format!("(SO3, {}, {}, {})", SO3_TOKENS[ix[0]], SO3_TOKENS[ix[1]], SO3_TOKENS[ix[2]]));
    let su2 = prop::array::uniform3(0..SU2_TOKENS.len())
        .prop_map(|ix| format!("(SU2, {}, {}, {})", SU2_TOKENS[ix[0]], SU2_TOKENS[ix[1]], SU2_TOKENS[ix[2]]));
    let families = (1u64..4, 0usize..3).prop_map(|(m, i)| {
        let k = ["Z2n", "Dn", "SO2"][i];
        format!("(SO3, Zn, SO3, {k}) n>={m}")
    });
    let prod = prop::array::uniform3(0..SO3XS1_TOKENS.len()).prop_map(|ix| {
        format!("(SO3xS1, {}, {}, {})", SO3XS1_TOKENS[ix[0]], SO3XS1_TOKENS[ix[1]], SO3XS1_TOKENS[ix[2]])
    });
    let so4 = prop::array::uniform3(0..SO4_TOKENS.len())
        .prop_map(|ix| format!("(SO4, {}, {}, {})", SO4_TOKENS[ix[0]], SO4_TOKENS[ix[1]], SO4_TOKENS[ix[2]]));
    prop_oneof![so3, su2, families, prod, so4]
}

fn slope() -> impl Strategy<Value = [i64; 2]> {
    (-9i64..=9, -9i64..=9).prop_filter("nonzero", |v| *v != (0, 0)).prop_map(|(a, b)| [a, b])
}

proptest! {
    #[test]
    fn join_is_commutative(a in join_space(), b in join_space()) {
        prop_assert_eq!(join(&a, &b), join(&b, &a));
    }

    #[test]
    fn join_is_associative(a in join_space(), b in join_space(), c in join_space()) {
        prop_assert_eq!(join(&join(&a, &b), &c), join(&a, &join(&b, &c)));
    }

    #[test]
    fn join_adds_dimensions(a in join_space(), b in join_space()) {
        prop_assert_eq!(join(&a, &b).dim(), a.dim() + b.dim() + 1);
    }

    #[test]
    fn empty_join_is_identity(a in join_space()) {
        prop_assert_eq!(join(&JoinSpace::empty(), &a), a.normal_form());
    }

    #[test]
    fn inline_round_trip(text in sph_diagram()) {
        let d = parse_inline(&text).unwrap();
        let once = serialize(&d);
        prop_assert_eq!(parse_inline(&once).unwrap(), d.clone());
        let c = canonical_form(&d);
        let s = serialize(&c);
        prop_assert_eq!(serialize(&parse_inline(&s).unwrap()), s);
    }

    #[test]
    fn document_round_trip(text in sph_diagram()) {
        let d = parse_inline(&text).unwrap();
        let doc = DiagramDocument::from_diagram(&d).to_string();
        prop_assert_eq!(parse_document(&doc).unwrap(), d);
    }

    #[test]
    fn torus_round_trip(a in slope(), b in slope()) {
        let d = torus_oracle::t2_diagram(a, b);
        prop_assert_eq!(parse_inline(&serialize(&d)).unwrap(), d);
    }

    #[test]
    fn torus_moves_keep_invariants(a in slope(), b in slope()) {
        let d = torus_oracle::t2_diagram(a, b);
        let (_, bad) = invariants::violations(&d);
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }
}
