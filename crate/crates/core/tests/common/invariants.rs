//! Invariants that equivalence moves must preserve.

use std::sync::OnceLock;

use cohom1::classify::{classify, theorem_b_table, theorem_c_table, Filter, DEFAULT_BOUND};
use cohom1::diagram::{
    apply_move, conjugation_witnesses, fundamental_group, is_primitive, validate, EquivalenceMove, GroupDiagram,
};
use cohom1::quotients::FundamentalGroup;
use cohom1::topology::{is_manifold, realize, SpaceDescription};

#[derive(Debug, PartialEq)]
pub struct Signature {
    pub accepted: bool,
    pub space: Option<String>,
    pub manifold: Option<bool>,
    pub primitive: Option<bool>,
    pub pi1: Option<FundamentalGroup>,
}

pub fn signature(d: &GroupDiagram) -> Signature {
    Signature {
        accepted: validate(d).accepted,
        space: realize(d).ok().map(|s| space_key(&s)),
        manifold: is_manifold(d).ok(),
        primitive: is_primitive(d).ok().map(|p| p.primitive),
        pi1: fundamental_group(d).ok().map(|p| p.normalized()),
    }
}

/// The realization with the two halves of a double disc bundle in a fixed order.
fn space_key(s: &SpaceDescription) -> String {
    match s {
        SpaceDescription::ConeBundleUnion { minus, plus, glue } => {
            let mut halves = [minus.to_string(), plus.to_string()];
            halves.sort();
            format!("{} ∪_{{{glue}}} {}", halves[0], halves[1])
        }
        SpaceDescription::Named { label, .. } => label.clone(),
        other => other.to_string(),
    }
}

pub fn moves(d: &GroupDiagram) -> Vec<EquivalenceMove> {
    let mut out = vec![EquivalenceMove::SwapPlusMinus];
    for w in conjugation_witnesses(&d.g) {
        out.push(EquivalenceMove::ConjugateAll(w.clone()));
        out.push(EquivalenceMove::TwistMinus(w));
    }
    out
}

/// Moves that apply to `d` and change an invariant.
pub fn violations(d: &GroupDiagram) -> (usize, Vec<String>) {
    let before = signature(d);
    let mut applied = 0;
    let mut bad = Vec::new();
    for m in moves(d) {
        let Ok(e) = apply_move(d, &m) else { continue };
        applied += 1;
        let after = signature(&e);
        if after != before {
            bad.push(format!("{d} --{m:?}--> {e}: {before:?} vs {after:?}"));
        }
    }
    (applied, bad)
}

/// Instances of every row of the dimension 3 and 4 tables.
pub fn table_instances() -> &'static [GroupDiagram] {
    static CELL: OnceLock<Vec<GroupDiagram>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for t in [theorem_b_table().unwrap(), theorem_c_table().unwrap()] {
            for r in &t.rows {
                out.extend(r.instances(DEFAULT_BOUND));
            }
        }
        out
    })
}

/// Instances of the full dimension 4 classification, manifolds included.
pub fn all_instances(dim: usize) -> Vec<GroupDiagram> {
    classify(dim, Filter::All, DEFAULT_BOUND).unwrap().rows.iter().flat_map(|r| r.instances(DEFAULT_BOUND)).collect()
}
