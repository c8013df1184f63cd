//! One line per acceptance criterion; the test fails if any line fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cohom1::catalog::spherical::{Cover, Sph};
use cohom1::catalog::{contains_truth, EmbeddedSubgroup, GroupSpec, Sub, TorusSubgroup};
use cohom1::classify::{
    corollary_b_list, matches_paper_row, paper_rows, theorem_b_table, theorem_c_table, DEFAULT_BOUND,
};
use cohom1::diagram::{equivalent, fundamental_group, normal_extension, reduce, GroupDiagram};
use cohom1::topology::{directions_catalog, join, space_of_directions, JoinSpace, Side};
use cohom1::{Axis, Truth};

use common::{invariants, lattice_oracle, torus_oracle};

const B_LIMIT: Duration = Duration::from_secs(1);
const C_LIMIT: Duration = Duration::from_secs(10);
const LATTICE_LIMIT: Duration = Duration::from_secs(30);
const PI1_SAMPLES: usize = 50;
const PI1_SLOPE_MAX: i64 = 9;
const PI1_SEED: u64 = 2024;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn dimension_three() -> Outcome {
    let (t, took) = timed(|| theorem_b_table().unwrap());
    if t.groups != [GroupSpec::Torus(2), GroupSpec::SO3] {
        return Err(format!("groups {:?}", t.groups));
    }
    let singular = t.non_manifold();
    if singular.len() != 1 || singular[0].realization.to_string() != "Σ(RP^2)" {
        return Err(format!("{} non-manifold rows", singular.len()));
    }
    if took >= B_LIMIT {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("T^2 and SO(3), one non-manifold row Σ(RP^2), {took:.2?}"))
}

fn dimension_four() -> Outcome {
    let (t, took) = timed(|| theorem_c_table().unwrap());
    if t.rows.len() != 15 {
        return Err(format!("{} rows", t.rows.len()));
    }
    let published: Vec<_> = paper_rows().into_iter().filter(|p| p.dimension == 4).collect();
    for r in &t.rows {
        let forms: Vec<&GroupDiagram> = std::iter::once(&r.diagram).chain(&r.members).collect();
        let Some(p) = published.iter().find(|p| forms.iter().any(|d| matches_paper_row(d, &p.diagram, DEFAULT_BOUND)))
        else {
            return Err(format!("{} matches no published row", r.diagram));
        };
        let label = r.realization.to_string();
        let misprint = p.label.ends_with("D(SO(3)/Z_n)") && label.ends_with("D(SO(3)/Z_{2n})");
        if label != p.label && !misprint {
            return Err(format!("{label} != {}", p.label));
        }
    }
    if took >= C_LIMIT {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("15 rows, labels as published (Z_{{2n}} row flagged), {took:.2?}"))
}

fn corollary() -> Outcome {
    let models = ["T^3", "S^3", "L_{p,q}", "S^2 x S^1", "S^2 x~ S^1", "Kl x S^1", "RP^2 x S^1", "A"];
    for n in 4..=8 {
        let got: Vec<String> = corollary_b_list(n).unwrap().iter().map(|s| s.to_string()).collect();
        // T^1 prints as S^1.
        let factor = if n == 4 { "S^1".to_string() } else { format!("T^{}", n - 3) };
        let want: Vec<String> = models.iter().map(|m| format!("{factor} x {m}")).collect();
        if got != want {
            return Err(format!("n = {n}: {got:?}"));
        }
    }
    Ok("eight T^{n-3} products for n = 4..8".into())
}

fn moves() -> Outcome {
    let mut applied = 0;
    for d in invariants::table_instances() {
        let (a, bad) = invariants::violations(d);
        if let Some(b) = bad.first() {
            return Err(b.clone());
        }
        applied += a;
    }
    Ok(format!("{applied} moves on {} instances, no change", invariants::table_instances().len()))
}

fn torus_pi1() -> Outcome {
    for (a, b) in torus_oracle::slopes(PI1_SEED, PI1_SAMPLES, PI1_SLOPE_MAX) {
        let d = torus_oracle::t2_diagram(a, b);
        let got = fundamental_group(&d).map_err(|e| format!("{d}: {e}"))?;
        if got.normalized() != torus_oracle::quotient(a, b).normalized() {
            return Err(format!("{d}: {got}"));
        }
    }
    Ok(format!("{PI1_SAMPLES} seeded T^2 diagrams, slopes <= {PI1_SLOPE_MAX}"))
}

fn lattice() -> Outcome {
    let ((so3, su2), took) = timed(|| (lattice_oracle::run(Cover::SO3), lattice_oracle::run(Cover::SU2)));
    if let Some(m) = so3.mismatches.first().or(su2.mismatches.first()) {
        return Err(m.clone());
    }
    if took >= LATTICE_LIMIT {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{} pairs agree, {took:.2?}", so3.checked + su2.checked))
}

fn joins() -> Outcome {
    for a in -1..=6 {
        for b in -1..=6 {
            let j = join(&JoinSpace::SphereJ(a), &JoinSpace::SphereJ(b));
            if j != JoinSpace::SphereJ(a + b + 1) {
                return Err(format!("S^{a} * S^{b} = {j}"));
            }
        }
    }
    let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<String>>();
    let remark = [
        (3, set(&["S^2", "RP^2"])),
        (4, set(&["S^3", "S^3/Γ", "Σ(RP^2)"])),
        (5, set(&["S^4", "RP^4", "CP^2", "Σ(S^3/Γ)", "S^1*RP^2"])),
        (6, set(&["S^5", "RP^5", "S^5/Γ", "Σ(RP^4)", "Σ(CP^2)", "S^1*S^3/Γ", "S^2*RP^2"])),
    ];
    for (dim, want) in &remark {
        if directions_catalog(*dim) != *want {
            return Err(format!("catalog in dimension {dim}: {:?}", directions_catalog(*dim)));
        }
    }
    for (dim, want) in &remark[..2] {
        let mut seen = BTreeSet::new();
        for d in invariants::all_instances(*dim).iter().filter(|d| d.is_interval()) {
            for side in [Side::Minus, Side::Plus] {
                let s = space_of_directions(d, side).map_err(|e| format!("{d}: {e}"))?;
                seen.insert(s.normal_form().class_label());
            }
        }
        if seen != *want {
            return Err(format!("directions in dimension {dim}: {seen:?}"));
        }
    }
    Ok("S^a * S^b = S^(a+b+1) for -1 <= a, b <= 6; catalogs for dimensions 3-6".into())
}

fn extension_candidates(g: &GroupSpec) -> Vec<EmbeddedSubgroup> {
    match g {
        GroupSpec::Torus(k) => {
            let mut out = Vec::new();
            for a in -2i64..=2 {
                for b in -2i64..=2 {
                    for c in -2i64..=2 {
                        let v = [a, b, c][..*k].to_vec();
                        if v.iter().any(|&x| x != 0) {
                            let l = Sub::Torus(TorusSubgroup::circle(&v)).embed(g);
                            if !out.contains(&l) {
                                out.push(l);
                            }
                        }
                    }
                }
            }
            out
        }
        GroupSpec::SO3 => Axis::ALL.iter().map(|&u| EmbeddedSubgroup::so3(Sph::Circle(u))).collect(),
        _ => Vec::new(),
    }
}

fn extension_round_trip() -> Outcome {
    let mut diagrams = invariants::all_instances(3);
    diagrams.extend(invariants::all_instances(4));
    let mut checked = 0;
    for d in &diagrams {
        for l in extension_candidates(&d.g) {
            let Ok(e) = normal_extension(d, &l) else { continue };
            if contains_truth(&l, &d.h).ok() == Some(Truth::Always) {
                continue;
            }
            match reduce(&e) {
                Ok(r) if equivalent(&r, d) => checked += 1,
                other => return Err(format!("{d} by {l}: {e} reduces to {other:?}")),
            }
        }
    }
    if checked == 0 {
        return Err("no extendable case".into());
    }
    Ok(format!("{checked} extensions reduce back"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 dimension 3 classification", dimension_three),
        ("2 dimension 4 non-manifolds", dimension_four),
        ("3 torus products", corollary),
        ("4 equivalence moves", moves),
        ("5 torus fundamental groups", torus_pi1),
        ("6 subgroup lattice oracle", lattice),
        ("7 joins and directions", joins),
        ("8 reduction of extensions", extension_round_trip),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
