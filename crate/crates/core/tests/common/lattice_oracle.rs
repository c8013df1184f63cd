//! Comparison of the symbolic subgroup calculus of SU(2) and SO(3) with the
//! brute-force quaternion oracle.

use cohom1::catalog::oracle::{closure, finite_oracle_materialize, generators, member, probe_elements, ElementSet};
use cohom1::catalog::spherical::{finite_catalog, Cover, Sph};
use cohom1::catalog::{lattice_contains, normalizer, subgroup_generated, EmbeddedSubgroup, Sub};
use cohom1::{Axis, Quat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BOUND: u64 = 12;

fn embed(cover: Cover, s: &Sph) -> EmbeddedSubgroup {
    match cover {
        Cover::SU2 => EmbeddedSubgroup::su2(s.clone()),
        Cover::SO3 => EmbeddedSubgroup::so3(s.clone()),
    }
}

fn sph(sub: &EmbeddedSubgroup) -> Sph {
    match sub.view().expect("catalog member") {
        Sub::Sph(_, s) => s,
        other => panic!("unexpected view {other:?}"),
    }
}

fn infinite_candidates() -> Vec<Sph> {
    let mut v = vec![Sph::Whole];
    for u in Axis::ALL {
        v.push(Sph::Circle(u));
        v.push(Sph::CircleNormalizer(u));
    }
    v
}

fn all_members(cover: Cover, s: &Sph, set: &ElementSet<f64>) -> bool {
    set.elements().iter().all(|g| member(cover, s, g, BOUND).unwrap_or(false))
}

pub struct Report {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

/// Containment and generation for every pair, normalizers for every subgroup.
pub fn run(cover: Cover) -> Report {
    let catalog = finite_catalog(cover, BOUND);
    let sets: Vec<ElementSet<f64>> =
        catalog.iter().map(|s| finite_oracle_materialize(&embed(cover, s), BOUND).unwrap()).collect();
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for (i, a) in catalog.iter().enumerate() {
        for (j, b) in catalog.iter().enumerate() {
            checked += 1;
            let (ea, eb) = (embed(cover, a), embed(cover, b));
            let claimed = lattice_contains(&ea, &eb).unwrap();
            if claimed != sets[i].is_subset(&sets[j]) {
                mismatches.push(format!("{cover:?} contains {ea} <= {eb}: claimed {claimed}"));
            }
            if j < i {
                continue;
            }
            let mut gens = generators::<f64>(cover, a).unwrap();
            gens.extend(generators::<f64>(cover, b).unwrap());
            let truth = closure(&gens, 4000);
            match (subgroup_generated(&ea, &eb), truth) {
                (Ok(g), Some(set)) => match finite_oracle_materialize::<f64>(&g, 1000) {
                    Ok(claimed) if claimed.same_set(&set) => {}
                    _ => mismatches.push(format!("{cover:?} <{ea}, {eb}> claimed {g}, oracle order {}", set.len())),
                },
                (Ok(g), None) => {
                    let s = sph(&g);
                    let smallest = infinite_candidates()
                        .into_iter()
                        .filter(|c| all_members(cover, c, &sets[i]) && all_members(cover, c, &sets[j]))
                        .min_by_key(|c| c.dim());
                    if g.is_finite() || smallest.map(|m| m.dim()) != Some(s.dim()) || !all_members(cover, &s, &sets[i]) || !all_members(cover, &s, &sets[j]) {
                        mismatches.push(format!("{cover:?} <{ea}, {eb}> claimed {g}, oracle infinite"));
                    }
                }
                (Err(_), Some(set)) => {
                    let in_catalog = sets.iter().any(|s| s.same_set(&set));
                    if in_catalog {
                        mismatches.push(format!("{cover:?} <{ea}, {eb}> unrepresentable but in catalog"));
                    }
                }
                (Err(e), None) => mismatches.push(format!("{cover:?} <{ea}, {eb}> failed: {e}, oracle infinite")),
            }
        }
    }
    let mut probes = probe_elements::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let v: [f64; 4] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let q = Quat::from_f64(v[0], v[1], v[2], v[3]);
        if q.norm_sqr() > 1e-3 {
            probes.push(q.normalized());
        }
    }
    for (i, h) in catalog.iter().enumerate() {
        checked += 1;
        let eh = embed(cover, h);
        let n = normalizer(&eh).unwrap();
        let ns = sph(&n.normalizer);
        let n0 = sph(&n.identity_component);
        let finite_n = finite_oracle_materialize::<f64>(&n.normalizer, 1000).ok();
        let in_n = |g: &Quat| match &finite_n {
            Some(set) => set.contains(g),
            None => member(cover, &ns, g, 1000).unwrap(),
        };
        for g in &probes {
            let normalizes = sets[i].normalized_by(g);
            if normalizes != in_n(g) {
                mismatches.push(format!("{cover:?} N({eh}) = {}: probe {g:?} normalizes={normalizes}", n.normalizer));
                break;
            }
            if !n0.is_finite() && member(cover, &n0, g, 1000).unwrap() && !normalizes {
                mismatches.push(format!("{cover:?} N({eh})_0 = {} too large", n.identity_component));
                break;
            }
        }
    }
    Report { checked, mismatches }
}
