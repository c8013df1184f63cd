//! Enumeration of group diagrams per group and dimension, folded into
//! parameter families and compared with the published tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::spherical::{Cover, Sph};
use crate::catalog::{
    component_witnesses, conjugate, contains_truth, Ambient, EmbeddedSubgroup, GroupSpec, So4Sub, Sub, TorusSubgroup,
};
use crate::diagram::{
    canonical_form, conjugation_witnesses, equivalent, reduce, validate_in_dimension, DiagramError, Effectiveness,
    GroupDiagram, OrbitSpace,
};
use crate::quotients::{identify_subquotient, is_admissible_fiber, HomogeneousSpace};
use crate::scalar::Axis;
use crate::symint::{Param, SymInt, Truth};
use crate::topology::{is_manifold, realize, SpaceDescription};

/// Largest family parameter instantiated during enumeration, unless overridden.
pub const DEFAULT_BOUND: u64 = 12;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ClassifyError {
    #[error("dimension {0} is out of scope (supported: 3, 4)")]
    OutOfScope(usize),
    #[error("{0}")]
    Guard(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

pub type Result<T> = std::result::Result<T, ClassifyError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Filter {
    All,
    NonManifold,
    Manifold,
}

impl Filter {
    fn admits(self, manifold: bool) -> bool {
        match self {
            Filter::All => true,
            Filter::NonManifold => !manifold,
            Filter::Manifold => manifold,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Provenance {
    PaperRow(String),
    NewlyEnumerated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRow {
    pub group: GroupSpec,
    /// Representative; symbolic for a parameter family.
    pub diagram: GroupDiagram,
    /// Parameter range or merged members, e.g. `n >= 2`.
    pub family: Option<String>,
    /// Further families merged into this row.
    pub members: Vec<GroupDiagram>,
    pub realization: SpaceDescription,
    pub manifold: bool,
    pub provenance: Provenance,
}

impl ClassificationRow {
    /// The diagram as the tables print it, with merged members replaced by `Γ`.
    pub fn diagram_label(&self) -> String {
        if self.members.is_empty() {
            self.diagram.to_string()
        } else {
            let g = &self.diagram.g;
            format!("({g}, Γ, {g}, {g})")
        }
    }

    /// Concrete members with parameters up to `bound`.
    pub fn instances(&self, bound: u64) -> Vec<GroupDiagram> {
        let mut out = Vec::new();
        for d in std::iter::once(&self.diagram).chain(&self.members) {
            match d.parameter() {
                None => out.push(d.clone()),
                Some(p) => out.extend((p.min..=bound).filter_map(|n| d.instantiate(n).ok())),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationTable {
    pub dimension: usize,
    pub groups: Vec<GroupSpec>,
    pub rows: Vec<ClassificationRow>,
}

impl ClassificationTable {
    pub fn non_manifold(&self) -> Vec<&ClassificationRow> {
        self.rows.iter().filter(|r| !r.manifold).collect()
    }
}

impl fmt::Display for ClassificationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let family = r.family.as_deref().map(|s| format!(" [{s}]")).unwrap_or_default();
            let kind = if r.manifold { "manifold" } else { "non-manifold" };
            writeln!(f, "{}{family} = {}  ({kind})", r.diagram_label(), r.realization)?;
            for note in r.realization.notes() {
                writeln!(f, "    note: {note}")?;
            }
        }
        Ok(())
    }
}

fn candidate_groups() -> Vec<GroupSpec> {
    let mut out: Vec<GroupSpec> = (2..=4).map(GroupSpec::Torus).collect();
    out.extend([GroupSpec::SU2, GroupSpec::SO3, GroupSpec::so3_times_circle(), GroupSpec::SO4]);
    out
}

fn check_dimension(dim: usize) -> Result<()> {
    if dim == 3 || dim == 4 {
        Ok(())
    } else {
        Err(ClassifyError::OutOfScope(dim))
    }
}

/// Groups acting with cohomogeneity one on some `dim`-dimensional space: the
/// isometry group of the `dim - 1`-dimensional principal orbit bounds
/// `dim G`, and a kept diagram must exist.
pub fn admissible_groups(dim: usize) -> Result<Vec<GroupSpec>> {
    check_dimension(dim)?;
    let k = dim - 1;
    Ok(candidate_groups()
        .into_iter()
        .filter(|g| g.dimension() <= k * (k + 1) / 2 && g.dimension() + 1 >= dim)
        .filter(|g| !concrete_diagrams(dim, g, 3, Filter::All).is_empty())
        .collect())
}

/// The list the dimension bound must reproduce.
pub fn published_groups(dim: usize) -> Result<Vec<GroupSpec>> {
    check_dimension(dim)?;
    Ok(match dim {
        3 => vec![GroupSpec::Torus(2), GroupSpec::SO3],
        _ => vec![GroupSpec::Torus(3), GroupSpec::SU2, GroupSpec::SO3, GroupSpec::so3_times_circle(), GroupSpec::SO4],
    })
}

fn c(v: u64) -> SymInt {
    SymInt::Concrete(v)
}

fn sph_list(cover: Cover, bound: u64) -> Vec<Sph> {
    let mut out = vec![Sph::Identity];
    for u in Axis::ALL {
        out.extend((2..=bound).map(|n| Sph::Cyclic(c(n), u)));
        out.extend((3..=bound).map(|n| Sph::Dihedral(c(n), u)));
        out.push(Sph::Circle(u));
        out.push(Sph::CircleNormalizer(u));
    }
    out.extend([Sph::Klein, Sph::Tetrahedral, Sph::Octahedral, Sph::Icosahedral, Sph::Whole]);
    let mut canon: Vec<Sph> = Vec::new();
    for s in out.into_iter().map(|s| s.canonical(cover)) {
        if !canon.contains(&s) {
            canon.push(s);
        }
    }
    canon
}

fn sph_parameter(s: &Sph) -> u64 {
    match s {
        Sph::Cyclic(n, _) | Sph::Dihedral(n, _) => n.concrete().unwrap_or(0),
        _ => 0,
    }
}

/// Catalog subgroups in standard position with orders up to `bound`.
fn subgroup_list(g: &GroupSpec, bound: u64) -> Vec<EmbeddedSubgroup> {
    match crate::catalog::ambient_of(g) {
        Ok(Ambient::Sphere(cover)) => {
            sph_list(cover, bound).into_iter().map(|s| Sub::Sph(cover, s).embed(g)).collect()
        }
        Ok(Ambient::SO3xS1) => {
            let mut out = Vec::new();
            let circle_parts =
                [TorusSubgroup::trivial(1), TorusSubgroup::cyclic(&[1], 2), TorusSubgroup::cyclic(&[1], 3), TorusSubgroup::full(1)];
            for s in sph_list(Cover::SO3, bound) {
                for t in &circle_parts {
                    out.push(EmbeddedSubgroup::so3_circle(s.clone(), t.clone()));
                }
            }
            for p in -2i64..=2 {
                for q in 1i64..=2 {
                    if num_integer::gcd(p, q) == 1 {
                        out.push(EmbeddedSubgroup::so3_circle_toral(TorusSubgroup::circle(&[p, q])));
                    }
                }
            }
            out
        }
        Ok(Ambient::SO4) => [So4Sub::Identity, So4Sub::Center, So4Sub::SO3, So4Sub::O3, So4Sub::Whole]
            .into_iter()
            .map(EmbeddedSubgroup::so4)
            .collect(),
        _ => Vec::new(),
    }
}

fn subgroup_parameter(s: &EmbeddedSubgroup) -> u64 {
    match s.view() {
        Ok(Sub::Sph(_, a)) | Ok(Sub::Prod(a, _)) => sph_parameter(&a),
        _ => 0,
    }
}

/// One subgroup per conjugacy class among `list`.
fn conjugacy_representatives(g: &GroupSpec, list: &[EmbeddedSubgroup]) -> Vec<EmbeddedSubgroup> {
    let witnesses = conjugation_witnesses(g);
    let mut seen: Vec<String> = Vec::new();
    let mut out = Vec::new();
    for s in list {
        let class = witnesses
            .iter()
            .filter_map(|w| conjugate(s, w).ok())
            .map(|x| format!("{:?}", x.view().ok()))
            .min()
            .unwrap_or_else(|| format!("{:?}", s.view().ok()));
        if !seen.contains(&class) {
            seen.push(class);
            out.push(s.clone());
        }
    }
    out
}

/// Parker's bookkeeping: almost effective `SU(2)` actions are listed under
/// `SU(2)` when `-1 ∉ H`, when `H` is cyclic and every singular isotropy
/// group is cyclic, a circle or `SU(2)`, or for `H = <i>` with `Pin(2)`;
/// all others are `SO(3)` actions.
pub fn listed_under_su2(d: &GroupDiagram) -> bool {
    let sph = |s: &EmbeddedSubgroup| match s.view() {
        Ok(Sub::Sph(Cover::SU2, a)) => Some(a),
        _ => None,
    };
    let Some(h) = sph(&d.h) else { return false };
    if h.contains_minus_one() == Truth::Never {
        return true;
    }
    let ks: Vec<Sph> = [&d.k_minus, &d.k_plus].into_iter().flatten().filter_map(sph).collect();
    let cyclic = |s: &Sph| matches!(s, Sph::Identity | Sph::Cyclic(..));
    if cyclic(&h) && ks.iter().all(|k| cyclic(k) || matches!(k, Sph::Circle(_) | Sph::Whole)) {
        return true;
    }
    matches!(&h, Sph::Cyclic(n, _) if n.concrete() == Some(4))
        && ks.iter().any(|k| matches!(k, Sph::CircleNormalizer(_)))
}

/// Which almost effective diagrams the tables list under `d.g`.
fn kept(d: &GroupDiagram, eff: Effectiveness) -> bool {
    match crate::catalog::ambient_of(&d.g) {
        Ok(Ambient::Sphere(Cover::SU2)) => eff != Effectiveness::Ineffective && listed_under_su2(d),
        Ok(Ambient::Sphere(Cover::SO3)) | Ok(Ambient::SO4) => eff != Effectiveness::Ineffective,
        // Actions whose principal isotropy group projects onto the circle
        // factor restrict to SO(3) actions on the same space.
        Ok(Ambient::SO3xS1) => eff == Effectiveness::Effective && reduce(d).is_err(),
        Ok(Ambient::Torus(_)) => eff == Effectiveness::Effective,
        Err(_) => false,
    }
}

fn key(d: &GroupDiagram) -> String {
    format!("{:?}", canonical_form(d))
}

fn accept(d: &GroupDiagram, dim: usize, filter: Filter) -> bool {
    let report = validate_in_dimension(d, dim);
    report.accepted && kept(d, report.effectiveness) && is_manifold(d).is_ok_and(|m| filter.admits(m))
}

/// Canonical forms of all concrete kept diagrams, parameters of `H` up to
/// `bound`, singular isotropy groups up to `2 * bound`.
fn concrete_diagrams(dim: usize, g: &GroupSpec, bound: u64, filter: Filter) -> Vec<GroupDiagram> {
    if g.dimension() + 1 < dim {
        return Vec::new();
    }
    let hdim = g.dimension() + 1 - dim;
    if let GroupSpec::Torus(k) = g {
        return torus_diagrams(*k, dim, filter);
    }
    let all = subgroup_list(g, 2 * bound);
    let hs: Vec<EmbeddedSubgroup> = all.iter().filter(|h| h.dim() == hdim && subgroup_parameter(h) <= bound).cloned().collect();
    let mut seen: BTreeMap<String, GroupDiagram> = BTreeMap::new();
    for h in conjugacy_representatives(g, &hs) {
        let supers: Vec<&EmbeddedSubgroup> = all
            .iter()
            .filter(|k| contains_truth(&h, k).is_ok_and(|t| t == Truth::Always))
            .filter(|k| identify_subquotient(k, &h).is_ok_and(|f| is_admissible_fiber(&f)))
            .collect();
        for i in 0..supers.len() {
            for j in i..supers.len() {
                let d = GroupDiagram::new(g.clone(), h.clone(), supers[i].clone(), supers[j].clone());
                if accept(&d, dim, filter) {
                    let canon = canonical_form(&d);
                    seen.entry(format!("{canon:?}")).or_insert(canon);
                }
            }
        }
        let gluings = component_witnesses(&h).map(|w| w.len()).unwrap_or(0);
        for gluing in 0..gluings {
            let d = GroupDiagram::over_circle(g.clone(), h.clone(), gluing);
            if accept(&d, dim, filter) {
                let canon = canonical_form(&d);
                seen.entry(format!("{canon:?}")).or_insert(canon);
            }
        }
    }
    seen.into_values().collect()
}

fn primitive_vectors(k: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = (2 * r + 1).pow(k as u32);
    for idx in 0..total {
        let mut v = Vec::with_capacity(k);
        let mut x = idx;
        for _ in 0..k {
            v.push(x % (2 * r + 1) - r);
            x /= 2 * r + 1;
        }
        let first = v.iter().find(|&&a| a != 0);
        if first.is_some_and(|&a| a > 0) && crate::catalog::torus::is_primitive(&v) {
            out.push(v);
        }
    }
    out
}

/// Effective torus diagrams: `H = e`, singular isotropy groups circles or
/// subgroups of order two, slopes with entries in `[-2, 2]`.
fn torus_diagrams(k: usize, dim: usize, filter: Filter) -> Vec<GroupDiagram> {
    let g = GroupSpec::Torus(k);
    let e = EmbeddedSubgroup::torus(TorusSubgroup::trivial(k));
    let mut vs = primitive_vectors(k, 2);
    vs.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), v.iter().map(|x| -x).collect::<Vec<_>>()));
    let mut ks: Vec<EmbeddedSubgroup> = vs.iter().map(|v| EmbeddedSubgroup::torus(TorusSubgroup::circle(v))).collect();
    for mask in 1..(1u32 << k) {
        let u: Vec<i64> = (0..k).map(|i| i64::from(mask >> i & 1 == 1)).collect();
        ks.push(EmbeddedSubgroup::torus(TorusSubgroup::cyclic(&u, 2)));
    }
    let mut out = Vec::new();
    let free = GroupDiagram::over_circle(g.clone(), e.clone(), 0);
    if accept(&free, dim, filter) {
        out.push(free);
    }
    for i in 0..ks.len() {
        for j in i..ks.len() {
            let d = GroupDiagram::new(g.clone(), e.clone(), ks[i].clone(), ks[j].clone());
            if accept(&d, dim, filter) {
                out.push(d);
            }
        }
    }
    out
}

fn det2(a: &[i64], b: &[i64], i: usize, j: usize) -> i64 {
    a[i] * b[j] - a[j] * b[i]
}

/// Name of the space of an effective torus diagram with `H = e`: the
/// complement of a two-dimensional subtorus acts freely, leaving one of the
/// three-dimensional models.
pub fn torus_space_label(d: &GroupDiagram) -> Option<String> {
    let GroupSpec::Torus(k) = d.g else { return None };
    enum Iso {
        Circle(Vec<i64>),
        Exceptional(Vec<i64>),
    }
    let iso = |s: &EmbeddedSubgroup| -> Option<Iso> {
        let Ok(Sub::Torus(t)) = s.view() else { return None };
        if let Some(v) = t.as_circle() {
            Some(Iso::Circle(v))
        } else {
            t.as_z2().map(Iso::Exceptional)
        }
    };
    let mod2 = |v: &[i64]| v.iter().map(|x| x.rem_euclid(2)).collect::<Vec<_>>();
    let base = match d.singular() {
        Err(_) => "T^3".to_string(),
        Ok((a, b)) => match (iso(a)?, iso(b)?) {
            (Iso::Circle(a), Iso::Circle(b)) => {
                let mut p = 0i64;
                for i in 0..k {
                    for j in i + 1..k {
                        p = num_integer::gcd(p, det2(&a, &b, i, j));
                    }
                }
                match p {
                    0 => "S^2 x S^1".to_string(),
                    1 => "S^3".to_string(),
                    _ => "L_{p,q}".to_string(),
                }
            }
            (Iso::Circle(v), Iso::Exceptional(w)) | (Iso::Exceptional(w), Iso::Circle(v)) => {
                if mod2(&v) == w {
                    "RP^2 x S^1".to_string()
                } else {
                    "S^2 x~ S^1".to_string()
                }
            }
            (Iso::Exceptional(v), Iso::Exceptional(w)) => {
                if v == w {
                    "Kl x S^1".to_string()
                } else {
                    "A".to_string()
                }
            }
        },
    };
    Some(if k > 2 { format!("T^{} x {base}", k - 2) } else { base })
}

/// The eight three-dimensional models, in the order of the tables.
const TORUS_MODELS: [&str; 8] = ["T^3", "S^3", "L_{p,q}", "S^2 x S^1", "S^2 x~ S^1", "Kl x S^1", "RP^2 x S^1", "A"];

fn torus_family(base: &str) -> Option<String> {
    match base {
        "L_{p,q}" => Some("p >= 2, gcd(p,q) = 1".to_string()),
        _ => None,
    }
}

fn torus_rows(k: usize, dim: usize, filter: Filter) -> Vec<ClassificationRow> {
    let g = GroupSpec::Torus(k);
    let mut by_label: BTreeMap<String, GroupDiagram> = BTreeMap::new();
    for d in torus_diagrams(k, dim, filter) {
        if let Some(label) = torus_space_label(&d) {
            by_label.entry(label).or_insert(d);
        }
    }
    let order = |label: &str| TORUS_MODELS.iter().position(|m| label.ends_with(m)).unwrap_or(usize::MAX);
    let mut rows: Vec<(usize, ClassificationRow)> = by_label
        .into_iter()
        .filter_map(|(label, d)| {
            let structure = realize(&d).ok()?;
            let base = TORUS_MODELS.iter().find(|m| label.ends_with(*m)).copied().unwrap_or("");
            Some((
                order(&label),
                ClassificationRow {
                    group: g.clone(),
                    diagram: d,
                    family: torus_family(base),
                    members: Vec::new(),
                    realization: SpaceDescription::Named { label, notes: Vec::new(), structure: Box::new(structure) },
                    manifold: true,
                    provenance: Provenance::NewlyEnumerated,
                },
            ))
        })
        .collect();
    rows.sort_by_key(|(i, _)| *i);
    rows.into_iter().map(|(_, r)| r).collect()
}

type Build = fn(&GroupSpec, &SymInt) -> Option<EmbeddedSubgroup>;

/// Subgroup shapes depending on `n`, on the canonical axis of the group.
fn template_subgroups() -> Vec<(&'static str, Build)> {
    fn axis(g: &GroupSpec) -> Option<(Cover, Axis)> {
        match g {
            GroupSpec::SO3 => Some((Cover::SO3, Axis::K)),
            GroupSpec::SU2 => Some((Cover::SU2, Axis::I)),
            _ => None,
        }
    }
    fn mk(g: &GroupSpec, f: impl Fn(Axis) -> Sph) -> Option<EmbeddedSubgroup> {
        let (cover, u) = axis(g)?;
        Some(Sub::Sph(cover, f(u)).embed(g))
    }
    vec![
        ("Z_n", |g, n| mk(g, |u| Sph::Cyclic(n.clone(), u))),
        ("Z_2n", |g, n| mk(g, |u| Sph::Cyclic(n.scale(2), u))),
        ("D_n", |g, n| mk(g, |u| Sph::Dihedral(n.clone(), u))),
        ("D_2n", |g, n| mk(g, |u| Sph::Dihedral(n.scale(2), u))),
        ("SO2", |g, _| mk(g, Sph::Circle)),
        ("O2", |g, _| mk(g, Sph::CircleNormalizer)),
        ("G", |g, _| mk(g, |_| Sph::Whole)),
    ]
}

#[derive(Clone)]
struct Template {
    h: Build,
    ks: Option<(Build, Build)>,
    gluing: usize,
}

impl Template {
    fn build(&self, g: &GroupSpec, n: &SymInt) -> Option<GroupDiagram> {
        let h = (self.h)(g, n)?;
        Some(match self.ks {
            Some((a, b)) => GroupDiagram::new(g.clone(), h, a(g, n)?, b(g, n)?),
            None => GroupDiagram::over_circle(g.clone(), h, self.gluing),
        })
    }

    fn concrete(&self, g: &GroupSpec, n: u64) -> Option<GroupDiagram> {
        let d = self.build(g, &c(n))?;
        let canon = |s: &EmbeddedSubgroup| s.canonical().ok();
        Some(GroupDiagram {
            g: d.g.clone(),
            h: canon(&d.h)?,
            k_minus: match &d.k_minus {
                Some(k) => Some(canon(k)?),
                None => None,
            },
            k_plus: match &d.k_plus {
                Some(k) => Some(canon(k)?),
                None => None,
            },
            orbit_space: d.orbit_space,
        })
    }
}

fn templates() -> Vec<Template> {
    let subs = template_subgroups();
    let hs = [subs[0].1, subs[2].1];
    let mut out = Vec::new();
    for h in hs {
        for i in 0..subs.len() {
            for j in i..subs.len() {
                out.push(Template { h, ks: Some((subs[i].1, subs[j].1)), gluing: 0 });
            }
        }
        for gluing in 0..4 {
            out.push(Template { h, ks: None, gluing });
        }
    }
    out
}

fn symbolic(n_min: u64) -> SymInt {
    SymInt::n(1, &Param::new('n', n_min))
}

/// Folded rows: parameter families first, then the remaining diagrams.
fn sph_rows(dim: usize, g: &GroupSpec, bound: u64, filter: Filter) -> Result<Vec<ClassificationRow>> {
    let concrete = concrete_diagrams(dim, g, bound, filter);
    let mut remaining: BTreeMap<String, GroupDiagram> = concrete.into_iter().map(|d| (key(&d), d)).collect();
    let mut families: Vec<(GroupDiagram, u64)> = Vec::new();
    let min_len = bound.min(3);
    let mut cache: HashMap<String, bool> = HashMap::new();
    for t in templates() {
        let mut hits: Vec<(u64, String, bool)> = Vec::new();
        for n in 1..=bound {
            let Some(d) = t.concrete(g, n) else { continue };
            let raw = format!("{d:?}");
            let ok = *cache.entry(raw).or_insert_with(|| accept(&d, dim, filter));
            if !ok {
                continue;
            }
            let k = key(&d);
            if remaining.contains_key(&k) {
                hits.push((n, k, is_manifold(&d).unwrap_or(false)));
            }
        }
        // A family has one manifold status; earlier members with the other
        // status stay sporadic.
        if let Some(&(_, _, last)) = hits.last() {
            let start = hits.iter().rposition(|h| h.2 != last).map_or(0, |i| i + 1);
            hits.drain(..start);
        }
        let Some(&(m, _, _)) = hits.first() else { continue };
        let tail = hits.len() as u64 == bound + 1 - m && hits.last().is_some_and(|h| h.0 == bound);
        if !tail || (hits.len() as u64) < min_len {
            continue;
        }
        let Some(fam) = t.build(g, &symbolic(m)) else { continue };
        for (_, k, _) in &hits {
            remaining.remove(k);
        }
        families.push((fam, m));
    }
    let mut rows = Vec::new();
    for (fam, m) in families {
        let generic = {
            let t = fam.clone();
            // The generic member, `n >= 2`, carries the family's presentation.
            relabel(&t, m.max(2))
        };
        let realization = match realize(&generic) {
            Ok(r) => r,
            Err(_) => realize(&relabel(&fam, m))?,
        };
        let manifold = is_manifold(&fam.instantiate(m)?)?;
        let fam = larger_first(relabel(&fam, m));
        rows.push(ClassificationRow {
            group: g.clone(),
            diagram: fam,
            family: Some(format!("n >= {m}")),
            members: Vec::new(),
            realization,
            manifold,
            provenance: Provenance::NewlyEnumerated,
        });
    }
    for d in remaining.into_values() {
        let d = presentable(&d);
        rows.push(ClassificationRow {
            group: g.clone(),
            realization: realize(&d)?,
            manifold: is_manifold(&d)?,
            diagram: d,
            family: None,
            members: Vec::new(),
            provenance: Provenance::NewlyEnumerated,
        });
    }
    Ok(merge_suspensions(g, rows))
}

fn larger_first(mut d: GroupDiagram) -> GroupDiagram {
    if let (Some(a), Some(b)) = (&d.k_minus, &d.k_plus) {
        if a.dim() < b.dim() || (a.dim() == b.dim() && a.is_finite() && b.group == d.g) {
            std::mem::swap(&mut d.k_minus, &mut d.k_plus);
        }
    }
    d
}

/// Member of the equivalence class as the tables print it: larger singular
/// isotropy group first, subgroups on their canonical axes.
fn presentable(d: &GroupDiagram) -> GroupDiagram {
    crate::diagram::orbit(d)
        .into_iter()
        .map(larger_first)
        .min_by_key(|x| {
            let k = x.k_minus.as_ref().map(|k| k.dim()).unwrap_or(0);
            let s = x.to_string();
            (std::cmp::Reverse(k), s.matches('@').count(), s)
        })
        .expect("orbit contains the diagram")
}

/// Replace the parameter minimum throughout a symbolic diagram.
fn relabel(d: &GroupDiagram, min: u64) -> GroupDiagram {
    let f = |s: &Sph| match s {
        Sph::Cyclic(a, u) => Sph::Cyclic(with_min(a, min), *u),
        Sph::Dihedral(a, u) => Sph::Dihedral(with_min(a, min), *u),
        other => other.clone(),
    };
    let sub = |s: &EmbeddedSubgroup| match s.view() {
        Ok(Sub::Sph(cover, a)) => Sub::Sph(cover, f(&a)).embed(s.parent()),
        _ => s.clone(),
    };
    GroupDiagram {
        g: d.g.clone(),
        h: sub(&d.h),
        k_minus: d.k_minus.as_ref().map(sub),
        k_plus: d.k_plus.as_ref().map(sub),
        orbit_space: d.orbit_space,
    }
}

fn with_min(a: &SymInt, min: u64) -> SymInt {
    match a {
        SymInt::Scaled { mult, param } => SymInt::n(*mult, &Param::new(param.name, min)),
        other => other.clone(),
    }
}

fn is_finite_suspension(d: &GroupDiagram) -> bool {
    let Ok(whole) = EmbeddedSubgroup::whole(&d.g) else { return false };
    d.h.is_finite() && d.k_minus.as_ref() == Some(&whole) && d.k_plus.as_ref() == Some(&whole)
}

/// Suspensions `Σ(G/Γ)` over finite `Γ` form one row when there are several.
fn merge_suspensions(g: &GroupSpec, rows: Vec<ClassificationRow>) -> Vec<ClassificationRow> {
    let (mut susp, mut rest): (Vec<_>, Vec<_>) = rows.into_iter().partition(|r| !r.manifold && is_finite_suspension(&r.diagram));
    let order = |r: &ClassificationRow| match r.diagram.h.group.order() {
        crate::catalog::Order::Finite(n) => n.concrete().unwrap_or(0),
        crate::catalog::Order::Infinite => u64::MAX,
    };
    susp.sort_by_key(|r| (r.family.is_none(), order(r)));
    if susp.len() < 2 {
        let mut out = susp;
        out.append(&mut rest);
        return out;
    }
    let names: Vec<String> = susp
        .iter()
        .map(|r| match &r.family {
            Some(f) => format!("{} ({f})", r.diagram.h.group),
            None => r.diagram.h.group.to_string(),
        })
        .collect();
    let label = format!("Σ({}/Γ)", g);
    let mut it = susp.into_iter();
    let first = it.next().expect("at least two rows");
    let merged = ClassificationRow {
        group: g.clone(),
        diagram: first.diagram,
        family: Some(format!("Γ ∈ {{{}}}", names.join(", "))),
        members: it.map(|r| r.diagram).collect(),
        realization: SpaceDescription::Named {
            label,
            notes: Vec::new(),
            structure: Box::new(first.realization.structure().clone()),
        },
        manifold: false,
        provenance: Provenance::NewlyEnumerated,
    };
    let mut out = vec![merged];
    out.append(&mut rest);
    out
}

/// Rows for one group, in a fixed order.
pub fn enumerate_diagrams(dim: usize, group: &GroupSpec, filter: Filter) -> Result<ClassificationTable> {
    enumerate_diagrams_with_bound(dim, group, filter, DEFAULT_BOUND)
}

pub fn enumerate_diagrams_with_bound(
    dim: usize,
    group: &GroupSpec,
    filter: Filter,
    bound: u64,
) -> Result<ClassificationTable> {
    check_dimension(dim)?;
    let mut rows = match group {
        GroupSpec::Torus(k) => torus_rows(*k, dim, filter),
        g => sph_rows(dim, g, bound, filter)?,
    };
    for r in &mut rows {
        if let Some(label) = paper_label(dim, r) {
            r.provenance = Provenance::PaperRow(label);
        }
    }
    Ok(ClassificationTable { dimension: dim, groups: vec![group.clone()], rows })
}

fn aggregate(dim: usize, filter: Filter, bound: u64) -> Result<ClassificationTable> {
    let groups = admissible_groups(dim)?;
    let mut rows = Vec::new();
    for g in &groups {
        rows.extend(enumerate_diagrams_with_bound(dim, g, filter, bound)?.rows);
    }
    Ok(ClassificationTable { dimension: dim, groups, rows })
}

pub fn classify(dim: usize, filter: Filter, bound: u64) -> Result<ClassificationTable> {
    aggregate(dim, filter, bound)
}

pub fn theorem_b_table() -> Result<ClassificationTable> {
    aggregate(3, Filter::All, DEFAULT_BOUND)
}

pub fn theorem_c_table() -> Result<ClassificationTable> {
    aggregate(4, Filter::NonManifold, DEFAULT_BOUND)
}

/// A published non-manifold row.
#[derive(Clone, Debug)]
pub struct PaperRow {
    pub dimension: usize,
    pub diagram: GroupDiagram,
    /// Right-hand side as printed.
    pub label: &'static str,
}

/// The non-manifold rows of the tables in dimensions 3 and 4, one diagram per
/// family (`Γ` rows listed once per choice of `Γ`).
pub fn paper_rows() -> Vec<PaperRow> {
    let n = |min: u64| symbolic(min);
    let su2 = EmbeddedSubgroup::su2;
    let so3 = EmbeddedSubgroup::so3;
    let pc = |a: Sph, t: TorusSubgroup| EmbeddedSubgroup::so3_circle(a, t);
    let (i, k) = (Axis::I, Axis::K);
    let sgamma = "Σ(SO(3)/Γ)";
    let rows: Vec<(usize, GroupDiagram, &'static str)> = vec![
        (
            3,
            GroupDiagram::new(GroupSpec::SO3, so3(Sph::CircleNormalizer(k)), so3(Sph::Whole), so3(Sph::Whole)),
            "Σ(RP^2)",
        ),
        (
            4,
            GroupDiagram::new(GroupSpec::SU2, su2(Sph::Cyclic(n(2), i)), su2(Sph::Whole), su2(Sph::Whole)),
            "Σ(SU(2)/Z_n)",
        ),
        (
            4,
            GroupDiagram::new(GroupSpec::SU2, su2(Sph::Cyclic(n(2), i)), su2(Sph::Whole), su2(Sph::Cyclic(n(2).scale(2), i))),
            "C(SU(2)/Z_n) ∪_{SU(2)/Z_n} D(SU(2)/Z_{2n})",
        ),
        (
            4,
            GroupDiagram::new(GroupSpec::SU2, su2(Sph::Cyclic(n(2), i)), su2(Sph::Whole), su2(Sph::Circle(i))),
            "C(SU(2)/Z_n) ∪_{SU(2)/Z_n} D(S^2)",
        ),
        (
            4,
            GroupDiagram::new(
                GroupSpec::SU2,
                su2(Sph::Cyclic(c(4), i)),
                su2(Sph::Whole),
                su2(Sph::CircleNormalizer(Axis::J)),
            ),
            "C(SU(2)/<i>) ∪_{SU(2)/<i>} D(S^2)",
        ),
        (4, GroupDiagram::new(GroupSpec::SO3, so3(Sph::Cyclic(n(1), k)), so3(Sph::Whole), so3(Sph::Whole)), sgamma),
        (4, GroupDiagram::new(GroupSpec::SO3, so3(Sph::Dihedral(n(2), k)), so3(Sph::Whole), so3(Sph::Whole)), sgamma),
        (4, GroupDiagram::new(GroupSpec::SO3, so3(Sph::Tetrahedral), so3(Sph::Whole), so3(Sph::Whole)), sgamma),
        (4, GroupDiagram::new(GroupSpec::SO3, so3(Sph::Octahedral), so3(Sph::Whole), so3(Sph::Whole)), sgamma),
        (4, GroupDiagram::new(GroupSpec::SO3, so3(Sph::Icosahedral), so3(Sph::Whole), so3(Sph::Whole)), sgamma),
        (
            4,
            GroupDiagram::new(GroupSpec::SO3, so3(Sph::Cyclic(n(1), k)), so3(Sph::Whole), so3(Sph::Cyclic(n(1).scale(2), k))),
            "C(SO(3)/Z_n) ∪_{SO(3)/Z_n} D(SO(3)/Z_n)",
        ),
        (
            4,
            GroupDiagram::new(GroupSpec::SO3, so3(Sph::Cyclic(n(2), k)), so3(Sph::Whole), so3(Sph::Dihedral(n(2), k))),
            "C(SO(3)/Z_n) ∪_{SO(3)/Z_n} D(SO(3)/D_n)",
        ),
        (
            4,
            GroupDiagram::new(GroupSpec::SO3, so3(Sph::Cyclic(n(1), k)), so3(Sph::Whole), so3(Sph::Circle(k))),
            "C(SO(3)/Z_n) ∪_{SO(3)/Z_n} D(S^2)",
        ),
        (
            4,
            GroupDiagram::new(GroupSpec::SO3, so3(Sph::Dihedral(n(2), k)), so3(Sph::Whole), so3(Sph::Dihedral(n(2).scale(2), k))),
            "C(SO(3)/D_n) ∪_{SO(3)/D_n} D(SO(3)/D_{2n})",
        ),
        (
            4,
            GroupDiagram::new(GroupSpec::SO3, so3(Sph::Dihedral(n(1), k)), so3(Sph::Whole), so3(Sph::CircleNormalizer(k))),
            "C(SO(3)/D_n) ∪_{SO(3)/D_n} D(RP^2)",
        ),
        (
            4,
            GroupDiagram::new(GroupSpec::SO3, so3(Sph::Tetrahedral), so3(Sph::Whole), so3(Sph::Octahedral)),
            "C(SO(3)/T) ∪_{SO(3)/T} D(SO(3)/O)",
        ),
        (
            4,
            GroupDiagram::new(
                GroupSpec::so3_times_circle(),
                pc(Sph::CircleNormalizer(k), TorusSubgroup::trivial(1)),
                pc(Sph::Whole, TorusSubgroup::trivial(1)),
                pc(Sph::Whole, TorusSubgroup::trivial(1)),
            ),
            "Σ(RP^2) x S^1",
        ),
        (
            4,
            GroupDiagram::new(
                GroupSpec::so3_times_circle(),
                pc(Sph::CircleNormalizer(k), TorusSubgroup::trivial(1)),
                pc(Sph::Whole, TorusSubgroup::trivial(1)),
                pc(Sph::CircleNormalizer(k), TorusSubgroup::cyclic(&[1], 2)),
            ),
            "C(RP^2)[S^1] ∪_{RP^2 x S^1} D(RP^2 x S^1)",
        ),
        (
            4,
            GroupDiagram::new(
                GroupSpec::so3_times_circle(),
                pc(Sph::CircleNormalizer(k), TorusSubgroup::trivial(1)),
                pc(Sph::Whole, TorusSubgroup::trivial(1)),
                pc(Sph::CircleNormalizer(k), TorusSubgroup::full(1)),
            ),
            "C(RP^2)[S^1] ∪_{RP^2 x S^1} D(RP^2)",
        ),
        (
            4,
            GroupDiagram::new(
                GroupSpec::SO4,
                EmbeddedSubgroup::so4(So4Sub::O3),
                EmbeddedSubgroup::so4(So4Sub::Whole),
                EmbeddedSubgroup::so4(So4Sub::Whole),
            ),
            "Σ(RP^3)",
        ),
    ];
    rows.into_iter().map(|(dimension, diagram, label)| PaperRow { dimension, diagram, label }).collect()
}

/// Whether the concrete or symbolic diagram `d` belongs to the published family `p`.
pub fn matches_paper_row(d: &GroupDiagram, p: &GroupDiagram, bound: u64) -> bool {
    if d.g != p.g {
        return false;
    }
    let inst = |x: &GroupDiagram| -> Vec<GroupDiagram> {
        match x.parameter() {
            None => vec![x.clone()],
            Some(param) => (param.min..=bound).filter_map(|n| x.instantiate(n).ok()).collect(),
        }
    };
    let mine = inst(d);
    let theirs = inst(p);
    mine.iter().all(|a| theirs.iter().any(|b| equivalent(a, b)))
}

fn paper_label(dim: usize, r: &ClassificationRow) -> Option<String> {
    if r.manifold {
        return None;
    }
    let rows = paper_rows();
    let probe = |d: &GroupDiagram| rows.iter().find(|p| p.dimension == dim && matches_paper_row(d, &p.diagram, 6));
    probe(&r.diagram).map(|p| p.label.to_string())
}

/// Orbit types of an effective `T^{n-1}` action on an `n`-dimensional space:
/// isotropy groups `K` with `K/H` a positively curved homogeneous space on
/// which a torus acts, and the resulting orbit `G/K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitType {
    pub isotropy: GroupSpec,
    pub orbit: String,
}

pub fn torus_orbit_types(n: usize) -> Result<Vec<OrbitType>> {
    if n < 2 {
        return Err(ClassifyError::Guard(format!("torus actions need n >= 2, got {n}")));
    }
    let k = n - 1;
    let e = EmbeddedSubgroup::torus(TorusSubgroup::trivial(k));
    let mut first = vec![0i64; k];
    first[0] = 1;
    let mut out = vec![OrbitType { isotropy: GroupSpec::Trivial, orbit: format!("T^{k}") }];
    let candidates = [
        (TorusSubgroup::cyclic(&first, 2), GroupSpec::Cyclic(c(2))),
        (TorusSubgroup::cyclic(&first, 3), GroupSpec::Cyclic(c(3))),
        (TorusSubgroup::circle(&first), GroupSpec::Circle),
    ];
    for (t, spec) in candidates {
        let kk = EmbeddedSubgroup::torus(t.clone());
        let Ok(fiber) = identify_subquotient(&kk, &e) else { continue };
        if !is_admissible_fiber(&fiber) {
            continue;
        }
        let orbit = if t.dim() == 0 { format!("T^{k}/{spec}") } else { format!("T^{}", k - t.dim()) };
        out.push(OrbitType { isotropy: spec, orbit });
    }
    Ok(out)
}

/// `T^{n-3}` times each three-dimensional model of the `T^2` table.
pub fn corollary_b_list(n: usize) -> Result<Vec<SpaceDescription>> {
    if n < 4 {
        return Err(ClassifyError::Guard(format!("the product list needs n >= 4, got {n}")));
    }
    let base = enumerate_diagrams(3, &GroupSpec::Torus(2), Filter::All)?;
    let torus = HomogeneousSpace::torus(n - 3);
    Ok(base
        .rows
        .iter()
        .map(|r| {
            let label = format!("{torus} x {}", r.realization);
            SpaceDescription::Named {
                label,
                notes: Vec::new(),
                structure: Box::new(SpaceDescription::Product(vec![
                    SpaceDescription::Homogeneous(torus.clone()),
                    r.realization.clone(),
                ])),
            }
        })
        .collect())
}

/// Orbit space tag used in structured output.
pub fn orbit_tag(d: &GroupDiagram) -> &'static str {
    match d.orbit_space {
        OrbitSpace::Interval => "interval",
        OrbitSpace::Circle { .. } => "circle",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_lists() {
        assert_eq!(admissible_groups(3).unwrap(), published_groups(3).unwrap());
        assert_eq!(admissible_groups(4).unwrap(), published_groups(4).unwrap());
        assert_eq!(admissible_groups(2), Err(ClassifyError::OutOfScope(2)));
    }

    #[test]
    fn orbit_types() {
        let names = |n| torus_orbit_types(n).unwrap().into_iter().map(|o| o.orbit).collect::<Vec<_>>();
        assert_eq!(names(4), ["T^3", "T^3/Z_2", "T^2"]);
        assert_eq!(names(2), ["T^1", "T^1/Z_2", "T^0"]);
        assert!(torus_orbit_types(1).is_err());
    }

    #[test]
    fn torus_models() {
        let t = enumerate_diagrams(3, &GroupSpec::Torus(2), Filter::All).unwrap();
        let labels: Vec<String> = t.rows.iter().map(|r| r.realization.to_string()).collect();
        assert_eq!(labels, TORUS_MODELS);
        assert!(t.rows.iter().all(|r| r.manifold));
    }

    #[test]
    fn dimension_three_non_manifold() {
        let t = enumerate_diagrams(3, &GroupSpec::SO3, Filter::NonManifold).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].realization.to_string(), "Σ(RP^2)");
    }

    #[test]
    fn so4_non_manifold() {
        let t = enumerate_diagrams(4, &GroupSpec::SO4, Filter::NonManifold).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].realization.to_string(), "Σ(RP^3)");
    }
}
