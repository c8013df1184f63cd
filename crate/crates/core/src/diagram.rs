//! Group diagrams `(G, H, K-, K+)`: admissibility, equivalence moves and
//! canonical forms, fundamental groups, reduction and normal extension.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::oracle::materialize_sph;
use crate::catalog::spherical::{self, prev, Cover, Sph};
use crate::catalog::{
    component_witnesses, conjugate, contains_truth, factor_intersection, normal_core_subgroup, normalizer,
    subgroup_generated, CatalogError, ConjugationWitness, EmbeddedSubgroup, GroupSpec, So4Sub, Sub, TorusSubgroup,
};
use crate::lattice::{coordinates, kernel};
use crate::quotients::{identify_subquotient, is_admissible_fiber, FundamentalGroup, HomogeneousSpace, QuotientError};
use crate::scalar::{Axis, Quaternion};
use crate::symint::{Param, SymInt, Truth};
use crate::Quat;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum DiagramError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error("invalid witness: {0}")]
    Witness(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("not reducible: {0}")]
    NotReducible(String),
    #[error("cannot extend: {0}")]
    Extension(String),
}

pub type Result<T> = std::result::Result<T, DiagramError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitSpace {
    Interval,
    /// Orbit space a circle; the gluing is a component of `N(H)/H`, given as
    /// an index into [`component_witnesses`] of `H`.
    Circle { gluing: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupDiagram {
    pub g: GroupSpec,
    pub h: EmbeddedSubgroup,
    pub k_minus: Option<EmbeddedSubgroup>,
    pub k_plus: Option<EmbeddedSubgroup>,
    pub orbit_space: OrbitSpace,
}

impl GroupDiagram {
    pub fn new(g: GroupSpec, h: EmbeddedSubgroup, k_minus: EmbeddedSubgroup, k_plus: EmbeddedSubgroup) -> Self {
        Self { g, h, k_minus: Some(k_minus), k_plus: Some(k_plus), orbit_space: OrbitSpace::Interval }
    }

    pub fn over_circle(g: GroupSpec, h: EmbeddedSubgroup, gluing: usize) -> Self {
        Self { g, h, k_minus: None, k_plus: None, orbit_space: OrbitSpace::Circle { gluing } }
    }

    pub fn is_interval(&self) -> bool {
        self.orbit_space == OrbitSpace::Interval
    }

    /// `(K-, K+)` for interval diagrams.
    pub fn singular(&self) -> Result<(&EmbeddedSubgroup, &EmbeddedSubgroup)> {
        match (&self.k_minus, &self.k_plus) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(DiagramError::NotApplicable(format!("{self} has no singular orbits"))),
        }
    }

    pub fn subgroups(&self) -> Vec<&EmbeddedSubgroup> {
        let mut out = vec![&self.h];
        out.extend(self.k_minus.iter());
        out.extend(self.k_plus.iter());
        out
    }

    /// Family parameter, if any subgroup depends on one.
    pub fn parameter(&self) -> Option<Param> {
        self.subgroups().iter().find_map(|s| s.parameter().and_then(|p| p.param().cloned()))
    }

    pub fn instantiate(&self, value: u64) -> Result<GroupDiagram> {
        let f = |s: &EmbeddedSubgroup| s.instantiate(value);
        Ok(GroupDiagram {
            g: self.g.clone(),
            h: f(&self.h)?,
            k_minus: self.k_minus.as_ref().map(f).transpose()?,
            k_plus: self.k_plus.as_ref().map(f).transpose()?,
            orbit_space: self.orbit_space,
        })
    }

    /// Dimension of the space `dim G - dim H + 1`.
    pub fn space_dimension(&self) -> usize {
        self.g.dimension() + 1 - self.h.dim()
    }
}

impl fmt::Display for GroupDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.k_minus, &self.k_plus) {
            (Some(a), Some(b)) => write!(f, "({}, {}, {a}, {b})", self.g, self.h),
            _ => {
                let gluing = match self.orbit_space {
                    OrbitSpace::Circle { gluing } => gluing,
                    OrbitSpace::Interval => 0,
                };
                write!(f, "({}, {}; circle/{gluing})", self.g, self.h)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Effectiveness {
    Effective,
    AlmostEffective,
    Ineffective,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// `K-/H` and `K+/H` when identified.
    pub fibers: Vec<Option<HomogeneousSpace>>,
    pub effectiveness: Effectiveness,
    pub dimension: usize,
    pub accepted: bool,
}

impl ValidationReport {
    pub fn reasons(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect()
    }

    pub fn fiber(&self, i: usize) -> Option<&HomogeneousSpace> {
        self.fibers.get(i).and_then(|f| f.as_ref())
    }
}

fn effectiveness(h: &EmbeddedSubgroup) -> Effectiveness {
    match normal_core_subgroup(h) {
        Ok(core) if core.group == GroupSpec::Trivial => Effectiveness::Effective,
        Ok(core) if core.is_finite() => Effectiveness::AlmostEffective,
        Ok(_) => Effectiveness::Ineffective,
        // Undecided only happens for families of finite groups.
        Err(_) if h.is_finite() => Effectiveness::AlmostEffective,
        Err(_) => Effectiveness::Ineffective,
    }
}

fn check(checks: &mut Vec<Check>, name: &str, passed: bool, detail: impl Into<String>) {
    checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
}

pub fn validate(d: &GroupDiagram) -> ValidationReport {
    validate_report(d, None)
}

/// [`validate`] with the additional requirement that the space has dimension `n`.
pub fn validate_in_dimension(d: &GroupDiagram, n: usize) -> ValidationReport {
    validate_report(d, Some(n))
}

fn validate_report(d: &GroupDiagram, n: Option<usize>) -> ValidationReport {
    let mut checks = Vec::new();
    let mut fibers = Vec::new();
    let parents_ok = d.subgroups().iter().all(|s| *s.parent() == d.g);
    check(&mut checks, "parent", parents_ok, if parents_ok { "all subgroups of G".to_string() } else { format!("subgroups not in {}", d.g) });
    if parents_ok {
        match d.singular() {
            Ok((km, kp)) => {
                for (side, k) in [("K-", km), ("K+", kp)] {
                    let truth = contains_truth(&d.h, k).unwrap_or(Truth::Never);
                    let detail = match truth {
                        Truth::Always => format!("{} <= {side}", d.h),
                        Truth::Never => format!("{} is not contained in {k}", d.h),
                        Truth::Sometimes => format!("{} <= {k} only for some parameter values", d.h),
                    };
                    check(&mut checks, &format!("H <= {side}"), truth == Truth::Always, detail);
                    let fiber = if truth == Truth::Never { None } else { identify_subquotient(k, &d.h).ok() };
                    let (ok, detail) = match &fiber {
                        Some(f) if is_admissible_fiber(f) => (true, format!("{side}/H = {f}")),
                        Some(f) => (false, format!("{side}/H = {f} is not a positively curved homogeneous space")),
                        None => (false, format!("{side}/H not identified")),
                    };
                    check(&mut checks, &format!("{side}/H admissible"), ok, detail);
                    fibers.push(fiber);
                }
            }
            Err(_) => {
                let count = component_witnesses(&d.h).map(|w| w.len()).unwrap_or(1);
                let gluing = match d.orbit_space {
                    OrbitSpace::Circle { gluing } => gluing,
                    OrbitSpace::Interval => usize::MAX,
                };
                check(&mut checks, "gluing", gluing < count, format!("component {gluing} of {count} in N(H)/H"));
            }
        }
    }
    // Recorded, not enforced: normal extensions of torus actions are never effective.
    let eff = effectiveness(&d.h);
    let dimension = d.space_dimension();
    if let Some(n) = n {
        check(
            &mut checks,
            "cohomogeneity",
            dimension == n,
            format!("dim G - dim H = {} for a space of dimension {n}", dimension as i64 - 1),
        );
    }
    let accepted = checks.iter().all(|c| c.passed);
    ValidationReport { checks, fibers, effectiveness: eff, dimension, accepted }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EquivalenceMove {
    SwapPlusMinus,
    ConjugateAll(ConjugationWitness),
    /// Conjugate `K-` by an element of `N(H)_0`.
    TwistMinus(ConjugationWitness),
}

fn in_identity_component(w: &ConjugationWitness, n0: &EmbeddedSubgroup) -> Result<bool> {
    if matches!(w, ConjugationWitness::Identity | ConjugationWitness::Central) {
        return Ok(true);
    }
    let about = |u: Axis| match w {
        ConjugationWitness::Quaternion(q) => {
            let imag = [q.x, q.y, q.z];
            Axis::ALL.iter().zip(imag).all(|(&v, c)| v == u || c.abs() < 1e-9)
        }
        ConjugationWitness::AxisRotation { axis, .. } => *axis == u,
        _ => true,
    };
    Ok(match n0.view()? {
        Sub::Torus(_) => true,
        Sub::So4(s) => matches!(s, So4Sub::SO3 | So4Sub::Whole),
        Sub::Sph(_, s) | Sub::Prod(s, _) => match s {
            Sph::Whole => true,
            Sph::Circle(u) => about(u),
            _ => false,
        },
        Sub::Diag(t) => t.project(&[0]).is_full() && about(Axis::K),
    })
}

pub fn apply_move(d: &GroupDiagram, m: &EquivalenceMove) -> Result<GroupDiagram> {
    let mut out = d.clone();
    match m {
        EquivalenceMove::SwapPlusMinus => std::mem::swap(&mut out.k_minus, &mut out.k_plus),
        EquivalenceMove::ConjugateAll(w) => {
            let f = |s: &EmbeddedSubgroup| conjugate(s, w).map_err(|e| DiagramError::Witness(e.to_string()));
            out.h = f(&d.h)?;
            out.k_minus = d.k_minus.as_ref().map(f).transpose()?;
            out.k_plus = d.k_plus.as_ref().map(f).transpose()?;
        }
        EquivalenceMove::TwistMinus(w) => {
            let n0 = normalizer(&d.h)?.identity_component;
            if !in_identity_component(w, &n0)? {
                return Err(DiagramError::Witness(format!("{w} is not in N(H)_0 = {n0}")));
            }
            let (km, _) = d.singular()?;
            out.k_minus = Some(conjugate(km, w).map_err(|e| DiagramError::Witness(e.to_string()))?);
        }
    }
    Ok(out)
}

/// Rotations permuting the coordinate axes up to sign, as unit quaternions.
fn octahedral_rotations() -> &'static [Quat] {
    static CELL: OnceLock<Vec<Quat>> = OnceLock::new();
    CELL.get_or_init(|| {
        let set = materialize_sph::<f64>(Cover::SU2, &Sph::Octahedral, 1).expect("binary octahedral group");
        let mut out: Vec<Quat> = Vec::new();
        for q in set.elements() {
            if !out.iter().any(|p| p.approx_eq(q) || p.approx_eq(&-*q)) {
                out.push(*q);
            }
        }
        out
    })
}

pub fn conjugation_witnesses(g: &GroupSpec) -> Vec<ConjugationWitness> {
    match g {
        GroupSpec::SU2 | GroupSpec::SO3 => {
            octahedral_rotations().iter().map(|q| ConjugationWitness::Quaternion(*q)).collect()
        }
        g if *g == GroupSpec::so3_times_circle() => {
            octahedral_rotations().iter().map(|q| ConjugationWitness::Quaternion(*q)).collect()
        }
        _ => vec![ConjugationWitness::Identity],
    }
}

type SubKey = (usize, String, String);

fn sub_key(s: &EmbeddedSubgroup) -> SubKey {
    (s.dim(), s.to_string(), format!("{s:?}"))
}

type DiagramKey = (OrbitSpace, SubKey, SubKey, SubKey);

fn diagram_key(d: &GroupDiagram) -> DiagramKey {
    let none = (0, String::new(), String::new());
    (
        d.orbit_space,
        d.k_minus.as_ref().map(sub_key).unwrap_or_else(|| none.clone()),
        d.k_plus.as_ref().map(sub_key).unwrap_or_else(|| none.clone()),
        sub_key(&d.h),
    )
}

/// All diagrams reachable through moves whose results stay in standard position.
pub fn orbit(d: &GroupDiagram) -> Vec<GroupDiagram> {
    let conj = conjugation_witnesses(&d.g);
    let mut twists: HashMap<EmbeddedSubgroup, Vec<ConjugationWitness>> = HashMap::new();
    let mut seen: BTreeSet<DiagramKey> = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([d.clone()]);
    seen.insert(diagram_key(d));
    while let Some(x) = queue.pop_front() {
        let mut moves = vec![EquivalenceMove::SwapPlusMinus];
        moves.extend(conj.iter().cloned().map(EquivalenceMove::ConjugateAll));
        if x.is_interval() {
            let tw = twists.entry(x.h.clone()).or_insert_with(|| {
                let n0 = normalizer(&x.h).map(|n| n.identity_component);
                conj.iter()
                    .filter(|w| n0.as_ref().is_ok_and(|n0| in_identity_component(w, n0).unwrap_or(false)))
                    .cloned()
                    .collect()
            });
            moves.extend(tw.iter().cloned().map(EquivalenceMove::TwistMinus));
        }
        for m in &moves {
            if let Ok(y) = apply_move(&x, m) {
                if seen.insert(diagram_key(&y)) {
                    queue.push_back(y);
                }
            }
        }
        out.push(x);
    }
    out
}

/// Representative minimizing the fixed total order over the orbit.
pub fn canonical_form(d: &GroupDiagram) -> GroupDiagram {
    orbit(d).into_iter().min_by_key(diagram_key).expect("orbit contains the diagram")
}

pub fn equivalent(d1: &GroupDiagram, d2: &GroupDiagram) -> bool {
    if d1.g != d2.g || d1.orbit_space != d2.orbit_space {
        return false;
    }
    diagram_key(&canonical_form(d1)) == diagram_key(&canonical_form(d2))
}

/// Order of `s ∩ {e^{uθ}}` for a finite subgroup `s` of `SU(2)`.
fn axis_part(s: &Sph, u: Axis) -> Option<SymInt> {
    let c = SymInt::Concrete;
    Some(match s {
        Sph::Identity => c(1),
        Sph::Cyclic(a, v) if *v == u => a.clone(),
        Sph::Cyclic(a, _) => match a.is_even() {
            Truth::Always => c(2),
            Truth::Never => c(1),
            Truth::Sometimes => return None,
        },
        Sph::Dihedral(m, v) if *v == u => m.scale(2),
        Sph::Dihedral(m, v) => {
            let flip = u == v.next() || (u == prev(*v) && m.is_even() == Truth::Always);
            if u == prev(*v) && m.is_even() == Truth::Sometimes {
                return None;
            }
            c(if flip { 4 } else { 2 })
        }
        Sph::Klein | Sph::Tetrahedral | Sph::Icosahedral => c(4),
        Sph::Octahedral => c(8),
        _ => return None,
    })
}

/// `π_1` of a diagram over `SU(2)` or `SO(3)`: `H*/⟨H* ∩ K-*_0, H* ∩ K+*_0⟩`.
fn sph_pi1(cover: Cover, h: &Sph, ks: [&Sph; 2]) -> Result<FundamentalGroup> {
    let na = |why: &str| DiagramError::NotApplicable(why.to_string());
    let lift = |s: &Sph| match cover {
        Cover::SU2 => s.clone(),
        Cover::SO3 => s.preimage(),
    };
    let hs = lift(h);
    if ks.iter().any(|k| **k == Sph::Whole) {
        return Ok(FundamentalGroup::Trivial);
    }
    if !hs.is_finite() {
        let components = hs.components(Cover::SU2).ok_or_else(|| na("components of H"))?;
        return Ok(FundamentalGroup::CyclicZ(components));
    }
    let order = hs.order(Cover::SU2).ok_or_else(|| na("order of H"))?;
    let mut parts: Vec<(Axis, SymInt)> = Vec::new();
    for k in ks {
        if let Sph::Circle(u) | Sph::CircleNormalizer(u) = k {
            let o = axis_part(&hs, *u).ok_or_else(|| na("intersection with a circle"))?;
            if o.concrete() != Some(1) {
                parts.push((*u, o));
            }
        }
    }
    let generated: Option<SymInt> = match parts.as_slice() {
        [] => None,
        [(_, a)] => Some(a.clone()),
        [(u, a), (v, b)] if u == v => Some(a.lcm(b).ok_or_else(|| na("lcm of family orders"))?),
        _ => {
            if let Sph::Cyclic(..) = hs {
                // Both parts are subgroups of a cyclic group; only the central Z_2 can sit off-axis.
                let (a, b) = (&parts[0].1, &parts[1].1);
                Some(a.lcm(b).ok_or_else(|| na("lcm of family orders"))?)
            } else {
                return Err(na("subgroup generated by two circle intersections"));
            }
        }
    };
    let Some(n) = generated else {
        return Ok(match &hs {
            Sph::Cyclic(a, _) => FundamentalGroup::CyclicZ(a.clone()),
            other => FundamentalGroup::CatalogFinite(spherical::group_spec(Cover::SU2, other)),
        });
    };
    let index = order.ratio(&n).ok_or_else(|| na("index of the killed subgroup"))?;
    if let Sph::Cyclic(..) = hs {
        return Ok(FundamentalGroup::CyclicZ(index));
    }
    match (index.concrete(), n.concrete()) {
        (Some(1), _) => Ok(FundamentalGroup::Trivial),
        (Some(2), _) => Ok(FundamentalGroup::CyclicZ(SymInt::Concrete(2))),
        (_, Some(2)) => {
            let image = hs.project().ok_or_else(|| na("image in SO(3)"))?;
            Ok(FundamentalGroup::CatalogFinite(spherical::group_spec(Cover::SO3, &image)))
        }
        _ => Err(na("quotient of a binary polyhedral group")),
    }
}

fn torus_pi1(h: &TorusSubgroup, ks: [&TorusSubgroup; 2]) -> Result<FundamentalGroup> {
    // π_1(T^k/H) is dual to the character lattice A = H^perp; the image of
    // π_1(K/H) is the set of functionals vanishing on K^perp.
    let a = h.annihilator();
    let r = a.len();
    let k = h.ambient_rank();
    let mut relations = Vec::new();
    for kk in ks {
        let c = coordinates(kk.annihilator(), a, k)
            .ok_or_else(|| DiagramError::NotApplicable("K is not a supergroup of H".into()))?;
        relations.extend(kernel(&c, r));
    }
    Ok(FundamentalGroup::LatticeQuotient { rank: r, relations })
}

/// `π_1(X) = π_1(G/H)/N_- N_+`, when both fibers are connected and each is
/// either simply connected or a sphere.
pub fn fundamental_group(d: &GroupDiagram) -> Result<FundamentalGroup> {
    let (km, kp) = d.singular()?;
    let report = validate(d);
    if !report.accepted {
        return Err(DiagramError::NotApplicable(format!("invalid diagram: {}", report.reasons().join("; "))));
    }
    for f in report.fibers.iter().flatten() {
        let connected = f.dim > 0 && !matches!(f.name, crate::quotients::SpaceName::ProductSpace(_));
        if !connected || !(f.simply_connected || f.is_sphere) {
            return Err(DiagramError::NotApplicable(format!("fiber {f} is not simply connected")));
        }
    }
    let pi = match (d.h.view()?, km.view()?, kp.view()?) {
        (Sub::Torus(h), Sub::Torus(a), Sub::Torus(b)) => torus_pi1(&h, [&a, &b])?,
        (Sub::Sph(cover, h), Sub::Sph(_, a), Sub::Sph(_, b)) => sph_pi1(cover, &h, [&a.identity_part(), &b.identity_part()])?,
        (Sub::So4(h), Sub::So4(a), Sub::So4(b)) => {
            let kills = [a, b].contains(&So4Sub::Whole);
            if h == So4Sub::O3 && !kills {
                FundamentalGroup::CyclicZ(SymInt::Concrete(2))
            } else {
                FundamentalGroup::Trivial
            }
        }
        (Sub::Prod(..) | Sub::Diag(_), _, _) => match reduce(d) {
            Ok(r) => return fundamental_group(&r),
            Err(_) => {
                let parts = [&d.h, km, kp].map(|s| s.view());
                match parts {
                    [Ok(Sub::Prod(h, y)), Ok(Sub::Prod(a, b)), Ok(Sub::Prod(c, e))] => {
                        let left = sph_pi1(Cover::SO3, &h, [&a.identity_part(), &c.identity_part()])?;
                        let kills = b.is_full() || e.is_full();
                        let right = if y.is_full() || kills { FundamentalGroup::Trivial } else { FundamentalGroup::FreeAbelian(1) };
                        FundamentalGroup::Product(vec![left, right])
                    }
                    _ => return Err(DiagramError::NotApplicable("non-product subgroups of SO(3)xS^1".into())),
                }
            }
        },
        _ => return Err(DiagramError::NotApplicable("mixed subgroup types".into())),
    };
    Ok(pi.normalized())
}

trait IdentityPart {
    fn identity_part(&self) -> Sph;
}

impl IdentityPart for Sph {
    /// Identity component in standard position.
    fn identity_part(&self) -> Sph {
        match self {
            Sph::Whole => Sph::Whole,
            Sph::Circle(u) | Sph::CircleNormalizer(u) => Sph::Circle(*u),
            _ => Sph::Identity,
        }
    }
}

fn restrict_diagram(d: &GroupDiagram, g: GroupSpec, f: impl Fn(&EmbeddedSubgroup) -> Result<EmbeddedSubgroup>) -> Result<GroupDiagram> {
    Ok(GroupDiagram {
        g,
        h: f(&d.h)?,
        k_minus: d.k_minus.as_ref().map(&f).transpose()?,
        k_plus: d.k_plus.as_ref().map(&f).transpose()?,
        orbit_space: match d.orbit_space {
            OrbitSpace::Interval => OrbitSpace::Interval,
            OrbitSpace::Circle { .. } => OrbitSpace::Circle { gluing: 0 },
        },
    })
}

/// Subaction of the first factor when `H` projects onto the second.
pub fn reduce(d: &GroupDiagram) -> Result<GroupDiagram> {
    let fail = |why: String| DiagramError::NotReducible(why);
    match d.h.view()? {
        Sub::Torus(h) => {
            let k = h.ambient_rank();
            if k < 2 {
                return Err(fail(format!("{} has no proper factor", d.g)));
            }
            let j = (0..k)
                .rev()
                .find(|&j| h.project(&[j]).is_full())
                .ok_or_else(|| fail(format!("{} projects onto no circle factor", d.h)))?;
            let keep: Vec<usize> = (0..k).filter(|&i| i != j).collect();
            let g = if k == 2 { GroupSpec::Circle } else { GroupSpec::Torus(k - 1) };
            restrict_diagram(d, g.clone(), |s| match s.view()? {
                Sub::Torus(t) => Ok(Sub::Torus(t.restrict(&keep)).embed(&g)),
                _ => Err(fail("mixed subgroups".into())),
            })
        }
        Sub::Prod(_, b) if b.is_full() => restrict_diagram(d, GroupSpec::SO3, |s| {
            let (a, _) = factor_intersection(s)?;
            Ok(EmbeddedSubgroup::so3(a))
        }),
        Sub::Diag(t) if t.project(&[1]).is_full() => restrict_diagram(d, GroupSpec::SO3, |s| {
            let (a, _) = factor_intersection(s)?;
            Ok(EmbeddedSubgroup::so3(a))
        }),
        _ => Err(fail(format!("{} does not project onto the second factor of {}", d.h, d.g))),
    }
}

/// `(X × 1) · ΔL` for `X` in a torus and `L` the circle along `v` with
/// `L ∩ H` of order `m`, inside the torus of one more dimension.
fn extend_torus(x: &TorusSubgroup, v: &[i64], m: i64) -> TorusSubgroup {
    // Characters (w, c) with w ∈ X^perp and w·v + c m = 0.
    let a = x.annihilator();
    let k = x.ambient_rank();
    let mut row: Vec<i64> = a.iter().map(|w| w.iter().zip(v).map(|(p, q)| p * q).sum()).collect();
    row.push(m);
    let ker = kernel(&[row], a.len() + 1);
    let ann = ker
        .iter()
        .map(|alpha| {
            let mut w = vec![0i64; k + 1];
            for (i, ai) in a.iter().enumerate() {
                for j in 0..k {
                    w[j] += alpha[i] * ai[j];
                }
            }
            w[k] = alpha[a.len()];
            w
        })
        .collect();
    TorusSubgroup::from_annihilator(k + 1, ann)
}

/// Normal extension by a connected subgroup `l` normalizing `H` and `K±`.
pub fn normal_extension(d: &GroupDiagram, l: &EmbeddedSubgroup) -> Result<GroupDiagram> {
    let fail = |why: String| DiagramError::Extension(why);
    if l.parent() != &d.g {
        return Err(fail(format!("{l} is not a subgroup of {}", d.g)));
    }
    if l.group == GroupSpec::Trivial {
        return Ok(d.clone());
    }
    if matches!(d.orbit_space, OrbitSpace::Circle { gluing } if gluing > 0) {
        return Err(fail("extension of a circle diagram with a twisted gluing".into()));
    }
    for s in d.subgroups() {
        let n = normalizer(s)?.normalizer;
        if contains_truth(l, &n)? != Truth::Always {
            return Err(fail(format!("{l} does not normalize {s}")));
        }
    }
    if contains_truth(l, &d.h)? == Truth::Always {
        return Ok(d.clone());
    }
    match (d.h.view()?, l.view()?) {
        (Sub::Torus(_), Sub::Torus(lt)) => {
            let v = lt.as_circle().ok_or_else(|| fail(format!("{l} is not a circle")))?;
            let m = lt.meet(&torus_view(&d.h)?).component_count() as i64;
            let rank = lt.ambient_rank() + 1;
            let g = GroupSpec::Torus(rank);
            restrict_diagram(d, g.clone(), |s| Ok(Sub::Torus(extend_torus(&torus_view(s)?, &v, m)).embed(&g)))
        }
        (Sub::Sph(Cover::SO3, h), Sub::Sph(Cover::SO3, Sph::Circle(u))) => {
            let m = match &h {
                Sph::Identity => 1,
                Sph::Cyclic(a, w) if *w == u => {
                    a.concrete().ok_or_else(|| fail("extension of a family".into()))? as i64
                }
                _ => return Err(fail(format!("{} meets {l} in a non-cyclic group", d.h))),
            };
            let g = GroupSpec::so3_times_circle();
            // Rotate so that L is the standard circle about K.
            let to_k = match u {
                Axis::K => ConjugationWitness::Identity,
                other => ConjugationWitness::Quaternion(Quaternion::rotation(other.next(), std::f64::consts::FRAC_PI_2)),
            };
            let ext = |s: &EmbeddedSubgroup| -> Result<EmbeddedSubgroup> {
                let moved = conjugate(s, &to_k).map_err(|e| fail(e.to_string()))?;
                let Sub::Sph(_, x) = moved.view()? else { unreachable!() };
                if spherical::contains(Cover::SO3, &x, &Sph::Circle(Axis::K)) == Truth::Always {
                    return Ok(EmbeddedSubgroup::so3_circle(x, TorusSubgroup::full(1)));
                }
                let t = crate::catalog::so2_subgroup(&x).ok_or_else(|| fail(format!("{s} is not toral")))?;
                Ok(EmbeddedSubgroup::so3_circle_toral(extend_torus(&t, &[1], m)))
            };
            let moved_axis = conjugate(&EmbeddedSubgroup::so3(Sph::Circle(u)), &to_k)?;
            if moved_axis != EmbeddedSubgroup::so3(Sph::Circle(Axis::K)) {
                return Err(fail("could not move L to the standard circle".into()));
            }
            restrict_diagram(d, g, ext)
        }
        _ => Err(fail(format!("extension of {} by {l} is not supported", d.g))),
    }
}

fn torus_view(s: &EmbeddedSubgroup) -> Result<TorusSubgroup> {
    match s.view()? {
        Sub::Torus(t) => Ok(t),
        _ => Err(DiagramError::Extension(format!("{s} is not a torus subgroup"))),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Primitivity {
    pub primitive: bool,
    /// Proper subgroup `L` with `H ≤ K± ≤ L` when not primitive.
    pub witness: Option<EmbeddedSubgroup>,
}

/// Whether `K-` and `n K+ n^{-1}` generate `G` for every component
/// representative `n` of `N(H)`.
pub fn is_primitive(d: &GroupDiagram) -> Result<Primitivity> {
    let (km, kp) = d.singular()?;
    let whole = EmbeddedSubgroup::whole(&d.g)?;
    for n in component_witnesses(&d.h)? {
        let Ok(twisted) = conjugate(kp, &n) else { continue };
        let l = subgroup_generated(km, &twisted)?;
        if l.canonical()? != whole {
            return Ok(Primitivity { primitive: false, witness: Some(l) });
        }
    }
    Ok(Primitivity { primitive: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3(s: Sph) -> EmbeddedSubgroup {
        EmbeddedSubgroup::so3(s)
    }

    fn t2(dir: &[i64]) -> EmbeddedSubgroup {
        EmbeddedSubgroup::torus(TorusSubgroup::circle(dir))
    }

    fn t2_diagram(a: &[i64], b: &[i64]) -> GroupDiagram {
        let e = EmbeddedSubgroup::trivial(&GroupSpec::Torus(2)).unwrap();
        GroupDiagram::new(GroupSpec::Torus(2), e, t2(a), t2(b))
    }

    fn suspension_rp2() -> GroupDiagram {
        GroupDiagram::new(GroupSpec::SO3, so3(Sph::CircleNormalizer(Axis::K)), so3(Sph::Whole), so3(Sph::Whole))
    }

    #[test]
    fn validation_examples() {
        let r = validate_in_dimension(&suspension_rp2(), 3);
        assert!(r.accepted, "{:?}", r.reasons());
        assert_eq!(r.fiber(0).unwrap().to_string(), "RP^2");
        assert!(validate(&t2_diagram(&[1, 0], &[0, 1])).accepted);
        let bad = GroupDiagram::new(
            GroupSpec::SO3,
            so3(Sph::CircleNormalizer(Axis::K)),
            so3(Sph::Whole),
            so3(Sph::Cyclic(SymInt::Concrete(2), Axis::K)),
        );
        assert!(!validate(&bad).accepted);
    }

    #[test]
    fn swap_and_equivalence() {
        assert!(equivalent(&t2_diagram(&[1, 0], &[0, 1]), &t2_diagram(&[0, 1], &[1, 0])));
        assert!(!equivalent(&t2_diagram(&[1, 0], &[1, 0]), &t2_diagram(&[1, 0], &[0, 1])));
    }

    #[test]
    fn twist_inside_identity_component() {
        let d = suspension_rp2();
        let w = ConjugationWitness::Quaternion(Quaternion::rotation(Axis::K, 0.3));
        let moved = apply_move(&d, &EquivalenceMove::TwistMinus(w)).unwrap();
        assert!(equivalent(&moved, &d));
        let bad = ConjugationWitness::Quaternion(Quaternion::rotation(Axis::I, 0.3));
        assert!(apply_move(&d, &EquivalenceMove::TwistMinus(bad)).is_err());
    }

    #[test]
    fn conjugate_perpendicular_circles() {
        let e = so3(Sph::Cyclic(SymInt::Concrete(2), Axis::K));
        let a = GroupDiagram::new(GroupSpec::SO3, e.clone(), so3(Sph::Whole), so3(Sph::CircleNormalizer(Axis::I)));
        let b = GroupDiagram::new(GroupSpec::SO3, e, so3(Sph::Whole), so3(Sph::CircleNormalizer(Axis::J)));
        assert!(equivalent(&a, &b));
    }

    #[test]
    fn torus_fundamental_groups() {
        assert!(fundamental_group(&t2_diagram(&[1, 0], &[0, 1])).unwrap().is_trivial());
        assert_eq!(fundamental_group(&t2_diagram(&[1, 0], &[1, 0])).unwrap(), FundamentalGroup::FreeAbelian(1));
        assert_eq!(
            fundamental_group(&t2_diagram(&[1, 0], &[1, 3])).unwrap(),
            FundamentalGroup::CyclicZ(SymInt::Concrete(3))
        );
    }

    #[test]
    fn lens_fiber_is_not_applicable() {
        let p = Param::new('n', 2);
        let h = EmbeddedSubgroup::su2(Sph::Cyclic(SymInt::n(1, &p), Axis::I));
        let w = EmbeddedSubgroup::su2(Sph::Whole);
        let d = GroupDiagram::new(GroupSpec::SU2, h, w.clone(), w);
        assert!(matches!(fundamental_group(&d), Err(DiagramError::NotApplicable(_))));
    }

    #[test]
    fn reduction() {
        let g = GroupSpec::so3_times_circle();
        let o2 = Sph::CircleNormalizer(Axis::K);
        let d = GroupDiagram::new(
            g.clone(),
            EmbeddedSubgroup::so3_circle(o2.clone(), TorusSubgroup::full(1)),
            EmbeddedSubgroup::whole(&g).unwrap(),
            EmbeddedSubgroup::whole(&g).unwrap(),
        );
        assert_eq!(reduce(&d).unwrap(), suspension_rp2());
        let flat = GroupDiagram::new(
            g.clone(),
            EmbeddedSubgroup::so3_circle(o2, TorusSubgroup::trivial(1)),
            EmbeddedSubgroup::so3_circle(Sph::Whole, TorusSubgroup::trivial(1)),
            EmbeddedSubgroup::so3_circle(Sph::Whole, TorusSubgroup::trivial(1)),
        );
        assert!(matches!(reduce(&flat), Err(DiagramError::NotReducible(_))));
        let p = is_primitive(&flat).unwrap();
        assert!(!p.primitive);
        assert_eq!(p.witness.unwrap().to_string(), "SO(3)");
    }

    #[test]
    fn torus_reduction_drops_third_factor() {
        let g = GroupSpec::Torus(3);
        let h = EmbeddedSubgroup::torus(TorusSubgroup::circle(&[0, 0, 1]));
        let k = |d: &[i64]| EmbeddedSubgroup::torus(TorusSubgroup::from_generators(3, &[d.to_vec(), vec![0, 0, 1]], &[]));
        let d = GroupDiagram::new(g, h, k(&[1, 0, 0]), k(&[0, 1, 0]));
        assert!(equivalent(&reduce(&d).unwrap(), &t2_diagram(&[1, 0], &[0, 1])));
    }

    #[test]
    fn extension_round_trip() {
        let d = t2_diagram(&[1, 0], &[0, 1]);
        let l = t2(&[1, 1]);
        let e = normal_extension(&d, &l).unwrap();
        assert_eq!(e.g, GroupSpec::Torus(3));
        assert!(validate(&e).accepted);
        assert!(equivalent(&reduce(&e).unwrap(), &d));
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&t2_diagram(&[1, 0], &[0, 1])).unwrap().primitive);
        assert!(!is_primitive(&t2_diagram(&[1, 0], &[1, 0])).unwrap().primitive);
    }
}
