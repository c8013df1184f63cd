//! Closed subgroups of `SU(2)` and `SO(3)` in standard position.
//!
//! Both groups share one description: an `SO(3)` subgroup is identified with
//! its preimage in `SU(2)` whenever an oracle needs elements, and most rules
//! for `SU(2)` are obtained by projecting to `SO(3)`.
//!
//! Standard position: cyclic groups, circles and their normalizers sit on one
//! of the coordinate axes; `D_m` about `u` is generated by the rotation of
//! order `m` about `u` and the half turn about `u.next()`; the polyhedral
//! groups are the ones containing the coordinate half turns.

use std::f64::consts::{FRAC_PI_2, PI};

use super::{CatalogError, ConjugationWitness, GroupSpec};
use crate::scalar::{Axis, Quaternion};
use crate::symint::{SymInt, Truth};
use crate::Quat;

/// A question the closed-form subgroup calculus does not decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unsupported;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cover {
    SU2,
    SO3,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sph {
    Identity,
    Cyclic(SymInt, Axis),
    /// `D_m` in `SO(3)`, the binary dihedral group of order `4m` in `SU(2)`; `m >= 3`.
    Dihedral(SymInt, Axis),
    /// Klein four-group in `SO(3)`, quaternion group in `SU(2)`.
    Klein,
    Tetrahedral,
    Octahedral,
    Icosahedral,
    Circle(Axis),
    /// `O(2)` in `SO(3)`, `Pin(2)` in `SU(2)`.
    CircleNormalizer(Axis),
    Whole,
}

use Sph::*;

fn c(v: u64) -> SymInt {
    SymInt::Concrete(v)
}

/// Axis preceding `u` in the cyclic order.
pub fn prev(u: Axis) -> Axis {
    u.next().next()
}

impl Sph {
    pub fn canonical(self, cover: Cover) -> Sph {
        match self {
            Cyclic(a, u) => match a.concrete() {
                Some(1) => Identity,
                Some(2) if cover == Cover::SU2 => Cyclic(c(2), Axis::I),
                _ => Cyclic(a, u),
            },
            Dihedral(m, u) => match (m.concrete(), cover) {
                (Some(1), Cover::SO3) => Cyclic(c(2), u.next()),
                (Some(1), Cover::SU2) => Cyclic(c(4), u.next()),
                (Some(2), _) => Klein,
                _ => Dihedral(m, u),
            },
            other => other,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Circle(_) | CircleNormalizer(_) => 1,
            Whole => 3,
            _ => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.dim() == 0
    }

    pub fn axis(&self) -> Option<Axis> {
        match self {
            Cyclic(_, u) | Dihedral(_, u) | Circle(u) | CircleNormalizer(u) => Some(*u),
            _ => None,
        }
    }

    pub fn order(&self, cover: Cover) -> Option<SymInt> {
        let k = match cover {
            Cover::SO3 => 1,
            Cover::SU2 => 2,
        };
        Some(match self {
            Identity => c(1),
            Cyclic(a, _) => a.clone(),
            Dihedral(m, _) => m.scale(2 * k),
            Klein => c(4 * k),
            Tetrahedral => c(12 * k),
            Octahedral => c(24 * k),
            Icosahedral => c(60 * k),
            _ => return None,
        })
    }

    /// Number of components.
    pub fn components(&self, cover: Cover) -> Option<SymInt> {
        match self {
            Circle(_) | Whole => Some(c(1)),
            CircleNormalizer(_) => Some(c(2)),
            _ => self.order(cover),
        }
    }

    /// Image in `SO(3)` of an `SU(2)` subgroup.
    pub fn project(&self) -> Option<Sph> {
        Some(match self {
            Cyclic(a, u) => match a.is_even() {
                Truth::Always => Cyclic(a.half()?, *u),
                Truth::Never => self.clone(),
                Truth::Sometimes => return None,
            },
            other => other.clone(),
        }
        .canonical(Cover::SO3))
    }

    /// Preimage in `SU(2)` of an `SO(3)` subgroup.
    pub fn preimage(&self) -> Sph {
        match self {
            Identity => Cyclic(c(2), Axis::I),
            Cyclic(a, u) => Cyclic(a.scale(2), *u),
            other => other.clone(),
        }
        .canonical(Cover::SU2)
    }

    /// Whether an `SU(2)` subgroup contains `-1`.
    pub fn contains_minus_one(&self) -> Truth {
        match self {
            Identity => Truth::Never,
            Cyclic(a, _) => a.is_even(),
            _ => Truth::Always,
        }
    }
}

fn divides(a: &SymInt, b: u64) -> Truth {
    a.divides(&c(b))
}

fn same(u: Axis, v: Axis) -> Truth {
    Truth::from_bool(u == v)
}

/// `sub ⊆ sup` in `SO(3)`.
fn so3_contains(sup: &Sph, sub: &Sph) -> Truth {
    if sup == sub {
        return Truth::Always;
    }
    match (sub, sup) {
        (Identity, _) | (_, Whole) => Truth::Always,
        (_, Identity) | (Whole, _) => Truth::Never,
        (Cyclic(a, u), Cyclic(b, v)) => a.divides(b).and(same(*u, *v)),
        (Cyclic(a, u), Dihedral(m, v)) => {
            if u == v {
                a.divides(m)
            } else {
                let on_flip_axis = Truth::from_bool(*u == v.next()).or(c(2).divides(m));
                divides(a, 2).and(on_flip_axis)
            }
        }
        (Cyclic(a, _), Klein | Tetrahedral | Icosahedral) => divides(a, 2),
        (Cyclic(a, _), Octahedral) => divides(a, 4),
        (Cyclic(_, u), Circle(v)) => same(*u, *v),
        (Cyclic(a, u), CircleNormalizer(v)) => same(*u, *v).or(divides(a, 2)),
        (Dihedral(n, u), Dihedral(m, v)) => n.divides(m).and(same(*u, *v)),
        (Dihedral(_, u), CircleNormalizer(v)) => same(*u, *v),
        (Dihedral(n, _), Octahedral) => n.equals(4),
        (Klein, Dihedral(m, _)) => c(2).divides(m),
        (Klein, CircleNormalizer(_) | Tetrahedral | Octahedral | Icosahedral) => Truth::Always,
        (Tetrahedral, Octahedral | Icosahedral) => Truth::Always,
        (Circle(u), Circle(v) | CircleNormalizer(v)) => same(*u, *v),
        (CircleNormalizer(u), CircleNormalizer(v)) => same(*u, *v),
        _ => Truth::Never,
    }
}

/// `sub ⊆ sup` for subgroups of the given group.
pub fn contains(cover: Cover, sup: &Sph, sub: &Sph) -> Truth {
    match cover {
        Cover::SO3 => so3_contains(sup, sub),
        Cover::SU2 => {
            if sup == sub {
                return Truth::Always;
            }
            match (sub, sup) {
                (Identity, _) | (_, Whole) => Truth::Always,
                (Cyclic(a, u), Cyclic(b, v)) => a.divides(b).and(same(*u, *v).or(divides(a, 2))),
                (Cyclic(a, u), Circle(v)) => same(*u, *v).or(divides(a, 2)),
                (Cyclic(a, u), CircleNormalizer(v)) => same(*u, *v).or(divides(a, 4)),
                (_, Cyclic(..) | Identity) => Truth::Never,
                _ => match (sub.project(), sup.project()) {
                    (Some(a), Some(b)) => so3_contains(&b, &a),
                    _ => Truth::Sometimes,
                },
            }
        }
    }
}

fn lcm(a: &SymInt, b: &SymInt) -> Result<SymInt, Unsupported> {
    a.lcm(b).ok_or(Unsupported)
}

/// Rotation axis, rotation order and whether half turns off the axis are present.
fn axial(s: &Sph) -> Option<(Axis, SymInt, bool)> {
    match s {
        Cyclic(a, u) => Some((*u, a.clone(), false)),
        Dihedral(m, u) => Some((*u, m.clone(), true)),
        _ => None,
    }
}

/// Closed subgroup of `SO(3)` generated by two subgroups in standard position;
/// `Err` when the result is a subgroup outside standard position.
fn so3_generate(a: &Sph, b: &Sph) -> Result<Sph, Unsupported> {
    if so3_contains(a, b).holds() {
        return Ok(a.clone());
    }
    if so3_contains(b, a).holds() {
        return Ok(b.clone());
    }
    for (x, y) in [(a, b), (b, a)] {
        match x {
            Circle(u) => {
                return Ok(if so3_contains(&CircleNormalizer(*u), y).holds() { CircleNormalizer(*u) } else { Whole });
            }
            CircleNormalizer(_) => return Ok(Whole),
            _ => {}
        }
    }
    for (x, y) in [(a, b), (b, a)] {
        if matches!(x, Tetrahedral | Octahedral | Icosahedral) {
            // T is maximal in both O and I; O and I are maximal closed subgroups.
            return Ok(if *x == Tetrahedral && so3_contains(&Octahedral, y).holds() { Octahedral } else { Whole });
        }
    }
    for (x, y) in [(a, b), (b, a)] {
        if *x == Klein {
            let (u, m, _) = axial(y).ok_or(Unsupported)?;
            return Ok(Dihedral(lcm(&c(2), &m)?, u).canonical(Cover::SO3));
        }
    }
    let (u, m, fu) = axial(a).ok_or(Unsupported)?;
    let (w, l, fw) = axial(b).ok_or(Unsupported)?;
    if u == w {
        let order = lcm(&m, &l)?;
        return Ok(if fu || fw { Dihedral(order, u) } else { Cyclic(order, u) }.canonical(Cover::SO3));
    }
    let big = |x: &SymInt| x.min_value() >= 3;
    let is2 = |x: &SymInt| x.concrete() == Some(2);
    if big(&m) && big(&l) {
        // Two perpendicular axes of order >= 3 occur only in the octahedral group.
        if m.concrete() == Some(4) && l.concrete() == Some(4) {
            return Ok(Octahedral);
        }
        if m.concrete().is_some() && l.concrete().is_some() {
            return Ok(Whole);
        }
        return Err(Unsupported);
    }
    if is2(&m) && is2(&l) && !fu && !fw {
        return Ok(Klein);
    }
    // A half turn about an axis perpendicular to the main axis of the other.
    let (main, order, flips, half) = if is2(&l) && !fw { (u, m, fu, w) } else if is2(&m) && !fu { (w, l, fw, u) } else { return Err(Unsupported) };
    if half == main.next() {
        return Ok(Dihedral(order, main).canonical(Cover::SO3));
    }
    match (order.is_even(), flips) {
        (Truth::Always, _) => Ok(Dihedral(order, main).canonical(Cover::SO3)),
        (Truth::Never, true) => Ok(Dihedral(order.scale(2), main).canonical(Cover::SO3)),
        _ => Err(Unsupported),
    }
}

/// Closed subgroup generated by `a` and `b`.
pub fn generate(cover: Cover, a: &Sph, b: &Sph) -> Result<Sph, Unsupported> {
    match cover {
        Cover::SO3 => so3_generate(a, b),
        Cover::SU2 => {
            if contains(cover, a, b).holds() {
                return Ok(a.clone());
            }
            if contains(cover, b, a).holds() {
                return Ok(b.clone());
            }
            if let (Cyclic(x, u), Cyclic(y, v)) = (a, b) {
                let central = |s: &SymInt| divides(s, 2).holds();
                if u == v || central(x) || central(y) {
                    let axis = if central(x) { *v } else { *u };
                    return Ok(Cyclic(lcm(x, y)?, axis).canonical(cover));
                }
            }
            if let (Cyclic(_, u), Circle(v)) | (Circle(v), Cyclic(_, u)) = (a, b) {
                if u == v {
                    return Ok(Circle(*u));
                }
            }
            // Any other pair generates a subgroup containing -1, which is
            // the full preimage of the generated subgroup of SO(3).
            let (pa, pb) = (a.project().ok_or(Unsupported)?, b.project().ok_or(Unsupported)?);
            Ok(so3_generate(&pa, &pb)?.preimage())
        }
    }
}

pub struct NormalizerData {
    pub normalizer: Sph,
    pub identity_component: Sph,
    pub quotient: GroupSpec,
}

fn so3_normalizer(h: &Sph) -> NormalizerData {
    let (normalizer, identity_component, quotient) = match h {
        Identity | Whole => (Whole, Whole, if *h == Whole { GroupSpec::Trivial } else { GroupSpec::SO3 }),
        Cyclic(_, u) => (CircleNormalizer(*u), Circle(*u), GroupSpec::O2),
        Dihedral(m, u) => (Dihedral(m.scale(2), *u), Identity, GroupSpec::Cyclic(c(2))),
        Klein => (Octahedral, Identity, GroupSpec::Dihedral(c(3))),
        Tetrahedral => (Octahedral, Identity, GroupSpec::Cyclic(c(2))),
        Octahedral | Icosahedral => (h.clone(), Identity, GroupSpec::Trivial),
        Circle(u) => (CircleNormalizer(*u), Circle(*u), GroupSpec::Cyclic(c(2))),
        CircleNormalizer(u) => (CircleNormalizer(*u), Circle(*u), GroupSpec::Trivial),
    };
    NormalizerData { normalizer, identity_component, quotient }
}

pub fn normalizer(cover: Cover, h: &Sph) -> Result<NormalizerData, Unsupported> {
    match cover {
        Cover::SO3 => Ok(so3_normalizer(h)),
        Cover::SU2 => {
            let image = so3_normalizer(&h.project().ok_or(Unsupported)?);
            let lift = |s: Sph| match s {
                Identity => Identity,
                other => other.preimage(),
            };
            let normalizer = image.normalizer.preimage();
            let identity_component = lift(image.identity_component);
            let quotient = match h {
                Identity => GroupSpec::SU2,
                Cyclic(a, _) if divides(a, 2).holds() => GroupSpec::SO3,
                Cyclic(a, _) => match a.is_even() {
                    Truth::Always => GroupSpec::O2,
                    Truth::Never => GroupSpec::Pin2InSU2,
                    Truth::Sometimes => return Err(Unsupported),
                },
                _ => image.quotient,
            };
            Ok(NormalizerData { normalizer, identity_component, quotient })
        }
    }
}

/// Largest subgroup of `h` normal in the whole group.
pub fn normal_core(cover: Cover, h: &Sph) -> Result<Sph, Unsupported> {
    if *h == Whole {
        return Ok(Whole);
    }
    match cover {
        Cover::SO3 => Ok(Identity),
        Cover::SU2 => match h.contains_minus_one() {
            Truth::Always => Ok(Cyclic(c(2), Axis::I)),
            Truth::Never => Ok(Identity),
            Truth::Sometimes => Err(Unsupported),
        },
    }
}

/// Unit quaternion of the half turn about `u`.
pub fn half_turn(u: Axis) -> Quat {
    Quaternion::unit(u)
}

/// Unit quaternion `(1 + i + j + k) / 2`, covering the rotation of order 3
/// permuting the coordinate axes cyclically.
pub fn axis_cycle() -> Quat {
    Quaternion::from_f64(0.5, 0.5, 0.5, 0.5)
}

/// One witness per component of `N(h) / h`.
pub fn component_witnesses(cover: Cover, h: &Sph) -> Result<Vec<ConjugationWitness>, Unsupported> {
    let h = match (cover, h) {
        // The normalizer of Z_n is O(2) (Pin(2)) only once Z_n is not central.
        (Cover::SO3, Cyclic(a, _)) if a.concrete().is_none() && a.min_value() < 2 => return Err(Unsupported),
        (Cover::SU2, Cyclic(a, _)) if a.concrete().is_none() && a.min_value() < 3 => return Err(Unsupported),
        (Cover::SU2, Cyclic(a, u)) if a.concrete().is_none() => Cyclic(a.clone(), *u),
        (Cover::SO3, _) => h.clone(),
        (Cover::SU2, _) => h.project().ok_or(Unsupported)?,
    };
    let q = ConjugationWitness::Quaternion;
    let quarter = |u: Axis| q(Quaternion::rotation(u, FRAC_PI_2));
    let mut out = vec![ConjugationWitness::Identity];
    match &h {
        Cyclic(_, u) | Circle(u) => out.push(q(half_turn(u.next()))),
        Dihedral(m, u) => out.push(ConjugationWitness::AxisRotation { axis: *u, num: 1, den: m.scale(2) }),
        Klein => {
            out.extend(Axis::ALL.iter().map(|&u| quarter(u)));
            out.push(q(axis_cycle()));
            out.push(q(axis_cycle() * axis_cycle()));
        }
        Tetrahedral => out.push(quarter(Axis::K)),
        _ => {}
    }
    Ok(out)
}

fn axis_vector(u: Axis) -> [f64; 3] {
    match u {
        Axis::I => [1.0, 0.0, 0.0],
        Axis::J => [0.0, 1.0, 0.0],
        Axis::K => [0.0, 0.0, 1.0],
    }
}

fn component(v: [f64; 3], u: Axis) -> f64 {
    let e = axis_vector(u);
    v[0] * e[0] + v[1] * e[1] + v[2] * e[2]
}

/// Standard axis `u'` with `v = ±u'`.
fn standard_axis(v: [f64; 3]) -> Option<Axis> {
    Axis::ALL.into_iter().find(|&u| (component(v, u).abs() - 1.0).abs() < 1e-7)
}

/// Signed permutation of the axes induced by `q`, if any.
fn axis_permutation(q: &Quat) -> Option<[Axis; 3]> {
    let p = Axis::ALL.map(|u| standard_axis(q.rotate(axis_vector(u))));
    Some([p[0]?, p[1]?, p[2]?])
}

fn is_even_permutation(p: [Axis; 3]) -> bool {
    p[0].next() == p[1]
}

/// Conjugate `h` by the rotation covered by `q`; `Err` when the image is not
/// in standard position.
fn conjugate_by_quaternion(h: &Sph, q: &Quat) -> Result<Sph, Unsupported> {
    let moved = |u: Axis| standard_axis(q.rotate(axis_vector(u))).ok_or(Unsupported);
    Ok(match h {
        Identity | Whole => h.clone(),
        Cyclic(a, u) => Cyclic(a.clone(), moved(*u)?),
        Circle(u) => Circle(moved(*u)?),
        CircleNormalizer(u) => CircleNormalizer(moved(*u)?),
        // Signed axis permutations make up O, which normalizes D_2 and T.
        Klein | Tetrahedral | Octahedral => {
            axis_permutation(q).ok_or(Unsupported)?;
            h.clone()
        }
        Icosahedral => {
            if !is_even_permutation(axis_permutation(q).ok_or(Unsupported)?) {
                return Err(Unsupported);
            }
            h.clone()
        }
        Dihedral(m, u) => {
            let main = moved(*u)?;
            let flip = q.rotate(axis_vector(u.next()));
            let angle = component(flip, prev(main)).atan2(component(flip, main.next()));
            // Flip axes of the standard D_m sit at multiples of pi/m from main.next().
            let ok = match m.concrete() {
                Some(m) => is_integer(angle * m as f64 / PI),
                None => {
                    let quarters = angle * 2.0 / PI;
                    is_integer(quarters) && ((quarters.round() as i64) % 2 == 0 || c(2).divides(m).holds())
                }
            };
            if !ok {
                return Err(Unsupported);
            }
            Dihedral(m.clone(), main)
        }
    })
}

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() < 1e-7
}

pub fn conjugate(h: &Sph, w: &ConjugationWitness) -> Result<Sph, Unsupported> {
    match w {
        ConjugationWitness::Identity | ConjugationWitness::Central => Ok(h.clone()),
        ConjugationWitness::Quaternion(q) => conjugate_by_quaternion(h, q),
        ConjugationWitness::AxisRotation { axis, num, den } => {
            if let Some(d) = den.concrete() {
                let q = Quaternion::rotation(*axis, 2.0 * PI * *num as f64 / d as f64);
                return conjugate_by_quaternion(h, &q);
            }
            match h {
                Identity | Whole => Ok(h.clone()),
                Cyclic(_, u) | Circle(u) | CircleNormalizer(u) if u == axis => Ok(h.clone()),
                Dihedral(m, u) if u == axis && m.scale(2 * num).ratio(den).is_some() => Ok(h.clone()),
                _ => Err(Unsupported),
            }
        }
    }
}

/// `GroupSpec` of a subgroup.
pub fn group_spec(cover: Cover, h: &Sph) -> GroupSpec {
    match (cover, h) {
        (_, Identity) => GroupSpec::Trivial,
        (_, Cyclic(a, _)) => GroupSpec::Cyclic(a.clone()),
        (Cover::SO3, Dihedral(m, _)) => GroupSpec::Dihedral(m.clone()),
        (Cover::SU2, Dihedral(m, _)) => GroupSpec::BinaryDihedral(m.clone()),
        (Cover::SO3, Klein) => GroupSpec::Dihedral(c(2)),
        (Cover::SU2, Klein) => GroupSpec::Quaternion8,
        (Cover::SO3, Tetrahedral) => GroupSpec::Tetrahedral,
        (Cover::SO3, Octahedral) => GroupSpec::Octahedral,
        (Cover::SO3, Icosahedral) => GroupSpec::Icosahedral,
        (Cover::SU2, Tetrahedral) => GroupSpec::BinaryTetrahedral,
        (Cover::SU2, Octahedral) => GroupSpec::BinaryOctahedral,
        (Cover::SU2, Icosahedral) => GroupSpec::BinaryIcosahedral,
        (_, Circle(_)) => GroupSpec::Circle,
        (Cover::SO3, CircleNormalizer(_)) => GroupSpec::O2,
        (Cover::SU2, CircleNormalizer(_)) => GroupSpec::Pin2InSU2,
        (Cover::SO3, Whole) => GroupSpec::SO3,
        (Cover::SU2, Whole) => GroupSpec::SU2,
    }
}

/// Inverse of [`group_spec`], with the axis taken from the embedding.
pub fn from_spec(cover: Cover, g: &GroupSpec, axis: Option<Axis>) -> Result<Sph, CatalogError> {
    let ax = || axis.ok_or_else(|| CatalogError::NotInCatalog(format!("{g} needs an axis")));
    let s = match (cover, g) {
        (_, GroupSpec::Trivial) => Identity,
        (_, GroupSpec::Cyclic(a)) => Cyclic(a.clone(), ax()?),
        (Cover::SO3, GroupSpec::Dihedral(m)) if m.concrete() == Some(2) => Klein,
        (Cover::SO3, GroupSpec::Dihedral(m)) => Dihedral(m.clone(), ax()?),
        (Cover::SU2, GroupSpec::BinaryDihedral(m)) if m.concrete() == Some(2) => Klein,
        (Cover::SU2, GroupSpec::BinaryDihedral(m)) => Dihedral(m.clone(), ax()?),
        (Cover::SU2, GroupSpec::Quaternion8) => Klein,
        (Cover::SO3, GroupSpec::Tetrahedral) | (Cover::SU2, GroupSpec::BinaryTetrahedral) => Tetrahedral,
        (Cover::SO3, GroupSpec::Octahedral) | (Cover::SU2, GroupSpec::BinaryOctahedral) => Octahedral,
        (Cover::SO3, GroupSpec::Icosahedral) | (Cover::SU2, GroupSpec::BinaryIcosahedral) => Icosahedral,
        (_, GroupSpec::Circle) => Circle(ax()?),
        (Cover::SO3, GroupSpec::O2) | (Cover::SU2, GroupSpec::Pin2InSU2) => CircleNormalizer(ax()?),
        (Cover::SO3, GroupSpec::SO3) | (Cover::SU2, GroupSpec::SU2) => Whole,
        _ => {
            let parent = if cover == Cover::SO3 { "SO(3)" } else { "SU(2)" };
            return Err(CatalogError::NotInCatalog(format!("{g} in {parent}")));
        }
    };
    Ok(s.canonical(cover))
}

/// Every subgroup in standard position with finite parameters `<= bound`.
pub fn finite_catalog(cover: Cover, bound: u64) -> Vec<Sph> {
    let mut out = vec![Identity, Klein, Tetrahedral, Octahedral, Icosahedral];
    for u in Axis::ALL {
        for n in 2..=bound {
            out.push(Cyclic(c(n), u).canonical(cover));
            if n >= 3 {
                out.push(Dihedral(c(n), u));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_and_half_turn_give_dihedral() {
        let g = generate(Cover::SO3, &Cyclic(c(5), Axis::K), &Cyclic(c(2), Axis::I)).unwrap();
        assert_eq!(g, Dihedral(c(5), Axis::K));
    }

    #[test]
    fn perpendicular_quarter_turns_give_octahedral() {
        let g = generate(Cover::SO3, &Cyclic(c(4), Axis::K), &Cyclic(c(4), Axis::I)).unwrap();
        assert_eq!(g, Octahedral);
    }

    #[test]
    fn su2_containment_of_order_four() {
        let i4 = Cyclic(c(4), Axis::I);
        assert!(contains(Cover::SU2, &CircleNormalizer(Axis::J), &i4).holds());
        assert!(!contains(Cover::SU2, &Circle(Axis::J), &i4).holds());
        assert!(contains(Cover::SU2, &Klein, &i4).holds());
    }

    #[test]
    fn normalizers_of_small_groups() {
        let n = normalizer(Cover::SO3, &Klein).unwrap();
        assert_eq!(n.normalizer, Octahedral);
        assert_eq!(n.quotient, GroupSpec::Dihedral(c(3)));
        let n = normalizer(Cover::SU2, &Cyclic(c(3), Axis::I)).unwrap();
        assert_eq!(n.normalizer, CircleNormalizer(Axis::I));
        assert_eq!(n.quotient, GroupSpec::Pin2InSU2);
    }

    #[test]
    fn conjugating_cyclic_moves_axis() {
        let q = Quaternion::rotation(Axis::K, FRAC_PI_2);
        let h = conjugate(&Cyclic(c(3), Axis::I), &ConjugationWitness::Quaternion(q)).unwrap();
        assert_eq!(h, Cyclic(c(3), Axis::J));
        let d3 = conjugate(&Dihedral(c(3), Axis::K), &ConjugationWitness::Quaternion(q));
        assert!(d3.is_err());
        let d4 = conjugate(&Dihedral(c(4), Axis::K), &ConjugationWitness::Quaternion(q)).unwrap();
        assert_eq!(d4, Dihedral(c(4), Axis::K));
    }
}
