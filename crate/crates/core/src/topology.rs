//! Joins and suspensions, spaces of directions at singular orbits, and the
//! structural realization of a diagram.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::spherical::Sph;
use crate::catalog::{component_witnesses, factor_intersection, normalizer, EmbeddedSubgroup, GroupSpec, Sub};
use crate::diagram::{equivalent, is_primitive, validate, DiagramError, GroupDiagram, OrbitSpace, Result};
use crate::quotients::{identify_quotient, identify_subquotient, HomogeneousSpace, SpaceName};
use crate::symint::{SymInt, Truth};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JoinSpace {
    /// `S^d`; `d = -1` is the empty set.
    SphereJ(i64),
    NamedJ(HomogeneousSpace),
    Join(Box<JoinSpace>, Box<JoinSpace>),
}

impl JoinSpace {
    pub fn empty() -> Self {
        JoinSpace::SphereJ(-1)
    }

    pub fn named(space: HomogeneousSpace) -> Self {
        if space.is_sphere {
            JoinSpace::SphereJ(space.dim as i64)
        } else {
            JoinSpace::NamedJ(space)
        }
    }

    pub fn suspension(y: JoinSpace) -> Self {
        join(&JoinSpace::SphereJ(0), &y)
    }

    pub fn dim(&self) -> i64 {
        match self {
            JoinSpace::SphereJ(d) => *d,
            JoinSpace::NamedJ(s) => s.dim as i64,
            JoinSpace::Join(a, b) => a.dim() + b.dim() + 1,
        }
    }

    /// Total sphere factor and the non-sphere factors.
    fn factors(&self) -> (i64, Vec<HomogeneousSpace>) {
        match self {
            JoinSpace::SphereJ(d) => (*d, Vec::new()),
            JoinSpace::NamedJ(s) if s.is_sphere => (s.dim as i64, Vec::new()),
            JoinSpace::NamedJ(s) => (-1, vec![s.clone()]),
            JoinSpace::Join(a, b) => {
                let (da, mut fa) = a.factors();
                let (db, fb) = b.factors();
                fa.extend(fb);
                (da + db + 1, fa)
            }
        }
    }

    /// Sphere factors merged and the remaining factors sorted.
    pub fn normal_form(&self) -> JoinSpace {
        let (d, mut named) = self.factors();
        named.sort_by_key(|s| (s.dim, s.plain_name()));
        let mut out = JoinSpace::SphereJ(d);
        for s in named {
            out = match out {
                JoinSpace::SphereJ(-1) => JoinSpace::NamedJ(s),
                other => JoinSpace::Join(Box::new(other), Box::new(JoinSpace::NamedJ(s))),
            };
        }
        out
    }

    pub fn is_sphere(&self) -> bool {
        matches!(self.normal_form(), JoinSpace::SphereJ(_))
    }

    /// Name with the positively curved fiber reduced to its family, as in
    /// the lists of possible spaces of directions (`S^3/Γ` for every
    /// three-dimensional space form).
    pub fn class_label(&self) -> String {
        let (d, named) = self.normal_form().factors();
        let names: Vec<String> = named.iter().map(family_label).collect();
        render_join(d, &names)
    }
}

fn family_label(s: &HomogeneousSpace) -> String {
    match &s.name {
        SpaceName::Lens(..) | SpaceName::SphericalSpaceForm3(_) => "S^3/Γ".to_string(),
        SpaceName::RealProjective(3) => "S^3/Γ".to_string(),
        SpaceName::SphericalSpaceForm5(_) => "S^5/Γ".to_string(),
        _ => s.plain_name(),
    }
}

fn render_join(d: i64, names: &[String]) -> String {
    if names.is_empty() {
        return if d < 0 { "∅".to_string() } else { format!("S^{d}") };
    }
    let rest = names.join("*");
    match d {
        -1 => rest,
        0 => format!("Σ({rest})"),
        d => format!("S^{d}*{rest}"),
    }
}

impl fmt::Display for JoinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (d, named) = self.normal_form().factors();
        let names: Vec<String> = named.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", render_join(d, &names))
    }
}

pub fn join(a: &JoinSpace, b: &JoinSpace) -> JoinSpace {
    JoinSpace::Join(Box::new(a.clone()), Box::new(b.clone())).normal_form()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Minus,
    Plus,
}

/// `S^{dim G/K - 1} * K/H` at the singular orbit on `side`.
pub fn space_of_directions(d: &GroupDiagram, side: Side) -> Result<JoinSpace> {
    let (km, kp) = d.singular()?;
    let k = match side {
        Side::Minus => km,
        Side::Plus => kp,
    };
    let fiber = identify_subquotient(k, &d.h)?;
    let orbit = d.g.dimension() as i64 - k.dim() as i64;
    Ok(join(&JoinSpace::SphereJ(orbit - 1), &JoinSpace::named(fiber)))
}

pub fn is_manifold(d: &GroupDiagram) -> Result<bool> {
    if !d.is_interval() {
        return Ok(true);
    }
    let n = d.space_dimension() as i64;
    for side in [Side::Minus, Side::Plus] {
        if space_of_directions(d, side)?.normal_form() != JoinSpace::SphereJ(n - 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Positively curved homogeneous spaces up to dimension 5, one per family.
pub fn fiber_catalog() -> Vec<HomogeneousSpace> {
    let mut out: Vec<HomogeneousSpace> = (0..=5).map(HomogeneousSpace::sphere).collect();
    out.extend((2..=5).map(HomogeneousSpace::real_projective));
    out.push(HomogeneousSpace::complex_projective_plane());
    out.push(HomogeneousSpace::lens(SymInt::Concrete(3), SymInt::Concrete(1)));
    out.push(HomogeneousSpace::space_form3(GroupSpec::BinaryTetrahedral));
    let five = HomogeneousSpace::lens(SymInt::Concrete(3), SymInt::Concrete(1));
    out.push(HomogeneousSpace {
        name: SpaceName::SphericalSpaceForm5(GroupSpec::Cyclic(SymInt::Concrete(3))),
        dim: 5,
        ..five
    });
    out
}

/// Possible spaces of directions at a singular orbit of a `k`-dimensional space,
/// as family labels.
pub fn directions_catalog(k: usize) -> BTreeSet<String> {
    let k = k as i64;
    fiber_catalog()
        .into_iter()
        .filter(|f| (f.dim as i64) < k)
        .map(|f| join(&JoinSpace::SphereJ(k - 2 - f.dim as i64), &JoinSpace::named(f)).class_label())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Half {
    /// `K/H`.
    pub fiber: HomogeneousSpace,
    /// `G/K`.
    pub base: HomogeneousSpace,
}

impl Half {
    pub fn is_disc(&self) -> bool {
        self.fiber.is_sphere
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.is_disc(), self.base.is_point()) {
            (true, true) => write!(f, "D^{}", self.fiber.dim + 1),
            (true, false) => write!(f, "D({})", self.base),
            (false, true) => write!(f, "C({})", self.fiber),
            (false, false) => write!(f, "C({})[{}]", self.fiber, self.base),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SpaceDescription {
    Suspension(HomogeneousSpace),
    ConeBundleUnion { minus: Half, plus: Half, glue: HomogeneousSpace },
    BundleOverCircle { fiber: HomogeneousSpace, structure: GroupSpec, trivial: Option<bool>, components: usize },
    Product(Vec<SpaceDescription>),
    Homogeneous(HomogeneousSpace),
    Named { label: String, notes: Vec<String>, structure: Box<SpaceDescription> },
    Fibration { base: HomogeneousSpace, fiber: Box<SpaceDescription>, trivial: bool },
}

impl SpaceDescription {
    pub fn is_manifold(&self) -> bool {
        match self {
            SpaceDescription::Suspension(s) => s.is_sphere,
            SpaceDescription::ConeBundleUnion { minus, plus, .. } => minus.is_disc() && plus.is_disc(),
            SpaceDescription::BundleOverCircle { .. } | SpaceDescription::Homogeneous(_) => true,
            SpaceDescription::Product(list) => list.iter().all(|s| s.is_manifold()),
            SpaceDescription::Named { structure, .. } => structure.is_manifold(),
            SpaceDescription::Fibration { fiber, .. } => fiber.is_manifold(),
        }
    }

    /// Description without the table label.
    pub fn structure(&self) -> &SpaceDescription {
        match self {
            SpaceDescription::Named { structure, .. } => structure.structure(),
            other => other,
        }
    }

    pub fn notes(&self) -> &[String] {
        match self {
            SpaceDescription::Named { notes, .. } => notes,
            _ => &[],
        }
    }
}

impl fmt::Display for SpaceDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescription::Suspension(s) => write!(f, "Σ({s})"),
            SpaceDescription::ConeBundleUnion { minus, plus, glue } => write!(f, "{minus} ∪_{{{glue}}} {plus}"),
            SpaceDescription::BundleOverCircle { fiber, trivial: Some(true), .. } => write!(f, "{fiber} x S^1"),
            SpaceDescription::BundleOverCircle { fiber, structure, components, .. } => {
                write!(f, "{fiber}-bundle over S^1 (structure group {structure}, {components} components)")
            }
            SpaceDescription::Product(list) => {
                let parts: Vec<String> = list.iter().map(|s| s.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
            SpaceDescription::Homogeneous(s) => write!(f, "{s}"),
            SpaceDescription::Named { label, .. } => write!(f, "{label}"),
            SpaceDescription::Fibration { base, fiber, trivial: true } => write!(f, "{fiber} x {base}"),
            SpaceDescription::Fibration { base, fiber, trivial: false } => write!(f, "{fiber}-bundle over {base}"),
        }
    }
}

/// The subdiagram `(K, H, K-, K+)` when `K = SO(3) × 1` inside `SO(3) × S^1`.
fn sub_diagram(d: &GroupDiagram, k: &EmbeddedSubgroup) -> Option<GroupDiagram> {
    if k.view().ok()? != Sub::Prod(Sph::Whole, crate::catalog::TorusSubgroup::trivial(1)) {
        return None;
    }
    let f = |s: &EmbeddedSubgroup| factor_intersection(s).ok().map(|(a, _)| EmbeddedSubgroup::so3(a));
    let (km, kp) = d.singular().ok()?;
    Some(GroupDiagram::new(GroupSpec::SO3, f(&d.h)?, f(km)?, f(kp)?))
}

fn structural(d: &GroupDiagram) -> Result<SpaceDescription> {
    let glue = identify_quotient(&d.g, &d.h)?;
    let Ok((km, kp)) = d.singular() else {
        let (Ok(comps), Ok(n)) = (component_witnesses(&d.h).map(|w| w.len()), normalizer(&d.h)) else {
            // Families whose normalizer changes with the parameter.
            return Ok(SpaceDescription::Fibration {
                base: HomogeneousSpace::sphere(1),
                fiber: Box::new(SpaceDescription::Homogeneous(glue)),
                trivial: false,
            });
        };
        let structure = n.quotient;
        return Ok(SpaceDescription::BundleOverCircle {
            fiber: glue,
            structure,
            trivial: if comps == 1 { Some(true) } else { None },
            components: comps,
        });
    };
    let whole = EmbeddedSubgroup::whole(&d.g)?;
    if *km == whole && *kp == whole {
        return Ok(SpaceDescription::Suspension(glue));
    }
    // A fiber bundle over G/K when K contains the other singular isotropy group.
    for (small, big) in [(km, kp), (kp, km)] {
        if crate::catalog::contains_truth(small, big)? == Truth::Always {
            if let Some(sub) = sub_diagram(d, big) {
                let base = identify_quotient(&d.g, big)?;
                return Ok(SpaceDescription::Fibration { base, fiber: Box::new(structural(&sub)?), trivial: true });
            }
        }
    }
    let half = |k: &EmbeddedSubgroup| -> Result<Half> {
        Ok(Half { fiber: identify_subquotient(k, &d.h)?, base: identify_quotient(&d.g, k)? })
    };
    let (mut minus, mut plus) = (half(km)?, half(kp)?);
    if minus.is_disc() && !plus.is_disc() {
        std::mem::swap(&mut minus, &mut plus);
    }
    Ok(SpaceDescription::ConeBundleUnion { minus, plus, glue })
}

/// A row of the classification tables with the label the tables print.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub diagram: GroupDiagram,
    pub label: Option<&'static str>,
    pub note: Option<&'static str>,
}

fn table_rows() -> &'static [TableRow] {
    use std::sync::OnceLock;
    static CELL: OnceLock<Vec<TableRow>> = OnceLock::new();
    CELL.get_or_init(|| {
        use crate::scalar::Axis;
        let su2 = EmbeddedSubgroup::su2;
        let so3 = EmbeddedSubgroup::so3;
        let four = SymInt::Concrete(4);
        vec![
            TableRow {
                diagram: GroupDiagram::new(
                    GroupSpec::SU2,
                    su2(Sph::Cyclic(four, Axis::I)),
                    su2(Sph::Whole),
                    su2(Sph::CircleNormalizer(Axis::J)),
                ),
                label: Some("C(SU(2)/<i>) ∪_{SU(2)/<i>} D(S^2)"),
                note: Some("the table prints the base as S^2; SU(2)/Pin(2) = RP^2"),
            },
            TableRow {
                diagram: GroupDiagram::new(
                    GroupSpec::SO3,
                    so3(Sph::Cyclic(SymInt::n(1, &crate::symint::Param::new('n', 1)), Axis::K)),
                    so3(Sph::Whole),
                    so3(Sph::Cyclic(SymInt::n(2, &crate::symint::Param::new('n', 1)), Axis::K)),
                ),
                label: None,
                note: Some("the table prints the disc bundle base as SO(3)/Z_n; the isotropy group is Z_{2n}"),
            },
        ]
    })
}

fn matches_row(d: &GroupDiagram, row: &GroupDiagram) -> bool {
    if d.g != row.g {
        return false;
    }
    match (row.parameter(), d.parameter()) {
        (None, _) => return equivalent(d, row),
        // Families agree when their generic members do.
        (Some(_), Some(_)) => {
            return (3..=6).all(|n| match (d.instantiate(n), row.instantiate(n)) {
                (Ok(a), Ok(b)) => equivalent(&a, &b),
                _ => false,
            })
        }
        (Some(_), None) => {}
    }
    let specs = |x: &GroupDiagram| {
        let mut v: Vec<String> = x.subgroups().iter().map(|s| s.group.to_string()).collect();
        v[1..].sort();
        v
    };
    let target = specs(d);
    (1..=64).any(|n| row.instantiate(n).is_ok_and(|r| specs(&r) == target && equivalent(d, &r)))
}

/// Structural description, upgraded to the table label for table rows that
/// need one.
pub fn realize(d: &GroupDiagram) -> Result<SpaceDescription> {
    let report = validate(d);
    if !report.accepted {
        return Err(DiagramError::NotApplicable(format!("invalid diagram: {}", report.reasons().join("; "))));
    }
    let structure = structural(d)?;
    for row in table_rows() {
        if matches_row(d, &row.diagram) {
            let label = row.label.map(str::to_string).unwrap_or_else(|| structure.to_string());
            return Ok(SpaceDescription::Named {
                label,
                notes: row.note.map(|n| vec![n.to_string()]).unwrap_or_default(),
                structure: Box::new(structure),
            });
        }
    }
    Ok(structure)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixedSetShape {
    IntervalShape,
    CircleShape,
    Empty,
}

/// Whether a conjugate of the circle `s` lies in `k`.
fn circle_conjugate_into(s: &EmbeddedSubgroup, k: &EmbeddedSubgroup) -> Result<bool> {
    Ok(match (s.view()?, k.view()?) {
        (Sub::Torus(a), Sub::Torus(b)) => b.contains(&a),
        (Sub::Sph(..), Sub::Sph(_, b)) => !b.is_finite(),
        (Sub::Prod(a, x), Sub::Prod(b, y)) => (!b.is_finite() || a.is_finite()) && y.contains(&x),
        _ => crate::catalog::contains_truth(s, k)? == Truth::Always,
    })
}

/// Shape of the fixed point set of the circle `s` in a three-dimensional space.
pub fn fixed_set_shape(d: &GroupDiagram, s: &EmbeddedSubgroup) -> Result<FixedSetShape> {
    if d.space_dimension() != 3 {
        return Err(DiagramError::NotApplicable("fixed point sets are described in dimension 3".into()));
    }
    let (km, kp) = d.singular()?;
    let principal = circle_conjugate_into(s, &d.h)?;
    if !principal && !circle_conjugate_into(s, km)? && !circle_conjugate_into(s, kp)? {
        return Ok(FixedSetShape::Empty);
    }
    let whole = EmbeddedSubgroup::whole(&d.g)?;
    let singular_endpoints = *km == whole
        && *kp == whole
        && [crate::topology::Side::Minus, Side::Plus]
            .iter()
            .all(|&side| space_of_directions(d, side).is_ok_and(|j| !j.is_sphere()));
    Ok(if principal && singular_endpoints { FixedSetShape::IntervalShape } else { FixedSetShape::CircleShape })
}

/// Whether the action is non-primitive, with the intermediate group.
pub fn intermediate_group(d: &GroupDiagram) -> Option<EmbeddedSubgroup> {
    is_primitive(d).ok().and_then(|p| p.witness)
}

/// `true` for circle orbit spaces.
pub fn over_circle(d: &GroupDiagram) -> bool {
    matches!(d.orbit_space, OrbitSpace::Circle { .. })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::TorusSubgroup;
    use crate::scalar::Axis;

    fn rp2() -> JoinSpace {
        JoinSpace::named(HomogeneousSpace::real_projective(2))
    }

    #[test]
    fn sphere_joins() {
        assert_eq!(join(&JoinSpace::SphereJ(0), &JoinSpace::SphereJ(1)), JoinSpace::SphereJ(2));
        assert_eq!(join(&JoinSpace::empty(), &rp2()), rp2());
        let twice = JoinSpace::suspension(JoinSpace::suspension(rp2()));
        assert_eq!(join(&JoinSpace::SphereJ(1), &rp2()), twice);
        assert_eq!(twice.to_string(), "S^1*RP^2");
    }

    #[test]
    fn directions_lists() {
        let set = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(directions_catalog(3), set(&["S^2", "RP^2"]));
        assert_eq!(directions_catalog(4), set(&["S^3", "S^3/Γ", "Σ(RP^2)"]));
        assert_eq!(directions_catalog(5), set(&["S^4", "RP^4", "CP^2", "Σ(S^3/Γ)", "S^1*RP^2"]));
        assert_eq!(
            directions_catalog(6),
            set(&["S^5", "RP^5", "S^5/Γ", "Σ(RP^4)", "Σ(CP^2)", "S^1*S^3/Γ", "S^2*RP^2"])
        );
    }

    fn so3(s: Sph) -> EmbeddedSubgroup {
        EmbeddedSubgroup::so3(s)
    }

    #[test]
    fn suspension_of_rp2() {
        let d = GroupDiagram::new(GroupSpec::SO3, so3(Sph::CircleNormalizer(Axis::K)), so3(Sph::Whole), so3(Sph::Whole));
        assert_eq!(space_of_directions(&d, Side::Minus).unwrap().to_string(), "RP^2");
        assert!(!is_manifold(&d).unwrap());
        assert_eq!(realize(&d).unwrap().to_string(), "Σ(RP^2)");
        let circle = so3(Sph::Circle(Axis::K));
        assert_eq!(fixed_set_shape(&d, &circle).unwrap(), FixedSetShape::IntervalShape);
    }

    #[test]
    fn torus_directions() {
        let e = EmbeddedSubgroup::trivial(&GroupSpec::Torus(2)).unwrap();
        let c = |v: &[i64]| EmbeddedSubgroup::torus(TorusSubgroup::circle(v));
        let d = GroupDiagram::new(GroupSpec::Torus(2), e.clone(), c(&[1, 0]), c(&[0, 1]));
        assert_eq!(space_of_directions(&d, Side::Minus).unwrap(), JoinSpace::SphereJ(2));
        assert!(is_manifold(&d).unwrap());
        let same = GroupDiagram::new(GroupSpec::Torus(2), e, c(&[1, 0]), c(&[1, 0]));
        assert_eq!(fixed_set_shape(&same, &c(&[1, 0])).unwrap(), FixedSetShape::CircleShape);
        assert_eq!(fixed_set_shape(&same, &c(&[0, 1])).unwrap(), FixedSetShape::Empty);
    }

    #[test]
    fn product_rows() {
        let g = GroupSpec::so3_times_circle();
        let o2 = EmbeddedSubgroup::so3_circle(Sph::CircleNormalizer(Axis::K), TorusSubgroup::trivial(1));
        let so3x1 = EmbeddedSubgroup::so3_circle(Sph::Whole, TorusSubgroup::trivial(1));
        let d = GroupDiagram::new(g.clone(), o2.clone(), so3x1.clone(), so3x1.clone());
        assert_eq!(realize(&d).unwrap().to_string(), "Σ(RP^2) x S^1");
        let z2 = EmbeddedSubgroup::so3_circle(Sph::CircleNormalizer(Axis::K), TorusSubgroup::cyclic(&[1], 2));
        let d = GroupDiagram::new(g.clone(), o2.clone(), so3x1.clone(), z2);
        assert_eq!(realize(&d).unwrap().to_string(), "C(RP^2)[S^1] ∪_{RP^2 x S^1} D(RP^2 x S^1)");
        let full = EmbeddedSubgroup::so3_circle(Sph::CircleNormalizer(Axis::K), TorusSubgroup::full(1));
        let d = GroupDiagram::new(g, o2, so3x1, full);
        assert_eq!(realize(&d).unwrap().to_string(), "C(RP^2)[S^1] ∪_{RP^2 x S^1} D(RP^2)");
    }

    #[test]
    fn so4_suspension() {
        let w = EmbeddedSubgroup::so4(crate::catalog::So4Sub::Whole);
        let d = GroupDiagram::new(GroupSpec::SO4, EmbeddedSubgroup::so4(crate::catalog::So4Sub::O3), w.clone(), w);
        assert_eq!(realize(&d).unwrap().to_string(), "Σ(RP^3)");
    }

    #[test]
    fn free_torus_bundle_is_trivial() {
        let g = GroupSpec::Torus(3);
        let d = GroupDiagram::over_circle(g.clone(), EmbeddedSubgroup::trivial(&g).unwrap(), 0);
        assert_eq!(realize(&d).unwrap().to_string(), "T^3 x S^1");
    }
}
