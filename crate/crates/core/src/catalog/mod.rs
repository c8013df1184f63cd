//! Closed catalog of compact Lie groups and their embedded subgroups.
//!
//! Parents are tori, `SU(2)`, `SO(3)`, `SO(3)×S^1` and `SO(4)`. Each embedded
//! subgroup is kept in a canonical form so that structural equality decides
//! equality of subgroups.

pub mod oracle;
pub mod spherical;
pub mod torus;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Axis;
use crate::symint::{SymInt, Truth};
use crate::Quat;
use spherical::{Cover, Sph};
pub use torus::TorusSubgroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupSpec {
    Trivial,
    Cyclic(SymInt),
    Dihedral(SymInt),
    BinaryDihedral(SymInt),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
    Quaternion8,
    Circle,
    O2,
    Pin2InSU2,
    Torus(usize),
    SU2,
    SO3,
    SO4,
    O3,
    ProductOfCatalogGroups(Vec<GroupSpec>),
    /// Identity component `base` extended by a finite group.
    FiniteExtensionProduct(Box<GroupSpec>, Box<GroupSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(SymInt),
    Infinite,
}

fn sub_index(s: &SymInt) -> String {
    let t = s.to_string();
    if t.chars().count() == 1 {
        format!("_{t}")
    } else {
        format!("_{{{t}}}")
    }
}

impl GroupSpec {
    pub fn so3_times_circle() -> GroupSpec {
        GroupSpec::ProductOfCatalogGroups(vec![GroupSpec::SO3, GroupSpec::Circle])
    }

    pub fn dimension(&self) -> usize {
        use GroupSpec::*;
        match self {
            Circle | O2 | Pin2InSU2 => 1,
            Torus(k) => *k,
            SU2 | SO3 | O3 => 3,
            SO4 => 6,
            ProductOfCatalogGroups(v) => v.iter().map(|g| g.dimension()).sum(),
            FiniteExtensionProduct(base, _) => base.dimension(),
            _ => 0,
        }
    }

    pub fn order(&self) -> Order {
        use GroupSpec::*;
        let c = |v: u64| Order::Finite(SymInt::Concrete(v));
        match self {
            Trivial => c(1),
            Cyclic(n) => Order::Finite(n.clone()),
            Dihedral(n) => Order::Finite(n.scale(2)),
            BinaryDihedral(n) => Order::Finite(n.scale(4)),
            Tetrahedral => c(12),
            Octahedral => c(24),
            Icosahedral => c(60),
            BinaryTetrahedral => c(24),
            BinaryOctahedral => c(48),
            BinaryIcosahedral => c(120),
            Quaternion8 => c(8),
            Torus(0) => c(1),
            ProductOfCatalogGroups(v) => {
                let mut total = 1;
                for g in v {
                    match g.order() {
                        Order::Finite(SymInt::Concrete(k)) => total *= k,
                        _ => return Order::Infinite,
                    }
                }
                c(total)
            }
            _ => Order::Infinite,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.dimension() == 0
    }

    /// Replace the family parameter by `value`.
    pub fn instantiate(&self, value: u64) -> GroupSpec {
        use GroupSpec::*;
        let f = |s: &SymInt| SymInt::Concrete(s.instantiate(value));
        match self {
            Cyclic(n) => Cyclic(f(n)),
            Dihedral(n) => Dihedral(f(n)),
            BinaryDihedral(n) => BinaryDihedral(f(n)),
            ProductOfCatalogGroups(v) => ProductOfCatalogGroups(v.iter().map(|g| g.instantiate(value)).collect()),
            FiniteExtensionProduct(a, b) => {
                FiniteExtensionProduct(Box::new(a.instantiate(value)), Box::new(b.instantiate(value)))
            }
            other => other.clone(),
        }
    }

    pub fn parameter(&self) -> Option<SymInt> {
        use GroupSpec::*;
        match self {
            Cyclic(n) | Dihedral(n) | BinaryDihedral(n) if n.param().is_some() => Some(n.clone()),
            ProductOfCatalogGroups(v) => v.iter().find_map(|g| g.parameter()),
            FiniteExtensionProduct(a, b) => a.parameter().or_else(|| b.parameter()),
            _ => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupSpec::*;
        match self {
            Trivial => write!(f, "1"),
            Cyclic(n) => write!(f, "Z{}", sub_index(n)),
            Dihedral(n) => write!(f, "D{}", sub_index(n)),
            BinaryDihedral(n) => write!(f, "D*{}", sub_index(n)),
            Tetrahedral => write!(f, "T"),
            Octahedral => write!(f, "O"),
            Icosahedral => write!(f, "I"),
            BinaryTetrahedral => write!(f, "T*"),
            BinaryOctahedral => write!(f, "O*"),
            BinaryIcosahedral => write!(f, "I*"),
            Quaternion8 => write!(f, "Q"),
            Circle | Torus(1) => write!(f, "S^1"),
            O2 => write!(f, "O(2)"),
            Pin2InSU2 => write!(f, "Pin(2)"),
            Torus(k) => write!(f, "T^{k}"),
            SU2 => write!(f, "SU(2)"),
            SO3 => write!(f, "SO(3)"),
            SO4 => write!(f, "SO(4)"),
            O3 => write!(f, "O(3)"),
            ProductOfCatalogGroups(v) => {
                let parts: Vec<String> = v.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
            FiniteExtensionProduct(a, b) => write!(f, "{a}.{b}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CatalogTag {
    Identity,
    Whole,
    /// Polyhedral groups, `D_2` and `Q` in their standard position.
    Standard,
    /// `SO(3)` or `O(3)` as the upper block of `SO(4)`.
    UpperBlock,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EmbeddingData {
    TorusSlope(TorusSubgroup),
    StandardAxis(Axis),
    /// `A × B` inside `SO(3) × S^1`.
    ComponentInclusion(Box<EmbeddedSubgroup>, Box<EmbeddedSubgroup>),
    /// Subgroup of the maximal torus `SO(2) × S^1` of `SO(3) × S^1` which is
    /// not a product, such as the graph of `SO(2) -> S^1`.
    DiagonalGraph(TorusSubgroup),
    CatalogTag(CatalogTag),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Embedding {
    pub parent: GroupSpec,
    pub data: EmbeddingData,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EmbeddedSubgroup {
    pub group: GroupSpec,
    pub embedding: Embedding,
}

/// Group element used to conjugate subgroups.
#[derive(Clone, Debug, PartialEq)]
pub enum ConjugationWitness {
    Identity,
    /// Unit quaternion acting on `SU(2)`, on `SO(3)` through the double cover,
    /// or on the `SO(3)` factor of a product.
    Quaternion(Quat),
    /// Rotation by `2π num / den` about a standard axis.
    AxisRotation { axis: Axis, num: u64, den: SymInt },
    /// A central element; conjugation is trivial.
    Central,
}

impl fmt::Display for ConjugationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjugationWitness::Identity => write!(f, "1"),
            ConjugationWitness::Quaternion(q) => write!(f, "({:.4}, {:.4}, {:.4}, {:.4})", q.w, q.x, q.y, q.z),
            ConjugationWitness::AxisRotation { axis, num, den } => {
                write!(f, "rot_{}(2pi*{num}/{den})", axis.spatial())
            }
            ConjugationWitness::Central => write!(f, "central"),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("subgroups have different parents: {0} and {1}")]
    ParentMismatch(String, String),
    #[error("the subgroup generated by {0} and {1} is outside the catalog")]
    Unrepresentable(String, String),
    #[error("cannot conjugate {0} by {1}")]
    UnsupportedWitness(String, String),
    #[error("oracle not applicable: {0}")]
    OracleNotApplicable(String),
    #[error("not in the catalog: {0}")]
    NotInCatalog(String),
    #[error("undecided for the whole family: {0}")]
    Undecided(String),
}

pub type Result<T> = std::result::Result<T, CatalogError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum So4Sub {
    Identity,
    /// `{±1}`, the center.
    Center,
    SO3,
    O3,
    Whole,
}

/// Parent groups with their own subgroup calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    Torus(usize),
    Sphere(Cover),
    SO3xS1,
    SO4,
}

pub fn ambient_of(parent: &GroupSpec) -> Result<Ambient> {
    Ok(match parent {
        GroupSpec::Circle => Ambient::Torus(1),
        GroupSpec::Torus(k) => Ambient::Torus(*k),
        GroupSpec::SU2 => Ambient::Sphere(Cover::SU2),
        GroupSpec::SO3 => Ambient::Sphere(Cover::SO3),
        GroupSpec::SO4 => Ambient::SO4,
        g if *g == GroupSpec::so3_times_circle() => Ambient::SO3xS1,
        g => return Err(CatalogError::NotInCatalog(format!("{g} as a parent group"))),
    })
}

/// Normalized view of an embedded subgroup, used by all operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sub {
    Torus(TorusSubgroup),
    Sph(Cover, Sph),
    /// `A × B` in `SO(3) × S^1`, `B` a subgroup of the circle.
    Prod(Sph, TorusSubgroup),
    /// Subgroup of `SO(2)_z × S^1` (coordinates: rotation about the z-axis, circle).
    Diag(TorusSubgroup),
    So4(So4Sub),
}

fn c(v: u64) -> SymInt {
    SymInt::Concrete(v)
}

/// Abstract group of a closed subgroup of a torus.
pub fn torus_group_spec(t: &TorusSubgroup) -> GroupSpec {
    let inv = t.component_invariants();
    let finite = match inv.len() {
        0 => GroupSpec::Trivial,
        1 => GroupSpec::Cyclic(c(inv[0] as u64)),
        _ => GroupSpec::ProductOfCatalogGroups(inv.iter().map(|&m| GroupSpec::Cyclic(c(m as u64))).collect()),
    };
    let base = match t.dim() {
        0 => return finite,
        1 => GroupSpec::Circle,
        d => GroupSpec::Torus(d),
    };
    if finite == GroupSpec::Trivial {
        base
    } else {
        GroupSpec::FiniteExtensionProduct(Box::new(base), Box::new(finite))
    }
}

/// Subgroup of `SO(2)` about the z-axis given as a subgroup of the circle.
fn sph_from_so2(t: &TorusSubgroup) -> Sph {
    if t.is_full() {
        Sph::Circle(Axis::K)
    } else {
        Sph::Cyclic(c(t.component_count()), Axis::K).canonical(Cover::SO3)
    }
}

/// Inverse of [`sph_from_so2`] for subgroups of `SO(2)` about the z-axis.
fn so2_part(s: &Sph) -> Option<TorusSubgroup> {
    match s {
        Sph::Identity => Some(TorusSubgroup::trivial(1)),
        Sph::Cyclic(a, Axis::K) => Some(TorusSubgroup::cyclic(&[1], a.concrete()? as i64)),
        Sph::Circle(Axis::K) => Some(TorusSubgroup::full(1)),
        _ => None,
    }
}

/// Reflection `θ -> -θ` of the rotation coordinate.
fn reflect(t: &TorusSubgroup) -> TorusSubgroup {
    let ann = t.annihilator().iter().map(|w| vec![-w[0], w[1]]).collect();
    TorusSubgroup::from_annihilator(2, ann)
}

fn product_group(a: GroupSpec, b: GroupSpec) -> GroupSpec {
    match (a, b) {
        (GroupSpec::Trivial, b) => b,
        (a, GroupSpec::Trivial) => a,
        (a, b) => GroupSpec::ProductOfCatalogGroups(vec![a, b]),
    }
}

fn so4_group(s: So4Sub) -> GroupSpec {
    match s {
        So4Sub::Identity => GroupSpec::Trivial,
        So4Sub::Center => GroupSpec::Cyclic(c(2)),
        So4Sub::SO3 => GroupSpec::SO3,
        So4Sub::O3 => GroupSpec::O3,
        So4Sub::Whole => GroupSpec::SO4,
    }
}

fn sph_data(s: &Sph) -> EmbeddingData {
    match s {
        Sph::Identity => EmbeddingData::CatalogTag(CatalogTag::Identity),
        Sph::Whole => EmbeddingData::CatalogTag(CatalogTag::Whole),
        other => match other.axis() {
            Some(u) => EmbeddingData::StandardAxis(u),
            None => EmbeddingData::CatalogTag(CatalogTag::Standard),
        },
    }
}

impl Sub {
    /// Canonical embedded subgroup of `parent` with this view.
    pub fn embed(self, parent: &GroupSpec) -> EmbeddedSubgroup {
        let (group, data) = match self {
            Sub::Torus(t) => (torus_group_spec(&t), EmbeddingData::TorusSlope(t)),
            Sub::Sph(cover, s) => {
                let s = s.canonical(cover);
                (spherical::group_spec(cover, &s), sph_data(&s))
            }
            Sub::Diag(t) => match t.split_product(1) {
                Some((a, b)) => return Sub::Prod(sph_from_so2(&a), b).embed(parent),
                None => (torus_group_spec(&t), EmbeddingData::DiagonalGraph(t)),
            },
            Sub::Prod(a, b) => {
                let a = a.canonical(Cover::SO3);
                if a == Sph::Identity && b.is_trivial() {
                    (GroupSpec::Trivial, EmbeddingData::CatalogTag(CatalogTag::Identity))
                } else if a == Sph::Whole && b.is_full() {
                    (parent.clone(), EmbeddingData::CatalogTag(CatalogTag::Whole))
                } else {
                    let left = Sub::Sph(Cover::SO3, a).embed(&GroupSpec::SO3);
                    let right = Sub::Torus(b).embed(&GroupSpec::Torus(1));
                    let group = product_group(left.group.clone(), right.group.clone());
                    (group, EmbeddingData::ComponentInclusion(Box::new(left), Box::new(right)))
                }
            }
            Sub::So4(s) => {
                let tag = match s {
                    So4Sub::Identity => CatalogTag::Identity,
                    So4Sub::Whole => CatalogTag::Whole,
                    So4Sub::Center => CatalogTag::Standard,
                    _ => CatalogTag::UpperBlock,
                };
                (so4_group(s), EmbeddingData::CatalogTag(tag))
            }
        };
        EmbeddedSubgroup { group, embedding: Embedding { parent: parent.clone(), data } }
    }
}

impl EmbeddedSubgroup {
    pub fn parent(&self) -> &GroupSpec {
        &self.embedding.parent
    }

    pub fn whole(parent: &GroupSpec) -> Result<Self> {
        let view = match ambient_of(parent)? {
            Ambient::Torus(k) => Sub::Torus(TorusSubgroup::full(k)),
            Ambient::Sphere(cover) => Sub::Sph(cover, Sph::Whole),
            Ambient::SO3xS1 => Sub::Prod(Sph::Whole, TorusSubgroup::full(1)),
            Ambient::SO4 => Sub::So4(So4Sub::Whole),
        };
        Ok(view.embed(parent))
    }

    pub fn trivial(parent: &GroupSpec) -> Result<Self> {
        let view = match ambient_of(parent)? {
            Ambient::Torus(k) => Sub::Torus(TorusSubgroup::trivial(k)),
            Ambient::Sphere(cover) => Sub::Sph(cover, Sph::Identity),
            Ambient::SO3xS1 => Sub::Prod(Sph::Identity, TorusSubgroup::trivial(1)),
            Ambient::SO4 => Sub::So4(So4Sub::Identity),
        };
        Ok(view.embed(parent))
    }

    pub fn torus(t: TorusSubgroup) -> Self {
        let k = t.ambient_rank();
        Sub::Torus(t).embed(&GroupSpec::Torus(k))
    }

    pub fn so3(s: Sph) -> Self {
        Sub::Sph(Cover::SO3, s).embed(&GroupSpec::SO3)
    }

    pub fn su2(s: Sph) -> Self {
        Sub::Sph(Cover::SU2, s).embed(&GroupSpec::SU2)
    }

    /// `A × B` in `SO(3) × S^1`.
    pub fn so3_circle(a: Sph, b: TorusSubgroup) -> Self {
        Sub::Prod(a, b).embed(&GroupSpec::so3_times_circle())
    }

    /// Subgroup of the maximal torus `SO(2) × S^1` of `SO(3) × S^1`.
    pub fn so3_circle_toral(t: TorusSubgroup) -> Self {
        Sub::Diag(t).embed(&GroupSpec::so3_times_circle())
    }

    pub fn so4(s: So4Sub) -> Self {
        Sub::So4(s).embed(&GroupSpec::SO4)
    }

    pub fn dim(&self) -> usize {
        self.group.dimension()
    }

    pub fn is_finite(&self) -> bool {
        self.dim() == 0
    }

    pub fn ambient(&self) -> Result<Ambient> {
        ambient_of(self.parent())
    }

    /// Normalized view used by the subgroup calculus.
    pub fn view(&self) -> Result<Sub> {
        let bad = || CatalogError::NotInCatalog(format!("{} in {}", self.group, self.parent()));
        let data = &self.embedding.data;
        Ok(match (self.ambient()?, data) {
            (Ambient::Torus(k), EmbeddingData::TorusSlope(t)) if t.ambient_rank() == k => Sub::Torus(t.clone()),
            (Ambient::Torus(k), EmbeddingData::CatalogTag(CatalogTag::Identity)) => Sub::Torus(TorusSubgroup::trivial(k)),
            (Ambient::Torus(k), EmbeddingData::CatalogTag(CatalogTag::Whole)) => Sub::Torus(TorusSubgroup::full(k)),
            (Ambient::Sphere(cover), EmbeddingData::CatalogTag(CatalogTag::Identity)) => Sub::Sph(cover, Sph::Identity),
            (Ambient::Sphere(cover), EmbeddingData::CatalogTag(CatalogTag::Whole)) => Sub::Sph(cover, Sph::Whole),
            (Ambient::Sphere(cover), EmbeddingData::StandardAxis(u)) => {
                Sub::Sph(cover, spherical::from_spec(cover, &self.group, Some(*u))?)
            }
            (Ambient::Sphere(cover), EmbeddingData::CatalogTag(CatalogTag::Standard)) => {
                Sub::Sph(cover, spherical::from_spec(cover, &self.group, None)?)
            }
            (Ambient::SO3xS1, EmbeddingData::CatalogTag(CatalogTag::Identity)) => {
                Sub::Prod(Sph::Identity, TorusSubgroup::trivial(1))
            }
            (Ambient::SO3xS1, EmbeddingData::CatalogTag(CatalogTag::Whole)) => Sub::Prod(Sph::Whole, TorusSubgroup::full(1)),
            (Ambient::SO3xS1, EmbeddingData::ComponentInclusion(a, b)) => match (a.view()?, b.view()?) {
                (Sub::Sph(Cover::SO3, x), Sub::Torus(y)) if y.ambient_rank() == 1 => Sub::Prod(x, y),
                _ => return Err(bad()),
            },
            (Ambient::SO3xS1, EmbeddingData::DiagonalGraph(t)) if t.ambient_rank() == 2 => Sub::Diag(t.clone()),
            (Ambient::SO4, EmbeddingData::CatalogTag(tag)) => Sub::So4(match (tag, &self.group) {
                (CatalogTag::Identity, _) => So4Sub::Identity,
                (CatalogTag::Whole, _) => So4Sub::Whole,
                (CatalogTag::Standard, GroupSpec::Cyclic(n)) if n.concrete() == Some(2) => So4Sub::Center,
                (CatalogTag::UpperBlock, GroupSpec::SO3) => So4Sub::SO3,
                (CatalogTag::UpperBlock, GroupSpec::O3) => So4Sub::O3,
                _ => return Err(bad()),
            }),
            _ => return Err(bad()),
        })
    }

    /// Re-embed in canonical form.
    pub fn canonical(&self) -> Result<Self> {
        Ok(self.view()?.embed(self.parent()))
    }

    /// Replace the family parameter by `value`.
    pub fn instantiate(&self, value: u64) -> Result<Self> {
        let f = |s: &Sph| match s {
            Sph::Cyclic(a, u) => Sph::Cyclic(c(a.instantiate(value)), *u),
            Sph::Dihedral(a, u) => Sph::Dihedral(c(a.instantiate(value)), *u),
            other => other.clone(),
        };
        let view = match self.view()? {
            Sub::Sph(cover, s) => Sub::Sph(cover, f(&s)),
            Sub::Prod(a, b) => Sub::Prod(f(&a), b),
            other => other,
        };
        Ok(view.embed(self.parent()))
    }

    pub fn parameter(&self) -> Option<SymInt> {
        self.group.parameter()
    }
}

fn axis_suffix(u: Axis, canonical: Axis) -> String {
    if u == canonical {
        String::new()
    } else {
        format!("@{}", u.letter())
    }
}

/// Conventional name of a subgroup of `SU(2)` or `SO(3)`.
pub fn sph_name(cover: Cover, s: &Sph) -> String {
    let g = spherical::group_spec(cover, s);
    let (cyclic_axis, normalizer_axis) = match cover {
        Cover::SO3 => (Axis::K, Axis::K),
        Cover::SU2 => (Axis::I, Axis::J),
    };
    match (cover, s) {
        (Cover::SU2, Sph::Cyclic(a, u)) if a.concrete() == Some(4) => format!("<{}>", u.letter()),
        (_, Sph::Cyclic(_, u) | Sph::Dihedral(_, u)) => format!("{g}{}", axis_suffix(*u, cyclic_axis)),
        (Cover::SO3, Sph::Circle(u)) => format!("SO(2){}", axis_suffix(*u, cyclic_axis)),
        (_, Sph::Circle(u)) => format!("{g}{}", axis_suffix(*u, cyclic_axis)),
        (_, Sph::CircleNormalizer(u)) => format!("{g}{}", axis_suffix(*u, normalizer_axis)),
        _ => g.to_string(),
    }
}

fn circle_factor_name(t: &TorusSubgroup) -> String {
    if t.is_full() {
        "S^1".to_string()
    } else {
        torus_group_spec(t).to_string()
    }
}

impl fmt::Display for EmbeddedSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Ok(view) = self.view() else {
            return write!(f, "{}", self.group);
        };
        match view {
            Sub::Torus(t) => write!(f, "{t}"),
            Sub::Sph(cover, s) => write!(f, "{}", sph_name(cover, &s)),
            Sub::Prod(a, b) => {
                let left = sph_name(Cover::SO3, &a);
                if b.is_trivial() {
                    write!(f, "{left}")
                } else {
                    write!(f, "{left}x{}", circle_factor_name(&b))
                }
            }
            Sub::Diag(t) => match t.as_circle() {
                Some(d) => write!(f, "diag({},{})", d[0], d[1]),
                None => write!(f, "toral{t}"),
            },
            Sub::So4(s) => write!(f, "{}", so4_group(s)),
        }
    }
}

fn same_parent(a: &EmbeddedSubgroup, b: &EmbeddedSubgroup) -> Result<()> {
    if a.parent() != b.parent() {
        return Err(CatalogError::ParentMismatch(a.parent().to_string(), b.parent().to_string()));
    }
    Ok(())
}

fn so4_contains(sup: So4Sub, sub: So4Sub) -> bool {
    use So4Sub::*;
    sup == sub || matches!((sub, sup), (Identity, _) | (_, Whole) | (Center | SO3, O3))
}

fn so4_generate(a: So4Sub, b: So4Sub) -> So4Sub {
    if so4_contains(a, b) {
        a
    } else if so4_contains(b, a) {
        b
    } else {
        // SO(3) and the center generate O(3).
        So4Sub::O3
    }
}

/// Containment `sub ⊆ sup`, three-valued over a family parameter.
pub fn contains_truth(sub: &EmbeddedSubgroup, sup: &EmbeddedSubgroup) -> Result<Truth> {
    same_parent(sub, sup)?;
    Ok(view_contains(&sup.view()?, &sub.view()?))
}

fn view_contains(sup: &Sub, sub: &Sub) -> Truth {
    let sph = |sup: &Sph, sub: &Sph| spherical::contains(Cover::SO3, sup, sub);
    match (sup, sub) {
        (Sub::Torus(a), Sub::Torus(b)) => Truth::from_bool(a.contains(b)),
        (Sub::Sph(cover, a), Sub::Sph(_, b)) => spherical::contains(*cover, a, b),
        (Sub::Prod(a, b), Sub::Prod(x, y)) => sph(a, x).and(Truth::from_bool(b.contains(y))),
        (Sub::Prod(a, b), Sub::Diag(t)) => {
            sph(a, &sph_from_so2(&t.project(&[0]))).and(Truth::from_bool(b.contains(&t.project(&[1]))))
        }
        (Sub::Diag(t), Sub::Prod(x, y)) => match so2_part(x) {
            Some(tx) => Truth::from_bool(t.contains(&tx.product(y))),
            None if x.axis() == Some(Axis::K) && matches!(x, Sph::Cyclic(..)) => Truth::Sometimes,
            None => Truth::Never,
        },
        (Sub::Diag(t), Sub::Diag(s)) => Truth::from_bool(t.contains(s)),
        (Sub::So4(a), Sub::So4(b)) => Truth::from_bool(so4_contains(*a, *b)),
        _ => Truth::Never,
    }
}

/// Whether `sub` is contained in `sup`; symbolic families must satisfy this
/// for every parameter value.
pub fn lattice_contains(sub: &EmbeddedSubgroup, sup: &EmbeddedSubgroup) -> Result<bool> {
    Ok(contains_truth(sub, sup)?.holds())
}

/// Smallest closed catalog subgroup containing `a` and `b`.
pub fn subgroup_generated(a: &EmbeddedSubgroup, b: &EmbeddedSubgroup) -> Result<EmbeddedSubgroup> {
    same_parent(a, b)?;
    let fail = || CatalogError::Unrepresentable(a.to_string(), b.to_string());
    let sph = |x: &Sph, y: &Sph| spherical::generate(Cover::SO3, x, y).map_err(|_| fail());
    let view = match (a.view()?, b.view()?) {
        (Sub::Torus(x), Sub::Torus(y)) => Sub::Torus(x.join(&y)),
        (Sub::Sph(cover, x), Sub::Sph(_, y)) => Sub::Sph(cover, spherical::generate(cover, &x, &y).map_err(|_| fail())?),
        (Sub::Prod(x, p), Sub::Prod(y, q)) => Sub::Prod(sph(&x, &y)?, p.join(&q)),
        (Sub::Diag(t), Sub::Diag(s)) => Sub::Diag(t.join(&s)),
        (Sub::Prod(x, p), Sub::Diag(t)) | (Sub::Diag(t), Sub::Prod(x, p)) => match so2_part(&x) {
            Some(tx) => Sub::Diag(tx.product(&p).join(&t)),
            None => {
                let first = t.project(&[0]);
                // The commutators with the SO(3) part fill the rotation factor.
                let fills = x == Sph::Whole || (x == Sph::CircleNormalizer(Axis::K) && first.is_full());
                if !fills {
                    return Err(fail());
                }
                Sub::Prod(sph(&x, &sph_from_so2(&first))?, p.join(&t.project(&[1])))
            }
        },
        (Sub::So4(x), Sub::So4(y)) => Sub::So4(so4_generate(x, y)),
        _ => return Err(fail()),
    };
    Ok(view.embed(a.parent()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalizerInfo {
    pub normalizer: EmbeddedSubgroup,
    pub identity_component: EmbeddedSubgroup,
    pub quotient: GroupSpec,
}

fn torus_of_dim(d: usize) -> GroupSpec {
    match d {
        0 => GroupSpec::Trivial,
        1 => GroupSpec::Circle,
        d => GroupSpec::Torus(d),
    }
}

/// `N(h)`, its identity component and `N(h)/h`.
pub fn normalizer(h: &EmbeddedSubgroup) -> Result<NormalizerInfo> {
    let parent = h.parent();
    let undecided = || CatalogError::Undecided(format!("normalizer of {h}"));
    let (n, n0, quotient) = match h.view()? {
        Sub::Torus(t) => {
            let k = t.ambient_rank();
            let full = Sub::Torus(TorusSubgroup::full(k));
            (full.clone(), full, torus_of_dim(k - t.dim()))
        }
        Sub::Sph(cover, s) => {
            let d = spherical::normalizer(cover, &s).map_err(|_| undecided())?;
            (Sub::Sph(cover, d.normalizer), Sub::Sph(cover, d.identity_component), d.quotient)
        }
        Sub::Prod(a, b) => {
            let d = spherical::normalizer(Cover::SO3, &a).map_err(|_| undecided())?;
            let circle = TorusSubgroup::full(1);
            let right = if b.is_full() { GroupSpec::Trivial } else { GroupSpec::Circle };
            (
                Sub::Prod(d.normalizer, circle.clone()),
                Sub::Prod(d.identity_component, circle),
                product_group(d.quotient, right),
            )
        }
        Sub::Diag(t) => {
            let symmetric = reflect(&t) == t;
            let full = TorusSubgroup::full(1);
            let top = if symmetric { Sph::CircleNormalizer(Axis::K) } else { Sph::Circle(Axis::K) };
            let torus = torus_of_dim(2 - t.dim());
            let quotient = match (symmetric, torus) {
                (false, q) => q,
                (true, GroupSpec::Trivial) => GroupSpec::Cyclic(c(2)),
                (true, q) => GroupSpec::FiniteExtensionProduct(Box::new(q), Box::new(GroupSpec::Cyclic(c(2)))),
            };
            (Sub::Prod(top, full.clone()), Sub::Prod(Sph::Circle(Axis::K), full), quotient)
        }
        Sub::So4(s) => {
            let (n, n0, q) = match s {
                So4Sub::Identity => (So4Sub::Whole, So4Sub::Whole, GroupSpec::SO4),
                So4Sub::Center => (
                    So4Sub::Whole,
                    So4Sub::Whole,
                    GroupSpec::ProductOfCatalogGroups(vec![GroupSpec::SO3, GroupSpec::SO3]),
                ),
                So4Sub::SO3 => (So4Sub::O3, So4Sub::SO3, GroupSpec::Cyclic(c(2))),
                So4Sub::O3 => (So4Sub::O3, So4Sub::SO3, GroupSpec::Trivial),
                So4Sub::Whole => (So4Sub::Whole, So4Sub::Whole, GroupSpec::Trivial),
            };
            (Sub::So4(n), Sub::So4(n0), q)
        }
    };
    Ok(NormalizerInfo { normalizer: n.embed(parent), identity_component: n0.embed(parent), quotient })
}

/// Largest normal subgroup of the parent contained in `h`.
pub fn normal_core(g: &GroupSpec, h: &EmbeddedSubgroup) -> Result<GroupSpec> {
    if g != h.parent() {
        return Err(CatalogError::ParentMismatch(g.to_string(), h.parent().to_string()));
    }
    Ok(normal_core_subgroup(h)?.group)
}

/// [`normal_core`] as an embedded subgroup.
pub fn normal_core_subgroup(h: &EmbeddedSubgroup) -> Result<EmbeddedSubgroup> {
    let view = match h.view()? {
        Sub::Torus(t) => Sub::Torus(t),
        Sub::Sph(cover, s) => Sub::Sph(
            cover,
            spherical::normal_core(cover, &s).map_err(|_| CatalogError::Undecided(format!("normal core of {h}")))?,
        ),
        // Normal subgroups of SO(3)×S^1 are N × B with N ∈ {1, SO(3)}.
        Sub::Prod(a, b) => Sub::Prod(if a == Sph::Whole { Sph::Whole } else { Sph::Identity }, b),
        Sub::Diag(t) => Sub::Prod(Sph::Identity, t.restrict(&[1])),
        Sub::So4(s) => match s {
            So4Sub::O3 | So4Sub::Center => Sub::So4(So4Sub::Center),
            So4Sub::Whole => Sub::So4(So4Sub::Whole),
            _ => Sub::So4(So4Sub::Identity),
        },
    };
    Ok(view.embed(h.parent()))
}

/// `w h w^{-1}` in canonical form.
pub fn conjugate(h: &EmbeddedSubgroup, w: &ConjugationWitness) -> Result<EmbeddedSubgroup> {
    if *w == ConjugationWitness::Identity || *w == ConjugationWitness::Central {
        return Ok(h.clone());
    }
    let fail = || CatalogError::UnsupportedWitness(h.to_string(), w.to_string());
    let view = match h.view()? {
        Sub::Torus(t) => Sub::Torus(t),
        Sub::So4(s) => Sub::So4(s),
        Sub::Sph(cover, s) => Sub::Sph(cover, spherical::conjugate(&s, w).map_err(|_| fail())?),
        Sub::Prod(a, b) => Sub::Prod(spherical::conjugate(&a, w).map_err(|_| fail())?, b),
        Sub::Diag(t) => match spherical::conjugate(&Sph::Cyclic(c(3), Axis::K), w) {
            Ok(Sph::Cyclic(_, Axis::K)) => {
                let flips_axis = match w {
                    ConjugationWitness::Quaternion(q) => q.rotate([0.0, 0.0, 1.0])[2] < 0.0,
                    _ => false,
                };
                Sub::Diag(if flips_axis { reflect(&t) } else { t })
            }
            _ => return Err(fail()),
        },
    };
    Ok(view.embed(h.parent()))
}

/// One conjugation witness for each component of `N(h)/h`.
pub fn component_witnesses(h: &EmbeddedSubgroup) -> Result<Vec<ConjugationWitness>> {
    let undecided = || CatalogError::Undecided(format!("components of the normalizer of {h}"));
    Ok(match h.view()? {
        Sub::Torus(_) => vec![ConjugationWitness::Identity],
        Sub::Sph(cover, s) => spherical::component_witnesses(cover, &s).map_err(|_| undecided())?,
        Sub::Prod(a, _) => spherical::component_witnesses(Cover::SO3, &a).map_err(|_| undecided())?,
        Sub::Diag(t) => {
            let mut out = vec![ConjugationWitness::Identity];
            if reflect(&t) == t {
                out.push(ConjugationWitness::Quaternion(spherical::half_turn(Axis::I)));
            }
            out
        }
        Sub::So4(So4Sub::SO3) => vec![ConjugationWitness::Identity, ConjugationWitness::Central],
        Sub::So4(_) => vec![ConjugationWitness::Identity],
    })
}

/// Subgroups of `SO(3) × S^1` for the first factor and the circle factor.
pub fn factor_intersection(h: &EmbeddedSubgroup) -> Result<(Sph, TorusSubgroup)> {
    match h.view()? {
        Sub::Prod(a, b) => Ok((a, b)),
        Sub::Diag(t) => Ok((sph_from_so2(&t.restrict(&[0])), t.restrict(&[1]))),
        _ => Err(CatalogError::NotInCatalog(format!("{h} is not in SO(3)xS^1"))),
    }
}

/// Projections of a subgroup of `SO(3) × S^1` to the two factors.
pub fn factor_projection(h: &EmbeddedSubgroup) -> Result<(Sph, TorusSubgroup)> {
    match h.view()? {
        Sub::Prod(a, b) => Ok((a, b)),
        Sub::Diag(t) => Ok((sph_from_so2(&t.project(&[0])), t.project(&[1]))),
        _ => Err(CatalogError::NotInCatalog(format!("{h} is not in SO(3)xS^1"))),
    }
}

pub fn so2_subgroup(s: &Sph) -> Option<TorusSubgroup> {
    so2_part(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3(s: Sph) -> EmbeddedSubgroup {
        EmbeddedSubgroup::so3(s)
    }

    #[test]
    fn cyclic_in_circle_and_dihedral() {
        let z = so3(Sph::Cyclic(c(5), Axis::K));
        assert!(lattice_contains(&z, &so3(Sph::Circle(Axis::K))).unwrap());
        assert!(lattice_contains(&z, &so3(Sph::Dihedral(c(5), Axis::K))).unwrap());
    }

    #[test]
    fn torus_circles_generate_torus() {
        let a = EmbeddedSubgroup::torus(TorusSubgroup::circle(&[1, 0]));
        let b = EmbeddedSubgroup::torus(TorusSubgroup::circle(&[0, 1]));
        assert!(!lattice_contains(&a, &b).unwrap());
        assert_eq!(subgroup_generated(&a, &b).unwrap().group, GroupSpec::Torus(2));
    }

    #[test]
    fn first_factor_is_idempotent() {
        let s = EmbeddedSubgroup::so3_circle(Sph::Whole, TorusSubgroup::trivial(1));
        assert_eq!(subgroup_generated(&s, &s).unwrap(), s);
        assert_eq!(s.to_string(), "SO(3)");
    }

    #[test]
    fn parent_mismatch_is_reported() {
        let a = so3(Sph::Identity);
        let b = EmbeddedSubgroup::su2(Sph::Identity);
        assert!(matches!(lattice_contains(&a, &b), Err(CatalogError::ParentMismatch(..))));
    }

    #[test]
    fn normalizer_examples() {
        let o2 = so3(Sph::CircleNormalizer(Axis::K));
        let n = normalizer(&o2).unwrap();
        assert_eq!(n.normalizer, o2);
        assert_eq!(n.identity_component, so3(Sph::Circle(Axis::K)));
        assert_eq!(n.quotient, GroupSpec::Trivial);
        let e = EmbeddedSubgroup::trivial(&GroupSpec::Torus(3)).unwrap();
        assert_eq!(normalizer(&e).unwrap().quotient, GroupSpec::Torus(3));
    }

    #[test]
    fn normal_core_examples() {
        let o2 = so3(Sph::CircleNormalizer(Axis::K));
        assert_eq!(normal_core(&GroupSpec::SO3, &o2).unwrap(), GroupSpec::Trivial);
        let i = EmbeddedSubgroup::su2(Sph::Cyclic(c(4), Axis::I));
        assert_eq!(normal_core(&GroupSpec::SU2, &i).unwrap(), GroupSpec::Cyclic(c(2)));
        let circle = EmbeddedSubgroup::torus(TorusSubgroup::circle(&[1, 0]));
        assert_eq!(normal_core(&GroupSpec::Torus(2), &circle).unwrap(), GroupSpec::Circle);
    }

    #[test]
    fn conjugating_i_by_j_stays() {
        let i = EmbeddedSubgroup::su2(Sph::Cyclic(c(4), Axis::I));
        let j = ConjugationWitness::Quaternion(crate::Quaternion::unit(Axis::J));
        assert_eq!(conjugate(&i, &j).unwrap(), i);
        assert_eq!(i.to_string(), "<i>");
    }

    #[test]
    fn diagonal_circle_display_and_product_split() {
        let d = EmbeddedSubgroup::so3_circle_toral(TorusSubgroup::circle(&[1, 1]));
        assert_eq!(d.to_string(), "diag(1,1)");
        let p = EmbeddedSubgroup::so3_circle_toral(TorusSubgroup::circle(&[1, 0]));
        assert_eq!(p, EmbeddedSubgroup::so3_circle(Sph::Circle(Axis::K), TorusSubgroup::trivial(1)));
    }
}
