//! Identification of homogeneous spaces `K/H` and their fundamental groups.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::spherical::{self, Cover, Sph};
use crate::catalog::{
    contains_truth, factor_intersection, sph_name, so2_subgroup, CatalogError, EmbeddedSubgroup, GroupSpec,
    So4Sub, Sub, TorusSubgroup,
};
use crate::lattice::quotient_invariants;
use crate::scalar::Axis;
use crate::symint::{SymInt, Truth};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FundamentalGroup {
    Trivial,
    CyclicZ(SymInt),
    FreeAbelian(usize),
    /// `Z^rank` modulo the span of `relations`.
    LatticeQuotient { rank: usize, relations: Vec<Vec<i64>> },
    CatalogFinite(GroupSpec),
    Product(Vec<FundamentalGroup>),
}

impl FundamentalGroup {
    /// Canonical form: abelian groups with concrete data go through the Smith
    /// normal form; products are flattened.
    pub fn normalized(&self) -> FundamentalGroup {
        use FundamentalGroup::*;
        let mut torsion: Vec<i64> = Vec::new();
        let mut free = 0usize;
        let mut other: Vec<FundamentalGroup> = Vec::new();
        fn collect(g: &FundamentalGroup, torsion: &mut Vec<i64>, free: &mut usize, other: &mut Vec<FundamentalGroup>) {
            match g {
                Trivial => {}
                CyclicZ(n) => match n.concrete() {
                    Some(1) => {}
                    Some(v) => torsion.push(v as i64),
                    None => other.push(g.clone()),
                },
                FreeAbelian(k) => *free += k,
                LatticeQuotient { rank, relations } => {
                    let (t, f) = quotient_invariants(relations, *rank);
                    torsion.extend(t);
                    *free += f;
                }
                CatalogFinite(GroupSpec::Trivial) => {}
                CatalogFinite(GroupSpec::Cyclic(n)) => collect(&CyclicZ(n.clone()), torsion, free, other),
                CatalogFinite(_) => other.push(g.clone()),
                Product(list) => list.iter().for_each(|x| collect(x, torsion, free, other)),
            }
        }
        collect(self, &mut torsion, &mut free, &mut other);
        let diag: Vec<Vec<i64>> = torsion
            .iter()
            .enumerate()
            .map(|(i, &t)| (0..torsion.len()).map(|j| if i == j { t } else { 0 }).collect())
            .collect();
        let (invariants, _) = quotient_invariants(&diag, torsion.len());
        let mut parts: Vec<FundamentalGroup> =
            invariants.into_iter().map(|t| CyclicZ(SymInt::Concrete(t as u64))).collect();
        parts.extend(other);
        if free > 0 {
            parts.push(FreeAbelian(free));
        }
        match parts.len() {
            0 => Trivial,
            1 => parts.pop().unwrap(),
            _ => Product(parts),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.normalized() == FundamentalGroup::Trivial
    }

    pub fn equivalent(&self, other: &FundamentalGroup) -> bool {
        self.normalized() == other.normalized()
    }
}

impl fmt::Display for FundamentalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FundamentalGroup::*;
        match self.normalized() {
            Trivial => write!(f, "1"),
            CyclicZ(n) => write!(f, "{}", GroupSpec::Cyclic(n)),
            FreeAbelian(1) => write!(f, "Z"),
            FreeAbelian(k) => write!(f, "Z^{k}"),
            CatalogFinite(g) => write!(f, "{g}"),
            Product(list) => {
                let parts: Vec<String> = list.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
            LatticeQuotient { .. } => unreachable!("normalized"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpaceName {
    Sphere(usize),
    RealProjective(usize),
    ComplexProjective(usize),
    Lens(SymInt, SymInt),
    /// `S^3/Γ*` with `Γ*` a finite subgroup of `SU(2)`.
    SphericalSpaceForm3(GroupSpec),
    SphericalSpaceForm5(GroupSpec),
    TorusSpace(usize),
    FiniteSet(SymInt),
    ProductSpace(Vec<HomogeneousSpace>),
    Unidentified(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomogeneousSpace {
    pub name: SpaceName,
    pub dim: usize,
    pub is_sphere: bool,
    pub positively_curved: bool,
    pub simply_connected: bool,
    pub pi1: FundamentalGroup,
    /// Coset presentation such as `SU(2)/Z_n`, kept for display.
    pub presentation: Option<String>,
}

fn concrete(v: u64) -> SymInt {
    SymInt::Concrete(v)
}

impl HomogeneousSpace {
    fn new(name: SpaceName, dim: usize, pi1: FundamentalGroup) -> Self {
        let is_sphere = matches!(name, SpaceName::Sphere(_));
        let positively_curved = match &name {
            SpaceName::Sphere(_) => true,
            SpaceName::RealProjective(d) => *d <= 5 && *d >= 2,
            SpaceName::ComplexProjective(2) => true,
            SpaceName::Lens(..) | SpaceName::SphericalSpaceForm3(_) | SpaceName::SphericalSpaceForm5(_) => true,
            _ => false,
        };
        let connected = match &name {
            SpaceName::Sphere(0) => false,
            SpaceName::FiniteSet(n) => n.concrete() == Some(1),
            SpaceName::ProductSpace(list) => list.iter().all(|s| s.connected()),
            SpaceName::Unidentified(_) => false,
            _ => true,
        };
        let simply_connected = connected && pi1.is_trivial() && !matches!(name, SpaceName::Unidentified(_));
        Self { name, dim, is_sphere, positively_curved, simply_connected, pi1, presentation: None }
    }

    fn connected(&self) -> bool {
        match &self.name {
            SpaceName::Sphere(0) => false,
            SpaceName::FiniteSet(n) => n.concrete() == Some(1),
            SpaceName::ProductSpace(list) => list.iter().all(|s| s.connected()),
            _ => true,
        }
    }

    pub fn sphere(d: usize) -> Self {
        let pi1 = if d == 1 { FundamentalGroup::FreeAbelian(1) } else { FundamentalGroup::Trivial };
        Self::new(SpaceName::Sphere(d), d, pi1)
    }

    pub fn point() -> Self {
        Self::new(SpaceName::FiniteSet(concrete(1)), 0, FundamentalGroup::Trivial)
    }

    pub fn finite_set(n: SymInt) -> Self {
        match n.concrete() {
            Some(2) => Self::sphere(0),
            _ => Self::new(SpaceName::FiniteSet(n), 0, FundamentalGroup::Trivial),
        }
    }

    pub fn real_projective(d: usize) -> Self {
        let pi1 = if d == 1 { FundamentalGroup::FreeAbelian(1) } else { FundamentalGroup::CyclicZ(concrete(2)) };
        Self::new(SpaceName::RealProjective(d), d, pi1)
    }

    pub fn complex_projective_plane() -> Self {
        Self::new(SpaceName::ComplexProjective(2), 4, FundamentalGroup::Trivial)
    }

    /// `L(p, q)` with the unoriented normalization of `q`.
    pub fn lens(p: SymInt, q: SymInt) -> Self {
        let q = match (p.concrete(), q.concrete()) {
            (Some(p), Some(q)) => concrete(normalize_lens(p, q)),
            _ => q,
        };
        let pi1 = FundamentalGroup::CyclicZ(p.clone());
        match p.concrete() {
            Some(1) => Self::sphere(3),
            Some(2) => Self::real_projective(3),
            _ => Self::new(SpaceName::Lens(p, q), 3, pi1),
        }
    }

    pub fn space_form3(gamma_star: GroupSpec) -> Self {
        match &gamma_star {
            GroupSpec::Trivial => Self::sphere(3),
            GroupSpec::Cyclic(n) => Self::lens(n.clone(), concrete(1)),
            _ => Self::new(SpaceName::SphericalSpaceForm3(gamma_star.clone()), 3, FundamentalGroup::CatalogFinite(gamma_star)),
        }
    }

    pub fn torus(k: usize) -> Self {
        match k {
            0 => Self::point(),
            1 => Self::sphere(1),
            k => Self::new(SpaceName::TorusSpace(k), k, FundamentalGroup::FreeAbelian(k)),
        }
    }

    pub fn unidentified(d: usize) -> Self {
        Self::new(SpaceName::Unidentified(d), d, FundamentalGroup::Trivial)
    }

    /// Cartesian product; point factors are dropped.
    pub fn product(factors: Vec<HomogeneousSpace>) -> Self {
        let mut list: Vec<HomogeneousSpace> = Vec::new();
        for f in factors {
            match f.name {
                SpaceName::FiniteSet(ref n) if n.concrete() == Some(1) => {}
                SpaceName::ProductSpace(inner) => list.extend(inner),
                _ => list.push(f),
            }
        }
        match list.len() {
            0 => Self::point(),
            1 => list.pop().unwrap(),
            _ => {
                let dim = list.iter().map(|s| s.dim).sum();
                let pi1 = FundamentalGroup::Product(list.iter().map(|s| s.pi1.clone()).collect()).normalized();
                let presentation = if list.iter().any(|s| s.presentation.is_some()) {
                    Some(list.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" x "))
                } else {
                    None
                };
                let mut out = Self::new(SpaceName::ProductSpace(list), dim, pi1);
                out.presentation = presentation;
                out
            }
        }
    }

    pub fn with_presentation(mut self, p: impl Into<String>) -> Self {
        self.presentation = Some(p.into());
        self
    }

    pub fn is_point(&self) -> bool {
        matches!(&self.name, SpaceName::FiniteSet(n) if n.concrete() == Some(1))
    }

    /// Name without the coset presentation.
    pub fn plain_name(&self) -> String {
        match &self.name {
            SpaceName::Sphere(d) => format!("S^{d}"),
            SpaceName::RealProjective(d) => format!("RP^{d}"),
            SpaceName::ComplexProjective(d) => format!("CP^{d}"),
            SpaceName::Lens(p, q) => format!("L({p},{q})"),
            SpaceName::SphericalSpaceForm3(g) => format!("S^3/{g}"),
            SpaceName::SphericalSpaceForm5(g) => format!("S^5/{g}"),
            SpaceName::TorusSpace(k) => format!("T^{k}"),
            SpaceName::FiniteSet(n) if n.concrete() == Some(1) => "pt".to_string(),
            SpaceName::FiniteSet(n) => format!("{{{n} points}}"),
            SpaceName::ProductSpace(list) => list.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" x "),
            SpaceName::Unidentified(d) => format!("?^{d}"),
        }
    }
}

impl fmt::Display for HomogeneousSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.presentation {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "{}", self.plain_name()),
        }
    }
}

/// Smallest representative of `q` under `q ~ -q ~ q^{-1} (mod p)`.
pub fn normalize_lens(p: u64, q: u64) -> u64 {
    if p <= 2 {
        return 1;
    }
    let q = q % p;
    let inv = (1..p).find(|x| (x * q) % p == 1).unwrap_or(q);
    [q, p - q, inv, p - inv].into_iter().min().unwrap()
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum QuotientError {
    #[error("{0} is not a subgroup of {1}")]
    NotContained(String, String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("unsupported quotient: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, QuotientError>;

/// Name of a subgroup of `SU(2)` or `SO(3)` moved to its canonical axis, so
/// that presentations do not depend on the conjugacy representative.
fn presentation_name(cover: Cover, s: &Sph) -> String {
    let (cyclic_axis, normalizer_axis) = match cover {
        Cover::SO3 => (Axis::K, Axis::K),
        Cover::SU2 => (Axis::I, Axis::J),
    };
    let moved = match s {
        Sph::Cyclic(a, _) => Sph::Cyclic(a.clone(), cyclic_axis),
        Sph::Dihedral(a, _) => Sph::Dihedral(a.clone(), cyclic_axis),
        Sph::Circle(_) => Sph::Circle(cyclic_axis),
        Sph::CircleNormalizer(_) => Sph::CircleNormalizer(normalizer_axis),
        other => other.clone(),
    };
    sph_name(cover, &moved)
}

fn group_name(cover: Cover) -> &'static str {
    match cover {
        Cover::SU2 => "SU(2)",
        Cover::SO3 => "SO(3)",
    }
}

fn sph_quotient(cover: Cover, k: &Sph, h: &Sph) -> Result<HomogeneousSpace> {
    use Sph::*;
    let unsupported = || QuotientError::Unsupported(format!("{}/{}", sph_name(cover, k), sph_name(cover, h)));
    Ok(match (k, h) {
        (Whole, Whole) | (Circle(_), Circle(_)) | (CircleNormalizer(_), CircleNormalizer(_)) => HomogeneousSpace::point(),
        (Whole, Circle(_)) => HomogeneousSpace::sphere(2),
        (Whole, CircleNormalizer(_)) => HomogeneousSpace::real_projective(2),
        (Whole, finite) => {
            let lifted = match cover {
                Cover::SU2 => finite.clone(),
                Cover::SO3 => finite.preimage(),
            };
            if let Cyclic(n, _) = &lifted {
                // A family must stay on one side of the sphere/non-sphere divide.
                if n.concrete().is_none() && n.min_value() < 2 {
                    return Err(unsupported());
                }
            }
            let space = HomogeneousSpace::space_form3(spherical::group_spec(Cover::SU2, &lifted));
            if *finite == Identity {
                space
            } else {
                space.with_presentation(format!("{}/{}", group_name(cover), presentation_name(cover, finite)))
            }
        }
        (CircleNormalizer(u), Circle(_)) if Some(*u) == h.axis() => HomogeneousSpace::sphere(0),
        (CircleNormalizer(u), finite) if finite.is_finite() => {
            match spherical::contains(cover, &Circle(*u), finite) {
                Truth::Always => HomogeneousSpace::product(vec![HomogeneousSpace::sphere(1), HomogeneousSpace::sphere(0)]),
                Truth::Never => HomogeneousSpace::sphere(1),
                Truth::Sometimes => return Err(unsupported()),
            }
        }
        (Circle(_), finite) if finite.is_finite() => HomogeneousSpace::sphere(1),
        (kk, hh) if kk.is_finite() && hh.is_finite() => {
            let (ok, oh) = (kk.order(cover).ok_or_else(unsupported)?, hh.order(cover).ok_or_else(unsupported)?);
            HomogeneousSpace::finite_set(ok.ratio(&oh).ok_or_else(unsupported)?)
        }
        _ => return Err(unsupported()),
    })
}

fn torus_quotient(k: &TorusSubgroup, h: &TorusSubgroup) -> HomogeneousSpace {
    let d = k.dim() - h.dim();
    let components = k.quotient_components(h);
    let base = HomogeneousSpace::torus(d);
    if components == 1 {
        base
    } else {
        HomogeneousSpace::product(vec![base, HomogeneousSpace::finite_set(concrete(components))])
    }
}

fn so4_quotient(k: So4Sub, h: So4Sub) -> HomogeneousSpace {
    use So4Sub::*;
    match (k, h) {
        _ if k == h => HomogeneousSpace::point(),
        (Whole, SO3) => HomogeneousSpace::sphere(3),
        (Whole, O3) => HomogeneousSpace::real_projective(3),
        (O3, SO3) | (Center, Identity) => HomogeneousSpace::sphere(0),
        (O3, Center) | (SO3, Identity) => HomogeneousSpace::real_projective(3),
        (O3, Identity) => HomogeneousSpace::product(vec![HomogeneousSpace::real_projective(3), HomogeneousSpace::sphere(0)]),
        _ => HomogeneousSpace::unidentified(6),
    }
}

/// Toral subgroup of `SO(2)_z × S^1` underlying a subgroup of `SO(3) × S^1`, if any.
fn toral(s: &Sub) -> Option<TorusSubgroup> {
    match s {
        Sub::Diag(t) => Some(t.clone()),
        Sub::Prod(a, b) => Some(so2_subgroup(a)?.product(b)),
        _ => None,
    }
}

fn so3_circle_quotient(k: &EmbeddedSubgroup, h: &EmbeddedSubgroup) -> Result<HomogeneousSpace> {
    let (kv, hv) = (k.view()?, h.view()?);
    let surjects = match &hv {
        Sub::Prod(_, b) => b.is_full(),
        Sub::Diag(t) => t.project(&[1]).is_full(),
        _ => false,
    };
    if surjects {
        let (k1, _) = factor_intersection(k)?;
        let (h1, _) = factor_intersection(h)?;
        let mut space = sph_quotient(Cover::SO3, &k1, &h1)?;
        if space.presentation.is_some() {
            space.presentation = None;
        }
        return Ok(space);
    }
    if let (Sub::Prod(a, b), Sub::Prod(c, d)) = (&kv, &hv) {
        let left = sph_quotient(Cover::SO3, a, c)?;
        return Ok(HomogeneousSpace::product(vec![left, torus_quotient(b, d)]));
    }
    if let (Some(a), Some(b)) = (toral(&kv), toral(&hv)) {
        return Ok(torus_quotient(&a, &b));
    }
    Ok(HomogeneousSpace::unidentified(k.dim() - h.dim()))
}

/// `K/H` for subgroups `H ⊆ K` of a common parent.
pub fn identify_subquotient(k: &EmbeddedSubgroup, h: &EmbeddedSubgroup) -> Result<HomogeneousSpace> {
    if contains_truth(h, k)? == Truth::Never {
        return Err(QuotientError::NotContained(h.to_string(), k.to_string()));
    }
    Ok(match (k.view()?, h.view()?) {
        (Sub::Torus(a), Sub::Torus(b)) => torus_quotient(&a, &b),
        (Sub::Sph(cover, a), Sub::Sph(_, b)) => sph_quotient(cover, &a, &b)?,
        (Sub::So4(a), Sub::So4(b)) => so4_quotient(a, b),
        _ => so3_circle_quotient(k, h)?,
    })
}

/// `G/H`.
pub fn identify_quotient(g: &GroupSpec, h: &EmbeddedSubgroup) -> Result<HomogeneousSpace> {
    if g != h.parent() {
        return Err(CatalogError::ParentMismatch(g.to_string(), h.parent().to_string()).into());
    }
    identify_subquotient(&EmbeddedSubgroup::whole(g)?, h)
}

/// Whether the space belongs to the catalog of positively curved homogeneous
/// spaces of dimension at most 5.
pub fn is_admissible_fiber(space: &HomogeneousSpace) -> bool {
    space.positively_curved && space.dim <= 5
}

/// `π_1(G/H)`; for torus parents an explicit lattice presentation.
pub fn pi1_of_quotient(g: &GroupSpec, h: &EmbeddedSubgroup) -> Result<FundamentalGroup> {
    let space = identify_quotient(g, h)?;
    if let SpaceName::Unidentified(_) = space.name {
        return Err(QuotientError::Unsupported(format!("pi_1 of {g}/{h}")));
    }
    if let Sub::Torus(t) = h.view()? {
        return Ok(FundamentalGroup::LatticeQuotient { rank: t.ambient_rank() - t.dim(), relations: Vec::new() });
    }
    Ok(space.pi1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symint::Param;

    fn so3(s: Sph) -> EmbeddedSubgroup {
        EmbeddedSubgroup::so3(s)
    }

    #[test]
    fn so3_mod_o2_is_rp2() {
        let q = identify_quotient(&GroupSpec::SO3, &so3(Sph::CircleNormalizer(Axis::K))).unwrap();
        assert_eq!(q.name, SpaceName::RealProjective(2));
        assert!(q.positively_curved && !q.is_sphere);
    }

    #[test]
    fn su2_mod_trivial_is_s3() {
        let q = identify_quotient(&GroupSpec::SU2, &EmbeddedSubgroup::su2(Sph::Identity)).unwrap();
        assert_eq!(q.name, SpaceName::Sphere(3));
        assert!(q.simply_connected);
    }

    #[test]
    fn so4_mod_so3() {
        let q = identify_quotient(&GroupSpec::SO4, &EmbeddedSubgroup::so4(So4Sub::SO3)).unwrap();
        assert_eq!(q.name, SpaceName::Sphere(3));
        let q = identify_quotient(&GroupSpec::SO4, &EmbeddedSubgroup::so4(So4Sub::O3)).unwrap();
        assert_eq!(q.name, SpaceName::RealProjective(3));
    }

    #[test]
    fn fundamental_groups() {
        let t2 = EmbeddedSubgroup::trivial(&GroupSpec::Torus(2)).unwrap();
        assert!(pi1_of_quotient(&GroupSpec::Torus(2), &t2).unwrap().equivalent(&FundamentalGroup::FreeAbelian(2)));
        let p = Param::new('n', 2);
        let zn = EmbeddedSubgroup::su2(Sph::Cyclic(SymInt::n(1, &p), Axis::I));
        assert_eq!(pi1_of_quotient(&GroupSpec::SU2, &zn).unwrap(), FundamentalGroup::CyclicZ(SymInt::n(1, &p)));
        let e = so3(Sph::Identity);
        assert!(pi1_of_quotient(&GroupSpec::SO3, &e).unwrap().equivalent(&FundamentalGroup::CyclicZ(concrete(2))));
    }

    #[test]
    fn presentations() {
        let p = Param::new('n', 1);
        let zn = so3(Sph::Cyclic(SymInt::n(1, &p), Axis::K));
        assert_eq!(identify_quotient(&GroupSpec::SO3, &zn).unwrap().to_string(), "SO(3)/Z_n");
        let i = EmbeddedSubgroup::su2(Sph::Cyclic(concrete(4), Axis::I));
        assert_eq!(identify_quotient(&GroupSpec::SU2, &i).unwrap().to_string(), "SU(2)/<i>");
    }

    #[test]
    fn product_with_circle_factor() {
        let g = GroupSpec::so3_times_circle();
        let h = EmbeddedSubgroup::so3_circle(Sph::CircleNormalizer(Axis::K), TorusSubgroup::trivial(1));
        let k = EmbeddedSubgroup::so3_circle(Sph::CircleNormalizer(Axis::K), TorusSubgroup::cyclic(&[1], 2));
        assert_eq!(identify_quotient(&g, &h).unwrap().to_string(), "RP^2 x S^1");
        assert_eq!(identify_subquotient(&k, &h).unwrap().name, SpaceName::Sphere(0));
        let full = EmbeddedSubgroup::so3_circle(Sph::CircleNormalizer(Axis::K), TorusSubgroup::full(1));
        assert_eq!(identify_quotient(&g, &full).unwrap().name, SpaceName::RealProjective(2));
    }

    #[test]
    fn lens_normalization() {
        assert_eq!(normalize_lens(5, 2), 2);
        assert_eq!(normalize_lens(5, 3), 2);
        assert_eq!(normalize_lens(7, 3), 2);
        assert_eq!(normalize_lens(7, 6), 1);
    }
}
