//! Brute-force oracle for finite subgroups of `SU(2)` and `SO(3)`.
//!
//! Subgroups of `SO(3)` are represented by their preimages in `SU(2)`, so
//! every subgroup becomes an explicit finite set of unit quaternions.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::{self, Write};

use super::spherical::{Cover, Sph};
use super::{CatalogError, EmbeddedSubgroup, Result, Sub};
use crate::scalar::{Axis, Quaternion, Real};

/// Largest set the closure is allowed to build before it declares the
/// generated group infinite.
pub const CLOSURE_LIMIT: usize = 2000;

/// Finite set of unit quaternions with tolerant lookup.
#[derive(Clone, Debug)]
pub struct ElementSet<T> {
    elements: Vec<Quaternion<T>>,
    index: HashMap<[i64; 4], usize>,
}

impl<T: Real> Default for ElementSet<T> {
    fn default() -> Self {
        Self { elements: Vec::new(), index: HashMap::new() }
    }
}

impl<T: Real> ElementSet<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Quaternion<T>] {
        &self.elements
    }

    pub fn contains(&self, q: &Quaternion<T>) -> bool {
        // A coordinate close to a rounding boundary is looked up on both sides.
        let scale = T::key_scale();
        let options: Vec<Vec<i64>> = q
            .components()
            .iter()
            .map(|t| {
                let v = t.to_f64().unwrap_or(0.0) * scale;
                let r = v.round();
                let mut o = vec![r as i64];
                if (v - r).abs() > 0.25 {
                    o.push(if v > r { r as i64 + 1 } else { r as i64 - 1 });
                }
                o
            })
            .collect();
        for &a in &options[0] {
            for &b in &options[1] {
                for &c in &options[2] {
                    for &d in &options[3] {
                        if let Some(&i) = self.index.get(&[a, b, c, d]) {
                            if self.elements[i].approx_eq(q) {
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }

    pub fn insert(&mut self, q: Quaternion<T>) -> bool {
        if self.contains(&q) {
            return false;
        }
        self.index.insert(q.key(), self.elements.len());
        self.elements.push(q);
        true
    }

    pub fn is_subset(&self, other: &ElementSet<T>) -> bool {
        self.elements.iter().all(|q| other.contains(q))
    }

    pub fn same_set(&self, other: &ElementSet<T>) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }

    /// Whether `g S g^{-1} = S`.
    pub fn normalized_by(&self, g: &Quaternion<T>) -> bool {
        self.elements.iter().all(|q| self.contains(&q.conjugate_by(g)))
    }

    /// Plain-text dump, one `w x y z` tuple per line.
    pub fn dump(&self, out: &mut dyn Write) -> io::Result<()> {
        for q in &self.elements {
            let [w, x, y, z] = q.components().map(|t| t.to_f64().unwrap_or(f64::NAN));
            writeln!(out, "{w:.9} {x:.9} {y:.9} {z:.9}")?;
        }
        Ok(())
    }
}

/// Closure of `gens` under multiplication; `None` if it exceeds `limit`.
pub fn closure<T: Real>(gens: &[Quaternion<T>], limit: usize) -> Option<ElementSet<T>> {
    let mut set = ElementSet::default();
    set.insert(Quaternion::one());
    let mut frontier: Vec<Quaternion<T>> = vec![Quaternion::one()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = (x * *g).normalized();
            if set.insert(y) {
                if set.len() > limit {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(set)
}

fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal fits scalar")
}

fn q<T: Real>(w: f64, x: f64, y: f64, z: f64) -> Quaternion<T> {
    Quaternion::new(lit(w), lit(x), lit(y), lit(z))
}

/// Generators of an `SU(2)` subgroup with concrete parameters.
fn su2_generators<T: Real>(s: &Sph) -> Result<Vec<Quaternion<T>>> {
    let concrete = |n: &crate::SymInt| {
        n.concrete().ok_or_else(|| CatalogError::OracleNotApplicable(format!("symbolic parameter {n}")))
    };
    let tetra = vec![Quaternion::unit(Axis::I), Quaternion::unit(Axis::J), q(0.5, 0.5, 0.5, 0.5)];
    Ok(match s {
        Sph::Identity => vec![],
        Sph::Cyclic(a, u) => vec![Quaternion::exp(*u, lit(2.0 * PI / concrete(a)? as f64))],
        Sph::Dihedral(m, u) => vec![Quaternion::exp(*u, lit(PI / concrete(m)? as f64)), Quaternion::unit(u.next())],
        Sph::Klein => vec![Quaternion::unit(Axis::I), Quaternion::unit(Axis::J)],
        Sph::Tetrahedral => tetra,
        Sph::Octahedral => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let mut g = tetra;
            g.push(q(r, 0.0, 0.0, r));
            g
        }
        Sph::Icosahedral => {
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            let mut g = tetra;
            g.push(q(phi / 2.0, 0.5, 1.0 / (2.0 * phi), 0.0));
            g
        }
        Sph::Circle(_) | Sph::CircleNormalizer(_) | Sph::Whole => {
            return Err(CatalogError::OracleNotApplicable("infinite subgroup".into()))
        }
    })
}

fn sph_view(sub: &EmbeddedSubgroup) -> Result<(Cover, Sph)> {
    match sub.view()? {
        Sub::Sph(cover, s) => Ok((cover, s)),
        _ => Err(CatalogError::OracleNotApplicable(format!("{sub} is not in SU(2) or SO(3)"))),
    }
}

/// Explicit elements of a finite subgroup of `SU(2)` or `SO(3)` (as its
/// preimage in `SU(2)`), with every parameter at most `n_max`.
pub fn materialize_sph<T: Real>(cover: Cover, s: &Sph, n_max: u64) -> Result<ElementSet<T>> {
    if let Sph::Cyclic(n, _) | Sph::Dihedral(n, _) = s {
        if n.concrete().is_some_and(|v| v > n_max) {
            return Err(CatalogError::OracleNotApplicable(format!("parameter {n} exceeds {n_max}")));
        }
    }
    let lifted = match cover {
        Cover::SU2 => s.clone(),
        Cover::SO3 => s.preimage(),
    };
    let gens = su2_generators::<T>(&lifted)?;
    closure(&gens, CLOSURE_LIMIT).ok_or_else(|| CatalogError::OracleNotApplicable("closure did not terminate".into()))
}

/// Generators of the `SU(2)` preimage of a finite subgroup in standard position.
pub fn generators<T: Real>(cover: Cover, s: &Sph) -> Result<Vec<Quaternion<T>>> {
    match cover {
        Cover::SU2 => su2_generators(s),
        Cover::SO3 => {
            let mut g = su2_generators(&s.preimage())?;
            g.push(-Quaternion::one());
            Ok(g)
        }
    }
}

/// Finite subgroup as an explicit set of unit quaternions.
pub fn finite_oracle_materialize<T: Real>(sub: &EmbeddedSubgroup, n_max: u64) -> Result<ElementSet<T>> {
    let (cover, s) = sph_view(sub)?;
    materialize_sph(cover, &s, n_max)
}

/// Membership of a unit quaternion in a subgroup in standard position (for an
/// `SO(3)` subgroup, in its preimage).
pub fn member<T: Real>(cover: Cover, s: &Sph, g: &Quaternion<T>, n_max: u64) -> Result<bool> {
    let tol = T::tolerance().sqrt();
    let imag = |u: Axis| match u {
        Axis::I => g.x,
        Axis::J => g.y,
        Axis::K => g.z,
    };
    let on_circle = |u: Axis| Axis::ALL.iter().all(|&v| v == u || imag(v).abs() < tol);
    Ok(match s {
        Sph::Whole => true,
        Sph::Circle(u) => on_circle(*u),
        // The other component consists of unit imaginary quaternions orthogonal to u.
        Sph::CircleNormalizer(u) => on_circle(*u) || (g.w.abs() < tol && imag(*u).abs() < tol),
        finite => materialize_sph::<T>(cover, finite, n_max)?.contains(g),
    })
}

/// Deterministic sample of `SU(2)` used to probe normalizers: fine rotations
/// about the coordinate axes composed with half turns, and the binary
/// octahedral and icosahedral groups.
pub fn probe_elements<T: Real>() -> Vec<Quaternion<T>> {
    let mut out = Vec::new();
    for u in Axis::ALL {
        for k in 0..96 {
            let r = Quaternion::exp(u, lit(PI * k as f64 / 48.0));
            out.push(r);
            out.push(r * Quaternion::unit(u.next()));
            out.push(r * Quaternion::unit(u.next().next()));
        }
    }
    for s in [Sph::Octahedral, Sph::Icosahedral] {
        if let Ok(set) = materialize_sph::<T>(Cover::SU2, &s, 1) {
            out.extend(set.elements().iter().copied());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symint::SymInt;

    fn c(v: u64) -> SymInt {
        SymInt::Concrete(v)
    }

    #[test]
    fn binary_polyhedral_orders() {
        let order = |s: Sph| materialize_sph::<f64>(Cover::SU2, &s, 12).unwrap().len();
        assert_eq!(order(Sph::Klein), 8);
        assert_eq!(order(Sph::Tetrahedral), 24);
        assert_eq!(order(Sph::Octahedral), 48);
        assert_eq!(order(Sph::Icosahedral), 120);
        assert_eq!(order(Sph::Dihedral(c(5), Axis::K)), 20);
    }

    #[test]
    fn icosahedral_contains_tetrahedral() {
        let i = materialize_sph::<f64>(Cover::SU2, &Sph::Icosahedral, 12).unwrap();
        let t = materialize_sph::<f64>(Cover::SU2, &Sph::Tetrahedral, 12).unwrap();
        assert!(t.is_subset(&i));
    }

    #[test]
    fn so3_groups_are_preimages() {
        let d = materialize_sph::<f64>(Cover::SO3, &Sph::Cyclic(c(3), Axis::K), 12).unwrap();
        assert_eq!(d.len(), 6);
    }

    #[test]
    fn single_precision_matches() {
        let a = materialize_sph::<f32>(Cover::SU2, &Sph::Octahedral, 12).unwrap();
        assert_eq!(a.len(), 48);
    }

    #[test]
    fn symbolic_is_not_applicable() {
        let p = crate::symint::Param::new('n', 1);
        let s = Sph::Cyclic(SymInt::n(1, &p), Axis::K);
        assert!(materialize_sph::<f64>(Cover::SU2, &s, 12).is_err());
    }

    #[test]
    fn dump_prints_one_tuple_per_line() {
        let set = materialize_sph::<f64>(Cover::SU2, &Sph::Klein, 12).unwrap();
        let mut buf = Vec::new();
        set.dump(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 8);
    }
}
