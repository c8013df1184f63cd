//! Closed subgroups of the torus `T^k = R^k / Z^k`.
//!
//! A closed subgroup `S` is stored through its annihilator
//! `S^perp = { w in Z^k : w . s in Z for all s in S }`, a sublattice of the
//! character lattice. Pontryagin duality makes this a faithful canonical form
//! once the annihilator basis is in Hermite normal form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lattice::{
    self, gcd_all, hermite_normal_form, index_in, kernel, lattice_intersection, lattice_le, lattice_sum,
    primitive, quotient_invariants, saturation,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusSubgroup {
    rank: usize,
    ann: Vec<Vec<i64>>,
}

impl TorusSubgroup {
    pub fn from_annihilator(rank: usize, ann: Vec<Vec<i64>>) -> Self {
        Self { rank, ann: hermite_normal_form(&ann) }
    }

    pub fn trivial(rank: usize) -> Self {
        let id = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        Self::from_annihilator(rank, id)
    }

    pub fn full(rank: usize) -> Self {
        Self { rank, ann: Vec::new() }
    }

    /// One-parameter subgroup `t -> t * dir`; `dir` is made primitive.
    pub fn circle(dir: &[i64]) -> Self {
        Self::from_generators(dir.len(), &[dir.to_vec()], &[])
    }

    /// Cyclic subgroup generated by `v / m`.
    pub fn cyclic(v: &[i64], m: i64) -> Self {
        Self::from_generators(v.len(), &[], &[(v.to_vec(), m)])
    }

    /// Closed subgroup generated by the circles along `dirs` and the torsion
    /// elements `v / m`.
    pub fn from_generators(rank: usize, dirs: &[Vec<i64>], torsion: &[(Vec<i64>, i64)]) -> Self {
        // Unknowns: w (rank entries) and one integer t per torsion element,
        // with w . dir = 0 and w . v + m t = 0.
        let cols = rank + torsion.len();
        let mut rows = Vec::new();
        for d in dirs {
            let mut r = d.clone();
            r.resize(cols, 0);
            rows.push(r);
        }
        for (i, (v, m)) in torsion.iter().enumerate() {
            let mut r = v.clone();
            r.resize(cols, 0);
            r[rank + i] = *m;
            rows.push(r);
        }
        let ker = kernel(&rows, cols);
        let ann: Vec<Vec<i64>> = ker.iter().map(|r| r[..rank].to_vec()).collect();
        Self::from_annihilator(rank, ann)
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn annihilator(&self) -> &[Vec<i64>] {
        &self.ann
    }

    pub fn dim(&self) -> usize {
        self.rank - self.ann.len()
    }

    pub fn is_full(&self) -> bool {
        self.ann.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        *self == Self::trivial(self.rank)
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &TorusSubgroup) -> bool {
        lattice_le(&self.ann, &other.ann)
    }

    /// Closed subgroup generated by both.
    pub fn join(&self, other: &TorusSubgroup) -> TorusSubgroup {
        Self::from_annihilator(self.rank, lattice_intersection(&self.ann, &other.ann, self.rank))
    }

    pub fn meet(&self, other: &TorusSubgroup) -> TorusSubgroup {
        Self::from_annihilator(self.rank, lattice_sum(&self.ann, &other.ann))
    }

    /// Identity component.
    pub fn identity_component(&self) -> TorusSubgroup {
        Self::from_annihilator(self.rank, saturation(&self.ann, self.rank))
    }

    /// Invariant factors of the component group `S / S_0`.
    pub fn component_invariants(&self) -> Vec<i64> {
        // S ≅ T^dim × torsion(Z^k / ann)
        quotient_invariants(&self.ann, self.rank).0
    }

    pub fn component_count(&self) -> u64 {
        self.component_invariants().iter().product::<i64>() as u64
    }

    /// Number of components of `self / sub` (requires `sub ⊆ self`).
    pub fn quotient_components(&self, sub: &TorusSubgroup) -> u64 {
        let k0h = self.identity_component().join(sub);
        index_in(&self.ann, &k0h.ann, self.rank).unwrap_or(0) as u64
    }

    /// Integer directions spanning the Lie algebra.
    pub fn directions(&self) -> Vec<Vec<i64>> {
        kernel(&self.ann, self.rank)
    }

    /// Image under the projection onto the coordinates in `keep`.
    pub fn project(&self, keep: &[usize]) -> TorusSubgroup {
        // (π S)^perp = { w' : (w' placed on keep, 0 elsewhere) ∈ S^perp }
        let r = keep.len();
        let coords: Vec<Vec<i64>> = (0..r)
            .map(|j| {
                let mut e = vec![0i64; self.rank];
                e[keep[j]] = 1;
                e
            })
            .collect();
        let sub = lattice_intersection(&self.ann, &coords, self.rank);
        let ann = sub.iter().map(|w| keep.iter().map(|&i| w[i]).collect()).collect();
        Self::from_annihilator(r, ann)
    }

    /// Intersection with the coordinate subtorus on `keep`, as a subgroup of it.
    pub fn restrict(&self, keep: &[usize]) -> TorusSubgroup {
        // (S ∩ T_keep)^perp in Z^keep is the projection of S^perp onto keep.
        let ann = self.ann.iter().map(|w| keep.iter().map(|&i| w[i]).collect()).collect();
        Self::from_annihilator(keep.len(), ann)
    }

    /// `S × T'` where the new coordinates are appended.
    pub fn product(&self, other: &TorusSubgroup) -> TorusSubgroup {
        let r = self.rank + other.rank;
        let mut ann: Vec<Vec<i64>> = self
            .ann
            .iter()
            .map(|w| {
                let mut v = w.clone();
                v.resize(r, 0);
                v
            })
            .collect();
        for w in &other.ann {
            let mut v = vec![0i64; self.rank];
            v.extend(w.iter().copied());
            ann.push(v);
        }
        Self::from_annihilator(r, ann)
    }

    /// Whether the subgroup is the product of its projections onto the two
    /// coordinate blocks `[0, split)` and `[split, rank)`.
    pub fn split_product(&self, split: usize) -> Option<(TorusSubgroup, TorusSubgroup)> {
        let a: Vec<usize> = (0..split).collect();
        let b: Vec<usize> = (split..self.rank).collect();
        let (pa, pb) = (self.project(&a), self.project(&b));
        (pa.product(&pb) == *self).then_some((pa, pb))
    }

    /// For a finite subgroup, the lattice `{ x : ann x ∈ Z^k }` is `π_1(T^k / S)`;
    /// returns the matrix mapping a vector of `Z^k`-coordinates of the universal
    /// cover into integer coordinates of that lattice, i.e. the annihilator itself.
    pub fn pi1_coordinates(&self) -> Option<&[Vec<i64>]> {
        (self.ann.len() == self.rank).then_some(&self.ann)
    }

    /// If finite and cyclic of order 2, the nonzero vector `u ∈ {0,1}^k` with `S = <u/2>`.
    pub fn as_z2(&self) -> Option<Vec<i64>> {
        if self.dim() != 0 || self.component_invariants() != vec![2] {
            return None;
        }
        (1..(1u32 << self.rank)).find_map(|mask| {
            let u: Vec<i64> = (0..self.rank).map(|i| i64::from(mask >> i & 1 == 1)).collect();
            (*self == Self::cyclic(&u, 2)).then_some(u)
        })
    }

    /// If a connected circle, its primitive direction.
    pub fn as_circle(&self) -> Option<Vec<i64>> {
        if self.dim() != 1 || self.component_count() != 1 {
            return None;
        }
        Some(primitive(&self.directions()[0]))
    }
}

impl fmt::Display for TorusSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if self.is_trivial() {
            return write!(f, "e");
        }
        if self.is_full() {
            return write!(f, "T{}", self.rank);
        }
        if let Some(d) = self.as_circle() {
            return write!(f, "circle({})", list(&d));
        }
        if let Some(u) = self.as_z2() {
            return write!(f, "Z2({})", list(&u));
        }
        let rows: Vec<String> = self.ann.iter().map(|r| format!("[{}]", list(r))).collect();
        write!(f, "sub[{}]", rows.join(";"))
    }
}

/// Primitive gcd-normalized form with first nonzero entry positive.
pub fn canonical_slope(v: &[i64]) -> Vec<i64> {
    primitive(v)
}

pub fn is_primitive(v: &[i64]) -> bool {
    gcd_all(v) == 1
}

/// Rank of the lattice spanned by `rows`.
pub fn span_rank(rows: &[Vec<i64>]) -> usize {
    lattice::rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_circles_are_distinct_and_generate() {
        let a = TorusSubgroup::circle(&[1, 0]);
        let b = TorusSubgroup::circle(&[0, 1]);
        assert!(!a.contains(&b) && !b.contains(&a));
        assert!(a.join(&b).is_full());
        assert!(a.meet(&b).is_trivial());
    }

    #[test]
    fn slope_circle_meets_factor_in_cyclic() {
        let c = TorusSubgroup::circle(&[1, 3]);
        let f = TorusSubgroup::circle(&[1, 0]);
        let m = c.meet(&f);
        assert_eq!(m.dim(), 0);
        assert_eq!(m.component_count(), 3);
    }

    #[test]
    fn z2_decoding() {
        let z = TorusSubgroup::cyclic(&[1, 1, 0], 2);
        assert_eq!(z.as_z2(), Some(vec![1, 1, 0]));
        assert_eq!(z.to_string(), "Z2(1,1,0)");
        assert!(TorusSubgroup::circle(&[1, 1, 0]).contains(&z));
        assert!(!TorusSubgroup::circle(&[1, 0, 0]).contains(&z));
    }

    #[test]
    fn circle_with_components() {
        let s = TorusSubgroup::from_generators(2, &[vec![1, 0]], &[(vec![0, 1], 2)]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.component_count(), 2);
        assert_eq!(s.quotient_components(&TorusSubgroup::trivial(2)), 2);
        let c = TorusSubgroup::circle(&[1, 0]);
        assert_eq!(s.quotient_components(&c), 2);
    }

    #[test]
    fn split_products() {
        let p = TorusSubgroup::circle(&[1, 0]);
        assert!(p.split_product(1).is_some());
        assert!(TorusSubgroup::circle(&[1, 2]).split_product(1).is_none());
    }

    #[test]
    fn restrict_drops_last_factor() {
        let third = TorusSubgroup::circle(&[0, 0, 1]);
        assert!(third.restrict(&[0, 1]).is_trivial());
        let diag = TorusSubgroup::circle(&[1, 0, 2]);
        let r = diag.restrict(&[0, 1]);
        assert_eq!(r.component_count(), 2);
    }
}
