//! Real scalars and unit quaternions used by the finite-subgroup oracle.

use std::fmt::Debug;
use std::ops::{Mul, Neg};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static {
    /// Tolerance used when two computed elements are identified.
    fn tolerance() -> Self;
    /// Grid scale for hashing computed elements.
    fn key_scale() -> f64;
}

impl Real for f32 {
    fn tolerance() -> Self {
        1e-4
    }
    fn key_scale() -> f64 {
        1e3
    }
}

impl Real for f64 {
    fn tolerance() -> Self {
        1e-9
    }
    fn key_scale() -> f64 {
        1e6
    }
}

fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal fits scalar")
}

/// Imaginary axis of the quaternions. Under the double cover
/// `SU(2) -> SO(3)` the axes `I`, `J`, `K` correspond to `x`, `y`, `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Axis {
    I,
    J,
    K,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::I, Axis::J, Axis::K];

    /// The axis following this one in the cyclic order `I -> J -> K -> I`.
    pub fn next(self) -> Axis {
        match self {
            Axis::I => Axis::J,
            Axis::J => Axis::K,
            Axis::K => Axis::I,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Axis::I => 'i',
            Axis::J => 'j',
            Axis::K => 'k',
        }
    }

    /// Name of the corresponding rotation axis in `SO(3)`.
    pub fn spatial(self) -> char {
        match self {
            Axis::I => 'x',
            Axis::J => 'y',
            Axis::K => 'z',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Quaternion<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn from_f64(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self::new(lit(w), lit(x), lit(y), lit(z))
    }

    pub fn unit(axis: Axis) -> Self {
        Self::exp(axis, lit(std::f64::consts::FRAC_PI_2))
    }

    /// `cos(theta) + u sin(theta)` for the imaginary unit `u` of `axis`.
    pub fn exp(axis: Axis, theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        let z = T::zero();
        match axis {
            Axis::I => Self::new(c, s, z, z),
            Axis::J => Self::new(c, z, s, z),
            Axis::K => Self::new(c, z, z, s),
        }
    }

    /// Unit quaternion covering the rotation by `angle` about `axis`.
    pub fn rotation(axis: Axis, angle: T) -> Self {
        Self::exp(axis, angle / lit(2.0))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        Self::new(self.w / n, self.x / n, self.y / n, self.z / n)
    }

    /// Inverse of a unit quaternion.
    pub fn inv(&self) -> Self {
        self.conj()
    }

    pub fn conjugate_by(&self, g: &Self) -> Self {
        *g * *self * g.inv()
    }

    pub fn dist(&self, other: &Self) -> T {
        let d = *self - *other;
        d.norm_sqr().sqrt()
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dist(other) < T::tolerance().sqrt()
    }

    /// Rotate a vector of `R^3` by the rotation this unit quaternion covers.
    pub fn rotate(&self, v: [T; 3]) -> [T; 3] {
        let p = Self::new(T::zero(), v[0], v[1], v[2]);
        let r = p.conjugate_by(self);
        [r.x, r.y, r.z]
    }

    /// Integer grid key used to hash computed group elements.
    pub fn key(&self) -> [i64; 4] {
        let scale = T::key_scale();
        let f = |t: T| (t.to_f64().unwrap_or(0.0) * scale).round() as i64;
        [f(self.w), f(self.x), f(self.y), f(self.z)]
    }

    pub fn components(&self) -> [T; 4] {
        [self.w, self.x, self.y, self.z]
    }
}

impl<T: Real> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let l = self;
        Self::new(
            l.w * r.w - l.x * r.x - l.y * r.y - l.z * r.z,
            l.w * r.x + l.x * r.w + l.y * r.z - l.z * r.y,
            l.w * r.y - l.x * r.z + l.y * r.w + l.z * r.x,
            l.w * r.z + l.x * r.y - l.y * r.x + l.z * r.w,
        )
    }
}

impl<T: Real> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<T: Real> std::ops::Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamilton_relations() {
        let i = Quaternion::<f64>::unit(Axis::I);
        let j = Quaternion::<f64>::unit(Axis::J);
        let k = Quaternion::<f64>::unit(Axis::K);
        assert!((i * j).approx_eq(&k));
        assert!((j * k).approx_eq(&i));
        assert!((i * i).approx_eq(&-Quaternion::one()));
        assert!((i * j * k).approx_eq(&-Quaternion::one()));
    }

    #[test]
    fn j_conjugates_i_to_minus_i() {
        let i = Quaternion::<f64>::unit(Axis::I);
        let j = Quaternion::<f64>::unit(Axis::J);
        assert!(i.conjugate_by(&j).approx_eq(&-i));
    }

    #[test]
    fn rotation_about_z_moves_x_to_y() {
        let q = Quaternion::<f64>::rotation(Axis::K, std::f64::consts::FRAC_PI_2);
        let v = q.rotate([1.0, 0.0, 0.0]);
        assert!((v[0]).abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_precision_agrees() {
        let a = Quaternion::<f32>::rotation(Axis::I, 0.3) * Quaternion::rotation(Axis::I, 0.4);
        assert!(a.approx_eq(&Quaternion::rotation(Axis::I, 0.7)));
    }
}
