pub mod catalog;
pub mod classify;
pub mod diagram;
pub mod document;
pub mod lattice;
pub mod quotients;
pub mod scalar;
pub mod symint;
pub mod topology;

pub use scalar::{Axis, Quaternion, Real};
pub use symint::{Param, SymInt, Truth};

pub type Quat = Quaternion<f64>;
pub type Quat32 = Quaternion<f32>;
