#![allow(dead_code)]

pub mod invariants;
pub mod lattice_oracle;
pub mod torus_oracle;
