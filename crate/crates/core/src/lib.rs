//! Exact arithmetic for Griesmer codes over GF(p^f).

pub mod basis;
pub mod code;
pub mod constructions;
pub mod derived;
pub mod field;
pub mod galois_ring;
pub mod gcode;
pub mod geometry;
pub mod guard;
pub mod lab;
pub mod matrix;
mod modulus_table;
pub mod padic;
mod poly;
pub mod report;
pub mod search;
pub mod ward;

pub use code::{griesmer_bound, CodeError, LinearCode, WeightDistribution};
pub use field::{make_field, Elem, Field, FieldError};
pub use geometry::{GeometryError, PointMultiset, ProjectiveSpace};
pub use matrix::{FqMatrix, MatrixError, Rref};
