//! Exact arithmetic for Hochschild chains and cochains of finite group rings.

pub mod algebra;
pub mod chain;
pub mod cochain;
pub mod error;
pub mod group;
pub mod group_ring;
pub mod homology;
pub mod io;
pub mod matrix;
pub mod par;
pub mod products;
pub mod random;
pub mod scalar;
pub mod sparse;
pub mod tqft;
pub mod verify;

pub use algebra::GroupAlgebra;
pub use chain::{Chain, TensorChain, Tuple};
pub use cochain::{BarCochain, Cochain};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use group_ring::GroupRingElement;
pub use matrix::Matrix;
pub use scalar::{FieldSpec, Scalar};
