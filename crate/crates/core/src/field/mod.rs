//! Prime and extension fields of odd characteristic.

pub mod embed;
pub mod gf;
pub mod linalg;
pub mod prime;
pub mod quadratic;

pub use embed::Embedding;
pub use gf::{artin_schreier_fiber_count, FieldDescriptor, FieldElement, FiniteField};
pub use linalg::FpMatrix;
pub use prime::{is_prime, legendre, legendre_i64};
pub use quadratic::QuadraticForm;
