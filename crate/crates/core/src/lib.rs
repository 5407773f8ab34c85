//! Exact symbolic construction of the BV double of the standard Courant
//! algebroid on the torus `T^D`, with residual checkers for its identities.

pub mod error;
pub mod scalars;
pub mod sections;
pub mod bvcomplex;
pub mod bvops;
pub mod deform;
pub mod exterior;
pub mod doublecopy;
pub mod verify;

pub use error::{AlgebraError, Result};
pub use scalars::{Coeff, FourierScalar, GaussRational, Metric};
pub use sections::GenSection;
pub use bvcomplex::BVElement;
