//! Classification of ADE configurations of (-2)-curves on K3 surfaces.
//!
//! The pipeline enumerates root lattices of rank at most 19, finds every
//! root-free even overlattice through isotropic glue in the discriminant
//! group, and decides primitive embeddability into the K3 lattice from the
//! discriminant form alone.

pub mod classifier;
pub mod error;
pub mod fixtures;
pub mod fqf;
pub mod glue;
pub mod lattice;
pub mod modular;
pub mod nikulin;
pub mod report;

pub use error::{Error, Result};
pub use fqf::{ade_discriminant_form, FiniteQuadraticForm, JordanBlock, LengthProfile, SquareClass};
pub use lattice::{enumerate_configurations, AdeConfiguration, AdeType, Family, GramMatrix};
