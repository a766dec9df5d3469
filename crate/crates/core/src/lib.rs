//! Exact and numerical tools for the paramodular group of prime level, its
//! Fricke extension, the level-2 structure, and the Borcherds product of the
//! weight-one paramodular cusp form of level 3.

pub mod error;
pub mod exact;
pub mod groups;
pub mod jacobi;
pub mod siegel;
pub mod sp4f2;

pub use error::{Error, Result};
pub use exact::{Prime, RationalMatrix, ScaledMatrix, SymplecticForm};
pub use groups::{Chart, Element, GroupId, GroupKind, SiegelPoint};
pub use sp4f2::F2Matrix;
