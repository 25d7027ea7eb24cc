//! Exact and certified-numeric arithmetic for lifts of circle
//! homeomorphisms: composition, inversion, rotation and translation
//! numbers, lifted commutators, and integer-translation certificates.

pub mod error;
pub mod homeo;
pub mod mobius;
pub mod pl;
pub mod rotation;
pub mod sampling;
pub mod scalar;

pub use error::{HomeoError, Result};
pub use homeo::{lifted_commutator, LiftedHomeo};
pub use mobius::{MobiusMap, DEFAULT_TOLERANCE};
pub use pl::PlMap;
pub use rotation::{
    default_resolution, rot_circle, rot_circle_default, rott, rott_cmp, rott_default, RotResult,
    DEFAULT_MAX_DENOMINATOR,
};
pub use scalar::{rat, ExactScalar};
