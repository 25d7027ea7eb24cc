//! Combinatorial bounds and realizations for rotation numbers of positive
//! words in circle homeomorphisms with prescribed periodic-orbit data.

pub mod config;
pub mod constraints;
pub mod dynamics;
pub mod error;
pub mod pair_sup;
pub mod realize;

pub use config::{CycleEntry, LabelSpec, OrbitConfig, PointRef, PositiveWord, RotData};
pub use constraints::{
    check_max_constraints, locate_periodic_points, orbit_consistent, InequalityCheck,
    MaxConstraintReport, PeriodicPointZones,
};
pub use dynamics::{step, word_translation_bound, PeriodicOrbitCertificate};
pub use error::{CwError, Result};
pub use pair_sup::cw_pair_sup;
pub use realize::{default_contraction, realize, word_product};
