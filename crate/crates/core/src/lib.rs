//! Exact numerics for quantum error correction on permutation-invariant
//! (PI) qubit codes.
//!
//! The crate implements the full decoding theory for PI codes at dense
//! state-vector level: gnu-code construction and distance certification,
//! weight-`t` error channels and qubit deletion, syndrome extraction by
//! sequential total-angular-momentum measurement (collapsing onto a
//! standard Young tableau), Knill-Laflamme recovery inside a tableau
//! sector, repeat-until-success projection back to the symmetric subspace
//! through inverse Clebsch-Gordan cascades, amplitude rebalancing,
//! teleportation-based decoding, the simplified deletion decoder, and the
//! closed-form bosonic-pointer layer with a truncated-Fock verification
//! oracle.
//!
//! Everything is deterministic given a seeded RNG: measurements take the
//! generator as an explicit argument and states are immutable values.

pub mod bosonic;
pub mod codes;
pub mod error;
pub mod hilbert;
pub(crate) mod linalg;
pub mod noise;
pub mod recovery;
pub mod schur;
pub mod syndrome;
pub mod tableaux;

pub use error::{Error, Result};
