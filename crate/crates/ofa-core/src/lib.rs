//! Odd form rings, odd form parameters and their unitary groups over finite
//! commutative coefficient rings.

pub mod clifford;
pub mod coeff_ring;
pub mod error;
pub mod form_ring;
pub mod linalg;
pub mod nilpotent2;
pub mod odd_form_param;
pub mod quad_module;
pub mod report;
pub mod unitary;

pub use coeff_ring::{El, Ring, RingHom, RingSpec};
pub use error::{OfaError, Result};
