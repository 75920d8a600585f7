//! Deterministic LEO satellite access simulation.
//!
//! The crate models the radio-relevant kinematics of low Earth orbit
//! constellations: two-body and J2-perturbed orbit propagation, satellite-UE
//! access geometry (delay, Doppler, and their drifts), S-band link budgets,
//! GNSS/ephemeris-based UE pre-compensation of timing advance and uplink
//! frequency, and discrete-event idle/connected mobility over moving cells.
//!
//! All computations are pure functions of their inputs; identical inputs
//! produce identical outputs, bit for bit.

pub mod access;
pub mod constants;
pub mod coverage;
pub mod error;
pub mod frames;
pub mod link;
pub mod mobility;
pub mod orbit;
pub mod precomp;
pub mod scenario;
pub mod vec3;

pub use access::{AccessGeometry, GeodeticPosition, PassWindow};
pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use frames::Frame;
pub use orbit::{EphemerisRecord, OrbitalElements, StateVector};
pub use vec3::Vec3;
