//! Reference frames and coordinate transforms.
//!
//! Two frames are used: an Earth-centered inertial frame and an Earth-centered
//! earth-fixed frame rotating uniformly about the polar (+z) axis. The two
//! coincide at t = 0. No precession, nutation, or polar motion is modeled.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::orbit::StateVector;
use crate::vec3::Vec3;

/// Reference frame tag carried by every state vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    Inertial,
    EarthFixed,
}

/// Earth rotation angle (rad) at simulation time `t`.
fn rotation_angle(consts: &PhysicalConstants, t: f64) -> f64 {
    consts.earth_rotation_rate * t
}

/// Angular velocity vector of the Earth in the inertial frame.
fn omega_vector(consts: &PhysicalConstants) -> Vec3 {
    Vec3::new(0.0, 0.0, consts.earth_rotation_rate)
}

/// Rotates an inertial state into the earth-fixed frame at the state's time.
///
/// The velocity picks up the -omega x r frame term, so a point at rest on the
/// rotating Earth has exactly zero earth-fixed velocity.
pub fn inertial_to_earth_fixed(
    consts: &PhysicalConstants,
    state: &StateVector,
) -> Result<StateVector> {
    if state.frame != Frame::Inertial {
        return Err(Error::FrameMismatch { expected: Frame::Inertial, found: state.frame });
    }
    let theta = rotation_angle(consts, state.time);
    let omega = omega_vector(consts);
    let position = state.position.rotated_z(-theta);
    let velocity = (state.velocity - omega.cross(state.position)).rotated_z(-theta);
    Ok(StateVector { position, velocity, frame: Frame::EarthFixed, time: state.time })
}

/// Inverse of [`inertial_to_earth_fixed`]; the round trip is the identity.
pub fn earth_fixed_to_inertial(
    consts: &PhysicalConstants,
    state: &StateVector,
) -> Result<StateVector> {
    if state.frame != Frame::EarthFixed {
        return Err(Error::FrameMismatch { expected: Frame::EarthFixed, found: state.frame });
    }
    let theta = rotation_angle(consts, state.time);
    let omega = omega_vector(consts);
    let position = state.position.rotated_z(theta);
    let velocity = state.velocity.rotated_z(theta) + omega.cross(position);
    Ok(StateVector { position, velocity, frame: Frame::Inertial, time: state.time })
}

/// Spherical-Earth mapping from geodetic coordinates to an earth-fixed vector.
///
/// Latitude in [-pi/2, pi/2], longitude in radians, altitude in meters above
/// the sphere.
pub fn geodetic_to_earth_fixed(
    consts: &PhysicalConstants,
    lat: f64,
    lon: f64,
    alt: f64,
) -> Result<Vec3> {
    if !lat.is_finite() || !lon.is_finite() || !alt.is_finite() {
        return Err(Error::InvalidParameter("non-finite geodetic coordinates".into()));
    }
    if !(-std::f64::consts::FRAC_PI_2..=std::f64::consts::FRAC_PI_2).contains(&lat) {
        return Err(Error::InvalidParameter(format!(
            "latitude {lat} rad outside [-pi/2, pi/2]"
        )));
    }
    let r = consts.earth_radius + alt;
    Ok(Vec3::new(r * lat.cos() * lon.cos(), r * lat.cos() * lon.sin(), r * lat.sin()))
}

/// Inverse spherical mapping: earth-fixed position to (lat, lon, alt).
pub fn earth_fixed_to_geodetic(consts: &PhysicalConstants, position: Vec3) -> (f64, f64, f64) {
    let r = position.norm();
    let lat = (position.z / r).clamp(-1.0, 1.0).asin();
    let lon = position.y.atan2(position.x);
    (lat, lon, r - consts.earth_radius)
}
