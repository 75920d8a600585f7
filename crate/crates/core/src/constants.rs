//! Physical constants of the Earth model.

use crate::error::{Error, Result};

/// Earth and signal constants used throughout the simulator.
///
/// The Earth is modeled as a sphere rotating uniformly about the polar axis;
/// J2 enters only as an orbit perturbation, not as oblate geodesy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Gravitational parameter mu (m^3/s^2).
    pub mu: f64,
    /// Mean Earth radius (m), spherical model.
    pub earth_radius: f64,
    /// Second zonal harmonic J2 (dimensionless).
    pub j2: f64,
    /// Speed of light (m/s).
    pub light_speed: f64,
    /// Earth rotation rate (rad/s).
    pub earth_rotation_rate: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            mu: 3.986004418e14,
            earth_radius: 6.371e6,
            j2: 1.08263e-3,
            light_speed: 2.99792458e8,
            earth_rotation_rate: 7.2921159e-5,
        }
    }
}

impl PhysicalConstants {
    /// Validates that every constant is strictly positive and finite.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("mu", self.mu),
            ("earth_radius", self.earth_radius),
            ("j2", self.j2),
            ("light_speed", self.light_speed),
            ("earth_rotation_rate", self.earth_rotation_rate),
        ];
        for (name, value) in fields {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "constant {name} must be strictly positive, got {value}"
                )));
            }
        }
        Ok(())
    }

    /// Same constants with the J2 perturbation switched off.
    pub fn without_j2(&self) -> Self {
        Self { j2: 0.0, ..*self }
    }

    /// Circular orbital speed sqrt(mu / a) at semi-major axis `a` (m).
    pub fn circular_speed(&self, semi_major_axis: f64) -> f64 {
        (self.mu / semi_major_axis).sqrt()
    }

    /// Orbital period 2*pi*sqrt(a^3 / mu) (s).
    pub fn orbital_period(&self, semi_major_axis: f64) -> f64 {
        std::f64::consts::TAU * (semi_major_axis.powi(3) / self.mu).sqrt()
    }
}
