//! Walker constellation generation and global coverage mapping.

use crate::access::GeodeticPosition;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::frames;
use crate::orbit::{kepler_to_state, OrbitalElements, StateVector};
use crate::vec3::Vec3;
use std::f64::consts::TAU;

/// Walker-delta constellation description.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct WalkerConfig {
    pub total_satellites: u32,
    pub planes: u32,
    /// Inter-plane phasing factor F, 0 <= F < planes.
    pub phasing_factor: u32,
    /// Inclination (rad).
    pub inclination: f64,
    /// Circular orbit altitude (m).
    pub altitude: f64,
}

impl WalkerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.planes == 0 || self.total_satellites == 0 {
            return Err(Error::InvalidParameter("empty Walker configuration".into()));
        }
        if self.total_satellites % self.planes != 0 {
            return Err(Error::InvalidParameter(format!(
                "planes {} must divide total satellites {}",
                self.planes, self.total_satellites
            )));
        }
        if self.phasing_factor >= self.planes {
            return Err(Error::InvalidParameter(format!(
                "phasing factor {} outside [0, planes)",
                self.phasing_factor
            )));
        }
        if !(0.0..=std::f64::consts::PI).contains(&self.inclination) {
            return Err(Error::InvalidParameter(format!(
                "inclination {} rad outside [0, pi]",
                self.inclination
            )));
        }
        if !(self.altitude.is_finite() && self.altitude > 0.0) {
            return Err(Error::InvalidParameter(format!("altitude {} m", self.altitude)));
        }
        Ok(())
    }
}

/// One satellite of a constellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Satellite {
    pub id: u32,
    pub elements: OrbitalElements,
}

/// A set of satellites propagated together.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Constellation {
    pub satellites: Vec<Satellite>,
}

impl Constellation {
    pub fn new(satellites: Vec<Satellite>) -> Self {
        Self { satellites }
    }

    pub fn len(&self) -> usize {
        self.satellites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.satellites.is_empty()
    }

    /// Earth-fixed states of every satellite at time `t`, in id order.
    pub fn states_at(&self, consts: &PhysicalConstants, t: f64) -> Result<Vec<(u32, StateVector)>> {
        self.satellites
            .iter()
            .map(|sat| {
                let inertial = kepler_to_state(consts, &sat.elements, t)?;
                Ok((sat.id, frames::inertial_to_earth_fixed(consts, &inertial)?))
            })
            .collect()
    }
}

/// Generates a Walker-delta pattern: circular orbits, RAAN evenly spread over
/// 2*pi across planes, in-plane anomalies evenly spread, and an inter-plane
/// phase offset of F * 2*pi / total.
pub fn generate_walker(consts: &PhysicalConstants, config: &WalkerConfig) -> Result<Constellation> {
    config.validate()?;
    let per_plane = config.total_satellites / config.planes;
    let mut satellites = Vec::with_capacity(config.total_satellites as usize);
    for plane in 0..config.planes {
        let raan = TAU * plane as f64 / config.planes as f64;
        let phase = TAU * config.phasing_factor as f64 * plane as f64
            / config.total_satellites as f64;
        for slot in 0..per_plane {
            let anomaly = TAU * slot as f64 / per_plane as f64 + phase;
            let elements = OrbitalElements::circular(
                consts,
                config.altitude,
                config.inclination,
                raan,
                anomaly,
                0.0,
            )?;
            satellites.push(Satellite { id: plane * per_plane + slot, elements });
        }
    }
    Ok(Constellation::new(satellites))
}

/// Counts satellites at or above `min_elevation` as seen from a ground point.
///
/// The elevation test is done on dot products only, which keeps the count an
/// exact integer predicate.
pub fn satellites_in_view(
    consts: &PhysicalConstants,
    grid_point: &GeodeticPosition,
    states: &[(u32, StateVector)],
    min_elevation: f64,
) -> u32 {
    let point = grid_point.to_earth_fixed(consts);
    let up = point.normalized();
    let sin_mask = min_elevation.sin();
    let mut count = 0;
    for (_, state) in states {
        if in_view(point, up, sin_mask, state.position) {
            count += 1;
        }
    }
    count
}

fn in_view(point: Vec3, up: Vec3, sin_mask: f64, sat_position: Vec3) -> bool {
    let rel = sat_position - point;
    let range = rel.norm();
    range > 0.0 && rel.dot(up) >= sin_mask * range
}

/// Snapshot of satellites-in-view counts over a global lat/lon grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageGrid {
    pub lat_step_deg: f64,
    pub lon_step_deg: f64,
    /// Elevation mask (rad).
    pub min_elevation: f64,
    /// Snapshot time (s).
    pub timestamp: f64,
    /// Grid latitudes (deg), south to north, inclusive of both poles.
    pub lats_deg: Vec<f64>,
    /// Grid longitudes (deg), [-180, 180).
    pub lons_deg: Vec<f64>,
    /// counts[lat_index][lon_index].
    pub counts: Vec<Vec<u32>>,
}

impl CoverageGrid {
    pub fn min_count(&self) -> u32 {
        self.counts.iter().flatten().copied().min().unwrap_or(0)
    }

    pub fn max_count(&self) -> u32 {
        self.counts.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn mean_count(&self) -> f64 {
        let total: u64 = self.counts.iter().flatten().map(|&c| c as u64).sum();
        let cells = self.counts.iter().map(|row| row.len()).sum::<usize>();
        if cells == 0 {
            0.0
        } else {
            total as f64 / cells as f64
        }
    }

    /// Cos(latitude)-weighted fraction of grid points with at least one
    /// satellite in view, restricted to |lat| <= `lat_limit_deg`.
    pub fn covered_fraction_within(&self, lat_limit_deg: f64) -> f64 {
        let mut covered = 0.0;
        let mut total = 0.0;
        for (i, &lat) in self.lats_deg.iter().enumerate() {
            if lat.abs() > lat_limit_deg {
                continue;
            }
            let weight = lat.to_radians().cos();
            for &count in &self.counts[i] {
                total += weight;
                if count >= 1 {
                    covered += weight;
                }
            }
        }
        if total == 0.0 {
            0.0
        } else {
            covered / total
        }
    }

    /// Global cos-weighted covered fraction.
    pub fn covered_fraction(&self) -> f64 {
        self.covered_fraction_within(90.0)
    }

    /// Highest latitude (deg) with any coverage.
    pub fn max_covered_latitude(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for (i, &lat) in self.lats_deg.iter().enumerate() {
            if self.counts[i].iter().any(|&c| c >= 1) {
                best = Some(best.map_or(lat.abs(), |b: f64| b.max(lat.abs())));
            }
        }
        best
    }
}

/// Computes a coverage snapshot of a Walker constellation at time `t`.
///
/// The grid spans [-90, 90] x [-180, 180) degrees. Counts are integer and
/// independent of evaluation order.
pub fn coverage_map(
    consts: &PhysicalConstants,
    config: &WalkerConfig,
    t: f64,
    lat_step_deg: f64,
    lon_step_deg: f64,
    min_elevation: f64,
) -> Result<CoverageGrid> {
    let constellation = generate_walker(consts, config)?;
    coverage_map_of(consts, &constellation, t, lat_step_deg, lon_step_deg, min_elevation, 1)
}

/// Coverage snapshot for an arbitrary constellation.
///
/// Grid rows are distributed over `threads` workers; counts are integers
/// computed per point, so the result does not depend on the schedule.
pub fn coverage_map_of(
    consts: &PhysicalConstants,
    constellation: &Constellation,
    t: f64,
    lat_step_deg: f64,
    lon_step_deg: f64,
    min_elevation: f64,
    threads: usize,
) -> Result<CoverageGrid> {
    if !(lat_step_deg > 0.0 && lon_step_deg > 0.0) {
        return Err(Error::InvalidParameter("grid steps must be positive".into()));
    }
    if threads == 0 {
        return Err(Error::InvalidParameter("thread count must be at least 1".into()));
    }
    let states = constellation.states_at(consts, t)?;
    let positions: Vec<Vec3> = states.iter().map(|(_, s)| s.position).collect();

    let lat_count = (180.0 / lat_step_deg).round() as usize + 1;
    let lon_count = (360.0 / lon_step_deg).round() as usize;
    let lats_deg: Vec<f64> =
        (0..lat_count).map(|i| -90.0 + i as f64 * lat_step_deg).collect();
    let lons_deg: Vec<f64> =
        (0..lon_count).map(|j| -180.0 + j as f64 * lon_step_deg).collect();

    let sin_mask = min_elevation.sin();
    let count_row = |lat_deg: f64| -> Vec<u32> {
        let lat = lat_deg.to_radians();
        lons_deg
            .iter()
            .map(|&lon_deg| {
                let lon = lon_deg.to_radians();
                let point = Vec3::new(
                    consts.earth_radius * lat.cos() * lon.cos(),
                    consts.earth_radius * lat.cos() * lon.sin(),
                    consts.earth_radius * lat.sin(),
                );
                let up = point.normalized();
                positions
                    .iter()
                    .filter(|&&sat| in_view(point, up, sin_mask, sat))
                    .count() as u32
            })
            .collect()
    };

    let counts: Vec<Vec<u32>> = if threads == 1 {
        lats_deg.iter().map(|&lat| count_row(lat)).collect()
    } else {
        let workers = threads.min(lats_deg.len().max(1));
        let chunk = lats_deg.len().div_ceil(workers);
        let mut counts: Vec<Vec<u32>> = vec![Vec::new(); lats_deg.len()];
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for (index, lat_chunk) in lats_deg.chunks(chunk).enumerate() {
                let count_row = &count_row;
                handles.push((
                    index * chunk,
                    scope.spawn(move || {
                        lat_chunk.iter().map(|&lat| count_row(lat)).collect::<Vec<_>>()
                    }),
                ));
            }
            for (offset, handle) in handles {
                for (k, row) in handle.join().expect("coverage worker panicked").into_iter().enumerate()
                {
                    counts[offset + k] = row;
                }
            }
        });
        counts
    };

    Ok(CoverageGrid {
        lat_step_deg,
        lon_step_deg,
        min_elevation,
        timestamp: t,
        lats_deg,
        lons_deg,
        counts,
    })
}

/// Earth-central radius (rad) of the spherical cap a satellite at `altitude`
/// covers above elevation mask `min_elevation`:
/// acos(R*cos(e)/(R+h)) - e.
pub fn cap_radius(consts: &PhysicalConstants, altitude: f64, min_elevation: f64) -> f64 {
    let r_orbit = consts.earth_radius + altitude;
    (consts.earth_radius * min_elevation.cos() / r_orbit).acos() - min_elevation
}
