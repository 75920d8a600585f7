//! Instantaneous satellite-UE access geometry and pass prediction.
//!
//! Range, elevation, azimuth, one-way delay, Doppler, and the first time
//! derivatives of delay and Doppler, all evaluated in the earth-fixed frame
//! where a stationary UE has zero velocity. Sign convention: an approaching
//! satellite has negative range rate and positive Doppler.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::frames::{self, Frame};
use crate::orbit::{kepler_to_state, OrbitalElements, StateVector};
use crate::vec3::Vec3;
use std::f64::consts::TAU;

/// Bisection width for AOS/LOS refinement (s).
const PASS_REFINEMENT: f64 = 1e-3;

/// Ground position on the spherical Earth.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GeodeticPosition {
    /// Latitude (rad), in [-pi/2, pi/2].
    pub lat: f64,
    /// Longitude (rad).
    pub lon: f64,
    /// Altitude above the sphere (m).
    pub alt: f64,
}

impl GeodeticPosition {
    pub fn new(lat: f64, lon: f64, alt: f64) -> Result<Self> {
        if !(lat.is_finite() && lon.is_finite() && alt.is_finite()) {
            return Err(Error::InvalidParameter("non-finite geodetic position".into()));
        }
        if !(-std::f64::consts::FRAC_PI_2..=std::f64::consts::FRAC_PI_2).contains(&lat) {
            return Err(Error::InvalidParameter(format!(
                "latitude {lat} rad outside [-pi/2, pi/2]"
            )));
        }
        if alt < -500.0 {
            return Err(Error::InvalidParameter(format!("altitude {alt} m below -500 m")));
        }
        Ok(Self { lat, lon, alt })
    }

    pub fn from_degrees(lat_deg: f64, lon_deg: f64, alt_m: f64) -> Result<Self> {
        Self::new(lat_deg.to_radians(), lon_deg.to_radians(), alt_m)
    }

    /// Earth-fixed position vector.
    pub fn to_earth_fixed(&self, consts: &PhysicalConstants) -> Vec3 {
        // Range was validated at construction.
        frames::geodetic_to_earth_fixed(consts, self.lat, self.lon, self.alt)
            .expect("validated at construction")
    }
}

/// Instantaneous radio-relevant geometry between one satellite and one UE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccessGeometry {
    /// Line-of-sight distance (m).
    pub slant_range: f64,
    /// Elevation above the local horizon (rad); negative below the horizon.
    pub elevation: f64,
    /// Azimuth clockwise from north (rad), in [0, 2*pi).
    pub azimuth: f64,
    /// d/dt slant_range (m/s); negative while approaching.
    pub range_rate: f64,
    /// d^2/dt^2 slant_range (m/s^2), including the transverse v_perp^2/d term.
    pub range_accel: f64,
    /// slant_range / c (s).
    pub one_way_delay: f64,
    /// range_rate / c (s/s).
    pub delay_drift: f64,
    /// Doppler shift -(f/c) * range_rate (Hz) at `carrier_freq`.
    pub doppler: f64,
    /// Doppler drift -(f/c) * range_accel (Hz/s).
    pub doppler_drift: f64,
    /// Carrier frequency the Doppler fields refer to (Hz).
    pub carrier_freq: f64,
}

/// Computes the full access geometry for a satellite state in the earth-fixed
/// frame and a stationary UE.
///
/// The satellite's earth-fixed acceleration is reconstructed from two-body
/// gravity plus the centrifugal and Coriolis frame terms, which keeps
/// `range_accel` consistent with finite differences of the slant range along
/// a two-body trajectory. A satellite below the horizon is not an error; the
/// elevation simply comes out negative.
pub fn compute_access(
    consts: &PhysicalConstants,
    sat: &StateVector,
    ue: &GeodeticPosition,
    carrier_freq: f64,
) -> Result<AccessGeometry> {
    if sat.frame != Frame::EarthFixed {
        return Err(Error::FrameMismatch { expected: Frame::EarthFixed, found: sat.frame });
    }
    if !(carrier_freq.is_finite() && carrier_freq > 0.0) {
        return Err(Error::InvalidParameter(format!("carrier frequency {carrier_freq} Hz")));
    }
    let sat_radius = sat.position.norm();
    if sat_radius <= consts.earth_radius {
        return Err(Error::BelowSurface { radius_m: sat_radius });
    }

    let ue_pos = ue.to_earth_fixed(consts);
    let rel = sat.position - ue_pos;
    let range = rel.norm();
    if range < 1.0 {
        return Err(Error::InvalidParameter(
            "degenerate geometry: satellite coincides with the UE".into(),
        ));
    }
    let los = rel / range;

    // Stationary UE: relative velocity is the satellite's earth-fixed velocity.
    let range_rate = los.dot(sat.velocity);

    // Earth-fixed acceleration of the satellite = central gravity expressed in
    // the rotating frame minus Coriolis and centrifugal terms.
    let omega = Vec3::new(0.0, 0.0, consts.earth_rotation_rate);
    let gravity = sat.position * (-consts.mu / (sat_radius * sat_radius * sat_radius));
    let accel =
        gravity - 2.0 * omega.cross(sat.velocity) - omega.cross(omega.cross(sat.position));

    let v_perp_sq = sat.velocity.norm_squared() - range_rate * range_rate;
    let range_accel = (v_perp_sq + rel.dot(accel)) / range;

    let up = ue_pos.normalized();
    let elevation = los.dot(up).clamp(-1.0, 1.0).asin();
    let azimuth = azimuth_from(up, los);

    let c = consts.light_speed;
    Ok(AccessGeometry {
        slant_range: range,
        elevation,
        azimuth,
        range_rate,
        range_accel,
        one_way_delay: range / c,
        delay_drift: range_rate / c,
        doppler: -(carrier_freq * range_rate) / c,
        doppler_drift: -(carrier_freq * range_accel) / c,
        carrier_freq,
    })
}

/// Azimuth of the line of sight, clockwise from north.
fn azimuth_from(up: Vec3, los: Vec3) -> f64 {
    let z = Vec3::new(0.0, 0.0, 1.0);
    let mut east = z.cross(up);
    if east.norm() < 1e-12 {
        // At the poles every direction is north/south; pick a fixed basis.
        east = Vec3::new(0.0, 1.0, 0.0);
    } else {
        east = east.normalized();
    }
    let north = up.cross(east);
    los.dot(east).atan2(los.dot(north)).rem_euclid(TAU)
}

/// Maximum |Doppler| / carrier ratio for a circular orbit at `altitude` over
/// a non-rotating Earth: (v/c) * (R / (R + h)), attained at the horizon.
///
/// Altitude is restricted to the LEO band [350 km, 2000 km].
pub fn max_doppler_ratio(consts: &PhysicalConstants, altitude: f64) -> Result<f64> {
    if !(350e3..=2000e3).contains(&altitude) {
        return Err(Error::InvalidParameter(format!(
            "altitude {altitude} m outside the LEO band [350e3, 2000e3] m"
        )));
    }
    let r_orbit = consts.earth_radius + altitude;
    let v = consts.circular_speed(r_orbit);
    Ok((v / consts.light_speed) * (consts.earth_radius / r_orbit))
}

/// One satellite visibility interval above an elevation mask.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassWindow {
    /// Acquisition of signal (s).
    pub aos: f64,
    /// Loss of signal (s).
    pub los: f64,
    /// Peak elevation during the pass (rad).
    pub max_elevation: f64,
    /// Time of peak elevation (s).
    pub max_elevation_time: f64,
}

impl PassWindow {
    pub fn duration(&self) -> f64 {
        self.los - self.aos
    }
}

/// Finds every maximal interval within `window` where the satellite elevation
/// seen from `ue` is at or above `min_elevation`.
///
/// The elevation is sampled every `sample_step` seconds (at most 10 s) and
/// each crossing is refined by bisection to 1 ms. Passes already in progress
/// at the window edges are truncated to the window. Ties at exactly the mask
/// count as inside the pass.
pub fn find_passes(
    consts: &PhysicalConstants,
    elements: &OrbitalElements,
    ue: &GeodeticPosition,
    min_elevation: f64,
    window: (f64, f64),
    sample_step: f64,
) -> Result<Vec<PassWindow>> {
    let (t0, t1) = window;
    if !(t0.is_finite() && t1.is_finite()) || t1 <= t0 {
        return Err(Error::InvalidParameter(format!("empty or invalid window [{t0}, {t1}]")));
    }
    if !(sample_step.is_finite() && sample_step > 0.0 && sample_step <= 10.0) {
        return Err(Error::InvalidParameter(format!(
            "sample step {sample_step} s outside (0, 10]"
        )));
    }
    if sample_step > (t1 - t0) / 2.0 {
        return Err(Error::InvalidParameter(format!(
            "sample step {sample_step} s too coarse for window of {} s",
            t1 - t0
        )));
    }

    let elevation_at = |t: f64| -> Result<f64> {
        let inertial = kepler_to_state(consts, elements, t)?;
        let ef = frames::inertial_to_earth_fixed(consts, &inertial)?;
        Ok(compute_access(consts, &ef, ue, 1.0)?.elevation)
    };
    let above = |t: f64| -> Result<bool> { Ok(elevation_at(t)? >= min_elevation) };

    // Sample instants, always including t1 exactly.
    let mut times = Vec::new();
    let mut t = t0;
    while t < t1 {
        times.push(t);
        t += sample_step;
    }
    times.push(t1);

    // Bisection of the above/below boundary inside [lo, hi] where the state
    // differs; returns the crossing to within PASS_REFINEMENT seconds.
    let refine = |mut lo: f64, mut hi: f64, lo_above: bool| -> Result<f64> {
        while hi - lo > PASS_REFINEMENT {
            let mid = 0.5 * (lo + hi);
            if above(mid)? == lo_above {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    };

    let mut passes = Vec::new();
    let mut current_aos: Option<f64> = None;
    let mut prev_t = times[0];
    let mut prev_above = above(prev_t)?;
    if prev_above {
        current_aos = Some(t0);
    }
    for &tk in &times[1..] {
        let now_above = above(tk)?;
        if now_above != prev_above {
            let crossing = refine(prev_t, tk, prev_above)?;
            if now_above {
                current_aos = Some(crossing);
            } else if let Some(aos) = current_aos.take() {
                passes.push(close_pass(consts, elements, ue, aos, crossing, &elevation_at)?);
            }
        }
        prev_t = tk;
        prev_above = now_above;
    }
    if let Some(aos) = current_aos {
        passes.push(close_pass(consts, elements, ue, aos, t1, &elevation_at)?);
    }
    Ok(passes)
}

/// Builds a PassWindow, locating the elevation peak by golden-section search
/// seeded from the best coarse sample.
fn close_pass(
    _consts: &PhysicalConstants,
    _elements: &OrbitalElements,
    _ue: &GeodeticPosition,
    aos: f64,
    los: f64,
    elevation_at: &dyn Fn(f64) -> Result<f64>,
) -> Result<PassWindow> {
    // Coarse scan for the bracket.
    let n = 64;
    let mut best_t = aos;
    let mut best_el = elevation_at(aos)?;
    for k in 1..=n {
        let t = aos + (los - aos) * k as f64 / n as f64;
        let el = elevation_at(t)?;
        if el > best_el {
            best_el = el;
            best_t = t;
        }
    }
    let half = (los - aos) / n as f64;
    let (mut lo, mut hi) = ((best_t - half).max(aos), (best_t + half).min(los));
    // Golden-section search down to 1 ms.
    let inv_phi = 0.618_033_988_749_894_9_f64;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = elevation_at(x1)?;
    let mut f2 = elevation_at(x2)?;
    while hi - lo > PASS_REFINEMENT {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = elevation_at(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = elevation_at(x1)?;
        }
    }
    let peak_t = 0.5 * (lo + hi);
    let peak_el = elevation_at(peak_t)?;
    Ok(PassWindow {
        aos,
        los,
        max_elevation: peak_el.max(best_el),
        max_elevation_time: peak_t,
    })
}

/// Combined two-hop (UE - satellite - gateway) one-way path delay and drift.
pub fn combined_path_delay(
    consts: &PhysicalConstants,
    sat: &StateVector,
    ue: &GeodeticPosition,
    gateway: &GeodeticPosition,
    carrier_freq: f64,
) -> Result<(f64, f64)> {
    let service = compute_access(consts, sat, ue, carrier_freq)?;
    let feeder = compute_access(consts, sat, gateway, carrier_freq)?;
    Ok((
        service.one_way_delay + feeder.one_way_delay,
        service.delay_drift + feeder.delay_drift,
    ))
}

/// Extreme values observed over a synthetic overhead pass.
#[derive(Debug, Clone, Copy)]
pub struct OverheadPassExtremes {
    /// max |Doppler| (Hz) over the visible pass.
    pub max_abs_doppler: f64,
    /// max |Doppler| / carrier, dimensionless.
    pub max_doppler_ratio: f64,
    /// Closed-form supremum (v/c)(R/(R+h)) for reference.
    pub closed_form_ratio: f64,
    /// max |Doppler drift| (Hz/s).
    pub max_abs_doppler_drift: f64,
    /// max |delay drift| (s/s).
    pub max_abs_delay_drift: f64,
    /// One-way delay at the closest approach (s).
    pub min_delay: f64,
    /// One-way delay at the lowest sampled elevation (s).
    pub max_delay: f64,
}

/// Sweeps a polar-orbit pass directly over an equatorial UE and reports the
/// Doppler/delay extremes at `carrier_freq`.
///
/// The satellite crosses the UE zenith at t = 0; the sweep covers the whole
/// visible arc (elevation >= 0) at `sample_step` resolution in the
/// earth-fixed frame, so Earth rotation is included.
pub fn overhead_pass_extremes(
    consts: &PhysicalConstants,
    altitude: f64,
    carrier_freq: f64,
    sample_step: f64,
) -> Result<OverheadPassExtremes> {
    if !(sample_step.is_finite() && sample_step > 0.0) {
        return Err(Error::InvalidParameter(format!("sample step {sample_step}")));
    }
    let closed_form_ratio = max_doppler_ratio(consts, altitude)?;
    let elements =
        OrbitalElements::circular(consts, altitude, std::f64::consts::FRAC_PI_2, 0.0, 0.0, 0.0)?;
    let ue = GeodeticPosition::new(0.0, 0.0, 0.0)?;

    // Half the visible arc, padded: the Earth-central angle to the horizon is
    // acos(R / (R + h)).
    let r_orbit = consts.earth_radius + altitude;
    let horizon_angle = (consts.earth_radius / r_orbit).acos();
    let half_span = 1.2 * horizon_angle / elements.mean_motion(consts);

    let mut extremes = OverheadPassExtremes {
        max_abs_doppler: 0.0,
        max_doppler_ratio: 0.0,
        closed_form_ratio,
        max_abs_doppler_drift: 0.0,
        max_abs_delay_drift: 0.0,
        min_delay: f64::INFINITY,
        max_delay: 0.0,
    };
    let steps = (2.0 * half_span / sample_step).ceil() as usize;
    for k in 0..=steps {
        let t = -half_span + k as f64 * sample_step;
        let inertial = kepler_to_state(consts, &elements, t)?;
        let ef = frames::inertial_to_earth_fixed(consts, &inertial)?;
        let access = compute_access(consts, &ef, &ue, carrier_freq)?;
        if access.elevation < 0.0 {
            continue;
        }
        extremes.max_abs_doppler = extremes.max_abs_doppler.max(access.doppler.abs());
        extremes.max_abs_doppler_drift =
            extremes.max_abs_doppler_drift.max(access.doppler_drift.abs());
        extremes.max_abs_delay_drift =
            extremes.max_abs_delay_drift.max(access.delay_drift.abs());
        extremes.min_delay = extremes.min_delay.min(access.one_way_delay);
        extremes.max_delay = extremes.max_delay.max(access.one_way_delay);
    }
    extremes.max_doppler_ratio = extremes.max_abs_doppler / carrier_freq;
    Ok(extremes)
}

/// Worst-case combined UE/gateway one-way path delay drift (s/s) at a given
/// altitude, found by scanning ground points over the visibility cone and
/// maximizing each hop independently (the drifts add).
pub fn worst_case_combined_drift(
    consts: &PhysicalConstants,
    altitude: f64,
    grid_step_deg: f64,
) -> Result<f64> {
    if !(grid_step_deg.is_finite() && grid_step_deg > 0.0) {
        return Err(Error::InvalidParameter(format!("grid step {grid_step_deg} deg")));
    }
    let elements =
        OrbitalElements::circular(consts, altitude, std::f64::consts::FRAC_PI_2, 0.0, 0.0, 0.0)?;
    let inertial = kepler_to_state(consts, &elements, 0.0)?;
    let sat = frames::inertial_to_earth_fixed(consts, &inertial)?;

    let r_orbit = consts.earth_radius + altitude;
    let horizon_deg = (consts.earth_radius / r_orbit).acos().to_degrees();
    let (nadir_lat, nadir_lon, _) = frames::earth_fixed_to_geodetic(consts, sat.position);

    let mut best = 0.0f64;
    let mut lat_off = -horizon_deg;
    while lat_off <= horizon_deg {
        let mut lon_off = -horizon_deg;
        while lon_off <= horizon_deg {
            let lat = nadir_lat + lat_off.to_radians();
            let lon = nadir_lon + lon_off.to_radians();
            if lat.abs() <= std::f64::consts::FRAC_PI_2 {
                let ue = GeodeticPosition::new(lat, lon, 0.0)?;
                let access = compute_access(consts, &sat, &ue, 1.0)?;
                if access.elevation >= 0.0 {
                    best = best.max(access.delay_drift.abs());
                }
            }
            lon_off += grid_step_deg;
        }
        lat_off += grid_step_deg;
    }
    // Worst pair: both hops at their individual worst, same sign.
    Ok(2.0 * best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    /// Earth-fixed satellite state directly over (0, 0) at 600 km, moving
    /// north with the circular speed (polar orbit at the equator crossing).
    fn zenith_state(consts: &PhysicalConstants) -> StateVector {
        let elements = OrbitalElements::circular(
            consts,
            600e3,
            std::f64::consts::FRAC_PI_2,
            0.0,
            0.0,
            0.0,
        )
        .unwrap();
        let inertial = kepler_to_state(consts, &elements, 0.0).unwrap();
        frames::inertial_to_earth_fixed(consts, &inertial).unwrap()
    }

    #[test]
    fn zenith_geometry_has_hand_computed_delay() {
        let c = consts();
        let ue = GeodeticPosition::new(0.0, 0.0, 0.0).unwrap();
        let access = compute_access(&c, &zenith_state(&c), &ue, 2e9).unwrap();
        assert!((access.slant_range - 600e3).abs() < 1.0);
        assert!((access.one_way_delay - 2.0014e-3).abs() < 1e-6, "{}", access.one_way_delay);
        assert!((access.elevation.to_degrees() - 90.0).abs() < 1e-6);
    }

    #[test]
    fn closest_approach_doppler_zero_and_drift_near_paper_value() {
        let c = consts();
        let ue = GeodeticPosition::new(0.0, 0.0, 0.0).unwrap();
        let access = compute_access(&c, &zenith_state(&c), &ue, 2e9).unwrap();
        assert!(access.range_rate.abs() < 1.0, "range rate {}", access.range_rate);
        assert!(access.doppler.abs() < 10.0);
        // Full second derivative at 600 km / 2 GHz: within 10% of 641 Hz/s.
        let drift = access.doppler_drift.abs();
        assert!(
            (576.9..=705.1).contains(&drift),
            "Doppler drift {drift} Hz/s outside 641 +- 10%"
        );
        assert!(access.doppler_drift < 0.0, "drift must be negative at closest approach");
    }

    #[test]
    fn horizon_delays_match_right_triangle_geometry() {
        let c = consts();
        for (alt, expect_ms) in [(600e3, 9.44), (2000e3, 18.11)] {
            let r = c.earth_radius + alt;
            let range = (r * r - c.earth_radius * c.earth_radius).sqrt();
            let delay = range / c.light_speed;
            assert!(
                (delay * 1e3 - expect_ms).abs() < 0.05,
                "alt {alt}: delay {delay}"
            );
        }
    }

    #[test]
    fn zero_elevation_geometry_through_compute_access() {
        let c = consts();
        // Satellite over the equator, UE at the Earth-central angle where the
        // elevation is exactly zero: cos(angle) = R / (R + h).
        let angle = (c.earth_radius / (c.earth_radius + 600e3)).acos();
        let ue = GeodeticPosition::new(angle, 0.0, 0.0).unwrap();
        let access = compute_access(&c, &zenith_state(&c), &ue, 2e9).unwrap();
        assert!(access.elevation.abs() < 1e-3, "elevation {}", access.elevation);
        assert!((access.one_way_delay * 1e3 - 9.44).abs() < 0.02);
    }

    #[test]
    fn approaching_satellite_has_positive_doppler() {
        let c = consts();
        // UE ahead of the satellite along its (northward) track.
        let ue = GeodeticPosition::new(0.2, 0.0, 0.0).unwrap();
        let access = compute_access(&c, &zenith_state(&c), &ue, 2e9).unwrap();
        assert!(access.range_rate < 0.0);
        assert!(access.doppler > 0.0);
        assert!(access.delay_drift < 0.0);
    }

    #[test]
    fn azimuth_is_clockwise_from_north() {
        let c = consts();
        let sat = zenith_state(&c);
        // Satellite over (0, 0); a UE to the south looks north, a UE to the
        // west looks east.
        let south = GeodeticPosition::new(-0.1, 0.0, 0.0).unwrap();
        let az_north = compute_access(&c, &sat, &south, 2e9).unwrap().azimuth;
        assert!(az_north.to_degrees() < 1.0 || az_north.to_degrees() > 359.0);
        let west = GeodeticPosition::new(0.0, -0.1, 0.0).unwrap();
        let az_east = compute_access(&c, &sat, &west, 2e9).unwrap().azimuth;
        assert!((az_east.to_degrees() - 90.0).abs() < 1.0, "azimuth {}", az_east.to_degrees());
    }

    #[test]
    fn doppler_sign_identity() {
        let c = consts();
        let ue = GeodeticPosition::new(0.1, 0.05, 0.0).unwrap();
        let access = compute_access(&c, &zenith_state(&c), &ue, 2e9).unwrap();
        // The identity holds in the exact form the field is defined by.
        let recomputed = -(access.carrier_freq * access.range_rate) / c.light_speed;
        assert_eq!(access.doppler, recomputed);
    }

    #[test]
    fn max_doppler_ratio_at_600km_is_23ppm() {
        let c = consts();
        let ratio = max_doppler_ratio(&c, 600e3).unwrap() * 1e6;
        assert!((22.0..=26.0).contains(&ratio), "ratio {ratio} ppm");
        assert!((ratio - 23.05).abs() < 0.1, "ratio {ratio} ppm");
    }

    #[test]
    fn max_doppler_ratio_monotone_in_altitude() {
        let c = consts();
        let low = max_doppler_ratio(&c, 350e3).unwrap();
        let high = max_doppler_ratio(&c, 2000e3).unwrap();
        assert!(low > high);
    }

    #[test]
    fn max_doppler_ratio_rejects_outside_leo_band() {
        let c = consts();
        let err = max_doppler_ratio(&c, 300e3).unwrap_err();
        assert!(err.to_string().contains("350e3"), "message: {err}");
        assert!(max_doppler_ratio(&c, 2100e3).is_err());
    }

    #[test]
    fn brute_force_pass_sweep_matches_closed_form_ratio() {
        // Independent oracle: 2-D in-plane geometry over a non-rotating Earth,
        // range finite-differenced at 1 ms.
        let c = consts();
        let altitude = 600e3;
        let r_orbit = c.earth_radius + altitude;
        let n = (c.mu / r_orbit.powi(3)).sqrt();
        let dt = 1e-3;
        let horizon = (c.earth_radius / r_orbit).acos();
        let range_at = |t: f64| {
            let theta = n * t;
            let sat = Vec3::new(r_orbit * theta.cos(), r_orbit * theta.sin(), 0.0);
            (sat - Vec3::new(c.earth_radius, 0.0, 0.0)).norm()
        };
        let mut max_rate: f64 = 0.0;
        let span = horizon / n;
        let samples = 2000;
        for k in 0..=samples {
            let t = -span + 2.0 * span * k as f64 / samples as f64;
            let theta = (n * t).abs();
            if theta > horizon {
                continue;
            }
            let rate = (range_at(t + dt) - range_at(t - dt)) / (2.0 * dt);
            max_rate = max_rate.max(rate.abs());
        }
        let ratio = max_rate / c.light_speed;
        let closed = max_doppler_ratio(&c, altitude).unwrap();
        let rel = (ratio - closed).abs() / closed;
        assert!(rel < 5e-3, "brute force {ratio}, closed form {closed}, rel {rel}");
    }

    #[test]
    fn overhead_pass_extremes_land_in_paper_bands() {
        let c = consts();
        let ext = overhead_pass_extremes(&c, 600e3, 2e9, 0.05).unwrap();
        let ppm = ext.max_doppler_ratio * 1e6;
        assert!((22.0..=26.0).contains(&ppm), "ppm {ppm}");
        assert!(
            (44e3..=52e3).contains(&ext.max_abs_doppler),
            "max doppler {}",
            ext.max_abs_doppler
        );
        assert!(
            (580.0..=700.0).contains(&ext.max_abs_doppler_drift),
            "max drift {}",
            ext.max_abs_doppler_drift
        );
        // One-way delay spans ~2 ms (zenith) to ~9.4 ms (horizon).
        assert!((ext.min_delay - 2.0014e-3).abs() < 2e-5);
        assert!((ext.max_delay - 9.44e-3).abs() < 2e-4);
    }

    #[test]
    fn find_passes_counts_a_central_pass() {
        let c = consts();
        let elements = OrbitalElements::circular(
            &c,
            600e3,
            std::f64::consts::FRAC_PI_2,
            0.0,
            0.0,
            0.0,
        )
        .unwrap();
        let ue = GeodeticPosition::new(0.0, 0.0, 0.0).unwrap();
        let passes = find_passes(
            &c,
            &elements,
            &ue,
            30f64.to_radians(),
            (-400.0, 400.0),
            1.0,
        )
        .unwrap();
        assert_eq!(passes.len(), 1);
        let pass = &passes[0];
        let duration = pass.duration();
        assert!(
            (180.0..=300.0).contains(&duration),
            "30-degree pass duration {duration} s"
        );
        assert!(pass.max_elevation.to_degrees() > 80.0);
        assert!(pass.aos < pass.max_elevation_time && pass.max_elevation_time < pass.los);
    }

    #[test]
    fn ninety_degree_mask_yields_no_passes() {
        let c = consts();
        let elements = OrbitalElements::circular(
            &c,
            600e3,
            std::f64::consts::FRAC_PI_2,
            0.0,
            0.0,
            0.0,
        )
        .unwrap();
        // Generic geometry: UE off the ground track.
        let ue = GeodeticPosition::new(0.3, 0.5, 0.0).unwrap();
        let passes = find_passes(
            &c,
            &elements,
            &ue,
            std::f64::consts::FRAC_PI_2,
            (0.0, 6000.0),
            5.0,
        )
        .unwrap();
        assert!(passes.is_empty());
    }

    #[test]
    fn pass_edges_agree_with_dense_sampling() {
        let c = consts();
        let elements = OrbitalElements::circular(
            &c,
            600e3,
            std::f64::consts::FRAC_PI_2,
            0.0,
            0.0,
            0.0,
        )
        .unwrap();
        let ue = GeodeticPosition::new(0.05, 0.02, 0.0).unwrap();
        let mask = 10f64.to_radians();
        let window = (-600.0, 600.0);
        let passes = find_passes(&c, &elements, &ue, mask, window, 2.0).unwrap();
        assert_eq!(passes.len(), 1);

        // Dense 10 ms oracle.
        let elevation_at = |t: f64| {
            let inertial = kepler_to_state(&c, &elements, t).unwrap();
            let ef = frames::inertial_to_earth_fixed(&c, &inertial).unwrap();
            compute_access(&c, &ef, &ue, 1.0).unwrap().elevation
        };
        let mut first_above = None;
        let mut last_above = None;
        let mut t = window.0;
        while t <= window.1 {
            if elevation_at(t) >= mask {
                if first_above.is_none() {
                    first_above = Some(t);
                }
                last_above = Some(t);
            }
            t += 0.01;
        }
        assert!((passes[0].aos - first_above.unwrap()).abs() <= 0.02);
        assert!((passes[0].los - last_above.unwrap()).abs() <= 0.02);
    }

    #[test]
    fn pass_window_partitions_visibility() {
        let c = consts();
        let elements = OrbitalElements::circular(
            &c,
            600e3,
            std::f64::consts::FRAC_PI_2,
            0.0,
            0.0,
            0.0,
        )
        .unwrap();
        let ue = GeodeticPosition::new(0.1, -0.03, 0.0).unwrap();
        let mask = 15f64.to_radians();
        let passes =
            find_passes(&c, &elements, &ue, mask, (-700.0, 700.0), 2.0).unwrap();
        assert_eq!(passes.len(), 1);
        let p = &passes[0];
        let elevation_at = |t: f64| {
            let inertial = kepler_to_state(&c, &elements, t).unwrap();
            let ef = frames::inertial_to_earth_fixed(&c, &inertial).unwrap();
            compute_access(&c, &ef, &ue, 1.0).unwrap().elevation
        };
        assert!(elevation_at(0.5 * (p.aos + p.los)) >= mask);
        assert!(elevation_at(p.aos - 1.0) < mask);
        assert!(elevation_at(p.los + 1.0) < mask);
    }

    #[test]
    fn find_passes_rejects_bad_windows() {
        let c = consts();
        let elements =
            OrbitalElements::circular(&c, 600e3, 1.0, 0.0, 0.0, 0.0).unwrap();
        let ue = GeodeticPosition::new(0.0, 0.0, 0.0).unwrap();
        assert!(find_passes(&c, &elements, &ue, 0.1, (10.0, 10.0), 1.0).is_err());
        assert!(find_passes(&c, &elements, &ue, 0.1, (0.0, 100.0), 11.0).is_err());
        assert!(find_passes(&c, &elements, &ue, 0.1, (0.0, 4.0), 3.0).is_err());
    }

    #[test]
    fn colocated_gateway_doubles_delay_and_drift() {
        let c = consts();
        let ue = GeodeticPosition::new(0.15, 0.0, 0.0).unwrap();
        let sat = zenith_state(&c);
        let single = compute_access(&c, &sat, &ue, 2e9).unwrap();
        let (delay, drift) = combined_path_delay(&c, &sat, &ue, &ue, 2e9).unwrap();
        assert_eq!(delay, 2.0 * single.one_way_delay);
        assert_eq!(drift, 2.0 * single.delay_drift);
    }

    #[test]
    fn zenith_of_both_endpoints_gives_zero_drift() {
        let c = consts();
        let ue = GeodeticPosition::new(0.0, 0.0, 0.0).unwrap();
        let (_, drift) = combined_path_delay(&c, &zenith_state(&c), &ue, &ue, 2e9).unwrap();
        assert!(drift.abs() < 2.0 / c.light_speed, "drift {drift}");
    }

    #[test]
    fn worst_pair_drift_approaches_46_us_per_s() {
        let c = consts();
        let drift = worst_case_combined_drift(&c, 600e3, 0.5).unwrap() * 1e6;
        assert!((40.0..=50.0).contains(&drift), "combined drift {drift} us/s");
    }
}
