//! UE-side pre-compensation of uplink timing and frequency.
//!
//! A GNSS-equipped UE combines its own position with broadcast ephemeris to
//! predict the service-link delay and Doppler, applies a timing advance equal
//! to the service-link round trip and an uplink frequency adjustment equal to
//! minus the predicted Doppler, and tracks how the prediction degrades as the
//! ephemeris ages: the truth model is J2-perturbed, the UE prediction is
//! two-body.

use crate::access::{compute_access, GeodeticPosition};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::frames;
use crate::orbit::{propagate_j2, propagate_two_body, EphemerisRecord, StateVector};

/// Truth-model integrator step (s).
const TRUTH_STEP: f64 = 1.0;

/// Radio compliance limits the residual errors are judged against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplianceThresholds {
    /// OFDM cyclic prefix the timing error must stay within (s).
    pub cyclic_prefix: f64,
    /// Uplink frequency tolerance (ppm of the carrier).
    pub ul_freq_tolerance_ppm: f64,
    /// Typical free-running UE oscillator error (ppm), reporting only.
    pub ue_oscillator_error_ppm: f64,
}

impl Default for ComplianceThresholds {
    fn default() -> Self {
        Self { cyclic_prefix: 4.7e-6, ul_freq_tolerance_ppm: 0.1, ue_oscillator_error_ppm: 10.0 }
    }
}

impl ComplianceThresholds {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("cyclic_prefix", self.cyclic_prefix),
            ("ul_freq_tolerance_ppm", self.ul_freq_tolerance_ppm),
            ("ue_oscillator_error_ppm", self.ue_oscillator_error_ppm),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("threshold {name} = {v}")));
            }
        }
        Ok(())
    }
}

/// Timing advance and frequency adjustment a UE applies before transmitting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UePrecompState {
    /// Uplink timing advance: the service-link round trip 2*d/c (s).
    pub timing_advance: f64,
    /// Uplink frequency adjustment: minus the predicted Doppler (Hz).
    pub freq_adjustment: f64,
    /// Age of the ephemeris the prediction was made from (s).
    pub ephemeris_age: f64,
    /// Ephemeris the state was derived from.
    pub basis: EphemerisRecord,
}

/// Ephemeris-aging error sample: absolute line-of-sight delay and Doppler
/// prediction errors at a given age.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictionErrorSample {
    /// Prediction horizon / ephemeris age (s).
    pub age: f64,
    /// |delay_truth - delay_predicted| (s).
    pub delay_error: f64,
    /// (carrier/c) * |range_rate_truth - range_rate_predicted| (Hz).
    pub doppler_error: f64,
}

/// Derives the UE pre-compensation state at time `t` from broadcast
/// ephemeris, using the two-body prediction model.
///
/// Fails with an out-of-coverage error when the predicted satellite is below
/// the UE's horizon at `t`.
pub fn compute_precomp(
    consts: &PhysicalConstants,
    eph: &EphemerisRecord,
    ue: &GeodeticPosition,
    t: f64,
    carrier_ul: f64,
) -> Result<UePrecompState> {
    if t < eph.reference_epoch {
        return Err(Error::InvalidParameter(format!(
            "prediction time {t} s precedes the ephemeris epoch {} s",
            eph.reference_epoch
        )));
    }
    let predicted = propagate_two_body(consts, &eph.state, t - eph.reference_epoch)?;
    let ef = frames::inertial_to_earth_fixed(consts, &predicted)?;
    let access = compute_access(consts, &ef, ue, carrier_ul)?;
    if access.elevation < 0.0 {
        return Err(Error::OutOfCoverage(format!(
            "satellite {:.2} deg below the horizon at t = {t} s",
            -access.elevation.to_degrees()
        )));
    }
    Ok(UePrecompState {
        timing_advance: 2.0 * access.one_way_delay,
        freq_adjustment: -access.doppler,
        ephemeris_age: t - eph.reference_epoch,
        basis: *eph,
    })
}

/// Truth and predicted earth-fixed states at an ephemeris age.
fn truth_and_prediction(
    consts: &PhysicalConstants,
    eph: &EphemerisRecord,
    age: f64,
) -> Result<(StateVector, StateVector)> {
    let truth = propagate_j2(consts, &eph.state, age, TRUTH_STEP)?;
    let predicted = propagate_two_body(consts, &eph.state, age)?;
    Ok((
        frames::inertial_to_earth_fixed(consts, &truth)?,
        frames::inertial_to_earth_fixed(consts, &predicted)?,
    ))
}

/// Prediction error against the J2 truth for one UE at one age.
fn error_sample_at(
    consts: &PhysicalConstants,
    truth_ef: &StateVector,
    predicted_ef: &StateVector,
    ue: &GeodeticPosition,
    age: f64,
    carrier: f64,
) -> Result<PredictionErrorSample> {
    let truth = compute_access(consts, truth_ef, ue, carrier)?;
    let predicted = compute_access(consts, predicted_ef, ue, carrier)?;
    Ok(PredictionErrorSample {
        age,
        delay_error: (truth.one_way_delay - predicted.one_way_delay).abs(),
        doppler_error: (carrier / consts.light_speed)
            * (truth.range_rate - predicted.range_rate).abs(),
    })
}

/// Delay and Doppler prediction errors versus ephemeris age.
///
/// For each age the J2 truth and the two-body prediction are propagated from
/// the same initial state and compared along each trajectory's own line of
/// sight to each UE; the worst case over the supplied UEs is reported. UEs
/// that do not see the truth satellite above `min_elevation` at that age are
/// skipped. Ages must be non-negative.
pub fn prediction_error_curve(
    consts: &PhysicalConstants,
    eph: &EphemerisRecord,
    ues: &[GeodeticPosition],
    ages: &[f64],
    carrier: f64,
    min_elevation: f64,
) -> Result<Vec<PredictionErrorSample>> {
    if ues.is_empty() {
        return Err(Error::InvalidParameter("no UE positions supplied".into()));
    }
    let mut samples = Vec::with_capacity(ages.len());
    for &age in ages {
        if !(age.is_finite() && age >= 0.0) {
            return Err(Error::InvalidParameter(format!("negative ephemeris age {age} s")));
        }
        let (truth_ef, predicted_ef) = truth_and_prediction(consts, eph, age)?;
        let mut worst = PredictionErrorSample { age, delay_error: 0.0, doppler_error: 0.0 };
        let mut seen = false;
        for ue in ues {
            let truth_access = compute_access(consts, &truth_ef, ue, carrier)?;
            if truth_access.elevation < min_elevation {
                continue;
            }
            seen = true;
            let sample = error_sample_at(consts, &truth_ef, &predicted_ef, ue, age, carrier)?;
            worst.delay_error = worst.delay_error.max(sample.delay_error);
            worst.doppler_error = worst.doppler_error.max(sample.doppler_error);
        }
        if !seen {
            return Err(Error::OutOfCoverage(format!(
                "no supplied UE sees the satellite above the mask at age {age} s"
            )));
        }
        samples.push(worst);
    }
    Ok(samples)
}

/// Ground grid covering the satellite's visibility cap at a given instant.
///
/// Points are laid out on a regular lat/lon grid of `resolution_deg` around
/// the sub-satellite point and filtered to elevation >= `min_elevation`.
pub fn visibility_grid(
    consts: &PhysicalConstants,
    sat_ef: &StateVector,
    min_elevation: f64,
    resolution_deg: f64,
) -> Result<Vec<GeodeticPosition>> {
    if !(resolution_deg.is_finite() && resolution_deg > 0.0) {
        return Err(Error::InvalidParameter(format!("grid resolution {resolution_deg} deg")));
    }
    let (nadir_lat, nadir_lon, alt) = frames::earth_fixed_to_geodetic(consts, sat_ef.position);
    if alt <= 0.0 {
        return Err(Error::BelowSurface { radius_m: sat_ef.position.norm() });
    }
    // Earth-central radius of the visibility cap for the mask.
    let r_orbit = consts.earth_radius + alt;
    let cap = (consts.earth_radius * min_elevation.cos() / r_orbit).acos() - min_elevation;
    let span_deg = (cap.to_degrees() + resolution_deg).ceil();

    let mut points = Vec::new();
    let steps = (2.0 * span_deg / resolution_deg).ceil() as i64;
    for i in 0..=steps {
        let lat = nadir_lat + (-span_deg + i as f64 * resolution_deg).to_radians();
        if lat.abs() > std::f64::consts::FRAC_PI_2 {
            continue;
        }
        for j in 0..=steps {
            let lon = nadir_lon + (-span_deg + j as f64 * resolution_deg).to_radians();
            let ue = GeodeticPosition::new(lat, lon, 0.0)?;
            let access = compute_access(consts, sat_ef, &ue, 1.0)?;
            if access.elevation >= min_elevation {
                points.push(ue);
            }
        }
    }
    Ok(points)
}

/// Worst-case prediction error curve over the 5-degree-masked visibility cap
/// sampled at 1-degree resolution (the cap is re-centered at every age).
pub fn prediction_error_curve_worst_case(
    consts: &PhysicalConstants,
    eph: &EphemerisRecord,
    ages: &[f64],
    carrier: f64,
) -> Result<Vec<PredictionErrorSample>> {
    let mask = 5f64.to_radians();
    let mut samples = Vec::with_capacity(ages.len());
    for &age in ages {
        if !(age.is_finite() && age >= 0.0) {
            return Err(Error::InvalidParameter(format!("negative ephemeris age {age} s")));
        }
        let (truth_ef, predicted_ef) = truth_and_prediction(consts, eph, age)?;
        let grid = visibility_grid(consts, &truth_ef, mask, 1.0)?;
        let mut worst = PredictionErrorSample { age, delay_error: 0.0, doppler_error: 0.0 };
        for ue in &grid {
            let sample = error_sample_at(consts, &truth_ef, &predicted_ef, ue, age, carrier)?;
            worst.delay_error = worst.delay_error.max(sample.delay_error);
            worst.doppler_error = worst.doppler_error.max(sample.doppler_error);
        }
        samples.push(worst);
    }
    Ok(samples)
}

/// Pass/fail report of a prediction error sample against compliance limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplianceReport {
    /// delay_error < cyclic_prefix.
    pub cp_pass: bool,
    /// doppler_error < ppm tolerance * carrier.
    pub freq_pass: bool,
    /// cyclic_prefix - delay_error (s).
    pub delay_margin: f64,
    /// Frequency limit - doppler_error (Hz).
    pub freq_margin: f64,
    /// Absolute frequency limit applied (Hz).
    pub freq_limit: f64,
    /// Downlink compound frequency error: Doppler error plus the free-running
    /// oscillator uncertainty (Hz), reporting only.
    pub compound_freq_error: f64,
}

/// Checks a prediction error sample against the compliance thresholds at a
/// given carrier.
pub fn check_compliance(
    sample: &PredictionErrorSample,
    thresholds: &ComplianceThresholds,
    carrier: f64,
) -> ComplianceReport {
    let freq_limit = thresholds.ul_freq_tolerance_ppm * 1e-6 * carrier;
    ComplianceReport {
        cp_pass: sample.delay_error < thresholds.cyclic_prefix,
        freq_pass: sample.doppler_error < freq_limit,
        delay_margin: thresholds.cyclic_prefix - sample.delay_error,
        freq_margin: freq_limit - sample.doppler_error,
        freq_limit,
        compound_freq_error: sample.doppler_error
            + thresholds.ue_oscillator_error_ppm * 1e-6 * carrier,
    }
}

/// Residual uplink misalignment between two UEs served by the same satellite.
///
/// Offsets are arrival differences at the receiving node in the first-order
/// Doppler model. Without pre-compensation the frequency offset is the
/// UE-pair Doppler difference and the timing offset is the round-trip delay
/// difference; with ideal pre-compensation (exact ephemeris, zero age) both
/// offsets vanish identically.
pub fn residual_uplink_misalignment(
    consts: &PhysicalConstants,
    ue_a: &GeodeticPosition,
    ue_b: &GeodeticPosition,
    sat: &StateVector,
    carrier: f64,
    with_precomp: bool,
) -> Result<(f64, f64)> {
    let a = compute_access(consts, sat, ue_a, carrier)?;
    let b = compute_access(consts, sat, ue_b, carrier)?;
    if a.elevation < 0.0 || b.elevation < 0.0 {
        return Err(Error::OutOfCoverage("both UEs must see the satellite".into()));
    }
    if with_precomp {
        // Each UE applies its own exact (-doppler, 2*delay) correction; the
        // residuals cancel term by term.
        let freq = (a.doppler - a.doppler) - (b.doppler - b.doppler);
        let time = (2.0 * a.one_way_delay - 2.0 * a.one_way_delay)
            - (2.0 * b.one_way_delay - 2.0 * b.one_way_delay);
        Ok((freq, time))
    } else {
        Ok((a.doppler - b.doppler, 2.0 * (a.one_way_delay - b.one_way_delay)))
    }
}
