//! Orbit representation and propagation.
//!
//! Satellites are described either by six Keplerian elements or by a
//! position/velocity state at an epoch. Two propagation models are provided:
//! the analytic two-body solution (the prediction model a UE runs from
//! broadcast ephemeris) and a fixed-step RK4 integration of two-body + J2
//! zonal gravity (the higher-fidelity truth model the prediction is aged
//! against).

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::vec3::Vec3;
use std::f64::consts::TAU;

/// Kepler equation residual tolerance (rad).
const KEPLER_TOLERANCE: f64 = 1e-13;
const KEPLER_MAX_ITERATIONS: usize = 60;

/// Eccentricity below which an orbit is treated as circular when extracting
/// elements from a state vector (the argument of perigee is then folded into
/// the mean anomaly).
const NEAR_CIRCULAR_ECC: f64 = 1e-11;
/// sin(i) below which the node is undefined and RAAN is folded away.
const NEAR_EQUATORIAL_SIN_I: f64 = 1e-11;

/// Classical Keplerian elements; angles in radians, normalized to [0, 2*pi).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct OrbitalElements {
    /// Semi-major axis (m).
    pub semi_major_axis: f64,
    /// Eccentricity, 0 <= e < 1.
    pub eccentricity: f64,
    /// Inclination (rad), in [0, pi].
    pub inclination: f64,
    /// Right ascension of the ascending node (rad).
    pub raan: f64,
    /// Argument of perigee (rad).
    pub arg_perigee: f64,
    /// Mean anomaly at epoch (rad).
    pub mean_anomaly_epoch: f64,
    /// Epoch as simulation time (s).
    pub epoch: f64,
}

impl OrbitalElements {
    /// Validates ranges and normalizes the three angles to [0, 2*pi).
    ///
    /// Inclination endpoints 0 and pi are accepted inclusively.
    pub fn new(
        consts: &PhysicalConstants,
        semi_major_axis: f64,
        eccentricity: f64,
        inclination: f64,
        raan: f64,
        arg_perigee: f64,
        mean_anomaly_epoch: f64,
        epoch: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("semi_major_axis", semi_major_axis),
            ("eccentricity", eccentricity),
            ("inclination", inclination),
            ("raan", raan),
            ("arg_perigee", arg_perigee),
            ("mean_anomaly_epoch", mean_anomaly_epoch),
            ("epoch", epoch),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} is not finite")));
            }
        }
        if semi_major_axis <= consts.earth_radius {
            return Err(Error::InvalidParameter(format!(
                "semi-major axis {semi_major_axis} m must exceed the Earth radius {} m",
                consts.earth_radius
            )));
        }
        if !(0.0..1.0).contains(&eccentricity) {
            return Err(Error::InvalidParameter(format!(
                "eccentricity {eccentricity} outside [0, 1)"
            )));
        }
        if !(0.0..=std::f64::consts::PI).contains(&inclination) {
            return Err(Error::InvalidParameter(format!(
                "inclination {inclination} rad outside [0, pi]"
            )));
        }
        Ok(Self {
            semi_major_axis,
            eccentricity,
            inclination,
            raan: raan.rem_euclid(TAU),
            arg_perigee: arg_perigee.rem_euclid(TAU),
            mean_anomaly_epoch: mean_anomaly_epoch.rem_euclid(TAU),
            epoch,
        })
    }

    /// Circular orbit shorthand used by constellation generators.
    pub fn circular(
        consts: &PhysicalConstants,
        altitude: f64,
        inclination: f64,
        raan: f64,
        mean_anomaly_epoch: f64,
        epoch: f64,
    ) -> Result<Self> {
        Self::new(
            consts,
            consts.earth_radius + altitude,
            0.0,
            inclination,
            raan,
            0.0,
            mean_anomaly_epoch,
            epoch,
        )
    }

    /// Mean motion n = sqrt(mu / a^3) (rad/s).
    pub fn mean_motion(&self, consts: &PhysicalConstants) -> f64 {
        (consts.mu / self.semi_major_axis.powi(3)).sqrt()
    }

    /// Orbital period (s).
    pub fn period(&self, consts: &PhysicalConstants) -> f64 {
        TAU / self.mean_motion(consts)
    }
}

/// Position/velocity state at a time, tagged with its reference frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    /// Position (m).
    pub position: Vec3,
    /// Velocity (m/s).
    pub velocity: Vec3,
    pub frame: Frame,
    /// Simulation time (s).
    pub time: f64,
}

/// Broadcast ephemeris: an inertial state at a reference epoch from which a
/// UE predicts the satellite's motion with the two-body model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EphemerisRecord {
    pub state: StateVector,
    pub reference_epoch: f64,
}

impl EphemerisRecord {
    pub fn new(state: StateVector) -> Result<Self> {
        if state.frame != Frame::Inertial {
            return Err(Error::FrameMismatch { expected: Frame::Inertial, found: state.frame });
        }
        Ok(Self { state, reference_epoch: state.time })
    }

    /// Builds the record from elements by evaluating them at their epoch.
    pub fn from_elements(consts: &PhysicalConstants, elements: &OrbitalElements) -> Result<Self> {
        let state = kepler_to_state(consts, elements, elements.epoch)?;
        Self::new(state)
    }
}

/// Solves Kepler's equation E - e*sin(E) = M for the eccentric anomaly.
///
/// Newton iteration, converged to |residual| < 1e-13 rad for all e in [0, 1).
pub fn solve_kepler(mean_anomaly: f64, eccentricity: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&eccentricity) {
        return Err(Error::InvalidParameter(format!(
            "eccentricity {eccentricity} outside [0, 1)"
        )));
    }
    let m = mean_anomaly.rem_euclid(TAU);
    // Starting point: M itself for small e, pi for high e (Newton from pi is
    // globally convergent on the elliptic Kepler equation).
    let mut e_anom = if eccentricity < 0.8 { m } else { std::f64::consts::PI };
    for _ in 0..KEPLER_MAX_ITERATIONS {
        let f = e_anom - eccentricity * e_anom.sin() - m;
        if f.abs() < KEPLER_TOLERANCE {
            return Ok(e_anom);
        }
        e_anom -= f / (1.0 - eccentricity * e_anom.cos());
    }
    let f = e_anom - eccentricity * e_anom.sin() - m;
    if f.abs() < KEPLER_TOLERANCE {
        Ok(e_anom)
    } else {
        Err(Error::InvalidParameter(format!(
            "Kepler solver failed to converge: e={eccentricity}, M={m}, residual={f}"
        )))
    }
}

/// Analytic two-body propagation of Keplerian elements to time `t`.
///
/// Backward propagation is allowed within one orbital period of the epoch.
pub fn kepler_to_state(
    consts: &PhysicalConstants,
    elements: &OrbitalElements,
    t: f64,
) -> Result<StateVector> {
    if !t.is_finite() {
        return Err(Error::InvalidParameter("time is not finite".into()));
    }
    let period = elements.period(consts);
    if t < elements.epoch - period {
        return Err(Error::InvalidParameter(format!(
            "time {t} s precedes epoch {} s by more than one period {period} s",
            elements.epoch
        )));
    }
    let n = elements.mean_motion(consts);
    let m = elements.mean_anomaly_epoch + n * (t - elements.epoch);
    let e = elements.eccentricity;
    let e_anom = solve_kepler(m, e)?;

    let a = elements.semi_major_axis;
    let (sin_e, cos_e) = e_anom.sin_cos();
    let r = a * (1.0 - e * cos_e);
    // Perifocal coordinates: x toward perigee, y along motion at perigee.
    let x = a * (cos_e - e);
    let y = a * (1.0 - e * e).sqrt() * sin_e;
    let rate = (consts.mu * a).sqrt() / r;
    let vx = -rate * sin_e;
    let vy = rate * (1.0 - e * e).sqrt() * cos_e;

    let (position, velocity) = perifocal_to_inertial(
        elements.raan,
        elements.inclination,
        elements.arg_perigee,
        Vec3::new(x, y, 0.0),
        Vec3::new(vx, vy, 0.0),
    );
    Ok(StateVector { position, velocity, frame: Frame::Inertial, time: t })
}

fn perifocal_to_inertial(
    raan: f64,
    inclination: f64,
    arg_perigee: f64,
    r_pf: Vec3,
    v_pf: Vec3,
) -> (Vec3, Vec3) {
    let (sin_o, cos_o) = raan.sin_cos();
    let (sin_i, cos_i) = inclination.sin_cos();
    let (sin_w, cos_w) = arg_perigee.sin_cos();

    let row = |a: f64, b: f64, c: f64, v: Vec3| a * v.x + b * v.y + c * v.z;
    let rot = |v: Vec3| {
        Vec3::new(
            row(
                cos_o * cos_w - sin_o * sin_w * cos_i,
                -cos_o * sin_w - sin_o * cos_w * cos_i,
                sin_o * sin_i,
                v,
            ),
            row(
                sin_o * cos_w + cos_o * sin_w * cos_i,
                -sin_o * sin_w + cos_o * cos_w * cos_i,
                -cos_o * sin_i,
                v,
            ),
            row(sin_w * sin_i, cos_w * sin_i, cos_i, v),
        )
    };
    (rot(r_pf), rot(v_pf))
}

/// Extracts osculating Keplerian elements from an inertial state.
///
/// Near-singular cases are folded deterministically: for near-circular orbits
/// the argument of perigee is set to zero and absorbed into the mean anomaly;
/// for near-equatorial orbits RAAN is set to zero and absorbed into the
/// argument of perigee. Only elliptic states (e < 1) are supported.
pub fn elements_from_state(
    consts: &PhysicalConstants,
    state: &StateVector,
) -> Result<OrbitalElements> {
    if state.frame != Frame::Inertial {
        return Err(Error::FrameMismatch { expected: Frame::Inertial, found: state.frame });
    }
    let r = state.position;
    let v = state.velocity;
    let r_norm = r.norm();
    if r_norm <= consts.earth_radius {
        return Err(Error::BelowSurface { radius_m: r_norm });
    }

    let energy = v.norm_squared() / 2.0 - consts.mu / r_norm;
    if energy >= 0.0 {
        return Err(Error::InvalidParameter(
            "state is not on a bound elliptic orbit".into(),
        ));
    }
    let a = -consts.mu / (2.0 * energy);

    let h = r.cross(v);
    let h_norm = h.norm();
    let e_vec = v.cross(h) / consts.mu - r / r_norm;
    let e = e_vec.norm();
    if e >= 1.0 {
        return Err(Error::InvalidParameter(format!("eccentricity {e} >= 1")));
    }
    let inclination = (h.z / h_norm).clamp(-1.0, 1.0).acos();

    let node = Vec3::new(0.0, 0.0, 1.0).cross(h);
    let node_norm = node.norm();
    let equatorial = node_norm / h_norm < NEAR_EQUATORIAL_SIN_I;
    let circular = e < NEAR_CIRCULAR_ECC;

    // Reference direction in the orbit plane from which perigee is measured.
    let (raan, node_dir) = if equatorial {
        (0.0, Vec3::new(1.0, 0.0, 0.0))
    } else {
        (node.y.atan2(node.x).rem_euclid(TAU), node / node_norm)
    };
    // In-plane axis 90 degrees ahead of the node direction.
    let plane_y = (h / h_norm).cross(node_dir);

    let (arg_perigee, true_anomaly) = if circular {
        // Argument of latitude plays the role of the anomaly.
        let u = r.dot(plane_y).atan2(r.dot(node_dir));
        (0.0, u.rem_euclid(TAU))
    } else {
        let e_dir = e_vec / e;
        let w = e_vec.dot(plane_y).atan2(e_vec.dot(node_dir)).rem_euclid(TAU);
        let nu_sign = if r.dot(v) >= 0.0 { 1.0 } else { -1.0 };
        let nu = nu_sign * (e_dir.dot(r / r_norm)).clamp(-1.0, 1.0).acos();
        (w, nu.rem_euclid(TAU))
    };

    // True anomaly -> eccentric anomaly -> mean anomaly.
    let e_anom = 2.0
        * ((1.0 - e).sqrt() * (true_anomaly / 2.0).sin())
            .atan2((1.0 + e).sqrt() * (true_anomaly / 2.0).cos());
    let mean_anomaly = e_anom - e * e_anom.sin();

    OrbitalElements::new(consts, a, e, inclination, raan, arg_perigee, mean_anomaly, state.time)
}

/// Two-body propagation of an arbitrary inertial state by extracting its
/// osculating elements and advancing them analytically.
pub fn propagate_two_body(
    consts: &PhysicalConstants,
    state: &StateVector,
    dt: f64,
) -> Result<StateVector> {
    if dt == 0.0 {
        // The zero-horizon prediction is the identity; going through the
        // element extraction would only add round-off.
        return Ok(*state);
    }
    let elements = elements_from_state(consts, state)?;
    kepler_to_state(consts, &elements, state.time + dt)
}

/// Inertial gravitational acceleration: two-body plus the J2 zonal term.
pub fn gravity_acceleration(consts: &PhysicalConstants, position: Vec3) -> Vec3 {
    let r2 = position.norm_squared();
    let r = r2.sqrt();
    let mut acc = position * (-consts.mu / (r2 * r));
    if consts.j2 != 0.0 {
        let z2_r2 = (position.z / r).powi(2);
        let factor = -1.5 * consts.j2 * consts.mu * consts.earth_radius.powi(2) / (r2 * r2 * r);
        acc = acc
            + Vec3::new(
                factor * position.x * (1.0 - 5.0 * z2_r2),
                factor * position.y * (1.0 - 5.0 * z2_r2),
                factor * position.z * (3.0 - 5.0 * z2_r2),
            );
    }
    acc
}

/// Propagates an inertial state by `dt` seconds under two-body + J2 gravity
/// with a fixed-step 4th-order Runge-Kutta integrator.
///
/// With `consts.j2` set to zero this reduces to the two-body problem and
/// matches the analytic propagation. Step must be positive and at most 1 s;
/// the final step is shortened to land exactly on `dt`.
pub fn propagate_j2(
    consts: &PhysicalConstants,
    initial: &StateVector,
    dt: f64,
    step: f64,
) -> Result<StateVector> {
    if initial.frame != Frame::Inertial {
        return Err(Error::FrameMismatch { expected: Frame::Inertial, found: initial.frame });
    }
    if !(step.is_finite() && step > 0.0 && step <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "integrator step {step} s outside (0, 1]"
        )));
    }
    if !(dt.is_finite() && dt >= 0.0) {
        return Err(Error::InvalidParameter(format!("dt {dt} s must be non-negative")));
    }
    let r0 = initial.position.norm();
    if r0 <= consts.earth_radius {
        return Err(Error::BelowSurface { radius_m: r0 });
    }

    let mut r = initial.position;
    let mut v = initial.velocity;
    let mut elapsed = 0.0;
    while elapsed < dt {
        let h = step.min(dt - elapsed);

        let k1_r = v;
        let k1_v = gravity_acceleration(consts, r);
        let k2_r = v + k1_v * (h / 2.0);
        let k2_v = gravity_acceleration(consts, r + k1_r * (h / 2.0));
        let k3_r = v + k2_v * (h / 2.0);
        let k3_v = gravity_acceleration(consts, r + k2_r * (h / 2.0));
        let k4_r = v + k3_v * h;
        let k4_v = gravity_acceleration(consts, r + k3_r * h);

        r = r + (k1_r + 2.0 * k2_r + 2.0 * k3_r + k4_r) * (h / 6.0);
        v = v + (k1_v + 2.0 * k2_v + 2.0 * k3_v + k4_v) * (h / 6.0);
        elapsed += h;
    }
    Ok(StateVector { position: r, velocity: v, frame: Frame::Inertial, time: initial.time + dt })
}

/// One satellite record from a plain-text input file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteRecord {
    pub id: u32,
    pub elements: OrbitalElements,
}

/// Parses plain-text satellite records.
///
/// The first non-comment line may be a format directive, `format elements`
/// (default) or `format pv`. Element lines carry
/// `id a_m e i_rad raan_rad argp_rad M0_rad epoch_s`; PV lines carry
/// `id px py pz vx vy vz epoch_s` in SI units (inertial frame). PV records
/// are converted to osculating elements. Lines starting with `#` and blank
/// lines are ignored.
pub fn parse_satellite_records(
    consts: &PhysicalConstants,
    text: &str,
) -> Result<Vec<SatelliteRecord>> {
    #[derive(PartialEq)]
    enum Format {
        Elements,
        Pv,
    }
    let mut format: Option<Format> = None;
    let mut records = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if format.is_none() && fields[0] == "format" {
            format = Some(match fields.get(1).copied() {
                Some("elements") => Format::Elements,
                Some("pv") => Format::Pv,
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("unknown format {:?}, expected elements or pv", other),
                    })
                }
            });
            continue;
        }
        let format = format.get_or_insert(Format::Elements);

        if fields.len() != 8 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 8 whitespace-separated fields, got {}", fields.len()),
            });
        }
        let id: u32 = fields[0].parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("satellite id {:?} is not an unsigned integer", fields[0]),
        })?;
        let mut values = [0.0f64; 7];
        for (i, field) in fields[1..].iter().enumerate() {
            values[i] = field.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("field {:?} is not a number", field),
            })?;
        }
        let elements = match format {
            Format::Elements => OrbitalElements::new(
                consts, values[0], values[1], values[2], values[3], values[4], values[5],
                values[6],
            ),
            Format::Pv => {
                let state = StateVector {
                    position: Vec3::new(values[0], values[1], values[2]),
                    velocity: Vec3::new(values[3], values[4], values[5]),
                    frame: Frame::Inertial,
                    time: values[6],
                };
                elements_from_state(consts, &state)
            }
        }
        .map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?;
        records.push(SatelliteRecord { id, elements });
    }
    Ok(records)
}
