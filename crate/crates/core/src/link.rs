//! Antenna and link-budget computations for S-band LEO payloads.
//!
//! Gains follow the uniform circular-aperture model, beamwidth the
//! 58.9 * lambda / D approximation, and capacity the Shannon bound. The
//! carrier-to-noise density is quoted per MHz of EIRP density, which is the
//! convention the satellite profile figures are stated in.

use crate::access::AccessGeometry;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Boltzmann constant expressed in dBW/K/Hz.
pub const BOLTZMANN_DBW: f64 = -228.6;

/// Uniform circular-aperture beamwidth constant (degrees per lambda/D).
const BEAMWIDTH_CONSTANT_DEG: f64 = 58.9;

/// Circular-aperture antenna description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaModel {
    /// Aperture diameter (m).
    pub aperture_diameter: f64,
    /// Aperture efficiency, in (0, 1].
    pub efficiency: f64,
    /// Carrier frequency (Hz).
    pub carrier_freq: f64,
}

impl AntennaModel {
    pub fn new(aperture_diameter: f64, efficiency: f64, carrier_freq: f64) -> Result<Self> {
        if !(aperture_diameter.is_finite() && aperture_diameter > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "aperture diameter {aperture_diameter} m"
            )));
        }
        if !(efficiency > 0.0 && efficiency <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "aperture efficiency {efficiency} outside (0, 1]"
            )));
        }
        if !(carrier_freq.is_finite() && carrier_freq > 0.0) {
            return Err(Error::InvalidParameter(format!("carrier frequency {carrier_freq} Hz")));
        }
        Ok(Self { aperture_diameter, efficiency, carrier_freq })
    }

    fn wavelength(&self, consts: &PhysicalConstants) -> f64 {
        consts.light_speed / self.carrier_freq
    }
}

/// Peak gain of a circular aperture: 10*log10(eta * (pi * D / lambda)^2) dBi.
pub fn gain_from_aperture(consts: &PhysicalConstants, antenna: &AntennaModel) -> f64 {
    let ratio = std::f64::consts::PI * antenna.aperture_diameter / antenna.wavelength(consts);
    10.0 * (antenna.efficiency * ratio * ratio).log10()
}

/// 3 dB beamwidth of a circular aperture: 58.9 * lambda / D degrees.
pub fn beamwidth_from_aperture(consts: &PhysicalConstants, antenna: &AntennaModel) -> f64 {
    BEAMWIDTH_CONSTANT_DEG * antenna.wavelength(consts) / antenna.aperture_diameter
}

/// Nadir beam footprint diameter 2 * h * tan(theta/2) (m) for a beamwidth in
/// degrees.
pub fn beam_diameter_at_nadir(altitude: f64, beamwidth_3db_deg: f64) -> Result<f64> {
    if !(altitude.is_finite() && altitude > 0.0) {
        return Err(Error::InvalidParameter(format!("altitude {altitude} m")));
    }
    if !(beamwidth_3db_deg > 0.0 && beamwidth_3db_deg < 180.0) {
        return Err(Error::InvalidParameter(format!(
            "beamwidth {beamwidth_3db_deg} deg outside (0, 180)"
        )));
    }
    Ok(2.0 * altitude * (beamwidth_3db_deg.to_radians() / 2.0).tan())
}

/// Free-space path loss 20*log10(4*pi*d*f/c) dB.
///
/// Distances inside the near field (d < lambda / 4*pi) are rejected.
pub fn fspl(consts: &PhysicalConstants, distance: f64, freq: f64) -> Result<f64> {
    if !(freq.is_finite() && freq > 0.0) {
        return Err(Error::InvalidParameter(format!("frequency {freq} Hz")));
    }
    let lambda = consts.light_speed / freq;
    let near_field = lambda / (4.0 * std::f64::consts::PI);
    if !(distance.is_finite() && distance >= near_field) {
        return Err(Error::InvalidParameter(format!(
            "distance {distance} m is inside the near field (< {near_field:.3e} m)"
        )));
    }
    Ok(20.0 * (4.0 * std::f64::consts::PI * distance * freq / consts.light_speed).log10())
}

/// Satellite radio parameter set (one column of the S-band dimensioning
/// table).
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SatelliteRadioProfile {
    /// EIRP density (dBW/MHz).
    pub eirp_density: f64,
    /// Receive figure of merit G/T (dB/K).
    pub gt: f64,
    /// Tx/Rx peak antenna gain (dBi).
    pub tx_rx_max_gain: f64,
    /// 3 dB beamwidth (deg).
    pub beamwidth_3db: f64,
    /// Orbit altitude the profile is stated for (m).
    pub altitude: f64,
    /// Beam footprint diameter at nadir (m).
    pub beam_diameter_nadir: f64,
    pub label: String,
}

impl SatelliteRadioProfile {
    /// Validates finiteness and the nadir-footprint consistency relation
    /// beam_diameter = 2 * h * tan(theta/2) to within 1 km.
    pub fn new(
        eirp_density: f64,
        gt: f64,
        tx_rx_max_gain: f64,
        beamwidth_3db: f64,
        altitude: f64,
        beam_diameter_nadir: f64,
        label: impl Into<String>,
    ) -> Result<Self> {
        for (name, v) in [
            ("eirp_density", eirp_density),
            ("gt", gt),
            ("tx_rx_max_gain", tx_rx_max_gain),
            ("beamwidth_3db", beamwidth_3db),
            ("altitude", altitude),
            ("beam_diameter_nadir", beam_diameter_nadir),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("profile field {name} not finite")));
            }
        }
        let implied = beam_diameter_at_nadir(altitude, beamwidth_3db)?;
        if (implied - beam_diameter_nadir).abs() > 1e3 {
            return Err(Error::InvalidParameter(format!(
                "beam diameter {beam_diameter_nadir} m inconsistent with \
                 2*h*tan(theta/2) = {implied:.0} m"
            )));
        }
        Ok(Self {
            eirp_density,
            gt,
            tx_rx_max_gain,
            beamwidth_3db,
            altitude,
            beam_diameter_nadir,
            label: label.into(),
        })
    }

    /// S-band profile of a LEO satellite targeting IoT devices at 600 km:
    /// 0.4 m equivalent aperture, 28.3 dBW/MHz, 234 km nadir beam.
    pub fn leo600_iot() -> Self {
        Self::new(28.3, -12.8, 16.2, 22.1, 600e3, 234e3, "leo600-iot")
            .expect("preset is self-consistent")
    }

    /// S-band profile of a LEO satellite targeting handheld UEs at 600 km:
    /// 2 m equivalent aperture, 34 dBW/MHz, 46 km nadir beam.
    pub fn leo600_handheld() -> Self {
        Self::new(34.0, 1.1, 30.0, 4.4, 600e3, 46e3, "leo600-handheld")
            .expect("preset is self-consistent")
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "leo600-iot" => Some(Self::leo600_iot()),
            "leo600-handheld" => Some(Self::leo600_handheld()),
            _ => None,
        }
    }

    /// Parses a key-value profile file: one `name value` pair per line, `#`
    /// comments allowed. Keys are the profile field names; `label` is
    /// optional.
    pub fn from_key_value_text(text: &str) -> Result<Self> {
        let mut fields: std::collections::BTreeMap<&str, f64> = Default::default();
        let mut label = String::from("custom");
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once(char::is_whitespace).ok_or(Error::Parse {
                line: idx + 1,
                message: "expected `key value`".into(),
            })?;
            let value = value.trim();
            if key == "label" {
                label = value.to_string();
                continue;
            }
            let parsed: f64 = value.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("value {value:?} is not a number"),
            })?;
            fields.insert(
                match key {
                    "eirp_density" | "gt" | "tx_rx_max_gain" | "beamwidth_3db" | "altitude"
                    | "beam_diameter_nadir" => key,
                    other => {
                        return Err(Error::Parse {
                            line: idx + 1,
                            message: format!("unknown profile key {other:?}"),
                        })
                    }
                },
                parsed,
            );
        }
        let get = |key: &str| {
            fields.get(key).copied().ok_or_else(|| {
                Error::InvalidParameter(format!("profile is missing field {key:?}"))
            })
        };
        Self::new(
            get("eirp_density")?,
            get("gt")?,
            get("tx_rx_max_gain")?,
            get("beamwidth_3db")?,
            get("altitude")?,
            get("beam_diameter_nadir")?,
            label,
        )
    }
}

/// Downlink budget outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkResult {
    /// Free-space path loss (dB).
    pub fspl: f64,
    /// Carrier-to-noise density (dBHz), with the carrier taken per MHz of
    /// EIRP density.
    pub c_n0: f64,
    /// Signal-to-noise ratio over `bandwidth` (dB).
    pub snr: f64,
    /// Bandwidth the SNR and capacity refer to (Hz).
    pub bandwidth: f64,
    /// Shannon-bound capacity estimate (bit/s).
    pub capacity_estimate: f64,
}

/// Downlink C/N0, SNR, and Shannon capacity for a satellite profile and an
/// access geometry.
///
/// C/N0 = EIRP_density - FSPL - extra_losses + G/T_ue - 10*log10(k), with the
/// carrier power taken over one MHz of occupied spectrum (the per-MHz to
/// per-Hz factor of 60 dB folds against the bandwidth term consistently).
pub fn downlink_c_n0(
    consts: &PhysicalConstants,
    profile: &SatelliteRadioProfile,
    geometry: &AccessGeometry,
    ue_gt: f64,
    extra_losses: f64,
    bandwidth: f64,
) -> Result<LinkResult> {
    if !(bandwidth.is_finite() && bandwidth > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bandwidth {bandwidth} Hz required for SNR and capacity"
        )));
    }
    if !(ue_gt.is_finite() && extra_losses.is_finite()) {
        return Err(Error::InvalidParameter("non-finite UE G/T or losses".into()));
    }
    let path_loss = fspl(consts, geometry.slant_range, geometry.carrier_freq)?;
    let c_n0 = profile.eirp_density - path_loss - extra_losses + ue_gt - BOLTZMANN_DBW;
    let snr = c_n0 - 10.0 * bandwidth.log10();
    let snr_linear = 10f64.powf(snr / 10.0);
    let capacity_estimate = bandwidth * (1.0 + snr_linear).log2();
    Ok(LinkResult { fspl: path_loss, c_n0, snr, bandwidth, capacity_estimate })
}
