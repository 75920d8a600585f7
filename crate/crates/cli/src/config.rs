//! Scenario configuration: JSON schema, validation, and resolution against
//! presets and command-line overrides.
//!
//! Unknown keys are rejected everywhere; a config that parses is a config
//! the run will honor, and the manifest echoes it back fully resolved.

use leosim_core::access::GeodeticPosition;
use leosim_core::coverage::{Constellation, WalkerConfig};
use leosim_core::link::SatelliteRadioProfile;
use leosim_core::mobility::{CellPattern, ChoCondition, TrackingAreaConfig};
use leosim_core::orbit::parse_satellite_records;
use leosim_core::scenario;
use leosim_core::PhysicalConstants;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Error split the exit codes are derived from: bad configuration versus a
/// failure while running a valid scenario.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Runtime(msg) => write!(f, "runtime error: {msg}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn runtime_err(msg: impl Into<String>) -> CliError {
    CliError::Runtime(msg.into())
}

/// Ground position in degrees, as written in config files.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundPoint {
    pub lat_deg: f64,
    pub lon_deg: f64,
    #[serde(default)]
    pub alt_m: f64,
}

impl GroundPoint {
    pub fn to_geodetic(&self) -> CliResult<GeodeticPosition> {
        GeodeticPosition::from_degrees(self.lat_deg, self.lon_deg, self.alt_m)
            .map_err(|e| config_err(e.to_string()))
    }
}

/// Walker shell in config units (degrees / meters).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkerSpec {
    pub total_satellites: u32,
    pub planes: u32,
    #[serde(default)]
    pub phasing_factor: u32,
    pub inclination_deg: f64,
    pub altitude_m: f64,
}

impl WalkerSpec {
    pub fn to_config(self) -> WalkerConfig {
        WalkerConfig {
            total_satellites: self.total_satellites,
            planes: self.planes,
            phasing_factor: self.phasing_factor,
            inclination: self.inclination_deg.to_radians(),
            altitude: self.altitude_m,
        }
    }
}

/// Constellation source: exactly one variant.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum ConstellationSpec {
    Preset(String),
    Walker(WalkerSpec),
    /// Plain-text records (`format elements` or `format pv`).
    ElementsFile(String),
    /// Single-plane train shorthand.
    Train { count: u32, altitude_m: f64, inclination_deg: f64 },
}

impl ConstellationSpec {
    pub fn build(&self, consts: &PhysicalConstants) -> CliResult<Constellation> {
        match self {
            ConstellationSpec::Preset(name) => scenario::constellation_preset(name)
                .ok_or_else(|| {
                    config_err(format!(
                        "unknown constellation preset {name:?}; known: {}",
                        scenario::CONSTELLATION_PRESET_NAMES.join(", ")
                    ))
                })?
                .build(consts)
                .map_err(|e| config_err(e.to_string())),
            ConstellationSpec::Walker(spec) => {
                leosim_core::coverage::generate_walker(consts, &spec.to_config())
                    .map_err(|e| config_err(e.to_string()))
            }
            ConstellationSpec::ElementsFile(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    config_err(format!("cannot read elements file {path:?}: {e}"))
                })?;
                let records = parse_satellite_records(consts, &text)
                    .map_err(|e| config_err(e.to_string()))?;
                if records.is_empty() {
                    return Err(config_err(format!("elements file {path:?} has no records")));
                }
                Ok(Constellation::new(
                    records
                        .into_iter()
                        .map(|r| leosim_core::coverage::Satellite {
                            id: r.id,
                            elements: r.elements,
                        })
                        .collect(),
                ))
            }
            ConstellationSpec::Train { count, altitude_m, inclination_deg } => {
                leosim_core::mobility::train_constellation(
                    consts,
                    *count,
                    *altitude_m,
                    inclination_deg.to_radians(),
                )
                .map_err(|e| config_err(e.to_string()))
            }
        }
    }
}

/// Radio profile source.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum ProfileSpec {
    Preset(String),
    /// Key-value text file with the profile field names.
    File(String),
    Inline(SatelliteRadioProfile),
}

impl ProfileSpec {
    pub fn build(&self) -> CliResult<SatelliteRadioProfile> {
        match self {
            ProfileSpec::Preset(name) => scenario::radio_preset(name).ok_or_else(|| {
                config_err(format!(
                    "unknown radio profile preset {name:?}; known: {}",
                    scenario::RADIO_PRESET_NAMES.join(", ")
                ))
            }),
            ProfileSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    config_err(format!("cannot read profile file {path:?}: {e}"))
                })?;
                SatelliteRadioProfile::from_key_value_text(&text)
                    .map_err(|e| config_err(e.to_string()))
            }
            ProfileSpec::Inline(profile) => SatelliteRadioProfile::new(
                profile.eirp_density,
                profile.gt,
                profile.tx_rx_max_gain,
                profile.beamwidth_3db,
                profile.altitude,
                profile.beam_diameter_nadir,
                profile.label.clone(),
            )
            .map_err(|e| config_err(e.to_string())),
        }
    }
}

/// Cell pattern in config units.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case", tag = "kind")]
pub enum CellSpec {
    EarthMoving { beam_diameter_m: f64 },
    QuasiEarthFixed { min_elevation_deg: f64 },
}

impl CellSpec {
    pub fn to_pattern(self) -> CellPattern {
        match self {
            CellSpec::EarthMoving { beam_diameter_m } => {
                CellPattern::EarthMoving { beam_diameter: beam_diameter_m }
            }
            CellSpec::QuasiEarthFixed { min_elevation_deg } => {
                CellPattern::QuasiEarthFixed { min_elevation: min_elevation_deg.to_radians() }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case", tag = "kind")]
pub enum TrackingAreaSpec {
    EarthFixed {
        #[serde(default = "default_ta_grid")]
        grid_deg: f64,
    },
    SatelliteAttached,
}

fn default_ta_grid() -> f64 {
    5.0
}

impl TrackingAreaSpec {
    pub fn to_config(self) -> TrackingAreaConfig {
        match self {
            TrackingAreaSpec::EarthFixed { grid_deg } => TrackingAreaConfig::EarthFixed { grid_deg },
            TrackingAreaSpec::SatelliteAttached => TrackingAreaConfig::SatelliteAttached,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case", tag = "kind")]
pub enum ChoSpec {
    ElevationThreshold { threshold_deg: f64 },
    TimeWindow {
        #[serde(default = "default_cho_guard")]
        guard_s: f64,
    },
    LocationDistance { threshold_m: f64 },
}

fn default_cho_guard() -> f64 {
    2.0
}

impl ChoSpec {
    pub fn to_condition(self) -> ChoCondition {
        match self {
            ChoSpec::ElevationThreshold { threshold_deg } => {
                ChoCondition::ElevationThreshold { threshold: threshold_deg.to_radians() }
            }
            ChoSpec::TimeWindow { guard_s } => ChoCondition::TimeWindow { guard: guard_s },
            ChoSpec::LocationDistance { threshold_m } => {
                ChoCondition::LocationDistance { threshold: threshold_m }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default = "default_grid_step")]
    pub lat_step_deg: f64,
    #[serde(default = "default_grid_step")]
    pub lon_step_deg: f64,
}

fn default_grid_step() -> f64 {
    1.0
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { lat_step_deg: 1.0, lon_step_deg: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum MobilityMode {
    Idle,
    Connected,
}

/// The full scenario file. Every subcommand reads the subset it needs;
/// required-but-missing fields are reported by name.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constellation: Option<ConstellationSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ues: Vec<GroundPoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gateways: Vec<GroundPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carrier_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub altitude_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inclination_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_elevation_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elevation_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshot_t_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ages_s: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bandwidth_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ue_gt_db_k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra_losses_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<CellSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tracking_areas: Option<TrackingAreaSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cho: Option<ChoSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mobility_mode: Option<MobilityMode>,
}

impl ScenarioConfig {
    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read config {path:?}: {e}")))?;
        serde_json::from_str(&text)
            .map_err(|e| config_err(format!("invalid config {path:?}: {e}")))
    }

    /// Applies the `--preset NAME` shorthand: a constellation preset fills
    /// the constellation and default carrier, a radio preset fills the
    /// profile (and its altitude), and anything else is rejected.
    pub fn apply_preset(&mut self, name: &str) -> CliResult<()> {
        if let Some(preset) = leosim_core::scenario::constellation_preset(name) {
            if self.constellation.is_none() {
                self.constellation = Some(ConstellationSpec::Preset(name.to_string()));
            }
            if self.carrier_hz.is_none() {
                self.carrier_hz = Some(preset.carrier_hz);
            }
            if self.altitude_m.is_none() {
                self.altitude_m = Some(preset.shells[0].altitude);
            }
            return Ok(());
        }
        if leosim_core::scenario::radio_preset(name).is_some() {
            if self.profile.is_none() {
                self.profile = Some(ProfileSpec::Preset(name.to_string()));
            }
            return Ok(());
        }
        Err(config_err(format!(
            "unknown preset {name:?}; constellations: {}; radio profiles: {}",
            scenario::CONSTELLATION_PRESET_NAMES.join(", "),
            scenario::RADIO_PRESET_NAMES.join(", ")
        )))
    }

    pub fn require_constellation(&self, consts: &PhysicalConstants) -> CliResult<Constellation> {
        self.constellation
            .as_ref()
            .ok_or_else(|| config_err("missing required key \"constellation\""))?
            .build(consts)
    }

    pub fn require_ues(&self) -> CliResult<Vec<GeodeticPosition>> {
        if self.ues.is_empty() {
            return Err(config_err("UE list \"ues\" is empty; at least one UE is required"));
        }
        self.ues.iter().map(|p| p.to_geodetic()).collect()
    }
}
