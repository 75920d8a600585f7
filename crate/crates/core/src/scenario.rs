//! Bundled scenario presets: well-known LEO constellations and the S-band
//! satellite radio profiles.
//!
//! Constellation presets carry the published satellite counts and altitudes;
//! plane counts, phasing, and inclinations are filled in from public
//! constellation data where the count/altitude pair leaves them open.

use crate::constants::PhysicalConstants;
use crate::coverage::{generate_walker, Constellation, Satellite, WalkerConfig};
use crate::error::Result;
use crate::link::SatelliteRadioProfile;

/// A named multi-shell Walker constellation with a default carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstellationPreset {
    pub name: &'static str,
    pub shells: Vec<WalkerConfig>,
    /// Indicative downlink carrier (Hz).
    pub carrier_hz: f64,
}

impl ConstellationPreset {
    pub fn total_satellites(&self) -> u32 {
        self.shells.iter().map(|s| s.total_satellites).sum()
    }

    /// Instantiates the preset; satellite ids are sequential across shells.
    pub fn build(&self, consts: &PhysicalConstants) -> Result<Constellation> {
        let mut satellites = Vec::with_capacity(self.total_satellites() as usize);
        let mut offset = 0u32;
        for shell in &self.shells {
            let built = generate_walker(consts, shell)?;
            satellites.extend(
                built
                    .satellites
                    .into_iter()
                    .map(|s| Satellite { id: s.id + offset, elements: s.elements }),
            );
            offset += shell.total_satellites;
        }
        Ok(Constellation::new(satellites))
    }
}

fn shell(total: u32, planes: u32, phasing: u32, incl_deg: f64, alt_km: f64) -> WalkerConfig {
    WalkerConfig {
        total_satellites: total,
        planes,
        phasing_factor: phasing,
        inclination: incl_deg.to_radians(),
        altitude: alt_km * 1e3,
    }
}

/// Looks up a constellation preset by name.
pub fn constellation_preset(name: &str) -> Option<ConstellationPreset> {
    let preset = match name {
        "iridium-gen1" => ConstellationPreset {
            name: "iridium-gen1",
            shells: vec![shell(66, 6, 2, 86.4, 780.0)],
            carrier_hz: 1.6e9,
        },
        "globalstar" => ConstellationPreset {
            name: "globalstar",
            shells: vec![shell(48, 8, 1, 52.0, 1440.0)],
            carrier_hz: 2.4e9,
        },
        "ast" => ConstellationPreset {
            name: "ast",
            shells: vec![shell(240, 16, 1, 53.0, 720.0)],
            carrier_hz: 1.9e9,
        },
        "oneweb" => ConstellationPreset {
            name: "oneweb",
            shells: vec![shell(650, 13, 1, 87.9, 1200.0)],
            carrier_hz: 12e9,
        },
        "starlink-gen1" => ConstellationPreset {
            name: "starlink-gen1",
            shells: vec![shell(1584, 72, 1, 53.0, 550.0)],
            carrier_hz: 12e9,
        },
        "telesat" => ConstellationPreset {
            name: "telesat",
            shells: vec![shell(78, 6, 1, 98.98, 1015.0), shell(220, 20, 1, 50.88, 1325.0)],
            carrier_hz: 20e9,
        },
        "kuiper" => ConstellationPreset {
            name: "kuiper",
            shells: vec![shell(3200, 32, 1, 51.9, 600.0)],
            carrier_hz: 20e9,
        },
        _ => return None,
    };
    Some(preset)
}

pub const CONSTELLATION_PRESET_NAMES: &[&str] = &[
    "iridium-gen1",
    "globalstar",
    "ast",
    "oneweb",
    "starlink-gen1",
    "telesat",
    "kuiper",
];

pub const RADIO_PRESET_NAMES: &[&str] = &["leo600-iot", "leo600-handheld"];

/// Looks up a satellite radio profile preset by name.
pub fn radio_preset(name: &str) -> Option<SatelliteRadioProfile> {
    SatelliteRadioProfile::preset(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_build() {
        let c = PhysicalConstants::default();
        for name in CONSTELLATION_PRESET_NAMES {
            let preset = constellation_preset(name).unwrap();
            let constellation = preset.build(&c).unwrap();
            assert_eq!(constellation.len() as u32, preset.total_satellites(), "{name}");
            // Sequential unique ids.
            for (i, sat) in constellation.satellites.iter().enumerate() {
                assert_eq!(sat.id as usize, i, "{name}");
            }
        }
        assert!(constellation_preset("nonsense").is_none());
    }

    #[test]
    fn iridium_matches_published_figures() {
        let preset = constellation_preset("iridium-gen1").unwrap();
        assert_eq!(preset.total_satellites(), 66);
        assert_eq!(preset.shells[0].altitude, 780e3);
    }

    #[test]
    fn telesat_has_two_shells() {
        let preset = constellation_preset("telesat").unwrap();
        assert_eq!(preset.shells.len(), 2);
        assert_eq!(preset.total_satellites(), 298);
    }

    #[test]
    fn radio_presets_resolve() {
        for name in RADIO_PRESET_NAMES {
            assert!(radio_preset(name).is_some(), "{name}");
        }
        assert!(radio_preset("ku-vsat").is_none());
    }
}
