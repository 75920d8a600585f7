//! One function per subcommand: resolve defaults into the config, validate,
//! write the manifest, run, and emit the output files.

use crate::config::{config_err, runtime_err, CliResult, MobilityMode, ScenarioConfig};
use crate::output::{fixed, num, prepare_out_dir, write_manifest, write_text, Manifest};
use leosim_core::access::{
    combined_path_delay, compute_access, find_passes, overhead_pass_extremes,
    worst_case_combined_drift, GeodeticPosition,
};
use leosim_core::coverage::coverage_map_of;
use leosim_core::frames::inertial_to_earth_fixed;
use leosim_core::link::downlink_c_n0;
use leosim_core::mobility::{simulate_connected_cho, simulate_idle, MobilityOutcome};
use leosim_core::orbit::kepler_to_state;
use leosim_core::precomp::{
    check_compliance, prediction_error_curve_worst_case, ComplianceThresholds,
};
use leosim_core::{EphemerisRecord, Frame, PhysicalConstants, StateVector, Vec3};
use std::path::PathBuf;

pub struct Common {
    pub out: PathBuf,
    pub seed: u64,
    pub threads: usize,
}

impl Common {
    fn start(&self, subcommand: &str, cfg: &ScenarioConfig) -> CliResult<()> {
        if self.threads == 0 {
            return Err(config_err("--threads must be at least 1"));
        }
        prepare_out_dir(&self.out)?;
        write_manifest(
            &self.out,
            &Manifest {
                tool: "leosim",
                version: env!("CARGO_PKG_VERSION"),
                subcommand,
                seed: self.seed,
                threads: self.threads,
                config: cfg,
            },
        )
    }
}

fn consts() -> PhysicalConstants {
    PhysicalConstants::default()
}

pub fn propagate(cfg: &mut ScenarioConfig, common: &Common) -> CliResult<()> {
    let c = consts();
    let constellation = cfg.require_constellation(&c)?;
    let start = *cfg.start_s.get_or_insert(0.0);
    let duration = *cfg.duration_s.get_or_insert(6000.0);
    let step = *cfg.step_s.get_or_insert(10.0);
    if !(duration > 0.0 && step > 0.0) {
        return Err(config_err("duration_s and step_s must be positive"));
    }
    common.start("propagate", cfg)?;

    let mut csv = String::from("t_s,sat,x_m,y_m,z_m,vx_mps,vy_mps,vz_mps\n");
    let steps = (duration / step).ceil() as u64;
    for k in 0..=steps {
        let t = start + (k as f64 * step).min(duration);
        for sat in &constellation.satellites {
            let s = kepler_to_state(&c, &sat.elements, t)
                .map_err(|e| runtime_err(e.to_string()))?;
            csv.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                fixed(t, 3),
                sat.id,
                num(s.position.x),
                num(s.position.y),
                num(s.position.z),
                num(s.velocity.x),
                num(s.velocity.y),
                num(s.velocity.z)
            ));
        }
    }
    write_text(&common.out, "propagate.csv", &csv)?;
    println!(
        "propagate: {} satellites, {} samples each -> propagate.csv",
        constellation.len(),
        steps + 1
    );
    Ok(())
}

pub fn access(cfg: &mut ScenarioConfig, common: &Common) -> CliResult<()> {
    let c = consts();
    let constellation = cfg.require_constellation(&c)?;
    let ues = cfg.require_ues()?;
    if ues.len() != 1 {
        return Err(config_err(format!(
            "access expects exactly one UE, got {}",
            ues.len()
        )));
    }
    let ue = ues[0];
    let carrier = *cfg.carrier_hz.get_or_insert(2e9);
    let mask_deg = *cfg.min_elevation_deg.get_or_insert(10.0);
    let start = *cfg.start_s.get_or_insert(0.0);
    let duration = *cfg.duration_s.get_or_insert(7200.0);
    let step = *cfg.step_s.get_or_insert(10.0);
    common.start("access", cfg)?;

    let mask = mask_deg.to_radians();
    let window = (start, start + duration);
    let mut passes_csv =
        String::from("sat,aos_s,los_s,duration_s,max_elev_deg,max_elev_time_s\n");
    let mut sats_with_passes = Vec::new();
    for sat in &constellation.satellites {
        let passes = find_passes(&c, &sat.elements, &ue, mask, window, 1.0)
            .map_err(|e| runtime_err(e.to_string()))?;
        if !passes.is_empty() {
            sats_with_passes.push(sat);
        }
        for pass in passes {
            passes_csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                sat.id,
                fixed(pass.aos, 3),
                fixed(pass.los, 3),
                fixed(pass.duration(), 3),
                fixed(pass.max_elevation.to_degrees(), 4),
                fixed(pass.max_elevation_time, 3)
            ));
        }
    }
    write_text(&common.out, "passes.csv", &passes_csv)?;

    // With a gateway configured, the two-hop (UE - satellite - gateway) path
    // delay and drift are emitted alongside the service-link geometry.
    let gateway = match cfg.gateways.first() {
        Some(point) => Some(point.to_geodetic()?),
        None => None,
    };
    for sat in &sats_with_passes {
        let mut csv = String::from(
            "t_s,range_m,elev_deg,delay_s,doppler_hz,delay_drift_s_per_s,doppler_drift_hz_per_s\n",
        );
        let mut combined_csv =
            String::from("t_s,combined_delay_s,combined_delay_drift_s_per_s\n");
        let samples = (duration / step).ceil() as u64;
        for k in 0..=samples {
            let t = start + (k as f64 * step).min(duration);
            let state = kepler_to_state(&c, &sat.elements, t)
                .map_err(|e| runtime_err(e.to_string()))?;
            let ef = inertial_to_earth_fixed(&c, &state).map_err(|e| runtime_err(e.to_string()))?;
            let g = compute_access(&c, &ef, &ue, carrier)
                .map_err(|e| runtime_err(e.to_string()))?;
            csv.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                fixed(t, 3),
                num(g.slant_range),
                num(g.elevation.to_degrees()),
                num(g.one_way_delay),
                num(g.doppler),
                num(g.delay_drift),
                num(g.doppler_drift)
            ));
            if let Some(gw) = &gateway {
                let (delay, drift) = combined_path_delay(&c, &ef, &ue, gw, carrier)
                    .map_err(|e| runtime_err(e.to_string()))?;
                combined_csv.push_str(&format!(
                    "{},{},{}\n",
                    fixed(t, 3),
                    num(delay),
                    num(drift)
                ));
            }
        }
        write_text(&common.out, &format!("geometry_sat{}.csv", sat.id), &csv)?;
        if gateway.is_some() {
            write_text(&common.out, &format!("combined_path_sat{}.csv", sat.id), &combined_csv)?;
        }
    }
    println!(
        "access: {} satellites with passes above {mask_deg} deg -> passes.csv + geometry_sat*.csv",
        sats_with_passes.len()
    );
    Ok(())
}

pub fn doppler(cfg: &mut ScenarioConfig, common: &Common) -> CliResult<()> {
    let c = consts();
    let altitude = *cfg.altitude_m.get_or_insert(600e3);
    let carrier = *cfg.carrier_hz.get_or_insert(2e9);
    let step = *cfg.step_s.get_or_insert(0.05);
    // The altitude band and carrier are scenario inputs; reject them before
    // any output is produced.
    leosim_core::access::max_doppler_ratio(&c, altitude).map_err(|e| config_err(e.to_string()))?;
    if !(carrier.is_finite() && carrier > 0.0) {
        return Err(config_err(format!("carrier frequency {carrier} Hz")));
    }
    common.start("doppler", cfg)?;

    let ext = overhead_pass_extremes(&c, altitude, carrier, step)
        .map_err(|e| runtime_err(e.to_string()))?;
    let combined_drift = worst_case_combined_drift(&c, altitude, 0.5)
        .map_err(|e| runtime_err(e.to_string()))?;

    let header = "altitude_m,carrier_hz,max_abs_doppler_hz,max_doppler_ppm,closed_form_ppm,\
                  max_abs_doppler_drift_hz_s,max_abs_delay_drift_s_s,\
                  worst_combined_delay_drift_s_s,min_delay_s,max_delay_s\n";
    let row = format!(
        "{},{},{},{},{},{},{},{},{},{}\n",
        num(altitude),
        num(carrier),
        num(ext.max_abs_doppler),
        num(ext.max_doppler_ratio * 1e6),
        num(ext.closed_form_ratio * 1e6),
        num(ext.max_abs_doppler_drift),
        num(ext.max_abs_delay_drift),
        num(combined_drift),
        num(ext.min_delay),
        num(ext.max_delay)
    );
    write_text(&common.out, "doppler.csv", &(header.to_string() + &row))?;

    println!("doppler extremes over an overhead pass at {} km:", fixed(altitude / 1e3, 1));
    println!(
        "  max |Doppler|       : {} kHz ({} ppm of carrier; closed-form ceiling {} ppm)",
        fixed(ext.max_abs_doppler / 1e3, 2),
        fixed(ext.max_doppler_ratio * 1e6, 2),
        fixed(ext.closed_form_ratio * 1e6, 2)
    );
    println!(
        "  max |Doppler drift| : {} Hz/s",
        fixed(ext.max_abs_doppler_drift, 1)
    );
    println!(
        "  max |delay drift|   : {} us/s (service link), {} us/s (worst UE+gateway path)",
        fixed(ext.max_abs_delay_drift * 1e6, 2),
        fixed(combined_drift * 1e6, 2)
    );
    println!(
        "  one-way delay       : {} .. {} ms",
        fixed(ext.min_delay * 1e3, 3),
        fixed(ext.max_delay * 1e3, 3)
    );
    Ok(())
}

pub fn linkbudget(cfg: &mut ScenarioConfig, common: &Common) -> CliResult<()> {
    let c = consts();
    let profile = cfg
        .profile
        .as_ref()
        .ok_or_else(|| config_err("missing radio profile (key \"profile\" or --profile)"))?
        .build()?;
    let carrier = *cfg.carrier_hz.get_or_insert(2e9);
    let elevation_deg = *cfg.elevation_deg.get_or_insert(90.0);
    let bandwidth = *cfg.bandwidth_hz.get_or_insert(15e6);
    let ue_gt = *cfg.ue_gt_db_k.get_or_insert(-31.6);
    let extra = *cfg.extra_losses_db.get_or_insert(0.0);
    if !(0.0..=90.0).contains(&elevation_deg) {
        return Err(config_err(format!("elevation_deg {elevation_deg} outside [0, 90]")));
    }
    common.start("linkbudget", cfg)?;

    // Static satellite placed at the Earth-central angle that yields the
    // requested elevation from a UE at the origin.
    let elevation = elevation_deg.to_radians();
    let k = c.earth_radius / (c.earth_radius + profile.altitude);
    let psi = (k * elevation.cos()).acos() - elevation;
    let r_orbit = c.earth_radius + profile.altitude;
    let sat = StateVector {
        position: Vec3::new(r_orbit * psi.cos(), 0.0, r_orbit * psi.sin()),
        velocity: Vec3::ZERO,
        frame: Frame::EarthFixed,
        time: 0.0,
    };
    let ue = GeodeticPosition::new(0.0, 0.0, 0.0).map_err(|e| config_err(e.to_string()))?;
    let geometry =
        compute_access(&c, &sat, &ue, carrier).map_err(|e| runtime_err(e.to_string()))?;
    let result = downlink_c_n0(&c, &profile, &geometry, ue_gt, extra, bandwidth)
        .map_err(|e| runtime_err(e.to_string()))?;

    let header = "label,eirp_density_dbw_mhz,gt_db_k,tx_rx_max_gain_dbi,beamwidth_3db_deg,\
                  altitude_m,beam_diameter_nadir_m,elevation_deg,slant_range_m,fspl_db,\
                  ue_gt_db_k,extra_losses_db,c_n0_dbhz,bandwidth_hz,snr_db,capacity_bit_s\n";
    let row = format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        profile.label,
        num(profile.eirp_density),
        num(profile.gt),
        num(profile.tx_rx_max_gain),
        num(profile.beamwidth_3db),
        num(profile.altitude),
        num(profile.beam_diameter_nadir),
        num(elevation_deg),
        num(geometry.slant_range),
        num(result.fspl),
        num(ue_gt),
        num(extra),
        num(result.c_n0),
        num(bandwidth),
        num(result.snr),
        num(result.capacity_estimate)
    );
    write_text(&common.out, "linkbudget.csv", &(header.to_string() + &row))?;

    println!("profile: {}", profile.label);
    println!("  EIRP density          : {} dBW/MHz", num(profile.eirp_density));
    println!("  G/T                   : {} dB/K", num(profile.gt));
    println!("  Tx/Rx max antenna gain: {} dBi", num(profile.tx_rx_max_gain));
    println!("  3 dB beamwidth        : {} deg", num(profile.beamwidth_3db));
    println!("  altitude              : {} km", fixed(profile.altitude / 1e3, 1));
    println!(
        "  beam diameter at nadir: {} km",
        fixed(profile.beam_diameter_nadir / 1e3, 1)
    );
    println!(
        "downlink at {} deg elevation (slant range {} km):",
        fixed(elevation_deg, 1),
        fixed(geometry.slant_range / 1e3, 1)
    );
    println!("  FSPL                  : {} dB", fixed(result.fspl, 2));
    println!(
        "  C/N0 (per MHz of EIRP): {} dBHz (UE G/T {} dB/K, extra losses {} dB)",
        fixed(result.c_n0, 2),
        num(ue_gt),
        num(extra)
    );
    println!(
        "  SNR over {} MHz       : {} dB",
        fixed(bandwidth / 1e6, 1),
        fixed(result.snr, 2)
    );
    println!(
        "  capacity estimate     : {} Mbit/s (Shannon bound)",
        fixed(result.capacity_estimate / 1e6, 2)
    );
    Ok(())
}

pub fn precomp_error(cfg: &mut ScenarioConfig, common: &Common) -> CliResult<()> {
    let c = consts();
    // Single satellite: an explicit constellation of one, or altitude +
    // inclination shorthand.
    let elements = match &cfg.constellation {
        Some(spec) => {
            let constellation = spec.build(&c)?;
            if constellation.len() != 1 {
                return Err(config_err(format!(
                    "precomp-error expects exactly one satellite, got {}",
                    constellation.len()
                )));
            }
            constellation.satellites[0].elements
        }
        None => {
            let altitude = *cfg.altitude_m.get_or_insert(600e3);
            let inclination = *cfg.inclination_deg.get_or_insert(53.0);
            leosim_core::orbit::OrbitalElements::circular(
                &c,
                altitude,
                inclination.to_radians(),
                0.0,
                0.0,
                0.0,
            )
            .map_err(|e| config_err(e.to_string()))?
        }
    };
    if cfg.ages_s.is_empty() {
        cfg.ages_s = vec![0.0, 10.0, 20.0, 30.0, 60.0, 90.0, 120.0, 180.0, 240.0, 300.0];
    }
    let carrier = *cfg.carrier_hz.get_or_insert(2e9);
    common.start("precomp-error", cfg)?;

    let eph = EphemerisRecord::from_elements(&c, &elements)
        .map_err(|e| runtime_err(e.to_string()))?;
    let samples = prediction_error_curve_worst_case(&c, &eph, &cfg.ages_s, carrier)
        .map_err(|e| runtime_err(e.to_string()))?;

    let thresholds = ComplianceThresholds::default();
    let mut csv = String::from("age_s,delay_error_us,doppler_error_hz,cp_pass,freq_pass\n");
    for sample in &samples {
        let report = check_compliance(sample, &thresholds, carrier);
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            num(sample.age),
            num(sample.delay_error * 1e6),
            num(sample.doppler_error),
            report.cp_pass as u8,
            report.freq_pass as u8
        ));
    }
    write_text(&common.out, "precomp_error.csv", &csv)?;
    let worst = samples.last();
    println!(
        "precomp-error: {} ages -> precomp_error.csv (at {} s: {} us, {} Hz)",
        samples.len(),
        worst.map_or(0.0, |s| s.age),
        worst.map_or(0.0, |s| s.delay_error * 1e6),
        worst.map_or(0.0, |s| s.doppler_error)
    );
    Ok(())
}

pub fn mobility(cfg: &mut ScenarioConfig, common: &Common) -> CliResult<()> {
    let c = consts();
    let constellation = cfg.require_constellation(&c)?;
    let ues = cfg.require_ues()?;
    let pattern = cfg
        .cell
        .ok_or_else(|| config_err("missing required key \"cell\""))?
        .to_pattern();
    let mode = *cfg.mobility_mode.get_or_insert(MobilityMode::Idle);
    let duration = *cfg.duration_s.get_or_insert(3600.0);
    if mode == MobilityMode::Idle && cfg.tracking_areas.is_none() {
        cfg.tracking_areas = Some(crate::config::TrackingAreaSpec::EarthFixed { grid_deg: 5.0 });
    }
    if mode == MobilityMode::Connected && cfg.cho.is_none() {
        cfg.cho = Some(crate::config::ChoSpec::TimeWindow { guard_s: 2.0 });
    }
    common.start("mobility", cfg)?;

    let mut summary_csv =
        String::from("reselections,taus,cho_prepared,cho_executed,failures,coverage_gap_s\n");
    for (index, ue) in ues.iter().enumerate() {
        let outcome: MobilityOutcome = match mode {
            MobilityMode::Idle => simulate_idle(
                &c,
                &constellation,
                pattern,
                ue,
                cfg.tracking_areas.expect("defaulted above").to_config(),
                duration,
            ),
            MobilityMode::Connected => simulate_connected_cho(
                &c,
                &constellation,
                pattern,
                ue,
                cfg.cho.expect("defaulted above").to_condition(),
                duration,
            ),
        }
        .map_err(|e| runtime_err(e.to_string()))?;

        let mut events_csv = String::from("t_s,event,from_cell,to_cell\n");
        for event in &outcome.events {
            let cell = |c: Option<u32>| c.map_or(String::new(), |v| v.to_string());
            events_csv.push_str(&format!(
                "{},{},{},{}\n",
                fixed(event.time, 2),
                event.kind.as_str(),
                cell(event.from_cell),
                cell(event.to_cell)
            ));
        }
        write_text(&common.out, &format!("events_{index}.csv"), &events_csv)?;

        let s = outcome.summary;
        summary_csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            s.reselections,
            s.taus,
            s.cho_prepared,
            s.cho_executed,
            s.failures,
            fixed(s.coverage_gap_s, 2)
        ));
        println!(
            "mobility UE {index}: reselections {} taus {} cho_prepared {} cho_executed {} \
             failures {} coverage_gap_s {}",
            s.reselections,
            s.taus,
            s.cho_prepared,
            s.cho_executed,
            s.failures,
            fixed(s.coverage_gap_s, 2)
        );
    }
    write_text(&common.out, "summary.csv", &summary_csv)?;
    Ok(())
}

pub fn coverage(cfg: &mut ScenarioConfig, common: &Common) -> CliResult<()> {
    let c = consts();
    let constellation = cfg.require_constellation(&c)?;
    let t = *cfg.snapshot_t_s.get_or_insert(0.0);
    let grid = cfg.grid.get_or_insert_with(Default::default);
    let (lat_step, lon_step) = (grid.lat_step_deg, grid.lon_step_deg);
    let mask_deg = *cfg.min_elevation_deg.get_or_insert(10.0);
    common.start("coverage", cfg)?;

    let map = coverage_map_of(
        &c,
        &constellation,
        t,
        lat_step,
        lon_step,
        mask_deg.to_radians(),
        common.threads,
    )
    .map_err(|e| runtime_err(e.to_string()))?;

    let mut csv = String::from("lat_deg,lon_deg,count\n");
    for (i, &lat) in map.lats_deg.iter().enumerate() {
        for (j, &lon) in map.lons_deg.iter().enumerate() {
            csv.push_str(&format!("{},{},{}\n", num(lat), num(lon), map.counts[i][j]));
        }
    }
    let summary = format!(
        "# summary: satellites={} min={} mean={} max={} covered_fraction={} \
         covered_fraction_pm60={}\n",
        constellation.len(),
        map.min_count(),
        fixed(map.mean_count(), 3),
        map.max_count(),
        fixed(map.covered_fraction(), 4),
        fixed(map.covered_fraction_within(60.0), 4)
    );
    csv.push_str(&summary);
    write_text(&common.out, "coverage.csv", &csv)?;
    print!("{summary}");
    Ok(())
}
