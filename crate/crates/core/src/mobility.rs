//! Discrete-event simulation of idle- and connected-mode mobility under
//! moving LEO cells.
//!
//! Cells are beam-footprint disks that sweep with the satellite (earth-moving)
//! or elevation-bounded serving intervals (quasi-earth-fixed). The simulator
//! steps at a fixed 100 ms, refines every transition by bisection to 10 ms,
//! and is strictly deterministic: identical inputs produce identical event
//! logs.

use crate::access::GeodeticPosition;
use crate::constants::PhysicalConstants;
use crate::coverage::Constellation;
use crate::error::{Error, Result};
use crate::frames;
use crate::orbit::{kepler_to_state, OrbitalElements};
use crate::vec3::Vec3;

/// Event-loop step (s).
const STEP: f64 = 0.1;
/// Transition refinement quantum (s); all event timestamps land on this grid.
const QUANTUM: f64 = 0.01;

/// Cell geometry attached to every satellite of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CellPattern {
    /// Footprint disk of `beam_diameter` centered on the moving nadir point.
    EarthMoving { beam_diameter: f64 },
    /// Beam steered at a fixed ground area while the satellite is above
    /// `min_elevation` (rad); the serving interval is the visibility pass.
    QuasiEarthFixed { min_elevation: f64 },
}

impl CellPattern {
    fn validate(&self) -> Result<()> {
        match *self {
            CellPattern::EarthMoving { beam_diameter } => {
                if !(beam_diameter.is_finite() && beam_diameter > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "beam diameter {beam_diameter} m"
                    )));
                }
            }
            CellPattern::QuasiEarthFixed { min_elevation } => {
                if !(0.0..std::f64::consts::FRAC_PI_2).contains(&min_elevation) {
                    return Err(Error::InvalidParameter(format!(
                        "serving elevation mask {min_elevation} rad outside [0, pi/2)"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Tracking-area layout.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TrackingAreaConfig {
    /// Time-invariant latitude/longitude grid areas of `grid_deg` degrees.
    EarthFixed { grid_deg: f64 },
    /// Areas co-moving with the cells: one area per cell.
    SatelliteAttached,
}

impl TrackingAreaConfig {
    fn validate(&self) -> Result<()> {
        if let TrackingAreaConfig::EarthFixed { grid_deg } = *self {
            if !(grid_deg.is_finite() && grid_deg > 0.0 && grid_deg <= 90.0) {
                return Err(Error::InvalidParameter(format!(
                    "tracking-area grid {grid_deg} deg outside (0, 90]"
                )));
            }
        }
        Ok(())
    }
}

/// Conditional-handover trigger.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ChoCondition {
    /// Execute when the target's elevation reaches `threshold` (rad).
    ElevationThreshold { threshold: f64 },
    /// Execute on entering the ephemeris-derived window: the predicted
    /// remaining service duration of the serving cell minus `guard` (s).
    TimeWindow { guard: f64 },
    /// Execute when the UE's distance to the serving footprint center
    /// exceeds `threshold` (m).
    LocationDistance { threshold: f64 },
}

impl ChoCondition {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            ChoCondition::ElevationThreshold { threshold } => {
                (0.0..=std::f64::consts::FRAC_PI_2).contains(&threshold)
            }
            ChoCondition::TimeWindow { guard } => guard.is_finite() && guard >= 0.0,
            ChoCondition::LocationDistance { threshold } => {
                threshold.is_finite() && threshold > 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid CHO condition {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MobilityEventKind {
    Reselection,
    TrackingAreaUpdate,
    ChoPrepared,
    ChoExecuted,
    RadioLinkFailure,
}

impl MobilityEventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MobilityEventKind::Reselection => "reselection",
            MobilityEventKind::TrackingAreaUpdate => "tracking_area_update",
            MobilityEventKind::ChoPrepared => "cho_prepared",
            MobilityEventKind::ChoExecuted => "cho_executed",
            MobilityEventKind::RadioLinkFailure => "radio_link_failure",
        }
    }
}

/// Timestamped mobility event. For tracking-area updates the from/to fields
/// carry area ids; otherwise cell (= satellite) ids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobilityEvent {
    pub time: f64,
    pub kind: MobilityEventKind,
    pub from_cell: Option<u32>,
    pub to_cell: Option<u32>,
}

/// Aggregate counters. The initial attach and initial registration are
/// logged as events but not counted here; the counters measure the ongoing
/// signaling load.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize)]
pub struct MobilitySummary {
    pub reselections: u64,
    pub taus: u64,
    pub cho_prepared: u64,
    pub cho_executed: u64,
    pub failures: u64,
    pub coverage_gap_s: f64,
}

/// Event log plus counters from one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct MobilityOutcome {
    pub events: Vec<MobilityEvent>,
    pub summary: MobilitySummary,
}

/// Per-satellite view used by selection: coverage flag and sin(elevation).
struct SatView {
    id: u32,
    covered: bool,
    sin_elevation: f64,
    nadir_unit: Vec3,
}

struct SimContext<'a> {
    consts: &'a PhysicalConstants,
    constellation: &'a Constellation,
    pattern: CellPattern,
    ue_pos: Vec3,
    ue_unit: Vec3,
    /// cos of the footprint angular radius (earth-moving).
    cos_footprint: f64,
    /// sin of the serving elevation mask (quasi-earth-fixed).
    sin_mask: f64,
}

impl<'a> SimContext<'a> {
    fn new(
        consts: &'a PhysicalConstants,
        constellation: &'a Constellation,
        pattern: CellPattern,
        ue: &GeodeticPosition,
    ) -> Result<Self> {
        pattern.validate()?;
        if constellation.is_empty() {
            return Err(Error::InvalidParameter("empty constellation".into()));
        }
        let ue_pos = ue.to_earth_fixed(consts);
        let (cos_footprint, sin_mask) = match pattern {
            CellPattern::EarthMoving { beam_diameter } => {
                ((beam_diameter / 2.0 / consts.earth_radius).cos(), 0.0)
            }
            CellPattern::QuasiEarthFixed { min_elevation } => (1.0, min_elevation.sin()),
        };
        Ok(Self {
            consts,
            constellation,
            pattern,
            ue_pos,
            ue_unit: ue_pos.normalized(),
            cos_footprint,
            sin_mask,
        })
    }

    fn view(&self, elements: &OrbitalElements, id: u32, t: f64) -> Result<SatView> {
        let inertial = kepler_to_state(self.consts, elements, t)?;
        let ef = frames::inertial_to_earth_fixed(self.consts, &inertial)?;
        let nadir_unit = ef.position.normalized();
        let rel = ef.position - self.ue_pos;
        let range = rel.norm();
        let sin_elevation = rel.dot(self.ue_unit) / range;
        let covered = match self.pattern {
            CellPattern::EarthMoving { .. } => nadir_unit.dot(self.ue_unit) >= self.cos_footprint,
            CellPattern::QuasiEarthFixed { .. } => sin_elevation >= self.sin_mask,
        };
        Ok(SatView { id, covered, sin_elevation, nadir_unit })
    }

    fn covers(&self, id: u32, t: f64) -> Result<bool> {
        let sat = &self.constellation.satellites[id as usize];
        Ok(self.view(&sat.elements, sat.id, t)?.covered)
    }

    /// Serving-cell choice: highest elevation among covering cells, ties
    /// broken by the lowest satellite id (iteration is in id order and only
    /// strictly better candidates replace the incumbent).
    fn select(&self, t: f64) -> Result<Option<u32>> {
        let mut best: Option<(u32, f64)> = None;
        for sat in &self.constellation.satellites {
            let view = self.view(&sat.elements, sat.id, t)?;
            if view.covered && best.map_or(true, |(_, s)| view.sin_elevation > s) {
                best = Some((view.id, view.sin_elevation));
            }
        }
        Ok(best.map(|(id, _)| id))
    }

    /// Highest-elevation neighbor of `serving` at time `t` (coverage not
    /// required; eligibility is checked at execution).
    fn best_neighbor(&self, serving: u32, t: f64) -> Result<Option<u32>> {
        let mut best: Option<(u32, f64)> = None;
        for sat in &self.constellation.satellites {
            if sat.id == serving {
                continue;
            }
            let view = self.view(&sat.elements, sat.id, t)?;
            if best.map_or(true, |(_, s)| view.sin_elevation > s) {
                best = Some((view.id, view.sin_elevation));
            }
        }
        Ok(best.map(|(id, _)| id))
    }

    /// Footprint center of a cell at time `t` (the sub-satellite point).
    fn footprint_center_unit(&self, id: u32, t: f64) -> Result<Vec3> {
        let sat = &self.constellation.satellites[id as usize];
        Ok(self.view(&sat.elements, sat.id, t)?.nadir_unit)
    }

    /// First time in (from, horizon] where the cell stops covering the UE,
    /// refined to the quantum. Returns `horizon` if it never stops.
    fn predicted_loss(&self, id: u32, from: f64, horizon: f64) -> Result<f64> {
        let mut t = from;
        let coarse = 1.0;
        while t < horizon {
            let next = (t + coarse).min(horizon);
            if !self.covers(id, next)? {
                // Bisect the covered -> uncovered boundary.
                let (mut lo, mut hi) = (t, next);
                while hi - lo > QUANTUM {
                    let mid = 0.5 * (lo + hi);
                    if self.covers(id, mid)? {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return Ok(quantize(0.5 * (lo + hi)));
            }
            t = next;
        }
        Ok(horizon)
    }
}

fn quantize(t: f64) -> f64 {
    (t / QUANTUM).round() * QUANTUM
}

/// Time until the given cell stops covering/serving the UE.
///
/// The UE must be inside the footprint (earth-moving) or the satellite above
/// the serving mask (quasi-earth-fixed) at `t0`; otherwise an explicit
/// no-coverage error is returned.
pub fn dwell_time(
    consts: &PhysicalConstants,
    constellation: &Constellation,
    cell: u32,
    pattern: CellPattern,
    ue: &GeodeticPosition,
    t0: f64,
) -> Result<f64> {
    let ctx = SimContext::new(consts, constellation, pattern, ue)?;
    let index = constellation
        .satellites
        .iter()
        .position(|s| s.id == cell)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown cell id {cell}")))?;
    let sat = &constellation.satellites[index];
    if !ctx.view(&sat.elements, sat.id, t0)?.covered {
        return Err(Error::OutOfCoverage(format!("UE not covered by cell {cell} at t = {t0} s")));
    }
    let horizon = t0 + 2.0 * sat.elements.period(consts);
    let loss = ctx.predicted_loss(index as u32, t0, horizon)?;
    if loss >= horizon {
        return Err(Error::OutOfCoverage(format!(
            "cell {cell} does not stop covering the UE within two orbital periods"
        )));
    }
    Ok(loss - t0)
}

/// Tracking-area id of the UE's current situation, if any.
fn area_of(
    ta_config: &TrackingAreaConfig,
    ue: &GeodeticPosition,
    serving: Option<u32>,
) -> Option<u32> {
    match ta_config {
        TrackingAreaConfig::EarthFixed { grid_deg } => {
            let row = (((ue.lat.to_degrees() + 90.0) / grid_deg).floor() as i64)
                .clamp(0, (180.0 / grid_deg) as i64);
            let cols = (360.0 / grid_deg).ceil() as i64;
            let col = ((ue.lon.to_degrees().rem_euclid(360.0) / grid_deg).floor() as i64)
                .clamp(0, cols - 1);
            Some((row * cols + col) as u32)
        }
        TrackingAreaConfig::SatelliteAttached => serving,
    }
}

/// Idle-mode mobility: camping, reselection, and tracking-area updates for a
/// stationary UE over `duration` seconds.
///
/// The UE camps on the highest-elevation covering cell, emits a reselection
/// on every serving-cell change, and emits a tracking-area update exactly
/// when its current area is no longer the registered one. Coverage gaps are
/// accumulated, not fatal.
pub fn simulate_idle(
    consts: &PhysicalConstants,
    constellation: &Constellation,
    pattern: CellPattern,
    ue: &GeodeticPosition,
    ta_config: TrackingAreaConfig,
    duration: f64,
) -> Result<MobilityOutcome> {
    ta_config.validate()?;
    if !(duration.is_finite() && duration >= 0.0) {
        return Err(Error::InvalidParameter(format!("duration {duration} s")));
    }
    let ctx = SimContext::new(consts, constellation, pattern, ue)?;
    let mut events = Vec::new();
    let mut summary = MobilitySummary::default();
    if duration == 0.0 {
        return Ok(MobilityOutcome { events, summary });
    }

    let mut serving = ctx.select(0.0)?;
    let mut registered: Option<u32> = None;
    let mut gap_start = if serving.is_none() { Some(0.0) } else { None };
    if let Some(cell) = serving {
        events.push(MobilityEvent {
            time: 0.0,
            kind: MobilityEventKind::Reselection,
            from_cell: None,
            to_cell: Some(cell),
        });
        // Initial registration.
        registered = area_of(&ta_config, ue, serving);
        events.push(MobilityEvent {
            time: QUANTUM,
            kind: MobilityEventKind::TrackingAreaUpdate,
            from_cell: None,
            to_cell: registered,
        });
    }

    let steps = (duration / STEP).ceil() as u64;
    let mut prev_t = 0.0;
    for k in 1..=steps {
        let t = (k as f64 * STEP).min(duration);
        let now = ctx.select(t)?;
        if now != serving {
            // Refine the transition to the quantum grid.
            let (mut lo, mut hi) = (prev_t, t);
            while hi - lo > QUANTUM {
                let mid = 0.5 * (lo + hi);
                if ctx.select(mid)? == serving {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let tc = quantize(0.5 * (lo + hi));

            match (serving, now) {
                (_, Some(new)) => {
                    events.push(MobilityEvent {
                        time: tc,
                        kind: MobilityEventKind::Reselection,
                        from_cell: serving,
                        to_cell: Some(new),
                    });
                    summary.reselections += 1;
                    if let Some(start) = gap_start.take() {
                        summary.coverage_gap_s += tc - start;
                    }
                }
                (Some(_), None) => gap_start = Some(tc),
                (None, None) => {}
            }
            serving = now;

            if serving.is_some() {
                let area = area_of(&ta_config, ue, serving);
                if area != registered {
                    events.push(MobilityEvent {
                        time: quantize(tc + QUANTUM),
                        kind: MobilityEventKind::TrackingAreaUpdate,
                        from_cell: registered,
                        to_cell: area,
                    });
                    summary.taus += 1;
                    registered = area;
                }
            }
        }
        prev_t = t;
    }
    if let Some(start) = gap_start {
        summary.coverage_gap_s += duration - start;
    }
    Ok(MobilityOutcome { events, summary })
}

/// Connected-mode mobility with conditional handover.
///
/// On each serving interval the network prepares the best neighbor; the UE
/// stores the command and executes it the first time the condition holds. A
/// missing or uncovered target at that point is a radio-link failure; the
/// simulation then continues by reselecting after the serving cell is lost.
pub fn simulate_connected_cho(
    consts: &PhysicalConstants,
    constellation: &Constellation,
    pattern: CellPattern,
    ue: &GeodeticPosition,
    condition: ChoCondition,
    duration: f64,
) -> Result<MobilityOutcome> {
    condition.validate()?;
    if !(duration.is_finite() && duration >= 0.0) {
        return Err(Error::InvalidParameter(format!("duration {duration} s")));
    }
    let ctx = SimContext::new(consts, constellation, pattern, ue)?;
    let mut events = Vec::new();
    let mut summary = MobilitySummary::default();
    if duration == 0.0 {
        return Ok(MobilityOutcome { events, summary });
    }

    let mut serving = match ctx.select(0.0)? {
        Some(cell) => cell,
        None => return Err(Error::OutOfCoverage("UE not in coverage at t = 0".into())),
    };
    events.push(MobilityEvent {
        time: 0.0,
        kind: MobilityEventKind::Reselection,
        from_cell: None,
        to_cell: Some(serving),
    });

    // Serving anchor for quasi-earth-fixed footprints (fixed while serving).
    let mut t_attach = 0.0;
    let mut anchor = ctx.footprint_center_unit(serving, 0.0)?;

    loop {
        let t_loss = ctx.predicted_loss(serving, t_attach, duration + 60.0)?;

        // Prepare the best neighbor, judged at the expected execution point.
        let eval_guard = match condition {
            ChoCondition::TimeWindow { guard } => guard,
            _ => 0.0,
        };
        let t_eval = (t_loss - eval_guard).max(t_attach).min(duration);
        let target = ctx.best_neighbor(serving, t_eval)?;
        events.push(MobilityEvent {
            time: quantize(t_attach + QUANTUM),
            kind: MobilityEventKind::ChoPrepared,
            from_cell: Some(serving),
            to_cell: target,
        });
        summary.cho_prepared += 1;

        // First time the stored condition holds within the serving interval.
        let t_exec: Option<f64> = match condition {
            ChoCondition::TimeWindow { guard } => {
                if t_loss > duration {
                    None
                } else {
                    Some(quantize((t_loss - guard).max(t_attach + STEP)))
                }
            }
            ChoCondition::ElevationThreshold { threshold } => match target {
                None => None,
                Some(tgt) => first_time_above(
                    &ctx,
                    tgt,
                    threshold.sin(),
                    t_attach,
                    t_loss.min(duration),
                )?,
            },
            ChoCondition::LocationDistance { threshold } => {
                let cos_limit = (threshold / consts.earth_radius).cos();
                first_time_beyond(&ctx, serving, anchor, cos_limit, t_attach, t_loss.min(duration))?
            }
        };

        match t_exec {
            Some(t_exec) if t_exec <= duration => {
                let eligible = match target {
                    Some(tgt) => ctx.covers(tgt, t_exec)?,
                    None => false,
                };
                if eligible {
                    let tgt = target.expect("eligible implies a target");
                    events.push(MobilityEvent {
                        time: t_exec,
                        kind: MobilityEventKind::ChoExecuted,
                        from_cell: Some(serving),
                        to_cell: Some(tgt),
                    });
                    summary.cho_executed += 1;
                    serving = tgt;
                    t_attach = t_exec;
                    anchor = ctx.footprint_center_unit(serving, t_exec)?;
                    continue;
                }
                // Condition held but no usable target: failure at the
                // condition time, service continues until the cell is lost.
                events.push(MobilityEvent {
                    time: t_exec,
                    kind: MobilityEventKind::RadioLinkFailure,
                    from_cell: Some(serving),
                    to_cell: target,
                });
                summary.failures += 1;
            }
            _ => {
                // Condition never held on this interval.
                if t_loss > duration {
                    break; // still attached when the simulation ends
                }
                events.push(MobilityEvent {
                    time: t_loss,
                    kind: MobilityEventKind::RadioLinkFailure,
                    from_cell: Some(serving),
                    to_cell: target,
                });
                summary.failures += 1;
            }
        }

        // Recover by reselection once the old cell is gone.
        if t_loss > duration {
            break;
        }
        match next_coverage(&ctx, t_loss, duration)? {
            Some((t_next, cell)) => {
                summary.coverage_gap_s += t_next - t_loss;
                events.push(MobilityEvent {
                    time: t_next,
                    kind: MobilityEventKind::Reselection,
                    from_cell: Some(serving),
                    to_cell: Some(cell),
                });
                summary.reselections += 1;
                serving = cell;
                t_attach = t_next;
                anchor = ctx.footprint_center_unit(serving, t_next)?;
            }
            None => {
                summary.coverage_gap_s += duration - t_loss;
                break;
            }
        }
    }
    Ok(MobilityOutcome { events, summary })
}

/// First time in [from, until] where the satellite's sin(elevation) reaches
/// `sin_threshold`, refined to the quantum.
fn first_time_above(
    ctx: &SimContext,
    id: u32,
    sin_threshold: f64,
    from: f64,
    until: f64,
) -> Result<Option<f64>> {
    let sat = &ctx.constellation.satellites[id as usize];
    let above = |t: f64| -> Result<bool> {
        Ok(ctx.view(&sat.elements, sat.id, t)?.sin_elevation >= sin_threshold)
    };
    refine_first(from, until, STEP, &above)
}

/// First time the UE-to-footprint-center angle exceeds the limit
/// (cos below `cos_limit`).
fn first_time_beyond(
    ctx: &SimContext,
    serving: u32,
    anchor: Vec3,
    cos_limit: f64,
    from: f64,
    until: f64,
) -> Result<Option<f64>> {
    let beyond = |t: f64| -> Result<bool> {
        let center = match ctx.pattern {
            CellPattern::EarthMoving { .. } => ctx.footprint_center_unit(serving, t)?,
            CellPattern::QuasiEarthFixed { .. } => anchor,
        };
        Ok(center.dot(ctx.ue_unit) < cos_limit)
    };
    refine_first(from, until, STEP, &beyond)
}

/// Generic scan-and-bisect for the first time a predicate becomes true.
fn refine_first(
    from: f64,
    until: f64,
    step: f64,
    predicate: &dyn Fn(f64) -> Result<bool>,
) -> Result<Option<f64>> {
    if predicate(from)? {
        return Ok(Some(quantize(from)));
    }
    let mut t = from;
    while t < until {
        let next = (t + step).min(until);
        if predicate(next)? {
            let (mut lo, mut hi) = (t, next);
            while hi - lo > QUANTUM {
                let mid = 0.5 * (lo + hi);
                if predicate(mid)? {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(Some(quantize(0.5 * (lo + hi))));
        }
        t = next;
    }
    Ok(None)
}

/// First time at or after `from` when any cell covers the UE, with the
/// selected cell.
fn next_coverage(ctx: &SimContext, from: f64, until: f64) -> Result<Option<(f64, u32)>> {
    let some = |t: f64| -> Result<bool> { Ok(ctx.select(t)?.is_some()) };
    match refine_first(from, until, STEP, &some)? {
        Some(t) => {
            // The quantized instant may sit a hair before the boundary;
            // advance one quantum if needed.
            let t = if ctx.select(t)?.is_some() { t } else { quantize(t + QUANTUM) };
            Ok(ctx.select(t)?.map(|cell| (t, cell)))
        }
        None => Ok(None),
    }
}

/// One entry of an ephemeris-driven measurement schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementPoint {
    pub satellite: u32,
    pub time: f64,
    pub kind: MeasurementKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MeasurementKind {
    /// Elevation rises above the trigger level.
    Entry,
    /// Peak elevation of the pass.
    MaxElevation,
    /// Elevation falls below the trigger level.
    Exit,
}

impl MeasurementKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MeasurementKind::Entry => "entry",
            MeasurementKind::MaxElevation => "max_elevation",
            MeasurementKind::Exit => "exit",
        }
    }
}

/// Measurement instants a UE should honor within `horizon` seconds: per
/// satellite, the rise above `trigger` elevation, the pass peak, and the fall
/// below, sorted by time. Satellites that never rise above the trigger yield
/// no entries.
pub fn measurement_schedule(
    consts: &PhysicalConstants,
    constellation: &Constellation,
    ue: &GeodeticPosition,
    horizon: f64,
    trigger: f64,
) -> Result<Vec<MeasurementPoint>> {
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::InvalidParameter(format!("horizon {horizon} s")));
    }
    let step = (horizon / 4.0).min(10.0);
    let mut points = Vec::new();
    for sat in &constellation.satellites {
        let passes = crate::access::find_passes(
            consts,
            &sat.elements,
            ue,
            trigger,
            (0.0, horizon),
            step,
        )?;
        for pass in passes {
            if pass.aos > 0.0 {
                points.push(MeasurementPoint {
                    satellite: sat.id,
                    time: pass.aos,
                    kind: MeasurementKind::Entry,
                });
            }
            points.push(MeasurementPoint {
                satellite: sat.id,
                time: pass.max_elevation_time,
                kind: MeasurementKind::MaxElevation,
            });
            if pass.los < horizon {
                points.push(MeasurementPoint {
                    satellite: sat.id,
                    time: pass.los,
                    kind: MeasurementKind::Exit,
                });
            }
        }
    }
    points.sort_by(|a, b| {
        a.time
            .total_cmp(&b.time)
            .then(a.satellite.cmp(&b.satellite))
            .then(a.kind.cmp(&b.kind))
    });
    Ok(points)
}

/// Builds a single-plane "train" of evenly spaced satellites, the minimal
/// constellation giving continuous coverage of a point under the orbit.
pub fn train_constellation(
    consts: &PhysicalConstants,
    count: u32,
    altitude: f64,
    inclination: f64,
) -> Result<Constellation> {
    crate::coverage::generate_walker(
        consts,
        &crate::coverage::WalkerConfig {
            total_satellites: count,
            planes: 1,
            phasing_factor: 0,
            inclination,
            altitude,
        },
    )
}
