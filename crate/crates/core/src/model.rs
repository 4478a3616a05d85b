//! Domain entities, the profit objective, and the constraint validator.
//!
//! Conventions used throughout the crate:
//!
//! * All times are integer seconds from scenario start; assignments occupy
//!   half-open intervals `[start, end)`, so `a.end == b.start` is contact,
//!   not overlap.
//! * A satellite's two antennas are independent timelines. Setup gaps (τ)
//!   bind consecutive *regular* tasks on one satellite antenna; switch gaps
//!   (φ) bind consecutive *regular* tasks on one ground antenna. Feed-switch
//!   assignments are exempt from both gaps and instead obey the handover
//!   rules (window overlap ≥ Δ, exact start-at-predecessor-end, same
//!   satellite, different antennas on both sides).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

/// Time in whole seconds from scenario start.
pub type Seconds = i64;

macro_rules! id_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(
            Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash,
            serde::Serialize, serde::Deserialize,
        )]
        #[serde(transparent)]
        pub struct $name(pub u32);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

id_type!(/// Identifier of a satellite. SatelliteId);
id_type!(/// Identifier of a satellite antenna. SatAntennaId);
id_type!(/// Identifier of a ground station. StationId);
id_type!(/// Identifier of a ground station antenna. GroundAntennaId);
id_type!(/// Identifier of a visibility time window. WindowId);
id_type!(/// Identifier of a link-construction task (the gene value). TaskId);

/// One antenna on board a satellite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatelliteAntenna {
    pub id: SatAntennaId,
    pub satellite_id: SatelliteId,
    /// Attitude adjustment time required between consecutive regular tasks
    /// on this antenna (τ).
    pub setup_time: Seconds,
}

/// A communication satellite carrying exactly two antennas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Satellite {
    pub id: SatelliteId,
    pub antennas: [SatAntennaId; 2],
    /// Minimum visibility-window overlap required to perform a feed switch
    /// between the two antennas (Δ).
    pub min_overlap: Seconds,
}

/// One antenna of a ground station.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundAntenna {
    pub id: GroundAntennaId,
    pub station_id: StationId,
    /// Minimum interval between consecutive regular tasks on this antenna (φ).
    pub switch_interval: Seconds,
}

/// A visibility window between one satellite antenna and one ground antenna.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeWindow {
    pub id: WindowId,
    pub sat_antenna: SatAntennaId,
    pub ground_antenna: GroundAntennaId,
    /// Earliest visible time.
    pub evt: Seconds,
    /// Latest visible time.
    pub lvt: Seconds,
}

impl TimeWindow {
    pub fn length(&self) -> Seconds {
        self.lvt - self.evt
    }

    /// Overlap duration with another window (0 when disjoint).
    pub fn overlap(&self, other: &TimeWindow) -> Seconds {
        (self.lvt.min(other.lvt) - self.evt.max(other.evt)).max(0)
    }
}

/// A link-construction task bound to a single visibility window.
#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub id: TaskId,
    pub window: WindowId,
    /// Minimum execution duration; shorter placements are not allowed.
    pub min_duration: Seconds,
    /// Profit earned per second of link time.
    pub profit_rate: f64,
}

/// Execution mode of a scheduled task.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssignmentMode {
    Regular,
    /// Feed-switch handover: this task starts exactly when the named
    /// predecessor task ends, on the same satellite's other antenna.
    FeedSwitchFrom(TaskId),
}

impl AssignmentMode {
    pub fn is_regular(&self) -> bool {
        matches!(self, AssignmentMode::Regular)
    }

    pub fn predecessor(&self) -> Option<TaskId> {
        match self {
            AssignmentMode::Regular => None,
            AssignmentMode::FeedSwitchFrom(p) => Some(*p),
        }
    }
}

/// A scheduled execution of one task.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Assignment {
    pub task: TaskId,
    pub start: Seconds,
    pub end: Seconds,
    pub mode: AssignmentMode,
}

impl Assignment {
    pub fn duration(&self) -> Seconds {
        self.end - self.start
    }
}

/// A decoded schedule: at most one assignment per task, plus the cached
/// total profit.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    assignments: BTreeMap<TaskId, Assignment>,
    profit: f64,
}

impl Schedule {
    pub fn empty() -> Self {
        Schedule {
            assignments: BTreeMap::new(),
            profit: 0.0,
        }
    }

    /// Builds a schedule from assignments, rejecting duplicates and dangling
    /// task references, and caches the recomputed profit.
    pub fn new(
        assignments: impl IntoIterator<Item = Assignment>,
        instance: &Instance,
    ) -> Result<Self, ModelError> {
        let mut map = BTreeMap::new();
        for a in assignments {
            if instance.task(a.task).is_none() {
                return Err(ModelError::UnknownTask(a.task));
            }
            if map.insert(a.task, a).is_some() {
                return Err(ModelError::DuplicateAssignment(a.task));
            }
        }
        let mut schedule = Schedule {
            assignments: map,
            profit: 0.0,
        };
        schedule.profit = profit_of(&schedule, instance)?;
        Ok(schedule)
    }

    pub fn assignments(&self) -> impl Iterator<Item = &Assignment> {
        self.assignments.values()
    }

    pub fn get(&self, task: TaskId) -> Option<&Assignment> {
        self.assignments.get(&task)
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    /// Cached total profit; equals `profit_of` recomputation by construction.
    pub fn profit(&self) -> f64 {
        self.profit
    }

    pub fn has_feed_switch(&self) -> bool {
        self.assignments
            .values()
            .any(|a| !a.mode.is_regular())
    }
}

/// Immutable problem data: resources, visibility windows, tasks.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    horizon: Seconds,
    satellites: Vec<Satellite>,
    sat_antennas: Vec<SatelliteAntenna>,
    ground_antennas: Vec<GroundAntenna>,
    windows: Vec<TimeWindow>,
    tasks: Vec<Task>,
    task_index: HashMap<TaskId, usize>,
    window_index: HashMap<WindowId, usize>,
    sat_antenna_index: HashMap<SatAntennaId, usize>,
    ground_antenna_index: HashMap<GroundAntennaId, usize>,
    satellite_index: HashMap<SatelliteId, usize>,
    /// Pre-resolved positional context per task, in task order.
    resolved: Vec<TaskCtx>,
}

/// Positional cross-references for one task, resolved once at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct TaskCtx {
    pub task: usize,
    pub window: usize,
    pub satellite: usize,
    pub sat_antenna: usize,
    /// The same satellite's other antenna.
    pub sibling_antenna: usize,
    pub ground_antenna: usize,
}

impl Instance {
    pub fn new(
        horizon: Seconds,
        satellites: Vec<Satellite>,
        sat_antennas: Vec<SatelliteAntenna>,
        ground_antennas: Vec<GroundAntenna>,
        windows: Vec<TimeWindow>,
        tasks: Vec<Task>,
    ) -> Result<Self, ModelError> {
        if horizon <= 0 {
            return Err(ModelError::InvalidHorizon(horizon));
        }

        let satellite_index = unique_index(satellites.iter().map(|s| s.id), "satellite")?;
        let sat_antenna_index =
            unique_index(sat_antennas.iter().map(|a| a.id), "satellite antenna")?;
        let ground_antenna_index =
            unique_index(ground_antennas.iter().map(|a| a.id), "ground antenna")?;
        let window_index = unique_index(windows.iter().map(|w| w.id), "window")?;
        let task_index = unique_index(tasks.iter().map(|t| t.id), "task")?;

        for antenna in &sat_antennas {
            if antenna.setup_time < 0 {
                return Err(ModelError::NegativeParameter {
                    what: "setup_time",
                    value: antenna.setup_time,
                });
            }
            let sat = satellite_index
                .get(&antenna.satellite_id)
                .map(|&i| &satellites[i])
                .ok_or(ModelError::UnknownSatellite(antenna.satellite_id))?;
            if !sat.antennas.contains(&antenna.id) {
                return Err(ModelError::AntennaNotListed {
                    antenna: antenna.id,
                    satellite: sat.id,
                });
            }
        }
        for sat in &satellites {
            if sat.min_overlap < 0 {
                return Err(ModelError::NegativeParameter {
                    what: "min_overlap",
                    value: sat.min_overlap,
                });
            }
            if sat.antennas[0] == sat.antennas[1] {
                return Err(ModelError::DuplicateAntennaPair(sat.id));
            }
            for id in sat.antennas {
                let pos = *sat_antenna_index
                    .get(&id)
                    .ok_or(ModelError::UnknownSatAntenna(id))?;
                if sat_antennas[pos].satellite_id != sat.id {
                    return Err(ModelError::AntennaNotListed {
                        antenna: id,
                        satellite: sat.id,
                    });
                }
            }
        }
        for antenna in &ground_antennas {
            if antenna.switch_interval < 0 {
                return Err(ModelError::NegativeParameter {
                    what: "switch_interval",
                    value: antenna.switch_interval,
                });
            }
        }
        for w in &windows {
            if !sat_antenna_index.contains_key(&w.sat_antenna) {
                return Err(ModelError::UnknownSatAntenna(w.sat_antenna));
            }
            if !ground_antenna_index.contains_key(&w.ground_antenna) {
                return Err(ModelError::UnknownGroundAntenna(w.ground_antenna));
            }
            if w.evt < 0 || w.evt >= w.lvt || w.lvt > horizon {
                return Err(ModelError::InvalidWindow {
                    window: w.id,
                    evt: w.evt,
                    lvt: w.lvt,
                    horizon,
                });
            }
        }

        let mut resolved = Vec::with_capacity(tasks.len());
        for (pos, t) in tasks.iter().enumerate() {
            let window = *window_index
                .get(&t.window)
                .ok_or(ModelError::UnknownWindow(t.window))?;
            if t.min_duration <= 0 {
                return Err(ModelError::InvalidTask {
                    task: t.id,
                    reason: "min_duration must be positive",
                });
            }
            if !(t.profit_rate > 0.0) {
                return Err(ModelError::InvalidTask {
                    task: t.id,
                    reason: "profit_rate must be positive",
                });
            }
            let w = &windows[window];
            if t.min_duration > w.length() {
                log::warn!(
                    "task {} requires {} s but its window {} is only {} s long; it can never be scheduled",
                    t.id, t.min_duration, w.id, w.length()
                );
            }
            let sat_antenna = sat_antenna_index[&w.sat_antenna];
            let satellite = satellite_index[&sat_antennas[sat_antenna].satellite_id];
            let pair = satellites[satellite].antennas;
            let sibling_id = if pair[0] == w.sat_antenna { pair[1] } else { pair[0] };
            resolved.push(TaskCtx {
                task: pos,
                window,
                satellite,
                sat_antenna,
                sibling_antenna: sat_antenna_index[&sibling_id],
                ground_antenna: ground_antenna_index[&w.ground_antenna],
            });
        }

        Ok(Instance {
            horizon,
            satellites,
            sat_antennas,
            ground_antennas,
            windows,
            tasks,
            task_index,
            window_index,
            sat_antenna_index,
            ground_antenna_index,
            satellite_index,
            resolved,
        })
    }

    pub fn horizon(&self) -> Seconds {
        self.horizon
    }

    pub fn satellites(&self) -> &[Satellite] {
        &self.satellites
    }

    pub fn sat_antennas(&self) -> &[SatelliteAntenna] {
        &self.sat_antennas
    }

    pub fn ground_antennas(&self) -> &[GroundAntenna] {
        &self.ground_antennas
    }

    pub fn windows(&self) -> &[TimeWindow] {
        &self.windows
    }

    pub fn tasks(&self) -> &[Task] {
        &self.tasks
    }

    pub fn task_count(&self) -> usize {
        self.tasks.len()
    }

    pub fn task(&self, id: TaskId) -> Option<&Task> {
        self.task_index.get(&id).map(|&i| &self.tasks[i])
    }

    pub fn window(&self, id: WindowId) -> Option<&TimeWindow> {
        self.window_index.get(&id).map(|&i| &self.windows[i])
    }

    pub fn sat_antenna(&self, id: SatAntennaId) -> Option<&SatelliteAntenna> {
        self.sat_antenna_index.get(&id).map(|&i| &self.sat_antennas[i])
    }

    pub fn ground_antenna(&self, id: GroundAntennaId) -> Option<&GroundAntenna> {
        self.ground_antenna_index
            .get(&id)
            .map(|&i| &self.ground_antennas[i])
    }

    pub fn satellite(&self, id: SatelliteId) -> Option<&Satellite> {
        self.satellite_index.get(&id).map(|&i| &self.satellites[i])
    }

    /// Window of a task, following the task → window reference.
    pub fn window_of(&self, task: TaskId) -> Option<&TimeWindow> {
        self.task(task).and_then(|t| self.window(t.window))
    }

    pub(crate) fn task_pos(&self, id: TaskId) -> Option<usize> {
        self.task_index.get(&id).copied()
    }

    pub(crate) fn ctx(&self, task_pos: usize) -> &TaskCtx {
        &self.resolved[task_pos]
    }

    /// Pairs of tasks on the same satellite, different antennas, whose
    /// windows overlap by at least the satellite's Δ — the candidate
    /// feed-switch handovers this instance admits.
    pub fn feed_switch_pairs(&self) -> Vec<(TaskId, TaskId)> {
        let mut by_satellite: HashMap<usize, Vec<usize>> = HashMap::new();
        for (pos, ctx) in self.resolved.iter().enumerate() {
            by_satellite.entry(ctx.satellite).or_default().push(pos);
        }
        let mut pairs = Vec::new();
        for (sat_pos, members) in by_satellite {
            let delta = self.satellites[sat_pos].min_overlap;
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    let (ca, cb) = (&self.resolved[a], &self.resolved[b]);
                    if ca.sat_antenna == cb.sat_antenna || ca.ground_antenna == cb.ground_antenna
                    {
                        continue;
                    }
                    if self.windows[ca.window].overlap(&self.windows[cb.window]) >= delta {
                        pairs.push((self.tasks[a].id, self.tasks[b].id));
                    }
                }
            }
        }
        pairs.sort_unstable();
        pairs
    }
}

// HashMap key helper: SatelliteId is Copy; this exists only to keep the
// satellite() accessor signature uniform with the others.
fn i_copy(id: SatelliteId) -> SatelliteId {
    id
}

fn unique_index<K: std::hash::Hash + Eq + Copy + fmt::Debug>(
    ids: impl Iterator<Item = K>,
    kind: &'static str,
) -> Result<HashMap<K, usize>, ModelError> {
    let mut map = HashMap::new();
    for (pos, id) in ids.enumerate() {
        if map.insert(id, pos).is_some() {
            return Err(ModelError::DuplicateId {
                kind,
                id: format!("{id:?}"),
            });
        }
    }
    Ok(map)
}

/// Structural errors: broken cross-references and malformed entities, as
/// opposed to constraint violations reported by [`validate`].
#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("horizon must be positive, got {0}")]
    InvalidHorizon(Seconds),
    #[error("duplicate {kind} id {id}")]
    DuplicateId { kind: &'static str, id: String },
    #[error("satellite {0} lists the same antenna twice")]
    DuplicateAntennaPair(SatelliteId),
    #[error("unknown satellite {0}")]
    UnknownSatellite(SatelliteId),
    #[error("unknown satellite antenna {0}")]
    UnknownSatAntenna(SatAntennaId),
    #[error("unknown ground antenna {0}")]
    UnknownGroundAntenna(GroundAntennaId),
    #[error("unknown window {0}")]
    UnknownWindow(WindowId),
    #[error("unknown task {0}")]
    UnknownTask(TaskId),
    #[error("antenna {antenna} is not listed by satellite {satellite}")]
    AntennaNotListed {
        antenna: SatAntennaId,
        satellite: SatelliteId,
    },
    #[error("window {window}: need 0 <= evt < lvt <= horizon, got evt={evt} lvt={lvt} horizon={horizon}")]
    InvalidWindow {
        window: WindowId,
        evt: Seconds,
        lvt: Seconds,
        horizon: Seconds,
    },
    #[error("task {task}: {reason}")]
    InvalidTask { task: TaskId, reason: &'static str },
    #[error("{what} must be non-negative, got {value}")]
    NegativeParameter { what: &'static str, value: Seconds },
    #[error("more than one assignment for task {0}")]
    DuplicateAssignment(TaskId),
}

/// The constraint a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// Start must precede end.
    StartBeforeEnd,
    /// Assignment starts before its window opens.
    WindowStart,
    /// Assignment ends after its window closes.
    WindowEnd,
    /// Assignment shorter than the task's minimum duration.
    MinDuration,
    /// Two assignments overlap on one satellite antenna.
    SatAntennaOverlap,
    /// Two assignments overlap on one ground antenna.
    GroundAntennaOverlap,
    /// Consecutive regular tasks on a satellite antenna closer than τ.
    SetupGap,
    /// Consecutive regular tasks on a ground antenna closer than φ.
    SwitchGap,
    /// Feed-switch windows overlap less than Δ.
    FeedSwitchOverlap,
    /// Feed-switch successor does not start exactly at predecessor end.
    FeedSwitchContinuity,
    /// Feed-switch pair breaks the same-satellite / different-antennas /
    /// different-ground-antennas structure.
    FeedSwitchTopology,
    /// Feed-switch predecessor task has no assignment in the schedule.
    FeedSwitchOrphan,
}

/// One violated constraint with the offending assignments and the measured
/// slack (how far the constraint is from holding; negative means violated
/// by that amount, except `FeedSwitchContinuity` where any nonzero gap is a
/// violation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub constraint: Constraint,
    pub tasks: Vec<TaskId>,
    pub slack: Seconds,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} tasks={:?} slack={}",
            self.constraint,
            self.tasks.iter().map(|t| t.0).collect::<Vec<_>>(),
            self.slack
        )
    }
}

/// Total profit of a schedule: each assignment contributes its duration
/// times its own task's profit rate, regardless of mode.
pub fn profit_of(schedule: &Schedule, instance: &Instance) -> Result<f64, ModelError> {
    let mut total = 0.0;
    for a in schedule.assignments() {
        let task = instance.task(a.task).ok_or(ModelError::UnknownTask(a.task))?;
        total += (a.end - a.start) as f64 * task.profit_rate;
    }
    Ok(total)
}

/// Loose upper bound on any feasible schedule's profit: every task earns its
/// full window length.
pub fn profit_upper_bound(instance: &Instance) -> f64 {
    instance
        .tasks()
        .iter()
        .map(|t| {
            let w = instance.window(t.window).expect("validated at construction");
            t.profit_rate * w.length() as f64
        })
        .sum()
}

/// Checks a schedule against every scheduling constraint and returns all
/// violations found (empty ⇔ feasible). Dangling task references are
/// structural errors, reported via `Err` instead.
pub fn validate(schedule: &Schedule, instance: &Instance) -> Result<Vec<Violation>, ModelError> {
    let mut violations = Vec::new();

    // Resolve every reference up front so the scans below cannot dangle.
    for a in schedule.assignments() {
        if instance.task(a.task).is_none() {
            return Err(ModelError::UnknownTask(a.task));
        }
        if let Some(pred) = a.mode.predecessor() {
            if instance.task(pred).is_none() {
                return Err(ModelError::UnknownTask(pred));
            }
        }
    }

    // Per-assignment checks: ordering, window containment, duration.
    for a in schedule.assignments() {
        let task = instance.task(a.task).unwrap();
        let w = instance.window(task.window).unwrap();
        if a.start >= a.end {
            violations.push(Violation {
                constraint: Constraint::StartBeforeEnd,
                tasks: vec![a.task],
                slack: a.end - a.start,
            });
        }
        if a.start < w.evt {
            violations.push(Violation {
                constraint: Constraint::WindowStart,
                tasks: vec![a.task],
                slack: a.start - w.evt,
            });
        }
        if a.end > w.lvt {
            violations.push(Violation {
                constraint: Constraint::WindowEnd,
                tasks: vec![a.task],
                slack: w.lvt - a.end,
            });
        }
        if a.duration() < task.min_duration {
            violations.push(Violation {
                constraint: Constraint::MinDuration,
                tasks: vec![a.task],
                slack: a.duration() - task.min_duration,
            });
        }
    }

    // Timeline scans per antenna: exclusivity plus gap rules.
    let mut per_sat_antenna: HashMap<usize, Vec<&Assignment>> = HashMap::new();
    let mut per_ground_antenna: HashMap<usize, Vec<&Assignment>> = HashMap::new();
    for a in schedule.assignments() {
        let pos = instance.task_pos(a.task).unwrap();
        let ctx = instance.ctx(pos);
        per_sat_antenna.entry(ctx.sat_antenna).or_default().push(a);
        per_ground_antenna
            .entry(ctx.ground_antenna)
            .or_default()
            .push(a);
    }

    let mut antenna_keys: Vec<usize> = per_sat_antenna.keys().copied().collect();
    antenna_keys.sort_unstable();
    for key in antenna_keys {
        let lane = per_sat_antenna.get_mut(&key).unwrap();
        let tau = instance.sat_antennas()[key].setup_time;
        scan_lane(lane, tau, Constraint::SatAntennaOverlap, Constraint::SetupGap, &mut violations);
    }

    let mut ground_keys: Vec<usize> = per_ground_antenna.keys().copied().collect();
    ground_keys.sort_unstable();
    for key in ground_keys {
        let lane = per_ground_antenna.get_mut(&key).unwrap();
        let phi = instance.ground_antennas()[key].switch_interval;
        scan_lane(
            lane,
            phi,
            Constraint::GroundAntennaOverlap,
            Constraint::SwitchGap,
            &mut violations,
        );
    }

    // Feed-switch link rules.
    for a in schedule.assignments() {
        let pred_id = match a.mode.predecessor() {
            Some(p) => p,
            None => continue,
        };
        let succ_ctx = *instance.ctx(instance.task_pos(a.task).unwrap());
        let pred_ctx = *instance.ctx(instance.task_pos(pred_id).unwrap());
        let pred = match schedule.get(pred_id) {
            Some(p) => p,
            None => {
                violations.push(Violation {
                    constraint: Constraint::FeedSwitchOrphan,
                    tasks: vec![a.task, pred_id],
                    slack: 0,
                });
                continue;
            }
        };
        if pred_ctx.satellite != succ_ctx.satellite
            || pred_ctx.sat_antenna == succ_ctx.sat_antenna
            || pred_ctx.ground_antenna == succ_ctx.ground_antenna
        {
            violations.push(Violation {
                constraint: Constraint::FeedSwitchTopology,
                tasks: vec![a.task, pred_id],
                slack: 0,
            });
        }
        let delta = instance.satellites()[succ_ctx.satellite].min_overlap;
        let overlap = instance.windows()[succ_ctx.window]
            .overlap(&instance.windows()[pred_ctx.window]);
        if overlap < delta {
            violations.push(Violation {
                constraint: Constraint::FeedSwitchOverlap,
                tasks: vec![a.task, pred_id],
                slack: overlap - delta,
            });
        }
        if a.start != pred.end {
            violations.push(Violation {
                constraint: Constraint::FeedSwitchContinuity,
                tasks: vec![a.task, pred_id],
                slack: a.start - pred.end,
            });
        }
    }

    Ok(violations)
}

/// Overlap sweep plus gap check between consecutive regular assignments on
/// one antenna timeline.
fn scan_lane(
    lane: &mut [&Assignment],
    gap: Seconds,
    overlap_kind: Constraint,
    gap_kind: Constraint,
    violations: &mut Vec<Violation>,
) {
    lane.sort_by_key(|a| (a.start, a.end, a.task));

    // Exclusivity: compare each assignment with the latest-reaching earlier one.
    let mut max_end: Option<&Assignment> = None;
    for a in lane.iter() {
        if let Some(prev) = max_end {
            if a.start < prev.end {
                violations.push(Violation {
                    constraint: overlap_kind,
                    tasks: vec![prev.task, a.task],
                    slack: a.start - prev.end,
                });
            }
        }
        if max_end.map_or(true, |prev| a.end > prev.end) {
            max_end = Some(a);
        }
    }

    // Gap rule binds consecutive tasks in the regular-only subsequence.
    let mut last_regular: Option<&Assignment> = None;
    for a in lane.iter().filter(|a| a.mode.is_regular()) {
        if let Some(prev) = last_regular {
            let measured = a.start - prev.end;
            if measured < gap {
                violations.push(Violation {
                    constraint: gap_kind,
                    tasks: vec![prev.task, a.task],
                    slack: measured - gap,
                });
            }
        }
        last_regular = Some(a);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One satellite (antennas 0/1, τ=10, Δ=8), two stations with one
    /// antenna each (φ=30), two windows, two tasks.
    pub(crate) fn tiny_instance() -> Instance {
        Instance::new(
            86_400,
            vec![Satellite {
                id: SatelliteId(0),
                antennas: [SatAntennaId(0), SatAntennaId(1)],
                min_overlap: 8,
            }],
            vec![
                SatelliteAntenna {
                    id: SatAntennaId(0),
                    satellite_id: SatelliteId(0),
                    setup_time: 10,
                },
                SatelliteAntenna {
                    id: SatAntennaId(1),
                    satellite_id: SatelliteId(0),
                    setup_time: 10,
                },
            ],
            vec![
                GroundAntenna {
                    id: GroundAntennaId(0),
                    station_id: StationId(0),
                    switch_interval: 30,
                },
                GroundAntenna {
                    id: GroundAntennaId(1),
                    station_id: StationId(1),
                    switch_interval: 30,
                },
            ],
            vec![
                TimeWindow {
                    id: WindowId(0),
                    sat_antenna: SatAntennaId(0),
                    ground_antenna: GroundAntennaId(0),
                    evt: 0,
                    lvt: 1000,
                },
                TimeWindow {
                    id: WindowId(1),
                    sat_antenna: SatAntennaId(1),
                    ground_antenna: GroundAntennaId(1),
                    evt: 500,
                    lvt: 1500,
                },
            ],
            vec![
                Task {
                    id: TaskId(0),
                    window: WindowId(0),
                    min_duration: 50,
                    profit_rate: 1.0,
                },
                Task {
                    id: TaskId(1),
                    window: WindowId(1),
                    min_duration: 50,
                    profit_rate: 2.0,
                },
            ],
        )
        .unwrap()
    }

    fn regular(task: u32, start: Seconds, end: Seconds) -> Assignment {
        Assignment {
            task: TaskId(task),
            start,
            end,
            mode: AssignmentMode::Regular,
        }
    }

    #[test]
    fn empty_schedule_has_zero_profit() {
        let instance = tiny_instance();
        let s = Schedule::empty();
        assert_eq!(profit_of(&s, &instance).unwrap(), 0.0);
    }

    #[test]
    fn single_regular_assignment_profit() {
        let instance = tiny_instance();
        let s = Schedule::new([regular(1, 600, 800)], &instance).unwrap();
        // (800 - 600) * 2.0
        assert_eq!(s.profit(), 400.0);
        assert_eq!(profit_of(&s, &instance).unwrap(), 400.0);
    }

    #[test]
    fn feed_switch_chain_profit_sums_members() {
        let instance = tiny_instance();
        // Chain: task 0 regular [500, 550) at rate 1, task 1 hands over at 550
        // and runs to 620 at rate 2: 50 + 140.
        let s = Schedule::new(
            [
                regular(0, 500, 550),
                Assignment {
                    task: TaskId(1),
                    start: 550,
                    end: 620,
                    mode: AssignmentMode::FeedSwitchFrom(TaskId(0)),
                },
            ],
            &instance,
        )
        .unwrap();
        assert_eq!(s.profit(), 50.0 + 140.0);
        assert!(validate(&s, &instance).unwrap().is_empty());
        assert!(s.has_feed_switch());
    }

    #[test]
    fn upper_bound_is_full_window_profit() {
        let instance = tiny_instance();
        // 1000 * 1.0 + 1000 * 2.0
        assert_eq!(profit_upper_bound(&instance), 3000.0);

        let one_task = Instance::new(
            1000,
            instance.satellites().to_vec(),
            instance.sat_antennas().to_vec(),
            instance.ground_antennas().to_vec(),
            vec![TimeWindow {
                id: WindowId(0),
                sat_antenna: SatAntennaId(0),
                ground_antenna: GroundAntennaId(0),
                evt: 100,
                lvt: 200,
            }],
            vec![Task {
                id: TaskId(0),
                window: WindowId(0),
                min_duration: 10,
                profit_rate: 2.0,
            }],
        )
        .unwrap();
        assert_eq!(profit_upper_bound(&one_task), 200.0);

        let empty = Instance::new(
            1000,
            vec![],
            vec![],
            vec![],
            vec![],
            vec![],
        )
        .unwrap();
        assert_eq!(profit_upper_bound(&empty), 0.0);
    }

    #[test]
    fn switch_gap_violation_reports_slack() {
        let instance = tiny_instance();
        // Both tasks forced onto ground antenna 0 is impossible here (windows
        // pin the antennas), so build the conflict on ground antenna 0 by
        // giving task 1's window the same ground antenna.
        let mut windows = instance.windows().to_vec();
        windows[1].ground_antenna = GroundAntennaId(0);
        windows[1].sat_antenna = SatAntennaId(0);
        let instance = Instance::new(
            instance.horizon(),
            instance.satellites().to_vec(),
            instance.sat_antennas().to_vec(),
            instance.ground_antennas().to_vec(),
            windows,
            instance.tasks().to_vec(),
        )
        .unwrap();

        // Gap of 5 s on ground antenna 0 with φ=30: slack −25. The same gap
        // on satellite antenna 0 with τ=10 also trips: slack −5.
        let s = Schedule::new([regular(0, 500, 600), regular(1, 605, 700)], &instance).unwrap();
        let violations = validate(&s, &instance).unwrap();
        let switch: Vec<_> = violations
            .iter()
            .filter(|v| v.constraint == Constraint::SwitchGap)
            .collect();
        assert_eq!(switch.len(), 1);
        assert_eq!(switch[0].slack, -25);
        assert_eq!(switch[0].tasks, vec![TaskId(0), TaskId(1)]);
        assert!(violations
            .iter()
            .any(|v| v.constraint == Constraint::SetupGap && v.slack == -5));
    }

    #[test]
    fn window_start_violation() {
        let instance = tiny_instance();
        let s = Schedule::new([regular(1, 499, 600)], &instance).unwrap();
        let violations = validate(&s, &instance).unwrap();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].constraint, Constraint::WindowStart);
        assert_eq!(violations[0].slack, -1);
    }

    #[test]
    fn lone_full_window_assignment_is_feasible() {
        let instance = tiny_instance();
        let s = Schedule::new([regular(0, 0, 1000)], &instance).unwrap();
        assert!(validate(&s, &instance).unwrap().is_empty());
    }

    #[test]
    fn overlap_detected_even_for_nested_intervals() {
        let instance = tiny_instance();
        let mut windows = instance.windows().to_vec();
        windows[1].ground_antenna = GroundAntennaId(0);
        windows[1].sat_antenna = SatAntennaId(0);
        windows[1].evt = 0;
        let instance = Instance::new(
            instance.horizon(),
            instance.satellites().to_vec(),
            instance.sat_antennas().to_vec(),
            instance.ground_antennas().to_vec(),
            windows,
            instance.tasks().to_vec(),
        )
        .unwrap();
        let s = Schedule::new([regular(0, 0, 900), regular(1, 100, 200)], &instance).unwrap();
        let violations = validate(&s, &instance).unwrap();
        assert!(violations
            .iter()
            .any(|v| v.constraint == Constraint::SatAntennaOverlap));
        assert!(violations
            .iter()
            .any(|v| v.constraint == Constraint::GroundAntennaOverlap));
    }

    #[test]
    fn orphaned_feed_switch_member_is_flagged() {
        let instance = tiny_instance();
        let s = Schedule::new(
            [Assignment {
                task: TaskId(1),
                start: 550,
                end: 620,
                mode: AssignmentMode::FeedSwitchFrom(TaskId(0)),
            }],
            &instance,
        )
        .unwrap();
        let violations = validate(&s, &instance).unwrap();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].constraint, Constraint::FeedSwitchOrphan);
    }

    #[test]
    fn dangling_task_is_structural_error() {
        let instance = tiny_instance();
        let s = Schedule::new([regular(7, 0, 100)], &instance);
        assert_eq!(s.unwrap_err(), ModelError::UnknownTask(TaskId(7)));
    }

    #[test]
    fn duplicate_assignment_rejected() {
        let instance = tiny_instance();
        let err = Schedule::new([regular(0, 0, 100), regular(0, 200, 300)], &instance)
            .unwrap_err();
        assert_eq!(err, ModelError::DuplicateAssignment(TaskId(0)));
    }

    #[test]
    fn feed_switch_pair_detection() {
        let instance = tiny_instance();
        // Windows overlap on [500, 1000) = 500 ≥ Δ = 8, different antennas
        // on both sides.
        assert_eq!(instance.feed_switch_pairs(), vec![(TaskId(0), TaskId(1))]);
    }

    #[test]
    fn profit_is_additive_over_disjoint_subsets() {
        let instance = tiny_instance();
        let a = regular(0, 0, 400);
        let b = regular(1, 600, 900);
        let whole = Schedule::new([a, b], &instance).unwrap();
        let pa = Schedule::new([a], &instance).unwrap();
        let pb = Schedule::new([b], &instance).unwrap();
        assert_eq!(whole.profit(), pa.profit() + pb.profit());
    }
}
