//! Closed-loop scenario execution.
//!
//! Every cycle senses, computes a fused command from that scan, and
//! integrates the kinematics for `dt`. The run stops when the goal is within
//! its reach threshold, the footprint touches a surface, or `max_time`
//! elapses. Rows are timestamped `k * dt` so equal configurations produce
//! bit-identical records.

mod record;
mod scenario;

pub use record::{metrics, Metrics, TrajectoryRecord, TrajectoryRow, CSV_HEADER};
pub use scenario::{load_scenario, load_world, ScenarioFile};

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::control::{ControlError, FusionPolicy, GoalSpec, Navigator};
use crate::sim::{self, in_collision, scan, RobotState, SimError, VelocityCommand, World};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error("invalid scenario: {0}")]
    InvalidConfig(String),
    #[error("scenario line {line}: {message}")]
    ScenarioSyntax { line: usize, message: String },
    #[error("{path}: {1}", path = .0.display())]
    World(PathBuf, SimError),
    #[error("{path}: {1}", path = .0.display())]
    Io(PathBuf, String),
    #[error(transparent)]
    Control(#[from] ControlError),
}

/// Everything needed to run one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub world: World,
    pub start: RobotState,
    pub goal: GoalSpec,
    pub dt: f64,
    pub max_time: f64,
    pub fusion: FusionPolicy,
}

impl ScenarioConfig {
    pub const DEFAULT_DT: f64 = 0.05;
    pub const DEFAULT_MAX_TIME: f64 = 120.0;

    /// Default timing and fusion band.
    pub fn new(world: World, start: RobotState, goal: GoalSpec) -> Self {
        Self {
            world,
            start,
            goal,
            dt: Self::DEFAULT_DT,
            max_time: Self::DEFAULT_MAX_TIME,
            fusion: FusionPolicy::default(),
        }
    }

    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |m: String| Err(RunError::InvalidConfig(m));
        if !(self.dt > 0.0 && self.dt <= 0.5) {
            return bad(format!("dt must lie in (0, 0.5], got {}", self.dt));
        }
        if !self.max_time.is_finite() || self.max_time <= self.dt {
            return bad(format!(
                "max_time {} must exceed dt {}",
                self.max_time, self.dt
            ));
        }
        if in_collision(&self.world, &self.start) {
            return bad("start pose is in collision".into());
        }
        if let Some((min, max)) = self.world.bounds() {
            let (gx, gy) = (self.goal.x, self.goal.y);
            if gx < min.x || gx > max.x || gy < min.y || gy > max.y {
                return bad(format!("goal ({gx}, {gy}) is outside the bounds"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Reached,
    Collision,
    Timeout,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Reached => "Reached",
            Verdict::Collision => "Collision",
            Verdict::Timeout => "Timeout",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioOutcome {
    pub verdict: Verdict,
    pub elapsed: f64,
    pub path_length: f64,
    pub min_clearance: f64,
    pub final_error: f64,
}

/// Runs `config` to completion with `navigator`.
///
/// The last row holds the terminal pose with a zero applied command; its
/// controller columns still show what both controllers proposed there.
pub fn run(
    config: &ScenarioConfig,
    navigator: &Navigator,
) -> Result<(TrajectoryRecord, ScenarioOutcome), RunError> {
    config.validate()?;
    let mut record = TrajectoryRecord::new();
    let mut state = config.start;
    let mut k: u64 = 0;

    let verdict = loop {
        let t = k as f64 * config.dt;
        let error = config.goal.distance_from(&state);
        let verdict = if in_collision(&config.world, &state) {
            Some(Verdict::Collision)
        } else if error <= config.goal.reach_threshold() {
            Some(Verdict::Reached)
        } else if t >= config.max_time {
            Some(Verdict::Timeout)
        } else {
            None
        };

        let sensed = scan(&config.world, &state);
        let (out, min_range) = match &sensed {
            Ok(s) => (
                Some(navigator.control_step(&state, &config.goal, s, &config.fusion)),
                s.min_range(),
            ),
            // Only reachable once the centre has entered an obstacle.
            Err(_) => (None, sim::SensorModel::XTION_NEAR.min_range),
        };
        let applied = match (verdict, out) {
            (None, Some(o)) => o.command,
            _ => VelocityCommand::ZERO,
        };
        let zero = VelocityCommand::ZERO;
        record.rows.push(TrajectoryRow {
            t,
            x: state.x(),
            y: state.y(),
            theta: state.theta(),
            v: applied.v(),
            omega: applied.omega(),
            x_weight: out.map_or(0.0, |o| o.weight),
            pos_err: error,
            min_range,
            v_tflc: out.map_or(zero, |o| o.tracking).v(),
            omega_tflc: out.map_or(zero, |o| o.tracking).omega(),
            v_oaflc: out.map_or(zero, |o| o.avoidance).v(),
            omega_oaflc: out.map_or(zero, |o| o.avoidance).omega(),
        });

        if let Some(v) = verdict {
            break v;
        }
        state = sim::step(&state, applied, config.dt);
        k += 1;
    };

    let m = metrics(&record, &config.world);
    Ok((
        record,
        ScenarioOutcome {
            verdict,
            elapsed: m.elapsed,
            path_length: m.path_length,
            min_clearance: m.min_clearance,
            final_error: m.final_error,
        },
    ))
}
