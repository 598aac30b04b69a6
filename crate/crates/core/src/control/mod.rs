//! Goal-tracking and obstacle-avoidance controllers and their fusion.
//!
//! Each control cycle runs both fuzzy controllers on the same inputs and
//! blends their commands as `x * tracking + (1 - x) * avoidance`, where the
//! weight `x` ramps from 0 to 1 as the nearest scan range grows from
//! `d_low` to `d_high`.

mod oaflc;
mod tflc;

pub use oaflc::Oaflc;
pub use tflc::Tflc;

use thiserror::Error;

use crate::dsl::ParseError;
use crate::sim::{wrap_angle, DepthScan, RobotState, VelocityCommand, BIN_COUNT};

/// Shipped goal-tracking rule file.
pub const TFLC_SOURCE: &str = include_str!("../../data/tflc.fis");
/// Shipped obstacle-avoidance rule file.
pub const OAFLC_SOURCE: &str = include_str!("../../data/oaflc.fis");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ControlError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("rule base does not fit the controller: {0}")]
    Interface(String),
    #[error("invalid fusion policy: {0}")]
    Policy(String),
    #[error("reach threshold must be positive, got {0}")]
    Threshold(f64),
}

/// Target position and the distance at which it counts as reached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoalSpec {
    pub x: f64,
    pub y: f64,
    reach_threshold: f64,
}

impl GoalSpec {
    pub const DEFAULT_REACH_THRESHOLD: f64 = 0.15;

    pub fn new(x: f64, y: f64) -> Self {
        Self {
            x,
            y,
            reach_threshold: Self::DEFAULT_REACH_THRESHOLD,
        }
    }

    pub fn with_reach_threshold(mut self, threshold: f64) -> Result<Self, ControlError> {
        if !(threshold > 0.0 && threshold.is_finite()) {
            return Err(ControlError::Threshold(threshold));
        }
        self.reach_threshold = threshold;
        Ok(self)
    }

    pub fn reach_threshold(&self) -> f64 {
        self.reach_threshold
    }

    pub fn distance_from(&self, state: &RobotState) -> f64 {
        (self.x - state.x()).hypot(self.y - state.y())
    }
}

/// Bearing of the goal relative to the robot's heading, in `(-pi, pi]`.
/// Positive means the goal is to the left. Zero when the robot sits on it.
pub fn heading_error(state: &RobotState, goal: &GoalSpec) -> f64 {
    let (dx, dy) = (goal.x - state.x(), goal.y - state.y());
    if dx.hypot(dy) < 1e-12 {
        return 0.0;
    }
    wrap_angle(dy.atan2(dx) - state.theta())
}

/// Minimum ranges of the left, center and right scan sectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorDistances {
    pub left: f64,
    pub center: f64,
    pub right: f64,
}

impl SectorDistances {
    pub fn new(left: f64, center: f64, right: f64) -> Self {
        Self {
            left,
            center,
            right,
        }
    }

    /// Left and right swapped.
    pub fn mirrored(&self) -> Self {
        Self::new(self.right, self.center, self.left)
    }
}

/// Bins 0..7 form the left sector, 7..13 the center and 13..20 the right.
pub const SECTOR_BINS: [std::ops::Range<usize>; 3] = [0..7, 7..13, 13..BIN_COUNT];

pub fn sectorize(scan: &DepthScan) -> SectorDistances {
    let min_of = |bins: &std::ops::Range<usize>| {
        scan.ranges()[bins.clone()]
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    };
    SectorDistances::new(
        min_of(&SECTOR_BINS[0]),
        min_of(&SECTOR_BINS[1]),
        min_of(&SECTOR_BINS[2]),
    )
}

/// Range band over which control shifts from avoidance to tracking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusionPolicy {
    d_low: f64,
    d_high: f64,
}

impl FusionPolicy {
    pub fn new(d_low: f64, d_high: f64) -> Result<Self, ControlError> {
        if !(0.4 <= d_low && d_low < d_high && d_high <= 3.0) {
            return Err(ControlError::Policy(format!(
                "need 0.4 <= d_low < d_high <= 3.0, got d_low={d_low} d_high={d_high}"
            )));
        }
        Ok(Self { d_low, d_high })
    }

    pub fn d_low(&self) -> f64 {
        self.d_low
    }

    pub fn d_high(&self) -> f64 {
        self.d_high
    }
}

impl Default for FusionPolicy {
    fn default() -> Self {
        Self {
            d_low: 0.5,
            d_high: 1.5,
        }
    }
}

/// Weight of the tracking command: 0 at or below `d_low`, 1 at or above
/// `d_high`, linear in between.
pub fn fusion_weight(policy: &FusionPolicy, scan: &DepthScan) -> f64 {
    if scan.is_clear() {
        return 1.0;
    }
    ((scan.min_range() - policy.d_low) / (policy.d_high - policy.d_low)).clamp(0.0, 1.0)
}

/// `x * tracking + (1 - x) * avoidance`, componentwise.
pub fn fuse(tracking: VelocityCommand, avoidance: VelocityCommand, x: f64) -> VelocityCommand {
    let x = x.clamp(0.0, 1.0);
    if x == 1.0 {
        return tracking;
    }
    if x == 0.0 {
        return avoidance;
    }
    VelocityCommand::new(
        x * tracking.v() + (1.0 - x) * avoidance.v(),
        x * tracking.omega() + (1.0 - x) * avoidance.omega(),
    )
}

/// Everything computed in one control cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlOutput {
    pub command: VelocityCommand,
    pub tracking: VelocityCommand,
    pub avoidance: VelocityCommand,
    pub weight: f64,
    pub sectors: SectorDistances,
}

/// Both controllers, built once and shared read-only.
#[derive(Debug, Clone, PartialEq)]
pub struct Navigator {
    tflc: Tflc,
    oaflc: Oaflc,
}

impl Navigator {
    pub fn new(tflc: Tflc, oaflc: Oaflc) -> Self {
        Self { tflc, oaflc }
    }

    /// Controllers built from the shipped rule files.
    pub fn standard() -> Self {
        Self::from_sources(TFLC_SOURCE, OAFLC_SOURCE).expect("shipped rule files are valid")
    }

    pub fn from_sources(tflc: &str, oaflc: &str) -> Result<Self, ControlError> {
        Ok(Self::new(
            Tflc::from_source(tflc)?,
            Oaflc::from_source(oaflc)?,
        ))
    }

    pub fn tflc(&self) -> &Tflc {
        &self.tflc
    }

    pub fn oaflc(&self) -> &Oaflc {
        &self.oaflc
    }

    /// One sense-to-command cycle. Pure in its arguments.
    pub fn control_step(
        &self,
        state: &RobotState,
        goal: &GoalSpec,
        scan: &DepthScan,
        policy: &FusionPolicy,
    ) -> ControlOutput {
        let tracking = self.tflc.command(state, goal);
        let sectors = sectorize(scan);
        let avoidance = self.oaflc.command(&sectors);
        let weight = fusion_weight(policy, scan);
        ControlOutput {
            command: fuse(tracking, avoidance, weight),
            tracking,
            avoidance,
            weight,
            sectors,
        }
    }
}

impl Default for Navigator {
    fn default() -> Self {
        Self::standard()
    }
}
