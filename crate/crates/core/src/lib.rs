//! Fuzzy-logic navigation for a differential-drive robot.
//!
//! The crate is layered bottom-up:
//!
//! * [`fuzzy`]: zero-order TSK inference engine.
//! * [`dsl`]: the line-oriented `.fis` rule-file format.
//! * [`sim`]: planar world, ray-cast depth sensor, unicycle kinematics.
//! * [`control`]: the goal-tracking and obstacle-avoidance controllers and
//!   their weighted fusion.
//! * [`runner`]: closed-loop scenarios, trajectory records and metrics.

pub mod control;
pub mod dsl;
pub mod fuzzy;
pub mod runner;
pub mod sim;

pub use control::{FusionPolicy, GoalSpec, Navigator, SectorDistances};
pub use fuzzy::{
    FuzzyError, FuzzyInferenceSystem, LinguisticVariable, MembershipFunction, TskRule,
};
pub use runner::{run, ScenarioConfig, ScenarioOutcome, TrajectoryRecord, Verdict};
pub use sim::{DepthScan, RobotState, VelocityCommand, World};
