use std::f64::consts::{PI, TAU};

use super::geometry::Point;

/// Kobuki base top speed, 70 cm/s.
pub const MAX_LINEAR_SPEED: f64 = 0.7;
/// Kobuki base top turn rate, 180 deg/s.
pub const MAX_ANGULAR_SPEED: f64 = PI;
/// Distance between the drive wheels (m).
pub const WHEELBASE: f64 = 0.23;
/// Radius of the circular robot footprint (m).
pub const BODY_RADIUS: f64 = 0.18;

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Planar pose of the robot. Heading is kept in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobotState {
    x: f64,
    y: f64,
    theta: f64,
    body_radius: f64,
}

impl RobotState {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self {
            x,
            y,
            theta: wrap_angle(theta),
            body_radius: BODY_RADIUS,
        }
    }

    pub fn with_body_radius(mut self, radius: f64) -> Self {
        self.body_radius = radius;
        self
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn body_radius(&self) -> f64 {
        self.body_radius
    }

    pub fn position(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// Linear and angular velocity command, clamped to the base's limits.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VelocityCommand {
    v: f64,
    omega: f64,
}

impl VelocityCommand {
    pub const ZERO: VelocityCommand = VelocityCommand { v: 0.0, omega: 0.0 };

    pub fn new(v: f64, omega: f64) -> Self {
        Self {
            v: v.clamp(-MAX_LINEAR_SPEED, MAX_LINEAR_SPEED),
            omega: omega.clamp(-MAX_ANGULAR_SPEED, MAX_ANGULAR_SPEED),
        }
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

/// Advances `state` by `dt` seconds under a constant command, integrating
/// the unicycle model exactly along the circular arc.
pub fn step(state: &RobotState, cmd: VelocityCommand, dt: f64) -> RobotState {
    let (v, w) = (cmd.v, cmd.omega);
    let theta = state.theta;
    let (x, y) = if w.abs() < 1e-9 {
        let (sin, cos) = theta.sin_cos();
        (state.x + v * dt * cos, state.y + v * dt * sin)
    } else {
        // (v/w)(sin(th + w dt) - sin th) rewritten as a chord of length
        // v dt sinc(w dt / 2) along the mid-arc heading; no cancellation for small w.
        let half = 0.5 * w * dt;
        let chord = v * dt * sinc(half);
        let (sin, cos) = (theta + half).sin_cos();
        (state.x + chord * cos, state.y + chord * sin)
    };
    RobotState {
        x,
        y,
        theta: wrap_angle(theta + w * dt),
        body_radius: state.body_radius,
    }
}

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

/// Left and right wheel rim speeds (m/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WheelSpeeds {
    pub left: f64,
    pub right: f64,
}

impl WheelSpeeds {
    /// Inverse of [`wheel_speeds`], clamped to the base's limits.
    pub fn to_command(self) -> VelocityCommand {
        VelocityCommand::new(
            0.5 * (self.left + self.right),
            (self.right - self.left) / WHEELBASE,
        )
    }
}

pub fn wheel_speeds(cmd: VelocityCommand) -> WheelSpeeds {
    let half = 0.5 * cmd.omega * WHEELBASE;
    WheelSpeeds {
        left: cmd.v - half,
        right: cmd.v + half,
    }
}
