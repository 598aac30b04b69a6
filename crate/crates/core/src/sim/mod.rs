//! Deterministic planar simulation: obstacles, depth sensing, unicycle
//! kinematics and collision checks.

mod geometry;
mod kinematics;
mod sensor;
mod world;

pub use geometry::{Obstacle, Point};
pub use kinematics::{
    step, wheel_speeds, wrap_angle, RobotState, VelocityCommand, WheelSpeeds, BODY_RADIUS,
    MAX_ANGULAR_SPEED, MAX_LINEAR_SPEED, WHEELBASE,
};
pub use sensor::{ray_cast, scan, DepthScan, SensorModel, BIN_COUNT};
pub use world::World;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("ray origin ({}, {}) is inside an obstacle or outside the bounds", .0.x, .0.y)]
    UndefinedOrigin(Point),
    #[error("line {line}: {message}")]
    WorldSyntax { line: usize, message: String },
    #[error("invalid world: {0}")]
    InvalidWorld(String),
    #[error("invalid scan: {0}")]
    InvalidScan(String),
}

/// Gap between the robot's footprint and the nearest surface; negative
/// when they overlap.
pub fn clearance(world: &World, state: &RobotState) -> f64 {
    world.surface_distance(state.position()) - state.body_radius()
}

/// True when the footprint overlaps an obstacle or crosses the bounds.
pub fn in_collision(world: &World, state: &RobotState) -> bool {
    clearance(world, state) < 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn collision_examples() {
        let origin = RobotState::new(0.0, 0.0, 0.0);
        assert!(!in_collision(&World::empty(), &origin));
        let w = World::empty()
            .with_obstacle(Obstacle::circle(0.8, 0.0, 0.5))
            .unwrap();
        assert!(!in_collision(&w, &origin), "0.30 m from the surface");
        let w = World::empty()
            .with_obstacle(Obstacle::circle(0.6, 0.0, 0.5))
            .unwrap();
        assert!(in_collision(&w, &origin), "0.10 m < 0.18 m");
        let walls: World = "bounds -0.1 -1 1 1\n".parse().unwrap();
        assert!(in_collision(&walls, &origin));
    }

    fn rotate(p: Point, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * p.x - s * p.y, s * p.x + c * p.y)
    }

    proptest! {
        #[test]
        fn sentinel_discipline(
            cx in -4.0f64..4.0, cy in -4.0f64..4.0, r in 0.05f64..1.0, angle in -PI..PI,
        ) {
            let w = World::empty().with_obstacle(Obstacle::circle(cx, cy, r)).unwrap();
            if let Ok(d) = ray_cast(&w, Point::ORIGIN, angle) {
                prop_assert!((0.4..=3.0).contains(&d));
            }
        }

        #[test]
        fn scan_is_rigid_motion_equivariant(
            circles in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0, 0.1f64..0.6), 1..6),
            rx in -1.0f64..1.0, ry in -1.0f64..1.0, rth in -PI..PI,
            tx in -5.0f64..5.0, ty in -5.0f64..5.0, rot in -PI..PI,
        ) {
            let obstacles: Vec<_> = circles.iter().map(|&(x, y, r)| Obstacle::circle(x, y, r)).collect();
            let world = World::new(obstacles.clone(), None).unwrap();
            let robot = RobotState::new(rx, ry, rth);
            prop_assume!(!in_collision(&world, &robot));

            let moved: Vec<_> = obstacles
                .iter()
                .map(|ob| match *ob {
                    Obstacle::Circle { center, radius } => Obstacle::Circle {
                        center: rotate(center, rot) + Point::new(tx, ty),
                        radius,
                    },
                    rect => rect,
                })
                .collect();
            let moved_world = World::new(moved, None).unwrap();
            let p = rotate(robot.position(), rot) + Point::new(tx, ty);
            let moved_robot = RobotState::new(p.x, p.y, robot.theta() + rot);

            let a = scan(&world, &robot).unwrap();
            let b = scan(&moved_world, &moved_robot).unwrap();
            for (ra, rb) in a.ranges().iter().zip(b.ranges()) {
                // A range sitting on a sentinel edge may flip under rounding.
                let near_edge = [0.4, 3.0].iter().any(|e| (ra - e).abs() < 1e-6 || (rb - e).abs() < 1e-6);
                prop_assert!(near_edge || (ra - rb).abs() < 1e-9, "{} vs {}", ra, rb);
            }
        }

        #[test]
        fn scan_is_translation_equivariant_with_rects(
            tx in -5.0f64..5.0, ty in -5.0f64..5.0, th in -PI..PI,
        ) {
            let world: World = "bounds -3 -3 3 3\nrect 1 -0.5 1.5 0.5\ncircle -1 1 0.4\n".parse().unwrap();
            let robot = RobotState::new(0.0, 0.0, th);
            let a = scan(&world, &robot).unwrap();
            let b = scan(&world.translated(tx, ty), &RobotState::new(tx, ty, th)).unwrap();
            for (ra, rb) in a.ranges().iter().zip(b.ranges()) {
                prop_assert!((ra - rb).abs() < 1e-9);
            }
        }

        #[test]
        fn collision_is_monotone_in_radius(
            cx in -2.0f64..2.0, cy in -2.0f64..2.0, r in 0.1f64..1.0,
            small in 0.01f64..0.5, extra in 0.0f64..0.5,
        ) {
            let w = World::empty().with_obstacle(Obstacle::circle(cx, cy, r)).unwrap();
            let s = RobotState::new(0.0, 0.0, 0.0);
            if in_collision(&w, &s.with_body_radius(small)) {
                prop_assert!(in_collision(&w, &s.with_body_radius(small + extra)));
            }
        }
    }
}
