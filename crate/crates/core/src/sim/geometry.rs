use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_angle(angle: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        Self { x: cos, y: sin }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// A solid obstacle in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Obstacle {
    Circle {
        center: Point,
        radius: f64,
    },
    /// Axis-aligned rectangle.
    Rect {
        min: Point,
        max: Point,
    },
}

impl Obstacle {
    pub fn circle(cx: f64, cy: f64, radius: f64) -> Self {
        Self::Circle {
            center: Point::new(cx, cy),
            radius,
        }
    }

    pub fn rect(xmin: f64, ymin: f64, xmax: f64, ymax: f64) -> Self {
        Self::Rect {
            min: Point::new(xmin, ymin),
            max: Point::new(xmax, ymax),
        }
    }

    /// Signed distance from `p` to the surface; negative inside.
    pub fn signed_distance(&self, p: Point) -> f64 {
        match *self {
            Obstacle::Circle { center, radius } => p.distance(center) - radius,
            Obstacle::Rect { min, max } => {
                let dx = (min.x - p.x).max(p.x - max.x);
                let dy = (min.y - p.y).max(p.y - max.y);
                if dx <= 0.0 && dy <= 0.0 {
                    dx.max(dy)
                } else {
                    dx.max(0.0).hypot(dy.max(0.0))
                }
            }
        }
    }

    /// True when `p` lies in the open interior.
    pub fn contains_strictly(&self, p: Point) -> bool {
        match *self {
            Obstacle::Circle { center, radius } => (p - center).dot(p - center) < radius * radius,
            Obstacle::Rect { min, max } => p.x > min.x && p.x < max.x && p.y > min.y && p.y < max.y,
        }
    }

    /// Smallest `t >= 0` with `origin + t * dir` on the surface, for an
    /// origin outside the open interior and a unit `dir`.
    pub fn ray_hit(&self, origin: Point, dir: Point) -> Option<f64> {
        match *self {
            Obstacle::Circle { center, radius } => ray_circle(origin, dir, center, radius),
            Obstacle::Rect { min, max } => {
                let (enter, _) = slab(origin, dir, min, max)?;
                (enter >= 0.0).then_some(enter)
            }
        }
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        match *self {
            Obstacle::Circle { center, radius } => (
                Point::new(center.x - radius, center.y - radius),
                Point::new(center.x + radius, center.y + radius),
            ),
            Obstacle::Rect { min, max } => (min, max),
        }
    }
}

fn ray_circle(origin: Point, dir: Point, center: Point, radius: f64) -> Option<f64> {
    let offset = origin - center;
    let b = dir.dot(offset);
    let c = offset.dot(offset) - radius * radius;
    let disc = b * b - c;
    if disc < 0.0 {
        return None;
    }
    let near = -b - disc.sqrt();
    (near >= 0.0).then_some(near)
}

/// Parametric entry/exit of the ray through an axis-aligned box.
fn slab(origin: Point, dir: Point, min: Point, max: Point) -> Option<(f64, f64)> {
    let mut enter = f64::NEG_INFINITY;
    let mut exit = f64::INFINITY;
    for (o, d, lo, hi) in [
        (origin.x, dir.x, min.x, max.x),
        (origin.y, dir.y, min.y, max.y),
    ] {
        if d == 0.0 {
            if o < lo || o > hi {
                return None;
            }
        } else {
            let t1 = (lo - o) / d;
            let t2 = (hi - o) / d;
            enter = enter.max(t1.min(t2));
            exit = exit.min(t1.max(t2));
        }
    }
    (enter <= exit).then_some((enter, exit))
}

/// Distance along a unit `dir` from an `origin` inside the box to its boundary.
pub(crate) fn exit_distance(origin: Point, dir: Point, min: Point, max: Point) -> Option<f64> {
    slab(origin, dir, min, max).map(|(_, exit)| exit.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ray_hits_circle_front_surface() {
        let c = Obstacle::circle(2.0, 0.0, 0.5);
        assert_eq!(c.ray_hit(Point::ORIGIN, Point::new(1.0, 0.0)), Some(1.5));
        assert_eq!(c.ray_hit(Point::ORIGIN, Point::new(-1.0, 0.0)), None);
        assert_eq!(c.ray_hit(Point::ORIGIN, Point::new(0.0, 1.0)), None);
    }

    #[test]
    fn ray_hits_rect_faces() {
        let r = Obstacle::rect(1.0, -1.0, 2.0, 1.0);
        assert_eq!(r.ray_hit(Point::ORIGIN, Point::new(1.0, 0.0)), Some(1.0));
        assert_eq!(r.ray_hit(Point::new(3.0, 0.0), Point::new(1.0, 0.0)), None);
        let diag = Point::new(1.0, 1.0) * std::f64::consts::FRAC_1_SQRT_2;
        let t = r.ray_hit(Point::new(0.0, -1.0), diag).unwrap();
        assert!((t - 2f64.sqrt()).abs() < 1e-12);
        // Grazing a parallel face.
        assert!(r
            .ray_hit(Point::new(0.0, 1.0), Point::new(1.0, 0.0))
            .is_some());
        assert!(r
            .ray_hit(Point::new(0.0, 1.5), Point::new(1.0, 0.0))
            .is_none());
    }

    #[test]
    fn signed_distances() {
        let r = Obstacle::rect(0.0, 0.0, 2.0, 1.0);
        assert_eq!(r.signed_distance(Point::new(1.0, 0.5)), -0.5);
        assert_eq!(r.signed_distance(Point::new(3.0, 0.5)), 1.0);
        assert!((r.signed_distance(Point::new(3.0, 2.0)) - 2f64.sqrt()).abs() < 1e-15);
        let c = Obstacle::circle(0.0, 0.0, 0.5);
        assert!((c.signed_distance(Point::new(0.6, 0.0)) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn interior_is_open() {
        let r = Obstacle::rect(0.0, 0.0, 1.0, 1.0);
        assert!(r.contains_strictly(Point::new(0.5, 0.5)));
        assert!(!r.contains_strictly(Point::new(0.0, 0.5)));
        let c = Obstacle::circle(0.0, 0.0, 1.0);
        assert!(!c.contains_strictly(Point::new(1.0, 0.0)));
    }
}
