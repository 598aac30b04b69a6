use std::str::FromStr;

use super::geometry::{exit_distance, Obstacle, Point};
use super::SimError;

/// Static obstacles plus optional rectangular walls enclosing the arena.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct World {
    obstacles: Vec<Obstacle>,
    bounds: Option<(Point, Point)>,
}

impl World {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(obstacles: Vec<Obstacle>, bounds: Option<(Point, Point)>) -> Result<Self, SimError> {
        for (i, ob) in obstacles.iter().enumerate() {
            check_obstacle(ob)
                .map_err(|msg| SimError::InvalidWorld(format!("obstacle #{}: {msg}", i + 1)))?;
        }
        if let Some((min, max)) = bounds {
            if !(min.x < max.x && min.y < max.y)
                || ![min.x, min.y, max.x, max.y].iter().all(|v| v.is_finite())
            {
                return Err(SimError::InvalidWorld(
                    "bounds must have positive area".into(),
                ));
            }
            for (i, ob) in obstacles.iter().enumerate() {
                let (lo, hi) = ob.bounding_box();
                if lo.x < min.x || lo.y < min.y || hi.x > max.x || hi.y > max.y {
                    return Err(SimError::InvalidWorld(format!(
                        "obstacle #{} extends outside the bounds",
                        i + 1
                    )));
                }
            }
        }
        Ok(Self { obstacles, bounds })
    }

    pub fn with_obstacle(mut self, obstacle: Obstacle) -> Result<Self, SimError> {
        self.obstacles.push(obstacle);
        Self::new(self.obstacles, self.bounds)
    }

    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    pub fn bounds(&self) -> Option<(Point, Point)> {
        self.bounds
    }

    /// True when `p` is inside an obstacle or strictly outside the bounds.
    pub fn is_occupied(&self, p: Point) -> bool {
        self.obstacles.iter().any(|ob| ob.contains_strictly(p))
            || self
                .bounds
                .is_some_and(|(min, max)| p.x < min.x || p.x > max.x || p.y < min.y || p.y > max.y)
    }

    /// Distance from `origin` to the first surface along `angle`, or `None`
    /// when the ray escapes. Bounds count as walls.
    pub fn first_hit(&self, origin: Point, angle: f64) -> Result<Option<f64>, SimError> {
        if self.is_occupied(origin) {
            return Err(SimError::UndefinedOrigin(origin));
        }
        let dir = Point::from_angle(angle);
        let mut nearest = self
            .bounds
            .and_then(|(min, max)| exit_distance(origin, dir, min, max));
        for ob in &self.obstacles {
            if let Some(t) = ob.ray_hit(origin, dir) {
                if nearest.is_none_or(|n| t < n) {
                    nearest = Some(t);
                }
            }
        }
        Ok(nearest)
    }

    /// Signed distance from `p` to the nearest surface (obstacle or wall);
    /// infinite in an empty unbounded world.
    pub fn surface_distance(&self, p: Point) -> f64 {
        let walls = self.bounds.map_or(f64::INFINITY, |(min, max)| {
            (p.x - min.x)
                .min(max.x - p.x)
                .min(p.y - min.y)
                .min(max.y - p.y)
        });
        self.obstacles
            .iter()
            .map(|ob| ob.signed_distance(p))
            .fold(walls, f64::min)
    }

    /// Moves every obstacle by `(dx, dy)`; used for equivariance checks.
    pub fn translated(&self, dx: f64, dy: f64) -> World {
        let shift = Point::new(dx, dy);
        World {
            obstacles: self
                .obstacles
                .iter()
                .map(|ob| match *ob {
                    Obstacle::Circle { center, radius } => Obstacle::Circle {
                        center: center + shift,
                        radius,
                    },
                    Obstacle::Rect { min, max } => Obstacle::Rect {
                        min: min + shift,
                        max: max + shift,
                    },
                })
                .collect(),
            bounds: self.bounds.map(|(min, max)| (min + shift, max + shift)),
        }
    }
}

fn check_obstacle(ob: &Obstacle) -> Result<(), String> {
    match *ob {
        Obstacle::Circle { center, radius } => {
            if !(center.x.is_finite() && center.y.is_finite() && radius.is_finite()) {
                Err("non-finite circle".into())
            } else if radius <= 0.0 {
                Err(format!("radius {radius} is not positive"))
            } else {
                Ok(())
            }
        }
        Obstacle::Rect { min, max } => {
            if ![min.x, min.y, max.x, max.y].iter().all(|v| v.is_finite()) {
                Err("non-finite rectangle".into())
            } else if !(min.x < max.x && min.y < max.y) {
                Err("rectangle has no area".into())
            } else {
                Ok(())
            }
        }
    }
}

/// Parses the line-oriented world format:
///
/// ```text
/// bounds <xmin> <ymin> <xmax> <ymax>
/// circle <cx> <cy> <r>
/// rect <xmin> <ymin> <xmax> <ymax>
/// ```
impl FromStr for World {
    type Err = SimError;

    fn from_str(source: &str) -> Result<Self, Self::Err> {
        let mut obstacles = Vec::new();
        let mut bounds = None;
        for (index, raw) in source.lines().enumerate() {
            let line = index + 1;
            let text = raw.split('#').next().unwrap_or("");
            let mut words = text.split_whitespace();
            let Some(keyword) = words.next() else {
                continue;
            };
            let values = words
                .map(|w| {
                    w.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| SimError::WorldSyntax {
                            line,
                            message: format!("`{w}` is not a number"),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let arity = |n: usize| {
                if values.len() == n {
                    Ok(())
                } else {
                    Err(SimError::WorldSyntax {
                        line,
                        message: format!("`{keyword}` takes {n} numbers, found {}", values.len()),
                    })
                }
            };
            match keyword {
                "bounds" => {
                    arity(4)?;
                    if bounds.is_some() {
                        return Err(SimError::WorldSyntax {
                            line,
                            message: "bounds declared twice".into(),
                        });
                    }
                    bounds = Some((
                        Point::new(values[0], values[1]),
                        Point::new(values[2], values[3]),
                    ));
                }
                "circle" => {
                    arity(3)?;
                    let ob = Obstacle::circle(values[0], values[1], values[2]);
                    check_obstacle(&ob)
                        .map_err(|message| SimError::WorldSyntax { line, message })?;
                    obstacles.push(ob);
                }
                "rect" => {
                    arity(4)?;
                    let ob = Obstacle::rect(values[0], values[1], values[2], values[3]);
                    check_obstacle(&ob)
                        .map_err(|message| SimError::WorldSyntax { line, message })?;
                    obstacles.push(ob);
                }
                other => {
                    return Err(SimError::WorldSyntax {
                        line,
                        message: format!("unknown keyword `{other}`"),
                    })
                }
            }
        }
        World::new(obstacles, bounds)
    }
}
