use super::geometry::Point;
use super::kinematics::RobotState;
use super::world::World;
use super::SimError;

/// Number of angular bins in a [`DepthScan`].
pub const BIN_COUNT: usize = 20;

/// Planar depth sensor matching an Xtion-class camera in near mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorModel {
    /// Horizontal field of view (rad).
    pub fov: f64,
    pub min_range: f64,
    pub max_range: f64,
}

impl SensorModel {
    /// 58.5 deg horizontal field of view, 0.4 m to 3.0 m.
    pub const XTION_NEAR: SensorModel = SensorModel {
        fov: 58.5 * std::f64::consts::PI / 180.0,
        min_range: 0.4,
        max_range: 3.0,
    };

    pub fn bin_width(&self) -> f64 {
        self.fov / BIN_COUNT as f64
    }

    /// Centre of bin `index` relative to the heading. Bin 0 is the leftmost
    /// (most counter-clockwise) bin.
    pub fn bin_angle(&self, index: usize) -> f64 {
        0.5 * self.fov - (index as f64 + 0.5) * self.bin_width()
    }

    pub fn bin_angles(&self) -> [f64; BIN_COUNT] {
        std::array::from_fn(|i| self.bin_angle(i))
    }

    /// Applies the no-return convention: hits nearer than `min_range`
    /// (blind spot), beyond `max_range`, or missing all read `max_range`.
    pub fn reading(&self, hit: Option<f64>) -> f64 {
        match hit {
            Some(d) if d >= self.min_range && d <= self.max_range => d,
            _ => self.max_range,
        }
    }

    pub fn ray_cast(&self, world: &World, origin: Point, angle: f64) -> Result<f64, SimError> {
        Ok(self.reading(world.first_hit(origin, angle)?))
    }

    pub fn scan(&self, world: &World, state: &RobotState) -> Result<DepthScan, SimError> {
        let mut ranges = [self.max_range; BIN_COUNT];
        for (i, range) in ranges.iter_mut().enumerate() {
            *range = self.ray_cast(world, state.position(), state.theta() + self.bin_angle(i))?;
        }
        Ok(DepthScan { ranges })
    }
}

impl Default for SensorModel {
    fn default() -> Self {
        Self::XTION_NEAR
    }
}

/// Sensor reading along `angle` from `origin` with the standard sensor.
pub fn ray_cast(world: &World, origin: Point, angle: f64) -> Result<f64, SimError> {
    SensorModel::XTION_NEAR.ray_cast(world, origin, angle)
}

/// 20-bin scan from the robot's pose with the standard sensor.
pub fn scan(world: &World, state: &RobotState) -> Result<DepthScan, SimError> {
    SensorModel::XTION_NEAR.scan(world, state)
}

/// Ranges of one sweep, bin 0 leftmost. Every range is within
/// `[0.4, 3.0]`; 3.0 doubles as the no-return value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthScan {
    ranges: [f64; BIN_COUNT],
}

impl DepthScan {
    pub const NO_RETURN: f64 = 3.0;

    pub fn new(ranges: [f64; BIN_COUNT]) -> Result<Self, SimError> {
        let sensor = SensorModel::XTION_NEAR;
        if let Some((i, r)) = ranges
            .iter()
            .enumerate()
            .find(|(_, r)| !(**r >= sensor.min_range && **r <= sensor.max_range))
        {
            return Err(SimError::InvalidScan(format!(
                "bin {i} range {r} outside [{}, {}]",
                sensor.min_range, sensor.max_range
            )));
        }
        Ok(Self { ranges })
    }

    /// A scan with nothing in view.
    pub fn clear() -> Self {
        Self {
            ranges: [Self::NO_RETURN; BIN_COUNT],
        }
    }

    pub fn ranges(&self) -> &[f64; BIN_COUNT] {
        &self.ranges
    }

    pub fn min_range(&self) -> f64 {
        self.ranges.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn is_clear(&self) -> bool {
        self.ranges.iter().all(|&r| r == Self::NO_RETURN)
    }
}
