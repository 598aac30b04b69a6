use std::io::{self, BufRead, Write};

use crate::sim::{Point, World, BODY_RADIUS};

/// Column order of the trajectory CSV.
pub const CSV_HEADER: &str =
    "t,x,y,theta,v,omega,x_weight,pos_err,min_range,v_tflc,omega_tflc,v_oaflc,omega_oaflc";

/// One control cycle: the pose at `t` and the commands computed from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    /// Fused command actually applied.
    pub v: f64,
    pub omega: f64,
    /// Fusion weight of the tracking controller.
    pub x_weight: f64,
    pub pos_err: f64,
    pub min_range: f64,
    pub v_tflc: f64,
    pub omega_tflc: f64,
    pub v_oaflc: f64,
    pub omega_oaflc: f64,
}

impl TrajectoryRow {
    fn values(&self) -> [f64; 13] {
        [
            self.t,
            self.x,
            self.y,
            self.theta,
            self.v,
            self.omega,
            self.x_weight,
            self.pos_err,
            self.min_range,
            self.v_tflc,
            self.omega_tflc,
            self.v_oaflc,
            self.omega_oaflc,
        ]
    }

    fn from_values(v: [f64; 13]) -> Self {
        Self {
            t: v[0],
            x: v[1],
            y: v[2],
            theta: v[3],
            v: v[4],
            omega: v[5],
            x_weight: v[6],
            pos_err: v[7],
            min_range: v[8],
            v_tflc: v[9],
            omega_tflc: v[10],
            v_oaflc: v[11],
            omega_oaflc: v[12],
        }
    }

    pub fn position(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// Time series of a closed-loop run, one row per control cycle.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrajectoryRecord {
    pub rows: Vec<TrajectoryRow>,
}

impl TrajectoryRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Writes the header and one LF-terminated line per row. Values use
    /// scientific notation with ten significant digits.
    pub fn write_csv<W: Write>(&self, mut sink: W) -> io::Result<()> {
        writeln!(sink, "{CSV_HEADER}")?;
        let mut line = String::with_capacity(13 * 18);
        for row in &self.rows {
            line.clear();
            for (i, value) in row.values().iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                line.push_str(&format!("{value:.9e}"));
            }
            line.push('\n');
            sink.write_all(line.as_bytes())?;
        }
        sink.flush()
    }

    /// Reads back a CSV produced by [`write_csv`](Self::write_csv).
    pub fn read_csv<R: BufRead>(source: R) -> io::Result<Self> {
        let invalid = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
        let mut lines = source.lines();
        let header = lines.next().transpose()?;
        if header.as_deref() != Some(CSV_HEADER) {
            return Err(invalid("missing trajectory header".into()));
        }
        let mut rows = Vec::new();
        for (n, line) in lines.enumerate() {
            let line = line?;
            let mut values = [0.0; 13];
            let mut fields = line.split(',');
            for slot in values.iter_mut() {
                let field = fields
                    .next()
                    .ok_or_else(|| invalid(format!("row {}: too few fields", n + 1)))?;
                *slot = field
                    .parse()
                    .map_err(|_| invalid(format!("row {}: bad number `{field}`", n + 1)))?;
            }
            if fields.next().is_some() {
                return Err(invalid(format!("row {}: too many fields", n + 1)));
            }
            rows.push(TrajectoryRow::from_values(values));
        }
        Ok(Self { rows })
    }
}

/// Summary figures derived from a record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub elapsed: f64,
    pub path_length: f64,
    /// Smallest gap between footprint and any surface; infinite when the
    /// world is empty.
    pub min_clearance: f64,
    pub final_error: f64,
}

/// Path length, clearance and final error of `record` in `world`.
pub fn metrics(record: &TrajectoryRecord, world: &World) -> Metrics {
    let path_length = record
        .rows
        .windows(2)
        .map(|w| w[0].position().distance(w[1].position()))
        .sum();
    let min_clearance = record
        .rows
        .iter()
        .map(|r| world.surface_distance(r.position()) - BODY_RADIUS)
        .fold(f64::INFINITY, f64::min);
    let last = record.rows.last();
    Metrics {
        elapsed: last.map_or(0.0, |r| r.t),
        path_length,
        min_clearance,
        final_error: last.map_or(f64::NAN, |r| r.pos_err),
    }
}
