//! Piecewise-linear membership functions.

use std::fmt;

/// A triangular or trapezoidal fuzzy set over a real universe.
///
/// A trapezoid whose first two breakpoints coincide (`a == b`) is a left
/// shoulder and stays at 1 for every `x <= c`; one whose last two coincide
/// (`c == d`) is a right shoulder and stays at 1 for every `x >= b`.
/// Triangles never extend past their support. A fully degenerate shape
/// (all breakpoints equal) is a crisp singleton.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MembershipFunction {
    Triangular { a: f64, b: f64, c: f64 },
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
}

impl MembershipFunction {
    pub fn triangular(a: f64, b: f64, c: f64) -> Self {
        Self::Triangular { a, b, c }
    }

    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::Trapezoidal { a, b, c, d }
    }

    /// Breakpoints in declaration order.
    pub fn breakpoints(&self) -> Vec<f64> {
        match *self {
            Self::Triangular { a, b, c } => vec![a, b, c],
            Self::Trapezoidal { a, b, c, d } => vec![a, b, c, d],
        }
    }

    /// True when every parameter is finite and the breakpoints are sorted.
    pub fn is_well_formed(&self) -> bool {
        let points = self.breakpoints();
        points.iter().all(|p| p.is_finite()) && points.windows(2).all(|w| w[0] <= w[1])
    }

    /// Degree of membership of `x`, always in `[0, 1]`.
    pub fn degree(&self, x: f64) -> f64 {
        match *self {
            Self::Triangular { a, b, c } => {
                if a == c {
                    return singleton(a, x);
                }
                if x < a || x > c {
                    0.0
                } else if x < b {
                    rising(a, b, x)
                } else if x == b {
                    1.0
                } else {
                    falling(b, c, x)
                }
            }
            Self::Trapezoidal { a, b, c, d } => {
                if a == d {
                    return singleton(a, x);
                }
                let left_shoulder = a == b;
                let right_shoulder = c == d;
                if x < b {
                    if left_shoulder {
                        1.0
                    } else if x <= a {
                        0.0
                    } else {
                        rising(a, b, x)
                    }
                } else if x <= c || right_shoulder {
                    1.0
                } else if x >= d {
                    0.0
                } else {
                    falling(c, d, x)
                }
            }
        }
    }
}

fn singleton(at: f64, x: f64) -> f64 {
    if x == at {
        1.0
    } else {
        0.0
    }
}

fn rising(a: f64, b: f64, x: f64) -> f64 {
    ((x - a) / (b - a)).clamp(0.0, 1.0)
}

fn falling(c: f64, d: f64, x: f64) -> f64 {
    ((d - x) / (d - c)).clamp(0.0, 1.0)
}

impl fmt::Display for MembershipFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Triangular { a, b, c } => write!(f, "tri {a} {b} {c}"),
            Self::Trapezoidal { a, b, c, d } => write!(f, "trap {a} {b} {c} {d}"),
        }
    }
}
