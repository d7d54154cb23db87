//! Piecewise paths in complex (y₁, y₂)-space.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::eval::divisor_distances;
use super::mat::{cser, C64};
use super::real::{Cx, Real};
use super::NumericError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Counterclockwise,
    Clockwise,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Counterclockwise => 1.0,
            Orientation::Clockwise => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Counterclockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::Counterclockwise,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Segment {
    Polyline {
        #[serde(with = "cser::points")]
        waypoints: Vec<[C64; 2]>,
    },
    /// One full turn of coordinate `coord` around `center`, the other
    /// coordinate held at `fixed`; starts at angle `start_angle`.
    Circle {
        coord: usize,
        #[serde(with = "cser::c64")]
        center: C64,
        radius: f64,
        start_angle: f64,
        orientation: Orientation,
        #[serde(with = "cser::c64")]
        fixed: C64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathSpec {
    pub segments: Vec<Segment>,
    /// Minimum allowed distance to the divisors.
    pub margin: f64,
    /// Sampling density used for the divisor check.
    pub samples_per_unit: f64,
}

/// A smooth piece parametrized over `t ∈ [0, 1]`.
#[derive(Clone, Copy, Debug)]
pub enum Piece {
    Line {
        from: [C64; 2],
        to: [C64; 2],
    },
    Arc {
        coord: usize,
        center: C64,
        radius: f64,
        start_angle: f64,
        sweep: f64,
        fixed: C64,
    },
}

fn lift<T: Real>(z: C64) -> Cx<T> {
    Complex::new(T::from_f64(z.re), T::from_f64(z.im))
}

impl Piece {
    pub fn length(&self) -> f64 {
        match self {
            Piece::Line { from, to } => {
                ((to[0] - from[0]).norm_sqr() + (to[1] - from[1]).norm_sqr()).sqrt()
            }
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    /// Position and velocity at `t`.
    pub fn at<T: Real>(&self, t: T) -> ([Cx<T>; 2], [Cx<T>; 2]) {
        match *self {
            Piece::Line { from, to } => {
                let p0 = [lift::<T>(from[0]), lift::<T>(from[1])];
                let d = [lift::<T>(to[0]) - p0[0], lift::<T>(to[1]) - p0[1]];
                let tt = Complex::new(t, T::zero());
                ([p0[0] + d[0] * tt, p0[1] + d[1] * tt], d)
            }
            Piece::Arc {
                coord,
                center,
                radius,
                start_angle,
                sweep,
                fixed,
            } => {
                let two_pi = T::pi() + T::pi();
                // Full turns are exact multiples of 2π in the working precision.
                let turns = sweep / (2.0 * std::f64::consts::PI);
                let sw = if (turns - turns.round()).abs() < 1e-15 {
                    two_pi * T::from_f64(turns.round())
                } else {
                    T::from_f64(sweep)
                };
                let theta = T::from_f64(start_angle) + sw * t;
                let (s, c) = theta.sin_cos();
                let r = T::from_f64(radius);
                let e = Complex::new(c, s);
                let pos = lift::<T>(center) + e * r;
                let vel = Complex::new(-s, c) * (r * sw);
                let zero = Complex::new(T::zero(), T::zero());
                if coord == 0 {
                    ([pos, lift::<T>(fixed)], [vel, zero])
                } else {
                    ([lift::<T>(fixed), pos], [zero, vel])
                }
            }
        }
    }

    pub fn start(&self) -> [C64; 2] {
        self.at::<f64>(0.0).0
    }

    pub fn end(&self) -> [C64; 2] {
        self.at::<f64>(1.0).0
    }

    pub fn reversed(&self) -> Piece {
        match *self {
            Piece::Line { from, to } => Piece::Line { from: to, to: from },
            Piece::Arc {
                coord,
                center,
                radius,
                start_angle,
                sweep,
                fixed,
            } => Piece::Arc {
                coord,
                center,
                radius,
                start_angle: start_angle + sweep,
                sweep: -sweep,
                fixed,
            },
        }
    }
}

impl PathSpec {
    pub fn new(segments: Vec<Segment>) -> Self {
        PathSpec {
            segments,
            margin: 1e-3,
            samples_per_unit: 200.0,
        }
    }

    pub fn polyline(points: Vec<[C64; 2]>) -> Self {
        Self::new(vec![Segment::Polyline { waypoints: points }])
    }

    pub fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        for s in &self.segments {
            match s {
                Segment::Polyline { waypoints } => {
                    for w in waypoints.windows(2) {
                        if w[0] != w[1] {
                            out.push(Piece::Line {
                                from: w[0],
                                to: w[1],
                            });
                        }
                    }
                }
                Segment::Circle {
                    coord,
                    center,
                    radius,
                    start_angle,
                    orientation,
                    fixed,
                } => out.push(Piece::Arc {
                    coord: *coord,
                    center: *center,
                    radius: *radius,
                    start_angle: *start_angle,
                    sweep: orientation.sign() * 2.0 * std::f64::consts::PI,
                    fixed: *fixed,
                }),
            }
        }
        out
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> PathSpec {
        let mut segs = Vec::new();
        for s in self.segments.iter().rev() {
            segs.push(match s {
                Segment::Polyline { waypoints } => Segment::Polyline {
                    waypoints: waypoints.iter().rev().copied().collect(),
                },
                Segment::Circle {
                    coord,
                    center,
                    radius,
                    start_angle,
                    orientation,
                    fixed,
                } => Segment::Circle {
                    coord: *coord,
                    center: *center,
                    radius: *radius,
                    start_angle: *start_angle,
                    orientation: orientation.reversed(),
                    fixed: *fixed,
                },
            });
        }
        PathSpec {
            segments: segs,
            ..self.clone()
        }
    }

    /// Appends `other` after this path.
    pub fn then(&self, other: &PathSpec) -> PathSpec {
        let mut segs = self.segments.clone();
        segs.extend(other.segments.iter().cloned());
        PathSpec {
            segments: segs,
            margin: self.margin.max(other.margin),
            samples_per_unit: self.samples_per_unit.max(other.samples_per_unit),
        }
    }

    /// Distance between consecutive piece ends plus start-to-end distance.
    pub fn gaps(&self) -> (f64, f64) {
        let pieces = self.pieces();
        let mut gap: f64 = 0.0;
        for w in pieces.windows(2) {
            let (a, b) = (w[0].end(), w[1].start());
            gap = gap.max(((a[0] - b[0]).norm_sqr() + (a[1] - b[1]).norm_sqr()).sqrt());
        }
        let closure = match (pieces.first(), pieces.last()) {
            (Some(f), Some(l)) => {
                let (a, b) = (f.start(), l.end());
                ((a[0] - b[0]).norm_sqr() + (a[1] - b[1]).norm_sqr()).sqrt()
            }
            _ => 0.0,
        };
        (gap, closure)
    }

    /// Checks connectivity and the divisor margin by sampling.
    pub fn validate(&self) -> Result<(), NumericError> {
        let (gap, _) = self.gaps();
        if gap > 1e-12 {
            return Err(NumericError::Path(format!(
                "pieces do not connect (gap {gap:.3e})"
            )));
        }
        for p in self.pieces() {
            let n = ((p.length() * self.samples_per_unit).ceil() as usize).max(16);
            for k in 0..=n {
                let (y, _) = p.at::<f64>(k as f64 / n as f64);
                for (d, dist) in divisor_distances(y) {
                    if dist < self.margin {
                        return Err(NumericError::PathTooClose {
                            divisor: d.name().to_string(),
                            distance: dist,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_closed(&self) -> bool {
        self.gaps().1 < 1e-12
    }
}
