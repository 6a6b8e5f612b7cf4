use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Coordinate axis. Used to select clip direction and trapezoidization
/// orientation (`X` means vertical walls, i.e. slabs along the x axis).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Debug, Default, Serialize, Deserialize)]
pub struct Point<F = f64> {
    pub x: F,
    pub y: F,
}

impl<F: Scalar> Point<F> {
    pub fn new(x: F, y: F) -> Self {
        Point { x, y }
    }

    pub fn l1(&self, other: &Point<F>) -> F {
        (self.x - other.x).fabs() + (self.y - other.y).fabs()
    }

    pub fn coord(&self, axis: Axis) -> F {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
        }
    }

    /// Swap the coordinates. Transposing a domain turns vertical
    /// trapezoidization into horizontal and vice versa.
    pub fn transpose(&self) -> Point<F> {
        Point { x: self.y, y: self.x }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_f64(&self) -> Point<f64> {
        Point { x: self.x.to_f64_lossy(), y: self.y.to_f64_lossy() }
    }
}

/// 2D cross product of (b - a) and (c - a). Positive when c lies to the
/// left of the directed line a -> b.
pub fn cross<F: Scalar>(a: &Point<F>, b: &Point<F>, c: &Point<F>) -> F {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}
