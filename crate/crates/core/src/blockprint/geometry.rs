//! Planar geometry for block shapes: points, convex polygons, chords.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }

    /// Rotation by `degrees` about the origin (clockwise on screen, since y
    /// grows downwards).
    pub fn rotated(self, degrees: f64) -> Point {
        let (s, c) = degrees.to_radians().sin_cos();
        Point::new(self.x * c - self.y * s, self.x * s + self.y * c)
    }

    pub fn distance_to_segment(self, a: Point, b: Point) -> f64 {
        let ab = b - a;
        let len2 = ab.dot(ab);
        let t = if len2 == 0.0 {
            0.0
        } else {
            ((self - a).dot(ab) / len2).clamp(0.0, 1.0)
        };
        (self - a.lerp(b, t)).norm()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// Closed polygon given by its vertices in order; edge `i` runs from vertex
/// `i` to vertex `i + 1` (wrapping).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    pub vertices: Vec<Point>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Self {
        Polygon { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn point_on_edge(&self, edge: usize, t: f64) -> Point {
        let (a, b) = self.edge(edge);
        a.lerp(b, t)
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum::<f64>()
            / 2.0
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                (b - a).norm()
            })
            .sum()
    }

    pub fn centroid(&self) -> Point {
        let n = self.vertices.len();
        let a = self.signed_area();
        if a.abs() < 1e-300 {
            let sum = self.vertices.iter().fold(Point::default(), |s, &p| s + p);
            return sum * (1.0 / n as f64);
        }
        let mut c = Point::default();
        for i in 0..n {
            let (p, q) = self.edge(i);
            let w = p.cross(q);
            c = c + (p + q) * w;
        }
        c * (1.0 / (6.0 * a))
    }

    /// Even-odd containment test.
    pub fn contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[j]);
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }

    /// Smallest signed distance from `p` to the edge lines of a convex
    /// polygon, positive inside. Orientation-agnostic.
    pub fn inside_margin(&self, p: Point) -> f64 {
        let sign = self.signed_area().signum();
        (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                let e = b - a;
                sign * e.cross(p - a) / e.norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn translated(&self, d: Point) -> Polygon {
        Polygon::new(self.vertices.iter().map(|&v| v + d).collect())
    }

    pub fn rotated(&self, degrees: f64) -> Polygon {
        Polygon::new(self.vertices.iter().map(|v| v.rotated(degrees)).collect())
    }

    /// Isoperimetric ratio `area / perimeter^2`; small values flag slivers.
    pub fn fatness(&self) -> f64 {
        let p = self.perimeter();
        if p == 0.0 {
            0.0
        } else {
            self.area() / (p * p)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeKind {
    Square,
    Triangle,
    Hexagon,
}

impl ShapeKind {
    pub const ALL: [ShapeKind; 3] = [ShapeKind::Square, ShapeKind::Triangle, ShapeKind::Hexagon];

    pub fn edge_count(self) -> usize {
        match self {
            ShapeKind::Square => 4,
            ShapeKind::Triangle => 3,
            ShapeKind::Hexagon => 6,
        }
    }

    /// Rotations (degrees) that map the tile onto itself, keeping the
    /// tessellation free of gaps.
    pub fn rotation_angles(self) -> &'static [f64] {
        match self {
            ShapeKind::Square => &[0.0, 90.0, 180.0, 270.0],
            ShapeKind::Triangle | ShapeKind::Hexagon => &[0.0, 120.0, 240.0],
        }
    }
}

impl std::str::FromStr for ShapeKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "square" => Ok(ShapeKind::Square),
            "triangle" => Ok(ShapeKind::Triangle),
            "hexagon" => Ok(ShapeKind::Hexagon),
            other => Err(crate::Error::Parse(format!("unknown shape `{other}`"))),
        }
    }
}

/// Regular polygon used as the printing block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaseShape {
    pub kind: ShapeKind,
    pub side: f64,
}

impl BaseShape {
    pub fn new(kind: ShapeKind) -> Self {
        BaseShape { kind, side: 1.0 }
    }

    pub fn with_side(kind: ShapeKind, side: f64) -> crate::Result<Self> {
        if !(side.is_finite() && side > 0.0) {
            return Err(crate::Error::invalid("side", format!("{side} is not a positive length")));
        }
        Ok(BaseShape { kind, side })
    }

    /// Vertices centred on the centroid. The triangle points up and the
    /// hexagon has a vertex at the top.
    pub fn polygon(&self) -> Polygon {
        let s = self.side;
        let vertices = match self.kind {
            ShapeKind::Square => vec![
                Point::new(-s / 2.0, -s / 2.0),
                Point::new(s / 2.0, -s / 2.0),
                Point::new(s / 2.0, s / 2.0),
                Point::new(-s / 2.0, s / 2.0),
            ],
            ShapeKind::Triangle => {
                let h = s * 3f64.sqrt() / 2.0;
                vec![
                    Point::new(0.0, -2.0 * h / 3.0),
                    Point::new(s / 2.0, h / 3.0),
                    Point::new(-s / 2.0, h / 3.0),
                ]
            }
            ShapeKind::Hexagon => (0..6)
                .map(|k| {
                    let a = (-90.0 + 60.0 * k as f64).to_radians();
                    Point::new(s * a.cos(), s * a.sin())
                })
                .collect(),
        };
        Polygon::new(vertices)
    }
}

/// A point on a polygon boundary: edge index plus position along the edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub edge: usize,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChordKind {
    Straight,
    Curved,
}

/// Line joining two points on distinct edges of a polygon. Curved chords are
/// quadratic arcs whose control point sits `curvature * length` off the
/// midpoint along the left normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub from: BoundaryPoint,
    pub to: BoundaryPoint,
    pub kind: ChordKind,
    pub curvature: f64,
    pub start: Point,
    pub end: Point,
}

pub(crate) const CURVE_SEGMENTS: usize = 48;

impl Chord {
    pub fn straight(polygon: &Polygon, from: BoundaryPoint, to: BoundaryPoint) -> Self {
        Chord {
            from,
            to,
            kind: ChordKind::Straight,
            curvature: 0.0,
            start: polygon.point_on_edge(from.edge, from.t),
            end: polygon.point_on_edge(to.edge, to.t),
        }
    }

    pub fn control(&self) -> Point {
        let d = self.end - self.start;
        let normal = Point::new(-d.y, d.x);
        self.start.lerp(self.end, 0.5) + normal * self.curvature
    }

    pub fn is_curved(&self) -> bool {
        self.kind == ChordKind::Curved && self.curvature != 0.0
    }

    /// The chord as a polyline from `start` to `end`.
    pub fn polyline(&self) -> Vec<Point> {
        if !self.is_curved() {
            return vec![self.start, self.end];
        }
        let c = self.control();
        (0..=CURVE_SEGMENTS)
            .map(|i| {
                let t = i as f64 / CURVE_SEGMENTS as f64;
                let u = 1.0 - t;
                self.start * (u * u) + c * (2.0 * u * t) + self.end * (t * t)
            })
            .collect()
    }

    /// Which side of the chord's supporting line `p` lies on.
    pub fn line_side(&self, p: Point) -> bool {
        (self.end - self.start).cross(p - self.start) > 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_shapes() {
        let sq = BaseShape::new(ShapeKind::Square).polygon();
        assert!((sq.area() - 1.0).abs() < 1e-12);
        let tri = BaseShape::new(ShapeKind::Triangle).polygon();
        assert!((tri.area() - 3f64.sqrt() / 4.0).abs() < 1e-12);
        assert!(tri.centroid().norm() < 1e-12);
        let hex = BaseShape::new(ShapeKind::Hexagon).polygon();
        assert!((hex.area() - 3.0 * 3f64.sqrt() / 2.0).abs() < 1e-12);
        for p in [sq, tri, hex] {
            for i in 0..p.len() {
                let (a, b) = p.edge(i);
                assert!(((b - a).norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn containment_and_margin() {
        let sq = BaseShape::new(ShapeKind::Square).polygon();
        assert!(sq.contains(Point::new(0.1, -0.2)));
        assert!(!sq.contains(Point::new(0.6, 0.0)));
        assert!((sq.inside_margin(Point::new(0.0, 0.0)) - 0.5).abs() < 1e-12);
        assert!(sq.inside_margin(Point::new(0.7, 0.0)) < 0.0);
        let flipped = Polygon::new(sq.vertices.iter().rev().copied().collect());
        assert!((flipped.inside_margin(Point::new(0.0, 0.0)) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn curved_chord_endpoints() {
        let sq = BaseShape::new(ShapeKind::Square).polygon();
        let mut ch = Chord::straight(&sq, BoundaryPoint { edge: 0, t: 0.5 }, BoundaryPoint { edge: 2, t: 0.5 });
        ch.kind = ChordKind::Curved;
        ch.curvature = 0.3;
        let line = ch.polyline();
        assert_eq!(line.len(), CURVE_SEGMENTS + 1);
        assert_eq!(line[0], ch.start);
        assert_eq!(*line.last().unwrap(), ch.end);
    }

    #[test]
    fn rotation_is_clockwise_on_screen() {
        let p = Point::new(1.0, 0.0).rotated(90.0);
        assert!((p.x).abs() < 1e-12 && (p.y - 1.0).abs() < 1e-12);
    }
}
