//! Exact convex polygons in the plane.
//!
//! A [`RationalPolygon`] is always stored in canonical form: vertices in
//! counterclockwise order starting from the lexicographically smallest one,
//! with no repeated or collinear vertices. Segments (two vertices), points
//! (one vertex) and the empty polygon are allowed, so equality of polygons is
//! equality of vertex lists.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    fn scale(&self, s: &Rational) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `(b − a) × (c − a)`.
fn cross(a: &Point, b: &Point, c: &Point) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

fn cross_vec(u: &Point, v: &Point) -> Rational {
    &u.x * &v.y - &u.y * &v.x
}

/// `a·x + b·y ≤ c`.
#[derive(Clone, Debug)]
struct HalfPlane {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl HalfPlane {
    /// Left side of the directed line `p → q`.
    fn left_of(p: &Point, q: &Point) -> Self {
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &a * &p.x + &b * &p.y;
        HalfPlane { a, b, c }
    }

    /// `slack ≥ 0` inside.
    fn slack(&self, p: &Point) -> Rational {
        &self.c - (&self.a * &p.x + &self.b * &p.y)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPolygon {
    vertices: Vec<Point>,
}

impl RationalPolygon {
    /// Convex hull of `points` in canonical form.
    pub fn from_points(points: impl IntoIterator<Item = Point>) -> Self {
        let mut pts: Vec<Point> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return RationalPolygon { vertices: pts };
        }
        let half = |iter: &mut dyn Iterator<Item = &Point>| {
            let mut chain: Vec<Point> = Vec::new();
            for p in iter {
                while chain.len() >= 2
                    && !cross(&chain[chain.len() - 2], &chain[chain.len() - 1], p).is_positive()
                {
                    chain.pop();
                }
                chain.push(p.clone());
            }
            chain
        };
        let mut lower = half(&mut pts.iter());
        let mut upper = half(&mut pts.iter().rev());
        lower.pop();
        upper.pop();
        lower.extend(upper);
        RationalPolygon { vertices: lower }
    }

    pub fn empty() -> Self {
        RationalPolygon::default()
    }

    pub fn point(p: Point) -> Self {
        RationalPolygon { vertices: vec![p] }
    }

    pub fn segment(p: Point, q: Point) -> Self {
        Self::from_points([p, q])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// True for polygons with nonempty interior.
    pub fn is_full_dimensional(&self) -> bool {
        self.vertices.len() >= 3
    }

    pub fn area(&self) -> Rational {
        let n = self.vertices.len();
        if n < 3 {
            return Rational::zero();
        }
        let twice = (0..n).fold(Rational::zero(), |acc, i| {
            acc + cross_vec(&self.vertices[i], &self.vertices[(i + 1) % n])
        });
        twice / int(2)
    }

    pub fn scale(&self, lambda: &Rational) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::NonPositiveScale(lambda.clone()));
        }
        // Positive scaling preserves order and orientation.
        Ok(RationalPolygon {
            vertices: self.vertices.iter().map(|p| p.scale(lambda)).collect(),
        })
    }

    pub fn translate(&self, by: &Point) -> Self {
        RationalPolygon {
            vertices: self.vertices.iter().map(|p| p.add(by)).collect(),
        }
    }

    /// Closed half-planes whose intersection is the polygon.
    fn half_planes(&self) -> Vec<HalfPlane> {
        let v = &self.vertices;
        match v.len() {
            0 => Vec::new(),
            1 => {
                let p = &v[0];
                let e = Point::from_ints(1, 0);
                let f = Point::from_ints(0, 1);
                vec![
                    HalfPlane::left_of(p, &p.add(&f)),
                    HalfPlane::left_of(&p.add(&f), p),
                    HalfPlane::left_of(&p.add(&e), p),
                    HalfPlane::left_of(p, &p.add(&e)),
                ]
            }
            2 => {
                let (p, q) = (&v[0], &v[1]);
                let d = q.sub(p);
                let normal = Point::new(-&d.y, d.x.clone());
                vec![
                    HalfPlane::left_of(p, q),
                    HalfPlane::left_of(q, p),
                    // caps at both endpoints
                    HalfPlane::left_of(&p.add(&normal), p),
                    HalfPlane::left_of(q, &q.add(&normal)),
                ]
            }
            n => (0..n)
                .map(|i| HalfPlane::left_of(&v[i], &v[(i + 1) % n]))
                .collect(),
        }
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        !self.is_empty() && self.half_planes().iter().all(|h| !h.slack(p).is_negative())
    }

    /// `other ⊆ self` (closed sets).
    pub fn contains(&self, other: &RationalPolygon) -> bool {
        let hs = self.half_planes();
        if self.is_empty() {
            return other.is_empty();
        }
        other
            .vertices
            .iter()
            .all(|p| hs.iter().all(|h| !h.slack(p).is_negative()))
    }

    /// `self ∩ other` by Sutherland–Hodgman clipping against the half-planes
    /// of `other`.
    pub fn intersection(&self, other: &RationalPolygon) -> RationalPolygon {
        if other.is_empty() {
            return RationalPolygon::empty();
        }
        let mut subject = self.vertices.clone();
        for h in other.half_planes() {
            if subject.is_empty() {
                break;
            }
            let n = subject.len();
            let mut out = Vec::new();
            for i in 0..n {
                let cur = &subject[i];
                let next = &subject[(i + 1) % n];
                let sc = h.slack(cur);
                let sn = h.slack(next);
                if !sc.is_negative() {
                    out.push(cur.clone());
                }
                if (sc.is_negative() && sn.is_positive()) || (sc.is_positive() && sn.is_negative()) {
                    let t = &sc / (&sc - &sn);
                    out.push(cur.add(&next.sub(cur).scale(&t)));
                }
            }
            subject = out;
        }
        RationalPolygon::from_points(subject)
    }

    /// `area(self) − area(self ∩ other)`.
    pub fn difference_area(&self, other: &RationalPolygon) -> Rational {
        self.area() - self.intersection(other).area()
    }

    /// Least `λ ≥ 0` with `p ∈ λ·self`, or `None` when no scaling covers `p`.
    /// Requires the origin to lie in `self`.
    pub fn gauge(&self, p: &Point) -> Option<Rational> {
        let mut lambda = Rational::zero();
        for h in self.half_planes() {
            let lhs = &h.a * &p.x + &h.b * &p.y;
            if h.c.is_positive() {
                let r = lhs / &h.c;
                if r > lambda {
                    lambda = r;
                }
            } else if lhs.is_positive() {
                return None;
            }
        }
        Some(lambda)
    }

    /// Vertex from which the edge sequence has nondecreasing angle in `[0, 2π)`.
    fn bottom_index(&self) -> usize {
        (0..self.vertices.len())
            .min_by(|&i, &j| {
                let (a, b) = (&self.vertices[i], &self.vertices[j]);
                a.y.cmp(&b.y).then_with(|| a.x.cmp(&b.x))
            })
            .unwrap_or(0)
    }

    fn edges_from_bottom(&self) -> Vec<Point> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        let s = self.bottom_index();
        (0..n)
            .map(|k| {
                let a = &self.vertices[(s + k) % n];
                let b = &self.vertices[(s + k + 1) % n];
                b.sub(a)
            })
            .collect()
    }
}

fn angle_half(v: &Point) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

fn angle_cmp(u: &Point, v: &Point) -> Ordering {
    angle_half(u).cmp(&angle_half(v)).then_with(|| {
        let c = cross_vec(u, v);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Minkowski sum by merging the two edge sequences by angle.
pub fn minkowski_sum(p: &RationalPolygon, q: &RationalPolygon) -> RationalPolygon {
    if p.is_empty() || q.is_empty() {
        return RationalPolygon::empty();
    }
    let start = p.vertices[p.bottom_index()].add(&q.vertices[q.bottom_index()]);
    let (ep, eq) = (p.edges_from_bottom(), q.edges_from_bottom());
    let mut points = Vec::with_capacity(ep.len() + eq.len() + 1);
    let mut cur = start;
    let (mut i, mut j) = (0, 0);
    points.push(cur.clone());
    while i < ep.len() || j < eq.len() {
        let take_p = match (ep.get(i), eq.get(j)) {
            (Some(a), Some(b)) => angle_cmp(a, b) != Ordering::Greater,
            (Some(_), None) => true,
            _ => false,
        };
        let e = if take_p {
            i += 1;
            &ep[i - 1]
        } else {
            j += 1;
            &eq[j - 1]
        };
        cur = cur.add(e);
        points.push(cur.clone());
    }
    RationalPolygon::from_points(points)
}

impl fmt::Display for RationalPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}
