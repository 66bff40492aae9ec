//! Exact axis-parallel geometry in rational coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar used for every coordinate before normalization.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point3 {
    pub x: Q,
    pub y: Q,
    pub z: Q,
}

impl Point3 {
    pub fn new(x: Q, y: Q, z: Q) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Point3::new(q(x), q(y), q(z))
    }

    pub fn coord(&self, axis: Axis) -> &Q {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
            Axis::Z => &self.z,
        }
    }

    fn coord_mut(&mut self, axis: Axis) -> &mut Q {
        match axis {
            Axis::X => &mut self.x,
            Axis::Y => &mut self.y,
            Axis::Z => &mut self.z,
        }
    }

    pub fn with(&self, axis: Axis, value: Q) -> Point3 {
        let mut p = self.clone();
        *p.coord_mut(axis) = value;
        p
    }

    /// Moves the point by `amount` along a signed axis direction.
    pub fn step(&self, dir: Dir, amount: &Q) -> Point3 {
        let mut p = self.clone();
        let c = p.coord_mut(dir.axis);
        if dir.positive {
            *c += amount;
        } else {
            *c -= amount;
        }
        p
    }

    /// Axis along which `self` and `other` differ, if they differ in exactly one coordinate.
    pub fn axis_to(&self, other: &Point3) -> Option<Axis> {
        let diffs: Vec<Axis> = Axis::ALL
            .into_iter()
            .filter(|&a| self.coord(a) != other.coord(a))
            .collect();
        match diffs.as_slice() {
            [a] => Some(*a),
            _ => None,
        }
    }

    /// Signed direction of travel from `self` to `other` (axis-parallel only).
    pub fn dir_to(&self, other: &Point3) -> Option<Dir> {
        let axis = self.axis_to(other)?;
        Some(Dir {
            axis,
            positive: other.coord(axis) > self.coord(axis),
        })
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// The two axes held constant along a stick of this axis, in (x, y, z) order.
    pub fn others(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::X, Axis::Z),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

/// One of the six signed axis directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dir {
    pub axis: Axis,
    pub positive: bool,
}

impl Dir {
    pub const PX: Dir = Dir { axis: Axis::X, positive: true };
    pub const NX: Dir = Dir { axis: Axis::X, positive: false };
    pub const PY: Dir = Dir { axis: Axis::Y, positive: true };
    pub const NY: Dir = Dir { axis: Axis::Y, positive: false };
    pub const PZ: Dir = Dir { axis: Axis::Z, positive: true };
    pub const NZ: Dir = Dir { axis: Axis::Z, positive: false };

    pub fn opposite(self) -> Dir {
        Dir { axis: self.axis, positive: !self.positive }
    }

    pub fn is_horizontal(self) -> bool {
        self.axis != Axis::Z
    }

    /// Horizontal directions perpendicular to a horizontal direction, `+` first.
    pub fn horizontal_perpendiculars(self) -> [Dir; 2] {
        match self.axis {
            Axis::X => [Dir::PY, Dir::NY],
            Axis::Y => [Dir::PX, Dir::NX],
            Axis::Z => panic!("vertical direction has no horizontal perpendicular pair"),
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.positive { '+' } else { '-' }, self.axis.name())
    }
}

/// An axis-parallel closed segment of positive length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Stick {
    pub axis: Axis,
    /// The two constant coordinates, ordered as in [`Axis::others`].
    pub fixed: (Q, Q),
    /// `span.0 < span.1` along `axis`.
    pub span: (Q, Q),
}

impl Stick {
    /// Builds the stick joining two points that differ in exactly one coordinate.
    pub fn between(a: &Point3, b: &Point3) -> Option<Stick> {
        let axis = a.axis_to(b)?;
        let (o1, o2) = axis.others();
        let (lo, hi) = if a.coord(axis) < b.coord(axis) {
            (a.coord(axis).clone(), b.coord(axis).clone())
        } else {
            (b.coord(axis).clone(), a.coord(axis).clone())
        };
        Some(Stick {
            axis,
            fixed: (a.coord(o1).clone(), a.coord(o2).clone()),
            span: (lo, hi),
        })
    }

    fn point_at(&self, t: &Q) -> Point3 {
        let (o1, o2) = self.axis.others();
        let mut p = Point3::new(Q::zero(), Q::zero(), Q::zero());
        *p.coord_mut(o1) = self.fixed.0.clone();
        *p.coord_mut(o2) = self.fixed.1.clone();
        *p.coord_mut(self.axis) = t.clone();
        p
    }

    pub fn start(&self) -> Point3 {
        self.point_at(&self.span.0)
    }

    pub fn end(&self) -> Point3 {
        self.point_at(&self.span.1)
    }

    pub fn length(&self) -> Q {
        &self.span.1 - &self.span.0
    }

    pub fn is_endpoint(&self, p: &Point3) -> bool {
        *p == self.start() || *p == self.end()
    }

    pub fn contains(&self, p: &Point3) -> bool {
        let (o1, o2) = self.axis.others();
        p.coord(o1) == &self.fixed.0
            && p.coord(o2) == &self.fixed.1
            && p.coord(self.axis) >= &self.span.0
            && p.coord(self.axis) <= &self.span.1
    }

    /// Applies `p -> scale * p + shift` componentwise.
    pub fn transformed(&self, scale: &Q, shift: &Point3) -> Stick {
        let a = affine(&self.start(), scale, shift);
        let b = affine(&self.end(), scale, shift);
        Stick::between(&a, &b).expect("positive scaling preserves axis-parallel sticks")
    }

    /// Outward direction of this stick as seen from one of its endpoints.
    pub fn dir_from(&self, endpoint: &Point3) -> Dir {
        Dir { axis: self.axis, positive: endpoint == &self.start() }
    }
}

pub fn affine(p: &Point3, scale: &Q, shift: &Point3) -> Point3 {
    Point3::new(
        &p.x * scale + &shift.x,
        &p.y * scale + &shift.y,
        &p.z * scale + &shift.z,
    )
}

/// How two sticks meet, if at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contact {
    /// Single common point that is an endpoint of both sticks.
    SharedEndpoint(Point3),
    /// Single common point interior to at least one of the sticks.
    Interior(Point3),
    /// Collinear overlap of positive length, starting at the given point.
    Overlap(Point3),
}

impl Contact {
    pub fn point(&self) -> &Point3 {
        match self {
            Contact::SharedEndpoint(p) | Contact::Interior(p) | Contact::Overlap(p) => p,
        }
    }
}

pub fn contact(a: &Stick, b: &Stick) -> Option<Contact> {
    if a.axis == b.axis {
        if a.fixed != b.fixed {
            return None;
        }
        let lo = (&a.span.0).max(&b.span.0).clone();
        let hi = (&a.span.1).min(&b.span.1).clone();
        if lo > hi {
            return None;
        }
        let p = a.point_at(&lo);
        if lo == hi {
            return Some(if a.is_endpoint(&p) && b.is_endpoint(&p) {
                Contact::SharedEndpoint(p)
            } else {
                Contact::Interior(p)
            });
        }
        return Some(Contact::Overlap(p));
    }
    // Different axes: the only candidate point takes each coordinate from whichever stick fixes it.
    let mut p = Point3::new(Q::zero(), Q::zero(), Q::zero());
    for axis in Axis::ALL {
        let va = fixed_value(a, axis);
        let vb = fixed_value(b, axis);
        let v = match (va, vb) {
            (Some(x), Some(y)) if x != y => return None,
            (Some(x), _) => x,
            (None, Some(y)) => y,
            (None, None) => unreachable!("two distinct axes fix every coordinate"),
        };
        *p.coord_mut(axis) = v;
    }
    if !a.contains(&p) || !b.contains(&p) {
        return None;
    }
    Some(if a.is_endpoint(&p) && b.is_endpoint(&p) {
        Contact::SharedEndpoint(p)
    } else {
        Contact::Interior(p)
    })
}

fn fixed_value(s: &Stick, axis: Axis) -> Option<Q> {
    let (o1, o2) = s.axis.others();
    if axis == o1 {
        Some(s.fixed.0.clone())
    } else if axis == o2 {
        Some(s.fixed.1.clone())
    } else {
        None
    }
}

/// Drops repeated points and interior points of straight runs.
///
/// Returns `None` if a run doubles back on itself or two consecutive points
/// are not axis-aligned.
pub fn simplify_polyline(points: &[Point3]) -> Option<Vec<Point3>> {
    let mut out: Vec<Point3> = Vec::with_capacity(points.len());
    for p in points {
        if out.last() == Some(p) {
            continue;
        }
        if out.len() >= 2 {
            let a = &out[out.len() - 2];
            let b = &out[out.len() - 1];
            let d1 = a.dir_to(b)?;
            let d2 = b.dir_to(p)?;
            if d1 == d2 {
                out.pop();
            } else if d1 == d2.opposite() {
                return None;
            }
        } else if let Some(last) = out.last() {
            last.axis_to(p)?;
        }
        out.push(p.clone());
    }
    Some(out)
}

/// Least common multiple of every denominator in the given values.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xs(y: i64, z: i64, a: i64, b: i64) -> Stick {
        Stick::between(&Point3::from_ints(a, y, z), &Point3::from_ints(b, y, z)).unwrap()
    }

    #[test]
    fn collinear_overlap_detected() {
        let c = contact(&xs(0, 0, 0, 2), &xs(0, 0, 1, 3));
        assert!(matches!(c, Some(Contact::Overlap(_))));
    }

    #[test]
    fn crossing_is_interior() {
        let x = xs(1, 1, 0, 2);
        let z = Stick::between(&Point3::from_ints(1, 1, 0), &Point3::from_ints(1, 1, 2)).unwrap();
        assert_eq!(contact(&x, &z), Some(Contact::Interior(Point3::from_ints(1, 1, 1))));
    }

    #[test]
    fn corner_is_shared_endpoint() {
        let x = xs(0, 0, 0, 2);
        let y = Stick::between(&Point3::from_ints(2, 0, 0), &Point3::from_ints(2, 3, 0)).unwrap();
        assert_eq!(contact(&x, &y), Some(Contact::SharedEndpoint(Point3::from_ints(2, 0, 0))));
    }

    #[test]
    fn end_to_end_collinear_touch() {
        let c = contact(&xs(0, 0, 0, 1), &xs(0, 0, 1, 2));
        assert_eq!(c, Some(Contact::SharedEndpoint(Point3::from_ints(1, 0, 0))));
    }

    #[test]
    fn simplify_fuses_and_rejects_backtrack() {
        let pts = [
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(1, 0, 0),
            Point3::from_ints(1, 0, 0),
            Point3::from_ints(2, 0, 0),
            Point3::from_ints(2, 1, 0),
        ];
        assert_eq!(simplify_polyline(&pts).unwrap().len(), 3);
        let back = [
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(2, 0, 0),
            Point3::from_ints(1, 0, 0),
        ];
        assert!(simplify_polyline(&back).is_none());
    }
}
