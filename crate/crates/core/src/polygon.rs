//! Convex piecewise-linear polygons with exact rational break points.
//!
//! Newton, Hodge and slope-number polygons all use this one carrier. Every
//! polygon starts at the origin and has non-decreasing segment slopes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("segment multiplicity must be positive (slope {slope} has multiplicity 0)")]
    NonPositiveMultiplicity { slope: Rational },
    #[error("polygons have different total lengths ({left} vs {right})")]
    DomainMismatch { left: Box<Rational>, right: Box<Rational> },
    #[error("polygon must start at (0,0)")]
    NotAnchored,
    #[error("break point x-coordinates must be strictly increasing")]
    NotIncreasing,
    #[error("segment slopes must be non-decreasing")]
    NotConvex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    fn origin() -> Self {
        Point::new(Rational::zero(), Rational::zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polygon {
    points: Vec<Point>,
}

/// One row of a pointwise comparison between two polygons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointComparison {
    pub x: Rational,
    pub upper: Rational,
    pub lower: Rational,
}

impl PointComparison {
    pub fn holds(&self) -> bool {
        self.upper >= self.lower
    }
}

impl Polygon {
    /// The trivial polygon consisting of the origin only.
    pub fn empty() -> Self {
        Polygon { points: vec![Point::origin()] }
    }

    /// Builds the polygon whose segments have the given slopes and horizontal
    /// lengths, sorted by ascending slope.
    pub fn from_slopes<I>(slopes: I) -> Result<Self, PolygonError>
    where
        I: IntoIterator<Item = (Rational, u64)>,
    {
        let mut segments: Vec<(Rational, u64)> = slopes.into_iter().collect();
        if let Some((slope, _)) = segments.iter().find(|(_, m)| *m == 0) {
            return Err(PolygonError::NonPositiveMultiplicity { slope: slope.clone() });
        }
        segments.sort_by(|a, b| a.0.cmp(&b.0));

        let mut points = Vec::with_capacity(segments.len() + 1);
        let mut cur = Point::origin();
        points.push(cur.clone());
        for (slope, mult) in segments {
            let len = Rational::from(mult);
            cur = Point::new(&cur.x + &len, &cur.y + &(&slope * &len));
            points.push(cur.clone());
        }
        Ok(Polygon { points })
    }

    /// Checked constructor from explicit break points.
    pub fn from_points(points: Vec<Point>) -> Result<Self, PolygonError> {
        match points.first() {
            Some(p) if p.x.is_zero() && p.y.is_zero() => {}
            _ => return Err(PolygonError::NotAnchored),
        }
        if points.windows(2).any(|w| w[1].x <= w[0].x) {
            return Err(PolygonError::NotIncreasing);
        }
        let poly = Polygon { points };
        if poly.segment_slopes().windows(2).any(|w| w[1] < w[0]) {
            return Err(PolygonError::NotConvex);
        }
        Ok(poly)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn end(&self) -> &Point {
        self.points.last().expect("polygon always has its origin")
    }

    /// Total horizontal length.
    pub fn length(&self) -> &Rational {
        &self.end().x
    }

    pub fn segment_slopes(&self) -> Vec<Rational> {
        self.points
            .windows(2)
            .map(|w| &(&w[1].y - &w[0].y) / &(&w[1].x - &w[0].x))
            .collect()
    }

    pub fn is_convex(&self) -> bool {
        self.segment_slopes().windows(2).all(|w| w[0] <= w[1])
    }

    /// Height at `x` by linear interpolation, `None` outside `[0, length]`.
    pub fn value_at(&self, x: &Rational) -> Option<Rational> {
        if x.is_negative() || x > self.length() {
            return None;
        }
        // Find the first break point at or to the right of x.
        let idx = self.points.partition_point(|p| p.x < *x);
        let right = &self.points[idx];
        if right.x == *x {
            return Some(right.y.clone());
        }
        let left = &self.points[idx - 1];
        let t = &(x - &left.x) / &(&right.x - &left.x);
        Some(&left.y + &(&t * &(&right.y - &left.y)))
    }

    /// Drops interior break points that lie on the segment joining their
    /// neighbours.
    pub fn normalized(&self) -> Polygon {
        let mut out: Vec<Point> = Vec::with_capacity(self.points.len());
        for p in &self.points {
            while out.len() >= 2 {
                let a = &out[out.len() - 2];
                let b = &out[out.len() - 1];
                let s1 = &(&b.y - &a.y) / &(&b.x - &a.x);
                let s2 = &(&p.y - &b.y) / &(&p.x - &b.x);
                if s1 == s2 {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p.clone());
        }
        Polygon { points: out }
    }

    /// Union of the break-point x-coordinates of both polygons, ascending.
    fn union_xs(&self, other: &Polygon) -> Vec<Rational> {
        let mut xs: Vec<Rational> = self
            .points
            .iter()
            .chain(other.points.iter())
            .map(|p| p.x.clone())
            .collect();
        xs.sort();
        xs.dedup();
        xs
    }

    /// Evaluates `self` (as upper) and `lower` at every break point of
    /// either polygon.
    pub fn compare(&self, lower: &Polygon) -> Result<Vec<PointComparison>, PolygonError> {
        if self.length() != lower.length() {
            return Err(PolygonError::DomainMismatch {
                left: Box::new(self.length().clone()),
                right: Box::new(lower.length().clone()),
            });
        }
        Ok(self
            .union_xs(lower)
            .into_iter()
            .map(|x| PointComparison {
                upper: self.value_at(&x).expect("x within domain"),
                lower: lower.value_at(&x).expect("x within domain"),
                x,
            })
            .collect())
    }

    pub fn lies_on_or_above(&self, lower: &Polygon) -> Result<bool, PolygonError> {
        Ok(self.compare(lower)?.iter().all(PointComparison::holds))
    }

    pub fn geometrically_equal(&self, other: &Polygon) -> bool {
        self.normalized() == other.normalized()
    }
}

pub fn polygon_from_slope_multiset<I>(slopes: I) -> Result<Polygon, PolygonError>
where
    I: IntoIterator<Item = (Rational, u64)>,
{
    Polygon::from_slopes(slopes)
}

pub fn lies_on_or_above(upper: &Polygon, lower: &Polygon) -> Result<bool, PolygonError> {
    upper.lies_on_or_above(lower)
}

pub fn polygons_equal(a: &Polygon, b: &Polygon) -> bool {
    a.geometrically_equal(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn pts(list: &[(Rational, Rational)]) -> Polygon {
        Polygon::from_points(list.iter().map(|(x, y)| Point::new(x.clone(), y.clone())).collect())
            .unwrap()
    }

    fn coords(p: &Polygon) -> Vec<(Rational, Rational)> {
        p.points().iter().map(|p| (p.x.clone(), p.y.clone())).collect()
    }

    #[test]
    fn unit_segments() {
        let p = Polygon::from_slopes([(r(1, 1), 1), (r(0, 1), 1)]).unwrap();
        assert_eq!(coords(&p), vec![(r(0, 1), r(0, 1)), (r(1, 1), r(0, 1)), (r(2, 1), r(1, 1))]);
    }

    #[test]
    fn single_half_slope() {
        let p = Polygon::from_slopes([(r(1, 2), 2)]).unwrap();
        assert_eq!(coords(&p), vec![(r(0, 1), r(0, 1)), (r(2, 1), r(1, 1))]);
    }

    #[test]
    fn height_three_k3_shape() {
        // Cumulative rises: 3*(2/3) = 2, then +16, then +3*(4/3) = 4.
        let p = Polygon::from_slopes([(r(4, 3), 3), (r(1, 1), 16), (r(2, 3), 3)]).unwrap();
        assert_eq!(
            coords(&p),
            vec![
                (r(0, 1), r(0, 1)),
                (r(3, 1), r(2, 1)),
                (r(19, 1), r(18, 1)),
                (r(22, 1), r(22, 1)),
            ]
        );
    }

    #[test]
    fn rejects_zero_multiplicity() {
        assert!(matches!(
            Polygon::from_slopes([(r(0, 1), 0)]),
            Err(PolygonError::NonPositiveMultiplicity { .. })
        ));
    }

    #[test]
    fn supersingular_newton_above_hodge() {
        let newton = Polygon::from_slopes([(r(1, 2), 2)]).unwrap();
        let hodge = Polygon::from_slopes([(r(0, 1), 1), (r(1, 1), 1)]).unwrap();
        assert!(newton.lies_on_or_above(&newton).unwrap());
        assert!(newton.lies_on_or_above(&hodge).unwrap());
        assert!(!hodge.lies_on_or_above(&newton).unwrap());
        let rows = newton.compare(&hodge).unwrap();
        assert_eq!(rows[1].x, r(1, 1));
        assert_eq!(rows[1].upper, r(1, 2));
        assert_eq!(rows[1].lower, r(0, 1));
    }

    #[test]
    fn domain_mismatch() {
        let a = Polygon::from_slopes([(r(0, 1), 1)]).unwrap();
        let b = Polygon::from_slopes([(r(0, 1), 2)]).unwrap();
        assert!(matches!(a.lies_on_or_above(&b), Err(PolygonError::DomainMismatch { .. })));
    }

    #[test]
    fn equality_modulo_collinear_points() {
        let a = pts(&[(r(0, 1), r(0, 1)), (r(1, 1), r(0, 1)), (r(2, 1), r(1, 1))]);
        assert!(polygons_equal(&a, &a.clone()));
        let b = pts(&[(r(0, 1), r(0, 1)), (r(2, 1), r(1, 1))]);
        let c = pts(&[(r(0, 1), r(0, 1)), (r(1, 1), r(1, 2)), (r(2, 1), r(1, 1))]);
        assert!(polygons_equal(&b, &c));
        assert!(!polygons_equal(&b, &a));
    }

    #[test]
    fn checked_constructor() {
        assert_eq!(
            Polygon::from_points(vec![Point::new(r(1, 1), r(0, 1))]),
            Err(PolygonError::NotAnchored)
        );
        assert_eq!(
            Polygon::from_points(vec![
                Point::new(r(0, 1), r(0, 1)),
                Point::new(r(1, 1), r(1, 1)),
                Point::new(r(2, 1), r(1, 1)),
            ]),
            Err(PolygonError::NotConvex)
        );
        assert_eq!(
            Polygon::from_points(vec![Point::new(r(0, 1), r(0, 1)), Point::new(r(0, 1), r(1, 1))]),
            Err(PolygonError::NotIncreasing)
        );
    }

    #[test]
    fn empty_polygon() {
        let p = Polygon::from_slopes(Vec::new()).unwrap();
        assert_eq!(p, Polygon::empty());
        assert!(p.lies_on_or_above(&Polygon::empty()).unwrap());
    }

    fn slopes_strategy() -> impl Strategy<Value = Vec<(Rational, u64)>> {
        prop::collection::vec(((-6i64..12), (1i64..5), (1u64..6)), 1..7)
            .prop_map(|v| v.into_iter().map(|(n, d, m)| (Rational::new(n, d), m)).collect())
    }

    /// Three polygons on a common domain of length 12.
    fn length12() -> impl Strategy<Value = Polygon> {
        prop::collection::vec((-4i64..8, 1i64..4), 1..5).prop_map(|v| {
            // split 12 into pieces proportional to the number of entries
            let k = v.len() as u64;
            let mut segs: Vec<(Rational, u64)> = v
                .into_iter()
                .map(|(n, d)| (Rational::new(n, d), 12 / k))
                .collect();
            let used: u64 = segs.iter().map(|s| s.1).sum();
            segs[0].1 += 12 - used;
            Polygon::from_slopes(segs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn constructed_polygons_are_convex(s in slopes_strategy()) {
            let p = Polygon::from_slopes(s).unwrap();
            prop_assert!(p.is_convex());
        }

        #[test]
        fn permutation_and_splitting_invariance(s in slopes_strategy(), seed in 0usize..100) {
            let p = Polygon::from_slopes(s.clone()).unwrap();
            let mut rev = s.clone();
            rev.rotate_left(seed % s.len());
            rev.reverse();
            prop_assert!(polygons_equal(&Polygon::from_slopes(rev).unwrap(), &p));

            let mut split = Vec::new();
            for (slope, m) in s {
                if m >= 2 {
                    let a = 1 + (seed as u64 % (m - 1));
                    split.push((slope.clone(), a));
                    split.push((slope, m - a));
                } else {
                    split.push((slope, m));
                }
            }
            prop_assert!(polygons_equal(&Polygon::from_slopes(split).unwrap(), &p));
        }

        #[test]
        fn dominance_is_a_partial_order(a in length12(), b in length12(), c in length12()) {
            prop_assert!(a.lies_on_or_above(&a).unwrap());
            let ab = a.lies_on_or_above(&b).unwrap();
            let ba = b.lies_on_or_above(&a).unwrap();
            if ab && ba {
                prop_assert!(polygons_equal(&a, &b));
            }
            if ab && b.lies_on_or_above(&c).unwrap() {
                prop_assert!(a.lies_on_or_above(&c).unwrap());
            }
        }
    }
}
