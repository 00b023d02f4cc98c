//! Exact integer predicates on lattice points.
//!
//! Every coordinate handled here must satisfy `|c| <= COORD_BUDGET` (2^40).
//! Differences then fit in 42 bits and cross products in 84 bits, so all
//! determinants are evaluated exactly in `i128`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible coordinate magnitude.
pub const COORD_BUDGET: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("coordinate ({x}, {y}) exceeds the budget of 2^40")]
    OutOfBudget { x: i64, y: i64 },
    #[error("degenerate segment: both endpoints at ({x}, {y})")]
    DegenerateSegment { x: i64, y: i64 },
    #[error("duplicate point at indices {first} and {second}")]
    DuplicatePoint { first: usize, second: usize },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
}

/// An exact point of the integer lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn in_budget(&self) -> bool {
        self.x.abs() <= COORD_BUDGET && self.y.abs() <= COORD_BUDGET
    }

    pub fn check_budget(&self) -> Result<(), GeomError> {
        if self.in_budget() {
            Ok(())
        } else {
            Err(GeomError::OutOfBudget { x: self.x, y: self.y })
        }
    }
}

impl From<[i64; 2]> for GridPoint {
    fn from([x, y]: [i64; 2]) -> Self {
        Self { x, y }
    }
}

impl From<GridPoint> for [i64; 2] {
    fn from(p: GridPoint) -> Self {
        [p.x, p.y]
    }
}

impl From<(i64, i64)> for GridPoint {
    fn from((x, y): (i64, i64)) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Turn direction of an ordered point triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }

    fn from_det(det: i128) -> Self {
        match det.signum() {
            1 => Orientation::CounterClockwise,
            -1 => Orientation::Clockwise,
            _ => Orientation::Collinear,
        }
    }
}

/// `(b - a) x (c - a)` without the budget check. Callers guarantee budget.
#[inline]
pub(crate) fn cross(a: GridPoint, b: GridPoint, c: GridPoint) -> i128 {
    let abx = b.x as i128 - a.x as i128;
    let aby = b.y as i128 - a.y as i128;
    let acx = c.x as i128 - a.x as i128;
    let acy = c.y as i128 - a.y as i128;
    abx * acy - aby * acx
}

#[inline]
pub(crate) fn orient_raw(a: GridPoint, b: GridPoint, c: GridPoint) -> Orientation {
    Orientation::from_det(cross(a, b, c))
}

/// Sign of the determinant `(b - a) x (c - a)`.
pub fn orient(a: GridPoint, b: GridPoint, c: GridPoint) -> Result<Orientation, GeomError> {
    a.check_budget()?;
    b.check_budget()?;
    c.check_budget()?;
    Ok(orient_raw(a, b, c))
}

/// Checks every point against the coordinate budget.
pub fn check_budget_all(points: &[GridPoint]) -> Result<(), GeomError> {
    points.iter().try_for_each(GridPoint::check_budget)
}

/// Returns the first duplicated pair `(i, j)` with `i < j`, if any.
pub fn find_duplicate(points: &[GridPoint]) -> Option<(usize, usize)> {
    let mut seen: HashMap<GridPoint, usize> = HashMap::with_capacity(points.len());
    for (j, p) in points.iter().enumerate() {
        if let Some(&i) = seen.get(p) {
            return Some((i, j));
        }
        seen.insert(*p, j);
    }
    None
}

fn check_point_set(points: &[GridPoint]) -> Result<(), GeomError> {
    check_budget_all(points)?;
    match find_duplicate(points) {
        Some((first, second)) => Err(GeomError::DuplicatePoint { first, second }),
        None => Ok(()),
    }
}

/// A straight-line edge between two distinct lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    a: GridPoint,
    b: GridPoint,
}

impl Segment {
    pub fn new(a: GridPoint, b: GridPoint) -> Result<Self, GeomError> {
        a.check_budget()?;
        b.check_budget()?;
        if a == b {
            return Err(GeomError::DegenerateSegment { x: a.x, y: a.y });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> GridPoint {
        self.a
    }

    pub fn b(&self) -> GridPoint {
        self.b
    }

    fn has_endpoint(&self, p: GridPoint) -> bool {
        self.a == p || self.b == p
    }

    /// `p` is known collinear with the segment; is it inside the closed bounding box?
    fn spans(&self, p: GridPoint) -> bool {
        within(self.a.x, self.b.x, p.x) && within(self.a.y, self.b.y, p.y)
    }
}

fn within(a: i64, b: i64, v: i64) -> bool {
    a.min(b) <= v && v <= a.max(b)
}

/// Do two segments share any point other than one common endpoint?
///
/// Proper crossings, collinear overlaps and an endpoint touching the other
/// segment's interior are all conflicts.
pub fn segments_conflict(s1: &Segment, s2: &Segment) -> bool {
    let (a, b, c, d) = (s1.a, s1.b, s2.a, s2.b);
    let o1 = orient_raw(a, b, c);
    let o2 = orient_raw(a, b, d);

    if o1 == Orientation::Collinear && o2 == Orientation::Collinear {
        // Same supporting line: compare projections on a non-degenerate axis.
        let key = |p: GridPoint| if a.x != b.x { p.x } else { p.y };
        let (lo1, hi1) = minmax(key(a), key(b));
        let (lo2, hi2) = minmax(key(c), key(d));
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        // Touching in a single point means that point is an endpoint of both.
        return lo < hi;
    }

    let shared = [c, d].iter().filter(|p| s1.has_endpoint(**p)).count();
    if shared > 0 {
        // Not on a common line, so the shared endpoint is the only contact.
        return false;
    }

    let o3 = orient_raw(c, d, a);
    let o4 = orient_raw(c, d, b);
    let strictly_opposite = |x: Orientation, y: Orientation| x.sign() * y.sign() < 0;
    if strictly_opposite(o1, o2) && strictly_opposite(o3, o4) {
        return true;
    }
    (o1 == Orientation::Collinear && s1.spans(c))
        || (o2 == Orientation::Collinear && s1.spans(d))
        || (o3 == Orientation::Collinear && s2.spans(a))
        || (o4 == Orientation::Collinear && s2.spans(b))
}

fn minmax(a: i64, b: i64) -> (i64, i64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Primitive direction of the line through `from` and `to`, with the sign
/// fixed so both orientations of a line map to the same key.
fn line_direction(from: GridPoint, to: GridPoint) -> (i64, i64) {
    let dx = to.x - from.x;
    let dy = to.y - from.y;
    let g = gcd(dx, dy);
    let (dx, dy) = (dx / g, dy / g);
    if dx < 0 || (dx == 0 && dy < 0) {
        (-dx, -dy)
    } else {
        (dx, dy)
    }
}

/// All index triples `(i, j, k)`, `i < j < k`, of collinear points, grouped by
/// their smallest index. With `first_only` the scan stops after the first `i`
/// that owns a triple and returns only the lexicographically least one.
fn collinear_triples(points: &[GridPoint], first_only: bool) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let mut groups: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for i in 0..points.len() {
        groups.clear();
        for j in i + 1..points.len() {
            groups
                .entry(line_direction(points[i], points[j]))
                .or_default()
                .push(j);
        }
        let mut found: Vec<&Vec<usize>> = groups.values().filter(|g| g.len() >= 2).collect();
        if found.is_empty() {
            continue;
        }
        if first_only {
            // Groups are disjoint; the least triple sits in the group with the smallest j.
            let g = found.iter().min_by_key(|g| g[0]).unwrap();
            return vec![(i, g[0], g[1])];
        }
        found.sort_by_key(|g| g[0]);
        for g in found {
            for (a, &j) in g.iter().enumerate() {
                for &k in &g[a + 1..] {
                    out.push((i, j, k));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Lexicographically least collinear index triple, if any.
pub fn find_collinear_triple(points: &[GridPoint]) -> Result<Option<(usize, usize, usize)>, GeomError> {
    check_point_set(points)?;
    Ok(collinear_triples(points, true).into_iter().next())
}

/// Every collinear index triple in lexicographic order.
pub fn all_collinear_triples(points: &[GridPoint]) -> Result<Vec<(usize, usize, usize)>, GeomError> {
    check_point_set(points)?;
    Ok(collinear_triples(points, false))
}

/// Convex hull as counterclockwise indices, starting from the lexicographically
/// smallest point. Points lying in the relative interior of a hull edge are not
/// reported. If all points are collinear the two extreme points are returned.
pub fn convex_hull(points: &[GridPoint]) -> Result<Vec<usize>, GeomError> {
    if points.len() < 3 {
        return Err(GeomError::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    check_point_set(points)?;

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| points[i]);

    // Andrew's monotone chain, dropping collinear points.
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2
            && cross(points[lower[lower.len() - 2]], points[lower[lower.len() - 1]], points[i]) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2
            && cross(points[upper[upper.len() - 2]], points[upper[upper.len() - 1]], points[i]) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(lower)
}

/// True if `points` has no duplicates. Convenience for callers that only need
/// a yes/no answer.
pub fn all_distinct(points: &[GridPoint]) -> bool {
    let mut seen = HashSet::with_capacity(points.len());
    points.iter().all(|p| seen.insert(*p))
}
