//! Geometry of the square grid `Z x Z` under the Manhattan metric.
//!
//! Sets are materialized eagerly in canonical order (lexicographic by
//! `(x, y)`), so memory is `O(m^2)` for radius `m`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A point of the infinite square grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Vertex {
    pub x: i64,
    pub y: i64,
}

impl Vertex {
    pub const ORIGIN: Vertex = Vertex { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Vertex { x, y }
    }

    /// Distance to the origin, `|x| + |y|`.
    pub fn norm(self) -> u64 {
        self.x.unsigned_abs() + self.y.unsigned_abs()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Vertex {
    fn from((x, y): (i64, i64)) -> Self {
        Vertex { x, y }
    }
}

impl Add for Vertex {
    type Output = Vertex;
    fn add(self, rhs: Vertex) -> Vertex {
        Vertex::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vertex {
    type Output = Vertex;
    fn sub(self, rhs: Vertex) -> Vertex {
        Vertex::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vertex {
    type Output = Vertex;
    fn neg(self) -> Vertex {
        Vertex::new(-self.x, -self.y)
    }
}

pub fn manhattan_distance(u: Vertex, v: Vertex) -> u64 {
    u.x.abs_diff(v.x) + u.y.abs_diff(v.y)
}

/// A finite set of vertices kept sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSet {
    elements: Vec<Vertex>,
}

impl VertexSet {
    /// Builds a set from arbitrary vertices, sorting and removing duplicates.
    pub fn from_vertices(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut elements: Vec<Vertex> = vertices.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        VertexSet { elements }
    }

    // Callers guarantee canonical order.
    fn from_sorted(elements: Vec<Vertex>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        VertexSet { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vertex> {
        self.elements.iter()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.elements
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(self.iter().chain(other.iter()).copied())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().all(|v| !large.contains(v))
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a Vertex;
    type IntoIter = std::slice::Iter<'a, Vertex>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// All vertices at distance exactly `m` from the origin: one point for
/// `m = 0`, otherwise `4m`.
pub fn sphere(m: u32) -> VertexSet {
    let m = i64::from(m);
    let mut out = Vec::with_capacity((4 * m).max(1) as usize);
    for x in -m..=m {
        let rest = m - x.abs();
        if rest == 0 {
            out.push(Vertex::new(x, 0));
        } else {
            out.push(Vertex::new(x, -rest));
            out.push(Vertex::new(x, rest));
        }
    }
    VertexSet::from_sorted(out)
}

/// All vertices within distance `m` of the origin; `2m^2 + 2m + 1` points.
pub fn ball(m: u32) -> VertexSet {
    let m = i64::from(m);
    let mut out = Vec::with_capacity((2 * m * m + 2 * m + 1) as usize);
    for x in -m..=m {
        let rest = m - x.abs();
        out.extend((-rest..=rest).map(|y| Vertex::new(x, y)));
    }
    VertexSet::from_sorted(out)
}

/// The two-point center `{(0,0), (0,1)}` used for odd reuse parameters.
pub const T_CENTER: [Vertex; 2] = [Vertex::new(0, 0), Vertex::new(0, 1)];

/// Distance from `v` to the two-point center.
pub fn distance_to_t_center(v: Vertex) -> u64 {
    T_CENTER
        .iter()
        .map(|&c| manhattan_distance(v, c))
        .min()
        .unwrap_or(0)
}

/// Vertices at distance exactly `m` from the two-point center. For `m = 0`
/// this is the center itself; for `m > 0` it has `4m + 2` points.
pub fn t_set(m: u32) -> VertexSet {
    let m = i64::from(m);
    let mut out = Vec::with_capacity((4 * m + 2) as usize);
    for x in -m..=m {
        // The distance to the center is |x| plus the distance from y to [0, 1].
        let rest = m - x.abs();
        if rest == 0 {
            out.push(Vertex::new(x, 0));
            out.push(Vertex::new(x, 1));
        } else {
            out.push(Vertex::new(x, -rest));
            out.push(Vertex::new(x, 1 + rest));
        }
    }
    VertexSet::from_sorted(out)
}
