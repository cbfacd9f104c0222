//! Visibility graphs and collinearity statistics of colored point sets.

use crate::error::{Error, Result};
use crate::geom::{between_unchecked, format_rat, segment_param, Point};
use num::bigint::BigInt;
use num::Integer;
use serde::ser::SerializeStruct;
use serde::Serialize;
use std::collections::HashMap;

/// A set of pairwise distinct points plus a color assignment into classes
/// `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPointSet {
    points: Vec<Point>,
    colors: Vec<usize>,
    k: usize,
}

impl ColoredPointSet {
    pub fn new(points: Vec<Point>, colors: Vec<usize>, k: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("point set must be nonempty"));
        }
        if points.len() != colors.len() {
            return Err(Error::invalid("points and colors differ in length"));
        }
        if k < 1 {
            return Err(Error::invalid("color count must be at least 1"));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= k) {
            return Err(Error::invalid(format!("color index {c} out of range 0..{k}")));
        }
        let mut sorted: Vec<&Point> = points.iter().collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid(format!("duplicate point {}", w[0])));
            }
        }
        Ok(ColoredPointSet { points, colors, k })
    }

    /// A unicolored set.
    pub fn unicolored(points: Vec<Point>, color: usize, k: usize) -> Result<Self> {
        let n = points.len();
        ColoredPointSet::new(points, vec![color; n], k)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn color(&self, i: usize) -> usize {
        self.colors[i]
    }

    /// Indices of the points in class `c`.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.colors[i] == c).collect()
    }

    /// Class sizes indexed by color.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &c in &self.colors {
            sizes[c] += 1;
        }
        sizes
    }

    /// Concatenation of two sets over a shared color space.
    pub fn union(&self, other: &ColoredPointSet) -> Result<ColoredPointSet> {
        let mut points = self.points.clone();
        let mut colors = self.colors.clone();
        points.extend(other.points.iter().cloned());
        colors.extend(other.colors.iter().cloned());
        ColoredPointSet::new(points, colors, self.k.max(other.k))
    }

    /// Same points, one color changed.
    pub fn recolored(&self, index: usize, color: usize) -> Result<ColoredPointSet> {
        let mut colors = self.colors.clone();
        colors[index] = color;
        ColoredPointSet::new(self.points.clone(), colors, self.k.max(color + 1))
    }
}

impl Serialize for ColoredPointSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pts: Vec<[String; 2]> = self
            .points
            .iter()
            .map(|p| [format_rat(&p.x), format_rat(&p.y)])
            .collect();
        let mut st = s.serialize_struct("ColoredPointSet", 3)?;
        st.serialize_field("points", &pts)?;
        st.serialize_field("colors", &self.colors)?;
        st.serialize_field("k", &self.k)?;
        st.end()
    }
}

/// Symmetric, irreflexive adjacency over point indices: an edge means the
/// open segment between the two points contains no point of the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibilityGraph {
    n: usize,
    adj: Vec<bool>,
}

impl VisibilityGraph {
    /// Graph with no edges.
    pub fn empty(n: usize) -> Self {
        VisibilityGraph { n, adj: vec![false; n * n] }
    }

    /// Build directly from an edge list (used by coloring tests and search
    /// internals; geometric construction goes through [`visibility_graph`]).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = VisibilityGraph::empty(n);
        for &(u, v) in edges {
            g.set_edge(u, v, true);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u * self.n + v]
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        assert_ne!(u, v, "visibility graphs are irreflexive");
        self.adj[u * self.n + v] = present;
        self.adj[v * self.n + u] = present;
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.edge(u, v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n)
            .map(|u| (u + 1..self.n).filter(|&v| self.edge(u, v)).count())
            .sum()
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n.saturating_sub(1)) / 2
    }
}

/// The visibility graph of a point list: u ~ v iff no point of the list
/// lies strictly between them.
pub fn visibility_graph(points: &[Point]) -> VisibilityGraph {
    let n = points.len();
    let mut g = VisibilityGraph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            let blocked = (0..n).any(|w| {
                w != u && w != v && between_unchecked(&points[u], &points[v], &points[w])
            });
            g.set_edge(u, v, !blocked);
        }
    }
    g
}

/// The points of the list strictly between `u` and `v`, ordered along the
/// segment from `u` to `v`.
pub fn blockers(points: &[Point], u: usize, v: usize) -> Result<Vec<usize>> {
    if u == v {
        return Err(Error::invalid("blockers requires two distinct indices"));
    }
    let a = &points[u];
    let b = &points[v];
    let mut found: Vec<usize> = (0..points.len())
        .filter(|&w| w != u && w != v && between_unchecked(a, b, &points[w]))
        .collect();
    found.sort_by(|&i, &j| {
        segment_param(a, b, &points[i])
            .cmp(&segment_param(a, b, &points[j]))
    });
    Ok(found)
}

/// Maximum number of points of the list lying on a single line, computed by
/// grouping normalized directions around each point.
pub fn max_collinear(points: &[Point]) -> usize {
    let n = points.len();
    if n <= 2 {
        return n;
    }
    let mut best = 2;
    for i in 0..n {
        let mut dirs: HashMap<(BigInt, BigInt), usize> = HashMap::new();
        for j in 0..n {
            if i == j {
                continue;
            }
            let dx = &points[j].x - &points[i].x;
            let dy = &points[j].y - &points[i].y;
            // Integer direction: clear denominators, reduce, fix sign.
            let mut nx = dx.numer() * dy.denom();
            let mut ny = dy.numer() * dx.denom();
            let g = nx.gcd(&ny);
            if !num::traits::Zero::is_zero(&g) {
                nx /= &g;
                ny /= &g;
            }
            let neg = match nx.sign() {
                num::bigint::Sign::Minus => true,
                num::bigint::Sign::NoSign => ny.sign() == num::bigint::Sign::Minus,
                num::bigint::Sign::Plus => false,
            };
            if neg {
                nx = -nx;
                ny = -ny;
            }
            *dirs.entry((nx, ny)).or_insert(0) += 1;
        }
        if let Some(&m) = dirs.values().max() {
            best = best.max(m + 1);
        }
    }
    best
}
